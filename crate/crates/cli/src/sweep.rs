//! Grid sweeps over a state family, written as CSV.

use std::str::FromStr;

use mpcorr_core::classify::{correlation_spectrum, ph_invariants, ph_test};
use mpcorr_core::measures;
use mpcorr_core::states::{Family, ParamValue, StateFamilySpec};
use mpcorr_core::{decompose, BlochDecomposition, DensityMatrix};
use rayon::prelude::*;

use crate::commands::{family_spec, split_assignment};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Ec,
    Ed,
    Ee,
    Concurrence,
    Entropy,
    Nsv,
    Ph,
    Xi,
    NaNb,
}

impl Output {
    pub const ALL: [Output; 9] = [
        Output::Ec,
        Output::Ed,
        Output::Ee,
        Output::Concurrence,
        Output::Entropy,
        Output::Nsv,
        Output::Ph,
        Output::Xi,
        Output::NaNb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Output::Ec => "ec",
            Output::Ed => "ed",
            Output::Ee => "ee",
            Output::Concurrence => "concurrence",
            Output::Entropy => "entropy",
            Output::Nsv => "nsv",
            Output::Ph => "ph",
            Output::Xi => "xi",
            Output::NaNb => "nanb",
        }
    }

    /// Checks the output against the family and its first grid point.
    fn check(self, family: &Family, dims: &[usize]) -> Result<(), String> {
        let n = dims.len();
        let equal = dims.iter().all(|&d| d == dims[0]);
        let ok = match self {
            Output::Ec => n == 2 || equal,
            Output::Ed => n == 3 && equal && dims[0] <= 3,
            Output::Ee => dims == [2, 2, 2, 2],
            Output::Concurrence | Output::Entropy => n == 2 && family.is_pure_family(),
            Output::Nsv | Output::Ph => n == 2,
            Output::Xi | Output::NaNb => dims == [2, 2],
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "output {} does not apply to family {} with dims {dims:?}",
                self.name(),
                family.name()
            ))
        }
    }
}

impl FromStr for Output {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Output::ALL
            .into_iter()
            .find(|o| o.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<_> = Output::ALL.iter().map(|o| o.name()).collect();
                format!("unknown output {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    /// Parses `name=start:stop:count`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let (name, range) = split_assignment(s)?;
        let parts: Vec<&str> = range.split(':').collect();
        let bad = || CliError::BadSpec(format!("expected {name}=start:stop:count, got {s:?}"));
        let [start, stop, count] = parts.as_slice() else {
            return Err(bad());
        };
        let start: f64 = start.trim().parse().map_err(|_| bad())?;
        let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        if count == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        Ok(Grid {
            name: name.to_string(),
            start,
            stop,
            count,
        })
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            return self.start;
        }
        if i + 1 == self.count {
            return self.stop;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: String,
    pub grids: Vec<Grid>,
    pub fixed: Vec<String>,
    pub outputs: Vec<Output>,
}

impl SweepSpec {
    pub fn new(family: &str, params: &[String], fixed: &[String], outputs: &str) -> Result<Self, CliError> {
        let grids = params.iter().map(|p| Grid::parse(p)).collect::<Result<Vec<_>, _>>()?;
        let outputs = outputs
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.parse().map_err(CliError::BadSpec))
            .collect::<Result<Vec<Output>, _>>()?;
        if outputs.is_empty() {
            return Err(CliError::BadSpec("no outputs requested".into()));
        }
        Ok(SweepSpec {
            family: family.to_string(),
            grids,
            fixed: fixed.to_vec(),
            outputs,
        })
    }

    pub fn rows(&self) -> usize {
        self.grids.iter().map(|g| g.count).product()
    }

    /// Parameter values of row `row`; the first grid varies slowest.
    pub fn point(&self, mut row: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.grids.len()];
        for (slot, g) in out.iter_mut().zip(&self.grids).rev() {
            *slot = g.value(row % g.count);
            row /= g.count;
        }
        out
    }

    fn spec_at(&self, values: &[f64]) -> Result<StateFamilySpec, CliError> {
        let mut spec = family_spec(&self.family, &self.fixed)?;
        for (g, &v) in self.grids.iter().zip(values) {
            if spec.params.insert(g.name.clone(), ParamValue::Number(v)).is_some() {
                return Err(CliError::BadSpec(format!("parameter {} given twice", g.name)));
            }
        }
        Ok(spec)
    }

    /// Resolves the first grid point and checks every requested output.
    pub fn validate(&self) -> Result<(), CliError> {
        let family = Family::from_spec(&self.spec_at(&self.point(0))?).map_err(CliError::from_spec)?;
        let rho = family.build().map_err(CliError::from_spec)?;
        for o in &self.outputs {
            o.check(&family, rho.dims()).map_err(CliError::BadSpec)?;
        }
        Ok(())
    }

    fn evaluate(&self, row: usize) -> Result<Vec<String>, CliError> {
        let values = self.point(row);
        let rho = Family::from_spec(&self.spec_at(&values)?)
            .and_then(|f| f.build())
            .map_err(CliError::from_spec)?;
        let d = decompose(&rho).map_err(CliError::from_analysis)?;
        let mut cells: Vec<String> = values.iter().map(|&v| format_float(v)).collect();
        for &o in &self.outputs {
            cells.push(cell(o, &rho, &d).map_err(CliError::from_analysis)?);
        }
        Ok(cells)
    }

    /// CSV text with a header row; rows in grid order.
    pub fn run(&self) -> Result<String, CliError> {
        self.validate()?;
        let rows = (0..self.rows())
            .into_par_iter()
            .map(|r| self.evaluate(r))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = String::new();
        let header: Vec<&str> = self
            .grids
            .iter()
            .map(|g| g.name.as_str())
            .chain(self.outputs.iter().map(|o| o.name()))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

fn cell(o: Output, rho: &DensityMatrix, d: &BlochDecomposition) -> mpcorr_core::Result<String> {
    Ok(match o {
        Output::Ec if rho.parties() == 2 => format_float(measures::e_c(d)?),
        Output::Ec => format_float(measures::e_c_multipartite(d)?),
        Output::Ed => format_float(measures::e_d(d)?),
        Output::Ee => format_float(measures::e_e(d)?),
        Output::Concurrence => format_float(measures::concurrence_pure(rho)?),
        Output::Entropy => format_float(measures::entanglement_entropy(rho)?),
        Output::Nsv => {
            let c = d.correlation_matrix(0, 1).expect("pair tensor");
            correlation_spectrum(&c).nsv_count.to_string()
        }
        Output::Ph => u8::from(ph_test(rho)?.entangled).to_string(),
        Output::Xi => ph_invariants(d).map(|i| format_float(i.xi)).unwrap_or_default(),
        Output::NaNb => {
            let dot: f64 = d.coherence_vector(0).iter().zip(d.coherence_vector(1)).map(|(a, b)| a * b).sum();
            format_float(dot)
        }
    })
}

/// Shortest round-trip decimal; negative zero prints as `0`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x}")
}
