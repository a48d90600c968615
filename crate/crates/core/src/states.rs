//! Named state families.
//!
//! Qubit basis states are ordered `|↑⟩ = (1, 0)`, `|↓⟩ = (0, 1)` with
//! `σ_z |↑⟩ = +|↑⟩`; two-qubit amplitudes are ordered `↑↑, ↑↓, ↓↑, ↓↓`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::qstate::{self, from_pure, DensityMatrix};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BellState {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PsiPlus,
        BellState::PsiMinus,
        BellState::PhiPlus,
        BellState::PhiMinus,
    ];
}

impl FromStr for BellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi+" | "psi-plus" => Ok(BellState::PsiPlus),
            "psi-" | "psi-minus" | "singlet" => Ok(BellState::PsiMinus),
            "phi+" | "phi-plus" => Ok(BellState::PhiPlus),
            "phi-" | "phi-minus" => Ok(BellState::PhiMinus),
            other => Err(Error::InvalidParameter(format!(
                "unknown Bell state {other:?} (expected psi+, psi-, phi+ or phi-)"
            ))),
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
        })
    }
}

/// `|Ψ±⟩ = (|↑↓⟩ ± |↓↑⟩)/√2`, `|Φ±⟩ = (|↑↑⟩ ± |↓↓⟩)/√2`.
pub fn bell(which: BellState) -> DensityMatrix {
    let amps = match which {
        BellState::PsiPlus => [0.0, 1.0, 1.0, 0.0],
        BellState::PsiMinus => [0.0, 1.0, -1.0, 0.0],
        BellState::PhiPlus => [1.0, 0.0, 0.0, 1.0],
        BellState::PhiMinus => [1.0, 0.0, 0.0, -1.0],
    };
    from_pure(&amps.map(re), &[2, 2]).expect("Bell state")
}

/// `(e^{-θ}|↑↑⟩ + e^{θ}|↓↓⟩) / sqrt(2 cosh 2θ)`.
pub fn rashid(theta: f64) -> Result<DensityMatrix> {
    check_finite("theta", theta)?;
    // scale by e^{-|θ|} to keep both amplitudes finite for large |θ|
    let shift = theta.abs();
    from_pure(
        &[re((-theta - shift).exp()), re(0.0), re(0.0), re((theta - shift).exp())],
        &[2, 2],
    )
}

/// Single-qubit state `(1 + n·σ)/2`.
pub fn qubit_state(n: [f64; 3]) -> Result<DensityMatrix> {
    let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm > 1.0 + 1e-12 {
        return Err(Error::InvalidBlochVector(norm));
    }
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[
            re(0.5 * (1.0 + n[2])),
            Complex64::new(0.5 * n[0], -0.5 * n[1]),
            Complex64::new(0.5 * n[0], 0.5 * n[1]),
            re(0.5 * (1.0 - n[2])),
        ],
    );
    Ok(DensityMatrix::from_trusted(m, vec![2]))
}

/// One term `p_k (1 + n_{A,k}·σ)(1 + n_{B,k}·σ)/4` of a classically
/// correlated two-qubit mixture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CcTerm {
    pub weight: f64,
    pub n_a: [f64; 3],
    pub n_b: [f64; 3],
}

/// `Σ_k p_k ρ_A(n_{A,k}) ⊗ ρ_B(n_{B,k})`.
pub fn cc_mixture(terms: &[CcTerm]) -> Result<DensityMatrix> {
    let weights: Vec<f64> = terms.iter().map(|t| t.weight).collect();
    let states = terms
        .iter()
        .map(|t| qstate::tensor(&qubit_state(t.n_a)?, &qubit_state(t.n_b)?))
        .collect::<Result<Vec<_>>>()?;
    qstate::mix(&weights, &states)
}

/// Two-term example: weight `e^{-2θ}/(2 cosh 2θ)` on `|↓↑⟩` and
/// `e^{2θ}/(2 cosh 2θ)` on `|↑↓⟩`. Its only correlation is
/// `C_zz = -sech² 2θ`.
pub fn cc_example(theta: f64) -> Result<DensityMatrix> {
    check_finite("theta", theta)?;
    let w_up_down = 0.5 * (1.0 + (2.0 * theta).tanh());
    let down_up = qstate::DensityMatrix::basis_state(2, &[2, 2])?;
    let up_down = qstate::DensityMatrix::basis_state(1, &[2, 2])?;
    qstate::mix(&[1.0 - w_up_down, w_up_down], &[down_up, up_down])
}

/// `p |ψ⁻⟩⟨ψ⁻| + (1 - p) 1/4` with the tilted singlet
/// `|ψ⁻⟩ = (e^{θ}|↑↓⟩ - e^{-θ}|↓↑⟩) / sqrt(2 cosh 2θ)`.
///
/// The tilt direction is chosen so that `n_A = -n_B = p tanh(2θ) ẑ`; the
/// correlation matrix `-p diag(sech 2θ, sech 2θ, 1 - p + p sech² 2θ)` is
/// even in `θ`. At `θ = 0` this is the standard Werner state.
pub fn generalized_werner(p: f64, theta: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    check_finite("theta", theta)?;
    let shift = theta.abs();
    let psi = from_pure(
        &[re(0.0), re((theta - shift).exp()), re(-(-theta - shift).exp()), re(0.0)],
        &[2, 2],
    )?;
    qstate::mix(&[p, 1.0 - p], &[psi, DensityMatrix::maximally_mixed(&[2, 2])?])
}

/// `Σ_k |k k … k⟩ / sqrt(level)` on 3 or 4 parties of 2 or 3 levels.
pub fn ghz(parties: usize, level: usize) -> Result<DensityMatrix> {
    if !(3..=4).contains(&parties) || !(2..=3).contains(&level) {
        return Err(Error::UnsupportedShape(format!(
            "GHZ supports 3 or 4 parties of 2 or 3 levels, got {parties} x {level}"
        )));
    }
    let dims = vec![level; parties];
    let total: usize = dims.iter().product();
    let mut amps = vec![re(0.0); total];
    for k in 0..level {
        let idx = (0..parties).fold(0, |acc, _| acc * level + k);
        amps[idx] = re(1.0);
    }
    from_pure(&amps, &dims)
}

/// Three-qutrit superposition with amplitudes `e^{θ₁}e^{θ₂}`, `e^{-θ₁}`,
/// `e^{-θ₂}` on `|111⟩`, `|222⟩`, `|333⟩`.
pub fn tripartite_qutrit_e3(theta1: f64, theta2: f64) -> Result<DensityMatrix> {
    check_finite("theta1", theta1)?;
    check_finite("theta2", theta2)?;
    let exps = [theta1 + theta2, -theta1, -theta2];
    let shift = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut amps = vec![re(0.0); 27];
    for (k, e) in exps.iter().enumerate() {
        amps[k * 9 + k * 3 + k] = re((e - shift).exp());
    }
    from_pure(&amps, &[3, 3, 3])
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {v} is not finite")))
    }
}

/// A parameter value in a family spec: a number, or text (Bell labels).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    Text(String),
}

impl ParamValue {
    /// Numbers pass through; text is parsed as a float.
    pub fn parse(s: &str) -> Self {
        match s.trim().parse::<f64>() {
            Ok(x) => ParamValue::Number(x),
            Err(_) => ParamValue::Text(s.trim().to_string()),
        }
    }
}

/// `{"family": name, "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFamilySpec {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
}

impl StateFamilySpec {
    pub fn new(family: &str) -> Self {
        Self {
            family: family.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), ParamValue::Number(value));
        self
    }

    pub fn with_text(mut self, name: &str, value: &str) -> Self {
        self.params.insert(name.to_string(), ParamValue::Text(value.to_string()));
        self
    }
}

/// A fully resolved family member.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Bell(BellState),
    Rashid { theta: f64 },
    GeneralizedWerner { p: f64, theta: f64 },
    CcExample { theta: f64 },
    CcMixture(Vec<CcTerm>),
    Ghz { parties: usize, level: usize },
    TripartiteQutritE3 { theta1: f64, theta2: f64 },
}

/// Family names accepted by [`Family::from_spec`].
pub const FAMILY_NAMES: [&str; 7] = [
    "bell",
    "rashid",
    "generalized-werner",
    "cc-example",
    "cc-mixture",
    "ghz",
    "tripartite-qutrit-e3",
];

struct Params<'a> {
    family: &'a str,
    map: &'a BTreeMap<String, ParamValue>,
    used: std::collections::BTreeSet<&'a str>,
}

impl<'a> Params<'a> {
    fn number(&mut self, name: &'a str, default: Option<f64>) -> Result<f64> {
        self.used.insert(name);
        match (self.map.get(name), default) {
            (Some(ParamValue::Number(x)), _) => Ok(*x),
            (Some(ParamValue::Text(t)), _) => Err(Error::InvalidParameter(format!(
                "{}: parameter {name} must be numeric, got {t:?}",
                self.family
            ))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Error::InvalidParameter(format!(
                "{}: missing parameter {name}",
                self.family
            ))),
        }
    }

    fn integer(&mut self, name: &'a str, default: usize) -> Result<usize> {
        let x = self.number(name, Some(default as f64))?;
        if x < 0.0 || x.fract() != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "{}: parameter {name} must be a non-negative integer, got {x}",
                self.family
            )));
        }
        Ok(x as usize)
    }

    fn finish(self) -> Result<()> {
        if let Some(extra) = self.map.keys().find(|k| !self.used.contains(k.as_str())) {
            return Err(Error::InvalidParameter(format!(
                "{}: unknown parameter {extra}",
                self.family
            )));
        }
        Ok(())
    }
}

/// Parses `w<k>`, `a<k>x`, …, `b<k>z` names into `(k, field)`.
fn parse_cc_name(name: &str) -> Option<(usize, &str)> {
    let (head, rest) = name.split_at(1);
    let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
    let (digits, tail) = rest.split_at(digits_end);
    let k: usize = digits.parse().ok().filter(|&k| k >= 1)?;
    let field = match (head, tail) {
        ("w", "") => "w",
        ("a", "x") => "ax",
        ("a", "y") => "ay",
        ("a", "z") => "az",
        ("b", "x") => "bx",
        ("b", "y") => "by",
        ("b", "z") => "bz",
        _ => return None,
    };
    Some((k, field))
}

impl Family {
    pub fn from_spec(spec: &StateFamilySpec) -> Result<Self> {
        let mut p = Params {
            family: spec.family.as_str(),
            map: &spec.params,
            used: Default::default(),
        };
        let family = match spec.family.as_str() {
            "bell" => {
                p.used.insert("which");
                let which = match spec.params.get("which") {
                    Some(ParamValue::Text(t)) => t.parse()?,
                    Some(ParamValue::Number(x)) => {
                        return Err(Error::InvalidParameter(format!(
                            "bell: which must be psi+, psi-, phi+ or phi-, got {x}"
                        )))
                    }
                    None => return Err(Error::InvalidParameter("bell: missing parameter which".into())),
                };
                Family::Bell(which)
            }
            "rashid" => Family::Rashid {
                theta: p.number("theta", None)?,
            },
            "generalized-werner" | "werner" => Family::GeneralizedWerner {
                p: p.number("p", None)?,
                theta: p.number("theta", Some(0.0))?,
            },
            "cc-example" => Family::CcExample {
                theta: p.number("theta", None)?,
            },
            "cc-mixture" => return Self::cc_from_params(spec),
            "ghz" => Family::Ghz {
                parties: p.integer("parties", 3)?,
                level: p.integer("level", 2)?,
            },
            "tripartite-qutrit-e3" => Family::TripartiteQutritE3 {
                theta1: p.number("theta1", None)?,
                theta2: p.number("theta2", None)?,
            },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family {other:?}; known families: {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        p.finish()?;
        Ok(family)
    }

    fn cc_from_params(spec: &StateFamilySpec) -> Result<Self> {
        type Partial = (Option<f64>, [f64; 3], [f64; 3]);
        let mut terms: BTreeMap<usize, Partial> = BTreeMap::new();
        for (name, value) in &spec.params {
            let (k, field) = parse_cc_name(name).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "cc-mixture: unknown parameter {name} (expected w<k>, a<k>x|y|z, b<k>x|y|z)"
                ))
            })?;
            let ParamValue::Number(x) = value else {
                return Err(Error::InvalidParameter(format!("cc-mixture: {name} must be numeric")));
            };
            let entry = terms.entry(k).or_insert((None, [0.0; 3], [0.0; 3]));
            let axis = |c: &str| match c.as_bytes()[1] {
                b'x' => 0,
                b'y' => 1,
                _ => 2,
            };
            match field {
                "w" => entry.0 = Some(*x),
                f if f.starts_with('a') => entry.1[axis(f)] = *x,
                f => entry.2[axis(f)] = *x,
            }
        }
        if terms.is_empty() {
            return Err(Error::InvalidParameter("cc-mixture: no terms given".into()));
        }
        let count = *terms.keys().last().unwrap();
        let mut out = Vec::with_capacity(count);
        for k in 1..=count {
            let (w, n_a, n_b) = terms
                .get(&k)
                .copied()
                .ok_or_else(|| Error::InvalidParameter(format!("cc-mixture: term {k} missing")))?;
            let weight =
                w.ok_or_else(|| Error::InvalidParameter(format!("cc-mixture: missing weight w{k}")))?;
            out.push(CcTerm { weight, n_a, n_b });
        }
        Ok(Family::CcMixture(out))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Bell(_) => "bell",
            Family::Rashid { .. } => "rashid",
            Family::GeneralizedWerner { .. } => "generalized-werner",
            Family::CcExample { .. } => "cc-example",
            Family::CcMixture(_) => "cc-mixture",
            Family::Ghz { .. } => "ghz",
            Family::TripartiteQutritE3 { .. } => "tripartite-qutrit-e3",
        }
    }

    /// Whether every member of the family is a pure state.
    pub fn is_pure_family(&self) -> bool {
        matches!(
            self,
            Family::Bell(_) | Family::Rashid { .. } | Family::Ghz { .. } | Family::TripartiteQutritE3 { .. }
        )
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        match self {
            Family::Bell(w) => Ok(bell(*w)),
            Family::Rashid { theta } => rashid(*theta),
            Family::GeneralizedWerner { p, theta } => generalized_werner(*p, *theta),
            Family::CcExample { theta } => cc_example(*theta),
            Family::CcMixture(terms) => cc_mixture(terms),
            Family::Ghz { parties, level } => ghz(*parties, *level),
            Family::TripartiteQutritE3 { theta1, theta2 } => tripartite_qutrit_e3(*theta1, *theta2),
        }
    }
}

/// Resolves and builds a family member in one step.
pub fn build_family(spec: &StateFamilySpec) -> Result<DensityMatrix> {
    Family::from_spec(spec)?.build()
}
