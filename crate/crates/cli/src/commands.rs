use std::fs;
use std::io::Write;
use std::path::Path;

use mpcorr_core::io::{read_state, StateFile};
use mpcorr_core::states::{ParamValue, StateFamilySpec};
use mpcorr_core::{classify_two_qubit, decompose, measure_all, DensityMatrix};
use serde::Serialize;

use crate::error::CliError;

pub fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(read_state(&text)?)
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Parse(format!("cannot write to stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn decompose_cmd(input: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let rho = load_state(input)?;
    let d = decompose(&rho).map_err(CliError::from_analysis)?;
    emit(output, &to_json(&d.to_json()))
}

pub fn measure_cmd(input: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let rho = load_state(input)?;
    let set = measure_all(&rho).map_err(CliError::from_analysis)?;
    emit(output, &to_json(&set))
}

pub fn classify_cmd(input: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let rho = load_state(input)?;
    if rho.dims() != [2, 2] {
        return Err(CliError::Unsupported(format!(
            "classify supports two-qubit states (dims [2, 2]) only, got {:?}",
            rho.dims()
        )));
    }
    let report = classify_two_qubit(&rho).map_err(CliError::from_analysis)?;
    emit(output, &to_json(&report))
}

/// Splits `name=value`.
pub fn split_assignment(s: &str) -> Result<(&str, &str), CliError> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim(), v.trim())),
        _ => Err(CliError::BadSpec(format!("expected name=value, got {s:?}"))),
    }
}

pub fn family_spec(family: &str, sets: &[String]) -> Result<StateFamilySpec, CliError> {
    let mut spec = StateFamilySpec::new(family);
    for s in sets {
        let (k, v) = split_assignment(s)?;
        if spec.params.insert(k.to_string(), ParamValue::parse(v)).is_some() {
            return Err(CliError::BadSpec(format!("parameter {k} given twice")));
        }
    }
    Ok(spec)
}

pub fn family_cmd(family: &str, sets: &[String], output: Option<&Path>) -> Result<(), CliError> {
    let spec = family_spec(family, sets)?;
    let rho = mpcorr_core::states::build_family(&spec).map_err(CliError::from_spec)?;
    emit(output, &to_json(&StateFile::from_density(&rho)))
}
