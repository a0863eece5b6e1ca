//! Textual state assignments: `var=value` pairs separated by commas.
//!
//! Boolean variables take `true`/`false` or `1`/`0`; every variable of the
//! domain must be assigned exactly once.

use thiserror::Error;

use crate::nadl::VarDecl;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("malformed assignment `{0}`, expected var=value")]
    Malformed(String),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("variable `{0}` assigned twice")]
    Duplicate(String),
    #[error("value `{value}` is out of range for `{var}`")]
    BadValue { var: String, value: String },
    #[error("variable `{0}` is not assigned")]
    Missing(String),
}

pub fn parse_state(text: &str, vars: &[VarDecl]) -> Result<Vec<u64>, StateError> {
    let mut values: Vec<Option<u64>> = vec![None; vars.len()];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| StateError::Malformed(part.to_string()))?;
        let (name, value) = (name.trim(), value.trim());
        let i = vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| StateError::UnknownVar(name.to_string()))?;
        let bad = || StateError::BadValue {
            var: name.to_string(),
            value: value.to_string(),
        };
        let n = match (vars[i].is_bool(), value) {
            (true, "true") => 1,
            (true, "false") => 0,
            _ => value.parse::<u64>().map_err(|_| bad())?,
        };
        if n >= vars[i].range() {
            return Err(bad());
        }
        if values[i].replace(n).is_some() {
            return Err(StateError::Duplicate(name.to_string()));
        }
    }
    values
        .into_iter()
        .zip(vars)
        .map(|(v, d)| v.ok_or_else(|| StateError::Missing(d.name.clone())))
        .collect()
}

pub fn format_state(values: &[u64], vars: &[VarDecl]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(values)
        .map(|(d, &v)| match (d.is_bool(), v) {
            (true, 0) => format!("{}=false", d.name),
            (true, _) => format!("{}=true", d.name),
            _ => format!("{}={v}", d.name),
        })
        .collect();
    parts.join(",")
}
