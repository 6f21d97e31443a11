//! On-disk JSON documents: strict schema, integers only, bit-exact
//! round-trips. Unknown keys are rejected to catch typos early.

use serde::{Deserialize, Serialize};
use toric::{Fan, LatticeVector};

use crate::error::{CliError, Kind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDocument {
    pub coeffs: Vec<i64>,
}

/// Parses and structurally validates a fan document. Schema violations,
/// wrong ray arity, and out-of-range cone indices are all input errors;
/// geometric validation happens later in `Fan::build`.
pub fn parse_fan(text: &str) -> Result<FanDocument, CliError> {
    let doc: FanDocument = serde_json::from_str(text)
        .map_err(|e| CliError::new(Kind::Input, format!("fan document: {e}")))?;
    if doc.dim == 0 {
        return Err(CliError::new(Kind::Input, "fan document: dim must be ≥ 1"));
    }
    for (i, ray) in doc.rays.iter().enumerate() {
        if ray.len() != doc.dim {
            return Err(CliError::new(
                Kind::Input,
                format!(
                    "fan document: ray {i} has {} coordinates, expected {}",
                    ray.len(),
                    doc.dim
                ),
            ));
        }
    }
    for (c, cone) in doc.max_cones.iter().enumerate() {
        if let Some(&bad) = cone.iter().find(|&&r| r >= doc.rays.len()) {
            return Err(CliError::new(
                Kind::Input,
                format!(
                    "fan document: max_cones[{c}] references ray {bad}, but there are only {} rays",
                    doc.rays.len()
                ),
            ));
        }
    }
    Ok(doc)
}

/// Canonical serialization: compact JSON with fixed key order, no trailing
/// whitespace. `serialize_fan(parse_fan(t))` is the canonical form of `t`.
pub fn serialize_fan(doc: &FanDocument) -> String {
    serde_json::to_string(doc).expect("fan documents serialize")
}

pub fn parse_divisor(text: &str) -> Result<DivisorDocument, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::new(Kind::Input, format!("divisor document: {e}")))
}

pub fn build_fan(doc: &FanDocument) -> Result<Fan, CliError> {
    let rays: Vec<LatticeVector> = doc
        .rays
        .iter()
        .map(|r| LatticeVector::from_i64(r))
        .collect();
    let fan = Fan::build(doc.dim, rays, doc.max_cones.clone())?;
    for warning in fan.warnings() {
        eprintln!("warning: {warning}");
    }
    Ok(fan)
}
