//! JSON report builders. Reports contain integers, strings, booleans, arrays,
//! and objects only — never floating-point numbers.

use num_bigint::BigInt;
use serde_json::{json, Value};
use toric::{
    DivisorCoefficients, LatticeVector, PositivityClass, SplittingType, TheoremReport, Verdict,
    Wall,
};

use crate::error::{CliError, Kind};

pub fn int(value: &BigInt) -> Result<i64, CliError> {
    i64::try_from(value.clone()).map_err(|_| {
        CliError::new(
            Kind::Internal,
            format!("report value {value} exceeds the 64-bit integer range"),
        )
    })
}

pub fn vector(v: &LatticeVector) -> Result<Value, CliError> {
    Ok(Value::from(
        v.coords()
            .iter()
            .map(int)
            .collect::<Result<Vec<i64>, _>>()?,
    ))
}

pub fn divisor(c: &DivisorCoefficients) -> Result<Value, CliError> {
    Ok(Value::from(
        c.coeffs.iter().map(int).collect::<Result<Vec<i64>, _>>()?,
    ))
}

pub fn wall(w: &Wall) -> Value {
    json!({
        "shared_rays": w.shared_rays,
        "side_a": w.side_a,
        "side_b": w.side_b,
        "opposite_a": w.opposite_a,
        "opposite_b": w.opposite_b,
    })
}

pub fn verdict(v: Verdict) -> Value {
    Value::from(v.as_str())
}

pub fn positivity(p: &PositivityClass) -> Value {
    match &p.witness {
        Some(w) => json!({ "verdict": p.verdict.as_str(), "witness_wall": wall(w) }),
        None => json!({ "verdict": p.verdict.as_str() }),
    }
}

pub fn splitting(split: &SplittingType) -> Result<Value, CliError> {
    let multiset = split
        .multiset()
        .iter()
        .map(int)
        .collect::<Result<Vec<i64>, _>>()?;
    let summands = split
        .summands
        .iter()
        .map(|s| {
            Ok(json!({
                "u": vector(&s.u)?,
                "u_prime": vector(&s.u_prime)?,
                "degree": int(&s.degree)?,
            }))
        })
        .collect::<Result<Vec<Value>, CliError>>()?;
    Ok(json!({
        "wall": wall(&split.wall),
        "multiset": multiset,
        "summands": summands,
    }))
}

pub fn theorem(report: &TheoremReport) -> Result<Value, CliError> {
    let checks = match &report.polytope {
        Some(p) => json!({
            "divisor": divisor(&p.divisor)?,
            "all_two_faces_triangular": p.all_two_faces_triangular,
            "simplex": p.simplex,
        }),
        None => Value::Null,
    };
    Ok(json!({
        "classification": positivity(&report.classification),
        "is_projective_space": report.is_projective_space,
        "polytope_checks": checks,
        "pass": report.pass,
    }))
}
