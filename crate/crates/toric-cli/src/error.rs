//! Exit-code contract: 0 success, 1 input/parse error, 2 validation failure
//! (not smooth / not a fan / not complete / divisor not ample), 3
//! internal-consistency failure.

use std::fmt;

use toric::ToricError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Input,
    Validation,
    Internal,
}

impl Kind {
    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Input => 1,
            Kind::Validation => 2,
            Kind::Internal => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Input => "input",
            Kind::Validation => "validation",
            Kind::Internal => "internal",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.message,
            "kind": self.kind.as_str(),
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        let kind = match &e {
            ToricError::InvalidRays(_)
            | ToricError::InvalidCones(_)
            | ToricError::NotSmooth { .. }
            | ToricError::NotAFan { .. }
            | ToricError::NotComplete(_)
            | ToricError::DivisorNotAmple { .. }
            | ToricError::NoAmpleDivisor => Kind::Validation,
            ToricError::DimensionMismatch { .. }
            | ToricError::Unsupported(_)
            | ToricError::InvalidArgument(_) => Kind::Input,
            ToricError::ZeroVector
            | ToricError::NotUnimodular(_)
            | ToricError::WallNotSmooth
            | ToricError::NonPlanarFace
            | ToricError::Internal(_) => Kind::Internal,
        };
        CliError::new(kind, e.to_string())
    }
}
