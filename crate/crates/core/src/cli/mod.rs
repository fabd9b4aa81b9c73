//! Command-line surface: the model DSL, the analysis pipeline and report output.

mod parse;
mod report;

pub use parse::{parse_syntax, ParseError};
pub use report::{
    analyze, analyze_text, emit, AlgebraSummary, BoundsSection, Format, LefschetzSection,
    MirrorLeaf, MirrorSection, Options, Report, Section, VanishingEntry,
};

use thiserror::Error;

use crate::error::GeometryError;
use crate::geometry::ModelExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("domain error: {0}")]
    Domain(#[from] GeometryError),
}

impl CliError {
    /// Process exit code: 2 for syntax, 3 for mathematical domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

/// Built-in example models, keyed by a short file-friendly name.
pub const EXAMPLES: &[(&str, &str)] = &[
    ("line_over_p1", "O(-1) -> P^1"),
    ("line_over_p2", "O(-1) -> P^2"),
    ("line_over_p3", "O(-1) -> P^3"),
    ("rank2_over_p2", "O(-1)^2 -> P^2"),
    ("rank2_over_p3", "O(-1)^2 -> P^3"),
    ("twist2_over_p2", "O(-2) -> P^2"),
    ("calabi_yau_rank2_over_p1", "O(-1)^2 -> P^1"),
    ("calabi_yau_rank3_over_p2", "O(-1)^3 -> P^2"),
    ("affine_4", "C^4"),
    ("blowup_1_c2", "Bl(1, C^2)"),
    ("blowup_3_c2", "Bl(3, C^2)"),
    ("blowup_2_c3", "Bl(2, C^3)"),
    ("flip_c5", "flip(C^5, 2, 3)"),
    ("sum_with_flip", "(O(-1) -> P^2) # flip(C^3, 1, 2)"),
];

/// Parses, validates and normalizes a model expression.
pub fn parse_model(text: &str) -> Result<ModelExpr, CliError> {
    let expr = parse_syntax(text)?;
    expr.validate()?;
    Ok(expr.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_errors() {
        let e = parse_model("C^2 # C^3").unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = parse_model("O(-2)^2 -> P^2").unwrap_err();
        assert!(matches!(e, CliError::Domain(GeometryError::NotSemiPositive { mn1: 4, bound: 3 })));
        assert_eq!(parse_model("O(-1 -> P^2").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn normalized_output() {
        let e = parse_model("(C^2 # C^2) # Bl(1, Bl(2, C^2))").unwrap();
        assert_eq!(e.to_string(), "C^2 # C^2 # Bl(3, C^2)");
    }
}
