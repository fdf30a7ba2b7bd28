use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("point ({u}, {v}) does not lie on the diagram")]
    NotOnDiagram { u: String, v: String },

    #[error("u = {u} lies outside the edge span [{lo}, {hi}]")]
    OutsideEdge { u: String, lo: String, hi: String },

    #[error("edgepath is constant and has no final edge")]
    ConstantPath,

    #[error("final edge is vertical and never meets the line u = 1")]
    VerticalFinalEdge,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
