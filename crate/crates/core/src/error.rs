use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i32),
    #[error("map is not closed of degree zero")]
    NotClosed,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("presentation check failed: {0}")]
    Presentation(String),
    #[error("generator {0} is not part of this presentation")]
    PresentationMismatch(String),
    #[error("malformed twisted complex: {0}")]
    Twisted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Maurer–Cartan equation fails at component ({0}, {1})")]
    MaurerCartan(usize, usize),
}
