//! Matrix towers: slot layouts, standard embeddings, projective stage
//! elements, conjugators, presentations and component truncation.

mod conjugate;
mod embed;
mod layout;
mod matrix;
mod pgl;
mod presentation;

use thiserror::Error;

use crate::text::ParseError;

pub use conjugate::{skolem_noether_conjugator, EmbeddingData};
pub use embed::{normalized_trace, standard_embedding};
pub use layout::{slot_assignment, SlotLayout};
pub use matrix::{Dense, TowerMatrix};
pub use pgl::{pgl_equiv_n, PglElement};
pub use presentation::{
    check_representation, push_assignment, truncate, AlgebraPresentation, Component,
    ComponentAlgebra, NcPoly,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("stage 0 does not exist")]
    ZeroStage,
    #[error("{n} does not divide {m}")]
    NotDivisible { n: u64, m: u64 },
    #[error("expected {expected} rows and columns, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("stage {left} and stage {right} do not match")]
    StageMismatch { left: u64, right: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("not a unital embedding: {0}")]
    NotAnEmbedding(String),
    #[error("conjugator failed verification")]
    VerificationFailed,
    #[error("generator {0:?} is not declared")]
    UndeclaredGenerator(String),
    #[error("generator {0:?} has no assigned matrix")]
    MissingGenerator(String),
    #[error("degree {0} occurs twice")]
    DuplicateDegree(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
