//! Fixture registry, corpus generation and claim verification behind the
//! `treecast` binary.

pub mod corpus;
pub mod fixtures;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("corpus too large: {0}")]
    CorpusTooLarge(String),
    #[error("fixture {name}: {reason}")]
    BadFixture { name: String, reason: String },
    #[error(transparent)]
    Solver(#[from] treecast::SolverError),
    #[error(transparent)]
    Construct(#[from] treecast::ConstructError),
}

pub use corpus::{CorpusSpec, Generator, Instance};
pub use fixtures::{Fixture, FixtureReport};
pub use verify::{Claim, TheoremReport};
