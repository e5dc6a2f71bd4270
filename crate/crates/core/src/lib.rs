//! Broadcast domination and bn-independent broadcasts on trees.
//!
//! A broadcast gives every vertex an integer strength up to its
//! eccentricity; a vertex hears every broadcaster within that distance. The
//! crate computes the broadcast domination number from split-sets, finds
//! minimum maximal independent broadcasts exactly, and builds explicit
//! maximal broadcasts.

pub mod broadcast;
pub mod construct;
pub mod generate;
pub mod io;
pub mod solver;
pub mod split;
pub mod tree;

pub use broadcast::{Broadcast, BroadcastError, Independence, Strength};
pub use construct::{ConstructError, ReductionTrace, UpperConstruction};
pub use generate::{GenerateError, TreeKind};
pub use io::IoError;
pub use solver::{Objective, SearchStats, SolveResult, SolverError};
pub use split::{RadialClass, RadialKind, SplitError, SplitSet};
pub use tree::{Component, Edge, Tree, TreeError, TreePath, Vertex};
