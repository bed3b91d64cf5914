//! Workbench for bounds on `m(n, r)`, the fewest edges of an `n`-uniform
//! hypergraph that admits no proper `r`-coloring, with exact brute-force
//! oracles for every closed-form statement at small sizes.

pub mod bounds;
pub mod chains;
pub mod cli;
pub mod colorers;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod frecursion;
pub mod generate;
pub mod hypergraph;
pub mod inducibility;
pub mod special;
pub mod verify;

pub use chains::{Chain, CountMode, GreedyOutcome};
pub use coloring::{chromatic_number, is_proper, Coloring, LinearOrder};
pub use error::{Error, Result};
pub use generate::Family;
pub use hypergraph::Hypergraph;
pub use inducibility::Graph;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
