pub mod connectivity;
pub mod core_halo;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod reduction;
pub mod rooted;
pub mod solver;

pub use error::{Error, Result};
