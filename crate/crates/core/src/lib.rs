pub mod diagrams;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod linalg;
pub mod obstructions;
pub mod patterns;
pub mod poly;
pub mod surgery;

pub use error::{Error, Result};
