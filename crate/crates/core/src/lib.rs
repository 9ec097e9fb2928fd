//! Decide whether automorphisms of tori, maximal unipotent groups of
//! Chevalley groups and a few small solvable groups have one twisted
//! conjugacy class or infinitely many, with exact finite-field oracles.

pub mod chevalley;
pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
pub mod orbit;
pub mod rootsystem;
pub mod solvable;
pub mod torus;
pub mod unipotent;

pub use error::{Error, Result};

/// Reidemeister number over an algebraically closed field: `1` or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    One,
    Infinite,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::One => "One",
            Verdict::Infinite => "Infinite",
        })
    }
}
