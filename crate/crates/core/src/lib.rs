//! Graph families described by regular languages over `{a,b}`.
//!
//! A word over `{a,b}` built from the codewords `a b^i a` (vertex `i`) and
//! `a b^i aaa b^j a` (edge `(i,j)`) denotes a finite directed graph. A
//! regular language of such words therefore denotes a family of graphs.
//! This crate classifies such families, decides membership, enumerates
//! small members and decides a handful of graph properties over them.

pub mod automata;
pub mod codec;
pub mod semilinear;
pub mod alphabetc;
pub mod family;
pub mod properties;
pub mod oracle;
mod analysis;
mod config;
mod error;

pub use analysis::{crown_regex, Analysis, MarkedReport, PieceReport, Report, WidthBounds, Witness};
pub use codec::Graph;
pub use config::Config;
pub use error::{Error, Result};
