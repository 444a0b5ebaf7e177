//! Word problems, lower central series and nilpotent quotients of
//! Baumslag-Solitar groups `BS(m, n) = <t, a | t^-1 a^m t = a^n>`.

pub mod classifier;
pub mod error;
pub mod fixtures;
pub mod free_lie;
pub mod linalg;
pub mod nilpotent_quotient;
pub mod presentations;
pub mod verifier;
pub mod word_engine;

pub use error::{Error, ParseError, Result};
pub use presentations::{BSParams, FreeWord, GroupPresentation};
