//! Exact equitable colorings of complete multipartite graphs
//! `K_{m_1,...,m_r}` and of their Kronecker products with complete graphs.
//!
//! * [`partitions`]: q-partitions `n = a*q + b*(q+1)`.
//! * [`closedform`]: closed-form equitable chromatic numbers and thresholds.
//! * [`graphs`]: explicit graphs, colorings, the verifier, file formats.
//! * [`colorer`]: witness constructions.
//! * [`oracle`]: exhaustive search, independent of the two modules above.
//! * [`cli`]: the `eqcolor` command-line tool.

pub mod cli;
pub mod closedform;
pub mod colorer;
pub mod error;
pub mod graphs;
pub mod oracle;
pub mod partitions;

pub use error::{Error, Result};
