//! Subgraph counts in preferential attachment models.
//!
//! The crate covers four connected pieces:
//!
//! - [`graph`]: sequential and Pólya-urn generators for the preferential
//!   attachment model with parameters `(m, δ)`.
//! - [`subgraph`] and [`optimizer`]: ordered directed subgraphs, their
//!   attainable orderings, and the max-over-`s` problem that predicts the
//!   growth `t^{k+B} log^{r-1} t` of expected counts.
//! - [`census`] and [`theory`]: empirical labeled-subgraph counts and exact
//!   finite-`t` expectations from Beta moments of the urn variables.
//! - [`concentration`] and [`experiment`]: the merged-copy concentration
//!   criterion and seeded Monte Carlo experiments.

pub mod census;
pub mod concentration;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod model;
pub mod optimizer;
pub mod subgraph;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{GraphView, PAGraph, Provenance, UrnRealization};
pub use model::{ModelParams, Seed};
pub use optimizer::{AffineExponent, DegreeClass, ExponentReport};
pub use subgraph::{OrderedSubgraph, UnorderedDigraph};
