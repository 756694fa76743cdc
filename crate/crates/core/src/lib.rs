//! Exact and normalized dimensions of standard and strict Young diagrams.
//!
//! The library works on two graded graphs: the Young graph (partitions as
//! non-increasing column heights, edges add one box) and the Schur graph
//! (its strict-partition subgraph). On top of the diagram and dimension
//! primitives it provides:
//!
//! - greedy growth sequences and Plancherel-process sampling ([`growth`]),
//! - exhaustive maximum-dimension tables and a multi-start improvement
//!   search for large sizes ([`search`]),
//! - finite-difference and limit-fit analysis of normalized dimensions
//!   ([`analysis`]),
//! - persistence formats and a CLI driver ([`io`], [`config`], the
//!   `youngdim` binary).
//!
//! Exact quantities use arbitrary-precision integers; logarithmic
//! accumulators use double-double arithmetic ([`hp`]) so that normalized
//! dimensions stay accurate over million-step growth runs.

pub mod analysis;
pub mod config;
pub mod diagram;
pub mod dimension;
pub mod growth;
pub mod hp;
pub mod io;
pub mod search;

pub use diagram::{staircase, Diagram, DiagramError, GrowthStep, Mode, StrictDiagram};
pub use dimension::{
    dim, dim_standard, dim_strict, plancherel_weight, step_ratio, DimensionError, DimensionState,
    Ratio,
};
pub use growth::{
    greedy_sequence, greedy_step, merge_experiment, plancherel_sample, GrowthSequence, MergeResult,
};
pub use search::{compare_sequences, exhaustive_max, improved_search, regular_tail};

