//! Maximal independent set and maximal matching in time governed by the
//! neighborhood independence number β(G), the largest independent set inside
//! any single neighborhood.
//!
//! * [`mis`]: deterministic greedy MIS, `O(n·β)` probes.
//! * [`mm`]: randomized greedy maximal matching, `O(n·β·log n)` probes in
//!   expectation and with high probability, with or without knowing β.
//! * [`adversary`]: the adaptive adversary showing deterministic maximal
//!   matching needs `Ω(n²)` probes even at β = 2, with a referee that refutes
//!   cheap strategies.
//! * [`generators`], [`verify`], [`bench`], [`apps`]: graph families,
//!   brute-force oracles, scaling experiments, derived algorithms.
//!
//! Inputs are accessed only through [`AdjacencyArray`] (degree and `i`-th
//! neighbor), and every access is tallied by a [`ProbeCounter`].

pub mod adversary;
pub mod apps;
pub mod bench;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod mis;
pub mod mm;
pub mod sample_set;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{AdjacencyArray, Graph, ProbeCounter};
pub use mis::{caro_wei_mis, greedy_mis, MisStats, VertexSet};
pub use mm::{mm_unknown_beta, randomized_greedy_mm, Matching, MmOutcome, MmStats};
pub use sample_set::SampleSet;
