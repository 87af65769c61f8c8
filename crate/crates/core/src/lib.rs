//! Lexicographic products of finite graphs and exact decision procedures for
//! when `Aut(X ∘ Y)` (classically, and for regular graphs also its quantum
//! counterpart) decomposes as a wreath product of `Aut(X)` by `Aut(Y)`.
//!
//! * [`graph`]: immutable simple graphs, complement, lexicographic product.
//! * [`io`]: graph6, edge lists and the `K2*C6` spec language.
//! * [`perm`], [`autgroup`]: permutations, stabilizer chains and automorphism
//!   groups with exact orders.
//! * [`poly`], [`spectral`]: integer polynomials and the spectral criterion.
//! * [`verdict`]: the neighborhood-twin criterion, reports and sweeps.
//!
//! Vertices are 0-indexed. In `X ∘ Y` the vertex `(i, a)` (`i` in `X`, `a` in
//! `Y`) sits at index `a·|X| + i`.

pub mod autgroup;
pub mod generate;
pub mod graph;
pub mod io;
pub mod perm;
pub mod poly;
pub mod spectral;
pub mod verdict;

pub use autgroup::{
    automorphism_group, brute_force_automorphisms, group_order, is_automorphism,
    wreath_embedding_order, AutError,
};
pub use graph::{Graph, GraphError};
pub use io::{
    parse_edge_list, parse_graph6, parse_graph_text, parse_spec, write_graph6, FormatError,
    SpecError,
};
pub use perm::{PermGroup, Permutation};
pub use poly::IntPolynomial;
pub use spectral::{char_poly, spectral_condition, SpectralVerdict};
pub use verdict::{
    analyze, classical_condition, quantum_verdict, sabidussi_sets, AnalyzeOptions, QuantumVerdict,
    Report,
};
