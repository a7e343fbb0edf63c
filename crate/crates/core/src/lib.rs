//! Vertex-graph / edge-graph duality for finite binary relations.
//!
//! A square 0/1 matrix `L` over a set of labels can be read two ways: as the
//! vertex adjacency matrix of a digraph `G` whose vertices are the labels, or
//! as the edge adjacency matrix of a digraph `H` whose *edges* are the labels
//! (`r_ij = 1` iff edge `i` ends where edge `j` starts). This crate decides
//! when the second reading exists, rewrites any matrix into a form where it
//! does, builds `H`, and uses the correspondence for cyclomatic-number
//! bookkeeping, reduction of elementary vertices and Hamilton cycle search.
//!
//! The modules map onto the pipeline:
//!
//! * [`matrix`] and [`digraph`]: core types, the matrix file format,
//!   connectivity and the definitional edge-adjacency oracle.
//! * [`normal_form`]: the `s`/`c` excess matrices, the quasicanonical and
//!   canonical tests, edge subdivision and the normalization loops.
//! * [`trace`]: the ordered subdivide/contract log and its text format.
//! * [`edge_graph`]: block decomposition, construction of `H`, the vertex
//!   matrix `F` and reconstruction of `G` through transit contiguity.
//! * [`reduction`]: contraction of elementary vertices down to a forming set.
//! * [`hamilton`]: Hamilton cycles of `G` via closed walks in `H`, plus the
//!   brute-force oracles used to check the whole chain.
//! * [`render`]: text, JSON and DOT renderings shared by the CLI and the demo.

pub mod digraph;
pub mod edge_graph;
mod error;
pub mod hamilton;
pub mod matrix;
pub mod normal_form;
pub mod reduction;
pub mod render;
pub mod trace;

pub use digraph::{Digraph, Edge};
pub use edge_graph::{
    build_edge_graph, build_edge_graph_with, decompose_blocks, f_matrix, transit_adjacency,
    validate_duality, Block, BlockDecomposition, EdgeGraphModel, TerminalMode,
};
pub use error::{Error, Result};
pub use hamilton::{
    brute_force_hamilton, euler_partial_graphs, euler_partial_graphs_par, hamilton_cycles,
    hamilton_from_euler, realizability_oracle, CycleSet, EulerPartial, HamiltonOptions, NormalForm,
    BRUTE_FORCE_CAP, REALIZABILITY_CAP,
};
pub use matrix::BinaryMatrix;
pub use normal_form::{
    c_matrix, canonical_check, canonicalize, delta_n, quasicanonical_check, quasinormalize, s_matrix,
    CheckMode, CheckReport, ScanOrder, Violation, ViolationKind,
};
pub use reduction::{
    is_forming, reduce_step, reduce_to_forming, sigma_diagonal, FormingResult, RemovedRecord,
};
pub use trace::{Step, StepKind, TransformTrace};
