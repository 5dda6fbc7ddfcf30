//! Decide, verify, normalize, enumerate, and analyze Steiner rooted
//! k-arc-connected orientations of undirected multigraphs.
//!
//! An instance is a loopless multigraph together with a root vertex, a set of
//! terminal vertices, and a requirement `k`. An orientation of the instance is
//! *feasible* when every terminal can be reached from the root by `k`
//! arc-disjoint directed paths. The crate provides:
//!
//! * [`graph`]: multigraphs, digraphs, orientations, suppression, ancestor
//!   tracking, fixed-vertex isomorphism, and canonical codes.
//! * [`connectivity`]: arc connectivity, minimum cuts, certified feasibility
//!   verification, and orientation bounds for partially oriented graphs.
//! * [`solver`]: an exact decision procedure for feasible orientations, a
//!   brute-force oracle, and a solver for rooted demand instances.
//! * [`reductions`]: degree-normalizing reductions with orientation lifting.
//! * [`minor`]: fixed-vertex topological minor embedding, enumeration of
//!   minimal feasible instances, and catalog-based decision.
//! * [`structure`]: structural analysis of feasible orientations (feedback
//!   sets, disjoint cycles, flow supports, essential cycles, tight cuts).
//! * [`hardness`]: generators that translate satisfiability and coloring
//!   problems into orientation instances.
//! * [`io`]: text and JSON file formats for instances, orientations, demand
//!   instances, formulas, and root-modified instances.
//! * [`cli`]: the `steiner-orient` command-line interface.

pub mod cli;
pub mod connectivity;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod minor;
pub mod reductions;
pub mod solver;
pub mod structure;
