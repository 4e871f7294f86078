//! Exact computation of fractional and integral graph tiling numbers.
//!
//! Given a host graph `G` and a pattern `H` with a proper colouring, this
//! crate enumerates homomorphisms `H -> G`, builds the associated packing
//! and covering linear programs over exact rationals, solves them with a
//! Bland-rule simplex, certifies the results against independent checkers,
//! and computes integral tiling numbers by branch and bound. Generators for
//! layered extremal hosts and degree-profile bound checkers round out the
//! toolkit.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod hom;
pub mod lp;
pub mod rat;
pub mod tiling;

pub use error::{Error, Result};
pub use graph::{
    degree_profile, degree_threshold, is_proper_colouring, optimal_r_colouring, parse_graph_auto,
    parse_graph_json, parse_graph_text, write_graph_json, write_graph_text, DegreeProfile, Graph,
    LabelledGraph, Pattern,
};
pub use hom::{
    brute_force_homomorphisms, count_homomorphisms, enumerate_columns, enumerate_columns_capped,
    enumerate_homomorphisms, enumerate_injective_copies, ColumnVector, HomColumn, Homomorphism,
    InjectiveCopy,
};
pub use lp::{
    dump_lp, solve, solve_with_lazy_rows, verify_solution, Direction, LpProblem, LpRow,
    LpSolution, LpStatus, Sense,
};
pub use rat::{int, parse_rat, rat, Rat};
