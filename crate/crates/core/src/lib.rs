//! Group activity selection on social networks: instances, stability
//! verifiers, exact oracles and specialised solvers for Nash, individual
//! and core stability.
//!
//! Players are 0-based throughout the API; files and CLI output are 1-based.

pub mod bench;
pub mod cli;
pub mod clique_flow;
pub mod core_algo;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod is_tree;
pub mod model;
pub mod ns_tree;
pub mod oracle;
pub mod solver;
pub mod stability;
mod tree_dp;

pub use clique_flow::solve_ns_clique;
pub use core_algo::{solve_core_connected_enum, solve_core_single_activity, DEFAULT_CORE_BUDGET};
pub use error::{Error, Result, Violation};
pub use is_tree::{is_root_states, solve_is_copyable_acyclic, solve_is_forest, solve_is_forest_with};
pub use model::{Activity, Alternative, Assignment, Comparison, Instance, PreferenceOrder, RawInstance};
pub use ns_tree::{ns_root_states, solve_ns_forest, solve_ns_forest_with};
pub use oracle::{enumerate_feasible_ir, oracle_find, oracle_find_parallel, DEFAULT_BUDGET};
pub use solver::{auto_algorithm, solve, Algorithm, SolveOptions};
pub use stability::{verify, Concept, Verdict, Witness};
pub use tree_dp::{ChildStrategy, TreeState};
