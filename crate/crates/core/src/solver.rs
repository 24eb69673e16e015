//! One entry point over every algorithm, with the automatic dispatch used
//! by the CLI and the C interface.

use crate::error::{Error, Result};
use crate::graph::{classify_topology, enumerate_connected_subsets};
use crate::model::{Assignment, Instance};
use crate::stability::Concept;
use crate::tree_dp::ChildStrategy;
use crate::{clique_flow, core_algo, is_tree, ns_tree, oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    Auto,
    Oracle,
    Tree,
    Flow,
    CoreEnum,
    CoreSingle,
    IsCopyable,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Step cap for the oracle and core enumeration; `None` uses each
    /// algorithm's default.
    pub budget: Option<u64>,
    /// Oracle threads; 1 is sequential.
    pub jobs: usize,
    pub strategy: ChildStrategy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: None, jobs: 1, strategy: ChildStrategy::Deterministic }
    }
}

/// Most specific algorithm for the instance: acyclic graphs use the tree DP
/// (or the copyable greedy once there are too many activities), cliques the
/// flow method for Nash stability, one activity the direct core rule, paths
/// and stars core enumeration when the connected subsets fit the budget.
pub fn auto_algorithm(inst: &Instance, concept: Concept, budget: u64) -> Algorithm {
    let topo = classify_topology(inst);
    let few_activities = inst.p() <= 12;
    match concept {
        Concept::Nash | Concept::Individual if topo.is_forest() && few_activities => Algorithm::Tree,
        Concept::Individual if topo.is_forest() && inst.all_copyable() => Algorithm::IsCopyable,
        Concept::Nash if topo.is_clique() => Algorithm::Flow,
        Concept::Core if inst.p() == 1 => Algorithm::CoreSingle,
        Concept::Core if (topo.is_path() || topo.is_star()) && enumerate_connected_subsets(inst, budget).is_ok() => {
            Algorithm::CoreEnum
        }
        _ => Algorithm::Oracle,
    }
}

/// Runs `algo` for `concept`. `Ok(None)` means no stable assignment exists.
pub fn solve(inst: &Instance, concept: Concept, algo: Algorithm, opts: &SolveOptions) -> Result<Option<Assignment>> {
    let mismatch = || Err(Error::Unsupported(format!("{algo:?} does not decide {concept}")));
    match algo {
        Algorithm::Auto => {
            let budget = opts.budget.unwrap_or(core_algo::DEFAULT_CORE_BUDGET);
            solve(inst, concept, auto_algorithm(inst, concept, budget), opts)
        }
        Algorithm::Oracle => {
            let budget = opts.budget.unwrap_or(oracle::DEFAULT_BUDGET);
            if opts.jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.jobs)
                    .build()
                    .map_err(|e| Error::Unsupported(e.to_string()))?;
                pool.install(|| oracle::oracle_find_parallel(inst, concept, budget))
            } else {
                oracle::oracle_find(inst, concept, budget)
            }
        }
        Algorithm::Tree => match concept {
            Concept::Nash => ns_tree::solve_ns_forest_with(inst, opts.strategy),
            Concept::Individual => is_tree::solve_is_forest_with(inst, opts.strategy),
            Concept::Core => mismatch(),
        },
        Algorithm::Flow if concept == Concept::Nash => clique_flow::solve_ns_clique(inst),
        Algorithm::CoreEnum if concept == Concept::Core => {
            core_algo::solve_core_connected_enum(inst, opts.budget.unwrap_or(core_algo::DEFAULT_CORE_BUDGET))
        }
        Algorithm::CoreSingle if concept == Concept::Core => core_algo::solve_core_single_activity(inst).map(Some),
        Algorithm::IsCopyable if concept == Concept::Individual => is_tree::solve_is_copyable_acyclic(inst).map(Some),
        _ => mismatch(),
    }
}
