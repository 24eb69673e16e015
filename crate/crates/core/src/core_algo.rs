//! Core stability: a polynomial rule for one activity and a bounded
//! search over connected groups for small graphs.

use crate::error::{Error, Result};
use crate::graph::{components_within, connected_prefix, enumerate_connected_subsets};
use crate::model::{Activity, Alternative, Assignment, Instance};
use crate::stability::find_core_block;

/// Default cap on connected subsets plus search nodes.
pub const DEFAULT_CORE_BUDGET: u64 = 10_000_000;

/// Core stable assignment when there is exactly one activity. Always exists.
pub fn solve_core_single_activity(inst: &Instance) -> Result<Assignment> {
    if inst.p() != 1 {
        return Err(Error::Precondition(format!("expected one activity, found {}", inst.p())));
    }
    let n = inst.n();
    let a = Activity(1);
    for s in (1..=n).rev() {
        let eager: Vec<bool> = (0..n).map(|i| inst.approves(i, Alternative::new(a, s))).collect();
        if !components_within(inst, &eager).iter().any(|c| c.len() >= s) {
            continue;
        }
        let group = connected_prefix(inst, &[], &eager, s).expect("component is large enough");
        let mut choice = vec![Activity::VOID; n];
        for i in group {
            choice[i] = a;
        }
        return Ok(Assignment::new(choice));
    }
    Ok(Assignment::all_void(n))
}

/// First core stable assignment found by giving each activity either no
/// group or one individually rational connected group, groups disjoint.
/// Activities are tried in order, "no group" before the subsets.
pub fn solve_core_connected_enum(inst: &Instance, budget: u64) -> Result<Option<Assignment>> {
    let subsets = enumerate_connected_subsets(inst, budget)?;
    let mut spent = subsets.len() as u64;
    let candidates: Vec<Vec<&Vec<usize>>> = inst
        .activities()
        .map(|a| subsets.iter().filter(|g| g.iter().all(|&i| inst.acceptable(i, a, g.len()))).collect())
        .collect();
    let mut choice = vec![Activity::VOID; inst.n()];
    let found = search(inst, &candidates, 0, &mut choice, &mut spent, budget)?;
    Ok(found.then(|| Assignment::new(choice)))
}

fn search(
    inst: &Instance,
    candidates: &[Vec<&Vec<usize>>],
    slot: usize,
    choice: &mut Vec<Activity>,
    spent: &mut u64,
    budget: u64,
) -> Result<bool> {
    *spent += 1;
    if *spent > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    if slot == candidates.len() {
        let pi = Assignment::new(choice.clone());
        return Ok(find_core_block(inst, &pi).is_none());
    }
    if search(inst, candidates, slot + 1, choice, spent, budget)? {
        return Ok(true);
    }
    let a = Activity::from_slot(slot);
    for group in &candidates[slot] {
        if group.iter().any(|&i| !choice[i].is_void()) {
            continue;
        }
        for &i in group.iter() {
            choice[i] = a;
        }
        if search(inst, candidates, slot + 1, choice, spent, budget)? {
            return Ok(true);
        }
        for &i in group.iter() {
            choice[i] = Activity::VOID;
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_random, no_core, stalker, RandomSpec, RandomTopology};
    use crate::oracle::{oracle_find, DEFAULT_BUDGET};
    use crate::stability::{verify, Concept};

    #[test]
    fn no_core_example_is_empty() {
        assert_eq!(solve_core_connected_enum(&no_core(), DEFAULT_CORE_BUDGET).unwrap(), None);
    }

    #[test]
    fn single_activity_on_stalker() {
        let inst = stalker(1);
        let pi = solve_core_single_activity(&inst).unwrap();
        assert!(verify(&inst, &pi, Concept::Core).is_stable());
        assert!(matches!(solve_core_single_activity(&no_core()), Err(Error::Precondition(_))));
    }

    #[test]
    fn single_activity_on_random_trees() {
        for seed in 0..50 {
            let spec = RandomSpec { seed, topology: RandomTopology::General, n: 6, p: 1, approval: 0.5, ties: 0.3 };
            let inst = gen_random(&spec);
            let pi = solve_core_single_activity(&inst).unwrap();
            assert!(verify(&inst, &pi, Concept::Core).is_stable(), "seed {seed}");
        }
    }

    #[test]
    fn enumeration_agrees_with_oracle() {
        for seed in 0..30 {
            let spec = RandomSpec { seed, topology: RandomTopology::Path, n: 5, p: 2, approval: 0.5, ties: 0.3 };
            let inst = gen_random(&spec);
            let fast = solve_core_connected_enum(&inst, DEFAULT_CORE_BUDGET).unwrap();
            let slow = oracle_find(&inst, Concept::Core, DEFAULT_BUDGET).unwrap();
            assert_eq!(fast.is_some(), slow.is_some(), "seed {seed}");
        }
    }

    #[test]
    fn budget_applies() {
        assert!(matches!(solve_core_connected_enum(&no_core(), 3), Err(Error::BudgetExceeded(3))));
    }
}
