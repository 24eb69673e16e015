//! Exhaustive search over feasible individually rational assignments.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::is_connected_subset;
use crate::model::{Activity, Assignment, Instance};
use crate::stability::{verify, Concept};

/// Default cap on search nodes.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

struct Search<'a> {
    inst: &'a Instance,
    options: Vec<Vec<Activity>>,
    /// Largest acceptable size per (player, activity code).
    max_ok: Vec<Vec<usize>>,
    /// Last player that may still pick each activity.
    last_pick: Vec<Option<usize>>,
    choice: Vec<Activity>,
    counts: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, budget: u64) -> Self {
        let (n, p) = (inst.n(), inst.p());
        let mut options = Vec::with_capacity(n);
        let mut max_ok = vec![vec![0; p + 1]; n];
        let mut last_pick = vec![None; p + 1];
        for i in 0..n {
            let mut opts = vec![Activity::VOID];
            for a in inst.activities() {
                let best = (1..=n).rev().find(|&s| inst.acceptable(i, a, s));
                if let Some(s) = best {
                    max_ok[i][a.0] = s;
                    opts.push(a);
                    last_pick[a.0] = Some(i);
                }
            }
            options.push(opts);
        }
        Search {
            inst,
            options,
            max_ok,
            last_pick,
            choice: vec![Activity::VOID; n],
            counts: vec![0; p + 1],
            nodes: 0,
            budget,
        }
    }

    /// Checks a group whose membership is now final.
    fn group_ok(&self, a: Activity) -> bool {
        let members: Vec<usize> = (0..self.inst.n()).filter(|&i| self.choice[i] == a).collect();
        let s = members.len();
        is_connected_subset(self.inst, &members) && members.iter().all(|&i| self.inst.acceptable(i, a, s))
    }

    fn run<F>(&mut self, depth: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&Assignment) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let n = self.inst.n();
        if depth == n {
            return Ok(visit(&Assignment::new(self.choice.clone())));
        }
        let i = depth;
        for oi in 0..self.options[i].len() {
            let a = self.options[i][oi];
            if !a.is_void() {
                let next = self.counts[a.0] + 1;
                // Every member so far must still accept the grown group.
                if next > self.max_ok[i][a.0] || (0..i).any(|j| self.choice[j] == a && next > self.max_ok[j][a.0]) {
                    continue;
                }
                self.counts[a.0] = next;
            }
            self.choice[i] = a;
            let closing: Vec<Activity> =
                self.inst.activities().filter(|b| self.last_pick[b.0] == Some(i) && self.counts[b.0] > 0).collect();
            let ok = closing.iter().all(|&b| self.group_ok(b));
            let flow = if ok { self.run(depth + 1, visit)? } else { ControlFlow::Continue(()) };
            if !a.is_void() {
                self.counts[a.0] -= 1;
            }
            self.choice[i] = Activity::VOID;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Visits every feasible individually rational assignment once, in
/// lexicographic order of the choice vector. Returns the number visited.
pub fn enumerate_feasible_ir<F>(inst: &Instance, budget: u64, mut visit: F) -> Result<u64>
where
    F: FnMut(&Assignment) -> ControlFlow<()>,
{
    let mut search = Search::new(inst, budget);
    let mut count = 0u64;
    let _ = search.run(0, &mut |pi: &Assignment| {
        count += 1;
        visit(pi)
    })?;
    Ok(count)
}

/// First assignment in enumeration order that is stable for `concept`.
pub fn oracle_find(inst: &Instance, concept: Concept, budget: u64) -> Result<Option<Assignment>> {
    let mut found = None;
    enumerate_feasible_ir(inst, budget, |pi| {
        if verify(inst, pi, concept).is_stable() {
            found = Some(pi.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Same answer as [`oracle_find`], splitting the search over the first
/// player's choices across threads. Each branch gets the full budget.
pub fn oracle_find_parallel(inst: &Instance, concept: Concept, budget: u64) -> Result<Option<Assignment>> {
    if inst.n() == 0 {
        return oracle_find(inst, concept, budget);
    }
    let first = Search::new(inst, budget).options[0].clone();
    let results: Vec<Result<Option<Assignment>>> = first
        .par_iter()
        .map(|&a| {
            let mut search = Search::new(inst, budget);
            search.options[0] = vec![a];
            let mut found = None;
            let _ = search.run(0, &mut |pi: &Assignment| {
                if verify(inst, pi, concept).is_stable() {
                    found = Some(pi.clone());
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            Ok(found)
        })
        .collect();
    // Branches are in lexicographic order, so the first hit is the minimum.
    for r in results {
        if let Some(pi) = r? {
            return Ok(Some(pi));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{no_core, no_is, single_loner, stalker};
    use crate::stability::{check_feasible, check_ir};

    fn all(inst: &Instance) -> Vec<Assignment> {
        let mut out = Vec::new();
        enumerate_feasible_ir(inst, DEFAULT_BUDGET, |pi| {
            out.push(pi.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
        out
    }

    #[test]
    fn single_player_visits_two() {
        let v = all(&single_loner());
        assert_eq!(v, vec![Assignment::new(vec![Activity(0)]), Assignment::new(vec![Activity(1)])]);
    }

    #[test]
    fn stalker_visits_two() {
        let v = all(&stalker(1));
        assert_eq!(
            v,
            vec![Assignment::new(vec![Activity(0), Activity(0)]), Assignment::new(vec![Activity(1), Activity(0)])]
        );
    }

    #[test]
    fn no_is_visits_the_nine_listed() {
        let visited = all(&no_is());
        let both_busy = visited.iter().filter(|pi| !pi.get(0).is_void() && !pi.get(1).is_void()).count();
        assert_eq!(both_busy, 9);
        for pi in &visited {
            assert!(check_feasible(&no_is(), pi).is_ok() && check_ir(&no_is(), pi).is_ok());
        }
    }

    #[test]
    fn examples_have_no_stable_assignment() {
        assert_eq!(oracle_find(&stalker(1), Concept::Nash, DEFAULT_BUDGET).unwrap(), None);
        assert_eq!(oracle_find(&no_is(), Concept::Individual, DEFAULT_BUDGET).unwrap(), None);
        assert_eq!(oracle_find(&no_core(), Concept::Core, DEFAULT_BUDGET).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(oracle_find(&no_is(), Concept::Individual, 3), Err(Error::BudgetExceeded(3))));
    }

    #[test]
    fn parallel_matches_sequential() {
        for inst in [stalker(2), no_is(), no_core(), single_loner()] {
            for c in [Concept::Nash, Concept::Individual, Concept::Core] {
                assert_eq!(
                    oracle_find(&inst, c, DEFAULT_BUDGET).unwrap(),
                    oracle_find_parallel(&inst, c, DEFAULT_BUDGET).unwrap()
                );
            }
        }
    }
}
