//! Individual stability on acyclic graphs: the FPT tree DP, and a
//! polynomial greedy for copyable instances.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{classify_topology, components_within};
use crate::model::{Activity, Alternative, Assignment, Instance};
use crate::ns_tree::component_of;
use crate::stability::is_valid_is_deviation;
use crate::tree_dp::{self, ChildStrategy, Mode, TreeState};

/// An individually stable assignment on a forest, or `None` if none exists.
pub fn solve_is_forest(inst: &Instance) -> Result<Option<Assignment>> {
    solve_is_forest_with(inst, ChildStrategy::Deterministic)
}

pub fn solve_is_forest_with(inst: &Instance, strategy: ChildStrategy) -> Result<Option<Assignment>> {
    if !classify_topology(inst).is_forest() {
        return Err(Error::Unsupported("individual stability tree DP needs an acyclic graph".into()));
    }
    Ok(tree_dp::solve_forest(inst, Mode::Individual, strategy))
}

pub fn is_root_states(inst: &Instance, root: usize, used_mask: u32) -> Result<Vec<TreeState>> {
    let comp = component_of(inst, root)?;
    Ok(tree_dp::root_states(inst, Mode::Individual, &comp, used_mask, ChildStrategy::Deterministic))
}

struct Greedy<'a> {
    inst: &'a Instance,
    choice: Vec<Activity>,
    /// Representative (lowest equivalent activity) per activity code.
    class: Vec<usize>,
}

impl<'a> Greedy<'a> {
    fn pi(&self) -> Assignment {
        Assignment::new(self.choice.clone())
    }

    fn members(&self, a: Activity) -> Vec<usize> {
        (0..self.inst.n()).filter(|&j| self.choice[j] == a).collect()
    }

    /// An activity of the same class as `a` that nobody uses.
    fn fresh_copy(&self, a: Activity) -> Activity {
        self.inst
            .activities()
            .find(|b| self.class[b.0] == self.class[a.0] && !self.choice.contains(b))
            .expect("copyable instance has a free copy")
    }

    /// Moves `j` to `a`, relabelling the pieces of a group that falls apart.
    fn relocate(&mut self, j: usize, a: Activity) {
        let old = self.choice[j];
        self.choice[j] = a;
        if old.is_void() {
            return;
        }
        let mut allowed = vec![false; self.inst.n()];
        for m in self.members(old) {
            allowed[m] = true;
        }
        let pieces = components_within(self.inst, &allowed);
        for piece in pieces.iter().skip(1) {
            let b = self.fresh_copy(old);
            for &m in piece {
                self.choice[m] = b;
            }
        }
    }

    /// Best IS deviation for `i`, ties to the lowest activity.
    fn best_deviation(&self, i: usize) -> Option<Activity> {
        let pi = self.pi();
        let mut best: Option<(u32, Activity)> = None;
        for a in self.inst.activities() {
            if !is_valid_is_deviation(self.inst, &pi, i, a) {
                continue;
            }
            let r = self.inst.rank(i, Alternative::new(a, pi.group_size(a) + 1));
            if best.is_none_or(|(br, _)| r < br) {
                best = Some((r, a));
            }
        }
        best.map(|(_, a)| a)
    }

    /// Pulls willing players in `scope` into the group of `a` until no one
    /// else wants in.
    fn grow(&mut self, a: Activity, scope: &[bool]) {
        loop {
            let group = self.members(a);
            let mut seen = vec![false; self.inst.n()];
            let mut queue: VecDeque<usize> = group.iter().copied().collect();
            for &m in &group {
                seen[m] = true;
            }
            let mut moved = false;
            while let Some(u) = queue.pop_front() {
                for &v in self.inst.neighbors(u) {
                    if seen[v] || !scope[v] {
                        continue;
                    }
                    seen[v] = true;
                    if is_valid_is_deviation(self.inst, &self.pi(), v, a) {
                        self.relocate(v, a);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    break;
                }
            }
            if !moved {
                return;
            }
        }
    }
}

/// Individually stable assignment for a copyable instance on a forest.
/// Processes each tree bottom-up: a vertex takes its favourite individual
/// deviation, then its group absorbs willing players from the subtree.
pub fn solve_is_copyable_acyclic(inst: &Instance) -> Result<Assignment> {
    let topo = classify_topology(inst);
    if !topo.is_forest() {
        return Err(Error::Precondition("graph is not acyclic".into()));
    }
    if !inst.all_copyable() {
        return Err(Error::Precondition("instance is not copyable".into()));
    }
    let n = inst.n();
    let mut class = vec![0; inst.p() + 1];
    for a in inst.activities() {
        class[a.0] = inst.activities().find(|&b| inst.equivalent(a, b)).unwrap().0;
    }
    let mut g = Greedy { inst, choice: vec![Activity::VOID; n], class };
    for comp in &topo.components {
        // BFS order from the lowest vertex; reversed it is a post-order.
        let root = comp[0];
        let mut order = vec![root];
        let mut parent = vec![usize::MAX; n];
        let mut k = 0;
        while k < order.len() {
            let u = order[k];
            k += 1;
            for &v in inst.neighbors(u) {
                if v != root && parent[v] == usize::MAX && v != parent[u] {
                    parent[v] = u;
                    order.push(v);
                }
            }
        }
        let mut subtree = vec![vec![false; n]; n];
        for &u in order.iter().rev() {
            subtree[u][u] = true;
            for &v in inst.neighbors(u) {
                if parent[v] == u {
                    let below = subtree[v].clone();
                    for (x, &b) in below.iter().enumerate() {
                        subtree[u][x] |= b;
                    }
                }
            }
        }
        for &i in order.iter().rev() {
            if let Some(a) = g.best_deviation(i) {
                g.relocate(i, a);
                g.grow(a, &subtree[i]);
            }
        }
    }
    Ok(g.pi())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::{verify, Concept};
    use crate::generators::{gen_random, graph_instance, make_copyable, no_is, stalker, RandomSpec, RandomTopology};
    use crate::oracle::{oracle_find, DEFAULT_BUDGET};

    #[test]
    fn no_is_example_has_no_solution() {
        assert_eq!(solve_is_forest(&no_is()).unwrap(), None);
    }

    #[test]
    fn stalker_is_individually_stable_with_loner_alone() {
        let pi = solve_is_forest(&stalker(1)).unwrap().unwrap();
        assert!(verify(&stalker(1), &pi, Concept::Individual).is_stable());
    }

    #[test]
    fn copyable_no_is_becomes_solvable() {
        let inst = make_copyable(&no_is());
        let pi = solve_is_copyable_acyclic(&inst).unwrap();
        assert!(verify(&inst, &pi, Concept::Individual).is_stable());
    }

    #[test]
    fn copyable_greedy_on_random_trees() {
        for seed in 0..40 {
            let spec = RandomSpec { seed, topology: RandomTopology::Tree, n: 4, p: 1, approval: 0.5, ties: 0.2 };
            let inst = make_copyable(&gen_random(&spec));
            let pi = solve_is_copyable_acyclic(&inst).unwrap();
            assert!(verify(&inst, &pi, Concept::Individual).is_stable(), "seed {seed}: {pi}");
        }
    }

    #[test]
    fn forest_dp_agrees_with_oracle_on_small_paths() {
        for seed in 0..30 {
            let spec = RandomSpec { seed, topology: RandomTopology::Path, n: 4, p: 2, approval: 0.5, ties: 0.3 };
            let inst = gen_random(&spec);
            let dp = solve_is_forest(&inst).unwrap();
            let oracle = oracle_find(&inst, Concept::Individual, DEFAULT_BUDGET).unwrap();
            assert_eq!(dp.is_some(), oracle.is_some(), "seed {seed}");
        }
    }

    #[test]
    fn preconditions() {
        let cycle = graph_instance(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(matches!(solve_is_copyable_acyclic(&cycle), Err(Error::Precondition(_))));
        assert!(matches!(solve_is_copyable_acyclic(&no_is()), Err(Error::Precondition(_))));
    }
}
