//! Nash stability on acyclic graphs, FPT in the number of activities.

use crate::error::{Error, Result};
use crate::graph::{classify_topology, components_within};
use crate::model::{Assignment, Instance};
use crate::tree_dp::{self, ChildStrategy, Mode, TreeState};

/// A Nash stable assignment on a forest, or `None` if none exists.
pub fn solve_ns_forest(inst: &Instance) -> Result<Option<Assignment>> {
    solve_ns_forest_with(inst, ChildStrategy::Deterministic)
}

pub fn solve_ns_forest_with(inst: &Instance, strategy: ChildStrategy) -> Result<Option<Assignment>> {
    if !classify_topology(inst).is_forest() {
        return Err(Error::Unsupported("Nash stability tree DP needs an acyclic graph".into()));
    }
    Ok(tree_dp::solve_forest(inst, Mode::Nash, strategy))
}

/// Closed root states of the tree containing `root`, rooted at its lowest
/// vertex, when exactly the activity slots in `used_mask` are used.
pub fn ns_root_states(inst: &Instance, root: usize, used_mask: u32) -> Result<Vec<TreeState>> {
    let comp = component_of(inst, root)?;
    Ok(tree_dp::root_states(inst, Mode::Nash, &comp, used_mask, ChildStrategy::Deterministic))
}

pub(crate) fn component_of(inst: &Instance, v: usize) -> Result<Vec<usize>> {
    let topo = classify_topology(inst);
    if !topo.is_forest() {
        return Err(Error::Unsupported("tree DP needs an acyclic graph".into()));
    }
    let all = vec![true; inst.n()];
    components_within(inst, &all)
        .into_iter()
        .find(|c| c.contains(&v))
        .ok_or_else(|| Error::Precondition(format!("no player {}", v + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{graph_instance, no_is, single_loner, stalker};
    use crate::model::{Activity, Alternative, PreferenceOrder, RawInstance};
    use crate::oracle::{oracle_find, DEFAULT_BUDGET};
    use crate::stability::{verify, Concept};

    #[test]
    fn stalker_has_no_root_state() {
        let f1 = stalker(1);
        assert!(ns_root_states(&f1, 0, 0b1).unwrap().iter().all(|s| s.used != 0b1));
        assert_eq!(solve_ns_forest(&f1).unwrap(), None);
    }

    #[test]
    fn single_player_leaf_case() {
        let f4 = single_loner();
        let states = ns_root_states(&f4, 0, 0b1).unwrap();
        assert!(states.iter().any(|s| s.used == 1 && s.activity == Activity(1) && s.size == 1 && s.below == 1));
        assert_eq!(solve_ns_forest(&f4).unwrap(), Some(Assignment::new(vec![Activity(1)])));
    }

    #[test]
    fn two_loners_share_one_activity() {
        let mut raw = single_loner().to_raw();
        raw.players = 2;
        raw.preferences.push(raw.preferences[0].clone());
        let inst = Instance::new(raw).unwrap();
        let pi = solve_ns_forest(&inst).unwrap().unwrap();
        assert!(verify(&inst, &pi, Concept::Nash).is_stable());
        assert_eq!(pi.group_size(Activity(1)), 1);
    }

    #[test]
    fn isolated_players_with_private_activities() {
        let n = 3;
        let preferences = (0..n)
            .map(|i| {
                PreferenceOrder::new(vec![vec![Alternative::new(Activity(i + 1), 1)], vec![Alternative::VOID]])
            })
            .collect();
        let inst = Instance::new(RawInstance {
            players: n,
            activities: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![],
            preferences,
        })
        .unwrap();
        let pi = solve_ns_forest(&inst).unwrap().unwrap();
        assert_eq!(pi.choice, vec![Activity(1), Activity(2), Activity(3)]);
    }

    #[test]
    fn path_example_matches_oracle() {
        let f2 = no_is();
        let oracle = oracle_find(&f2, Concept::Nash, DEFAULT_BUDGET).unwrap();
        assert_eq!(solve_ns_forest(&f2).unwrap().is_some(), oracle.is_some());
    }

    #[test]
    fn rejects_cycles() {
        let cycle = graph_instance(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(solve_ns_forest(&cycle).is_err());
    }
}
