//! Worked examples, random instances, copyable variants and the hardness
//! reduction constructions.

mod reductions;

pub use reductions::{
    reduce_clique_to_ns, reduce_hitting_set_to_core, reduce_mcc_to_ns, witness_clique, witness_hitting_set,
    witness_mcc, ReductionMetadata, SimpleGraph,
};

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::model::{Activity, Alternative, Instance, PreferenceOrder, RawInstance};

fn alt(a: usize, s: usize) -> Alternative {
    Alternative::new(Activity(a), s)
}

fn chain(items: &[(usize, usize)]) -> PreferenceOrder {
    let mut tiers: Vec<Vec<Alternative>> = items.iter().map(|&(a, s)| vec![alt(a, s)]).collect();
    tiers.push(vec![Alternative::VOID]);
    PreferenceOrder::new(tiers)
}

fn build(raw: RawInstance) -> Instance {
    Instance::new(raw).expect("generated instance must validate")
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    if count == 1 && prefix == "a" {
        return vec!["a".into()];
    }
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// Two players joined by an edge: the loner approves only size-1
/// alternatives, the stalker only size-2 ones, over `p` activities.
pub fn stalker(p: usize) -> Instance {
    assert!(p >= 1, "stalker game needs at least one activity");
    let loner = PreferenceOrder::new(vec![(1..=p).map(|a| alt(a, 1)).collect(), vec![Alternative::VOID]]);
    let stalker = PreferenceOrder::new(vec![(1..=p).map(|a| alt(a, 2)).collect(), vec![Alternative::VOID]]);
    build(RawInstance {
        players: 2,
        activities: names("a", p),
        edges: vec![(0, 1)],
        preferences: vec![loner, stalker],
    })
}

/// Three players on a path with strict preferences and no individually
/// stable assignment. Activities are `a`, `b`, `c`.
pub fn no_is() -> Instance {
    let (a, b, c) = (1, 2, 3);
    build(RawInstance {
        players: 3,
        activities: vec!["a".into(), "b".into(), "c".into()],
        edges: vec![(0, 1), (1, 2)],
        preferences: vec![
            chain(&[(b, 2), (a, 1), (c, 3), (c, 2), (c, 1)]),
            chain(&[(c, 3), (c, 2), (a, 2), (b, 2), (b, 1)]),
            chain(&[(c, 3), (a, 2), (a, 1)]),
        ],
    })
}

/// Three players on a path, two activities, empty core.
pub fn no_core() -> Instance {
    let (a, b) = (1, 2);
    build(RawInstance {
        players: 3,
        activities: vec!["a".into(), "b".into()],
        edges: vec![(0, 1), (1, 2)],
        preferences: vec![
            chain(&[(b, 2), (a, 3)]),
            chain(&[(a, 2), (b, 2), (a, 3)]),
            chain(&[(a, 3), (b, 1), (a, 2)]),
        ],
    })
}

/// One player approving only `(a, 1)`.
pub fn single_loner() -> Instance {
    build(RawInstance {
        players: 1,
        activities: vec!["a".into()],
        edges: vec![],
        preferences: vec![chain(&[(1, 1)])],
    })
}

/// Named worked examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorkedExample {
    Stalker(usize),
    NoIs,
    NoCore,
    Single,
}

pub fn gen_example(which: WorkedExample) -> Instance {
    match which {
        WorkedExample::Stalker(p) => stalker(p),
        WorkedExample::NoIs => no_is(),
        WorkedExample::NoCore => no_core(),
        WorkedExample::Single => single_loner(),
    }
}

/// An instance on the given graph where every player only lists void.
pub fn graph_instance(n: usize, edges: &[(usize, usize)]) -> Instance {
    build(RawInstance {
        players: n,
        activities: vec!["a".into()],
        edges: edges.to_vec(),
        preferences: vec![PreferenceOrder::new(vec![vec![Alternative::VOID]]); n],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomTopology {
    Path,
    Star,
    Tree,
    Forest,
    Clique,
    General,
}

impl FromStr for RandomTopology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "path" => RandomTopology::Path,
            "star" => RandomTopology::Star,
            "tree" => RandomTopology::Tree,
            "forest" => RandomTopology::Forest,
            "clique" => RandomTopology::Clique,
            "general" => RandomTopology::General,
            other => return Err(Error::Parse(format!("unknown topology {other:?}"))),
        })
    }
}

impl fmt::Display for RandomTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RandomTopology::Path => "path",
            RandomTopology::Star => "star",
            RandomTopology::Tree => "tree",
            RandomTopology::Forest => "forest",
            RandomTopology::Clique => "clique",
            RandomTopology::General => "general",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub seed: u64,
    pub topology: RandomTopology,
    pub n: usize,
    pub p: usize,
    /// Probability that a given (activity, size) pair is approved.
    pub approval: f64,
    /// Probability that consecutive approved alternatives share a tier.
    pub ties: f64,
}

fn random_edges(rng: &mut ChaCha8Rng, topology: RandomTopology, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    match topology {
        RandomTopology::Path => edges.extend((1..n).map(|v| (v - 1, v))),
        RandomTopology::Star => edges.extend((1..n).map(|v| (0, v))),
        RandomTopology::Clique => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
        }
        RandomTopology::Tree | RandomTopology::Forest => {
            let mut label: Vec<usize> = (0..n).collect();
            label.shuffle(rng);
            for v in 1..n {
                let parent = rng.gen_range(0..v);
                if topology == RandomTopology::Forest && rng.gen_bool(0.3) {
                    continue;
                }
                edges.push((label[parent], label[v]));
            }
        }
        RandomTopology::General => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    edges
}

fn random_order(rng: &mut ChaCha8Rng, n: usize, p: usize, approval: f64, ties: f64) -> PreferenceOrder {
    let mut approved = Vec::new();
    let mut rest = Vec::new();
    for a in 1..=p {
        for s in 1..=n {
            if rng.gen_bool(approval) {
                approved.push(alt(a, s));
            } else {
                rest.push(alt(a, s));
            }
        }
    }
    approved.shuffle(rng);
    let mut tiers: Vec<Vec<Alternative>> = Vec::new();
    for x in approved {
        match tiers.last_mut() {
            Some(t) if rng.gen_bool(ties) => t.push(x),
            _ => tiers.push(vec![x]),
        }
    }
    let mut void_tier = vec![Alternative::VOID];
    if !rest.is_empty() && rng.gen_bool(ties) {
        void_tier.push(rest[rng.gen_range(0..rest.len())]);
    }
    tiers.push(void_tier);
    PreferenceOrder::new(tiers)
}

/// A reproducible pseudo-random instance.
pub fn gen_random(spec: &RandomSpec) -> Instance {
    assert!(spec.n >= 1 && spec.p >= 1, "need at least one player and one activity");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = random_edges(&mut rng, spec.topology, spec.n);
    let preferences = (0..spec.n).map(|_| random_order(&mut rng, spec.n, spec.p, spec.approval, spec.ties)).collect();
    build(RawInstance {
        players: spec.n,
        activities: (0..spec.p).map(|i| ((b'a' + (i % 26) as u8) as char).to_string() + &suffix(i)).collect(),
        edges,
        preferences,
    })
}

fn suffix(i: usize) -> String {
    if i < 26 {
        String::new()
    } else {
        (i / 26).to_string()
    }
}

/// Extends `base` with `extra_players` random players, each hanging off an
/// earlier player with probability 0.8 (so forests stay forests), and
/// `extra_activities` new activities named `x1, x2, ...`. The new players
/// rank the approved alternatives strictly, in random order.
pub fn attach_random(base: &Instance, seed: u64, extra_players: usize, extra_activities: usize, approval: f64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = base.to_raw();
    let n0 = raw.players;
    let n = n0 + extra_players;
    raw.activities.extend((1..=extra_activities).map(|k| format!("x{k}")));
    let p = raw.activities.len();
    raw.players = n;
    for v in n0..n {
        if v > 0 && rng.gen_bool(0.8) {
            let u = rng.gen_range(0..v);
            raw.edges.push((u, v));
        }
    }
    for _ in n0..n {
        let mut approved: Vec<Alternative> =
            (1..=p).flat_map(|a| (1..=n).map(move |s| alt(a, s))).filter(|_| rng.gen_bool(approval)).collect();
        approved.shuffle(&mut rng);
        let mut tiers: Vec<Vec<Alternative>> = approved.into_iter().map(|x| vec![x]).collect();
        tiers.push(vec![Alternative::VOID]);
        raw.preferences.push(PreferenceOrder::new(tiers));
    }
    build(raw)
}

/// Replaces each activity by `n` preference-identical copies.
pub fn make_copyable(inst: &Instance) -> Instance {
    let n = inst.n();
    let copy = |a: Activity, c: usize| Activity(a.slot() * n + c + 1);
    let activities = inst
        .activity_names()
        .iter()
        .flat_map(|name| (1..=n).map(move |c| format!("{name}#{c}")))
        .collect();
    let preferences = (0..n)
        .map(|i| {
            let tiers = inst
                .preferences(i)
                .tiers
                .iter()
                .map(|tier| {
                    tier.iter()
                        .flat_map(|x| {
                            if x.is_void() {
                                vec![*x]
                            } else {
                                (0..n).map(|c| Alternative::new(copy(x.activity, c), x.size)).collect()
                            }
                        })
                        .collect()
                })
                .collect();
            PreferenceOrder::new(tiers)
        })
        .collect();
    build(RawInstance { players: n, activities, edges: inst.edges().to_vec(), preferences })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_match_fixtures() {
        let f3 = no_core();
        let top = &f3.preferences(1).tiers;
        assert_eq!(top[0], vec![alt(1, 2)]);
        assert_eq!(top[1], vec![alt(2, 2)]);
        assert_eq!(top[2], vec![alt(1, 3)]);
        assert_eq!(top[3], vec![Alternative::VOID]);
        let f2 = no_is();
        let chain: Vec<Alternative> = f2.preferences(0).tiers.iter().map(|t| t[0]).collect();
        assert_eq!(chain, vec![alt(2, 2), alt(1, 1), alt(3, 3), alt(3, 2), alt(3, 1), Alternative::VOID]);
        assert_eq!(gen_example(WorkedExample::Stalker(1)).n(), 2);
    }

    #[test]
    fn random_is_deterministic() {
        let spec = RandomSpec { seed: 7, topology: RandomTopology::Tree, n: 6, p: 2, approval: 0.4, ties: 0.3 };
        let (x, y) = (gen_random(&spec), gen_random(&spec));
        assert_eq!(x.edges(), y.edges());
        for i in 0..6 {
            assert_eq!(x.preferences(i), y.preferences(i));
        }
    }

    #[test]
    fn attached_players_keep_the_base() {
        let x = attach_random(&no_is(), 5, 3, 1, 0.2);
        assert_eq!((x.n(), x.p()), (6, 4));
        assert_eq!(&x.edges()[..2], no_is().edges());
        assert_eq!(x.preferences(0), no_is().preferences(0));
    }

    #[test]
    fn copyable_variant() {
        let c = make_copyable(&no_is());
        assert_eq!(c.p(), 9);
        assert!(c.all_copyable());
    }
}
