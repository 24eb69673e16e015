//! Bottom-up dynamic program over rooted trees shared by the Nash and
//! individual stability solvers on forests.
//!
//! Fix the set `B` of activities used anywhere. For a node `i`, a state
//! records the activities used inside its subtree, `i`'s activity `a` and
//! final group size `k`, how many subtree players are in `i`'s group, and,
//! for individual stability, whether some group member below vetoes one more
//! member and whether some outside neighbour below wants in. Children are
//! folded in one at a time with a subset-and-count state, which replaces a
//! random coloring of the children by activity parts.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::classify_topology;
use crate::model::{Activity, Assignment, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    Nash,
    Individual,
}

/// How children are matched to activity parts at each node.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum ChildStrategy {
    /// Sequential subset DP over children.
    #[default]
    Deterministic,
    /// Random colorings per part partition, repeated until the miss
    /// probability for a fixed partition is at most `epsilon`.
    Randomized { seed: u64, epsilon: f64 },
}

/// One table entry at a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeState {
    /// Bitmask of activity slots used in the subtree.
    pub used: u32,
    pub activity: Activity,
    /// Final size of the node's group (1 when void).
    pub size: usize,
    /// Members of that group inside the subtree.
    pub below: usize,
    pub veto: bool,
    pub envy: bool,
}

impl TreeState {
    pub fn is_closed(&self) -> bool {
        self.below == self.size
    }
}

#[derive(Default)]
struct NodeTable {
    open: HashMap<(usize, usize), Vec<TreeState>>,
    closed: Vec<TreeState>,
}

struct Rooted {
    children: Vec<Vec<usize>>,
    postorder: Vec<usize>,
}

fn root_component(inst: &Instance, comp: &[usize]) -> Rooted {
    let n = inst.n();
    let mut children = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut preorder = Vec::with_capacity(comp.len());
    let root = comp[0];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        preorder.push(u);
        for &w in inst.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                children[u].push(w);
                stack.push(w);
            }
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    preorder.reverse();
    Rooted { children, postorder: preorder }
}

type Layer = Vec<Option<(usize, Option<TreeState>)>>;

struct Dp<'a> {
    inst: &'a Instance,
    mode: Mode,
    used_mask: u32,
    comp_size: usize,
    rooted: Rooted,
    tables: Vec<NodeTable>,
}

fn bit(a: Activity) -> u32 {
    if a.is_void() {
        0
    } else {
        1 << a.slot()
    }
}

impl<'a> Dp<'a> {
    fn key(&self, k: usize, used: u32, below: usize, veto: bool, envy: bool) -> usize {
        ((used as usize * (k + 1) + below) * 2 + veto as usize) * 2 + envy as usize
    }

    fn unkey(&self, k: usize, idx: usize) -> (u32, usize, bool, bool) {
        let envy = idx % 2 == 1;
        let veto = (idx / 2) % 2 == 1;
        let rest = idx / 4;
        ((rest / (k + 1)) as u32, rest % (k + 1), veto, envy)
    }

    /// Whether node `i` may hold `(a, k)` at all.
    fn own_ok(&self, i: usize, a: Activity, k: usize) -> bool {
        if !self.inst.acceptable(i, a, k) {
            return false;
        }
        self.inst
            .activities()
            .filter(|c| self.used_mask & bit(*c) == 0)
            .all(|c| self.inst.weakly_prefers(i, a, k, c, 1))
    }

    /// Folds children of `i` into layers for `(a, k)`. `parts[c]`, when
    /// given, is the only non-empty extra activity set child `c` may bring.
    fn combine(&self, i: usize, a: Activity, k: usize, parts: Option<&[u32]>) -> Vec<Layer> {
        let inst = self.inst;
        let p = inst.p();
        let width = (1usize << p) * (k + 1) * 4;
        let a_bit = bit(a);
        let mut layers: Vec<Layer> = Vec::with_capacity(self.rooted.children[i].len() + 1);
        let mut first: Layer = vec![None; width];
        let veto0 = self.mode == Mode::Individual && !a.is_void() && inst.prefers(i, a, k, a, k + 1);
        first[self.key(k, 0, 1, veto0, false)] = Some((usize::MAX, None));
        layers.push(first);
        let empty = Vec::new();
        for (c, &j) in self.rooted.children[i].iter().enumerate() {
            let prev = layers.last().unwrap();
            let mut next: Layer = vec![None; width];
            let table = &self.tables[j];
            let joins = if a.is_void() { &empty } else { table.open.get(&(a.0, k)).unwrap_or(&empty) };
            let fits = |extra: u32| match parts {
                Some(parts) => extra == 0 || extra == parts[c],
                None => true,
            };
            for (idx, slot) in prev.iter().enumerate() {
                if slot.is_none() {
                    continue;
                }
                let (used, below, veto, envy) = self.unkey(k, idx);
                for s in joins {
                    let extra = s.used & !a_bit;
                    if below + s.below > k || extra & used != 0 || !fits(extra) {
                        continue;
                    }
                    let key = self.key(k, used | extra, below + s.below, veto | s.veto, envy | s.envy);
                    next[key].get_or_insert((idx, Some(*s)));
                }
                for s in &table.closed {
                    if s.used & (used | a_bit) != 0 || !fits(s.used) {
                        continue;
                    }
                    if !s.activity.is_void() {
                        let parent_envies = inst.prefers(i, s.activity, s.size + 1, a, k);
                        match self.mode {
                            Mode::Nash if parent_envies => continue,
                            Mode::Individual if (s.envy || parent_envies) && !s.veto => continue,
                            _ => {}
                        }
                    }
                    let child_envies = !a.is_void() && inst.prefers(j, a, k + 1, s.activity, s.size);
                    if child_envies && self.mode == Mode::Nash {
                        continue;
                    }
                    let key = self.key(k, used | s.used, below, veto, envy | child_envies);
                    next[key].get_or_insert((idx, Some(*s)));
                }
            }
            layers.push(next);
        }
        layers
    }

    fn finals(&self, a: Activity, k: usize, last: &Layer, out: &mut HashSet<TreeState>, want: Option<u32>) {
        for (idx, slot) in last.iter().enumerate() {
            if slot.is_none() {
                continue;
            }
            let (used, below, veto, envy) = self.unkey(k, idx);
            if want.is_some_and(|w| w != used) {
                continue;
            }
            let state = TreeState { used: used | bit(a), activity: a, size: k, below, veto, envy };
            if state.is_closed() && envy && !veto {
                continue;
            }
            out.insert(state);
        }
    }

    fn candidates(&self) -> Vec<(Activity, usize)> {
        let mut out = vec![(Activity::VOID, 1)];
        for a in self.inst.activities() {
            if self.used_mask & bit(a) != 0 {
                out.extend((1..=self.comp_size).map(|k| (a, k)));
            }
        }
        out
    }

    fn build_node(&mut self, i: usize, strategy: ChildStrategy, rng: &mut Option<ChaCha8Rng>) {
        let mut states = HashSet::new();
        for (a, k) in self.candidates() {
            if !self.own_ok(i, a, k) {
                continue;
            }
            match strategy {
                ChildStrategy::Deterministic => {
                    let layers = self.combine(i, a, k, None);
                    self.finals(a, k, layers.last().unwrap(), &mut states, None);
                }
                ChildStrategy::Randomized { epsilon, .. } => {
                    let rng = rng.as_mut().expect("seeded rng");
                    let free = self.used_mask & !bit(a);
                    let degree = self.rooted.children[i].len();
                    for target in submasks(free) {
                        for partition in set_partitions(target) {
                            let parts = partition.len();
                            if parts > degree {
                                continue;
                            }
                            let reps = if parts == 0 {
                                1
                            } else {
                                ((parts as f64).powi(parts as i32) * (1.0 / epsilon).ln()).ceil().max(1.0) as usize
                            };
                            for _ in 0..reps {
                                let coloring: Vec<u32> = (0..degree)
                                    .map(|_| if parts == 0 { 0 } else { partition[rng.gen_range(0..parts)] })
                                    .collect();
                                let layers = self.combine(i, a, k, Some(&coloring));
                                self.finals(a, k, layers.last().unwrap(), &mut states, Some(target));
                            }
                        }
                    }
                }
            }
        }
        let mut table = NodeTable::default();
        let mut sorted: Vec<TreeState> = states.into_iter().collect();
        sorted.sort_by_key(|s| (s.used, s.activity, s.size, s.below, s.veto, s.envy));
        for s in sorted {
            if s.is_closed() {
                table.closed.push(s);
            } else {
                table.open.entry((s.activity.0, s.size)).or_default().push(s);
            }
        }
        self.tables[i] = table;
    }

    fn reconstruct(&self, i: usize, target: TreeState, choice: &mut [Activity]) {
        choice[i] = target.activity;
        let (a, k) = (target.activity, target.size);
        let layers = self.combine(i, a, k, None);
        let mut idx = self.key(k, target.used & !bit(a), target.below, target.veto, target.envy);
        let children = &self.rooted.children[i];
        for c in (0..children.len()).rev() {
            let (prev, pick) = layers[c + 1][idx].expect("back-pointer for a true entry");
            self.reconstruct(children[c], pick.expect("child pick"), choice);
            idx = prev;
        }
    }
}

/// All submasks of `mask`, ascending.
fn submasks(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut s = 0u32;
    loop {
        out.push(s);
        if s == mask {
            break;
        }
        s = ((s | !mask).wrapping_add(1)) & mask;
    }
    out
}

/// Set partitions of the bits of `mask` in restricted-growth-string order.
pub(crate) fn set_partitions(mask: u32) -> Vec<Vec<u32>> {
    let bits: Vec<u32> = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| 1u32 << b).collect();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; bits.len()];
    fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, bits: &[u32], out: &mut Vec<Vec<u32>>) {
        if pos == bits.len() {
            let blocks = if bits.is_empty() { 0 } else { max + 1 };
            let mut parts = vec![0u32; blocks];
            for (i, &b) in bits.iter().enumerate() {
                parts[rgs[i]] |= b;
            }
            out.push(parts);
            return;
        }
        let limit = if pos == 0 { 0 } else { max + 1 };
        for v in 0..=limit {
            rgs[pos] = v;
            rec(pos + 1, max.max(v), rgs, bits, out);
        }
    }
    rec(0, 0, &mut rgs, &bits, &mut out);
    out
}

fn build_tables<'a>(
    inst: &'a Instance,
    mode: Mode,
    comp: &[usize],
    used_mask: u32,
    strategy: ChildStrategy,
    rng: &mut Option<ChaCha8Rng>,
) -> Dp<'a> {
    let rooted = root_component(inst, comp);
    let mut tables = Vec::with_capacity(inst.n());
    tables.resize_with(inst.n(), NodeTable::default);
    let mut dp = Dp { inst, mode, used_mask, comp_size: comp.len(), rooted, tables };
    let order = dp.rooted.postorder.clone();
    for i in order {
        dp.build_node(i, strategy, rng);
    }
    dp
}

/// Closed root states of the tree containing `comp[0]` (its lowest vertex),
/// given that exactly the activities in `used_mask` are used globally.
pub(crate) fn root_states(
    inst: &Instance,
    mode: Mode,
    comp: &[usize],
    used_mask: u32,
    strategy: ChildStrategy,
) -> Vec<TreeState> {
    let mut rng = seeded(strategy);
    let dp = build_tables(inst, mode, comp, used_mask, strategy, &mut rng);
    dp.tables[comp[0]].closed.clone()
}

fn seeded(strategy: ChildStrategy) -> Option<ChaCha8Rng> {
    match strategy {
        ChildStrategy::Randomized { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        ChildStrategy::Deterministic => None,
    }
}

/// Solves a forest: outer loop over the global used set, inner subset DP
/// over components with pairwise disjoint activity sets.
pub(crate) fn solve_forest(inst: &Instance, mode: Mode, strategy: ChildStrategy) -> Option<Assignment> {
    let topo = classify_topology(inst);
    assert!(topo.is_forest(), "tree DP requires an acyclic graph");
    let p = inst.p();
    assert!(p < 31, "too many activities for the tree DP");
    let mut rng = seeded(strategy);
    for used_mask in 0..(1u32 << p) {
        let dps: Vec<Dp> =
            topo.components.iter().map(|c| build_tables(inst, mode, c, used_mask, strategy, &mut rng)).collect();
        // Accepting root state per used set, per component.
        let accept: Vec<HashMap<u32, TreeState>> = topo
            .components
            .iter()
            .zip(&dps)
            .map(|(comp, dp)| {
                let mut m = HashMap::new();
                for s in &dp.tables[comp[0]].closed {
                    m.entry(s.used).or_insert(*s);
                }
                m
            })
            .collect();
        let full = 1usize << p;
        let mut reach: Vec<Vec<Option<(u32, TreeState)>>> = Vec::with_capacity(accept.len() + 1);
        let mut start = vec![None; full];
        start[0] = Some((0, TreeState { used: 0, activity: Activity::VOID, size: 1, below: 1, veto: false, envy: false }));
        reach.push(start);
        for m in &accept {
            let prev = reach.last().unwrap();
            let mut next = vec![None; full];
            for u in 0..full as u32 {
                if prev[u as usize].is_none() {
                    continue;
                }
                for (&set, &state) in m {
                    if set & u == 0 && set & !used_mask == 0 {
                        next[(u | set) as usize].get_or_insert((u, state));
                    }
                }
            }
            reach.push(next);
        }
        if reach.last().unwrap()[used_mask as usize].is_none() {
            continue;
        }
        let mut choice = vec![Activity::VOID; inst.n()];
        let mut u = used_mask;
        for c in (0..accept.len()).rev() {
            let (prev, state) = reach[c + 1][u as usize].unwrap();
            dps[c].reconstruct(topo.components[c][0], state, &mut choice);
            u = prev;
        }
        return Some(Assignment::new(choice));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_follow_bell_numbers() {
        assert_eq!(set_partitions(0).len(), 1);
        assert_eq!(set_partitions(0b1).len(), 1);
        assert_eq!(set_partitions(0b111).len(), 5);
        assert_eq!(set_partitions(0b1111).len(), 15);
        assert_eq!(set_partitions(0b11), vec![vec![0b11], vec![0b01, 0b10]]);
    }

    #[test]
    fn submask_listing() {
        assert_eq!(submasks(0b101), vec![0, 1, 4, 5]);
        assert_eq!(submasks(0), vec![0]);
    }
}
