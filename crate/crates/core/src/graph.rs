//! Connectivity over the communication graph and topology classification.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::Instance;

/// The most specific shape a communication graph has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopologyKind {
    Clique,
    Path,
    Star,
    Tree,
    Forest,
    SmallComponents(usize),
    General,
}

#[derive(Clone, Debug)]
pub struct Topology {
    pub kind: TopologyKind,
    /// Components, each sorted ascending, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    clique: bool,
    path: bool,
    star: bool,
    acyclic: bool,
}

impl Topology {
    pub fn is_clique(&self) -> bool {
        self.clique
    }

    pub fn is_path(&self) -> bool {
        self.path
    }

    pub fn is_star(&self) -> bool {
        self.star
    }

    /// Every component is a tree.
    pub fn is_forest(&self) -> bool {
        self.acyclic
    }

    pub fn is_tree(&self) -> bool {
        self.acyclic && self.components.len() <= 1
    }

    pub fn max_component_size(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All kinds this graph satisfies, most specific first.
    pub fn kinds(&self) -> Vec<TopologyKind> {
        let mut out = Vec::new();
        if self.clique {
            out.push(TopologyKind::Clique);
        }
        if self.path {
            out.push(TopologyKind::Path);
        }
        if self.star {
            out.push(TopologyKind::Star);
        }
        if self.is_tree() {
            out.push(TopologyKind::Tree);
        }
        if self.acyclic {
            out.push(TopologyKind::Forest);
        }
        if self.components.len() > 1 {
            out.push(TopologyKind::SmallComponents(self.max_component_size()));
        }
        out.push(TopologyKind::General);
        out
    }
}

/// True iff `set` is empty or induces a connected subgraph.
pub fn is_connected_subset(inst: &Instance, set: &[usize]) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let mut member = vec![false; inst.n()];
    for &v in set {
        member[v] = true;
    }
    let reached = bfs_within(inst, &set[..1], &member, usize::MAX);
    reached.len() == set.len()
}

/// Breadth-first discovery order from `seed` restricted to `allowed`,
/// visiting neighbours in ascending order, stopping after `limit` vertices.
fn bfs_within(inst: &Instance, seed: &[usize], allowed: &[bool], limit: usize) -> Vec<usize> {
    let mut seen = vec![false; inst.n()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let mut seed: Vec<usize> = seed.to_vec();
    seed.sort_unstable();
    for v in seed {
        if !seen[v] {
            seen[v] = true;
            order.push(v);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        if order.len() >= limit {
            break;
        }
        for &w in inst.neighbors(u) {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Connected components of the subgraph induced by `allowed`, ordered by
/// smallest member, each sorted ascending.
pub fn components_within(inst: &Instance, allowed: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; inst.n()];
    let mut out = Vec::new();
    for v in 0..inst.n() {
        if allowed[v] && !seen[v] {
            let mut comp = bfs_within(inst, &[v], allowed, usize::MAX);
            for &w in &comp {
                seen[w] = true;
            }
            comp.sort_unstable();
            out.push(comp);
        }
    }
    out
}

/// A connected superset of `seed` with exactly `size` members inside
/// `allowed`, grown breadth-first. With an empty seed, growth starts from
/// the smallest vertex of each component of `allowed` in turn.
pub fn connected_prefix(inst: &Instance, seed: &[usize], allowed: &[bool], size: usize) -> Option<Vec<usize>> {
    if seed.len() > size {
        return None;
    }
    let pick = |start: &[usize]| {
        let order = bfs_within(inst, start, allowed, size);
        if order.len() >= size {
            let mut s = order[..size].to_vec();
            s.sort_unstable();
            Some(s)
        } else {
            None
        }
    };
    if !seed.is_empty() {
        return pick(seed);
    }
    if size == 0 {
        return Some(Vec::new());
    }
    components_within(inst, allowed).iter().find_map(|comp| pick(&comp[..1]))
}

/// Every non-empty connected subset, ordered by size and then by sorted
/// member list. Fails once more than `budget` subsets are found.
pub fn enumerate_connected_subsets(inst: &Instance, budget: u64) -> Result<Vec<Vec<usize>>> {
    let n = inst.n();
    let mut out: Vec<Vec<usize>> = Vec::new();
    // Each subset is produced once, from its minimum vertex, by the
    // extension-set scheme: only vertices larger than the root that are
    // exclusive neighbours of the newest addition enter the extension.
    fn extend(
        inst: &Instance,
        root: usize,
        current: &mut Vec<usize>,
        extension: Vec<usize>,
        in_nbhd: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        budget: u64,
    ) -> bool {
        let mut extension = extension;
        while let Some(w) = extension.pop() {
            let mut next = extension.clone();
            let mut added = Vec::new();
            for &u in inst.neighbors(w) {
                if u > root && !in_nbhd[u] {
                    in_nbhd[u] = true;
                    added.push(u);
                    next.push(u);
                }
            }
            current.push(w);
            let mut s = current.clone();
            s.sort_unstable();
            out.push(s);
            if out.len() as u64 > budget {
                return false;
            }
            if !extend(inst, root, current, next, in_nbhd, out, budget) {
                return false;
            }
            current.pop();
            for u in added {
                in_nbhd[u] = false;
            }
        }
        true
    }
    for root in 0..n {
        out.push(vec![root]);
        if out.len() as u64 > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let mut in_nbhd = vec![false; n];
        in_nbhd[root] = true;
        let mut ext = Vec::new();
        for &u in inst.neighbors(root) {
            if u > root {
                in_nbhd[u] = true;
                ext.push(u);
            }
        }
        let mut current = vec![root];
        if !extend(inst, root, &mut current, ext, &mut in_nbhd, &mut out, budget) {
            return Err(Error::BudgetExceeded(budget));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn classify_topology(inst: &Instance) -> Topology {
    let n = inst.n();
    let all = vec![true; n];
    let components = components_within(inst, &all);
    let m = inst.edges().len();
    let acyclic = m + components.len() == n;
    let connected = components.len() <= 1;
    let clique = connected && m == n * n.saturating_sub(1) / 2;
    let max_deg = (0..n).map(|v| inst.neighbors(v).len()).max().unwrap_or(0);
    let path = connected && acyclic && max_deg <= 2;
    let star = connected && acyclic && (n <= 2 || max_deg == n - 1);
    let kind = if clique {
        TopologyKind::Clique
    } else if path {
        TopologyKind::Path
    } else if star {
        TopologyKind::Star
    } else if acyclic && connected {
        TopologyKind::Tree
    } else if acyclic {
        TopologyKind::Forest
    } else if components.len() > 1 {
        TopologyKind::SmallComponents(components.iter().map(Vec::len).max().unwrap_or(0))
    } else {
        TopologyKind::General
    };
    Topology { kind, components, clique, path, star, acyclic }
}
