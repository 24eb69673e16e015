//! Nash stability on cliques via group-size vectors and max flow.

use crate::error::{Error, Result};
use crate::graph::classify_topology;
use crate::model::{Activity, Assignment, Instance};

/// Dinic max flow on a small dense graph.
struct Dinic {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic { adj: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new(), level: vec![0; nodes], iter: vec![0; nodes] }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) -> usize {
        let e = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.adj[u].push(e);
        self.to.push(u);
        self.cap.push(0);
        self.adj[v].push(e + 1);
        e
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.adj[u].len() {
            let e = self.adj[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Augments from the current flow to a maximum one.
    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Size vectors `f` over activities with `sum(f) <= n`, in lexicographic order.
fn next_vector(f: &mut [usize], n: usize) -> bool {
    let mut sum: usize = f.iter().sum();
    for k in (0..f.len()).rev() {
        if sum < n {
            f[k] += 1;
            return true;
        }
        sum -= f[k];
        f[k] = 0;
    }
    false
}

/// Tries to realise the group sizes `f` (indexed by slot) as a Nash stable
/// assignment.
fn realise(inst: &Instance, f: &[usize]) -> Option<Assignment> {
    let (n, p) = (inst.n(), inst.p());
    let act = |slot: usize| Activity::from_slot(slot);
    // Best outside option for a player: any (b, f(b)+1) must not beat what they get.
    let admissible = |i: usize, a: usize| {
        f[a] > 0
            && inst.acceptable(i, act(a), f[a])
            && (0..p).all(|b| b == a || inst.weakly_prefers(i, act(a), f[a], act(b), f[b] + 1))
    };
    let must: Vec<bool> = (0..n)
        .map(|i| (0..p).any(|b| inst.prefers(i, act(b), f[b] + 1, Activity::VOID, 1)))
        .collect();
    let (s, t) = (n + p, n + p + 1);
    let mut net = Dinic::new(n + p + 2);
    let mut pair_edges = Vec::new();
    for i in 0..n {
        for a in 0..p {
            if admissible(i, a) {
                pair_edges.push((i, a, net.add_edge(i, n + a, 1)));
            }
        }
    }
    for a in 0..p {
        if f[a] > 0 {
            net.add_edge(n + a, t, f[a] as i64);
        }
    }
    // Phase one saturates the players that cannot stay void; augmenting
    // paths never undo a source edge, so phase two keeps them matched.
    for i in (0..n).filter(|&i| must[i]) {
        net.add_edge(s, i, 1);
    }
    let first = net.max_flow(s, t);
    if first < must.iter().filter(|&&m| m).count() as i64 {
        return None;
    }
    for i in (0..n).filter(|&i| !must[i]) {
        net.add_edge(s, i, 1);
    }
    let total = first + net.max_flow(s, t);
    if total != f.iter().sum::<usize>() as i64 {
        return None;
    }
    let mut choice = vec![Activity::VOID; n];
    for (i, a, e) in pair_edges {
        if net.cap[e] == 0 {
            choice[i] = act(a);
        }
    }
    Some(Assignment::new(choice))
}

/// A Nash stable assignment on a complete graph, or `None` if none exists.
pub fn solve_ns_clique(inst: &Instance) -> Result<Option<Assignment>> {
    if !classify_topology(inst).is_clique() {
        return Err(Error::Unsupported("flow algorithm needs a complete graph".into()));
    }
    let mut f = vec![0usize; inst.p()];
    loop {
        if let Some(pi) = realise(inst, &f) {
            return Ok(Some(pi));
        }
        if !next_vector(&mut f, inst.n()) {
            return Ok(None);
        }
    }
}
