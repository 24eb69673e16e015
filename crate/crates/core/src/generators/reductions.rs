//! Instance constructions from Clique on regular graphs, Hitting Set and
//! Multicolored Clique, with role metadata and forward-direction witnesses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Activity, Alternative, Assignment, Instance, PreferenceOrder, RawInstance};

/// A plain undirected graph with zero-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        SimpleGraph { n, edges: edges.to_vec() }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        SimpleGraph { n, edges }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.iter().position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum PlayerRole {
    Vertex { vertex: usize },
    VertexDummy { vertex: usize },
    /// Edge player `e_{owner,other}`.
    EdgePlayer { edge: usize, owner: usize, other: usize },
    EdgeDummy { edge: usize },
    B1,
    B2,
    C1,
    C2,
    Stabilizer,
    Center,
    S1,
    S2,
    /// Element `x_v`, `y_v` or `z_v`.
    Element { copy: char, vertex: usize },
    SetDummy { set: usize },
    ColorGadget { color: usize, index: usize },
    ColorPairGadget { colors: (usize, usize), index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum ActivityRole {
    /// Member of `A′`.
    Selector { index: usize },
    /// Member of `B′`.
    EdgeSlot { index: usize },
    X,
    A,
    B,
    VertexActivity { vertex: usize },
    /// One activity per edge; `aliases` lists `(endpoint, position in E(endpoint))`.
    EdgeActivity { edge: usize, aliases: Vec<(usize, usize)> },
    Color { color: usize },
    ColorPrime { color: usize },
    ColorPair { colors: (usize, usize) },
}

/// Role annotations emitted next to a generated instance. Vertices,
/// players and sets are zero-based; colors are one-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMetadata {
    pub reduction: String,
    pub players: Vec<PlayerRole>,
    pub activities: Vec<ActivityRole>,
    /// Target coalition size per vertex (clique reduction).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<usize>,
    /// Target coalition size per edge (clique reduction).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub beta: Vec<usize>,
    /// Target sizes `t_i` per set (hitting-set reduction).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<usize>,
    /// The tripled family, as lists of element players.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<Vec<usize>>,
}

impl ReductionMetadata {
    fn find_player(&self, role: &PlayerRole) -> Option<usize> {
        self.players.iter().position(|r| r == role)
    }

    fn players_where(&self, pred: impl Fn(&PlayerRole) -> bool) -> Vec<usize> {
        (0..self.players.len()).filter(|&i| pred(&self.players[i])).collect()
    }

    fn find_activity(&self, role: &ActivityRole) -> Option<Activity> {
        self.activities.iter().position(|r| r == role).map(Activity::from_slot)
    }
}

fn clique_edges(n: usize) -> Vec<(usize, usize)> {
    SimpleGraph::complete(n).edges
}

fn tier(items: impl IntoIterator<Item = (usize, usize)>, n: usize) -> Vec<Alternative> {
    items
        .into_iter()
        .filter(|&(_, s)| s >= 1 && s <= n)
        .map(|(a, s)| Alternative::new(Activity(a), s))
        .collect()
}

fn order(tiers: Vec<Vec<Alternative>>) -> PreferenceOrder {
    let mut tiers: Vec<Vec<Alternative>> = tiers.into_iter().filter(|t| !t.is_empty()).collect();
    tiers.push(vec![Alternative::VOID]);
    PreferenceOrder::new(tiers)
}

/// Clique on a `δ`-regular graph with `δ ≥ k − 1` to Nash stability on a
/// clique with `1 + k(k+1)/2` activities.
pub fn reduce_clique_to_ns(g: &SimpleGraph, k: usize) -> Result<(Instance, ReductionMetadata)> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if g.n == 0 {
        return Err(Error::Precondition("graph must have a vertex".into()));
    }
    let delta = g.degree(0);
    if (0..g.n).any(|v| g.degree(v) != delta) {
        return Err(Error::Precondition("graph is not regular".into()));
    }
    if delta + 1 < k {
        return Err(Error::Precondition(format!("degree {delta} is below k - 1 = {}", k - 1)));
    }
    let m = g.edges.len();
    let pairs = k * (k - 1) / 2;
    let alpha: Vec<usize> = (1..=g.n).map(|j| j * (k + 3) + 2 + delta).collect();
    let beta: Vec<usize> = (1..=m).map(|j| 1 + 2 * j).collect();

    let mut activities = Vec::new();
    let mut activity_roles = Vec::new();
    for i in 0..k {
        activities.push(format!("A{}", i + 1));
        activity_roles.push(ActivityRole::Selector { index: i });
    }
    for i in 0..pairs {
        activities.push(format!("B{}", i + 1));
        activity_roles.push(ActivityRole::EdgeSlot { index: i });
    }
    activities.push("x".into());
    activity_roles.push(ActivityRole::X);
    let selectors: Vec<usize> = (1..=k).collect();
    let slots: Vec<usize> = (k + 1..=k + pairs).collect();
    let x = k + pairs + 1;

    let mut roles = Vec::new();
    for v in 0..g.n {
        roles.push(PlayerRole::Vertex { vertex: v });
        for _ in 0..alpha[v] + k - delta - 2 {
            roles.push(PlayerRole::VertexDummy { vertex: v });
        }
    }
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        roles.push(PlayerRole::EdgePlayer { edge: e, owner: u, other: v });
        roles.push(PlayerRole::EdgePlayer { edge: e, owner: v, other: u });
        for _ in 0..beta[e] - 2 {
            roles.push(PlayerRole::EdgeDummy { edge: e });
        }
    }
    roles.extend([PlayerRole::B1, PlayerRole::B2, PlayerRole::C1, PlayerRole::C2, PlayerRole::Stabilizer]);
    let n = roles.len();

    let window = |v: usize, lo: usize, hi: usize| -> Vec<(usize, usize)> {
        selectors.iter().flat_map(|&a| (alpha[v] + lo..=alpha[v] + hi).map(move |s| (a, s))).collect()
    };
    let preferences = roles
        .iter()
        .map(|role| match *role {
            PlayerRole::Vertex { vertex } | PlayerRole::VertexDummy { vertex } => {
                order(vec![tier(window(vertex, 0, k + 1), n)])
            }
            PlayerRole::EdgePlayer { edge, owner, .. } => {
                let mut t = window(owner, 0, k + 1);
                t.extend(slots.iter().map(|&b| (b, beta[edge])));
                order(vec![tier(t, n)])
            }
            PlayerRole::EdgeDummy { edge } => order(vec![tier(slots.iter().map(|&b| (b, beta[edge])), n)]),
            PlayerRole::Stabilizer => {
                let mut sizes: Vec<usize> = (0..g.n).flat_map(|v| alpha[v] + 2..=alpha[v] + k + 2).collect();
                sizes.sort_unstable();
                sizes.dedup();
                let top = selectors.iter().flat_map(|&a| sizes.iter().map(move |&s| (a, s)));
                order(vec![tier(top, n), tier([(x, 3)], n)])
            }
            PlayerRole::C1 => order(vec![tier([(x, 1), (x, 3)], n)]),
            PlayerRole::C2 => order(vec![tier([(x, 2), (x, 3)], n)]),
            PlayerRole::B1 => order(vec![tier(selectors.iter().map(|&a| (a, 1)), n)]),
            PlayerRole::B2 => order(vec![tier(selectors.iter().map(|&a| (a, 2)), n)]),
            _ => unreachable!(),
        })
        .collect();
    let inst = Instance::new(RawInstance { players: n, activities, edges: clique_edges(n), preferences })?;
    let meta = ReductionMetadata {
        reduction: "clique".into(),
        players: roles,
        activities: activity_roles,
        alpha,
        beta,
        ..Default::default()
    };
    Ok((inst, meta))
}

/// The Nash stable assignment built from a `k`-clique `clique` of `g`.
pub fn witness_clique(
    g: &SimpleGraph,
    inst: &Instance,
    meta: &ReductionMetadata,
    clique: &[usize],
) -> Result<Assignment> {
    let mut s = clique.to_vec();
    s.sort_unstable();
    s.dedup();
    let k = meta.activities.iter().filter(|r| matches!(r, ActivityRole::Selector { .. })).count();
    if s.len() != k || s.iter().any(|&v| v >= g.n) {
        return Err(Error::Precondition(format!("expected {k} distinct vertices")));
    }
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if !g.adjacent(u, v) {
                return Err(Error::Precondition(format!("vertices {} and {} are not adjacent", u + 1, v + 1)));
            }
        }
    }
    let mut choice = vec![Activity::VOID; inst.n()];
    let in_s = |v: usize| s.binary_search(&v).is_ok();
    for (idx, &v) in s.iter().enumerate() {
        let act = meta.find_activity(&ActivityRole::Selector { index: idx }).expect("selector");
        for i in meta.players_where(|r| match *r {
            PlayerRole::Vertex { vertex } | PlayerRole::VertexDummy { vertex } => vertex == v,
            PlayerRole::EdgePlayer { owner, other, .. } => owner == v && !in_s(other),
            _ => false,
        }) {
            choice[i] = act;
        }
    }
    let internal: Vec<usize> =
        (0..g.edges.len()).filter(|&e| in_s(g.edges[e].0) && in_s(g.edges[e].1)).collect();
    for (idx, &e) in internal.iter().enumerate() {
        let act = meta.find_activity(&ActivityRole::EdgeSlot { index: idx }).expect("slot");
        for i in meta.players_where(|r| match *r {
            PlayerRole::EdgePlayer { edge, .. } | PlayerRole::EdgeDummy { edge } => edge == e,
            _ => false,
        }) {
            choice[i] = act;
        }
    }
    let x = meta.find_activity(&ActivityRole::X).expect("x");
    for role in [PlayerRole::C1, PlayerRole::C2, PlayerRole::Stabilizer] {
        choice[meta.find_player(&role).expect("gadget player")] = x;
    }
    Ok(Assignment::new(choice))
}

/// Hitting Set over `universe` elements to core stability on a star with
/// two activities.
pub fn reduce_hitting_set_to_core(
    universe: usize,
    family: &[Vec<usize>],
    k: usize,
) -> Result<(Instance, ReductionMetadata)> {
    if k >= universe {
        return Err(Error::Precondition(format!("k = {k} must be below |V| = {universe}")));
    }
    if family.iter().flatten().any(|&v| v >= universe) {
        return Err(Error::Precondition("set element outside the universe".into()));
    }
    let (a, b) = (1, 2);
    let m = family.len();
    let w_count = 3 * universe;
    let mut roles = vec![PlayerRole::Center, PlayerRole::S1, PlayerRole::S2];
    let element_base = roles.len();
    for copy in ['x', 'y', 'z'] {
        for v in 0..universe {
            roles.push(PlayerRole::Element { copy, vertex: v });
        }
    }
    // X_1..X_m, Y_1..Y_m, Z_1..Z_m over element players.
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(3 * m);
    for c in 0..3 {
        for set in family {
            let mut members: Vec<usize> = set.iter().map(|&v| element_base + c * universe + v).collect();
            members.sort_unstable();
            members.dedup();
            sets.push(members);
        }
    }
    let targets: Vec<usize> = (1..=3 * m).map(|i| i + w_count + 1).collect();
    for (i, set) in sets.iter().enumerate() {
        for _ in 0..targets[i] - set.len() - 1 {
            roles.push(PlayerRole::SetDummy { set: i });
        }
    }
    let n = roles.len();
    let a_prime: Vec<(usize, usize)> = (4..=3 * k + 3).map(|s| (a, s)).collect();
    let all_b: Vec<(usize, usize)> = targets.iter().map(|&t| (b, t)).collect();

    let preferences = roles
        .iter()
        .enumerate()
        .map(|(idx, role)| match *role {
            PlayerRole::Element { .. } => {
                let b_w = (0..sets.len()).filter(|&i| sets[i].contains(&idx)).map(|i| (b, targets[i]));
                order(vec![tier(a_prime.clone(), n), tier(b_w, n)])
            }
            PlayerRole::SetDummy { set } => order(vec![tier([(b, targets[set])], n)]),
            PlayerRole::Center => order(vec![
                tier([(a, 2)], n),
                tier([(b, 2)], n),
                tier([(a, 3)], n),
                tier(all_b.clone(), n),
                tier(a_prime.clone(), n),
            ]),
            PlayerRole::S1 => order(vec![tier(a_prime.clone(), n), tier([(b, 2)], n), tier([(a, 3)], n)]),
            PlayerRole::S2 => order(vec![
                tier(a_prime.clone(), n),
                tier([(a, 3)], n),
                tier(all_b.clone(), n),
                tier([(b, 1)], n),
                tier([(a, 2)], n),
            ]),
            _ => unreachable!(),
        })
        .collect();
    let edges = (1..n).map(|v| (0, v)).collect();
    let inst = Instance::new(RawInstance { players: n, activities: vec!["a".into(), "b".into()], edges, preferences })?;
    let meta = ReductionMetadata {
        reduction: "hitting-set".into(),
        players: roles,
        activities: vec![ActivityRole::A, ActivityRole::B],
        targets,
        sets,
        ..Default::default()
    };
    Ok((inst, meta))
}

/// The core stable assignment built from a non-empty hitting set.
pub fn witness_hitting_set(
    family: &[Vec<usize>],
    k: usize,
    inst: &Instance,
    meta: &ReductionMetadata,
    hitting: &[usize],
) -> Result<Assignment> {
    let mut h = hitting.to_vec();
    h.sort_unstable();
    h.dedup();
    if h.is_empty() || h.len() > k {
        return Err(Error::Precondition(format!("hitting set must have between 1 and {k} elements")));
    }
    if let Some(i) = family.iter().position(|set| !set.iter().any(|v| h.contains(v))) {
        return Err(Error::Precondition(format!("set {} is not hit", i + 1)));
    }
    let mut choice = vec![Activity::VOID; inst.n()];
    let a = Activity(1);
    for i in meta.players_where(|r| match *r {
        PlayerRole::Center | PlayerRole::S1 | PlayerRole::S2 => true,
        PlayerRole::Element { vertex, .. } => h.contains(&vertex),
        _ => false,
    }) {
        choice[i] = a;
    }
    Ok(Assignment::new(choice))
}

/// Multicolored Clique (colors `1..=h`, `q` vertices each) to Nash
/// stability on a clique with `4h + 3h(h−1)/2` players.
pub fn reduce_mcc_to_ns(g: &SimpleGraph, colors: &[usize]) -> Result<(Instance, ReductionMetadata)> {
    if colors.len() != g.n {
        return Err(Error::Precondition("one color per vertex required".into()));
    }
    let h = colors.iter().copied().max().unwrap_or(0);
    if h == 0 || colors.contains(&0) {
        return Err(Error::Precondition("colors are 1-based and at least one is needed".into()));
    }
    let classes: Vec<Vec<usize>> = (1..=h).map(|c| (0..g.n).filter(|&v| colors[v] == c).collect()).collect();
    let q = classes[0].len();
    if classes.iter().any(|cl| cl.len() != q) {
        return Err(Error::Precondition("every color needs the same number of vertices".into()));
    }
    if g.edges.iter().any(|&(u, v)| colors[u] == colors[v]) {
        return Err(Error::Precondition("monochromatic edge".into()));
    }
    let incident: Vec<Vec<usize>> =
        (0..g.n).map(|v| (0..g.edges.len()).filter(|&e| g.edges[e].0 == v || g.edges[e].1 == v).collect()).collect();

    let mut names = Vec::new();
    let mut activity_roles = Vec::new();
    for v in 0..g.n {
        names.push(format!("v{}", v + 1));
        activity_roles.push(ActivityRole::VertexActivity { vertex: v });
    }
    let edge_base = names.len();
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        names.push(format!("e{}", e + 1));
        let pos = |w: usize| incident[w].iter().position(|&x| x == e).unwrap();
        activity_roles.push(ActivityRole::EdgeActivity { edge: e, aliases: vec![(u, pos(u)), (v, pos(v))] });
    }
    let color_base = names.len();
    for c in 1..=h {
        names.push(format!("c{c}"));
        activity_roles.push(ActivityRole::Color { color: c });
        names.push(format!("c{c}'"));
        activity_roles.push(ActivityRole::ColorPrime { color: c });
    }
    let pair_base = names.len();
    let mut pairs = Vec::new();
    for i in 1..=h {
        for j in i + 1..=h {
            names.push(format!("c{i},{j}"));
            activity_roles.push(ActivityRole::ColorPair { colors: (i, j) });
            pairs.push((i, j));
        }
    }
    let vertex_act = |v: usize| v + 1;
    let edge_act = |e: usize| edge_base + e + 1;
    let color_act = |c: usize| color_base + 2 * (c - 1) + 1;
    let color_prime_act = |c: usize| color_base + 2 * (c - 1) + 2;
    let pair_act = |idx: usize| pair_base + idx + 1;

    let mut roles = Vec::new();
    for c in 1..=h {
        for index in 1..=4 {
            roles.push(PlayerRole::ColorGadget { color: c, index });
        }
    }
    for &(i, j) in &pairs {
        for index in 1..=3 {
            roles.push(PlayerRole::ColorPairGadget { colors: (i, j), index });
        }
    }
    let n = roles.len();

    let selector_chain = |c: usize, reversed: bool, last: usize| {
        let mut members = classes[c - 1].clone();
        if reversed {
            members.reverse();
        }
        let mut tiers = Vec::new();
        for v in members {
            tiers.push(tier([(vertex_act(v), 2)], n));
            for &e in &incident[v] {
                tiers.push(tier([(edge_act(e), 3)], n));
            }
        }
        tiers.push(tier([(last, 1)], n));
        order(tiers)
    };
    let preferences = roles
        .iter()
        .map(|role| match *role {
            PlayerRole::ColorGadget { color, index: 1 } => selector_chain(color, false, color_act(color)),
            PlayerRole::ColorGadget { color, index: 2 } => selector_chain(color, true, color_prime_act(color)),
            PlayerRole::ColorGadget { color, index: 3 } => order(vec![tier([(color_act(color), 2)], n)]),
            PlayerRole::ColorGadget { color, .. } => order(vec![tier([(color_prime_act(color), 2)], n)]),
            PlayerRole::ColorPairGadget { colors: (i, j), index } => {
                let idx = pairs.iter().position(|&x| x == (i, j)).unwrap();
                let act = pair_act(idx);
                if index == 3 {
                    return order(vec![tier([(act, 3)], n)]);
                }
                let between = (0..g.edges.len())
                    .filter(|&e| {
                        let (u, v) = g.edges[e];
                        let (cu, cv) = (colors[u].min(colors[v]), colors[u].max(colors[v]));
                        (cu, cv) == (i, j)
                    })
                    .map(|e| (edge_act(e), 2));
                order(vec![tier(between, n), tier([(act, 2)], n), tier([(act, 1)], n)])
            }
            _ => unreachable!(),
        })
        .collect();
    let inst = Instance::new(RawInstance { players: n, activities: names, edges: clique_edges(n), preferences })?;
    let meta = ReductionMetadata { reduction: "mcc".into(), players: roles, activities: activity_roles, ..Default::default() };
    Ok((inst, meta))
}

/// The Nash stable assignment built from a colorful clique, given as one
/// vertex per color.
pub fn witness_mcc(
    g: &SimpleGraph,
    colors: &[usize],
    inst: &Instance,
    meta: &ReductionMetadata,
    clique: &[usize],
) -> Result<Assignment> {
    let h = colors.iter().copied().max().unwrap_or(0);
    let mut chosen = vec![usize::MAX; h + 1];
    for &v in clique {
        if v >= g.n || chosen[colors[v]] != usize::MAX {
            return Err(Error::Precondition("clique must hold exactly one vertex per color".into()));
        }
        chosen[colors[v]] = v;
    }
    if clique.len() != h {
        return Err(Error::Precondition("clique must hold exactly one vertex per color".into()));
    }
    let mut choice = vec![Activity::VOID; inst.n()];
    for c in 1..=h {
        let act = meta.find_activity(&ActivityRole::VertexActivity { vertex: chosen[c] }).expect("vertex activity");
        for index in 1..=2 {
            choice[meta.find_player(&PlayerRole::ColorGadget { color: c, index }).expect("gadget")] = act;
        }
    }
    for i in 1..=h {
        for j in i + 1..=h {
            let e = g
                .edge_index(chosen[i], chosen[j])
                .ok_or_else(|| Error::Precondition(format!("colors {i} and {j} are not joined")))?;
            let act = meta
                .activities
                .iter()
                .position(|r| matches!(r, ActivityRole::EdgeActivity { edge, .. } if *edge == e))
                .map(Activity::from_slot)
                .expect("edge activity");
            for index in 1..=2 {
                let who = meta.find_player(&PlayerRole::ColorPairGadget { colors: (i, j), index }).expect("gadget");
                choice[who] = act;
            }
        }
    }
    Ok(Assignment::new(choice))
}
