//! Instances, alternatives, weak-order preferences and assignments.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Violation};

/// An activity code. `0` is the void activity, `1..=p` are the non-void
/// activities in declaration order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Activity(pub usize);

impl Activity {
    pub const VOID: Activity = Activity(0);

    pub fn is_void(self) -> bool {
        self.0 == 0
    }

    /// Zero-based position among the non-void activities.
    pub fn slot(self) -> usize {
        debug_assert!(!self.is_void());
        self.0 - 1
    }

    pub fn from_slot(slot: usize) -> Self {
        Activity(slot + 1)
    }
}

/// An (activity, group size) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alternative {
    pub activity: Activity,
    pub size: usize,
}

impl Alternative {
    pub const VOID: Alternative = Alternative { activity: Activity::VOID, size: 1 };

    pub fn new(activity: Activity, size: usize) -> Self {
        Alternative { activity, size }
    }

    pub fn is_void(&self) -> bool {
        self.activity.is_void()
    }
}

/// Result of comparing two alternatives for one player.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    FirstBetter,
    SecondBetter,
    Indifferent,
}

/// A weak order given as tiers, best first. Alternatives not listed form one
/// implicit bottom tier.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreferenceOrder {
    pub tiers: Vec<Vec<Alternative>>,
}

impl PreferenceOrder {
    pub fn new(tiers: Vec<Vec<Alternative>>) -> Self {
        PreferenceOrder { tiers }
    }
}

/// Unvalidated instance data, as read from a file or built by a generator.
#[derive(Clone, Debug, Default)]
pub struct RawInstance {
    pub players: usize,
    pub activities: Vec<String>,
    /// Zero-based player pairs.
    pub edges: Vec<(usize, usize)>,
    pub preferences: Vec<PreferenceOrder>,
}

/// A validated instance. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Instance {
    n: usize,
    activities: Vec<String>,
    edges: Vec<(usize, usize)>,
    prefs: Vec<PreferenceOrder>,
    adjacency: Vec<Vec<usize>>,
    // rank[i][a * (n + 2) + s], lower is better; sizes above n map to the bottom tier.
    rank: Vec<Vec<u32>>,
}

impl Instance {
    /// Validates raw data, collecting every structural violation.
    pub fn new(raw: RawInstance) -> Result<Self, Error> {
        let RawInstance { players: n, activities, edges, preferences } = raw;
        let p = activities.len();
        let mut violations = Vec::new();
        if preferences.len() != n {
            violations.push(Violation::new(
                None,
                "preferences",
                format!("expected {n} preference orders, found {}", preferences.len()),
            ));
        }

        let mut seen_edges = HashSet::new();
        let mut norm_edges = Vec::new();
        for &(u, v) in &edges {
            if u == v {
                violations.push(Violation::new(Some(u), "edges", "self-loop".to_string()));
                continue;
            }
            if u >= n || v >= n {
                violations.push(Violation::new(
                    None,
                    "edges",
                    format!("edge {{{}, {}}} has an endpoint outside 1..={n}", u + 1, v + 1),
                ));
                continue;
            }
            let e = (u.min(v), u.max(v));
            if seen_edges.insert(e) {
                norm_edges.push(e);
            }
        }
        norm_edges.sort_unstable();

        for (i, order) in preferences.iter().enumerate() {
            let mut seen = HashSet::new();
            let mut has_void = false;
            for tier in &order.tiers {
                if tier.is_empty() {
                    violations.push(Violation::new(Some(i), "preferences", "empty tier".into()));
                }
                for alt in tier {
                    if alt.activity.0 > p {
                        violations.push(Violation::new(
                            Some(i),
                            "preferences",
                            format!("unknown activity index {}", alt.activity.0),
                        ));
                    }
                    if alt.size == 0 {
                        violations.push(Violation::new(Some(i), "preferences", "size must be positive".into()));
                    } else if alt.size > n {
                        violations.push(Violation::new(
                            Some(i),
                            "preferences",
                            format!("size exceeds n ({} > {n})", alt.size),
                        ));
                    }
                    if alt.activity.is_void() {
                        if alt.size != 1 {
                            violations.push(Violation::new(
                                Some(i),
                                "preferences",
                                "void alternative must have size 1".into(),
                            ));
                        }
                        has_void = true;
                    }
                    if !seen.insert(*alt) {
                        violations.push(Violation::new(
                            Some(i),
                            "preferences",
                            format!("duplicate alternative ({}, {})", alt.activity.0, alt.size),
                        ));
                    }
                }
            }
            if !has_void {
                violations.push(Violation::new(Some(i), "preferences", "void alternative not listed".into()));
            }
        }

        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &norm_edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let stride = n + 2;
        let rank = preferences
            .iter()
            .map(|order| {
                let bottom = order.tiers.len() as u32;
                let mut table = vec![bottom; (p + 1) * stride];
                for (r, tier) in order.tiers.iter().enumerate() {
                    for alt in tier {
                        table[alt.activity.0 * stride + alt.size] = r as u32;
                    }
                }
                table
            })
            .collect();

        Ok(Instance { n, activities, edges: norm_edges, prefs: preferences, adjacency, rank })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of non-void activities.
    pub fn p(&self) -> usize {
        self.activities.len()
    }

    pub fn activity_names(&self) -> &[String] {
        &self.activities
    }

    pub fn activity_name(&self, a: Activity) -> &str {
        if a.is_void() {
            "void"
        } else {
            &self.activities[a.slot()]
        }
    }

    pub fn activity_by_name(&self, name: &str) -> Option<Activity> {
        if name == "void" {
            return Some(Activity::VOID);
        }
        self.activities.iter().position(|x| x == name).map(Activity::from_slot)
    }

    /// Non-void activities in ascending order.
    pub fn activities(&self) -> impl Iterator<Item = Activity> + '_ {
        (1..=self.p()).map(Activity)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn preferences(&self, i: usize) -> &PreferenceOrder {
        &self.prefs[i]
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            players: self.n,
            activities: self.activities.clone(),
            edges: self.edges.clone(),
            preferences: self.prefs.clone(),
        }
    }

    /// Tier index of `alt` for player `i`; lower is better. Sizes above `n`
    /// land in the implicit bottom tier.
    #[inline]
    pub fn rank(&self, i: usize, alt: Alternative) -> u32 {
        let stride = self.n + 2;
        let size = alt.size.min(self.n + 1);
        self.rank[i][alt.activity.0 * stride + size]
    }

    #[inline]
    fn rank_of(&self, i: usize, a: Activity, size: usize) -> u32 {
        self.rank(i, Alternative::new(a, size))
    }

    pub fn compare(&self, i: usize, x: Alternative, y: Alternative) -> Comparison {
        let (rx, ry) = (self.rank(i, x), self.rank(i, y));
        match rx.cmp(&ry) {
            std::cmp::Ordering::Less => Comparison::FirstBetter,
            std::cmp::Ordering::Greater => Comparison::SecondBetter,
            std::cmp::Ordering::Equal => Comparison::Indifferent,
        }
    }

    /// `(a, s) ≻_i (b, t)`.
    #[inline]
    pub fn prefers(&self, i: usize, a: Activity, s: usize, b: Activity, t: usize) -> bool {
        self.rank_of(i, a, s) < self.rank_of(i, b, t)
    }

    /// `(a, s) ⪰_i (b, t)`.
    #[inline]
    pub fn weakly_prefers(&self, i: usize, a: Activity, s: usize, b: Activity, t: usize) -> bool {
        self.rank_of(i, a, s) <= self.rank_of(i, b, t)
    }

    /// True iff the player strictly prefers `alt` to doing nothing.
    pub fn approves(&self, i: usize, alt: Alternative) -> bool {
        self.rank(i, alt) < self.rank(i, Alternative::VOID)
    }

    /// True iff `alt` is individually rational for the player.
    #[inline]
    pub fn acceptable(&self, i: usize, a: Activity, s: usize) -> bool {
        self.rank_of(i, a, s) <= self.rank(i, Alternative::VOID)
    }

    /// Activities for which the player finds some group size acceptable.
    pub fn acceptable_activities(&self, i: usize) -> Vec<Activity> {
        self.activities()
            .filter(|&a| (1..=self.n).any(|s| self.acceptable(i, a, s)))
            .collect()
    }

    pub fn equivalent(&self, a: Activity, b: Activity) -> bool {
        (0..self.n).all(|i| (1..=self.n).all(|s| self.rank_of(i, a, s) == self.rank_of(i, b, s)))
    }

    /// At least `n` activities (counting `a`) are equivalent to `a`.
    pub fn is_copyable(&self, a: Activity) -> bool {
        self.activities().filter(|&b| self.equivalent(a, b)).count() >= self.n
    }

    pub fn all_copyable(&self) -> bool {
        self.activities().all(|a| self.is_copyable(a))
    }
}

/// A map from players to activities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    pub choice: Vec<Activity>,
}

impl Assignment {
    pub fn new(choice: Vec<Activity>) -> Self {
        Assignment { choice }
    }

    pub fn all_void(n: usize) -> Self {
        Assignment { choice: vec![Activity::VOID; n] }
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    pub fn get(&self, i: usize) -> Activity {
        self.choice[i]
    }

    /// Players assigned to `a`, ascending. Empty for the void activity.
    pub fn group(&self, a: Activity) -> Vec<usize> {
        if a.is_void() {
            return Vec::new();
        }
        (0..self.choice.len()).filter(|&i| self.choice[i] == a).collect()
    }

    pub fn group_size(&self, a: Activity) -> usize {
        if a.is_void() {
            return 0;
        }
        self.choice.iter().filter(|&&c| c == a).count()
    }

    /// Sizes of all groups indexed by activity code (index 0 unused).
    pub fn group_sizes(&self, p: usize) -> Vec<usize> {
        let mut sizes = vec![0; p + 1];
        for &c in &self.choice {
            if !c.is_void() {
                sizes[c.0] += 1;
            }
        }
        sizes
    }

    /// The player's coalition: its group, or just itself when void.
    pub fn coalition(&self, i: usize) -> Vec<usize> {
        match self.choice[i] {
            a if a.is_void() => vec![i],
            a => self.group(a),
        }
    }

    /// `(π(i), |π_i|)`.
    pub fn alternative(&self, i: usize) -> Alternative {
        let a = self.choice[i];
        if a.is_void() {
            Alternative::VOID
        } else {
            Alternative::new(a, self.group_size(a))
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.choice.iter().map(|a| a.0.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
