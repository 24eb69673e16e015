//! Feasibility, individual rationality and the three stability notions,
//! each reporting a concrete witness on failure.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::{connected_prefix, is_connected_subset};
use crate::model::{Activity, Assignment, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Concept {
    Nash,
    Individual,
    Core,
}

impl FromStr for Concept {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "ns" | "nash" => Ok(Concept::Nash),
            "is" | "individual" => Ok(Concept::Individual),
            "cr" | "core" => Ok(Concept::Core),
            other => Err(Error::Parse(format!("unknown stability concept {other:?}"))),
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Concept::Nash => "NS",
            Concept::Individual => "IS",
            Concept::Core => "CR",
        })
    }
}

/// Proof that an assignment fails a property. Players are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    NsDeviation { player: usize, activity: Activity },
    IsDeviation { player: usize, activity: Activity },
    CoreBlock { coalition: Vec<usize>, activity: Activity },
    IrViolation { player: usize },
    InfeasibleGroup { activity: Activity },
}

impl Witness {
    /// Single-line rendering with one-based players and activity names.
    pub fn render(&self, inst: &Instance) -> String {
        match self {
            Witness::NsDeviation { player, activity } => {
                format!("NS-DEVIATION player={} activity={}", player + 1, inst.activity_name(*activity))
            }
            Witness::IsDeviation { player, activity } => {
                format!("IS-DEVIATION player={} activity={}", player + 1, inst.activity_name(*activity))
            }
            Witness::CoreBlock { coalition, activity } => {
                let members: Vec<String> = coalition.iter().map(|i| (i + 1).to_string()).collect();
                format!("CORE-BLOCK activity={} coalition={}", inst.activity_name(*activity), members.join(","))
            }
            Witness::IrViolation { player } => format!("IR-VIOLATION player={}", player + 1),
            Witness::InfeasibleGroup { activity } => {
                format!("INFEASIBLE-GROUP activity={}", inst.activity_name(*activity))
            }
        }
    }

    /// Re-checks the witness against the definitions.
    pub fn is_sound(&self, inst: &Instance, pi: &Assignment) -> bool {
        match self {
            Witness::NsDeviation { player, activity } => is_valid_ns_deviation(inst, pi, *player, *activity),
            Witness::IsDeviation { player, activity } => is_valid_is_deviation(inst, pi, *player, *activity),
            Witness::CoreBlock { coalition, activity } => strongly_blocks(inst, pi, coalition, *activity),
            Witness::IrViolation { player } => {
                let alt = pi.alternative(*player);
                !inst.acceptable(*player, alt.activity, alt.size)
            }
            Witness::InfeasibleGroup { activity } => !is_connected_subset(inst, &pi.group(*activity)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    Unstable(Witness),
}

impl Verdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::Stable)
    }
}

pub fn check_feasible(inst: &Instance, pi: &Assignment) -> Result<(), Witness> {
    for a in inst.activities() {
        if !is_connected_subset(inst, &pi.group(a)) {
            return Err(Witness::InfeasibleGroup { activity: a });
        }
    }
    Ok(())
}

pub fn check_ir(inst: &Instance, pi: &Assignment) -> Result<(), Witness> {
    let sizes = pi.group_sizes(inst.p());
    for i in 0..inst.n() {
        let a = pi.get(i);
        let size = if a.is_void() { 1 } else { sizes[a.0] };
        if !inst.acceptable(i, a, size) {
            return Err(Witness::IrViolation { player: i });
        }
    }
    Ok(())
}

/// `π^a ∪ {i}` is connected, given `π^a` is connected and `i ∉ π^a`.
fn can_join(inst: &Instance, group: &[usize], i: usize) -> bool {
    group.is_empty() || group.iter().any(|&j| inst.adjacent(i, j))
}

pub fn is_valid_ns_deviation(inst: &Instance, pi: &Assignment, i: usize, a: Activity) -> bool {
    if a.is_void() || pi.get(i) == a {
        return false;
    }
    let group = pi.group(a);
    let mut joined = group.clone();
    joined.push(i);
    if !is_connected_subset(inst, &joined) {
        return false;
    }
    let cur = pi.alternative(i);
    inst.prefers(i, a, group.len() + 1, cur.activity, cur.size)
}

pub fn is_valid_is_deviation(inst: &Instance, pi: &Assignment, i: usize, a: Activity) -> bool {
    if !is_valid_ns_deviation(inst, pi, i, a) {
        return false;
    }
    let group = pi.group(a);
    let s = group.len();
    group.iter().all(|&j| inst.weakly_prefers(j, a, s + 1, a, s))
}

fn find_deviation(inst: &Instance, pi: &Assignment, individual: bool) -> Option<Witness> {
    let p = inst.p();
    let sizes = pi.group_sizes(p);
    let groups: Vec<Vec<usize>> = (0..=p).map(|a| pi.group(Activity(a))).collect();
    // Players in a group that would refuse one more member.
    let vetoed: Vec<bool> = (0..=p)
        .map(|a| {
            a > 0
                && groups[a].iter().any(|&j| inst.prefers(j, Activity(a), sizes[a], Activity(a), sizes[a] + 1))
        })
        .collect();
    for i in 0..inst.n() {
        let cur = pi.alternative(i);
        for a in inst.activities() {
            if pi.get(i) == a || !can_join(inst, &groups[a.0], i) {
                continue;
            }
            if !inst.prefers(i, a, sizes[a.0] + 1, cur.activity, cur.size) {
                continue;
            }
            if !individual {
                return Some(Witness::NsDeviation { player: i, activity: a });
            }
            if !vetoed[a.0] {
                return Some(Witness::IsDeviation { player: i, activity: a });
            }
        }
    }
    None
}

/// First NS-deviation scanning players, then activities, ascending.
/// Assumes a feasible assignment.
pub fn find_ns_deviation(inst: &Instance, pi: &Assignment) -> Option<Witness> {
    find_deviation(inst, pi, false)
}

pub fn find_is_deviation(inst: &Instance, pi: &Assignment) -> Option<Witness> {
    find_deviation(inst, pi, true)
}

/// Checks the strong-blocking definition directly.
pub fn strongly_blocks(inst: &Instance, pi: &Assignment, coalition: &[usize], a: Activity) -> bool {
    if a.is_void() || coalition.is_empty() || !is_connected_subset(inst, coalition) {
        return false;
    }
    let mut member = vec![false; inst.n()];
    for &i in coalition {
        member[i] = true;
    }
    if pi.group(a).iter().any(|&j| !member[j]) {
        return false;
    }
    let s = coalition.len();
    coalition.iter().all(|&i| {
        let cur = pi.alternative(i);
        inst.prefers(i, a, s, cur.activity, cur.size)
    })
}

/// Looks for a strongly blocking pair by activity, then size, ascending.
/// Assumes a feasible assignment.
pub fn find_core_block(inst: &Instance, pi: &Assignment) -> Option<Witness> {
    let n = inst.n();
    let current: Vec<_> = (0..n).map(|i| pi.alternative(i)).collect();
    for a in inst.activities() {
        let group = pi.group(a);
        for s in group.len().max(1)..=n {
            let eager: Vec<bool> =
                (0..n).map(|i| inst.prefers(i, a, s, current[i].activity, current[i].size)).collect();
            if group.iter().any(|&j| !eager[j]) {
                continue;
            }
            if let Some(coalition) = connected_prefix(inst, &group, &eager, s) {
                return Some(Witness::CoreBlock { coalition, activity: a });
            }
        }
    }
    None
}

/// Full check: feasibility, then individual rationality, then the concept.
pub fn verify(inst: &Instance, pi: &Assignment, concept: Concept) -> Verdict {
    if pi.len() != inst.n() {
        return Verdict::Unstable(Witness::IrViolation { player: pi.len().min(inst.n()) });
    }
    if let Err(w) = check_feasible(inst, pi).and_then(|_| check_ir(inst, pi)) {
        return Verdict::Unstable(w);
    }
    let witness = match concept {
        Concept::Nash => find_ns_deviation(inst, pi),
        Concept::Individual => find_is_deviation(inst, pi),
        Concept::Core => find_core_block(inst, pi),
    };
    witness.map_or(Verdict::Stable, Verdict::Unstable)
}
