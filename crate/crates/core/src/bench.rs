//! Seeded desk-scale corpora and the cross-check suite behind `gasp bench`.

use std::time::Instant;

use crate::generators::{attach_random, gen_random, make_copyable, no_core, no_is, stalker, RandomSpec, RandomTopology};
use crate::model::{Assignment, Instance};
use crate::oracle::{oracle_find, DEFAULT_BUDGET};
use crate::stability::{verify, Concept};
use crate::{
    solve_core_connected_enum, solve_core_single_activity, solve_is_copyable_acyclic, solve_is_forest,
    solve_ns_clique, solve_ns_forest, DEFAULT_CORE_BUDGET,
};

fn spec(seed: u64, topology: RandomTopology, n: usize, p: usize) -> RandomSpec {
    let approval = [0.3, 0.45, 0.6][(seed % 3) as usize];
    let ties = [0.0, 0.2, 0.4][(seed / 3 % 3) as usize];
    RandomSpec { seed, topology, n, p, approval, ties }
}

/// Random players and activities attached to a base instance; `seed`
/// drives sizes and densities.
fn planted(base: &Instance, seed: u64, max_extra: usize, max_extra_p: usize) -> Instance {
    let extra = (seed % (max_extra as u64 + 1)) as usize;
    let extra_p = (seed / 7 % (max_extra_p as u64 + 1)) as usize;
    attach_random(base, seed, extra, extra_p, 0.05 + 0.05 * (seed % 5) as f64)
}

/// 240 forests, trees, paths and stars plus 120 forests grown around the
/// no-IS path, all with `n <= 8`, `p <= 3`. Random instances almost always
/// admit an IS assignment; the grown ones often do not.
pub fn forest_corpus() -> Vec<Instance> {
    let kinds = [RandomTopology::Forest, RandomTopology::Tree, RandomTopology::Path, RandomTopology::Star];
    let mut out: Vec<Instance> = (0..240u64)
        .map(|seed| {
            let n = 2 + (seed % 7) as usize;
            let p = 1 + (seed / 7 % 3) as usize;
            gen_random(&spec(seed, kinds[(seed % 4) as usize], n, p))
        })
        .collect();
    out.extend((0..120u64).map(|seed| planted(&no_is(), 500 + seed, 5, 0)));
    out
}

/// 240 random cliques with `n <= 7`, `p <= 3`, plus the stalker games.
pub fn clique_corpus() -> Vec<Instance> {
    let mut out: Vec<Instance> = (0..240u64)
        .map(|seed| {
            let n = 1 + (seed % 7) as usize;
            let p = 1 + (seed / 7 % 3) as usize;
            gen_random(&spec(1000 + seed, RandomTopology::Clique, n, p))
        })
        .collect();
    out.extend([stalker(1), stalker(2), stalker(3)]);
    out
}

/// 100 single-activity instances over arbitrary graphs, `n <= 8`.
pub fn single_activity_corpus() -> Vec<Instance> {
    let kinds = [RandomTopology::General, RandomTopology::Clique, RandomTopology::Tree, RandomTopology::Forest];
    (0..100u64).map(|seed| gen_random(&spec(2000 + seed, kinds[(seed % 4) as usize], 1 + (seed % 8) as usize, 1))).collect()
}

/// 120 random paths with `n <= 8`, `p <= 2`.
pub fn path_corpus() -> Vec<Instance> {
    (0..120u64)
        .map(|seed| gen_random(&spec(3000 + seed, RandomTopology::Path, 1 + (seed % 8) as usize, 1 + (seed / 8 % 2) as usize)))
        .collect()
}

/// 80 forests grown around the no-core path, `n <= 7`, `p <= 3`, half of
/// them paths.
pub fn core_planted_corpus() -> Vec<Instance> {
    (0..80u64)
        .map(|seed| {
            if seed % 2 == 0 {
                planted(&no_core(), 3500 + seed, 4, 1)
            } else {
                // Extend along the path so the result stays a path.
                let extra = (seed % 5) as usize;
                let mut raw = attach_random(&no_core(), 3500 + seed, extra, 0, 0.1 + 0.05 * (seed % 4) as f64).to_raw();
                raw.edges.truncate(2);
                raw.edges.extend((3..raw.players).map(|v| (v - 1, v)));
                Instance::new(raw).expect("path extension is valid")
            }
        })
        .collect()
}

/// 100 copyable instances on forests.
pub fn copyable_corpus() -> Vec<Instance> {
    let kinds = [RandomTopology::Tree, RandomTopology::Forest, RandomTopology::Path, RandomTopology::Star];
    (0..100u64)
        .map(|seed| {
            let n = 2 + (seed % 5) as usize;
            let p = 1 + (seed / 5 % 2) as usize;
            make_copyable(&gen_random(&spec(4000 + seed, kinds[(seed % 4) as usize], n, p)))
        })
        .collect()
}

/// Outcome of one cross-check suite.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: &'static str,
    pub instances: usize,
    /// Instances where some stable assignment exists.
    pub positive: usize,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Solver = fn(&Instance) -> crate::Result<Option<Assignment>>;

/// Compares a solver's decision with the oracle's and verifies any output.
pub fn oracle_suite(name: &'static str, corpus: &[Instance], concept: Concept, solve: Solver) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport { name, instances: corpus.len(), ..Default::default() };
    for (k, inst) in corpus.iter().enumerate() {
        let fast = solve(inst);
        let slow = oracle_find(inst, concept, DEFAULT_BUDGET);
        match (fast, slow) {
            (Ok(fast), Ok(slow)) => {
                if fast.is_some() != slow.is_some() {
                    report.failures.push(format!("#{k}: solver {:?}, oracle {:?}", fast.is_some(), slow.is_some()));
                }
                if let Some(pi) = &fast {
                    if !verify(inst, pi, concept).is_stable() {
                        report.failures.push(format!("#{k}: output {pi} fails the verifier"));
                    }
                }
                report.positive += slow.is_some() as usize;
            }
            (Err(e), _) | (_, Err(e)) => report.failures.push(format!("#{k}: {e}")),
        }
    }
    report.millis = start.elapsed().as_millis();
    report
}

/// Checks that an always-succeeding solver produces verified output.
pub fn existence_suite(
    name: &'static str,
    corpus: &[Instance],
    concept: Concept,
    solve: fn(&Instance) -> crate::Result<Assignment>,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport { name, instances: corpus.len(), ..Default::default() };
    for (k, inst) in corpus.iter().enumerate() {
        match solve(inst) {
            Ok(pi) if verify(inst, &pi, concept).is_stable() => report.positive += 1,
            Ok(pi) => report.failures.push(format!("#{k}: output {pi} fails the verifier")),
            Err(e) => report.failures.push(format!("#{k}: {e}")),
        }
    }
    report.millis = start.elapsed().as_millis();
    report
}

fn core_enum(inst: &Instance) -> crate::Result<Option<Assignment>> {
    solve_core_connected_enum(inst, DEFAULT_CORE_BUDGET)
}

/// All desk suites in a fixed order.
pub fn desk_suite() -> Vec<SuiteReport> {
    let forests = forest_corpus();
    vec![
        oracle_suite("ns-forest", &forests, Concept::Nash, solve_ns_forest),
        oracle_suite("is-forest", &forests, Concept::Individual, solve_is_forest),
        oracle_suite("ns-clique", &clique_corpus(), Concept::Nash, solve_ns_clique),
        existence_suite("core-single", &single_activity_corpus(), Concept::Core, solve_core_single_activity),
        oracle_suite("core-enum", &path_corpus(), Concept::Core, core_enum),
        oracle_suite("core-planted", &core_planted_corpus(), Concept::Core, core_enum),
        existence_suite("is-copyable", &copyable_corpus(), Concept::Individual, solve_is_copyable_acyclic),
    ]
}

/// Fixed-width table; timings only when asked, so default output is stable.
pub fn render_table(reports: &[SuiteReport], timing: bool) -> String {
    let mut out = String::from("suite         instances  stable  failures  result");
    if timing {
        out.push_str("  ms");
    }
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{:<12}  {:>9}  {:>6}  {:>8}  {:<6}",
            r.name,
            r.instances,
            r.positive,
            r.failures.len(),
            if r.passed() { "PASS" } else { "FAIL" }
        ));
        if timing {
            out.push_str(&format!("  {}", r.millis));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::classify_topology;

    #[test]
    fn corpora_have_the_advertised_shape() {
        let f = forest_corpus();
        assert!(f.len() >= 200 && f.iter().all(|i| i.n() <= 8 && i.p() <= 3 && classify_topology(i).is_forest()));
        let c = clique_corpus();
        assert!(c.len() >= 200 && c.iter().all(|i| i.n() <= 7 && i.p() <= 3 && classify_topology(i).is_clique()));
        assert!(path_corpus().iter().all(|i| i.n() <= 8 && i.p() <= 2 && classify_topology(i).is_path()));
        assert!(core_planted_corpus().iter().all(|i| i.n() <= 7 && i.p() <= 3));
        assert!(copyable_corpus().iter().all(|i| i.all_copyable()));
    }
}
