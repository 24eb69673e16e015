//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gasp_core::bench::{clique_corpus, copyable_corpus, core_planted_corpus, forest_corpus, path_corpus, single_activity_corpus};
use gasp_core::generators::{
    no_core, no_is, reduce_clique_to_ns, reduce_hitting_set_to_core, reduce_mcc_to_ns, stalker, witness_clique,
    witness_hitting_set, witness_mcc, SimpleGraph,
};
use gasp_core::stability::is_valid_is_deviation;
use gasp_core::*;

/// Per-example wall-clock limit for criterion 1.
const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
/// Limit for each oracle-equivalence suite (criteria 3-5).
const SUITE_LIMIT: Duration = Duration::from_secs(300);
/// Limit for the MCC no-instance oracle run (criterion 8c).
const MCC_NO_LIMIT: Duration = Duration::from_secs(120);
const MIN_FORESTS: usize = 200;
const MIN_CLIQUES: usize = 200;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn c1_examples() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    type Check = (&'static str, Instance, Concept, fn(&Instance) -> Result<Option<Assignment>>);
    let checks: [Check; 3] = [
        ("F1/NS tree", stalker(1), Concept::Nash, solve_ns_forest),
        ("F2/IS tree", no_is(), Concept::Individual, solve_is_forest),
        ("F3/CR enum", no_core(), Concept::Core, |i| solve_core_connected_enum(i, DEFAULT_CORE_BUDGET)),
    ];
    for (name, inst, concept, solver) in checks {
        let start = Instant::now();
        let oracle = oracle_find(&inst, concept, DEFAULT_BUDGET);
        let fast = solver(&inst);
        let took = start.elapsed();
        let good = matches!(oracle, Ok(None)) && matches!(fast, Ok(None)) && took < EXAMPLE_LIMIT;
        ok &= good;
        notes.push(format!("{name} {}ms", took.as_millis()));
    }
    outcome(ok, notes.join(", "))
}

fn c2_deviation_list() -> Outcome {
    let inst = no_is();
    let act = |name: &str| inst.activity_by_name(name).unwrap();
    // (pi(1), pi(2), pi(3)) and the listed deviation, players 1-based.
    let listed = [
        (["a", "b", "void"], 1, "b"),
        (["b", "b", "void"], 3, "a"),
        (["b", "b", "a"], 2, "a"),
        (["c", "a", "a"], 2, "c"),
        (["c", "b", "void"], 3, "a"),
        (["c", "b", "a"], 2, "a"),
        (["c", "c", "void"], 3, "a"),
        (["c", "c", "a"], 3, "c"),
        (["c", "c", "c"], 1, "a"),
    ];
    let mut passed = 0;
    for (choice, player, target) in listed {
        let pi = Assignment::new(choice.iter().map(|&c| act(c)).collect());
        let feasible_ir = gasp_core::stability::check_feasible(&inst, &pi).is_ok()
            && gasp_core::stability::check_ir(&inst, &pi).is_ok();
        if feasible_ir && is_valid_is_deviation(&inst, &pi, player - 1, act(target)) {
            passed += 1;
        }
    }
    outcome(passed == 9, format!("{passed}/9 listed deviations confirmed"))
}

/// Decision agreement with the oracle, plus verification of every output.
fn agreement(
    corpus: &[Instance],
    concept: Concept,
    solver: impl Fn(&Instance) -> Result<Option<Assignment>>,
    found: &mut Vec<(usize, Assignment)>,
) -> (usize, usize, Duration) {
    let start = Instant::now();
    let mut bad = 0;
    for (k, inst) in corpus.iter().enumerate() {
        let fast = solver(inst);
        let slow = oracle_find(inst, concept, DEFAULT_BUDGET);
        match (fast, slow) {
            (Ok(f), Ok(s)) => {
                if f.is_some() != s.is_some() || f.as_ref().is_some_and(|pi| !verify(inst, pi, concept).is_stable()) {
                    eprintln!("  discrepancy on instance #{k}");
                    bad += 1;
                }
                found.extend(f.into_iter().chain(s).map(|pi| (k, pi)));
            }
            _ => bad += 1,
        }
    }
    (bad, corpus.len(), start.elapsed())
}

fn c3_c4_c5_c9() -> [Outcome; 4] {
    let forests = forest_corpus();
    let forests_ok = forests.len() >= MIN_FORESTS
        && forests.iter().all(|i| i.n() <= 8 && i.p() <= 3 && gasp_core::graph::classify_topology(i).is_forest());
    let mut ns_forest = Vec::new();
    let (bad3, n3, t3) = agreement(&forests, Concept::Nash, solve_ns_forest, &mut ns_forest);
    let mut is_found = Vec::new();
    let (bad4, n4, t4) = agreement(&forests, Concept::Individual, solve_is_forest, &mut is_found);
    let cliques = clique_corpus();
    let stalker_included = cliques.iter().any(|i| i.n() == 2 && i.preferences(0) == stalker(1).preferences(0));
    let cliques_ok = cliques.len() >= MIN_CLIQUES
        && stalker_included
        && cliques.iter().all(|i| i.n() <= 7 && i.p() <= 3 && gasp_core::graph::classify_topology(i).is_clique());
    let mut ns_clique = Vec::new();
    let (bad5, n5, t5) = agreement(&cliques, Concept::Nash, solve_ns_clique, &mut ns_clique);

    let mut checked = 0;
    let mut violations = 0;
    for (corpus, found) in [(&forests, &ns_forest), (&cliques, &ns_clique)] {
        for (k, pi) in found.iter() {
            checked += 1;
            if !verify(&corpus[*k], pi, Concept::Individual).is_stable() {
                violations += 1;
            }
        }
    }
    [
        outcome(
            forests_ok && bad3 == 0 && t3 < SUITE_LIMIT,
            format!("{n3} forests, {bad3} discrepancies, {}ms", t3.as_millis()),
        ),
        outcome(
            forests_ok && bad4 == 0 && t4 < SUITE_LIMIT,
            format!("{n4} forests, {bad4} discrepancies, {}ms", t4.as_millis()),
        ),
        outcome(
            cliques_ok && bad5 == 0 && t5 < SUITE_LIMIT,
            format!("{n5} cliques incl. stalker, {bad5} discrepancies, {}ms", t5.as_millis()),
        ),
        outcome(
            violations == 0 && checked > 0,
            format!("{checked} NS-stable assignments, {violations} not IS-stable"),
        ),
    ]
}

fn c6_core() -> Outcome {
    let singles = single_activity_corpus();
    let single_ok = singles.len() >= 100
        && singles.iter().all(|i| {
            i.p() == 1 && solve_core_single_activity(i).is_ok_and(|pi| verify(i, &pi, Concept::Core).is_stable())
        });
    let mut paths = path_corpus();
    paths.extend(
        core_planted_corpus().into_iter().filter(|i| i.p() <= 2 && gasp_core::graph::classify_topology(i).is_path()),
    );
    let paths_ok = paths.iter().all(|i| i.n() <= 8 && i.p() <= 2);
    let mut found = Vec::new();
    let (bad, n, _) =
        agreement(&paths, Concept::Core, |i| solve_core_connected_enum(i, DEFAULT_CORE_BUDGET), &mut found);
    outcome(
        single_ok && paths_ok && n >= 100 && bad == 0,
        format!("{} single-activity verified, {n} paths with {bad} discrepancies", singles.len()),
    )
}

fn c7_copyable() -> Outcome {
    let corpus = copyable_corpus();
    let failures = corpus
        .iter()
        .filter(|i| !solve_is_copyable_acyclic(i).is_ok_and(|pi| verify(i, &pi, Concept::Individual).is_stable()))
        .count();
    outcome(corpus.len() >= 100 && failures == 0, format!("{} instances, {failures} failures", corpus.len()))
}

fn c8_reductions() -> Outcome {
    let mut notes = Vec::new();
    // (a) K3, k = 2, clique = any edge.
    let k3 = SimpleGraph::complete(3);
    let a_ok = reduce_clique_to_ns(&k3, 2).is_ok_and(|(inst, meta)| {
        let w = witness_clique(&k3, &inst, &meta, &[0, 1]);
        inst.p() == 4 && inst.n() == 59 && w.is_ok_and(|pi| verify(&inst, &pi, Concept::Nash).is_stable())
    });
    notes.push(format!("clique {}", if a_ok { "ok" } else { "bad" }));
    // (b) |V| = 3, H = {{1,2},{2,3}}, k = 1, hitting set {2}.
    let family = vec![vec![0, 1], vec![1, 2]];
    let b_ok = reduce_hitting_set_to_core(3, &family, 1).is_ok_and(|(inst, meta)| {
        witness_hitting_set(&family, 1, &inst, &meta, &[1]).is_ok_and(|pi| verify(&inst, &pi, Concept::Core).is_stable())
    });
    notes.push(format!("hitting-set {}", if b_ok { "ok" } else { "bad" }));
    // (c) h = 2, q = 2; yes-instance with edge {1,3}, no-instance without edges.
    let colors = [1, 1, 2, 2];
    let yes = SimpleGraph::new(4, &[(0, 2), (1, 3)]);
    let c_yes = reduce_mcc_to_ns(&yes, &colors).is_ok_and(|(inst, meta)| {
        inst.n() == 11
            && witness_mcc(&yes, &colors, &inst, &meta, &[0, 2])
                .is_ok_and(|pi| verify(&inst, &pi, Concept::Nash).is_stable())
    });
    let no = SimpleGraph::new(4, &[]);
    let start = Instant::now();
    let c_no = reduce_mcc_to_ns(&no, &colors).is_ok_and(|(inst, _)| {
        let branching = (0..inst.n()).map(|i| 1 + inst.acceptable_activities(i).len()).max().unwrap_or(0);
        inst.n() == 11 && branching <= 5 && matches!(oracle_find(&inst, Concept::Nash, DEFAULT_BUDGET), Ok(None))
    });
    let took = start.elapsed();
    notes.push(format!(
        "mcc yes {} / no {} in {}ms",
        if c_yes { "ok" } else { "bad" },
        if c_no { "ok" } else { "bad" },
        took.as_millis()
    ));
    outcome(a_ok && b_ok && c_yes && c_no && took < MCC_NO_LIMIT, notes.join(", "))
}

fn main() -> ExitCode {
    let [c3, c4, c5, c9] = c3_c4_c5_c9();
    let results = [
        ("1 examples exact", c1_examples()),
        ("2 deviation list", c2_deviation_list()),
        ("3 NS forests vs oracle", c3),
        ("4 IS forests vs oracle", c4),
        ("5 NS cliques vs oracle", c5),
        ("6 core algorithms", c6_core()),
        ("7 copyable IS existence", c7_copyable()),
        ("8 reduction soundness", c8_reductions()),
        ("9 NS implies IS", c9),
    ];
    let mut all = true;
    for (name, r) in &results {
        println!("{} criterion {name}: {}", if r.ok { "PASS" } else { "FAIL" }, r.detail);
        all &= r.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
