//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when a
//! criterion fails, except for criteria listed in `UNATTAINABLE`, which are
//! still evaluated and reported.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use triex_core::exploration::{next_extent_exploration, transcript_csv, TranscriptRow};
use triex_core::format::parse_triadic_json;
use triex_core::lattice::ImplicationConditionContext;
use triex_core::{
    canonical_base, family_exploration, kc_lattice, label_nodes, triadic_exploration, AttrSet,
    ConditionSet, ContextFamily, Examples, Expert, ExplorationSession, ImplicationSet,
    OracleExpert, Panel, SessionOptions, TieOrder, Variant,
};

const T1_BUDGET: Duration = Duration::from_secs(1);
const RUNNING_BUDGET: Duration = Duration::from_secs(1);
const COMPLETENESS_BUDGET: Duration = Duration::from_secs(60);
const BASE_BUDGET: Duration = Duration::from_secs(30);
const COMPLETENESS_DOMAINS: u64 = 200;
const BASE_CONTEXTS: u64 = 200;
const FAMILY_DOMAINS: u64 = 100;

/// Criteria that cannot hold as stated; see the README.
const UNATTAINABLE: &[&str] = &["family-triadic-agreement"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn s(v: &[usize]) -> AttrSet {
    v.iter().copied().collect()
}

fn t1() -> triex_core::TriadicContext {
    parse_triadic_json(include_str!("../data/t1.json")).unwrap()
}

fn transport() -> triex_core::TriadicContext {
    parse_triadic_json(include_str!("../data/transport.json")).unwrap()
}

/// `(conditions, premise, conclusion, holds_for, answer)` with names.
fn rows(
    out: &[TranscriptRow],
    u: &triex_core::Universe,
) -> Vec<(String, String, String, String, String)> {
    out.iter()
        .map(|r| {
            (
                u.render_conditions(&r.question.conditions),
                u.render_attributes(&r.question.premise),
                u.render_attributes(&r.question.conclusion),
                u.render_conditions(&r.answer.holds_for),
                r.label.clone(),
            )
        })
        .collect()
}

fn kc_map(kc: &ImplicationConditionContext) -> BTreeMap<(AttrSet, AttrSet), ConditionSet> {
    kc.entries()
        .iter()
        .map(|e| {
            (
                (
                    e.implication.premise.clone(),
                    e.implication.conclusion.clone(),
                ),
                e.holds_for.clone(),
            )
        })
        .collect()
}

fn t1_end_to_end() -> Outcome {
    let start = Instant::now();
    let domain = t1();
    let out = triadic_exploration(
        empty_like(&domain),
        None,
        &mut OracleExpert::triadic(domain),
        SessionOptions::default(),
    )
    .unwrap();
    let expected = [
        ("d1, d2", "∅", "a, b", "∅", "1"),
        ("d1, d2", "b", "a, b", "d1, d2", "true"),
        ("d1", "∅", "a", "d1", "true"),
        ("d2", "a", "a, b", "d2", "true"),
    ];
    let got = rows(&out.transcript, &out.universe);
    let questions_ok = got
        == expected
            .iter()
            .map(|(a, b, c, d, e)| {
                (
                    a.to_string(),
                    b.to_string(),
                    c.to_string(),
                    d.to_string(),
                    e.to_string(),
                )
            })
            .collect::<Vec<_>>();
    let lattice = label_nodes(&out.kc, &kc_lattice(&out.kc));
    let label = |d: &[usize]| lattice.node(&s(d)).map(|n| lattice.render(&n.label));
    let top = lattice.node(&s(&[]));
    let lattice_ok = lattice.nodes.len() == 4
        && lattice.edges.len() == 4
        && lattice.nodes[lattice.bottom].intent == s(&[0, 1])
        && label(&[0, 1]) == Some(vec!["b ⟹ a".to_owned()])
        && label(&[0]) == Some(vec!["∅ ⟹ a".to_owned()])
        && label(&[1]) == Some(vec!["a ⟹ b".to_owned()])
        && top.is_some_and(|n| n.universe && n.label.is_empty());
    let elapsed = start.elapsed();
    outcome(
        questions_ok && lattice_ok && elapsed < T1_BUDGET,
        format!(
            "{} questions (match: {questions_ok}), {} nodes (labels match: {lattice_ok}), {elapsed:?}",
            got.len(),
            lattice.nodes.len()
        ),
    )
}

/// The twelve exchanges of the transport domain in reverse-lexicographic visiting order.
const RUNNING_TRANSCRIPT: [(&str, &str, &str, &str, &str); 12] = [
    (
        "Mo-Fr, Sat, Sun",
        "∅",
        "working-hours, late-evening, early-morning, night, evening",
        "∅",
        "RT5",
    ),
    (
        "Mo-Fr, Sat, Sun",
        "∅",
        "working-hours, late-evening, evening",
        "∅",
        "52",
    ),
    (
        "Mo-Fr, Sat, Sun",
        "evening",
        "working-hours, late-evening, evening",
        "Sat, Sun",
        "7",
    ),
    (
        "Mo-Fr, Sat, Sun",
        "evening",
        "working-hours, evening",
        "Mo-Fr, Sat, Sun",
        "true",
    ),
    (
        "Mo-Fr, Sat, Sun",
        "night",
        "working-hours, late-evening, early-morning, night, evening",
        "Mo-Fr",
        "N3",
    ),
    (
        "Mo-Fr, Sat, Sun",
        "early-morning",
        "working-hours, early-morning",
        "Mo-Fr, Sat, Sun",
        "true",
    ),
    (
        "Mo-Fr, Sat, Sun",
        "late-evening",
        "working-hours, late-evening, evening",
        "Mo-Fr, Sat, Sun",
        "true",
    ),
    (
        "Mo-Fr, Sat, Sun",
        "working-hours, night",
        "working-hours, late-evening, early-morning, night, evening",
        "Mo-Fr, Sat, Sun",
        "true",
    ),
    (
        "Mo-Fr, Sun",
        "working-hours",
        "working-hours, evening",
        "Sun",
        "55",
    ),
    (
        "Mo-Fr, Sat",
        "working-hours, evening",
        "working-hours, early-morning, evening",
        "Mo-Fr",
        "500",
    ),
    (
        "Sun",
        "working-hours, late-evening, early-morning, evening",
        "working-hours, late-evening, early-morning, night, evening",
        "∅",
        "4",
    ),
    (
        "Mo-Fr",
        "working-hours",
        "working-hours, early-morning",
        "Mo-Fr",
        "true",
    ),
];

fn transport_domain() -> Outcome {
    let start = Instant::now();
    let domain = transport();
    let run = |variant, order| {
        triadic_exploration(
            empty_like(&domain),
            None,
            &mut OracleExpert::triadic(domain.clone()),
            SessionOptions::default().variant(variant).order(order),
        )
        .unwrap()
    };
    let mut counts = Vec::new();
    let mut replay_ok = false;
    for order in [TieOrder::Lexicographic, TieOrder::ReverseLexicographic] {
        let partial = run(Variant::RecordPartialHolds, order);
        let full = run(Variant::OnlyFullHolds, order);
        counts.push((order, partial.question_count(), full.question_count()));
        if order == TieOrder::ReverseLexicographic {
            let expected: Vec<_> = RUNNING_TRANSCRIPT
                .iter()
                .map(|(a, b, c, d, e)| {
                    (
                        a.to_string(),
                        b.to_string(),
                        c.to_string(),
                        d.to_string(),
                        e.to_string(),
                    )
                })
                .collect();
            replay_ok = rows(&partial.transcript, &partial.universe) == expected;
        }
    }
    let counts_ok = counts.iter().all(|&(_, p, f)| p == 12 && f == 15);
    let elapsed = start.elapsed();
    outcome(
        counts_ok && replay_ok && elapsed < RUNNING_BUDGET,
        format!("questions (partial, full) per order {counts:?}; row-for-row replay: {replay_ok}; {elapsed:?}"),
    )
}

fn completeness() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut nodes = 0;
    for seed in 0..COMPLETENESS_DOMAINS {
        let domain = random_triadic(&mut rng(seed), 6, 5, 3);
        let (n, nb) = (domain.attributes().len(), domain.conditions().len());
        let out = triadic_exploration(
            empty_like(&domain),
            None,
            &mut OracleExpert::triadic(domain.clone()),
            SessionOptions::default(),
        )
        .unwrap();
        for d in 1..=full(nb) {
            nodes += 1;
            let l = masks_of(&out.kc.implications_for(&unmask(d)));
            if !same_theory(&l, &triadic_rows(&domain, d), n) {
                failures.push((seed, d));
            }
        }
        // every recorded incidence is true in the domain
        for e in out.kc.entries() {
            let (p, c) = (
                mask(&e.implication.premise),
                mask(&e.implication.conclusion),
            );
            for &b in &e.holds_for {
                if triadic_rows(&domain, 1 << b)
                    .iter()
                    .any(|&r| r & p == p && r & c != c)
                {
                    failures.push((seed, 1 << b));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < COMPLETENESS_BUDGET,
        format!(
            "{COMPLETENESS_DOMAINS} domains, {nodes} condition sets, {} mismatches {:?}, {elapsed:?}",
            failures.len(),
            &failures[..failures.len().min(5)]
        ),
    )
}

fn canonical_bases() -> Outcome {
    let start = Instant::now();
    let (mut unsound, mut incomplete, mut redundant, mut members) = (0, 0, 0, 0);
    for seed in 0..BASE_CONTEXTS {
        let mut r = rng(10_000 + seed);
        let g = rand::Rng::random_range(&mut r, 0..=6);
        let m = rand::Rng::random_range(&mut r, 1..=5);
        let p = rand::Rng::random_range(&mut r, 0.2..0.8);
        let ctx = random_dyadic(&mut r, g, m, p);
        let rows = rows_of(&ctx);
        let base = masks_of(&canonical_base(&ctx, &ImplicationSet::new()).unwrap());
        members += base.len();
        unsound += base
            .iter()
            .filter(|&&(p, c)| closure(&rows, p, m) & c != c)
            .count();
        if !same_theory(&base, &rows, m) {
            incomplete += 1;
        }
        for i in 0..base.len() {
            let mut fewer = base.clone();
            fewer.remove(i);
            if same_theory(&fewer, &rows, m) {
                redundant += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        unsound + incomplete + redundant == 0 && elapsed < BASE_BUDGET,
        format!(
            "{BASE_CONTEXTS} contexts, {members} base members; unsound {unsound}, incomplete {incomplete}, redundant {redundant}; {elapsed:?}"
        ),
    )
}

fn family_runs(
    seed: u64,
) -> (
    ImplicationConditionContext,
    ImplicationConditionContext,
    usize,
) {
    let domain = random_triadic(&mut rng(20_000 + seed), 6, 5, 3);
    let tri = triadic_exploration(
        empty_like(&domain),
        None,
        &mut OracleExpert::triadic(domain.clone()),
        SessionOptions::default(),
    )
    .unwrap();
    let fam = ContextFamily::from_triadic(&domain);
    let empty = ContextFamily::empty(fam.attributes().to_vec(), fam.member_ids()).unwrap();
    let multi = family_exploration(
        empty,
        None,
        &mut Panel::oracles(&fam),
        SessionOptions::default(),
    )
    .unwrap();
    (tri.kc, multi.kc, domain.attributes().len())
}

fn family_agreement() -> Outcome {
    let mut differing = Vec::new();
    for seed in 0..FAMILY_DOMAINS {
        let (tri, fam, _) = family_runs(seed);
        if kc_map(&tri) != kc_map(&fam) {
            differing.push(seed);
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} of {FAMILY_DOMAINS} domains give different contexts of conditional implications (e.g. seeds {:?})",
            differing.len(),
            &differing[..differing.len().min(5)]
        ),
    )
}

fn family_theory_agreement() -> Outcome {
    let mut differing = 0;
    for seed in 0..FAMILY_DOMAINS {
        let (tri, fam, n) = family_runs(seed);
        let nb = tri.conditions().len();
        for d in 1..=full(nb) {
            let a = masks_of(&tri.implications_for(&unmask(d)));
            let b = masks_of(&fam.implications_for(&unmask(d)));
            if (0..=full(n)).any(|x| horn_closure(&a, x) != horn_closure(&b, x)) {
                differing += 1;
                break;
            }
        }
    }
    outcome(
        differing == 0,
        format!("{differing} of {FAMILY_DOMAINS} domains generate different theories for some condition set"),
    )
}

fn next_extent_pitfall() -> Outcome {
    let domain = t1();
    let walked = next_extent_exploration(
        empty_like(&domain),
        &mut OracleExpert::triadic(domain.clone()),
        SessionOptions::default(),
    )
    .unwrap();
    let scheduled = triadic_exploration(
        empty_like(&domain),
        None,
        &mut OracleExpert::triadic(domain),
        SessionOptions::default(),
    )
    .unwrap();
    let e_a = triex_core::Implication::new(s(&[]), s(&[0]));
    let a_b = triex_core::Implication::new(s(&[0]), s(&[0, 1]));
    let walk_misses = walked.kc.holds_for(&e_a).is_none() && walked.kc.holds_for(&a_b).is_none();
    let schedule_finds = scheduled.kc.holds_for(&e_a) == Some(&s(&[0]))
        && scheduled.kc.holds_for(&a_b) == Some(&s(&[1]));
    outcome(
        walk_misses && schedule_finds,
        format!(
            "extent walk: {} implications, misses both: {walk_misses}; schedule: {} implications, finds both: {schedule_finds}",
            walked.kc.len(),
            scheduled.kc.len()
        ),
    )
}

fn resume_determinism() -> Outcome {
    let domain = t1();
    let start = || {
        ExplorationSession::new(
            Examples::Triadic(empty_like(&domain)),
            None,
            SessionOptions::default(),
        )
        .unwrap()
    };
    let mut oracle = OracleExpert::triadic(domain.clone());

    let mut straight = start();
    triex_core::exploration::run_session(&mut straight, &mut oracle).unwrap();

    let mut snapshot = start().to_json();
    let mut restores = 0;
    let resumed = loop {
        let mut s = ExplorationSession::from_json(&snapshot).unwrap();
        restores += 1;
        let Some(q) = s.pending().cloned() else {
            break s;
        };
        let a = oracle.answer(s.universe(), &q).unwrap();
        s.submit(a).unwrap();
        snapshot = s.to_json();
    };
    let kc_same = serde_json::to_string(resumed.kc()).unwrap()
        == serde_json::to_string(straight.kc()).unwrap();
    let csv_same = transcript_csv(resumed.universe(), resumed.transcript())
        == transcript_csv(straight.universe(), straight.transcript());
    outcome(
        kc_same && csv_same && straight.seq() == 4,
        format!("{restores} restores; kc identical: {kc_same}; transcript identical: {csv_same}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("t1-end-to-end", t1_end_to_end),
        ("transport-domain", transport_domain),
        ("completeness-soundness", completeness),
        ("canonical-base", canonical_bases),
        ("family-triadic-agreement", family_agreement),
        ("family-triadic-theory-agreement", family_theory_agreement),
        ("next-extent-pitfall", next_extent_pitfall),
        ("resume-determinism", resume_determinism),
    ];
    let mut unexpected = 0;
    for (name, run) in criteria {
        let o = run();
        let known = UNATTAINABLE.contains(&name);
        let verdict = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (unattainable as stated)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{verdict} {name}: {}", o.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} acceptance criteria failed");
        std::process::exit(1);
    }
}
