//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines show up in plain `cargo test` output.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use origami_core::greens::{
    check_regular_r, check_theorem_main, compute_greens, is_aperiodic, Relation,
};
use origami_core::jones::{diagram_of_word, JonesDiagram};
use origami_core::origami::{check_conjecture, compare_tables, verify_identities, ConjectureRules};
use origami_core::{
    build_jones_presentation, build_origami_presentation, kb_complete, tc_enumerate, Alphabet,
    Budget, Generator, MonoidTable, TcOptions, Word,
};

/// `ok` covers every part of the criterion; `hard_ok` leaves out parts that
/// cannot hold as stated, so only `hard_ok` decides the exit status.
struct Outcome {
    ok: bool,
    hard_ok: bool,
    detail: String,
}

impl From<(bool, String)> for Outcome {
    fn from((ok, detail): (bool, String)) -> Self {
        Outcome {
            ok,
            hard_ok: ok,
            detail,
        }
    }
}

fn jones(n: usize) -> MonoidTable {
    tc_enumerate(&build_jones_presentation(n).unwrap(), TcOptions::default()).unwrap()
}

fn origami(n: usize) -> MonoidTable {
    tc_enumerate(
        &build_origami_presentation(n, true).unwrap(),
        TcOptions::default(),
    )
    .unwrap()
}

fn jones_sizes() -> (bool, String) {
    let expected = [2usize, 5, 14, 42, 132, 429];
    let t = Instant::now();
    let mut ok = true;
    let mut got = Vec::new();
    for (n, &want) in (2..=7).zip(&expected) {
        let p = build_jones_presentation(n).unwrap();
        let tc = tc_enumerate(&p, TcOptions::default()).unwrap().size();
        let sys = kb_complete(&p, Budget::default());
        let kb = if sys.is_complete() {
            sys.count_irreducible().unwrap() as usize
        } else {
            0
        };
        ok &= tc == want && kb == want;
        got.push(format!("{tc}/{kb}"));
    }
    let secs = t.elapsed().as_secs_f64();
    ok &= secs < 5.0;
    (
        ok,
        format!("tc/kb sizes n=2..7: {} in {secs:.2}s", got.join(", ")),
    )
}

fn origami_sizes() -> (bool, String) {
    let expected = [44usize, 293, 2179, 19086, 190512];
    let mut ok = true;
    let mut got = Vec::new();
    for (n, &want) in (3..=7).zip(&expected) {
        let t = Instant::now();
        let m = origami(n);
        ok &= m.size() - 1 == want;
        got.push(format!(
            "n={n}: {} ({:.1}s)",
            m.size() - 1,
            t.elapsed().as_secs_f64()
        ));
    }
    (ok, format!("non-identity sizes {}", got.join(", ")))
}

fn o2_elements() -> (bool, String) {
    let m = origami(2);
    let got: BTreeSet<String> = m.reps().iter().map(|r| r.to_string()).collect();
    let want: BTreeSet<String> = ["1", "a1", "b1", "a1 b1", "b1 a1", "a1 b1 a1", "b1 a1 b1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    (
        got == want,
        format!(
            "representatives {{{}}}",
            got.into_iter().collect::<Vec<_>>().join(", ")
        ),
    )
}

fn redundancy() -> (bool, String) {
    let mut ok = true;
    let mut sizes = Vec::new();
    for n in 2..=5 {
        let full = origami(n);
        let lean = tc_enumerate(
            &build_origami_presentation(n, false).unwrap(),
            TcOptions::default(),
        )
        .unwrap();
        ok &= compare_tables(&full, &lean, "redundancy").passed();
        sizes.push(format!("{}={}", full.size(), lean.size()));
    }
    (
        ok,
        format!(
            "with/without derivable rules, n=2..5: {} (tables identical: {ok})",
            sizes.join(", ")
        ),
    )
}

fn all_words(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
    let gens: Vec<Generator> = alphabet.generators().collect();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for u in &frontier {
            for &g in &gens {
                let mut v = u.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn oracle_equivalence() -> (bool, String) {
    let mut ok = true;
    let mut pairs = 0u64;
    let mut bad = 0u64;
    for n in 2..=5 {
        let p = build_jones_presentation(n).unwrap();
        let m = tc_enumerate(&p, TcOptions::default()).unwrap();
        let sys = kb_complete(&p, Budget::default());
        ok &= sys.is_complete();
        // every element against its diagram
        let diagrams: Vec<JonesDiagram> = m
            .reps()
            .iter()
            .map(|r| diagram_of_word(r, n).unwrap())
            .collect();
        let distinct: BTreeSet<&JonesDiagram> = diagrams.iter().collect();
        ok &= distinct.len() == m.size();
        // every pair of short words
        let words = all_words(m.alphabet(), 5);
        let keys: Vec<(usize, Word, JonesDiagram)> = words
            .iter()
            .map(|u| {
                (
                    m.element_of(u).unwrap().index(),
                    sys.normalize(u).unwrap(),
                    diagram_of_word(u, n).unwrap(),
                )
            })
            .collect();
        for a in 0..keys.len() {
            for b in a + 1..keys.len() {
                pairs += 1;
                let by_table = keys[a].0 == keys[b].0;
                let by_rules = keys[a].1 == keys[b].1;
                let by_diagram = keys[a].2 == keys[b].2;
                if by_table != by_diagram || by_rules != by_diagram {
                    bad += 1;
                }
            }
        }
    }
    ok &= bad == 0;
    (ok, format!("n=2..5: {pairs} word pairs of length <= 5, {bad} discrepancies; elements map to distinct diagrams"))
}

fn identities() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=5 {
        let r = verify_identities(&origami(n)).unwrap();
        ok &= r.passed() && !r.is_vacuous();
        let counts: Vec<String> = ["a", "b", "c", "i", "ii"]
            .iter()
            .map(|p| {
                let c = r.get_metric(&format!("instances_{p}")).unwrap_or(0);
                // (a)-(c) need two adjacent indices, (i) two at distance >= 2
                let possible = match *p {
                    "i" => n >= 4,
                    "ii" => true,
                    _ => n >= 3,
                };
                if c == 0 && possible {
                    ok = false;
                }
                format!("{p}:{c}")
            })
            .collect();
        parts.push(format!(
            "n={n} [{}] failures={}",
            counts.join(" "),
            r.failures.len()
        ));
    }
    (ok, parts.join("; "))
}

fn greens_structure() -> (bool, String) {
    let mut ok = true;
    let j3 = jones(3);
    let g = compute_greens(&j3);
    let boxm = g.egg_box(1).unwrap();
    let cell = |r: usize, c: usize| -> Vec<String> {
        boxm[r][c].iter().map(|&e| j3.rep(e).to_string()).collect()
    };
    let expected = [["h1", "h1 h2"], ["h2 h1", "h2"]];
    ok &= g.class_count(Relation::D) == 2 && g.classes(Relation::D)[0].len() == 1;
    ok &= boxm.len() == 2 && boxm.iter().all(|row| row.len() == 2);
    if ok {
        for (r, row) in expected.iter().enumerate() {
            for (c, &want) in row.iter().enumerate() {
                ok &= cell(r, c) == vec![want.to_string()];
            }
        }
    }
    let mut details = vec![format!("J_3 egg box ok={ok}")];
    for n in 2..=5 {
        let m = origami(n);
        let gm = compute_greens(&m);
        let ap = is_aperiodic(&m);
        let gj = compute_greens(&jones(n));
        let here = gm.is_h_trivial() && ap.aperiodic && gm.d_equals_j() && gj.d_equals_j();
        ok &= here;
        let mut line = format!(
            "O_{n}: H-trivial={} aperiodic={} D=J={}",
            gm.is_h_trivial(),
            ap.aperiodic,
            gm.d_equals_j()
        );
        if n <= 4 {
            let r = check_regular_r(&m, true).unwrap();
            ok &= r.passed();
            line.push_str(&format!(
                " w w^R w=w ({} checks, {} failures)",
                r.instances_checked,
                r.failures.len()
            ));
        }
        details.push(line);
    }
    (ok, details.join("; "))
}

/// Cover relations of the D-class diagram of `O_5`, each class named by its
/// shortlex-least representative.
const O5_COVERS: [(&str, &str); 12] = [
    ("1", "a1"),
    ("1", "b1"),
    ("a1", "a1 a3"),
    ("a1", "a1 b1"),
    ("b1", "a1 b1"),
    ("b1", "b1 b3"),
    ("a1 a3", "a1 a3 b1"),
    ("a1 b1", "a1 a3 b1"),
    ("a1 b1", "a1 b1 b3"),
    ("b1 b3", "a1 b1 b3"),
    ("a1 a3 b1", "a1 a3 b1 b3"),
    ("a1 b1 b3", "a1 a3 b1 b3"),
];

fn covers_by_label(m: &MonoidTable) -> (usize, BTreeSet<(String, String)>) {
    let g = compute_greens(m);
    let label: Vec<String> = g
        .classes(Relation::D)
        .iter()
        .map(|c| m.rep(c[0]).to_string())
        .collect();
    let covers = g
        .d_order()
        .iter()
        .map(|&(u, l)| (label[u as usize].clone(), label[l as usize].clone()))
        .collect();
    (label.len(), covers)
}

fn main_theorem() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for n in 3..=6 {
        let m = origami(n);
        let j = jones(n);
        let r = check_theorem_main(&m, &compute_greens(&m), &j, &compute_greens(&j)).unwrap();
        let classes = r.get_metric("d_classes").unwrap_or(0);
        let want = ((n / 2 + 1) * (n / 2 + 1)) as u64;
        ok &= r.passed() && classes == want;
        details.push(format!(
            "O_{n}: {classes} D-classes (bijection ok={})",
            r.passed()
        ));
    }
    let want: BTreeSet<(String, String)> = O5_COVERS
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let (nodes5, covers5) = covers_by_label(&origami(5));
    let o5 = nodes5 == 9 && covers5 == want;
    ok &= o5;
    details.push(format!(
        "O_5 diagram: {nodes5} nodes, {} covers, matches the expected covers={o5}",
        covers5.len()
    ));
    let (nodes6, covers6) = covers_by_label(&origami(6));
    let o6 = nodes6 == 9 && covers6 == want;
    details.push(format!(
        "O_6 diagram: {nodes6} nodes, {} covers, 9-node diamond={o6}",
        covers6.len()
    ));
    Outcome {
        ok: ok && o6,
        hard_ok: ok,
        detail: format!(
            "{}; not attainable: 16 classes at n=6 cannot form the 9-node diagram",
            details.join("; ")
        ),
    }
}

fn conjecture() -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for n in 3..=6 {
        let m = origami(n);
        let r = check_conjecture(&m, ConjectureRules::default()).unwrap();
        let cands = r.get_metric("candidates").unwrap_or(0);
        let shared = r
            .get_metric("elements_with_several_candidates")
            .unwrap_or(0);
        let covered = r.get_metric("elements_covered").unwrap_or(0);
        if n <= 4 {
            ok &= r.passed() && cands == m.size() as u64;
        }
        details.push(format!(
            "n={n}: {cands} candidates vs {} elements, {covered} covered, {shared} written twice",
            m.size()
        ));
    }
    (ok, details.join("; "))
}

fn strip_timing(s: &str) -> String {
    s.lines()
        .filter(|l| !l.trim_start().starts_with("\"timing_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_origami");
    let runs: &[&[&str]] = &[
        &["enumerate", "-n", "4"],
        &[
            "enumerate",
            "--monoid",
            "jones",
            "-n",
            "6",
            "--engine",
            "both",
        ],
        &["greens", "-n", "4"],
        &["greens", "-n", "4", "--format", "text"],
        &["verify", "-n", "4"],
        &["verify", "--monoid", "jones", "-n", "5"],
        &["normal-forms", "-n", "4"],
        &["normal-forms", "-n", "4", "--format", "json"],
        &["export", "-n", "4", "--format", "json"],
        &["export", "-n", "5", "--format", "dot"],
        &["export", "-n", "4", "--format", "csv"],
        &["export", "-n", "4", "--format", "text", "--engine", "kb"],
    ];
    let mut ok = true;
    let mut differing = Vec::new();
    for args in runs {
        let out: Vec<(bool, String)> = (0..2)
            .map(|_| {
                let o = Command::new(bin)
                    .args(*args)
                    .env_remove("ORIGAMI_CACHE_DIR")
                    .output()
                    .unwrap();
                (
                    o.status.success(),
                    strip_timing(&String::from_utf8_lossy(&o.stdout)),
                )
            })
            .collect();
        if !(out[0].0 && out[1].0 && out[0].1 == out[1].1 && !out[0].1.is_empty()) {
            ok = false;
            differing.push(args.join(" "));
        }
    }
    (
        ok,
        format!(
            "{} commands run twice, differing: [{}]",
            runs.len(),
            differing.join("; ")
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Jones sizes, both engines", || jones_sizes().into()),
        ("origami sizes", || origami_sizes().into()),
        ("O_2 elements", || o2_elements().into()),
        ("derivable rules", || redundancy().into()),
        ("diagram oracle", || oracle_equivalence().into()),
        ("identities", || identities().into()),
        ("Green's structure", || greens_structure().into()),
        ("D-class theorem", main_theorem),
        ("candidate forms", || conjecture().into()),
        ("determinism", || determinism().into()),
    ];
    let mut failed = false;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let status = if out.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} [{name}] {} ({:.1}s)",
            k + 1,
            out.detail,
            t.elapsed().as_secs_f64()
        );
        failed |= !out.hard_ok;
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
