//! End-to-end acceptance checks. Each test prints one pass/fail line so the
//! suite doubles as a checklist (`cargo test --test acceptance -- --nocapture`).

use std::path::PathBuf;
use std::time::Duration;

use tourney_core::artifacts::{load_artifact, verify_artifact, ArtifactName, DbFormat};
use tourney_core::catalog::{
    admissible_cases, build_catalog, extend_catalog, tt_and_pattern_free_search, PartCatalogs,
};
use tourney_core::encode::{encode, encode_cycle, encode_direct, self_subsume};
use tourney_core::solver::{solve, solve_and_decode};
use tourney_core::tournament::{
    avg_cycles_per_edge, binomial, h_tournament, max_3cycles_bound, min_tt3_bound,
    quadratic_residues, transitive, Tournament,
};
use tourney_core::{CnfFormula, Encoding, PartialTournament, SolverConfig, SolverStatus};

fn solver_config() -> SolverConfig {
    SolverConfig::new(env!("CARGO_BIN_EXE_dimsat"))
}

fn report(criterion: usize, pass: bool, detail: &str) {
    println!("criterion {criterion}: {} - {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {criterion}: {detail}");
}

/// Smallest n in `k..=max_n` whose TT_k-free instance is unsatisfiable.
fn ramsey_via(k: usize, max_n: usize, encoding: Encoding) -> Option<usize> {
    let cfg = solver_config();
    for n in k..=max_n {
        let f = encode(encoding, n, k, None).unwrap();
        let (outcome, witness) = solve_and_decode(&f, k, &cfg).unwrap();
        match outcome.status {
            SolverStatus::Sat => {
                assert!(!witness.unwrap().has_tt_k(k));
            }
            SolverStatus::Unsat => return Some(n),
            SolverStatus::Unknown => panic!("solver gave up at n={n}"),
        }
    }
    None
}

#[test]
fn criterion_1_small_ramsey_numbers() {
    let mut ok = true;
    let mut detail = String::new();
    for encoding in [Encoding::Direct, Encoding::Cycle, Encoding::Reduced] {
        for (k, expected) in [(3, 4), (4, 8), (5, 14)] {
            let got = ramsey_via(k, expected + 1, encoding);
            ok &= got == Some(expected);
            detail.push_str(&format!("R({k})[{encoding:?}]={got:?} "));
        }
    }
    report(1, ok, &format!("{detail}(expected 4/8/14)"));
}

fn clause_set(f: &CnfFormula) -> Vec<Vec<i32>> {
    let mut cs: Vec<Vec<i32>> = f
        .clauses
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable_by_key(|l| (l.unsigned_abs(), *l < 0));
            c
        })
        .collect();
    cs.sort();
    cs
}

#[test]
fn criterion_2_encoding_golden_tests() {
    // vars: 1 = 0->1, 2 = 0->2, 3 = 1->2
    let direct = encode_direct(3, 3, None).unwrap();
    // one clause per transitive ordering of the triple
    let mut want = vec![
        vec![-1, -2, -3],
        vec![-1, -2, 3],
        vec![1, -2, -3],
        vec![1, 2, -3],
        vec![1, 2, 3],
        vec![-1, 2, 3],
    ];
    want.sort();
    let golden_direct = clause_set(&direct) == want;
    let reduced = self_subsume(&direct);
    let mut want_reduced = vec![vec![1, 2], vec![-1, 3], vec![-2, -3]];
    want_reduced.sort();
    let golden_reduced = clause_set(&reduced) == want_reduced;

    let cycle = encode_cycle(4, 4, None).unwrap();
    let x = cycle.varmap.cycle_var(0, 1, 2);
    let (ab, ac, bc) =
        (cycle.varmap.edge_var(0, 1), cycle.varmap.edge_var(0, 2), cycle.varmap.edge_var(1, 2));
    let cs = clause_set(&cycle);
    let has = |c: Vec<i32>| {
        let mut c = c;
        c.sort_unstable_by_key(|l| (l.unsigned_abs(), *l < 0));
        cs.contains(&c)
    };
    let defining = has(vec![-x, ab, ac]) && has(vec![-x, -ab, bc]) && has(vec![-x, -ac, -bc]);
    let subset_clause = cycle
        .clauses
        .iter()
        .any(|c| c.len() == 4 && c.iter().all(|&l| l > 0 && l as usize > 6));
    let golden_cycle = cycle.clauses.len() == 13 && defining && subset_clause;

    let ok = golden_direct && golden_reduced && golden_cycle;
    report(
        2,
        ok,
        &format!(
            "direct(3,3) 6 clauses: {golden_direct}; reduced to 3: {golden_reduced}; \
             cycle(4,4) shapes: {golden_cycle}"
        ),
    );
}

fn all_tournaments(n: usize) -> Vec<Tournament> {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs)
        .map(|mask| {
            let bits: Vec<bool> = (0..pairs).map(|b| mask >> b & 1 == 1).collect();
            Tournament::from_upper_triangle_bits(n, &bits).unwrap()
        })
        .collect()
}

fn satisfied_by(f: &CnfFormula, t: &Tournament) -> bool {
    let value = |lit: i32| -> bool {
        let var = lit.abs();
        let positive = if let Some((i, j)) = f.varmap.pair_of_var(var) {
            t.has_edge(i, j)
        } else {
            // cycle auxiliary: set to the cyclic indicator of its triple,
            // the maximal assignment the defining clauses admit
            let (a, b, c) = f.varmap.triple_of_var(var).unwrap();
            let (ab, bc, ac) = (t.has_edge(a, b), t.has_edge(b, c), t.has_edge(a, c));
            (ab && bc && !ac) || (!ab && !bc && ac)
        };
        positive == (lit > 0)
    };
    f.clauses.iter().all(|clause| clause.iter().any(|&l| value(l)))
}

#[test]
fn criterion_3_oracle_equivalence() {
    let mut checked = 0usize;
    for n in 3..=6usize {
        let tournaments = all_tournaments(n);
        for k in 3..=n {
            let forms = [
                encode(Encoding::Direct, n, k, None).unwrap(),
                encode(Encoding::Cycle, n, k, None).unwrap(),
                encode(Encoding::Reduced, n, k, None).unwrap(),
            ];
            for t in &tournaments {
                let free = !t.has_tt_k(k);
                for f in &forms {
                    assert_eq!(satisfied_by(f, t), free, "n={n} k={k}");
                    checked += 1;
                }
            }
        }
    }
    report(3, true, &format!("{checked} (formula, tournament) pairs agree with brute force"));
}

#[test]
fn criterion_4_certificate_verification() {
    let mut ok = true;
    let mut failing = Vec::new();
    for name in ArtifactName::ALL {
        let rep = verify_artifact(&load_artifact(name));
        if !rep.passed() {
            ok = false;
            failing.push(name.to_string());
        }
    }
    let mut h_ok = true;
    for n in 4..9 {
        let h = h_tournament(n).unwrap();
        h_ok &= h.max_transitive() == n - 1;
    }
    ok &= h_ok;
    report(
        4,
        ok,
        &format!(
            "artifacts failing: {failing:?}; H_n max transitive = n-1 for n in 4..9: {h_ok}"
        ),
    );
}

#[test]
fn criterion_5_catalog_uniqueness() {
    let mut parts = PartCatalogs::new();
    let mut ok = true;
    let mut detail = String::new();
    for (n, k) in [(6, 4), (7, 4), (12, 5), (13, 5)] {
        let cat = build_catalog(n, k, &mut parts).unwrap();
        ok &= cat.len() == 1;
        detail.push_str(&format!("({n},{k})={} ", cat.len()));
        if n == 7 || n == 13 {
            let ext = extend_catalog(&cat);
            ok &= ext.is_empty();
            detail.push_str(&format!("({},{k})={} ", n + 1, ext.len()));
        }
    }
    report(5, ok, &format!("{detail}(expected 1/1/0/1/1/0)"));
}

#[test]
fn criterion_6_pattern_constrained_search() {
    let h5 = h_tournament(5).unwrap();
    let qr11 = Tournament::from_circulant(11, &quadratic_residues(11).unwrap()).unwrap();

    let mut ok = true;
    let mut counts_str = String::new();
    for (label, pattern) in [("H_5", h5.clone()), ("rev(H_5)", h5.reverse())] {
        let cats = tt_and_pattern_free_search(5, &pattern, 12);
        let count = |n: usize| cats.iter().find(|c| c.n == n).map_or(0, |c| c.len());
        ok &= count(9) == 13 && count(10) == 1 && count(11) == 1 && count(12) == 0;
        let survivor = &cats.iter().find(|c| c.n == 11).unwrap().entries[0].tournament;
        ok &= tourney_core::canon::are_isomorphic(survivor, &qr11);
        counts_str.push_str(&format!(
            "{label}: n=9:{} n=10:{} n=11:{} n=12:{}; ",
            count(9),
            count(10),
            count(11),
            count(12)
        ));
    }
    // the previously reported outcome (a unique class at order 9, none
    // beyond) fails independent verification: QR_11 contains neither TT_5
    // nor H_5, so survivors persist through order 11
    println!(
        "criterion 6: note - computed {counts_str}reported elsewhere as unique at 9 with none \
         at >= 10; the order-11 survivor is QR_11 (checked by direct pattern embedding)"
    );
    report(6, ok, &counts_str);
}

#[test]
fn criterion_7_case_tables() {
    let sizes = |n: usize| {
        let mut v: Vec<(usize, usize, usize, usize)> =
            admissible_cases(n, 6).unwrap().iter().map(|c| c.sizes()).collect();
        v.sort();
        v
    };
    let mut want24 = vec![
        (6, 6, 6, 4),
        (6, 5, 6, 5),
        (6, 6, 5, 5),
        (5, 6, 5, 6),
        (6, 4, 6, 6),
        (6, 5, 5, 6),
        (6, 6, 4, 6),
    ];
    want24.sort();
    let mut want23 = vec![
        (5, 5, 5, 6),
        (5, 6, 5, 5),
        (6, 4, 6, 5),
        (6, 5, 5, 5),
        (6, 5, 6, 4),
        (6, 6, 4, 5),
        (6, 6, 5, 4),
        (6, 6, 6, 3),
        (7, 3, 7, 4),
    ];
    want23.sort();
    let ok24 = sizes(24) == want24;
    let ok23 = sizes(23) == want23;
    report(7, ok24 && ok23, &format!("24: 7 tuples match: {ok24}; 23: 9 tuples match: {ok23}"));
}

#[test]
fn criterion_8_bounds_arithmetic() {
    let ok24 = min_tt3_bound(24) == 1452
        && max_3cycles_bound(24).num == 572
        && avg_cycles_per_edge(24) == tourney_core::Ratio::new(572, 92)
        && avg_cycles_per_edge(24).floor() == 6;
    let avg23 = avg_cycles_per_edge(23);
    let ok23 = max_3cycles_bound(23).num == 506 && avg23.is_integer() && avg23.num == 6;
    // TT_3 count forced on a doubly regular 23-vertex tournament
    let dr_tt3 = binomial(23, 3) - 506;
    let ok_dr = dr_tt3 == 1265;
    println!(
        "criterion 8: note - doubly regular 23-vertex TT_3 count computes to {dr_tt3} \
         (= C(23,3) - 506); the count reported elsewhere as 1256 fails that identity"
    );
    report(
        8,
        ok24 && ok23 && ok_dr,
        &format!("bounds(24) 1452/572/572:92/cap6: {ok24}; bounds(23) 506/avg 6: {ok23}; dr tt3=1265: {ok_dr}"),
    );
}

/// Data-dependent pivots. Supply `TOURNEY_EXTERNAL_DATA=<dir>` containing
/// `st25.txt` and `st27.txt` (matrix or catalog format) to enable; skipped
/// (never failing) otherwise. Unknown on timeout is an accepted outcome.
#[test]
fn criterion_9_external_pivots() {
    let Some(dir) = std::env::var_os("TOURNEY_EXTERNAL_DATA").map(PathBuf::from) else {
        println!("criterion 9: SKIP - external data not supplied (set TOURNEY_EXTERNAL_DATA)");
        return;
    };
    let load = |file: &str| -> Tournament {
        let path = dir.join(file);
        let text = std::fs::read_to_string(&path).expect("readable external data");
        if text.starts_with("tournament-catalog") {
            tourney_core::catalog::parse_catalog(&text).unwrap().entries[0].tournament.clone()
        } else {
            tourney_core::artifacts::parse_external_db(&path, DbFormat::MatrixText, false)
                .unwrap()
                .tournaments[0]
                .clone()
        }
    };
    let st25 = PartialTournament::from_tournament(&load("st25.txt"));
    let st27 = PartialTournament::from_tournament(&load("st27.txt"));
    let h6 = PartialTournament::from_tournament(&load_artifact(ArtifactName::H6).tournament);
    let tt4 = PartialTournament::from_tournament(&transitive(4));
    let generic7 = PartialTournament::new(7);

    let timeout = std::env::var("TOURNEY_ACCEPT_TIMEOUT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(3600);
    let cfg = solver_config().with_timeout(Some(Duration::from_secs(timeout)));

    let mut lines = Vec::new();
    let mut ok = true;
    for (label, out_block, want) in [
        ("st25->1->H_6", &h6, SolverStatus::Unsat),
        ("st25->1->7 generic", &generic7, SolverStatus::Sat),
    ] {
        let f = tourney_core::encode::pivot_instance(&st25, out_block, 7, Encoding::Cycle).unwrap();
        let outcome = solve(&f, &cfg).unwrap();
        if outcome.status == SolverStatus::Unknown {
            lines.push(format!("{label}: unknown (timeout, accepted)"));
            continue;
        }
        ok &= outcome.status == want;
        if outcome.status == SolverStatus::Sat && want == SolverStatus::Sat {
            let t = tourney_core::solver::decode_model(&outcome, &f).unwrap();
            ok &= !t.has_tt_k(7);
            lines.push(format!("{label}: sat, witness TT_7-free: {}", !t.has_tt_k(7)));
        } else {
            lines.push(format!("{label}: {:?} (expected {want:?})", outcome.status));
        }
    }
    {
        let f = tourney_core::encode::pivot_instance(&st27, &tt4, 7, Encoding::Cycle).unwrap();
        let outcome = solve(&f, &cfg).unwrap();
        if outcome.status == SolverStatus::Unknown {
            lines.push("st27->1->TT_4: unknown (timeout, accepted)".into());
        } else {
            ok &= outcome.status == SolverStatus::Unsat;
            lines.push(format!("st27->1->TT_4: {:?} (expected Unsat)", outcome.status));
        }
    }
    report(9, ok, &lines.join("; "));
}
