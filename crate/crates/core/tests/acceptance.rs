//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::gcd;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subcount::abelian::{count_elementary, count_rank2};
use subcount::bounds::{bound_for_order, bound_two_prime, candidate_orders};
use subcount::catalog::{
    catalog_entries, completeness_check_small_orders, invariant_violations, nonabelian_class_count, sequence_terms,
    spot_check_entries, verify_abelian_rows, verify_catalog,
};
use subcount::invariants::wielandt;
use subcount::iso::{enumerate_groups_of_order, GROUPS_OF_ORDER};
use subcount::lattice::{count_subgroups, is_coprime_decomposable, is_nilpotent, split_coprime_subgroup};
use subcount::{AbelianShape, Count, Group, GroupExpr, Lattice};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn group(s: &str) -> Group {
    GroupExpr::parse(s).unwrap().eval().unwrap()
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Abelian similarity classes with `k` subgroups, `k = 1..=22`, spaces removed.
const ABELIAN_TABLE: [&[&str]; 22] = [
    &["{e}"],
    &["Z_p"],
    &["Z_{p^2}"],
    &["Z_{p^3}", "Z_{pq}"],
    &["Z_{p^4}", "Z_2xZ_2"],
    &["Z_{p^5}", "Z_{p^2q}", "Z_3xZ_3"],
    &["Z_{p^6}"],
    &["Z_{p^7}", "Z_{p^3q}", "Z_{pqr}", "Z_4xZ_2", "Z_5xZ_5"],
    &["Z_{p^8}", "Z_{p^2q^2}"],
    &["Z_{p^9}", "Z_{p^4q}", "Z_2xZ_2xZ_p", "Z_9xZ_3", "Z_7xZ_7"],
    &["Z_{p^{10}}", "Z_8xZ_2"],
    &["Z_{p^{11}}", "Z_{p^5q}", "Z_{p^3q^2}", "Z_{p^2qr}", "Z_3xZ_3xZ_p"],
    &["Z_{p^{12}}"],
    &["Z_{p^{13}}", "Z_{p^6q}", "Z_{16}xZ_2", "Z_{27}xZ_3", "Z_{25}xZ_5", "Z_{11}xZ_{11}"],
    &["Z_{p^{14}}", "Z_{p^4q^2}", "Z_4xZ_4", "Z_2xZ_2xZ_{p^2}"],
    &[
        "Z_{p^{15}}",
        "Z_{p^7q}",
        "Z_{p^3q^3}",
        "Z_{p^3qr}",
        "Z_{pqrs}",
        "Z_2xZ_2xZ_2",
        "Z_4xZ_2xZ_p",
        "Z_5xZ_5xZ_p",
        "Z_{13}xZ_{13}",
    ],
    &["Z_{p^{16}}", "Z_{32}xZ_2"],
    &["Z_{p^{17}}", "Z_{p^8q}", "Z_{p^5q^2}", "Z_{p^2q^2r}", "Z_{81}xZ_3", "Z_3xZ_3xZ_{p^2}", "Z_{49}xZ_7"],
    &["Z_{p^{18}}"],
    &[
        "Z_{p^{19}}",
        "Z_{p^9q}",
        "Z_{p^4q^3}",
        "Z_{p^4qr}",
        "Z_{64}xZ_2",
        "Z_2xZ_2xZ_{p^3}",
        "Z_2xZ_2xZ_{pq}",
        "Z_9xZ_3xZ_p",
        "Z_{125}xZ_5",
        "Z_7xZ_7xZ_p",
        "Z_{17}xZ_{17}",
    ],
    &["Z_{p^{20}}", "Z_{p^6q^2}"],
    &["Z_{p^{21}}", "Z_{p^{10}q}", "Z_8xZ_4", "Z_8xZ_2xZ_p", "Z_{243}xZ_3", "Z_{19}xZ_{19}"],
];

const ABELIAN_COUNTS: [usize; 22] = [1, 1, 1, 2, 2, 3, 1, 5, 2, 5, 2, 5, 1, 6, 4, 9, 2, 7, 1, 11, 2, 6];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = verify_abelian_rows(22).unwrap();
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    for (row, expected) in rows.iter().zip(ABELIAN_TABLE) {
        let got: BTreeSet<String> = row.classes.iter().map(|c| normalize(&c.to_string())).collect();
        let want: BTreeSet<String> = expected.iter().map(|s| s.to_string()).collect();
        if got != want {
            problems.push(format!("k={}: got {got:?}, want {want:?}", row.k));
        }
        if row.classes.len() != ABELIAN_COUNTS[row.k as usize - 1] || !row.passed() {
            problems.push(format!("k={}: {row}", row.k));
        }
    }
    if elapsed >= Duration::from_secs(60) {
        problems.push(format!("took {elapsed:?}"));
    }
    let brute: usize = rows.iter().map(|r| r.brute_forced).sum();
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("22 rows match, {brute} classes also brute-forced, {elapsed:.2?}")
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let entries = catalog_entries();
    let reports = verify_catalog(&entries).unwrap();
    let elapsed = start.elapsed();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    let per_k = [(6, 2), (8, 2), (10, 7), (11, 2), (12, 6), (14, 11), (15, 4), (16, 13), (17, 1), (18, 15), (19, 4)];
    let mut problems = failed;
    for k in 1..=19 {
        let want = per_k.iter().find(|&&(kk, _)| kk == k).map_or(0, |&(_, c)| c);
        if nonabelian_class_count(k) != want {
            problems.push(format!("k={k}: {} classes, want {want}", nonabelian_class_count(k)));
        }
    }
    if elapsed >= Duration::from_secs(600) {
        problems.push(format!("took {elapsed:?}"));
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} entries verified, {elapsed:.2?}", reports.len())
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_3() -> Outcome {
    let want = vec![1, 1, 1, 2, 2, 5, 1, 7, 2, 12, 4, 11, 1, 17, 8, 22, 3, 22, 5];
    match sequence_terms(19) {
        Ok(terms) => {
            let pass = terms == want && terms[9] == 12;
            outcome(pass, format!("{terms:?}"))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for b in 0u32.. {
            if p.pow(b) > 1024 {
                break;
            }
            for a in 0..=b {
                if p.pow(a + b) > 1024 {
                    break;
                }
                let parts: Vec<u32> = [b, a].into_iter().filter(|&e| e > 0).collect();
                let shape = if parts.is_empty() { AbelianShape::new([]) } else { AbelianShape::new([(p, parts)]) };
                let g = shape.unwrap().build_group().unwrap();
                let formula: Count = count_rank2(p, a, b).unwrap();
                let brute = count_subgroups(&g).unwrap();
                cases += 1;
                if formula != brute {
                    problems.push(format!("rank2({p},{a},{b}) = {formula}, brute {brute}"));
                }
            }
        }
    }
    for (p, n) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let g = AbelianShape::new([(p, vec![1; n as usize])]).unwrap().build_group().unwrap();
        let formula: Count = count_elementary(p, n).unwrap();
        let brute = count_subgroups(&g).unwrap();
        cases += 1;
        if formula != brute {
            problems.push(format!("elementary({p},{n}) = {formula}, brute {brute}"));
        }
    }
    outcome(problems.is_empty(), if problems.is_empty() { format!("{cases} cases exact") } else { problems.join("; ") })
}

fn criterion_5() -> Outcome {
    let pool: Vec<Group> = [
        "Z(1)",
        "Z(2)",
        "Z(3)",
        "Z(4)",
        "Z(5)",
        "Z(7)",
        "Z(8)",
        "Z(9)",
        "Z(11)",
        "Z(13)",
        "Z(2) x Z(2)",
        "Z(3) x Z(3)",
        "Z(5) x Z(5)",
        "S(3)",
        "D(8)",
        "Q(8)",
        "D(10)",
        "A(4)",
        "Dic(12)",
        "Meta(7,3,2,0)",
        "D(14)",
        "Q(16)",
        "M(2,4)",
        "Heis(3)",
        "M(3,3)",
        "Meta(5,4,2,0)",
        "Z(4) x Z(2)",
        "D(22)",
        "Meta(11,5,3,0)",
        "Z(25)",
    ]
    .iter()
    .map(|s| group(s))
    .collect();
    let mut pairs = Vec::new();
    for (i, g) in pool.iter().enumerate() {
        for h in &pool[i + 1..] {
            if gcd(g.order(), h.order()) == 1 && g.order() * h.order() <= 512 {
                pairs.push((g, h));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let sample: Vec<_> = pairs.choose_multiple(&mut rng, 50).collect();
    if sample.len() < 50 {
        return outcome(false, format!("only {} coprime pairs available", pairs.len()));
    }
    let mut problems = Vec::new();
    let mut subgroups = 0;
    for (g, h) in sample {
        let gh = g.direct_product(h).unwrap();
        let lattice = Lattice::new(&gh).unwrap();
        let (cg, ch) = (count_subgroups(g).unwrap(), count_subgroups(h).unwrap());
        if lattice.len() as Count != cg * ch {
            problems.push(format!("{} x {}: {} != {cg}*{ch}", g.label(), h.label(), lattice.len()));
        }
        let lat_g = Lattice::new(g).unwrap();
        let lat_h = Lattice::new(h).unwrap();
        for k in lattice.subgroups() {
            subgroups += 1;
            match split_coprime_subgroup(g, h, k) {
                Ok((kg, kh)) if lat_g.contains(&kg) && lat_h.contains(&kh) && kg.len() * kh.len() == k.len() => {}
                other => problems.push(format!("{} x {}: split gave {other:?}", g.label(), h.label())),
            }
        }
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("50 pairs, {subgroups} subgroups split and recombined")
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_6() -> Outcome {
    let mut problems = Vec::new();
    let mut pgroups = 0;
    let entries: Vec<_> = catalog_entries().into_iter().chain(spot_check_entries()).collect();
    for e in &entries {
        let g = e.recipe.build().unwrap();
        if subcount::arith::prime_power_base(g.order() as u64).is_some() {
            pgroups += 1;
            let v = wielandt(&Lattice::new(&g).unwrap().summary(), g.order());
            if !v.is_empty() {
                problems.push(format!("{}: {v:?}", e.name));
            }
        }
        for v in invariant_violations(e).unwrap() {
            problems.push(format!("{}: {}: {}", e.name, v.check.name(), v.detail));
        }
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} groups, {pgroups} p-groups, zero violations", entries.len())
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_7() -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for e in catalog_entries().into_iter().chain(spot_check_entries()) {
        if !e.free_factors.is_empty() {
            continue;
        }
        let g = e.recipe.build().unwrap();
        if is_nilpotent(&g) || is_coprime_decomposable(&g).unwrap() {
            continue;
        }
        let report = bound_for_order(&g.factored_order()).unwrap();
        let observed = count_subgroups(&g).unwrap();
        checked += 1;
        if report.bound > observed {
            problems.push(format!("{}: bound {} ({}) > {observed}", e.name, report.bound, report.theorem));
        }
    }
    let s3 = count_subgroups(&group("S(3)")).unwrap();
    let sharp = bound_two_prime(2, 3, 1, 1).unwrap();
    if sharp != 6 || s3 != 6 {
        problems.push(format!("S3: bound {sharp}, count {s3}"));
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{checked} non-nilpotent indecomposable groups respect their bounds; S3 attains 6")
        } else {
            problems.join("; ")
        },
    )
}

/// The candidate order families for `K = 19`, as `pattern with constraint`.
const CANDIDATE_TABLE: [&str; 23] = [
    "p^7 q with q = 3",
    "p^6 q with q <= 5",
    "p^5 q with q <= 7",
    "p^4 q with q <= 7",
    "p^3 q with q <= 11",
    "p^2 q with q <= 13",
    "p q with q <= 13",
    "p q^4 with q = 3",
    "p q^3 with q = 3",
    "p q^2 with q <= 7",
    "p^2 q^4 with q = 3",
    "p^2 q^3 with q <= 5",
    "p^3 q^2 with p = 2 and q <= 7",
    "p^2 q^2 with p <= 3 and q <= 7",
    "p^3 q^3 with q = 3",
    "p q r with r <= 7",
    "p^2 q r with r = 5",
    "p q^2 r with r = 5",
    "p q r^2 with r = 5",
    "2^i with 3 <= i <= 6",
    "3^i with 3 <= i <= 5",
    "5^i with i = 3",
    "7^i with i = 3",
];

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let reports = candidate_orders(19).unwrap();
    let elapsed = start.elapsed();
    let got: BTreeSet<String> =
        reports.iter().map(|r| format!("{} with {}", r.shape.pattern(), r.shape.constraint())).collect();
    let want: BTreeSet<String> = CANDIDATE_TABLE.iter().map(|s| s.to_string()).collect();
    let extra: Vec<String> = got
        .difference(&want)
        .map(|s| {
            let r = reports.iter().find(|r| format!("{} with {}", r.shape.pattern(), r.shape.constraint()) == *s);
            format!("{s} (bound {})", r.map_or(0, |r| r.bound))
        })
        .collect();
    let missing: Vec<&String> = want.difference(&got).collect();
    let pass = extra.is_empty() && missing.is_empty() && elapsed < Duration::from_secs(5);
    outcome(
        pass,
        if pass {
            format!("{} families match, {elapsed:.2?}", got.len())
        } else {
            format!("extra {extra:?}, missing {missing:?}, {elapsed:.2?}")
        },
    )
}

fn criterion_9() -> Outcome {
    let mut problems = Vec::new();
    for n in 1..=12 {
        let found = enumerate_groups_of_order(n).unwrap().len();
        if found != GROUPS_OF_ORDER[n - 1] {
            problems.push(format!("order {n}: {found} groups, want {}", GROUPS_OF_ORDER[n - 1]));
        }
    }
    let report = completeness_check_small_orders().unwrap();
    for gap in report.gaps() {
        problems.push(format!("gap: {gap}"));
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} groups of order <= 12, zero gaps", report.rows.len())
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_10() -> Outcome {
    let cases = [("A(5)", 59), ("D(8)", 10), ("Z(2) x Q(8)", 19), ("Dic(36)", 19), ("Meta(9,4,8,0)", 19)];
    let results: Vec<String> = cases
        .iter()
        .map(|&(s, want)| {
            let got = count_subgroups(&group(s)).unwrap();
            format!("{s} = {got}{}", if got == want { "" } else { " (MISMATCH)" })
        })
        .collect();
    let pass = results.iter().all(|r| !r.contains("MISMATCH"));
    outcome(pass, results.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("abelian classes k <= 22", criterion_1),
        ("non-abelian catalog k <= 19", criterion_2),
        ("sequence terms", criterion_3),
        ("closed-form oracles", criterion_4),
        ("coprime multiplicativity", criterion_5),
        ("invariant suites", criterion_6),
        ("bound soundness", criterion_7),
        ("candidate orders K = 19", criterion_8),
        ("completeness at order <= 12", criterion_9),
        ("spot checks", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}: {name}: {}", i + 1, o.detail);
        failures += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
