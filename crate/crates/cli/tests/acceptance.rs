//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use hbg::catalog::{
    lower_bound_order, non_existence_report, parse_certificate, verify_witness, write_certificate, CatalogEntry,
    LowerBoundConfig,
};
use hbg::{girth_fast, girth_oracle};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// Pinned tolerances and sizes.
const C1_MAX_WALL: Duration = Duration::from_secs(1);
const C2_MAX_WALL: Duration = Duration::from_secs(10);
const C3_MAX_WALL: Duration = Duration::from_secs(4 * 3600);
const C3_SHARDS: &str = "8";
const C4_NODE_BUDGET: &str = "400000000";
const C4_SMALL_BUDGET: &str = "100000";
const C6_CASES: usize = 1000;
const C6_MAX_M: u32 = 30;
const C7_MAX_ORDER: u32 = 40;
const C7_PATTERN_LIMIT: u64 = 500_000;
const C8_CASES: usize = 300;
const SEED: u64 = 0x5eed_2024;

type Criterion = (u32, &'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Verdict {
    Verdict {
        passed: false,
        detail: detail.into(),
    }
}

fn hbg(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hbg")).args(args).output().expect("binary runs");
    (out, start.elapsed())
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn read_dir_sorted(dir: &Path) -> BTreeMap<String, String> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect()
}

fn search_into(dir: &Path, args: &[&str]) -> (Output, Duration) {
    let mut a = vec!["search"];
    a.extend_from_slice(args);
    a.extend(["--out", dir.to_str().unwrap()]);
    hbg(&a)
}

/// Minimal order found by search with earlier orders certified empty and a
/// witness whose oracle girth is exactly `g`.
fn cage_run(g: u32, b: u32, max: u32, expected: u32, exhausted: &[u32], limit: Duration) -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let (gs, bs, ms) = (g.to_string(), b.to_string(), max.to_string());
    let (out, wall) = search_into(dir.path(), &["--girth", &gs, "--sym", &bs, "--min", "6", "--max", &ms, "--mode", "first"]);
    if code(&out) != 0 {
        return fail(format!("exit {}", code(&out)));
    }
    let files = read_dir_sorted(dir.path());
    for n in exhausted {
        let Some(text) = files.get(&format!("g{g}-b{b}-n{n}.cert")) else {
            return fail(format!("no certificate for order {n}"));
        };
        if !parse_certificate(text).is_ok_and(|c| c.proves_nonexistence()) {
            return fail(format!("certificate for order {n} does not prove non-existence"));
        }
    }
    let witnesses: Vec<_> = files.iter().filter(|(k, _)| k.ends_with(".hbg")).collect();
    let [(name, text)] = witnesses[..] else {
        return fail(format!("expected one witness, found {}", witnesses.len()));
    };
    let entry = CatalogEntry::parse(text).unwrap();
    let report = verify_witness(&entry);
    if entry.order != expected || !report.passed() || report.measured_girth != Some(g) {
        return fail(format!("{name}: order {} measured girth {:?}", entry.order, report.measured_girth));
    }
    if wall > limit {
        return fail(format!("took {wall:?}, limit {limit:?}"));
    }
    pass(format!("minimal order {expected}, orders {exhausted:?} exhausted, oracle girth {g}, {:.2} s", wall.as_secs_f64()))
}

fn c1() -> Verdict {
    cage_run(6, 1, 20, 14, &[6, 8, 10, 12], C1_MAX_WALL)
}

fn c2() -> Verdict {
    cage_run(8, 3, 30, 30, &[6, 12, 18, 24], C2_MAX_WALL)
}

fn c3() -> Verdict {
    let expected: Vec<u32> = (258..=384).step_by(6).collect();
    let one = tempfile::tempdir().unwrap();
    let many = tempfile::tempdir().unwrap();
    let args = ["--girth", "14", "--sym", "3", "--min", "258", "--max", "384", "--mode", "prove"];
    let (out1, wall1) = search_into(one.path(), &[&args[..], &["--shards", "1"]].concat());
    let (out8, wall8) = search_into(many.path(), &[&args[..], &["--shards", C3_SHARDS]].concat());
    if code(&out1) != 0 || code(&out8) != 0 {
        return fail(format!("exit {} / {}", code(&out1), code(&out8)));
    }
    let files1 = read_dir_sorted(one.path());
    if files1.keys().any(|k| k.ends_with(".hbg")) {
        return fail("a witness was reported");
    }
    let certs: Vec<_> = files1.values().map(|t| parse_certificate(t).unwrap()).collect();
    let report = match non_existence_report(14, 3, &certs) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    if report.orders != expected {
        return fail(format!("orders {report}"));
    }
    if files1 != read_dir_sorted(many.path()) {
        return fail(format!("certificates differ between 1 and {C3_SHARDS} shards"));
    }
    if wall1 > C3_MAX_WALL {
        return fail(format!("took {wall1:?}"));
    }
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    pass(format!(
        "{} certificates, orders {}..{} step 6, identical across 1 and {C3_SHARDS} shards; {:.2} s / {:.2} s \
         (speedup not measurable on {cores} core(s))",
        certs.len(),
        expected[0],
        expected[expected.len() - 1],
        wall1.as_secs_f64(),
        wall8.as_secs_f64()
    ))
}

/// Either a certificate proving non-existence (exit 0) or exit 2 with a
/// resume file and no certificate for the order. Runs with symmetry reduction.
fn spot(b: u32, n: u32, budget: &str) -> Result<String, String> {
    let dir = tempfile::tempdir().unwrap();
    let (bs, ns) = (b.to_string(), n.to_string());
    let (out, wall) = search_into(
        dir.path(),
        &["--girth", "14", "--sym", &bs, "--min", &ns, "--max", &ns, "--mode", "prove", "--reduce", "--node-budget", budget],
    );
    let files = read_dir_sorted(dir.path());
    let cert = files.get(&format!("g14-b{b}-n{n}.cert"));
    let resume = files.get(&format!("g14-b{b}.resume"));
    match code(&out) {
        0 => match cert.map(|t| parse_certificate(t)) {
            Some(Ok(c)) if c.proves_nonexistence() && resume.is_none() => Ok(format!(
                "b={b} n={n} exhausted ({} nodes, {:.1} s)",
                c.total_nodes(),
                wall.as_secs_f64()
            )),
            _ => Err(format!("b={b} n={n}: exit 0 without a valid certificate")),
        },
        2 if cert.is_none() && resume.is_some() => Ok(format!("b={b} n={n} budget exceeded, resumable (exit 2)")),
        c => Err(format!("b={b} n={n}: exit {c}, certificate {}, resume {}", cert.is_some(), resume.is_some())),
    }
}

fn c4() -> Verdict {
    let mut notes = Vec::new();
    for (b, n, budget) in [(7, 266, C4_NODE_BUDGET), (9, 270, C4_NODE_BUDGET), (9, 270, C4_SMALL_BUDGET)] {
        match spot(b, n, budget) {
            Ok(s) => notes.push(format!("{s} [budget {budget}]")),
            Err(e) => return fail(e),
        }
    }
    pass(notes.join("; "))
}

fn c5() -> Verdict {
    let expected = [258, 264, 260, 264, 266, 272, 270, 260, 264, 264, 260, 280, 270, 288];
    let config = LowerBoundConfig::default();
    let got: Vec<u32> = (3..=16).map(|b| lower_bound_order(14, b, &config)).collect();
    if got == expected {
        pass(format!("b=3..16 -> {got:?}"))
    } else {
        fail(format!("got {got:?}"))
    }
}

fn c6() -> Verdict {
    let mut rng = StdRng::seed_from_u64(SEED);
    for i in 0..C6_CASES {
        let p = common::random_pattern(&mut rng, C6_MAX_M);
        let cap = rng.gen_range(3..=20);
        let (fast, oracle) = (girth_fast(&p, cap), girth_oracle(&p.expand(), cap));
        if fast != oracle {
            return fail(format!("case {i}: {p} cap {cap}: fast {fast} oracle {oracle}"));
        }
    }
    pass(format!("{C6_CASES} seeded patterns with 2m <= {}, caps 3..20", 2 * C6_MAX_M))
}

fn c7() -> Verdict {
    let (mismatches, skipped) = common::compare_with_brute_force(C7_MAX_ORDER, &[4, 6, 8], C7_PATTERN_LIMIT);
    if !mismatches.is_empty() {
        return fail(mismatches.join("; "));
    }
    let checked: usize = (6..=C7_MAX_ORDER).step_by(2).map(|n| common::divisors(n / 2).len()).sum::<usize>() - skipped.len();
    if skipped.is_empty() {
        pass(format!("{checked} (order, b) instances x girths 4, 6, 8 equal"))
    } else {
        fail(format!(
            "{checked} (order, b) instances x girths 4, 6, 8 equal; {} instances have more than {C7_PATTERN_LIMIT} \
             labeled patterns and cannot be enumerated unpruned: {skipped:?}",
            skipped.len()
        ))
    }
}

fn c8() -> Verdict {
    let mut rng = StdRng::seed_from_u64(SEED ^ 8);
    for i in 0..C8_CASES {
        let p = common::random_pattern(&mut rng, 30);
        let m = p.half_order();
        let factors = p.derived_symmetry_factors();
        if !factors.contains(&m) {
            return fail(format!("case {i}: {p}: m missing from {factors:?}"));
        }
        for &f in &factors {
            for k in 1..=m / f {
                if m % (k * f) == 0 && !factors.contains(&(k * f)) {
                    return fail(format!("case {i}: {p}: {f} present but {} missing", k * f));
                }
            }
        }
        for d in common::divisors(m).into_iter().filter(|d| !factors.contains(d)) {
            if let Some(e) = common::divisors(d).into_iter().find(|e| factors.contains(e)) {
                return fail(format!("case {i}: {p}: {d} absent but divisor {e} present"));
            }
        }
    }
    pass(format!("{C8_CASES} seeded patterns"))
}

fn c9() -> Verdict {
    let runs: [&[&str]; 2] = [
        &["--girth", "6", "--sym", "1", "--min", "6", "--max", "20", "--mode", "first"],
        &["--girth", "8", "--sym", "3", "--min", "24", "--max", "48", "--mode", "all"],
    ];
    let mut witnesses = 0;
    for args in runs {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let (oa, _) = search_into(a.path(), args);
        let (ob, _) = search_into(b.path(), &[args, &["--shards", "4"]].concat());
        if code(&oa) != 0 || code(&ob) != 0 {
            return fail("search failed");
        }
        let (fa, fb) = (read_dir_sorted(a.path()), read_dir_sorted(b.path()));
        if fa != fb || oa.stdout != ob.stdout {
            return fail(format!("repeated run differs: {args:?}"));
        }
        for (name, text) in &fa {
            let same = if name.ends_with(".hbg") {
                witnesses += 1;
                CatalogEntry::parse(text).map(|e| e.to_text())
            } else {
                parse_certificate(text).map(|c| write_certificate(&c))
            };
            if same.as_deref().ok() != Some(text.as_str()) {
                return fail(format!("{name} does not round-trip"));
            }
        }
    }
    pass(format!("{witnesses} witnesses and all certificates round-trip; repeated runs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "girth 6 cage by search", c1),
        (2, "girth 8, b=3 minimal order", c2),
        (3, "girth 14, b=3 non-existence row", c3),
        (4, "girth 14 spot rows under budget", c4),
        (5, "lower-bound orders for girth 14", c5),
        (6, "fast girth equals oracle", c6),
        (7, "search equals brute force", c7),
        (8, "derived symmetry factor lattice", c8),
        (9, "round trip and determinism", c9),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let v = run();
        let tag = if v.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!v.passed);
        println!("{tag} {id:>2} {name}: {} [{:.1} s]", v.detail, start.elapsed().as_secs_f64());
    }
    println!("SKIP 10 girth 14, b=8 witness at order 384: long-running, not part of the default suite");
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
