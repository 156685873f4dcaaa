//! Helpers shared by the integration tests. Everything here is written
//! against the expanded graph or raw sequences so it stays independent of
//! the search engine.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hbg::{girth_oracle, OffsetPattern};
use rand::Rng;

/// Divisors of `m`.
pub fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Random valid pattern with `m` in `3..=max_m` and a random divisor `b`.
pub fn random_pattern(rng: &mut impl Rng, max_m: u32) -> OffsetPattern {
    let m = rng.gen_range(3..=max_m);
    let ds = divisors(m);
    let b = ds[rng.gen_range(0..ds.len())];
    random_pattern_for(rng, m, b)
}

/// Random valid pattern for a fixed `(m, b)`, built by pairing positions
/// greedily and restarting on a dead end.
pub fn random_pattern_for(rng: &mut impl Rng, m: u32, b: u32) -> OffsetPattern {
    let n = 2 * m;
    let len = 2 * b as usize;
    'retry: loop {
        let mut off = vec![0u32; len];
        while let Some(j) = off.iter().position(|&d| d == 0) {
            let options: Vec<u32> = (3..=n - 3)
                .step_by(2)
                .filter(|&d| {
                    let t = (j + d as usize) % len;
                    t != j && off[t] == 0
                })
                .collect();
            if options.is_empty() {
                continue 'retry;
            }
            let d = options[rng.gen_range(0..options.len())];
            off[j] = d;
            off[(j + d as usize) % len] = n - d;
        }
        return OffsetPattern::from_residues(m, b, off).expect("generator builds valid patterns");
    }
}

/// Canonical offsets computed by relabeling the expanded graph from every
/// start vertex in both directions and reading off the first period.
pub fn canonical_by_relabeling(p: &OffsetPattern) -> Vec<u32> {
    let n = p.order() as usize;
    let len = p.offsets().len();
    let chord: Vec<usize> = (0..n as u32).map(|v| p.chord(v) as usize).collect();
    let mut best: Vec<u32> = Vec::new();
    let mut seq = vec![0u32; len];
    for s in 0..n {
        for forward in [true, false] {
            // Relabel old vertex `s + i` (or `s - i`) as `i`.
            let relabel = |v: usize| if forward { (v + n - s) % n } else { (s + n - v) % n };
            let mut smaller = best.is_empty();
            let mut worse = false;
            for (i, slot) in seq.iter_mut().enumerate() {
                let old = if forward { (s + i) % n } else { (s + n - i % n) % n };
                let value = ((relabel(chord[old]) + n - i) % n) as u32;
                *slot = value;
                if !smaller {
                    match value.cmp(&best[i]) {
                        std::cmp::Ordering::Less => smaller = true,
                        std::cmp::Ordering::Greater => {
                            worse = true;
                            break;
                        }
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if smaller && !worse {
                best.clone_from(&seq);
            }
        }
    }
    best
}

/// Number of raw odd sequences the odometer would visit.
pub fn odometer_size(m: u32, b: u32) -> u64 {
    let v = u64::from(m - 2);
    v.saturating_pow(2 * b)
}

/// Every valid pattern for `(m, b)` by trying each odd value at each of the
/// `2b` positions independently and keeping what validation accepts.
pub fn all_patterns_odometer(m: u32, b: u32) -> Vec<OffsetPattern> {
    let n = 2 * m;
    let len = 2 * b as usize;
    let values: Vec<i64> = (3..=i64::from(n) - 3).step_by(2).collect();
    let mut idx = vec![0usize; len];
    let mut out = Vec::new();
    loop {
        let seq: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        if let Ok(p) = OffsetPattern::new(m, b, &seq) {
            out.push(p);
        }
        let mut k = 0;
        loop {
            if k == len {
                return out;
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Calls `visit` on every valid pattern for `(m, b)`, filling the lowest
/// empty position and its forced partner, without any girth test. Stops and
/// returns false once more than `limit` patterns have been produced.
pub fn for_each_pattern_matching(m: u32, b: u32, limit: u64, mut visit: impl FnMut(&OffsetPattern)) -> bool {
    fn rec(m: u32, b: u32, off: &mut Vec<u32>, left: &mut u64, visit: &mut dyn FnMut(&OffsetPattern)) -> bool {
        let n = 2 * m;
        let len = off.len();
        let Some(j) = off.iter().position(|&d| d == 0) else {
            if *left == 0 {
                return false;
            }
            *left -= 1;
            visit(&OffsetPattern::from_residues(m, b, off.clone()).expect("matching is valid"));
            return true;
        };
        for d in (3..=n - 3).step_by(2) {
            let t = (j + d as usize) % len;
            if t == j || off[t] != 0 {
                continue;
            }
            off[j] = d;
            off[t] = n - d;
            let ok = rec(m, b, off, left, visit);
            off[j] = 0;
            off[t] = 0;
            if !ok {
                return false;
            }
        }
        true
    }
    let mut left = limit;
    rec(m, b, &mut vec![0; 2 * b as usize], &mut left, &mut visit)
}

/// Number of valid patterns for `(m, b)`, or `None` if above `limit`.
pub fn count_patterns(m: u32, b: u32, limit: u64) -> Option<u64> {
    fn rec(n: u32, off: &mut [u32], count: &mut u64, limit: u64) -> bool {
        let len = off.len();
        let Some(j) = off.iter().position(|&d| d == 0) else {
            *count += 1;
            return *count <= limit;
        };
        for d in (3..=n - 3).step_by(2) {
            let t = (j + d as usize) % len;
            if t == j || off[t] != 0 {
                continue;
            }
            off[j] = d;
            off[t] = n - d;
            let ok = rec(n, off, count, limit);
            off[j] = 0;
            off[t] = 0;
            if !ok {
                return false;
            }
        }
        true
    }
    let mut count = 0;
    rec(2 * m, &mut vec![0; 2 * b as usize], &mut count, limit).then_some(count)
}


/// Canonical offset sequences of all patterns with girth at least `g` for
/// each girth in `girths`, found without the search engine. `None` if the
/// pattern space is larger than `limit`.
pub fn brute_force_witnesses(girths: &[u32], m: u32, b: u32, limit: u64) -> Option<Vec<BTreeSet<Vec<u32>>>> {
    let mut sets = vec![BTreeSet::new(); girths.len()];
    let cap = girths.iter().copied().max().unwrap_or(4).max(4) - 1;
    let add = |p: &OffsetPattern| {
        // One oracle run decides every girth threshold up to `cap + 1`.
        let girth = match girth_oracle(&p.expand(), cap) {
            hbg::GirthResult::Exact(g) => g,
            hbg::GirthResult::ExceedsCap(_) => u32::MAX,
        };
        let mut canonical = None;
        for (set, &g) in sets.iter_mut().zip(girths) {
            if girth >= g {
                set.insert(canonical.get_or_insert_with(|| canonical_by_relabeling(p)).clone());
            }
        }
    };
    if odometer_size(m, b) <= ODOMETER_LIMIT {
        all_patterns_odometer(m, b).iter().for_each(add);
        Some(sets)
    } else if count_patterns(m, b, limit).is_some() {
        for_each_pattern_matching(m, b, limit, add);
        Some(sets)
    } else {
        None
    }
}

pub const ODOMETER_LIMIT: u64 = 200_000;

/// Canonical witness sets from the engine and from brute force for every
/// `(g, b, order)` with `order <= max_order` whose pattern space has at most
/// `limit` members. Returns the mismatches and the `(order, b)` instances
/// too large to enumerate.
pub fn compare_with_brute_force(max_order: u32, girths: &[u32], limit: u64) -> (Vec<String>, Vec<(u32, u32)>) {
    use hbg::{enumerate, SearchMode, SearchSpec};
    let mut mismatches = Vec::new();
    let mut skipped = Vec::new();
    for n in (6..=max_order).step_by(2) {
        let m = n / 2;
        for b in divisors(m) {
            let Some(brute) = brute_force_witnesses(girths, m, b, limit) else {
                skipped.push((n, b));
                continue;
            };
            for (&g, brute) in girths.iter().zip(&brute) {
                let spec = SearchSpec::new(g, b, vec![n], SearchMode::AllWitnesses).unwrap();
                let engine: BTreeSet<Vec<u32>> = enumerate(&spec, n)
                    .unwrap()
                    .witnesses()
                    .iter()
                    .map(|w| w.pattern.offsets().to_vec())
                    .collect();
                if &engine != brute {
                    mismatches.push(format!(
                        "g={g} b={b} n={n}: engine {} vs brute force {}",
                        engine.len(),
                        brute.len()
                    ));
                }
            }
        }
    }
    (mismatches, skipped)
}
