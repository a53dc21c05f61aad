//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! Exits non-zero when any criterion fails, except failures listed in
//! `KNOWN_MISPRINTS`, which stay red in the output.

use std::collections::{BTreeMap, VecDeque};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dfaorev::complexity::{formula_f, lemma_tau, tau_ulm_breakdown, verify_lemma_tau};
use dfaorev::monoid::{close, full_tm_generators, tau_orbit_size, u_lm_generators, v_n_generators};
use dfaorev::search::{
    brute_force, conjugacy_class_count, conjugacy_class_reps, surjections, v1n_conjecture_scan,
    SearchConfig, SearchResult,
};
use dfaorev::{Dfao, OutputMap, Transformation};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Printed lower-bound cells `(k, n, value)`.
const PRINTED_BOUNDS: [(usize, usize, u64); 18] = [
    (2, 5, 31),
    (2, 7, 127),
    (2, 8, 255),
    (2, 9, 511),
    (3, 5, 216),
    (3, 7, 2125),
    (3, 8, 6452),
    (3, 9, 19550),
    (4, 5, 826),
    (4, 7, 15472),
    (4, 8, 63403),
    (4, 9, 258360),
    (5, 7, 71037),
    (5, 8, 368020),
    (5, 9, 1902365),
    (6, 7, 243438),
    (6, 8, 1539561),
    (6, 9, 9657446),
];

/// Printed cells that contradict an independent computation of the same quantity.
const KNOWN_MISPRINTS: [(usize, usize); 1] = [(5, 8)];

type Check = fn(&mut Shared) -> Outcome;

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

fn main() -> ExitCode {
    let criteria: Vec<(&str, Check)> = vec![
        ("table 2 lower bounds", c1_table2),
        ("closure sizes", c2_closures),
        ("brute-force maxima", c3_brute_force),
        ("unreachability gaps", c4_unreachability),
        ("upper bound reached by full monoid", c5_full_monoid),
        ("three complexity methods agree", c6_methods_agree),
        ("orbit of explicit map equals formula", c7_lemma),
        ("F formula equals direct count", c8_f_oracle),
        ("two-output scan over V1_n", c9_v1n_scan),
        ("conjugacy classes of degree 6", c10_classes),
        ("reversal property suites", c11_properties),
    ];
    let mut shared = Shared::default();
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check(&mut shared);
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {tag} {name} ({:.1?}): {}",
            i + 1,
            start.elapsed(),
            result.detail
        );
        if !result.pass && !(i == 0 && shared.misprint_only) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

#[derive(Default)]
struct Shared {
    brute: BTreeMap<(usize, usize), SearchResult>,
    misprint_only: bool,
}

impl Shared {
    fn brute(&mut self, k: usize, n: usize) -> (SearchResult, Duration) {
        let start = Instant::now();
        let result = self
            .brute
            .entry((k, n))
            .or_insert_with(|| brute_force(&SearchConfig::brute(k, n)).expect("within budget"))
            .clone();
        (result, start.elapsed())
    }
}

fn c1_table2(shared: &mut Shared) -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_dfaorev"))
        .args(["table", "2"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let cols: Vec<usize> = lines
        .next()
        .unwrap()
        .split('\t')
        .skip(1)
        .map(|c| c.parse().unwrap())
        .collect();
    let mut cells = BTreeMap::new();
    for line in lines {
        let mut fields = line.split('\t');
        let k: usize = fields.next().unwrap().parse().unwrap();
        for (&n, v) in cols.iter().zip(fields) {
            cells.insert((k, n), v.to_string());
        }
    }
    let mut mismatches = Vec::new();
    for &(k, n, printed) in &PRINTED_BOUNDS {
        let got = cells.get(&(k, n)).cloned().unwrap_or_default();
        if got != printed.to_string() {
            mismatches.push((k, n, printed, got));
        }
    }
    let dashes = cells.values().filter(|v| *v == "-").count();
    let matched = PRINTED_BOUNDS.len() - mismatches.len();
    let mut detail = format!(
        "{matched}/{} printed cells equal, {dashes} absent cells, {elapsed:.1?}",
        PRINTED_BOUNDS.len()
    );
    for (k, n, printed, got) in &mismatches {
        detail += &format!("; (k={k},n={n}) printed {printed}, computed {got}");
        if let Some(orbit) = ulm_orbit(*k, *n) {
            detail += &format!(", orbit of the explicit map on the validated monoid = {orbit}");
        }
    }
    shared.misprint_only = !mismatches.is_empty()
        && mismatches
            .iter()
            .all(|(k, n, ..)| KNOWN_MISPRINTS.contains(&(*k, *n)));
    outcome(
        mismatches.is_empty() && dashes == 7 && elapsed < Duration::from_secs(1),
        detail,
    )
}

/// Largest `|τ U_{l,m}|` over validated splits of `n`, computed by orbit search.
fn ulm_orbit(k: usize, n: usize) -> Option<usize> {
    dfaorev::complexity::coprime_splits(n)
        .into_iter()
        .filter_map(|(l, m)| {
            let (a, b) = u_lm_generators(l, m).ok()?;
            tau_orbit_size(&[a.into_transformation(), b], &lemma_tau(k, l, m).ok()?).ok()
        })
        .max()
}

fn c2_closures(_: &mut Shared) -> Outcome {
    let start = Instant::now();
    let sizes: Vec<usize> = (2..=6)
        .map(|n| {
            let (a, b) = v_n_generators(n).unwrap();
            close(&[a.into_transformation(), b]).unwrap().len()
        })
        .collect();
    let (a, b) = u_lm_generators(2, 3).unwrap();
    let u23 = close(&[a.into_transformation(), b]).unwrap().len();
    let elapsed = start.elapsed();
    outcome(
        sizes == [4, 24, 176, 2110, 32262] && u23 == 1857 && elapsed < Duration::from_secs(60),
        format!("n=2..6 -> {sizes:?}, U_(2,3) -> {u23}"),
    )
}

fn c3_brute_force(shared: &mut Shared) -> Outcome {
    let cases = [
        (3, 3, 24, 60),
        (3, 4, 67, 60),
        (4, 4, 176, 60),
        (3, 5, 218, 3600),
        (4, 5, 826, 3600),
        (3, 6, 699, 3600),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, n, expected, limit) in cases {
        let (r, took) = shared.brute(k, n);
        let ok = r.max_size == expected && r.verify().is_ok() && took < Duration::from_secs(limit);
        pass &= ok;
        parts.push(format!("({k},{n})={} in {took:.1?}", r.max_size));
    }
    outcome(pass, parts.join(", "))
}

fn c4_unreachability(shared: &mut Shared) -> Outcome {
    let cases = [(3, 4, 14), (3, 5, 25), (3, 6, 30), (4, 5, 198)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, n, gap) in cases {
        let (r, _) = shared.brute(k, n);
        let bound = k.pow(n as u32);
        pass &= r.max_size < bound && bound - r.max_size == gap;
        parts.push(format!("{bound}-{}={}", r.max_size, bound - r.max_size));
    }
    outcome(pass, parts.join(", "))
}

fn c5_full_monoid(_: &mut Shared) -> Outcome {
    let mut pass = true;
    let mut machines = 0;
    for n in 3..=5 {
        let (cycle, swap, merge) = full_tm_generators(n);
        let letters = vec![
            cycle.into_transformation(),
            swap.into_transformation(),
            merge,
        ];
        for k in 3..=n {
            for tau in surjections(n, k).unwrap() {
                let d = Dfao::new(letters.clone(), 0, tau).unwrap();
                let r = d.reversal_complexity_report().unwrap();
                let target = k.pow(n as u32);
                pass &= r.reversal_states == target
                    && r.orbit_size == target
                    && r.closure_image_size == Some(target);
                machines += 1;
            }
        }
    }
    outcome(
        pass,
        format!("{machines} machines, every surjective output map, all three methods = k^n"),
    )
}

fn random_dfao(rng: &mut ChaCha8Rng, max_n: usize, max_sigma: usize, max_k: usize) -> Dfao {
    let n = rng.random_range(1..=max_n);
    let sigma = rng.random_range(1..=max_sigma);
    let k = rng.random_range(1..=max_k);
    let letters = (0..sigma)
        .map(|_| Transformation::new((0..n).map(|_| rng.random_range(0..n)).collect()).unwrap())
        .collect();
    let tau = OutputMap::new((0..n).map(|_| rng.random_range(0..k)).collect(), k).unwrap();
    Dfao::new(letters, rng.random_range(0..n), tau).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, sigma: usize, max_len: usize) -> Vec<usize> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random_range(0..sigma)).collect()
}

fn c6_methods_agree(_: &mut Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    let total = 500;
    let mut agreed = 0;
    for _ in 0..total {
        let d = random_dfao(&mut rng, 5, 3, 3).trim();
        let r = d.reversal_complexity_report().unwrap();
        if r.closure_image_size == Some(r.orbit_size) && r.reversal_states == r.orbit_size {
            agreed += 1;
        }
    }
    outcome(agreed == total, format!("{agreed}/{total} trim machines"))
}

fn c7_lemma(_: &mut Shared) -> Outcome {
    let mut pass = true;
    let mut checked = 0;
    for (l, m) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
        let (a, b) = u_lm_generators(l, m).unwrap();
        let gens = [a.into_transformation(), b];
        for k in 2..l + m {
            let tau = lemma_tau(k, l, m).unwrap();
            let orbit = BigUint::from(tau_orbit_size(&gens, &tau).unwrap());
            let formula = tau_ulm_breakdown(k, l, m).unwrap().size;
            let lemma = verify_lemma_tau(&tau, k, l, m).unwrap();
            pass &= orbit == formula && lemma.all_hold();
            checked += 1;
        }
    }
    outcome(
        pass,
        format!("{checked} triples (k,l,m), orbit = k^n-F+G and all four map properties hold"),
    )
}

fn c8_f_oracle(_: &mut Shared) -> Outcome {
    let mut pass = true;
    let mut checked = 0;
    for k in 2..=5usize {
        for l in 1..=5usize {
            for m in 1..=6 - l {
                let n = l + m;
                let mut count = 0u64;
                for code in 0..k.pow(n as u32) {
                    let mut c = code;
                    let (mut left, mut right) = (0u32, 0u32);
                    for q in 0..n {
                        let v = c % k;
                        c /= k;
                        if q < l {
                            left |= 1 << v;
                        } else {
                            right |= 1 << v;
                        }
                    }
                    count += u64::from(left & right == 0);
                }
                pass &= formula_f(k, l, m).unwrap() == BigUint::from(count);
                checked += 1;
            }
        }
    }
    outcome(pass, format!("{checked} parameter triples"))
}

fn c9_v1n_scan(_: &mut Shared) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 3..=8 {
        let report = v1n_conjecture_scan(n).unwrap();
        let full = report.bound();
        let hits = report.attaining();
        let ok = if n % 2 == 1 {
            hits.len() == report.sizes.len()
        } else {
            let alternating: Vec<usize> = (0..n).map(|q| q % 2).collect();
            let flipped: Vec<usize> = (0..n).map(|q| 1 - q % 2).collect();
            let mut got: Vec<Vec<usize>> = hits.iter().map(|t| t.values().to_vec()).collect();
            got.sort();
            got == [alternating, flipped] && report.shortfall_sizes() == [full - 2]
        };
        pass &= ok;
        parts.push(format!(
            "n={n}: {}/{} reach {full}",
            hits.len(),
            report.sizes.len()
        ));
    }
    outcome(pass, parts.join(", "))
}

fn c10_classes(_: &mut Shared) -> Outcome {
    let reps = conjugacy_class_reps(6).unwrap().len();
    let burnside = conjugacy_class_count(6);
    outcome(
        reps == 130 && burnside == BigUint::from(130u32),
        format!("{reps} canonical representatives, Burnside count {burnside}"),
    )
}

fn access_words(d: &Dfao) -> Vec<Vec<usize>> {
    let mut words: Vec<Option<Vec<usize>>> = vec![None; d.n()];
    words[d.initial()] = Some(Vec::new());
    let mut queue = VecDeque::from([d.initial()]);
    while let Some(q) = queue.pop_front() {
        for (a, t) in d.letters().iter().enumerate() {
            let p = t.apply(q);
            if words[p].is_none() {
                let mut w = words[q].clone().unwrap();
                w.push(a);
                words[p] = Some(w);
                queue.push_back(p);
            }
        }
    }
    words.into_iter().map(|w| w.expect("trim")).collect()
}

fn c11_properties(_: &mut Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1100);
    let cases = 1000;
    let (mut reversal, mut idempotent, mut distinct) = (0, 0, 0);
    for _ in 0..cases {
        let d = random_dfao(&mut rng, 6, 3, 3).trim();
        let r = d.reverse().unwrap();
        let ok = (0..10).all(|_| {
            let w = random_word(&mut rng, d.sigma(), 12);
            let back: Vec<usize> = w.iter().rev().copied().collect();
            r.eval(&w).unwrap() == d.eval(&back).unwrap()
        });
        reversal += usize::from(ok);

        let m = d.minimize();
        idempotent += usize::from(m.minimize() == m);

        // every pair of reversal states is separated by some reversed access word
        let access = access_words(&d);
        let rd = r.to_dfao();
        let paths = access_words(&rd);
        let states = r.states();
        let separated = (0..states.len()).all(|i| {
            (i + 1..states.len()).all(|j| {
                (0..d.n()).any(|q| {
                    let run = |s: usize| {
                        let mut w = paths[s].clone();
                        w.extend(access[q].iter().rev());
                        r.eval(&w).unwrap()
                    };
                    run(i) != run(j)
                })
            })
        });
        distinct += usize::from(separated && rd.minimize().n() == r.len());
    }
    outcome(
        reversal == cases && idempotent == cases && distinct == cases,
        format!(
            "reversal {reversal}/{cases}, minimization idempotent {idempotent}/{cases}, distinguishable {distinct}/{cases}"
        ),
    )
}
