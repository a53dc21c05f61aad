//! Exhaustive and random search for the largest `|τM|` over two-generated
//! monoids `M = ⟨α, β⟩` with `α` a permutation.
//!
//! Brute force enumerates `α` over all permutations, `β` over one
//! representative per conjugacy class and `τ` over all surjections. Replacing
//! both generators by conjugates and `τ` by `τ ∘ γ⁻¹` leaves the orbit size
//! unchanged, which justifies the class reduction.

mod classes;
mod reach;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use classes::{canonical_form, conjugacy_class_count, conjugacy_class_reps, MAX_CLASS_DEGREE};

use crate::codec::OrbitExplorer;
use crate::complexity::{factorial, stirling2};
use crate::error::{Error, Result};
use crate::monoid::{tau_orbit_size, v1n_generators, OutputMap};
use crate::transforms::{all_permutations, Permutation, Transformation};
use reach::ReachEngine;

/// Default cap on the number of `(α, β, τ)` triples brute force will examine.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Largest degree accepted by [`v1n_conjecture_scan`].
pub const MAX_SCAN_DEGREE: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Brute,
    Random { iterations: u64, seed: u64 },
}

impl SearchMode {
    pub fn name(&self) -> &'static str {
        match self {
            SearchMode::Brute => "brute",
            SearchMode::Random { .. } => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub mode: SearchMode,
    pub workers: usize,
    pub budget: u128,
}

impl SearchConfig {
    pub fn brute(k: usize, n: usize) -> Self {
        SearchConfig {
            n,
            k,
            mode: SearchMode::Brute,
            workers: default_workers(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn random(k: usize, n: usize, iterations: u64, seed: u64) -> Self {
        SearchConfig {
            n,
            k,
            mode: SearchMode::Random { iterations, seed },
            workers: 1,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.k > self.n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= k <= n, got k={}, n={}",
                self.k, self.n
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameters("need at least one worker".into()));
        }
        if let SearchMode::Random { iterations: 0, .. } = self.mode {
            return Err(Error::InvalidParameters(
                "random search needs at least one iteration".into(),
            ));
        }
        Ok(())
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

/// Best triple found, with the witness that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub k: usize,
    pub n: usize,
    pub mode: SearchMode,
    pub max_size: usize,
    pub alpha: Permutation,
    pub beta: Transformation,
    pub tau: OutputMap,
    pub examined: u64,
}

impl SearchResult {
    pub fn seed(&self) -> Option<u64> {
        match self.mode {
            SearchMode::Brute => None,
            SearchMode::Random { seed, .. } => Some(seed),
        }
    }

    /// Recomputes `|τ⟨α, β⟩|` from the witness.
    pub fn verify(&self) -> Result<()> {
        let gens = [self.alpha.as_transformation().clone(), self.beta.clone()];
        let size = tau_orbit_size(&gens, &self.tau)?;
        if size != self.max_size {
            return Err(Error::ValidationFailed(format!(
                "witness gives {size}, result claims {}",
                self.max_size
            )));
        }
        Ok(())
    }
}

/// All surjections `{0..n} -> {0..k}` in lexicographic order of value arrays.
pub fn surjections(n: usize, k: usize) -> Result<Vec<OutputMap>> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    fn rec(
        pos: usize,
        values: &mut Vec<usize>,
        used: &mut [usize],
        missing: usize,
        k: usize,
        out: &mut Vec<OutputMap>,
    ) {
        let n = values.len();
        if pos == n {
            out.push(OutputMap::from_values_unchecked(values.clone(), k));
            return;
        }
        for v in 0..k {
            let now_missing = if used[v] == 0 { missing - 1 } else { missing };
            if now_missing > n - pos - 1 {
                continue;
            }
            values[pos] = v;
            used[v] += 1;
            rec(pos + 1, values, used, now_missing, k, out);
            used[v] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(0, &mut vec![0; n], &mut vec![0; k], k, k, &mut out);
    Ok(out)
}

/// `n! · #classes(n) · k!·S(n,k)`, saturating at `u128::MAX`.
pub fn estimate_brute_triples(k: usize, n: usize) -> u128 {
    let total = factorial(n) * conjugacy_class_count(n) * factorial(k) * stirling2(n, k);
    total.to_u128().unwrap_or(u128::MAX)
}

/// Dispatches on `config.mode`.
pub fn search(config: &SearchConfig) -> Result<SearchResult> {
    match config.mode {
        SearchMode::Brute => brute_force(config),
        SearchMode::Random { .. } => random_search(config),
    }
}

/// Per-β best: `(size, α index, τ index)`.
type ShardBest = (usize, usize, usize);

/// Maximum of `|τ⟨α, β⟩|` over every triple. Ties go to the first triple in
/// the order (α index, β representative index, τ index).
pub fn brute_force(config: &SearchConfig) -> Result<SearchResult> {
    if config.mode != SearchMode::Brute {
        return Err(Error::InvalidParameters(
            "brute_force needs brute mode".into(),
        ));
    }
    config.validate()?;
    let (n, k) = (config.n, config.k);
    let estimate = estimate_brute_triples(k, n);
    if estimate > config.budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: config.budget,
        });
    }
    let perms = all_permutations(n);
    let reps = conjugacy_class_reps(n)?;
    let taus = surjections(n, k)?;

    let next = AtomicUsize::new(0);
    let shards: Mutex<Vec<Option<ShardBest>>> = Mutex::new(vec![None; reps.len()]);
    let workers = config.workers.min(reps.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut scanner = PairScanner::new(n, k, &taus);
                loop {
                    let bi = next.fetch_add(1, Ordering::Relaxed);
                    if bi >= reps.len() {
                        break;
                    }
                    let beta = reps[bi].images();
                    let mut best: Option<ShardBest> = None;
                    for (ai, alpha) in perms.iter().enumerate() {
                        let (size, ti) = scanner.best(&[alpha.images(), beta]);
                        if best.is_none_or(|b| size > b.0) {
                            best = Some((size, ai, ti));
                        }
                    }
                    shards.lock().unwrap()[bi] = best;
                }
            });
        }
    });

    let shards = shards.into_inner().unwrap();
    let (size, ai, bi, ti) = shards
        .iter()
        .enumerate()
        .filter_map(|(bi, s)| s.map(|(size, ai, ti)| (size, ai, bi, ti)))
        .max_by(|x, y| x.0.cmp(&y.0).then((y.1, y.2, y.3).cmp(&(x.1, x.2, x.3))))
        .expect("at least one class");
    Ok(SearchResult {
        k,
        n,
        mode: SearchMode::Brute,
        max_size: size,
        alpha: perms[ai].clone(),
        beta: reps[bi].clone(),
        tau: taus[ti].clone(),
        examined: (perms.len() * reps.len() * taus.len()) as u64,
    })
}

/// Orbit sizes of every surjection for one generator pair.
enum PairScanner<'a> {
    Bitset {
        engine: Box<ReachEngine>,
        codes: Vec<u32>,
    },
    Bfs {
        explorer: Box<OrbitExplorer>,
        taus: &'a [OutputMap],
    },
}

impl<'a> PairScanner<'a> {
    fn new(n: usize, k: usize, taus: &'a [OutputMap]) -> Self {
        match ReachEngine::new(n, k) {
            Some(engine) => {
                let codes = taus.iter().map(|t| engine.code_of(t.values())).collect();
                PairScanner::Bitset {
                    engine: Box::new(engine),
                    codes,
                }
            }
            None => PairScanner::Bfs {
                explorer: Box::new(
                    OrbitExplorer::new(n, k).expect("k^n fits in u64 for search degrees"),
                ),
                taus,
            },
        }
    }

    /// Largest orbit and the first τ index attaining it.
    fn best(&mut self, gens: &[&[usize]]) -> (usize, usize) {
        let mut best = (0, 0);
        match self {
            PairScanner::Bitset { engine, codes } => {
                engine.load(gens);
                for (ti, &code) in codes.iter().enumerate() {
                    let size = engine.orbit_size(code);
                    if size > best.0 {
                        best = (size, ti);
                    }
                }
            }
            PairScanner::Bfs { explorer, taus } => {
                for (ti, tau) in taus.iter().enumerate() {
                    let size = explorer.explore(gens, tau.values());
                    if size > best.0 {
                        best = (size, ti);
                    }
                }
            }
        }
        best
    }
}

/// Samples `(α, β, τ)` uniformly: `α` a permutation, `β` any map, `τ` a
/// surjection. Worker `w` draws from stream `w` of a generator seeded with
/// `seed`, so results depend only on `(seed, iterations, workers)`. Ties go
/// to the lowest worker, then the earliest sample.
pub fn random_search(config: &SearchConfig) -> Result<SearchResult> {
    let SearchMode::Random { iterations, seed } = config.mode else {
        return Err(Error::InvalidParameters(
            "random_search needs random mode".into(),
        ));
    };
    config.validate()?;
    let (n, k) = (config.n, config.k);
    if OrbitExplorer::new(n, k).is_none() {
        return Err(Error::InvalidParameters(format!(
            "k^n overflows for k={k}, n={n}"
        )));
    }
    let workers = (config.workers as u64).min(iterations) as usize;
    let results: Vec<Sample> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let share = iterations / workers as u64
                    + u64::from((w as u64) < iterations % workers as u64);
                scope.spawn(move || sample_worker(n, k, seed, w as u64, share))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let best = results
        .into_iter()
        .reduce(|a, b| if b.size > a.size { b } else { a })
        .expect("at least one worker");
    Ok(SearchResult {
        k,
        n,
        mode: config.mode,
        max_size: best.size,
        alpha: Permutation::try_from(Transformation::from_images_unchecked(best.alpha))
            .expect("shuffled"),
        beta: Transformation::from_images_unchecked(best.beta),
        tau: OutputMap::from_values_unchecked(best.tau, k),
        examined: iterations,
    })
}

struct Sample {
    size: usize,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    tau: Vec<usize>,
}

fn sample_worker(n: usize, k: usize, seed: u64, stream: u64, iterations: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut explorer = OrbitExplorer::new(n, k).expect("checked by caller");
    let mut alpha: Vec<usize> = (0..n).collect();
    let mut beta = vec![0; n];
    let mut tau = vec![0; n];
    let mut hit = vec![false; k];
    let mut best = Sample {
        size: 0,
        alpha: Vec::new(),
        beta: Vec::new(),
        tau: Vec::new(),
    };
    for _ in 0..iterations {
        alpha.shuffle(&mut rng);
        beta.iter_mut().for_each(|b| *b = rng.random_range(0..n));
        loop {
            hit.fill(false);
            for t in tau.iter_mut() {
                *t = rng.random_range(0..k);
                hit[*t] = true;
            }
            if hit.iter().all(|&h| h) {
                break;
            }
        }
        let size = explorer.explore(&[&alpha, &beta], &tau);
        if size > best.size {
            best = Sample {
                size,
                alpha: alpha.clone(),
                beta: beta.clone(),
                tau: tau.clone(),
            };
        }
    }
    best
}

/// Whether the brute-force maximum stays below `k^n`.
pub fn check_unreachability(config: &SearchConfig) -> Result<bool> {
    let result = brute_force(config)?;
    let bound = (config.k as u128).pow(config.n as u32);
    Ok((result.max_size as u128) < bound)
}

/// Orbit sizes of every surjective `τ: Q -> {0,1}` under `V^1_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub n: usize,
    pub alpha: Permutation,
    pub beta: Transformation,
    pub sizes: Vec<(OutputMap, usize)>,
}

impl ScanReport {
    /// `2^n`.
    pub fn bound(&self) -> usize {
        1 << self.n
    }

    pub fn attaining(&self) -> Vec<&OutputMap> {
        self.sizes
            .iter()
            .filter(|(_, s)| *s == self.bound())
            .map(|(t, _)| t)
            .collect()
    }

    /// Distinct orbit sizes of the maps that fall short of `2^n`.
    pub fn shortfall_sizes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .sizes
            .iter()
            .map(|&(_, s)| s)
            .filter(|&s| s != self.bound())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Computes `|τV^1_n|` for every surjection onto two outputs, using a
/// generating pair validated against the membership count.
pub fn v1n_conjecture_scan(n: usize) -> Result<ScanReport> {
    if n > MAX_SCAN_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_SCAN_DEGREE,
        });
    }
    let (alpha, beta) = v1n_generators(n)?;
    let gens = [alpha.as_transformation().clone(), beta.clone()];
    let sizes = surjections(n, 2)?
        .into_iter()
        .map(|tau| {
            let size = tau_orbit_size(&gens, &tau)?;
            Ok((tau, size))
        })
        .collect::<Result<_>>()?;
    Ok(ScanReport {
        n,
        alpha,
        beta,
        sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::factorial;
    use crate::transforms::conjugate;
    use num_bigint::BigUint;

    fn om(v: &[usize]) -> OutputMap {
        OutputMap::from_one_based(v, v.iter().copied().max().unwrap()).unwrap()
    }

    #[test]
    fn surjection_counts_and_order() {
        assert_eq!(surjections(5, 3).unwrap().len(), 150);
        assert_eq!(surjections(3, 1).unwrap().len(), 1);
        let bij = surjections(4, 4).unwrap();
        assert_eq!(BigUint::from(bij.len()), factorial(4));
        let s = surjections(3, 2).unwrap();
        let got: Vec<Vec<usize>> = s.iter().map(|t| t.values().to_vec()).collect();
        assert_eq!(
            got,
            [
                [0, 0, 1],
                [0, 1, 0],
                [0, 1, 1],
                [1, 0, 0],
                [1, 0, 1],
                [1, 1, 0]
            ]
        );
        assert!(s.iter().all(|t| t.is_surjective()));
        assert!(surjections(2, 3).is_err());
    }

    #[test]
    fn small_brute_force_entries() {
        for (k, n, expected) in [
            (2, 3, 8),
            (3, 3, 24),
            (3, 4, 67),
            (4, 4, 176),
            (2, 2, 4),
            (1, 3, 1),
        ] {
            let r = brute_force(&SearchConfig::brute(k, n)).unwrap();
            assert_eq!(r.max_size, expected, "k={k} n={n}");
            r.verify().unwrap();
        }
    }

    #[test]
    fn brute_force_is_worker_independent() {
        let one = brute_force(&SearchConfig::brute(3, 4).with_workers(1)).unwrap();
        let many = brute_force(&SearchConfig::brute(3, 4).with_workers(5)).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn brute_force_ties_go_to_first_triple() {
        // α = id never reaches 4; the swap with the first class and first τ does
        let r = brute_force(&SearchConfig::brute(2, 2)).unwrap();
        assert_eq!(r.alpha.images(), &[1, 0]);
        assert_eq!(r.beta, Transformation::new(vec![0, 0]).unwrap());
        assert_eq!(r.tau.values(), &[0, 1]);
        assert_eq!(r.examined, 2 * 3 * 2);
    }

    #[test]
    fn unreduced_search_agrees_at_degree_three() {
        let all: Vec<Transformation> = (0..27)
            .map(|c| Transformation::new(vec![c % 3, c / 3 % 3, c / 9]).unwrap())
            .collect();
        let taus = surjections(3, 3).unwrap();
        let mut best = 0;
        for a in &all {
            for b in &all {
                for tau in &taus {
                    best = best.max(tau_orbit_size(&[a.clone(), b.clone()], tau).unwrap());
                }
            }
        }
        assert_eq!(best, 24);
        assert_eq!(
            brute_force(&SearchConfig::brute(3, 3)).unwrap().max_size,
            best
        );
    }

    #[test]
    fn conjugation_preserves_orbit_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.random_range(2..=5);
            let k = rng.random_range(1..=n.min(3));
            let mut a: Vec<usize> = (0..n).collect();
            a.shuffle(&mut rng);
            let b: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            let tau = OutputMap::new((0..n).map(|_| rng.random_range(0..k)).collect(), k).unwrap();
            let mut g: Vec<usize> = (0..n).collect();
            g.shuffle(&mut rng);
            let g = Permutation::try_from(Transformation::new(g).unwrap()).unwrap();
            let (a, b) = (
                Transformation::new(a).unwrap(),
                Transformation::new(b).unwrap(),
            );
            let gens = [conjugate(&a, &g).unwrap(), conjugate(&b, &g).unwrap()];
            let relabeled = tau.compose(g.inverse().as_transformation()).unwrap();
            assert_eq!(
                tau_orbit_size(&[a, b], &tau).unwrap(),
                tau_orbit_size(&gens, &relabeled).unwrap()
            );
        }
    }

    #[test]
    fn budget_guard_refuses_with_estimate() {
        match brute_force(&SearchConfig::brute(3, 8)) {
            Err(Error::BudgetExceeded { estimate, budget }) => {
                assert_eq!(budget, DEFAULT_BUDGET);
                assert_eq!(estimate, 40320 * 951 * 5796);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
        assert!(brute_force(&SearchConfig::brute(3, 3).with_budget(10)).is_err());
        assert_eq!(estimate_brute_triples(3, 3), 6 * 7 * 6);
    }

    #[test]
    fn random_search_is_reproducible() {
        let cfg = SearchConfig::random(3, 5, 500, 42).with_workers(3);
        let a = random_search(&cfg).unwrap();
        assert_eq!(a, random_search(&cfg).unwrap());
        a.verify().unwrap();
        assert_eq!(a.examined, 500);
        assert!(a.max_size <= 218);
        let one = random_search(&SearchConfig::random(3, 5, 1, 9)).unwrap();
        assert_eq!(
            one,
            random_search(&SearchConfig::random(3, 5, 1, 9)).unwrap()
        );
        assert!(one.tau.is_surjective());
        assert!(random_search(&SearchConfig::random(3, 5, 0, 9)).is_err());
    }

    #[test]
    fn unreachability_small() {
        assert!(check_unreachability(&SearchConfig::brute(3, 4)).unwrap());
        assert!(!check_unreachability(&SearchConfig::brute(2, 3)).unwrap());
    }

    #[test]
    fn v1n_scan_parity_pattern() {
        let r = v1n_conjecture_scan(2).unwrap();
        assert_eq!(r.attaining().len(), 2);
        for n in [3, 5] {
            let r = v1n_conjecture_scan(n).unwrap();
            assert_eq!(r.attaining().len(), r.sizes.len(), "n={n}");
        }
        let r = v1n_conjecture_scan(4).unwrap();
        let hits: Vec<&OutputMap> = r.attaining();
        assert_eq!(hits, [&om(&[1, 2, 1, 2]), &om(&[2, 1, 2, 1])]);
        assert_eq!(r.shortfall_sizes(), [14]);
        assert!(v1n_conjecture_scan(12).is_err());
    }
}
