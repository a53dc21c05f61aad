//! Transformation monoids materialized by closure, the `U_{l,m}` and `V^d_n`
//! families, and orbits of output maps under right composition.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;

use crate::codec::{CodeSet, OrbitExplorer, Radix};
use crate::error::{Error, Result};
use crate::transforms::{check_degree, parse_list, write_list, Permutation, Transformation};

/// Largest degree a closure can be encoded for (`n^n` must fit in a `u64`).
pub const MAX_CLOSURE_DEGREE: usize = 15;

/// Largest degree for which membership filters are counted over all `n^n` maps.
pub const MAX_FILTER_DEGREE: usize = 8;

/// A function `τ: Q -> Δ` with `Δ = {0..k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutputMap {
    values: Vec<usize>,
    k: usize,
}

impl OutputMap {
    /// Builds an output map from 0-based values.
    pub fn new(values: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v >= k) {
            return Err(Error::OutOfRange {
                value: bad + 1,
                bound: k,
            });
        }
        Ok(OutputMap { values, k })
    }

    /// Builds an output map from 1-based values, as written in list notation.
    pub fn from_one_based(values: &[usize], k: usize) -> Result<Self> {
        let values = values
            .iter()
            .map(|&v| {
                if v == 0 || v > k {
                    Err(Error::OutOfRange { value: v, bound: k })
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OutputMap { values, k })
    }

    /// Parses list notation; `k` defaults to the largest value present.
    pub fn parse(text: &str, k: Option<usize>) -> Result<Self> {
        let raw = parse_list(text)?;
        let k = k.unwrap_or_else(|| raw.iter().copied().max().unwrap_or(1));
        Self::from_one_based(&raw, k)
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>, k: usize) -> Self {
        debug_assert!(values.iter().all(|&v| v < k));
        OutputMap { values, k }
    }

    pub fn degree(&self) -> usize {
        self.values.len()
    }

    /// Size of the output alphabet.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn value(&self, q: usize) -> usize {
        self.values[q]
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v + 1).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.k];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `self ∘ t`.
    pub fn compose(&self, t: &Transformation) -> Result<OutputMap> {
        check_degree(self.degree(), t.degree())?;
        Ok(OutputMap {
            values: t.images().iter().map(|&q| self.values[q]).collect(),
            k: self.k,
        })
    }

    /// The characteristic function of a set of final states (`k = 2`, final ↦ 1).
    pub fn characteristic(n: usize, finals: &[usize]) -> Result<Self> {
        let mut values = vec![0; n];
        for &q in finals {
            if q >= n {
                return Err(Error::OutOfRange {
                    value: q + 1,
                    bound: n,
                });
            }
            values[q] = 1;
        }
        Ok(OutputMap { values, k: 2 })
    }
}

impl fmt::Display for OutputMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.values.iter().map(|&v| v + 1))
    }
}

impl FromStr for OutputMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OutputMap::parse(s, None)
    }
}

fn common_degree<'a>(gens: impl IntoIterator<Item = &'a Transformation>) -> Result<usize> {
    let mut iter = gens.into_iter();
    let first = iter.next().ok_or(Error::EmptyGenerators)?.degree();
    for g in iter {
        check_degree(first, g.degree())?;
    }
    Ok(first)
}

#[derive(Debug, Clone)]
pub struct MonoidClosure {
    degree: usize,
    generators: Vec<Transformation>,
    radix: Radix,
    codes: Vec<u64>,
    members: CodeSet,
}

impl MonoidClosure {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Transformation] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        t.degree() == self.degree && self.members.contains(self.radix.encode(t.images()))
    }

    /// Elements in discovery order (unspecified, but deterministic).
    pub fn iter(&self) -> impl Iterator<Item = Transformation> + '_ {
        self.codes.iter().map(move |&c| {
            let mut images = vec![0; self.degree];
            self.radix.decode_into(c, &mut images);
            Transformation::from_images_unchecked(images)
        })
    }

    /// `{τ ∘ m : m ∈ M}`.
    pub fn tau_image(&self, tau: &OutputMap) -> Result<HashSet<OutputMap>> {
        check_degree(self.degree, tau.degree())?;
        Ok(self
            .iter()
            .map(|m| tau.compose(&m).expect("same degree"))
            .collect())
    }
}

/// Closure of `generators` under composition, always containing the identity.
pub fn close(generators: &[Transformation]) -> Result<MonoidClosure> {
    close_with_limit(generators, None)
}

/// Like [`close`], but gives up with [`Error::ClosureLimit`] past `limit` elements.
pub fn close_with_limit(
    generators: &[Transformation],
    limit: Option<usize>,
) -> Result<MonoidClosure> {
    let n = common_degree(generators)?;
    if n > MAX_CLOSURE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_CLOSURE_DEGREE,
        });
    }
    let radix = Radix::new(n, n).expect("n^n fits for n <= 15");
    let mut members = CodeSet::for_space(radix.space());
    let mut codes = Vec::new();
    let identity: Vec<usize> = (0..n).collect();
    let id_code = radix.encode(&identity);
    members.insert(id_code);
    codes.push(id_code);

    let gens: Vec<&[usize]> = generators.iter().map(|g| g.images()).collect();
    let mut current = vec![0; n];
    let mut next = vec![0; n];
    let mut head = 0;
    while head < codes.len() {
        radix.decode_into(codes[head], &mut current);
        head += 1;
        for g in &gens {
            // g ∘ current
            for (slot, &q) in next.iter_mut().zip(&current) {
                *slot = g[q];
            }
            let code = radix.encode(&next);
            if members.insert(code) {
                codes.push(code);
                if limit.is_some_and(|l| codes.len() > l) {
                    return Err(Error::ClosureLimit(limit.unwrap()));
                }
            }
        }
    }
    Ok(MonoidClosure {
        degree: n,
        generators: generators.to_vec(),
        radix,
        codes,
        members,
    })
}

/// The orbit `τM` of `tau` under the monoid generated by `generators`,
/// computed without materializing the monoid.
pub fn tau_orbit(generators: &[Transformation], tau: &OutputMap) -> Result<HashSet<OutputMap>> {
    let n = common_degree(generators)?;
    check_degree(n, tau.degree())?;
    let mut seen = HashSet::new();
    let mut queue = vec![tau.clone()];
    seen.insert(tau.clone());
    while let Some(g) = queue.pop() {
        for a in generators {
            let next = g.compose(a).expect("same degree");
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push(next);
            }
        }
    }
    Ok(seen)
}

/// `|τM|`, using integer-encoded states when `k^n` fits in a `u64`.
pub fn tau_orbit_size(generators: &[Transformation], tau: &OutputMap) -> Result<usize> {
    let n = common_degree(generators)?;
    check_degree(n, tau.degree())?;
    match OrbitExplorer::new(n, tau.k()) {
        Some(mut explorer) => {
            let gens: Vec<&[usize]> = generators.iter().map(|g| g.images()).collect();
            Ok(explorer.explore(&gens, tau.values()))
        }
        None => Ok(tau_orbit(generators, tau)?.len()),
    }
}

/// `α = (1..l)(l+1..l+m)`.
pub fn two_cycle_permutation(l: usize, m: usize) -> Permutation {
    let n = l + m;
    let images = (0..n)
        .map(|q| {
            if q < l {
                (q + 1) % l
            } else {
                l + (q - l + 1) % m
            }
        })
        .collect();
    Transformation::new(images)
        .expect("in range")
        .try_into()
        .expect("bijective")
}

fn powers(alpha: &Permutation) -> HashSet<Transformation> {
    let base = alpha.as_transformation();
    let mut out = HashSet::new();
    let mut acc = Transformation::identity(base.degree());
    for _ in 0..alpha.order() {
        let next = base.compose(&acc).expect("same degree");
        out.insert(acc);
        acc = next;
    }
    out
}

/// Membership test for `U_{l,m}` with the powers of `α` precomputed.
struct ULmFilter {
    l: usize,
    n: usize,
    powers: HashSet<Transformation>,
}

impl ULmFilter {
    fn new(l: usize, m: usize) -> Self {
        ULmFilter {
            l,
            n: l + m,
            powers: powers(&two_cycle_permutation(l, m)),
        }
    }

    fn contains_images(&self, images: &[usize]) -> bool {
        let (l, n) = (self.l, self.n);
        let mut first = 0u64;
        let mut second = 0u64;
        for (q, &x) in images.iter().enumerate() {
            if q < l {
                first |= 1 << x;
            } else {
                second |= 1 << x;
            }
        }
        let image = first | second;
        let tail_mask = ((1u64 << n) - 1) & !((1u64 << l) - 1);
        let collapses = first & second != 0;
        let misses_tail = image & tail_mask != tail_mask;
        if collapses && misses_tail {
            return true;
        }
        image.count_ones() as usize == n
            && self
                .powers
                .contains(&Transformation::from_images_unchecked(images.to_vec()))
    }
}

fn check_parts(l: usize, m: usize) -> Result<()> {
    if l == 0 || m == 0 {
        return Err(Error::InvalidParameters(format!(
            "cycle parts must be positive, got l={l}, m={m}"
        )));
    }
    Ok(())
}

/// Whether `t` lies in `U_{l,m}`: a power of `α`, or it collapses a point of
/// `{1..l}` with a point of `{l+1..l+m}` and misses some point of `{l+1..l+m}`.
pub fn u_lm_contains(t: &Transformation, l: usize, m: usize) -> Result<bool> {
    check_parts(l, m)?;
    check_degree(t.degree(), l + m)?;
    Ok(ULmFilter::new(l, m).contains_images(t.images()))
}

/// Runs `f` over every map `{0..n} -> {0..n}` (odometer order).
fn for_each_map(n: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = vec![0usize; n];
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn check_filter_degree(n: usize) -> Result<()> {
    if n > MAX_FILTER_DEGREE {
        Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_FILTER_DEGREE,
        })
    } else {
        Ok(())
    }
}

/// `|U_{l,m}|` by counting all `n^n` maps that pass the membership test.
pub fn u_lm_size(l: usize, m: usize) -> Result<u64> {
    check_parts(l, m)?;
    check_filter_degree(l + m)?;
    let filter = ULmFilter::new(l, m);
    let mut count = 0;
    for_each_map(l + m, |images| {
        if filter.contains_images(images) {
            count += 1;
        }
    });
    Ok(count)
}

/// The two published candidates for the second generator of `U_{l,m}`:
/// both send `1 ↦ l+1` and `n ↦ 1`; the second also swaps `2` and `3`.
pub fn u_lm_beta_candidates(l: usize, m: usize) -> [Transformation; 2] {
    let n = l + m;
    let mut first: Vec<usize> = (0..n).collect();
    first[0] = l;
    first[n - 1] = 0;
    let mut second = first.clone();
    if n > 3 {
        second[1] = 2;
        second[2] = 1;
    }
    [
        Transformation::from_images_unchecked(first),
        Transformation::from_images_unchecked(second),
    ]
}

/// Checks that `⟨generators⟩` equals a family whose membership test is
/// `contains` and whose size is `expected`.
fn validate_generators(
    generators: &[Transformation],
    expected: u64,
    contains: impl Fn(&[usize]) -> bool,
) -> Result<bool> {
    let closure = close_with_limit(generators, Some(expected as usize))?;
    Ok(closure.len() as u64 == expected && closure.iter().all(|t| contains(t.images())))
}

type GeneratorCache = Mutex<HashMap<(char, usize, usize), (Permutation, Transformation)>>;

fn generator_cache() -> &'static GeneratorCache {
    static CACHE: OnceLock<GeneratorCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// A validated two-element generating set `(α, β)` of `U_{l,m}`, for
/// `1 < l < m`, `gcd(l, m) = 1` and `l + m <= 8`.
///
/// Each published candidate for `β` is accepted only if the closure of
/// `{α, β}` lies inside `U_{l,m}` and matches the filter count.
pub fn u_lm_generators(l: usize, m: usize) -> Result<(Permutation, Transformation)> {
    if !(1 < l && l < m && l.gcd(&m) == 1) {
        return Err(Error::InvalidParameters(format!(
            "U_(l,m) generators need 1 < l < m and gcd(l,m) = 1, got l={l}, m={m}"
        )));
    }
    check_filter_degree(l + m)?;
    if let Some(hit) = generator_cache().lock().unwrap().get(&('U', l, m)) {
        return Ok(hit.clone());
    }
    let alpha = two_cycle_permutation(l, m);
    let expected = u_lm_size(l, m)?;
    let filter = ULmFilter::new(l, m);
    for beta in u_lm_beta_candidates(l, m) {
        let gens = [alpha.as_transformation().clone(), beta.clone()];
        match validate_generators(&gens, expected, |t| filter.contains_images(t)) {
            Ok(true) => {
                let pair = (alpha, beta);
                generator_cache()
                    .lock()
                    .unwrap()
                    .insert(('U', l, m), pair.clone());
                return Ok(pair);
            }
            Ok(false) | Err(Error::ClosureLimit(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ValidationFailed(format!(
        "neither candidate generates U_({l},{m}) of size {expected}"
    )))
}

/// Whether `t` lies in `V^d_n`: a power of `(1,2,...,n)`, or `t(i) = t(j)`
/// for distinct `i, j` with `j ≡ i + d (mod n)`.
pub fn v_dn_contains(t: &Transformation, d: usize) -> Result<bool> {
    let n = t.degree();
    if d == 0 || d > n {
        return Err(Error::InvalidParameters(format!(
            "offset d={d} must lie in 1..={n}"
        )));
    }
    Ok(VdnFilter::new(d, n).contains_images(t.images()))
}

struct VdnFilter {
    d: usize,
    n: usize,
    powers: HashSet<Transformation>,
}

impl VdnFilter {
    fn new(d: usize, n: usize) -> Self {
        VdnFilter {
            d,
            n,
            powers: powers(&Permutation::n_cycle(n)),
        }
    }

    fn contains_images(&self, images: &[usize]) -> bool {
        let shift = self.d % self.n;
        if shift != 0 && (0..self.n).any(|i| images[i] == images[(i + shift) % self.n]) {
            return true;
        }
        self.powers
            .contains(&Transformation::from_images_unchecked(images.to_vec()))
    }
}

/// `|V^d_n|` by counting all `n^n` maps that pass the membership test.
pub fn v_dn_size(d: usize, n: usize) -> Result<u64> {
    if d == 0 || d > n {
        return Err(Error::InvalidParameters(format!(
            "offset d={d} must lie in 1..={n}"
        )));
    }
    check_filter_degree(n)?;
    let filter = VdnFilter::new(d, n);
    let mut count = 0;
    for_each_map(n, |images| {
        if filter.contains_images(images) {
            count += 1;
        }
    });
    Ok(count)
}

/// The generators `(α_n, β_n)` of the largest two-generated monoids of degree 2 to 6.
pub fn v_n_generators(n: usize) -> Result<(Permutation, Transformation)> {
    let beta: &[usize] = match n {
        2 => &[1, 1],
        3 => &[1, 1, 3],
        4 => &[1, 1, 4, 3],
        5 => &[1, 1, 4, 5, 3],
        6 => &[1, 4, 1, 5, 6, 2],
        _ => {
            return Err(Error::InvalidParameters(format!(
                "hard-coded generators exist only for 2 <= n <= 6, got {n}"
            )))
        }
    };
    Ok((
        Permutation::n_cycle(n),
        Transformation::from_one_based(beta)?,
    ))
}

/// Candidate second generators for `V^1_n`: the hard-coded `β_n` where one
/// exists, then `[1,1,4,5,...,n,3]` (collapse 2 onto 1, cycle the rest).
pub fn v1n_beta_candidates(n: usize) -> Vec<Transformation> {
    let mut out = Vec::new();
    if let Ok((_, beta)) = v_n_generators(n) {
        out.push(beta);
    }
    if n >= 3 {
        let mut images = vec![0, 0];
        images.extend((3..n).chain([2]));
        let t = Transformation::from_images_unchecked(images);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// A generating pair `(α_n, β)` for `V^1_n`, validated against the filter count.
pub fn v1n_generators(n: usize) -> Result<(Permutation, Transformation)> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "V^1_n needs n >= 2, got {n}"
        )));
    }
    check_filter_degree(n)?;
    if let Some(hit) = generator_cache().lock().unwrap().get(&('V', 1, n)) {
        return Ok(hit.clone());
    }
    let alpha = Permutation::n_cycle(n);
    let expected = v_dn_size(1, n)?;
    let filter = VdnFilter::new(1, n);
    for beta in v1n_beta_candidates(n) {
        let gens = [alpha.as_transformation().clone(), beta.clone()];
        match validate_generators(&gens, expected, |t| filter.contains_images(t)) {
            Ok(true) => {
                let pair = (alpha, beta);
                generator_cache()
                    .lock()
                    .unwrap()
                    .insert(('V', 1, n), pair.clone());
                return Ok(pair);
            }
            Ok(false) | Err(Error::ClosureLimit(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ValidationFailed(format!(
        "no candidate pair generates V^1_{n} of size {expected}"
    )))
}

/// `(1,2,...,n)`, `(1,2)` and the map `1 ↦ 2` fixing everything else; together
/// they generate the full transformation monoid.
pub fn full_tm_generators(n: usize) -> (Permutation, Permutation, Transformation) {
    let cycle = Permutation::n_cycle(n);
    let swap = if n >= 2 {
        Permutation::parse_cycles("(1,2)", n).expect("valid")
    } else {
        Permutation::identity(n)
    };
    let mut images: Vec<usize> = (0..n).collect();
    if n >= 2 {
        images[0] = 1;
    }
    (cycle, swap, Transformation::from_images_unchecked(images))
}
