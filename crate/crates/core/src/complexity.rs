//! Closed-form counts for `|τ U_{l,m}|` and the lower bound built from them.
//!
//! All counts are exact big integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monoid::{two_cycle_permutation, OutputMap};

/// Stirling number of the second kind `S(l, i)`: partitions of an `l`-set into
/// `i` non-empty blocks. Zero for `i > l` and for `i = 0 < l`; `S(0, 0) = 1`.
pub fn stirling2(l: usize, i: usize) -> BigUint {
    if i > l {
        return BigUint::zero();
    }
    // row r of the triangle, S(r, 0..=i)
    let mut row: Vec<BigUint> = vec![BigUint::zero(); i + 1];
    row[0] = BigUint::one();
    for r in 1..=l {
        for j in (1..=i.min(r)).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[i].clone()
}

pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |acc, j| {
        acc * BigUint::from(n - j) / BigUint::from(j + 1)
    })
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, j| acc * BigUint::from(j))
}

fn pow(base: usize, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

fn check_basic(k: usize, l: usize, m: usize) -> Result<()> {
    if k < 2 || l == 0 || m == 0 {
        return Err(Error::InvalidParameters(format!(
            "need k >= 2 and l, m >= 1, got k={k}, l={l}, m={m}"
        )));
    }
    Ok(())
}

/// Number of functions `{1..l+m} -> {1..k}` whose images of `{1..l}` and
/// `{l+1..l+m}` are disjoint: `Σ_{i=1..l} C(k,i) i! S(l,i) (k-i)^m`.
pub fn formula_f(k: usize, l: usize, m: usize) -> Result<BigUint> {
    check_basic(k, l, m)?;
    Ok((1..=l.min(k))
        .map(|i| binomial(k, i) * factorial(i) * stirling2(l, i) * pow(k - i, m))
        .sum())
}

/// `lcm(l, m)` for `k >= 4`, `m` for `k = 3`, `1` for `k = 2`.
pub fn formula_g(k: usize, l: usize, m: usize) -> Result<BigUint> {
    check_basic(k, l, m)?;
    Ok(BigUint::from(match k {
        2 => 1,
        3 => m,
        _ => l.lcm(&m),
    }))
}

fn check_theorem(k: usize, l: usize, m: usize) -> Result<()> {
    check_basic(k, l, m)?;
    if !(k < l + m && l <= m) {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= k < l + m and 1 <= l <= m, got k={k}, l={l}, m={m}"
        )));
    }
    Ok(())
}

/// All quantities entering `|τ U_{l,m}| = k^n - F + G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauUlmBreakdown {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub k_pow_n: BigUint,
    pub f: BigUint,
    pub g: BigUint,
    pub size: BigUint,
}

pub fn tau_ulm_breakdown(k: usize, l: usize, m: usize) -> Result<TauUlmBreakdown> {
    check_theorem(k, l, m)?;
    let k_pow_n = pow(k, l + m);
    let f = formula_f(k, l, m)?;
    let g = formula_g(k, l, m)?;
    let size = &k_pow_n + &g - &f;
    Ok(TauUlmBreakdown {
        k,
        l,
        m,
        k_pow_n,
        f,
        g,
        size,
    })
}

/// `k^n - F(k,l,m) + G(k,l,m)` for `2 <= k < n = l + m`, `1 <= l <= m`.
pub fn tau_ulm_size(k: usize, l: usize, m: usize) -> Result<BigUint> {
    Ok(tau_ulm_breakdown(k, l, m)?.size)
}

/// Splits `n = l + m` with `1 < l < m` and `gcd(l, m) = 1`.
pub fn coprime_splits(n: usize) -> Vec<(usize, usize)> {
    (2..n)
        .map(|l| (l, n - l))
        .filter(|&(l, m)| l < m && l.gcd(&m) == 1)
        .collect()
}

/// Maximum of `|τ U_{l,m}|` over all coprime splits of `n`, with the first
/// split attaining it.
pub fn corollary_lower_bound(k: usize, n: usize) -> Result<TauUlmBreakdown> {
    let splits = coprime_splits(n);
    if splits.is_empty() {
        return Err(Error::UndefinedBound(n));
    }
    let mut best: Option<TauUlmBreakdown> = None;
    for (l, m) in splits {
        let candidate = tau_ulm_breakdown(k, l, m)?;
        if best.as_ref().is_none_or(|b| candidate.size > b.size) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one split"))
}

/// The explicit output map attaining `k^n - F + G` on `U_{l,m}`.
pub fn lemma_tau(k: usize, l: usize, m: usize) -> Result<OutputMap> {
    check_theorem(k, l, m)?;
    let n = l + m;
    // 1-based output values, indexed by 0-based state
    let mut values = vec![0usize; n];
    if k == 2 {
        for (q, v) in values.iter_mut().enumerate() {
            *v = if q < l { 1 } else { 2 };
        }
    } else if (l, m) == (2, 2) {
        values.copy_from_slice(&[1, 2, 3, 3]);
    } else {
        let low = (k - 2).min(l);
        if low == l {
            for (q, v) in values.iter_mut().enumerate().take(l) {
                *v = q + 1;
            }
            let j = k - l;
            for i in 1..=m {
                values[l + i - 1] = if i <= j { l + i } else { k };
            }
        } else {
            for (q, v) in values.iter_mut().enumerate().take(l) {
                *v = (q + 1).min(k - 2);
            }
            values[l] = k - 1;
            for v in values.iter_mut().skip(l + 1) {
                *v = k;
            }
        }
    }
    OutputMap::from_one_based(&values, k)
}

/// The four properties required of the output map in the `|τ U_{l,m}|` construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaReport {
    pub surjective: bool,
    pub disjoint_parts: bool,
    pub repeat_in_second_part: bool,
    /// `|{τ ∘ α^i : i >= 0}|`.
    pub alpha_orbit: usize,
    pub alpha_orbit_matches_g: bool,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.surjective
            && self.disjoint_parts
            && self.repeat_in_second_part
            && self.alpha_orbit_matches_g
    }
}

pub fn verify_lemma_tau(tau: &OutputMap, k: usize, l: usize, m: usize) -> Result<LemmaReport> {
    check_basic(k, l, m)?;
    let n = l + m;
    if tau.degree() != n || tau.k() != k {
        return Err(Error::InvalidParameters(format!(
            "output map has degree {} and k={}, expected {n} and {k}",
            tau.degree(),
            tau.k()
        )));
    }
    let v = tau.values();
    let disjoint_parts = v[..l].iter().all(|x| !v[l..].contains(x));
    let repeat_in_second_part = (l..n).any(|p| (p + 1..n).any(|p2| v[p] == v[p2]));

    let alpha = two_cycle_permutation(l, m);
    let mut orbit = vec![tau.clone()];
    let mut current = tau.clone();
    for _ in 1..alpha.order() {
        current = current.compose(alpha.as_transformation())?;
        if !orbit.contains(&current) {
            orbit.push(current.clone());
        }
    }
    let g = formula_g(k, l, m)?;
    Ok(LemmaReport {
        surjective: tau.is_surjective(),
        disjoint_parts,
        repeat_in_second_part,
        alpha_orbit: orbit.len(),
        alpha_orbit_matches_g: BigUint::from(orbit.len()) == g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts set partitions of `{0..l}` into exactly `i` blocks via restricted growth strings.
    fn partitions_brute(l: usize, i: usize) -> u64 {
        fn rec(pos: usize, l: usize, blocks: usize, i: usize) -> u64 {
            if pos == l {
                return u64::from(blocks == i);
            }
            (0..=blocks)
                .filter(|&b| b < i)
                .map(|b| rec(pos + 1, l, blocks.max(b + 1), i))
                .sum()
        }
        rec(0, l, 0, i)
    }

    /// Counts functions `{0..l+m} -> {0..k}` with disjoint part images.
    fn f_brute(k: usize, l: usize, m: usize) -> u64 {
        let n = l + m;
        let total = (k as u64).pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let digits: Vec<u64> = (0..n)
                    .map(|_| {
                        let d = c % k as u64;
                        c /= k as u64;
                        d
                    })
                    .collect();
                digits[..l].iter().all(|x| !digits[l..].contains(x))
            })
            .count() as u64
    }

    #[test]
    fn stirling_values() {
        for l in 1..8 {
            assert_eq!(stirling2(l, l), BigUint::one());
            assert_eq!(stirling2(l, 1), BigUint::one());
            assert_eq!(stirling2(l, 0), BigUint::zero());
        }
        assert_eq!(stirling2(0, 0), BigUint::one());
        assert_eq!(stirling2(3, 5), BigUint::zero());
        assert_eq!(stirling2(4, 2), BigUint::from(7u32));
        assert_eq!(stirling2(5, 3), BigUint::from(25u32));
        for l in 0..8 {
            for i in 0..=l {
                assert_eq!(
                    stirling2(l, i),
                    BigUint::from(partitions_brute(l, i)),
                    "S({l},{i})"
                );
            }
        }
    }

    #[test]
    fn f_and_g_examples() {
        assert_eq!(f_brute(3, 2, 3), 30);
        assert_eq!(f_brute(4, 2, 3), 204);
        assert_eq!(formula_f(3, 2, 3).unwrap(), BigUint::from(30u32));
        assert_eq!(formula_f(4, 2, 3).unwrap(), BigUint::from(204u32));
        assert_eq!(formula_f(2, 1, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(formula_g(2, 3, 4).unwrap(), BigUint::from(1u32));
        assert_eq!(formula_g(3, 2, 3).unwrap(), BigUint::from(3u32));
        assert_eq!(formula_g(4, 2, 3).unwrap(), BigUint::from(6u32));
        assert!(formula_f(1, 2, 3).is_err());
    }

    #[test]
    fn f_matches_brute_force() {
        for k in 2..=5 {
            for n in 2..=6 {
                for l in 1..n {
                    let m = n - l;
                    assert_eq!(
                        formula_f(k, l, m).unwrap(),
                        BigUint::from(f_brute(k, l, m)),
                        "F({k},{l},{m})"
                    );
                }
            }
        }
    }

    #[test]
    fn tau_ulm_examples() {
        assert_eq!(tau_ulm_size(3, 2, 3).unwrap(), BigUint::from(216u32));
        assert_eq!(tau_ulm_size(4, 2, 3).unwrap(), BigUint::from(826u32));
        assert_eq!(tau_ulm_size(3, 3, 4).unwrap(), BigUint::from(2125u32));
        assert!(tau_ulm_size(5, 2, 3).is_err());
        assert!(tau_ulm_size(3, 3, 2).is_err());
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(
            corollary_lower_bound(2, 5).unwrap().size,
            BigUint::from(31u32)
        );
        let best = corollary_lower_bound(6, 9).unwrap();
        assert_eq!(best.size, BigUint::from(9_657_446u32));
        for n in [1, 2, 3, 4, 6] {
            assert_eq!(corollary_lower_bound(3, n), Err(Error::UndefinedBound(n)));
        }
        for n in [5, 7, 8, 9, 10, 11] {
            assert_eq!(
                corollary_lower_bound(2, n).unwrap().size,
                pow(2, n) - BigUint::one()
            );
        }
    }

    #[test]
    fn lemma_tau_examples() {
        let cases: [(usize, usize, usize, &[usize]); 3] = [
            (6, 3, 5, &[1, 2, 3, 4, 5, 6, 6, 6]),
            (5, 4, 5, &[1, 2, 3, 3, 4, 5, 5, 5, 5]),
            (3, 4, 4, &[1, 1, 1, 1, 2, 3, 3, 3]),
        ];
        for (k, l, m, expected) in cases {
            assert_eq!(lemma_tau(k, l, m).unwrap().to_one_based(), expected);
        }
        assert_eq!(lemma_tau(3, 2, 2).unwrap().to_one_based(), vec![1, 2, 3, 3]);
        assert_eq!(
            lemma_tau(2, 2, 3).unwrap().to_one_based(),
            vec![1, 1, 2, 2, 2]
        );
        assert!(lemma_tau(5, 2, 3).is_err());
    }

    #[test]
    fn lemma_tau_properties_hold_everywhere() {
        for n in 2..=9 {
            for l in 1..=n / 2 {
                let m = n - l;
                for k in 2..n {
                    let tau = lemma_tau(k, l, m).unwrap();
                    let report = verify_lemma_tau(&tau, k, l, m).unwrap();
                    assert!(report.all_hold(), "k={k} l={l} m={m}: {report:?}");
                }
            }
        }
        let report = verify_lemma_tau(&lemma_tau(4, 2, 3).unwrap(), 4, 2, 3).unwrap();
        assert_eq!(report.alpha_orbit, 6);
    }

    #[test]
    fn constant_map_fails_surjectivity() {
        let tau = OutputMap::from_one_based(&[1; 5], 3).unwrap();
        let report = verify_lemma_tau(&tau, 3, 2, 3).unwrap();
        assert!(!report.surjective);
        assert!(!report.all_hold());
    }
}
