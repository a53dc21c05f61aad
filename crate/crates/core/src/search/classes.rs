//! Conjugacy classes of the full transformation monoid under `t ↦ g t g⁻¹`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::codec::Radix;
use crate::complexity::factorial;
use crate::error::{Error, Result};
use crate::transforms::{all_permutations, conjugate, Transformation};

/// Largest degree for which class representatives are enumerated.
pub const MAX_CLASS_DEGREE: usize = 7;

/// Lexicographically least conjugate of `t`, found by trying every permutation.
pub fn canonical_form(t: &Transformation) -> Transformation {
    all_permutations(t.degree())
        .iter()
        .map(|g| conjugate(t, g).expect("same degree"))
        .min()
        .expect("at least the identity")
}

type RepCache = Mutex<HashMap<usize, Arc<Vec<Transformation>>>>;

/// One representative per conjugacy class, each the lexicographically least
/// member of its class, listed in increasing lexicographic order.
pub fn conjugacy_class_reps(n: usize) -> Result<Arc<Vec<Transformation>>> {
    if n > MAX_CLASS_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_CLASS_DEGREE,
        });
    }
    static CACHE: OnceLock<RepCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let reps = Arc::new(enumerate_reps(n));
    cache.lock().unwrap().insert(n, reps.clone());
    Ok(reps)
}

fn enumerate_reps(n: usize) -> Vec<Transformation> {
    if n == 0 {
        return vec![Transformation::identity(0)];
    }
    let radix = Radix::new(n, n).expect("small degree");
    let perms = all_permutations(n);
    let inverses: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| p.inverse().images().to_vec())
        .collect();
    let mut seen = vec![false; radix.space() as usize];
    let mut reps = Vec::new();
    let mut images = vec![0usize; n];
    let mut conj = vec![0usize; n];
    // odometer over image arrays in lexicographic order; the first unseen
    // member of a class is therefore its least element
    loop {
        let code = radix.encode(&images) as usize;
        if !seen[code] {
            reps.push(Transformation::from_images_unchecked(images.clone()));
            for (g, inv) in perms.iter().zip(&inverses) {
                // g ∘ t ∘ g⁻¹
                for (slot, &iq) in conj.iter_mut().zip(inv) {
                    *slot = g.apply(images[iq]);
                }
                seen[radix.encode(&conj) as usize] = true;
            }
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return reps;
            }
            pos -= 1;
            images[pos] += 1;
            if images[pos] < n {
                break;
            }
            images[pos] = 0;
        }
    }
}

/// Integer partitions of `n` as multiplicity vectors `c[j] = #parts of size j`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, counts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(counts.clone());
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            counts[part] += 1;
            rec(remaining - part, part, counts, out);
            counts[part] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut vec![0; n + 1], &mut out);
    out
}

/// Number of conjugacy classes by Burnside's lemma over permutation cycle types.
///
/// A transformation commutes with a permutation of cycle type `c` in
/// `Π_j (Σ_{d | j} d·c_d)^{c_j}` ways.
pub fn conjugacy_class_count(n: usize) -> BigUint {
    let n_fact = factorial(n);
    let mut total = BigUint::zero();
    for c in partitions(n) {
        let mut fixed = BigUint::from(1u32);
        let mut centralizer = BigUint::from(1u32);
        for j in 1..=n {
            if c[j] == 0 {
                continue;
            }
            let targets: usize = (1..=j).filter(|d| j % d == 0).map(|d| d * c[d]).sum();
            fixed *= BigUint::from(targets).pow(c[j] as u32);
            centralizer *= BigUint::from(j).pow(c[j] as u32) * factorial(c[j]);
        }
        total += fixed * (&n_fact / centralizer);
    }
    total / n_fact
}
