//! Integer encodings of functions `{0..len} -> {0..base}` for hashing and dense
//! visited sets. Never serialized.

use std::collections::HashSet;

/// Mixed-radix code: digit `q` carries weight `base^q`.
#[derive(Debug, Clone)]
pub(crate) struct Radix {
    base: usize,
    pow: Vec<u64>,
    space: u64,
}

impl Radix {
    /// `None` when `base^len` does not fit in a `u64`.
    pub(crate) fn new(base: usize, len: usize) -> Option<Self> {
        let mut pow = Vec::with_capacity(len);
        let mut acc: u64 = 1;
        for _ in 0..len {
            pow.push(acc);
            acc = acc.checked_mul(base as u64)?;
        }
        Some(Radix {
            base,
            pow,
            space: acc,
        })
    }

    pub(crate) fn space(&self) -> u64 {
        self.space
    }

    #[inline]
    pub(crate) fn encode(&self, digits: &[usize]) -> u64 {
        digits
            .iter()
            .zip(&self.pow)
            .map(|(&d, &w)| d as u64 * w)
            .sum()
    }

    #[inline]
    pub(crate) fn decode_into(&self, mut code: u64, out: &mut [usize]) {
        let base = self.base as u64;
        for slot in out.iter_mut() {
            *slot = (code % base) as usize;
            code /= base;
        }
    }

    /// Code of `g ∘ a` given the decoded digits of `g`.
    #[inline]
    pub(crate) fn encode_composed(&self, g: &[usize], a: &[usize]) -> u64 {
        a.iter()
            .zip(&self.pow)
            .map(|(&aq, &w)| g[aq] as u64 * w)
            .sum()
    }

    #[inline]
    pub(crate) fn encode_composed_u8(&self, g: &[u8], a: &[usize]) -> u64 {
        a.iter()
            .zip(&self.pow)
            .map(|(&aq, &w)| g[aq] as u64 * w)
            .sum()
    }
}

/// Largest code space that gets a dense bitmap (16 MiB).
const DENSE_LIMIT: u64 = 1 << 27;

#[derive(Debug, Clone)]
pub(crate) enum CodeSet {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

impl CodeSet {
    pub(crate) fn for_space(space: u64) -> Self {
        if space <= DENSE_LIMIT {
            CodeSet::Dense(vec![0; space.div_ceil(64) as usize])
        } else {
            CodeSet::Sparse(HashSet::new())
        }
    }

    /// Returns true when `code` was not present.
    #[inline]
    pub(crate) fn insert(&mut self, code: u64) -> bool {
        match self {
            CodeSet::Dense(bits) => {
                let (w, b) = ((code / 64) as usize, code % 64);
                let fresh = bits[w] & (1 << b) == 0;
                bits[w] |= 1 << b;
                fresh
            }
            CodeSet::Sparse(set) => set.insert(code),
        }
    }

    #[inline]
    pub(crate) fn contains(&self, code: u64) -> bool {
        match self {
            CodeSet::Dense(bits) => bits
                .get((code / 64) as usize)
                .is_some_and(|w| w & (1 << (code % 64)) != 0),
            CodeSet::Sparse(set) => set.contains(&code),
        }
    }

    /// Clears exactly the given codes (cheap reset of a dense set).
    pub(crate) fn remove_all(&mut self, codes: &[u64]) {
        match self {
            CodeSet::Dense(bits) => {
                for &c in codes {
                    bits[(c / 64) as usize] &= !(1 << (c % 64));
                }
            }
            CodeSet::Sparse(set) => set.clear(),
        }
    }
}

/// Breadth-first exploration of the orbit of a function `Q -> Δ` under
/// right composition with a set of transformations. Reusable across calls.
#[derive(Debug, Clone)]
pub(crate) struct OrbitExplorer {
    radix: Radix,
    seen: CodeSet,
    found: Vec<u64>,
    digits: Vec<usize>,
}

impl OrbitExplorer {
    pub(crate) fn new(n: usize, k: usize) -> Option<Self> {
        let radix = Radix::new(k, n)?;
        let seen = CodeSet::for_space(radix.space());
        Some(OrbitExplorer {
            radix,
            seen,
            found: Vec::new(),
            digits: vec![0; n],
        })
    }

    #[cfg(test)]
    pub(crate) fn radix(&self) -> &Radix {
        &self.radix
    }

    /// Explores from `start` and returns the orbit size. `gens` are image arrays.
    pub(crate) fn explore(&mut self, gens: &[&[usize]], start: &[usize]) -> usize {
        self.seen.remove_all(&self.found);
        self.found.clear();
        let origin = self.radix.encode(start);
        self.seen.insert(origin);
        self.found.push(origin);
        let mut head = 0;
        while head < self.found.len() {
            let code = self.found[head];
            head += 1;
            self.radix.decode_into(code, &mut self.digits);
            for a in gens {
                let next = self.radix.encode_composed(&self.digits, a);
                if self.seen.insert(next) {
                    self.found.push(next);
                }
            }
        }
        self.found.len()
    }
}
