//! Transformations of a finite state set `{1..n}`.
//!
//! Internally every point is a 0-based index. The textual forms (list
//! notation `[2,4,3,5,1,7,6]` and disjoint cycle notation `(1,2,4,5)(6,7)`)
//! are 1-based.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A total function on `{0..n}` stored as a dense image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    /// Builds a transformation from 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::OutOfRange {
                value: bad + 1,
                bound: n,
            });
        }
        Ok(Transformation { images })
    }

    /// Builds a transformation from 1-based images, as written in list notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let images = images
            .iter()
            .map(|&x| {
                if x == 0 || x > n {
                    Err(Error::OutOfRange { value: x, bound: n })
                } else {
                    Ok(x - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Transformation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&x| x < images.len()));
        Transformation { images }
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            images: (0..n).collect(),
        }
    }

    /// The map sending every point to `target`.
    pub fn constant(n: usize, target: usize) -> Result<Self> {
        Self::new(vec![target; n])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, q: usize) -> usize {
        self.images[q]
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// `self ∘ other`, i.e. the map `q ↦ self(other(q))`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        check_degree(self.degree(), other.degree())?;
        Ok(Transformation {
            images: other.images.iter().map(|&q| self.images[q]).collect(),
        })
    }

    /// `self` composed with itself `exp` times; the zeroth power is the identity.
    pub fn pow(&self, exp: usize) -> Transformation {
        let mut acc = Transformation::identity(self.degree());
        for _ in 0..exp {
            acc = self.compose(&acc).expect("same degree");
        }
        acc
    }

    /// Size of the image.
    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut rank = 0;
        for &x in &self.images {
            if !seen[x] {
                seen[x] = true;
                rank += 1;
            }
        }
        rank
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn in_image(&self, q: usize) -> bool {
        self.images.contains(&q)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.images.iter().map(|&x| x + 1))
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Transformation::from_one_based(&parse_list(s)?)
    }
}

pub(crate) fn check_degree(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { left, right })
    }
}

pub(crate) fn write_list(
    f: &mut fmt::Formatter<'_>,
    values: impl Iterator<Item = usize>,
) -> fmt::Result {
    f.write_str("[")?;
    for (i, v) in values.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

/// Parses `[a1,a2,...,an]` into raw integers (whitespace allowed anywhere).
pub(crate) fn parse_list(s: &str) -> Result<Vec<usize>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected list notation `[..]`, got `{s}`")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad list entry `{tok}`")))
        })
        .collect()
}

/// A bijective transformation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Transformation);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation(Transformation::identity(n))
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        Transformation::from_one_based(images)?.try_into()
    }

    /// The cycle `(1,2,...,n)`.
    pub fn n_cycle(n: usize) -> Self {
        Permutation(Transformation::from_images_unchecked(
            (0..n).map(|i| (i + 1) % n).collect(),
        ))
    }

    /// Parses disjoint cycle notation such as `(1,2,4,5)(6,7)`; omitted points are fixed.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut rest = text.trim_start();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let cycle = body[..close]
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    let v = tok
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad cycle entry `{tok}`")))?;
                    if v == 0 || v > n {
                        return Err(Error::OutOfRange { value: v, bound: n });
                    }
                    Ok(v - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &cycle {
                if used[p] {
                    return Err(Error::RepeatedPoint(p + 1));
                }
                used[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation(Transformation::from_images_unchecked(images)))
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut q = self.apply(start);
            while q != start {
                seen[q] = true;
                cycle.push(q);
                q = self.apply(q);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Disjoint cycle notation with fixed points omitted; the identity is the empty string.
    pub fn format_cycles(&self) -> String {
        self.cycles()
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (q, &x) in self.0.images.iter().enumerate() {
            images[x] = q;
        }
        Permutation(Transformation::from_images_unchecked(images))
    }

    /// Least `i >= 1` with `p^i = id`, i.e. the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        Ok(Permutation(self.0.compose(&other.0)?))
    }

    pub fn as_transformation(&self) -> &Transformation {
        &self.0
    }

    pub fn into_transformation(self) -> Transformation {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    #[inline]
    pub fn apply(&self, q: usize) -> usize {
        self.0.apply(q)
    }

    pub fn images(&self) -> &[usize] {
        self.0.images()
    }
}

impl TryFrom<Transformation> for Permutation {
    type Error = Error;

    fn try_from(t: Transformation) -> Result<Self> {
        if t.is_permutation() {
            Ok(Permutation(t))
        } else {
            Err(Error::NotPermutation(t.to_string()))
        }
    }
}

impl From<Permutation> for Transformation {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl AsRef<Transformation> for Permutation {
    fn as_ref(&self) -> &Transformation {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `g ∘ t ∘ g⁻¹`.
pub fn conjugate(t: &Transformation, g: &Permutation) -> Result<Transformation> {
    check_degree(t.degree(), g.degree())?;
    let inv = g.inverse();
    let images = (0..t.degree())
        .map(|q| g.apply(t.apply(inv.apply(q))))
        .collect();
    Ok(Transformation::from_images_unchecked(images))
}

/// All permutations of degree `n` in lexicographic order of their image arrays.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation(Transformation::from_images_unchecked(
        current.clone(),
    ))];
    while next_permutation(&mut current) {
        out.push(Permutation(Transformation::from_images_unchecked(
            current.clone(),
        )));
    }
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len())
        .rev()
        .find(|&j| a[j] > a[i])
        .expect("pivot exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
