//! Deterministic finite automata with output.
//!
//! States, letters and output values are 0-based in this API; the text
//! format in [`text`] is 1-based.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::monoid::{
    close_with_limit, tau_orbit_size, MonoidClosure, OutputMap, MAX_CLOSURE_DEGREE,
};
use crate::transforms::{check_degree, Transformation};

pub mod text;

/// Closures larger than this are skipped by the closure-based complexity check.
pub const CLOSURE_CHECK_LIMIT: usize = 2_000_000;

/// A DFAO `(Q, Σ, ·, q0, Δ, τ)` with `Q = {0..n}`, `Σ = {0..sigma}`, `Δ = {0..k}`.
/// Letter `a` acts on `Q` by the transformation `letters[a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    letters: Vec<Transformation>,
    initial: usize,
    tau: OutputMap,
}

impl Dfao {
    pub fn new(letters: Vec<Transformation>, initial: usize, tau: OutputMap) -> Result<Self> {
        let n = tau.degree();
        if n == 0 {
            return Err(Error::InvalidParameters(
                "a DFAO needs at least one state".into(),
            ));
        }
        for a in &letters {
            check_degree(n, a.degree())?;
        }
        if initial >= n {
            return Err(Error::OutOfRange {
                value: initial + 1,
                bound: n,
            });
        }
        Ok(Dfao {
            letters,
            initial,
            tau,
        })
    }

    pub fn n(&self) -> usize {
        self.tau.degree()
    }

    pub fn sigma(&self) -> usize {
        self.letters.len()
    }

    pub fn k(&self) -> usize {
        self.tau.k()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn tau(&self) -> &OutputMap {
        &self.tau
    }

    /// Letter actions `ā`, indexed by letter.
    pub fn letters(&self) -> &[Transformation] {
        &self.letters
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.sigma()) {
            Some(&a) => Err(Error::LetterOutOfRange {
                letter: a + 1,
                sigma: self.sigma(),
            }),
            None => Ok(()),
        }
    }

    /// `q · w`.
    pub fn run(&self, state: usize, word: &[usize]) -> Result<usize> {
        self.check_word(word)?;
        if state >= self.n() {
            return Err(Error::OutOfRange {
                value: state + 1,
                bound: self.n(),
            });
        }
        Ok(word.iter().fold(state, |q, &a| self.letters[a].apply(q)))
    }

    /// `τ(q · w)`.
    pub fn eval_from(&self, state: usize, word: &[usize]) -> Result<usize> {
        Ok(self.tau.value(self.run(state, word)?))
    }

    /// `f(w) = τ(q0 · w)`.
    pub fn eval(&self, word: &[usize]) -> Result<usize> {
        self.eval_from(self.initial, word)
    }

    /// The action `w̄: q ↦ q · w`.
    pub fn word_action(&self, word: &[usize]) -> Result<Transformation> {
        self.check_word(word)?;
        let mut acc = Transformation::identity(self.n());
        for &a in word {
            acc = self.letters[a].compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn transition_monoid(&self) -> Result<MonoidClosure> {
        close_with_limit(&self.monoid_generators(), None)
    }

    // identity stands in for an empty alphabet
    fn monoid_generators(&self) -> Vec<Transformation> {
        if self.letters.is_empty() {
            vec![Transformation::identity(self.n())]
        } else {
            self.letters.clone()
        }
    }

    /// Reachability flags from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for a in &self.letters {
                let p = a.apply(q);
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    pub fn is_trim(&self) -> bool {
        self.reachable().into_iter().all(|r| r)
    }

    /// Restriction to reachable states, keeping their relative order.
    pub fn trim(&self) -> Dfao {
        let keep = self.reachable();
        let mut index = vec![usize::MAX; self.n()];
        let mut kept = Vec::new();
        for (q, _) in keep.iter().enumerate().filter(|(_, &r)| r) {
            index[q] = kept.len();
            kept.push(q);
        }
        self.quotient(&kept, &index)
    }

    /// Builds the machine on `representatives` where old state `q` maps to `class_of[q]`.
    fn quotient(&self, representatives: &[usize], class_of: &[usize]) -> Dfao {
        let letters = self
            .letters
            .iter()
            .map(|a| {
                let images = representatives
                    .iter()
                    .map(|&q| class_of[a.apply(q)])
                    .collect();
                Transformation::from_images_unchecked(images)
            })
            .collect();
        let values = representatives.iter().map(|&q| self.tau.value(q)).collect();
        Dfao {
            letters,
            initial: class_of[self.initial],
            tau: OutputMap::from_values_unchecked(values, self.k()),
        }
    }

    /// Indistinguishability classes by iterated refinement starting from the
    /// partition by output value. Class ids are numbered by first occurrence.
    pub fn equivalence_classes(&self) -> Vec<usize> {
        let n = self.n();
        let mut class = renumber(self.tau.values());
        loop {
            let signatures: Vec<Vec<usize>> = (0..n)
                .map(|q| {
                    let mut sig = Vec::with_capacity(self.sigma() + 1);
                    sig.push(class[q]);
                    sig.extend(self.letters.iter().map(|a| class[a.apply(q)]));
                    sig
                })
                .collect();
            let refined = renumber(&signatures);
            let before = class.iter().max().map_or(0, |m| m + 1);
            let after = refined.iter().max().map_or(0, |m| m + 1);
            class = refined;
            if after == before {
                return class;
            }
        }
    }

    /// The minimal DFAO computing the same function.
    pub fn minimize(&self) -> Dfao {
        let trimmed = self.trim();
        let class = trimmed.equivalence_classes();
        let count = class.iter().max().map_or(0, |m| m + 1);
        let mut representatives = vec![usize::MAX; count];
        for (q, &c) in class.iter().enumerate() {
            if representatives[c] == usize::MAX {
                representatives[c] = q;
            }
        }
        trimmed.quotient(&representatives, &class)
    }

    /// The reachable part of the reversal machine whose states are functions
    /// `g: Q -> Δ`, with start `τ`, transitions `g ↦ g ∘ ā` and output `g(q0)`.
    pub fn reverse(&self) -> Result<ReversedDfao> {
        if !self.is_trim() {
            let unreachable = self.reachable().iter().filter(|r| !**r).count();
            return Err(Error::NotTrim { unreachable });
        }
        let mut index: HashMap<OutputMap, usize> = HashMap::new();
        let mut states = vec![self.tau.clone()];
        index.insert(self.tau.clone(), 0);
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < states.len() {
            let g = states[head].clone();
            head += 1;
            let row = self
                .letters
                .iter()
                .map(|a| {
                    let next = g.compose(a).expect("same degree");
                    *index.entry(next.clone()).or_insert_with(|| {
                        states.push(next);
                        states.len() - 1
                    })
                })
                .collect();
            transitions.push(row);
        }
        Ok(ReversedDfao {
            states,
            transitions,
            source_initial: self.initial,
        })
    }

    /// State complexity of the reversed function, computed by three methods
    /// that must agree.
    pub fn reversal_state_complexity(&self) -> Result<usize> {
        self.reversal_complexity_report()?.agreed()
    }

    pub fn reversal_complexity_report(&self) -> Result<ComplexityReport> {
        let reversal_states = self.reverse()?.len();
        let gens = self.monoid_generators();
        let orbit_size = tau_orbit_size(&gens, &self.tau)?;
        let closure_image_size = if self.n() <= MAX_CLOSURE_DEGREE {
            match close_with_limit(&gens, Some(CLOSURE_CHECK_LIMIT)) {
                Ok(m) => Some(m.tau_image(&self.tau)?.len()),
                Err(Error::ClosureLimit(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        Ok(ComplexityReport {
            reversal_states,
            orbit_size,
            closure_image_size,
        })
    }
}

fn renumber<T: Eq + std::hash::Hash + Clone>(keys: &[T]) -> Vec<usize> {
    let mut ids: HashMap<T, usize> = HashMap::new();
    keys.iter()
        .map(|key| {
            let next = ids.len();
            *ids.entry(key.clone()).or_insert(next)
        })
        .collect()
}

/// The three computations of reversal state complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityReport {
    /// Reachable states of the reversal machine.
    pub reversal_states: usize,
    /// `|τM|` by orbit search.
    pub orbit_size: usize,
    /// `|{τ ∘ m : m ∈ M}|` over the materialized monoid, when it was small enough.
    pub closure_image_size: Option<usize>,
}

impl ComplexityReport {
    pub fn agreed(&self) -> Result<usize> {
        let closure_ok = self.closure_image_size.is_none_or(|c| c == self.orbit_size);
        if self.reversal_states == self.orbit_size && closure_ok {
            Ok(self.orbit_size)
        } else {
            Err(Error::MethodDisagreement(format!("{self:?}")))
        }
    }
}

/// Reachable part of the reversal machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversedDfao {
    states: Vec<OutputMap>,
    transitions: Vec<Vec<usize>>,
    source_initial: usize,
}

impl ReversedDfao {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Each state is a function `Q -> Δ`; state 0 is `τ`.
    pub fn states(&self) -> &[OutputMap] {
        &self.states
    }

    pub fn transition(&self, state: usize, letter: usize) -> usize {
        self.transitions[state][letter]
    }

    /// `Ω(g) = g(q0)`.
    pub fn output(&self, state: usize) -> usize {
        self.states[state].value(self.source_initial)
    }

    pub fn eval(&self, word: &[usize]) -> Result<usize> {
        let sigma = self.transitions.first().map_or(0, Vec::len);
        let mut g = 0;
        for &a in word {
            if a >= sigma {
                return Err(Error::LetterOutOfRange {
                    letter: a + 1,
                    sigma,
                });
            }
            g = self.transitions[g][a];
        }
        Ok(self.output(g))
    }

    /// The reversal as an ordinary DFAO with states numbered in discovery order.
    pub fn to_dfao(&self) -> Dfao {
        let sigma = self.transitions.first().map_or(0, Vec::len);
        let letters = (0..sigma)
            .map(|a| {
                Transformation::from_images_unchecked(
                    self.transitions.iter().map(|row| row[a]).collect(),
                )
            })
            .collect();
        let k = self.states[0].k();
        let values = (0..self.len()).map(|g| self.output(g)).collect();
        Dfao {
            letters,
            initial: 0,
            tau: OutputMap::from_values_unchecked(values, k),
        }
    }
}
