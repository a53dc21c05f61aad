//! Orbit sizes `|τM|` for every `τ: Q -> Δ` at once.
//!
//! The functions `Q -> Δ` form a graph with an edge `g -> g ∘ a` per
//! generator `a`; the orbit of `τ` is the set reachable from `τ`. Strongly
//! connected components are condensed (Tarjan) and reachability bitsets are
//! accumulated in the order components complete, which is reverse
//! topological.

use crate::codec::Radix;

/// Largest `k^n` handled by the bitset engine.
pub(crate) const MAX_REACH_SPACE: usize = 8192;

pub(crate) struct ReachEngine {
    n: usize,
    radix: Radix,
    space: usize,
    words: usize,
    digits: Vec<u8>,
    succ: Vec<Vec<u32>>,
    index: Vec<u32>,
    low: Vec<u32>,
    on_stack: Vec<bool>,
    stack: Vec<u32>,
    frames: Vec<(u32, u32)>,
    comp: Vec<u32>,
    reach: Vec<u64>,
    comp_size: Vec<u32>,
}

const UNVISITED: u32 = u32::MAX;

impl ReachEngine {
    /// `None` when `k^n` exceeds [`MAX_REACH_SPACE`].
    pub(crate) fn new(n: usize, k: usize) -> Option<Self> {
        let radix = Radix::new(k, n)?;
        let space = usize::try_from(radix.space()).ok()?;
        if space > MAX_REACH_SPACE {
            return None;
        }
        let mut digits = vec![0u8; space * n];
        let mut buf = vec![0usize; n];
        for code in 0..space {
            radix.decode_into(code as u64, &mut buf);
            for (slot, &d) in digits[code * n..(code + 1) * n].iter_mut().zip(&buf) {
                *slot = d as u8;
            }
        }
        Some(ReachEngine {
            n,
            radix,
            space,
            words: space.div_ceil(64),
            digits,
            succ: Vec::new(),
            index: vec![UNVISITED; space],
            low: vec![0; space],
            on_stack: vec![false; space],
            stack: Vec::with_capacity(space),
            frames: Vec::with_capacity(space),
            comp: vec![0; space],
            reach: Vec::new(),
            comp_size: Vec::new(),
        })
    }

    pub(crate) fn code_of(&self, values: &[usize]) -> u32 {
        self.radix.encode(values) as u32
    }

    /// Rebuilds the graph for `generators` (image arrays). Afterwards
    /// [`orbit_size`](Self::orbit_size) answers for any start code.
    pub(crate) fn load(&mut self, generators: &[&[usize]]) {
        let n = self.n;
        self.succ.resize_with(generators.len(), Vec::new);
        for (succ, a) in self.succ.iter_mut().zip(generators) {
            succ.clear();
            succ.extend((0..self.space).map(|code| {
                let g = &self.digits[code * n..(code + 1) * n];
                self.radix.encode_composed_u8(g, a) as u32
            }));
        }
        self.condense();
    }

    pub(crate) fn orbit_size(&self, code: u32) -> usize {
        self.comp_size[self.comp[code as usize] as usize] as usize
    }

    fn condense(&mut self) {
        self.index.fill(UNVISITED);
        self.on_stack.fill(false);
        self.stack.clear();
        self.reach.clear();
        self.comp_size.clear();
        let words = self.words;
        let gens = self.succ.len() as u32;
        let mut counter = 0u32;
        let mut comps = 0u32;

        for root in 0..self.space as u32 {
            if self.index[root as usize] != UNVISITED {
                continue;
            }
            self.frames.push((root, 0));
            self.index[root as usize] = counter;
            self.low[root as usize] = counter;
            counter += 1;
            self.stack.push(root);
            self.on_stack[root as usize] = true;

            while let Some(&mut (v, ref mut edge)) = self.frames.last_mut() {
                if *edge < gens {
                    let w = self.succ[*edge as usize][v as usize];
                    *edge += 1;
                    if self.index[w as usize] == UNVISITED {
                        self.index[w as usize] = counter;
                        self.low[w as usize] = counter;
                        counter += 1;
                        self.stack.push(w);
                        self.on_stack[w as usize] = true;
                        self.frames.push((w, 0));
                    } else if self.on_stack[w as usize] {
                        let lw = self.index[w as usize];
                        if lw < self.low[v as usize] {
                            self.low[v as usize] = lw;
                        }
                    }
                    continue;
                }
                self.frames.pop();
                if let Some(&(parent, _)) = self.frames.last() {
                    let lv = self.low[v as usize];
                    if lv < self.low[parent as usize] {
                        self.low[parent as usize] = lv;
                    }
                }
                if self.low[v as usize] != self.index[v as usize] {
                    continue;
                }
                // v roots a component; its successors outside it are complete
                let c = comps;
                comps += 1;
                let base = self.reach.len();
                self.reach.resize(base + words, 0);
                let start = self
                    .stack
                    .iter()
                    .rposition(|&x| x == v)
                    .expect("root on stack");
                for i in start..self.stack.len() {
                    let x = self.stack[i];
                    self.on_stack[x as usize] = false;
                    self.comp[x as usize] = c;
                    self.reach[base + x as usize / 64] |= 1 << (x % 64);
                }
                // every successor is in this component or one completed earlier
                for i in start..self.stack.len() {
                    let x = self.stack[i] as usize;
                    for g in 0..gens as usize {
                        let y = self.succ[g][x] as usize;
                        let other = self.comp[y];
                        if other == c {
                            continue;
                        }
                        let other = other as usize * words;
                        let (head, tail) = self.reach.split_at_mut(base);
                        for (dst, src) in tail.iter_mut().zip(&head[other..other + words]) {
                            *dst |= *src;
                        }
                    }
                }
                self.stack.truncate(start);
                let size: u32 = self.reach[base..].iter().map(|w| w.count_ones()).sum();
                self.comp_size.push(size);
            }
        }
    }
}
