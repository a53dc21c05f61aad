//! Tables of closure sizes, formula lower bounds and search maxima.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use dfaorev::complexity::{coprime_splits, corollary_lower_bound};
use dfaorev::monoid::{close, u_lm_generators, v_n_generators};
use dfaorev::search::{
    brute_force, estimate_brute_triples, random_search, SearchConfig, MAX_CLASS_DEGREE,
};
use dfaorev::{Error, Result};
use num_bigint::BigUint;
use serde_json::{json, Value};

/// Inclusive range written `a`, `a..b` or `a-b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub const fn new(lo: usize, hi: usize) -> Self {
        Span { lo, hi }
    }

    pub fn iter(&self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad number `{t}` in range `{s}`"))
        };
        let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Closed-form value.
    Formula,
    /// Size of a computed monoid closure.
    Closure,
    /// Exhaustive search maximum.
    Exact,
    /// Best value seen by random search.
    Random,
    /// Over budget or unsupported.
    Skipped,
    /// No value is defined for this cell.
    Absent,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Formula => "formula",
            Status::Closure => "closure",
            Status::Exact => "exact",
            Status::Random => "random",
            Status::Skipped => "skipped",
            Status::Absent => "absent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub value: Option<BigUint>,
    pub status: Status,
}

impl Cell {
    fn of(value: impl Into<BigUint>, status: Status) -> Self {
        Cell {
            value: Some(value.into()),
            status,
        }
    }

    fn empty(status: Status) -> Self {
        Cell {
            value: None,
            status,
        }
    }

    /// Plain number, `+` suffix for random-search values, `skipped` or `-`.
    pub fn text(&self) -> String {
        match (&self.value, self.status) {
            (Some(v), Status::Random) => format!("{v}+"),
            (Some(v), _) => v.to_string(),
            (None, Status::Skipped) => "skipped".into(),
            (None, _) => "-".into(),
        }
    }
}

/// Row key: an output size `k` or a named quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowKey {
    K(usize),
    Named(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub id: u8,
    pub rows: Vec<RowKey>,
    pub cols: Vec<usize>,
    /// `cells[row][col]`.
    pub cells: Vec<Vec<Cell>>,
}

impl Table {
    pub fn cell(&self, row: &RowKey, n: usize) -> Option<&Cell> {
        let r = self.rows.iter().position(|x| x == row)?;
        let c = self.cols.iter().position(|&x| x == n)?;
        Some(&self.cells[r][c])
    }

    pub fn to_tsv(&self) -> String {
        let corner = if self.rows.iter().all(|r| matches!(r, RowKey::K(_))) {
            "k\\n"
        } else {
            "n"
        };
        let mut out = String::from(corner);
        for n in &self.cols {
            write!(out, "\t{n}").unwrap();
        }
        out.push('\n');
        for (row, cells) in self.rows.iter().zip(&self.cells) {
            match row {
                RowKey::K(k) => write!(out, "{k}").unwrap(),
                RowKey::Named(name) => out.push_str(name),
            }
            for cell in cells {
                write!(out, "\t{}", cell.text()).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut cells = Vec::new();
        for (row, row_cells) in self.rows.iter().zip(&self.cells) {
            for (&n, cell) in self.cols.iter().zip(row_cells) {
                let mut obj = serde_json::Map::new();
                match row {
                    RowKey::K(k) => obj.insert("k".into(), json!(k)),
                    RowKey::Named(name) => obj.insert("row".into(), json!(name)),
                };
                obj.insert("n".into(), json!(n));
                obj.insert(
                    "value".into(),
                    cell.value.as_ref().map_or(Value::Null, big_json),
                );
                obj.insert("status".into(), json!(cell.status.name()));
                cells.push(Value::Object(obj));
            }
        }
        json!({ "table": self.id, "cells": cells })
    }
}

/// JSON number when it fits in a `u64`, decimal string otherwise.
pub fn big_json(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

/// Limits shared by the computed tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    /// Cap on brute-force triples, and on `iterations · k^n` for random cells.
    pub budget: u128,
    pub iterations: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            budget: dfaorev::search::DEFAULT_BUDGET,
            iterations: 20_000,
            seed: 1,
            workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
        }
    }
}

pub const TABLE1_N: Span = Span::new(2, 7);
pub const TABLE2_K: Span = Span::new(2, 6);
pub const TABLE2_N: Span = Span::new(5, 9);
pub const TABLE3_K: Span = Span::new(3, 4);
pub const TABLE3_N: Span = Span::new(3, 8);

/// Largest two-generated monoid sizes: the hard-coded generators for
/// `n <= 6`, and the larger of the `U_{l,m}` closures for `n = 7`.
pub fn table1(ns: Span, opts: &TableOptions) -> Result<Table> {
    let mut sizes = Vec::new();
    let mut powers = Vec::new();
    for n in ns.iter() {
        let power = BigUint::from(n).pow(n as u32);
        let over_budget = u128::try_from(&power).map_or(true, |p| p > opts.budget);
        let cell = if n < 2 || over_budget {
            Cell::empty(Status::Skipped)
        } else if let Ok((alpha, beta)) = v_n_generators(n) {
            Cell::of(
                close(&[alpha.into_transformation(), beta])?.len(),
                Status::Closure,
            )
        } else {
            largest_ulm_closure(n)?.map_or(Cell::empty(Status::Skipped), |s| {
                Cell::of(s, Status::Closure)
            })
        };
        sizes.push(cell);
        powers.push(Cell::of(power, Status::Formula));
    }
    Ok(Table {
        id: 1,
        rows: vec![RowKey::Named("m2(n)"), RowKey::Named("n^n")],
        cols: ns.iter().collect(),
        cells: vec![sizes, powers],
    })
}

/// `None` when no split of `n` has validated generators.
fn largest_ulm_closure(n: usize) -> Result<Option<usize>> {
    let mut best = None;
    for (l, m) in coprime_splits(n) {
        let (alpha, beta) = match u_lm_generators(l, m) {
            Ok(pair) => pair,
            Err(Error::DegreeTooLarge { .. } | Error::ValidationFailed(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let size = close(&[alpha.into_transformation(), beta])?.len();
        best = best.max(Some(size));
    }
    Ok(best)
}

/// The closed-form lower bound; cells with `k >= n` or no coprime split are absent.
pub fn table2(ks: Span, ns: Span) -> Result<Table> {
    let mut cells = Vec::new();
    for k in ks.iter() {
        let mut row = Vec::new();
        for n in ns.iter() {
            let cell = if k < 2 || k >= n || coprime_splits(n).is_empty() {
                Cell::empty(Status::Absent)
            } else {
                Cell::of(corollary_lower_bound(k, n)?.size, Status::Formula)
            };
            row.push(cell);
        }
        cells.push(row);
    }
    Ok(Table {
        id: 2,
        rows: ks.iter().map(RowKey::K).collect(),
        cols: ns.iter().collect(),
        cells,
    })
}

/// Search maxima: exhaustive where the budget allows, random search next,
/// skipped otherwise.
pub fn table3(ks: Span, ns: Span, opts: &TableOptions) -> Result<Table> {
    let mut cells = Vec::new();
    for k in ks.iter() {
        let mut row = Vec::new();
        for n in ns.iter() {
            row.push(search_cell(k, n, opts)?);
        }
        cells.push(row);
    }
    Ok(Table {
        id: 3,
        rows: ks.iter().map(RowKey::K).collect(),
        cols: ns.iter().collect(),
        cells,
    })
}

fn search_cell(k: usize, n: usize, opts: &TableOptions) -> Result<Cell> {
    if k == 0 || k > n {
        return Ok(Cell::empty(Status::Absent));
    }
    if n <= MAX_CLASS_DEGREE && estimate_brute_triples(k, n) <= opts.budget {
        let cfg = SearchConfig::brute(k, n)
            .with_workers(opts.workers)
            .with_budget(opts.budget);
        return Ok(Cell::of(brute_force(&cfg)?.max_size, Status::Exact));
    }
    let cost = (k as u128)
        .checked_pow(n as u32)
        .and_then(|p| p.checked_mul(opts.iterations as u128));
    if cost.is_none_or(|c| c > opts.budget) {
        return Ok(Cell::empty(Status::Skipped));
    }
    let cfg = SearchConfig::random(k, n, opts.iterations, opts.seed).with_workers(opts.workers);
    Ok(Cell::of(random_search(&cfg)?.max_size, Status::Random))
}
