//! Line-oriented text format for DFAOs:
//!
//! ```text
//! # comment
//! dfao n=4 sigma=2 k=2 q0=1
//! a1: [1,3,1,3]
//! a2: [2,2,4,2]
//! tau: [1,1,1,2]
//! ```
//!
//! All indices are 1-based. Whitespace is ignored and `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::Dfao;
use crate::error::{Error, Result};
use crate::monoid::OutputMap;
use crate::transforms::{parse_list, write_list, Transformation};

impl fmt::Display for Dfao {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dfao n={} sigma={} k={} q0={}",
            self.n(),
            self.sigma(),
            self.k(),
            self.initial() + 1
        )?;
        for (i, a) in self.letters().iter().enumerate() {
            writeln!(f, "a{}: {a}", i + 1)?;
        }
        f.write_str("tau: ")?;
        write_list(f, self.tau().to_one_based().into_iter())?;
        writeln!(f)
    }
}

impl FromStr for Dfao {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses `key=value` pairs with all whitespace already removed, e.g. `n=4sigma=2k=2q0=1`.
fn parse_header(line: usize, body: &str) -> Result<BTreeMap<String, usize>> {
    let mut fields = BTreeMap::new();
    let mut rest = body;
    while !rest.is_empty() {
        let eq = rest
            .find('=')
            .ok_or_else(|| syntax(line, format!("expected `key=value` in header at `{rest}`")))?;
        let key = &rest[..eq];
        if key.is_empty() {
            return Err(syntax(line, "missing header key"));
        }
        let after = &rest[eq + 1..];
        let digits = after.len() - after.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        let value = after[..digits]
            .parse::<usize>()
            .map_err(|_| syntax(line, format!("header key `{key}` needs a number")))?;
        if fields.insert(key.to_string(), value).is_some() {
            return Err(syntax(line, format!("duplicate header key `{key}`")));
        }
        rest = &after[digits..];
    }
    Ok(fields)
}

fn parse(s: &str) -> Result<Dfao> {
    let mut header: Option<(usize, BTreeMap<String, usize>)> = None;
    let mut letters: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
    let mut tau: Option<(usize, Vec<usize>)> = None;

    for (i, raw) in s.lines().enumerate() {
        let lineno = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let compact: String = content.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            continue;
        }
        if header.is_none() {
            let body = compact
                .strip_prefix("dfao")
                .ok_or_else(|| syntax(lineno, "expected header line starting with `dfao`"))?;
            header = Some((lineno, parse_header(lineno, body)?));
            continue;
        }
        let (label, list) = compact
            .split_once(':')
            .ok_or_else(|| syntax(lineno, "expected `a<i>: [...]` or `tau: [...]`"))?;
        let values = parse_list(list).map_err(|e| syntax(lineno, e.to_string()))?;
        if label == "tau" {
            if tau.replace((lineno, values)).is_some() {
                return Err(syntax(lineno, "duplicate `tau` line"));
            }
        } else if let Some(num) = label.strip_prefix('a') {
            let letter = num
                .parse::<usize>()
                .map_err(|_| syntax(lineno, format!("bad letter label `{label}`")))?;
            if letters.insert(letter, (lineno, values)).is_some() {
                return Err(syntax(lineno, format!("duplicate letter `{label}`")));
            }
        } else {
            return Err(syntax(lineno, format!("unknown line label `{label}`")));
        }
    }

    let (hline, fields) = header.ok_or_else(|| syntax(1, "missing `dfao` header"))?;
    let get = |key: &str| {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| syntax(hline, format!("header is missing `{key}`")))
    };
    let (n, sigma, k, q0) = (get("n")?, get("sigma")?, get("k")?, get("q0")?);
    if let Some(extra) = fields
        .keys()
        .find(|key| !["n", "sigma", "k", "q0"].contains(&key.as_str()))
    {
        return Err(syntax(hline, format!("unknown header key `{extra}`")));
    }
    if n == 0 || q0 == 0 || q0 > n {
        return Err(syntax(
            hline,
            format!("need n >= 1 and 1 <= q0 <= n, got n={n}, q0={q0}"),
        ));
    }
    if k == 0 {
        return Err(syntax(hline, "need k >= 1"));
    }

    let mut actions = Vec::with_capacity(sigma);
    for letter in 1..=sigma {
        let (line, values) = letters
            .remove(&letter)
            .ok_or_else(|| syntax(hline, format!("missing line for letter a{letter}")))?;
        if values.len() != n {
            return Err(syntax(
                line,
                format!("expected {n} entries, got {}", values.len()),
            ));
        }
        actions.push(
            Transformation::from_one_based(&values).map_err(|e| syntax(line, e.to_string()))?,
        );
    }
    if let Some((&letter, &(line, _))) = letters.iter().next() {
        return Err(syntax(
            line,
            format!("letter a{letter} exceeds sigma={sigma}"),
        ));
    }
    let (tline, values) = tau.ok_or_else(|| syntax(hline, "missing `tau` line"))?;
    if values.len() != n {
        return Err(syntax(
            tline,
            format!("expected {n} entries, got {}", values.len()),
        ));
    }
    let tau = OutputMap::from_one_based(&values, k).map_err(|e| syntax(tline, e.to_string()))?;
    Dfao::new(actions, q0 - 1, tau)
}
