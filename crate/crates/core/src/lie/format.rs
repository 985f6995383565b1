//! Text form of Lie algebras.
//!
//! ```text
//! char 2
//! dim 4
//! basis x u v w
//! 1 4 : 2^1
//! end
//! ```
//!
//! Each product line `i j : k^c ...` gives `e_i e_j` for `i < j` (1-based);
//! omitted products are zero and `^1` may be left out.

use std::fmt::Write as _;

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};

pub fn to_source(l: &LieAlgebra) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "char {}", l.characteristic());
    let _ = writeln!(s, "dim {}", l.dim());
    let _ = writeln!(s, "basis {}", l.names().join(" "));
    for (i, j, v) in l.products() {
        let terms: Vec<String> = v.iter().map(|&(k, c)| format!("{}^{c}", k + 1)).collect();
        let _ = writeln!(s, "{} {} : {}", i + 1, j + 1, terms.join(" "));
    }
    s.push_str("end\n");
    s
}

fn number<T: std::str::FromStr>(line: usize, col: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::syntax(line, col, format!("expected a number, found `{tok}`")))
}

/// Column (1-based) of the token at byte offset `at`.
fn column(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut rest = line;
    let mut offset = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        out.push((column(line, offset + start), &tail[..len]));
        offset += start + len;
        rest = &rest[start + len..];
    }
    out
}

pub fn parse_lie(text: &str) -> Result<LieAlgebra> {
    let mut p: Option<u64> = None;
    let mut dim: Option<usize> = None;
    let mut alg: Option<LieAlgebra> = None;
    let mut ended = false;
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last = ln;
        let line = raw.split('#').next().unwrap_or("");
        let toks = words(line);
        let Some(&(col, kw)) = toks.first() else {
            continue;
        };
        if ended {
            return Err(Error::syntax(ln, col, "content after `end`"));
        }
        match kw {
            "char" if toks.len() == 2 && p.is_none() => p = Some(number(ln, toks[1].0, toks[1].1)?),
            "dim" if toks.len() == 2 && dim.is_none() => {
                dim = Some(number(ln, toks[1].0, toks[1].1)?)
            }
            "basis" if alg.is_none() => {
                let (Some(p), Some(d)) = (p, dim) else {
                    return Err(Error::syntax(
                        ln,
                        col,
                        "`basis` must follow `char` and `dim`",
                    ));
                };
                let names: Vec<String> = toks[1..].iter().map(|t| t.1.to_string()).collect();
                if names.len() != d {
                    return Err(Error::syntax(
                        ln,
                        col,
                        format!("expected {d} basis names, found {}", names.len()),
                    ));
                }
                let mut seen = std::collections::BTreeSet::new();
                if let Some(t) = toks[1..].iter().find(|t| !seen.insert(t.1)) {
                    return Err(Error::syntax(
                        ln,
                        t.0,
                        format!("duplicate basis name `{}`", t.1),
                    ));
                }
                alg = Some(
                    LieAlgebra::new(p, names).map_err(|e| Error::syntax(ln, col, e.to_string()))?,
                );
            }
            "end" if toks.len() == 1 => {
                if alg.is_none() {
                    return Err(Error::syntax(ln, col, "missing header before `end`"));
                }
                ended = true;
            }
            _ if kw.chars().all(|c| c.is_ascii_digit()) => {
                let Some(l) = alg.as_mut() else {
                    return Err(Error::syntax(ln, col, "product line before `basis`"));
                };
                if toks.len() < 3 || toks[2].1 != ":" {
                    return Err(Error::syntax(ln, col, "expected `i j : k^c ...`"));
                }
                let i: usize = number(ln, toks[0].0, toks[0].1)?;
                let j: usize = number(ln, toks[1].0, toks[1].1)?;
                let n = l.dim();
                let in_range = |x: usize| (1..=n).contains(&x);
                if !in_range(i) || !in_range(j) {
                    return Err(Error::IndexRange(format!(
                        "line {ln}: basis index outside 1..{n}"
                    )));
                }
                if i >= j {
                    return Err(Error::syntax(ln, col, "products are listed with i < j"));
                }
                let mut terms = Vec::new();
                for &(tc, t) in &toks[3..] {
                    let (k, c) = match t.split_once('^') {
                        Some((k, c)) => (number::<usize>(ln, tc, k)?, number::<u64>(ln, tc, c)?),
                        None => (number::<usize>(ln, tc, t)?, 1),
                    };
                    if !in_range(k) {
                        return Err(Error::IndexRange(format!(
                            "line {ln}: basis index {k} outside 1..{n}"
                        )));
                    }
                    terms.push((k - 1, c));
                }
                l.set_product(i - 1, j - 1, &terms)?;
            }
            _ => return Err(Error::syntax(ln, col, format!("unexpected `{kw}`"))),
        }
    }
    if !ended {
        return Err(Error::syntax(last + 1, 1, "missing `end`"));
    }
    Ok(alg.expect("checked at end"))
}
