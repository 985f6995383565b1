//! Bookkeeping for simple commutators in a marker `x` and letters `a_i`:
//! multi-weights, the type `e_1 + e_2 + ... - 2m`, and the filter that kills
//! commutators with `|type| >= 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorTree {
    X,
    /// `a_i`, with `i >= 1`.
    A(u32),
    Node(Box<CommutatorTree>, Box<CommutatorTree>),
}

impl CommutatorTree {
    pub fn node(u: CommutatorTree, v: CommutatorTree) -> Self {
        CommutatorTree::Node(Box::new(u), Box::new(v))
    }

    /// `[t_1, t_2, ..., t_k]`, bracketed from the left.
    pub fn left_normed(entries: Vec<CommutatorTree>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Arity(entries.len()));
        }
        let mut it = entries.into_iter();
        let first = it.next().expect("nonempty");
        Ok(it.fold(first, CommutatorTree::node))
    }

    pub fn leaves(&self) -> usize {
        match self {
            CommutatorTree::X | CommutatorTree::A(_) => 1,
            CommutatorTree::Node(u, v) => u.leaves() + v.leaves(),
        }
    }

    /// Entries of the maximal left spine: `[[p, q], r]` gives `p, q, r`.
    fn spine(&self) -> Vec<&CommutatorTree> {
        match self {
            CommutatorTree::Node(u, v) => {
                let mut s = u.spine();
                s.push(v);
                s
            }
            leaf => vec![leaf],
        }
    }
}

impl fmt::Display for CommutatorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorTree::X => f.write_str("x"),
            CommutatorTree::A(i) => write!(f, "a{i}"),
            node => {
                f.write_str("[")?;
                for (k, t) in node.spine().into_iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str("]")
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::syntax(1, self.text[..self.pos].chars().count() + 1, message)
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn tree(&mut self) -> Result<CommutatorTree> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut entries = vec![self.tree()?];
                loop {
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            entries.push(self.tree()?);
                        }
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected `,` or `]`")),
                    }
                }
                if entries.len() < 2 {
                    return Err(Error::Arity(entries.len()));
                }
                CommutatorTree::left_normed(entries)
            }
            Some('x') => {
                self.pos += 1;
                Ok(CommutatorTree::X)
            }
            Some('a') => {
                self.pos += 1;
                let digits = self.text[self.pos..]
                    .chars()
                    .take_while(char::is_ascii_digit)
                    .count();
                let index: u32 = self.text[self.pos..self.pos + digits]
                    .parse()
                    .map_err(|_| self.err("expected a letter index after `a`"))?;
                if index == 0 {
                    return Err(self.err("letter indices start at 1"));
                }
                self.pos += digits;
                Ok(CommutatorTree::A(index))
            }
            _ => Err(self.err("expected `x`, `a<i>` or `[`")),
        }
    }
}

impl FromStr for CommutatorTree {
    type Err = Error;

    /// Accepts `x`, `a3`, left-normed lists `[x,a1,a2]` and nesting such as
    /// `[[x,a1],[x,a2]]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { text: s, pos: 0 };
        let t = p.tree()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

/// `m` counts occurrences of `x`; `e[i]` counts occurrences of `a_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MultiWeight {
    pub m: u64,
    pub e: BTreeMap<u32, u64>,
}

pub fn multi_weight(t: &CommutatorTree) -> MultiWeight {
    fn walk(t: &CommutatorTree, w: &mut MultiWeight) {
        match t {
            CommutatorTree::X => w.m += 1,
            CommutatorTree::A(i) => *w.e.entry(*i).or_default() += 1,
            CommutatorTree::Node(u, v) => {
                walk(u, w);
                walk(v, w);
            }
        }
    }
    let mut w = MultiWeight::default();
    walk(t, &mut w);
    w
}

/// `e_1 + e_2 + ... - 2m`.
pub fn commutator_type(t: &CommutatorTree) -> i64 {
    let w = multi_weight(t);
    w.e.values().sum::<u64>() as i64 - 2 * w.m as i64
}

/// True when the commutator is killed: anything but the bare `x` whose type
/// has absolute value at least 2.
pub fn relation4_filter(t: &CommutatorTree) -> bool {
    *t != CommutatorTree::X && commutator_type(t).abs() >= 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CommutatorTree {
        s.parse().unwrap()
    }

    #[test]
    fn types_of_small_trees() {
        assert_eq!(commutator_type(&CommutatorTree::X), -2);
        assert_eq!(commutator_type(&CommutatorTree::A(1)), 1);
        assert_eq!(commutator_type(&parse("[x,a1]")), -1);
        assert!(!relation4_filter(&CommutatorTree::X));
        let t4 = parse("[x,a1,a2,a3,a4]");
        assert_eq!(commutator_type(&t4), 2);
        assert!(relation4_filter(&t4));
        let t3 = parse("[x,a1,a2,a3]");
        assert_eq!(commutator_type(&t3), 1);
        assert!(!relation4_filter(&t3));
    }

    #[test]
    fn parse_and_display() {
        let t = parse(" [ [x, a1] , [x,a2], a10 ]");
        assert_eq!(t.to_string(), "[x,a1,[x,a2],a10]");
        assert_eq!(t, parse(&t.to_string()));
        assert_eq!(parse("[x,a1,a2]"), parse("[[x,a1],a2]"));
        let w = multi_weight(&t);
        assert_eq!(w.m, 2);
        assert_eq!(w.e.get(&10), Some(&1));
        assert_eq!(t.leaves(), 5);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "[x]".parse::<CommutatorTree>(),
            Err(Error::Arity(1))
        ));
        assert!(matches!(
            "[x,a0]".parse::<CommutatorTree>(),
            Err(Error::Syntax { column: 5, .. })
        ));
        assert!(matches!(
            "[x,b]".parse::<CommutatorTree>(),
            Err(Error::Syntax { column: 4, .. })
        ));
        assert!("[x,a1] x".parse::<CommutatorTree>().is_err());
        assert!("[x,a1".parse::<CommutatorTree>().is_err());
    }
}
