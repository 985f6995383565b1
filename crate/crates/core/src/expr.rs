//! Group expressions over a presentation's generators.
//!
//! ```text
//! expr   := factor+                      product by juxtaposition
//! factor := atom ('^' (int | atom))*     power or conjugate
//! atom   := id | g<k> | (expr) | [expr, expr, ...]
//! ```
//!
//! Brackets are left-normed commutators: `[a, b, c] = [[a, b], c]`.

use crate::error::{Error, Result};
use crate::pc::{Exp, PcElement, PcPresentation};

struct Parser<'a> {
    p: &'a PcPresentation,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::syntax(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some('g' | '(' | '[' | 'i'))
    }

    fn expr(&mut self) -> Result<PcElement> {
        if !self.starts_atom() {
            return Err(self.err("expected an expression"));
        }
        let mut acc = self.factor()?;
        while self.starts_atom() {
            let f = self.factor()?;
            acc = self.p.multiply(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PcElement> {
        let mut base = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            match self.peek() {
                Some(c) if c == '-' || c == '+' || c.is_ascii_digit() => {
                    let k = self.integer()?;
                    base = self.p.power(&base, k)?;
                }
                _ => {
                    let g = self.atom()?;
                    base = self.p.conjugate(&base, &g)?;
                }
            }
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Exp> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn atom(&mut self) -> Result<PcElement> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let mut items = vec![self.expr()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                self.expect(']')?;
                self.p.left_normed_commutator(&items)
            }
            Some('i') => {
                if self.chars.get(self.pos + 1) == Some(&'d') {
                    self.pos += 2;
                    Ok(self.p.identity())
                } else {
                    Err(self.err("expected `id`"))
                }
            }
            Some('g') => {
                self.pos += 1;
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let label: u32 = s.parse().map_err(|_| {
                    self.pos = start;
                    self.err("expected a generator index")
                })?;
                self.p.gen(label)
            }
            _ => Err(self.err("expected `g<k>`, `id`, `(` or `[`")),
        }
    }
}

/// Evaluates an expression such as `[g11, g14, g14]` or `(g17 g15)^g23`.
pub fn evaluate(p: &PcPresentation, text: &str) -> Result<PcElement> {
    let mut parser = Parser {
        p,
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_presentation;

    fn d8() -> PcPresentation {
        parse_presentation("pcgroup d8\nngens 3\norders 2 2 2\nconj 2 3 := g2 g1\nend\n").unwrap()
    }

    #[test]
    fn evaluates_products_powers_and_commutators() {
        let p = d8();
        let e = |s: &str| p.format_element(&evaluate(&p, s).unwrap());
        assert_eq!(e("[g2, g3]"), "g1");
        assert_eq!(e("g2^g3"), "g2 g1");
        assert_eq!(e("(g2 g3)^2"), "g1");
        assert_eq!(e("(g2 g3)^-1"), "g3 g2");
        assert_eq!(e("[g2, g3, g2]"), "id");
        assert_eq!(e("g3g2"), "g3 g2");
        assert_eq!(e("id"), "id");
    }

    #[test]
    fn rejects_malformed_input() {
        let p = d8();
        assert!(matches!(evaluate(&p, "[g2]"), Err(Error::Arity(1))));
        assert!(matches!(
            evaluate(&p, "g2 )"),
            Err(Error::Syntax { column: 4, .. })
        ));
        assert!(matches!(
            evaluate(&p, "g9"),
            Err(Error::UnknownGenerator { label: 9, .. })
        ));
        assert!(evaluate(&p, "").is_err());
    }
}
