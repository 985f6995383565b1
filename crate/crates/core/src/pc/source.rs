//! Text form of presentations and words.
//!
//! ```text
//! # comment
//! pcgroup d8
//! ngens 3
//! orders 2 2 2
//! conj 2 3 := g2 g1
//! end
//! ```
//!
//! An optional `labels l_1 ... l_n` line after `ngens` renames the generators;
//! relation indices and `g<k>` letters then refer to these labels.

use std::fmt::Write as _;

use super::presentation::{PcBuilder, PcPresentation};
use super::word::{Exp, PcElement, PcWord};
use crate::error::{Error, Result};

/// Parses `id` or a sequence of `g<k>[^<e>]` letters into (label, exponent)
/// pairs. Errors carry a 1-based column relative to `text`.
pub(crate) fn parse_letters(text: &str) -> std::result::Result<Vec<(u32, Exp)>, (usize, String)> {
    let trimmed = text.trim();
    if trimmed == "id" {
        return Ok(Vec::new());
    }
    if trimmed.is_empty() {
        return Err((1, "expected a word or `id`".into()));
    }
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let number =
        |i: &mut usize, allow_sign: bool| -> std::result::Result<String, (usize, String)> {
            let start = *i;
            let mut s = String::new();
            if allow_sign && *i < chars.len() && (chars[*i] == '-' || chars[*i] == '+') {
                s.push(chars[*i]);
                *i += 1;
            }
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                s.push(chars[*i]);
                *i += 1;
            }
            if s.is_empty() || s == "-" || s == "+" {
                return Err((start + 1, "expected a number".into()));
            }
            Ok(s)
        };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != 'g' {
            return Err((
                i + 1,
                format!("unexpected character `{c}`, expected `g<k>`"),
            ));
        }
        i += 1;
        let col = i + 1;
        let label: u32 = number(&mut i, false)?
            .parse()
            .map_err(|_| (col, "generator index out of range".to_string()))?;
        let mut exp: Exp = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let col = i + 1;
            exp = number(&mut i, true)?
                .parse()
                .map_err(|_| (col, "exponent out of range".to_string()))?;
        }
        out.push((label, exp));
    }
    Ok(out)
}

impl PcPresentation {
    /// Parses a word such as `g14 g12^-1` against this presentation's labels.
    pub fn parse_word(&self, text: &str) -> Result<PcWord> {
        let letters = parse_letters(text).map_err(|(col, msg)| Error::syntax(1, col, msg))?;
        let mut w = PcWord::identity();
        for (label, e) in letters {
            let pos = self
                .position(label)
                .ok_or_else(|| Error::UnknownGenerator {
                    presentation: self.name.clone(),
                    label,
                })?;
            w.push(pos, e);
        }
        Ok(w)
    }

    /// Parses and collects a word.
    pub fn parse_element(&self, text: &str) -> Result<PcElement> {
        self.collect(&self.parse_word(text)?)
    }

    pub fn format_word(&self, w: &PcWord) -> String {
        if w.is_empty() {
            return "id".into();
        }
        let mut s = String::new();
        for (k, &(g, e)) in w.letters().iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            let label = self.labels.get(g).copied().unwrap_or(g as u32 + 1);
            let _ = write!(s, "g{label}");
            if e != 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    /// Normal form in descending order, e.g. `g14 g12 g9`.
    pub fn format_element(&self, a: &PcElement) -> String {
        self.format_word(&a.to_word())
    }

    /// Canonical source text; parsing it gives back an equal presentation.
    pub fn to_source(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pcgroup {}", self.name);
        let _ = writeln!(s, "ngens {}", self.len());
        let default_labels = self
            .labels
            .iter()
            .enumerate()
            .all(|(i, &l)| l == i as u32 + 1);
        if !default_labels {
            let labels: Vec<String> = self.labels.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "labels {}", labels.join(" "));
        }
        let orders: Vec<String> = self.rel_orders.iter().map(u64::to_string).collect();
        if orders.is_empty() {
            let _ = writeln!(s, "orders");
        } else {
            let _ = writeln!(s, "orders {}", orders.join(" "));
        }
        for (i, p) in self.powers.iter().enumerate() {
            if let Some(w) = p {
                let _ = writeln!(s, "pow {} := {}", self.labels[i], self.format_word(w));
            }
        }
        for j in 0..self.len() {
            for i in j + 1..self.len() {
                if let Some(w) = &self.conj[i][j] {
                    let _ = writeln!(
                        s,
                        "conj {} {} := {}",
                        self.labels[j],
                        self.labels[i],
                        self.format_word(w)
                    );
                }
            }
        }
        s.push_str("end\n");
        s
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((idx, byte)),
            (true, Some((col, b))) => {
                out.push((col + 1, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, b)) = start {
        out.push((col + 1, &line[b..]));
    }
    out
}

fn parse_num<T: std::str::FromStr>(
    line: usize,
    (col, tok): (usize, &str),
    what: &str,
) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::syntax(line, col, format!("expected {what}, found `{tok}`")))
}

type LabelWord = Vec<(u32, Exp)>;

/// Parses presentation source text.
pub fn parse_presentation(text: &str) -> Result<PcPresentation> {
    let mut name: Option<String> = None;
    let mut n: Option<usize> = None;
    let mut labels: Option<Vec<u32>> = None;
    let mut orders: Option<Vec<u64>> = None;
    // Relations keep their source line and use labels until all are read.
    let mut powers: Vec<(usize, u32, LabelWord)> = Vec::new();
    let mut conjs: Vec<(usize, u32, u32, LabelWord)> = Vec::new();
    let mut ended = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, kw)) = toks.first() else {
            continue;
        };
        if ended {
            return Err(Error::syntax(line_no, col, "content after `end`"));
        }
        let need = |what: &str, have: bool| -> Result<()> {
            if have {
                Ok(())
            } else {
                Err(Error::syntax(
                    line_no,
                    col,
                    format!("`{kw}` must follow `{what}`"),
                ))
            }
        };
        match kw {
            "pcgroup" => {
                if name.is_some() {
                    return Err(Error::syntax(line_no, col, "duplicate `pcgroup` line"));
                }
                if toks.len() != 2 {
                    return Err(Error::syntax(line_no, col, "expected `pcgroup <name>`"));
                }
                let (ncol, id) = toks[1];
                if !id
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
                {
                    return Err(Error::syntax(
                        line_no,
                        ncol,
                        format!("invalid group name `{id}`"),
                    ));
                }
                name = Some(id.to_string());
            }
            "ngens" => {
                need("pcgroup", name.is_some())?;
                if n.is_some() || toks.len() != 2 {
                    return Err(Error::syntax(
                        line_no,
                        col,
                        "expected a single `ngens <n>` line",
                    ));
                }
                n = Some(parse_num(line_no, toks[1], "a generator count")?);
            }
            "labels" => {
                need("ngens", n.is_some())?;
                if labels.is_some() || orders.is_some() {
                    return Err(Error::syntax(
                        line_no,
                        col,
                        "`labels` must come once, before `orders`",
                    ));
                }
                let ls: Vec<u32> = toks[1..]
                    .iter()
                    .map(|&t| parse_num(line_no, t, "a label"))
                    .collect::<Result<_>>()?;
                if ls.len() != n.unwrap_or(0) {
                    return Err(Error::syntax(
                        line_no,
                        col,
                        format!("expected {} labels, found {}", n.unwrap_or(0), ls.len()),
                    ));
                }
                if ls.windows(2).any(|w| w[0] >= w[1]) || ls.first() == Some(&0) {
                    return Err(Error::syntax(
                        line_no,
                        col,
                        "labels must be positive and strictly increasing",
                    ));
                }
                labels = Some(ls);
            }
            "orders" => {
                need("ngens", n.is_some())?;
                if orders.is_some() {
                    return Err(Error::syntax(line_no, col, "duplicate `orders` line"));
                }
                let os: Vec<u64> = toks[1..]
                    .iter()
                    .map(|&t| {
                        let o: u64 = parse_num(line_no, t, "a relative order")?;
                        if o == 1 || o > i64::MAX as u64 {
                            return Err(Error::syntax(
                                line_no,
                                t.0,
                                "relative order must be 0 or at least 2",
                            ));
                        }
                        Ok(o)
                    })
                    .collect::<Result<_>>()?;
                if os.len() != n.unwrap_or(0) {
                    return Err(Error::syntax(
                        line_no,
                        col,
                        format!(
                            "expected {} relative orders, found {}",
                            n.unwrap_or(0),
                            os.len()
                        ),
                    ));
                }
                orders = Some(os);
            }
            "pow" | "conj" => {
                need("orders", orders.is_some())?;
                let Some(assign) = line.find(":=") else {
                    return Err(Error::syntax(line_no, col, "expected `:=`"));
                };
                let head = tokens(&line[..assign]);
                let want = if kw == "pow" { 2 } else { 3 };
                if head.len() != want {
                    return Err(Error::syntax(
                        line_no,
                        col,
                        format!("malformed `{kw}` relation"),
                    ));
                }
                let rhs_offset = line[..assign + 2].chars().count();
                let letters = parse_letters(&line[assign + 2..])
                    .map_err(|(c, m)| Error::syntax(line_no, rhs_offset + c, m))?;
                if kw == "pow" {
                    let i: u32 = parse_num(line_no, head[1], "a generator index")?;
                    powers.push((line_no, i, letters));
                } else {
                    let j: u32 = parse_num(line_no, head[1], "a generator index")?;
                    let i: u32 = parse_num(line_no, head[2], "a generator index")?;
                    conjs.push((line_no, j, i, letters));
                }
            }
            "end" => {
                need("orders", orders.is_some())?;
                if toks.len() != 1 {
                    return Err(Error::syntax(
                        line_no,
                        toks[1].0,
                        "unexpected token after `end`",
                    ));
                }
                ended = true;
            }
            other => {
                return Err(Error::syntax(
                    line_no,
                    col,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    if !ended {
        return Err(Error::syntax(last_line + 1, 1, "missing `end`"));
    }

    let name = name.unwrap_or_default();
    let orders = orders.unwrap_or_default();
    let labels = labels.unwrap_or_else(|| (1..=orders.len() as u32).collect());
    let pos_of = |label: u32, line: usize| -> Result<usize> {
        labels.binary_search(&label).map_err(|_| {
            Error::IndexRange(format!("line {line}: generator g{label} is not defined"))
        })
    };
    let to_word = |letters: &[(u32, Exp)], line: usize| -> Result<PcWord> {
        let mut w = PcWord::identity();
        for &(l, e) in letters {
            w.push(pos_of(l, line)?, e);
        }
        Ok(w)
    };

    let mut b = PcBuilder::new(name, orders).labels(labels.clone());
    let mut seen_pow = std::collections::BTreeSet::new();
    for (line, label, letters) in &powers {
        let i = pos_of(*label, *line)?;
        if !seen_pow.insert(i) {
            return Err(Error::syntax(
                *line,
                1,
                format!("duplicate power relation for g{label}"),
            ));
        }
        b = b.power(i, to_word(letters, *line)?);
    }
    let mut seen_conj = std::collections::BTreeSet::new();
    for (line, j, i, letters) in &conjs {
        let (jp, ip) = (pos_of(*j, *line)?, pos_of(*i, *line)?);
        if !seen_conj.insert((jp, ip)) {
            return Err(Error::syntax(
                *line,
                1,
                format!("duplicate relation `conj {j} {i}`"),
            ));
        }
        b = b.conj(jp, ip, to_word(letters, *line)?);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c2() {
        let p = parse_presentation("pcgroup c2\nngens 1\norders 2\nend\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.to_source(), "pcgroup c2\nngens 1\norders 2\nend\n");
    }

    #[test]
    fn rejects_rhs_at_or_above_conjugator() {
        let src = "pcgroup bad\nngens 5\norders 2 2 2 2 2\nconj 4 2 := g5\nend\n";
        match parse_presentation(src) {
            Err(Error::RhsIndex {
                offending, bound, ..
            }) => assert_eq!((offending, bound), (5, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_line_and_column() {
        let src = "pcgroup x\nngens 2\norders 2 2\nconj 1 2 := g1 h2\nend\n";
        match parse_presentation(src) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (4, 16)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_presentation("pcgroup x\nngens 1\norders 2\n"),
            Err(Error::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_presentation("pcgroup x\nngens 2\norders 2\nend\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn undefined_generator_is_an_index_error() {
        let src = "pcgroup x\nngens 2\norders 2 2\npow 2 := g7\nend\n";
        assert!(matches!(parse_presentation(src), Err(Error::IndexRange(_))));
        let src = "pcgroup x\nngens 2\norders 2 2\npow 3 := g1\nend\n";
        assert!(matches!(parse_presentation(src), Err(Error::IndexRange(_))));
    }

    #[test]
    fn word_syntax() {
        assert_eq!(parse_letters("id").unwrap(), vec![]);
        assert_eq!(
            parse_letters("g3^-2 g1g2^+4").unwrap(),
            vec![(3, -2), (1, 1), (2, 4)]
        );
        assert!(parse_letters("g").is_err());
        assert!(parse_letters("x1").is_err());
        assert!(parse_letters("").is_err());
    }

    #[test]
    fn custom_labels_round_trip() {
        let src = "pcgroup t\nngens 2\nlabels 2 5\norders 2 2\nconj 2 5 := g2\nend\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(p.labels(), &[2, 5]);
        assert_eq!(
            p.to_source(),
            "pcgroup t\nngens 2\nlabels 2 5\norders 2 2\nend\n"
        );
        assert!(p.parse_word("g1").is_err());
    }
}
