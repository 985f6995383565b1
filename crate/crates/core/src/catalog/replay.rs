//! Commutator identities that follow from a presentation's relations alone,
//! replayed by collection.

use serde::Serialize;

use super::{builtin, Source};
use crate::error::{Error, Result};
use crate::expr::evaluate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayItem {
    /// Group expression in generator labels, e.g. `[g11, g14, g14]`.
    pub input: &'static str,
    /// Expected normal form, in word syntax.
    pub expected: &'static str,
    pub source: Source,
}

const fn item(input: &'static str, expected: &'static str, source: Source) -> ReplayItem {
    ReplayItem {
        input,
        expected,
        source,
    }
}

pub const REPLAY_SUITES: [&str; 4] = ["r_inv", "beta", "gamma", "all"];

pub(super) fn items(key: &str) -> Vec<ReplayItem> {
    use Source::*;
    match key {
        "r_inv" => vec![
            item("[g11, g14, g14]", "g2", Published),
            item("[g11, g14]", "g8 g7 g6 g5 g4 g2", Published),
            item("[g8 g7 g6 g5 g4 g2, g14]", "g2", Published),
            item("[g12, g13]", "g11", Published),
            item("[g12, g14]", "g9", Published),
            item("[g13, g14]", "g10", Published),
            item("g7^2", "g1", Published),
            item("g8^2", "g2 g1", Published),
        ],
        "beta" => vec![
            item("[g10, g28]", "g9", Published),
            item("[g10, g12]", "g3", Published),
            item("[g9, g19]", "g6 g5", Published),
            item("[g9, g22]", "g7 g5", Published),
            item("[g9, g20]", "g7 g4", Published),
            item("[g9, g18]", "g6 g4", Published),
            item("[g10, g11]", "g1", Published),
            item("[g10, g14]", "g2", Published),
            item("[g12, g19]", "g6", Published),
            item("g12 g12^g26", "g11", Published),
            item("g6^g27", "g7", Published),
            item("[g5, g26 g27]", "g5 g4", Published),
            item("[g13, g26 g27]", "id", Published),
            item("[g13, g18]", "g4", Published),
            item(
                "(g17 g15)^g23 g12^(g22 g23) g12^g26 (g17 g16 g15)^g22",
                "g16 g11 g2 g1",
                Published,
            ),
            item("(g16 g11 g2 g1)^g27", "g16 g11 g2", Published),
        ],
        "gamma" => vec![
            item("[g15, g18]", "g12", Published),
            item("[g12, g19]", "g11 g8", Published),
            item("[g11, g18]", "g8", Published),
            item("[g8, g13]", "g2", Published),
            item("[g8, g14]", "g4", Published),
            item("[g8, g17]", "g6", Published),
            item("[g14, g19]", "g13 g10", Published),
            item("[g13 g10, g18]", "g10", Published),
            item("[g3 g1, g20]", "g1", Published),
            item("[g15, g13]", "g7", Published),
        ],
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayOutcome {
    pub group: String,
    pub input: String,
    pub expected: String,
    pub computed: Option<String>,
    pub source: Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub suite: String,
    pub items: Vec<ReplayOutcome>,
    pub mismatches: usize,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Evaluates every item of a suite (`r_inv`, `beta`, `gamma` or `all`).
/// Mismatches are reported, not raised.
pub fn lemma_replay(suite: &str) -> Result<ReplayReport> {
    let keys: &[&str] = match suite {
        "all" => &["r_inv", "beta", "gamma"],
        "r_inv" => &["r_inv"],
        "beta" => &["beta"],
        "gamma" => &["gamma"],
        _ => return Err(Error::UnknownKey(suite.to_string())),
    };
    let mut out = Vec::new();
    for &key in keys {
        let entry = builtin(key)?;
        let p = &entry.presentation;
        for it in &entry.replay_items {
            let computed = evaluate(p, it.input);
            let expected = p.parse_element(it.expected);
            let (computed, error, matches) = match (computed, expected) {
                (Ok(c), Ok(e)) => (Some(p.format_element(&c)), None, c == e),
                (Ok(c), Err(e)) => (Some(p.format_element(&c)), Some(e.to_string()), false),
                (Err(e), _) => (None, Some(e.to_string()), false),
            };
            out.push(ReplayOutcome {
                group: key.to_string(),
                input: it.input.to_string(),
                expected: it.expected.to_string(),
                computed,
                source: it.source,
                error,
                matches,
            });
        }
    }
    let mismatches = out.iter().filter(|o| !o.matches).count();
    Ok(ReplayReport {
        suite: suite.to_string(),
        items: out,
        mismatches,
    })
}
