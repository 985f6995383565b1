use rayon::prelude::*;
use serde::Serialize;

use super::presentation::PcPresentation;
use super::word::{Exp, PcElement, PcWord};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum OverlapOutcome {
    Pass,
    Fail { left: String, right: String },
    Inconclusive { reason: String },
}

/// One overlap: the same word collected under two bracketings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapTest {
    pub overlap: String,
    #[serde(flatten)]
    pub outcome: OverlapOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub tests: Vec<OverlapTest>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.tests.iter().all(|t| t.outcome == OverlapOutcome::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &OverlapTest> {
        self.tests
            .iter()
            .filter(|t| matches!(t.outcome, OverlapOutcome::Fail { .. }))
    }

    pub fn inconclusive(&self) -> impl Iterator<Item = &OverlapTest> {
        self.tests
            .iter()
            .filter(|t| matches!(t.outcome, OverlapOutcome::Inconclusive { .. }))
    }
}

/// A bracketed product: each part is collected on its own, then the parts are
/// multiplied left to right.
type Bracketing = Vec<PcWord>;

impl PcPresentation {
    fn evaluate(&self, parts: &Bracketing) -> Result<PcElement> {
        let mut acc = self.identity();
        for part in parts {
            let x = self.collect(part)?;
            acc = self.multiply(&acc, &x)?;
        }
        Ok(acc)
    }

    fn letter(&self, g: usize, e: Exp) -> String {
        let l = self.labels[g];
        if e == 1 {
            format!("g{l}")
        } else {
            format!("g{l}^{e}")
        }
    }

    /// Runs the standard overlap tests for a power-conjugate presentation
    /// written with descending normal forms. With `o` a finite relative order:
    ///
    /// * `(g_a g_b) g_c = g_a (g_b g_c)` for `a < b < c`;
    /// * `(g_a^o) g_b = g_a^{o-1} (g_a g_b)` for `a < b`, `g_a` finite;
    /// * `(g_a g_b^{o-1}) g_b = g_a (g_b^o)` for `a < b`, `g_b` finite;
    /// * `(g_a^o) g_a = g_a (g_a^o)` for `g_a` finite;
    /// * `(g_a g_b^{-1}) g_b = g_a` for `a < b`, `g_b` infinite.
    pub fn check_consistency(&self) -> ConsistencyReport {
        let n = self.len();
        let w = |letters: &[(usize, Exp)]| PcWord::from_letters(letters.iter().copied());
        let mut cases: Vec<(String, Bracketing, Bracketing)> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    cases.push((
                        format!(
                            "({} {}) {} = {} ({} {})",
                            self.letter(a, 1),
                            self.letter(b, 1),
                            self.letter(c, 1),
                            self.letter(a, 1),
                            self.letter(b, 1),
                            self.letter(c, 1)
                        ),
                        vec![w(&[(a, 1), (b, 1)]), w(&[(c, 1)])],
                        vec![w(&[(a, 1)]), w(&[(b, 1), (c, 1)])],
                    ));
                }
            }
        }
        for a in 0..n {
            let oa = self.rel_orders[a] as Exp;
            for b in a + 1..n {
                let ob = self.rel_orders[b] as Exp;
                if oa != 0 {
                    cases.push((
                        format!(
                            "({}) {} = {} ({} {})",
                            self.letter(a, oa),
                            self.letter(b, 1),
                            self.letter(a, oa - 1),
                            self.letter(a, 1),
                            self.letter(b, 1)
                        ),
                        vec![w(&[(a, oa)]), w(&[(b, 1)])],
                        vec![w(&[(a, oa - 1)]), w(&[(a, 1), (b, 1)])],
                    ));
                }
                if ob != 0 {
                    cases.push((
                        format!(
                            "({} {}) {} = {} ({})",
                            self.letter(a, 1),
                            self.letter(b, ob - 1),
                            self.letter(b, 1),
                            self.letter(a, 1),
                            self.letter(b, ob)
                        ),
                        vec![w(&[(a, 1), (b, ob - 1)]), w(&[(b, 1)])],
                        vec![w(&[(a, 1)]), w(&[(b, ob)])],
                    ));
                } else {
                    cases.push((
                        format!(
                            "({} {}) {} = {}",
                            self.letter(a, 1),
                            self.letter(b, -1),
                            self.letter(b, 1),
                            self.letter(a, 1)
                        ),
                        vec![w(&[(a, 1), (b, -1)]), w(&[(b, 1)])],
                        vec![w(&[(a, 1)])],
                    ));
                }
            }
            if oa != 0 {
                cases.push((
                    format!(
                        "({}) {} = {} ({})",
                        self.letter(a, oa),
                        self.letter(a, 1),
                        self.letter(a, 1),
                        self.letter(a, oa)
                    ),
                    vec![w(&[(a, oa)]), w(&[(a, 1)])],
                    vec![w(&[(a, 1)]), w(&[(a, oa)])],
                ));
            }
        }

        let tests = cases
            .into_par_iter()
            .map(|(overlap, left, right)| {
                let outcome = match (self.evaluate(&left), self.evaluate(&right)) {
                    (Ok(l), Ok(r)) if l == r => OverlapOutcome::Pass,
                    (Ok(l), Ok(r)) => OverlapOutcome::Fail {
                        left: self.format_element(&l),
                        right: self.format_element(&r),
                    },
                    (Err(e), _) | (_, Err(e)) => OverlapOutcome::Inconclusive {
                        reason: e.to_string(),
                    },
                };
                OverlapTest { overlap, outcome }
            })
            .collect();
        ConsistencyReport { tests }
    }
}

#[cfg(test)]
mod tests {
    use crate::pc::{parse_presentation, OverlapOutcome};

    #[test]
    fn dihedral_group_is_consistent() {
        let p = parse_presentation("pcgroup d8\nngens 3\norders 2 2 2\nconj 2 3 := g2 g1\nend\n")
            .unwrap();
        let r = p.check_consistency();
        assert!(r.is_consistent());
        assert!(!r.tests.is_empty());
    }

    #[test]
    fn detects_a_bad_power_relation() {
        // g2 of relative order 2 with g2^2 = g1, but g2 inverts g1 of order 4:
        // then g1 = g1^{g2} must equal g1^-1, which fails.
        let p = parse_presentation(
            "pcgroup bad\nngens 2\norders 4 2\npow 2 := g1\nconj 1 2 := g1^3\nend\n",
        )
        .unwrap();
        let r = p.check_consistency();
        assert!(!r.is_consistent());
        let f = r.failures().next().unwrap();
        assert!(matches!(f.outcome, OverlapOutcome::Fail { .. }));
    }

    #[test]
    fn quaternion_relation_is_consistent() {
        let p = parse_presentation(
            "pcgroup q8\nngens 3\norders 2 2 2\npow 2 := g1\npow 3 := g1\nconj 2 3 := g2 g1\nend\n",
        )
        .unwrap();
        assert!(p.check_consistency().is_consistent());
    }
}
