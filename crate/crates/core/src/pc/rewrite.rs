//! A plain word-rewriting collector with a choice of reduction site.
//!
//! Much slower than the stack collector; it exists so that normal forms can be
//! cross-checked against an independent reduction order.

use super::presentation::PcPresentation;
use super::word::{Exp, PcElement, PcWord};
use crate::error::{Error, Result};

/// Which reducible site to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SitePolicy {
    Leftmost,
    Rightmost,
}

impl PcPresentation {
    /// Collects `w` by repeatedly rewriting a single site of the word.
    pub fn collect_by_rewriting(&self, w: &PcWord, policy: SitePolicy) -> Result<PcElement> {
        let mut word: Vec<(usize, Exp)> = w.letters().to_vec();
        let mut steps = 0u64;
        loop {
            let site = match policy {
                SitePolicy::Leftmost => (0..word.len()).find(|&k| self.reducible(&word, k)),
                SitePolicy::Rightmost => (0..word.len()).rev().find(|&k| self.reducible(&word, k)),
            };
            let Some(k) = site else { break };
            steps += 1;
            if steps > self.fuel || word.len() as u64 > self.fuel {
                return Err(Error::FuelExhausted {
                    steps,
                    partial: self.format_word(&PcWord::from_letters(word)),
                });
            }
            let replacement = self.rewrite_site(&word, k)?;
            let end = if self.exponent_out_of_range(word[k]) {
                k + 1
            } else {
                k + 2
            };
            word.splice(k..end, replacement);
        }
        let mut exps = vec![0; self.len()];
        for (g, e) in word {
            exps[g] = e;
        }
        self.element(&exps)
    }

    fn exponent_out_of_range(&self, (g, e): (usize, Exp)) -> bool {
        let o = self.rel_orders[g] as Exp;
        o != 0 && !(0..o).contains(&e)
    }

    /// A site `k` is either a single letter with a non-canonical exponent or
    /// an adjacent pair `k, k+1` that is out of descending order.
    fn reducible(&self, word: &[(usize, Exp)], k: usize) -> bool {
        if self.exponent_out_of_range(word[k]) {
            return true;
        }
        let Some(&(h, _)) = word.get(k + 1) else {
            return false;
        };
        let (g, _) = word[k];
        // A finite letter with a negative exponent is normalized before it is
        // moved, since only positive conjugation by it is available.
        g == h || (g < h && !self.exponent_out_of_range(word[k + 1]))
    }

    fn rewrite_site(&self, word: &[(usize, Exp)], k: usize) -> Result<Vec<(usize, Exp)>> {
        let (g, e) = word[k];
        let mut out = Vec::new();
        if self.exponent_out_of_range((g, e)) {
            let o = self.rel_orders[g] as Exp;
            let (q, r) = (e.div_euclid(o), e.rem_euclid(o));
            if r != 0 {
                out.push((g, r));
            }
            if let Some(p) = &self.powers[g] {
                append_power(&mut out, p, q, self.fuel)?;
            }
            return Ok(out);
        }
        let (h, f) = word[k + 1];
        if g == h {
            let t = e.checked_add(f).ok_or(Error::ExponentOverflow)?;
            if t != 0 {
                out.push((g, t));
            }
            return Ok(out);
        }
        // x_g^e x_h^f with g < h: x_h^s (x_g^{x_h^s})^e x_h^{f-s}
        let s = f.signum();
        out.push((h, s));
        let conj = if s > 0 {
            &self.conj[h][g]
        } else {
            &self.conj_inv[h][g]
        };
        match conj {
            None => out.push((g, e)),
            Some(c) => append_power(&mut out, c, e, self.fuel)?,
        }
        if f != s {
            out.push((h, f - s));
        }
        Ok(out)
    }
}

fn append_power(out: &mut Vec<(usize, Exp)>, w: &PcWord, times: Exp, fuel: u64) -> Result<()> {
    if times.unsigned_abs().saturating_mul(w.len() as u64) > fuel {
        return Err(Error::FuelExhausted {
            steps: 0,
            partial: String::from("power expansion exceeds the fuel budget"),
        });
    }
    let block = if times > 0 { w.clone() } else { w.inverse() };
    for _ in 0..times.unsigned_abs() {
        out.extend_from_slice(block.letters());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    #[test]
    fn agrees_with_the_stack_collector() {
        let p = builtin("r_inv").unwrap().presentation;
        for text in ["g12 g14", "g14 g13 g12 g14 g13", "g8 g8 g7 g14 g11", "id"] {
            let w = p.parse_word(text).unwrap();
            let expected = p.collect(&w).unwrap();
            for policy in [SitePolicy::Leftmost, SitePolicy::Rightmost] {
                assert_eq!(
                    p.collect_by_rewriting(&w, policy).unwrap(),
                    expected,
                    "{text}"
                );
            }
        }
    }
}
