//! Collection from the left with an explicit stack of pending letters.
//!
//! The state is a collected prefix (an exponent vector) followed by the
//! pending letters on the stack, top first. A letter `x_j^e` is absorbed
//! directly when every prefix exponent below `j` is zero; otherwise one copy of
//! `x_j^{±1}` is moved to the left past the tail, which is re-queued as its
//! conjugate.

use super::presentation::PcPresentation;
use super::word::{Exp, PcElement, PcWord};
use crate::error::{Error, Result};

pub(crate) struct Collector<'a> {
    pres: &'a PcPresentation,
    exps: Vec<Exp>,
    stack: Vec<(usize, Exp)>,
    steps: u64,
}

impl<'a> Collector<'a> {
    pub(crate) fn new(pres: &'a PcPresentation, exps: Vec<Exp>) -> Self {
        Self {
            pres,
            exps,
            stack: Vec::new(),
            steps: 0,
        }
    }

    /// Queues a single letter to be processed before anything queued earlier.
    pub(crate) fn push_letter(&mut self, g: usize, e: Exp) {
        self.stack.push((g, e));
    }

    /// Queues `w^times` so that it is processed before anything queued earlier.
    pub(crate) fn push_word(&mut self, w: &PcWord, times: Exp) -> Result<()> {
        if times == 0 || w.is_empty() {
            return Ok(());
        }
        let count = times.unsigned_abs();
        let budget = self.pres.fuel.saturating_sub(self.steps);
        if count.saturating_mul(w.len() as u64) > budget {
            return Err(self.exhausted());
        }
        for _ in 0..count {
            if times > 0 {
                self.stack.extend(w.letters().iter().rev().copied());
            } else {
                self.stack.extend(w.letters().iter().map(|&(g, e)| (g, -e)));
            }
        }
        Ok(())
    }

    fn exhausted(&self) -> Error {
        let mut partial = PcWord::from_letters(self.exps.iter().copied().enumerate().rev());
        for &(g, e) in self.stack.iter().rev() {
            partial.push(g, e);
        }
        Error::FuelExhausted {
            steps: self.steps,
            partial: self.pres.format_word(&partial),
        }
    }

    pub(crate) fn run(mut self) -> Result<PcElement> {
        let pres = self.pres;
        while let Some((j, e)) = self.stack.pop() {
            if e == 0 {
                continue;
            }
            self.steps += 1;
            if self.steps > pres.fuel {
                self.stack.push((j, e));
                return Err(self.exhausted());
            }
            let o = pres.rel_orders[j] as Exp;
            if o != 0 && !(0..o).contains(&e) {
                // x_j^e = x_j^r (x_j^o)^q
                let (q, r) = (e.div_euclid(o), e.rem_euclid(o));
                if let Some(pw) = &pres.powers[j] {
                    self.push_word(pw, q)?;
                }
                self.stack.push((j, r));
                continue;
            }
            if self.exps[..j].iter().all(|&x| x == 0) {
                self.absorb(j, e)?;
                continue;
            }
            let fits = o == 0 || self.exps[j] + e < o;
            if fits && (0..j).all(|l| self.exps[l] == 0 || pres.conj[j][l].is_none()) {
                self.exps[j] = self.exps[j].checked_add(e).ok_or(Error::ExponentOverflow)?;
                continue;
            }
            let s = e.signum();
            if e != s {
                self.stack.push((j, e - s));
            }
            let table = if s > 0 {
                &pres.conj[j]
            } else {
                &pres.conj_inv[j]
            };
            for (l, rhs) in table.iter().enumerate().take(j) {
                let f = std::mem::take(&mut self.exps[l]);
                if f == 0 {
                    continue;
                }
                match rhs {
                    None => self.stack.push((l, f)),
                    Some(w) => self.push_word(w, f)?,
                }
            }
            self.absorb(j, s)?;
        }
        Ok(PcElement::from_exponents_unchecked(self.exps))
    }

    /// Adds `x_j^e` to the prefix; every prefix exponent below `j` is zero.
    fn absorb(&mut self, j: usize, e: Exp) -> Result<()> {
        let o = self.pres.rel_orders[j] as Exp;
        let t = self.exps[j].checked_add(e).ok_or(Error::ExponentOverflow)?;
        if o == 0 {
            self.exps[j] = t;
            return Ok(());
        }
        let (q, r) = (t.div_euclid(o), t.rem_euclid(o));
        self.exps[j] = r;
        if q != 0 {
            if let Some(pw) = &self.pres.powers[j] {
                self.push_word(pw, q)?;
            }
        }
        Ok(())
    }
}
