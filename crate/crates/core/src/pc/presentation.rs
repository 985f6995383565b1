use std::collections::BTreeMap;

use super::collector::Collector;
use super::word::{Exp, PcElement, PcWord};
use crate::error::{Error, Result};

/// Default collection budget, in processed letters per operation.
pub const DEFAULT_FUEL: u64 = 10_000_000;

/// A group given by a power-conjugate presentation.
///
/// Generators are addressed by 0-based position; each position also carries a
/// printed label (usually `position + 1`). For `j < i` the conjugate relation
/// `x_j^{x_i}` is stored as a normal-form word in generators below `i`, and the
/// power relation `x_i^{o_i}` as a normal-form word below `i`. Relative order
/// `0` means infinite.
#[derive(Clone, Debug)]
pub struct PcPresentation {
    pub(crate) name: String,
    pub(crate) labels: Vec<u32>,
    pub(crate) rel_orders: Vec<u64>,
    pub(crate) powers: Vec<Option<PcWord>>,
    /// `conj[i][j]` is `x_j^{x_i}` for `j < i`; `None` when they commute.
    pub(crate) conj: Vec<Vec<Option<PcWord>>>,
    /// `conj_inv[i][j]` is `x_j^{x_i^{-1}}`, filled only for infinite `x_i`.
    pub(crate) conj_inv: Vec<Vec<Option<PcWord>>>,
    pub(crate) fuel: u64,
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.labels == other.labels
            && self.rel_orders == other.rel_orders
            && self.powers == other.powers
            && self.conj == other.conj
    }
}

impl Eq for PcPresentation {}

/// Incremental constructor for [`PcPresentation`]. Relations are given on
/// 0-based positions and need not be in normal form.
#[derive(Clone, Debug)]
pub struct PcBuilder {
    name: String,
    labels: Vec<u32>,
    rel_orders: Vec<u64>,
    powers: BTreeMap<usize, PcWord>,
    conj: BTreeMap<(usize, usize), PcWord>,
    fuel: u64,
}

impl PcBuilder {
    pub fn new(name: impl Into<String>, rel_orders: Vec<u64>) -> Self {
        let n = rel_orders.len();
        Self {
            name: name.into(),
            labels: (1..=n as u32).collect(),
            rel_orders,
            powers: BTreeMap::new(),
            conj: BTreeMap::new(),
            fuel: DEFAULT_FUEL,
        }
    }

    pub fn labels(mut self, labels: Vec<u32>) -> Self {
        self.labels = labels;
        self
    }

    pub fn fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    /// Sets `x_i^{o_i}`.
    pub fn power(mut self, i: usize, rhs: PcWord) -> Self {
        self.powers.insert(i, rhs);
        self
    }

    /// Sets `x_j^{x_i}` for `j < i`.
    pub fn conj(mut self, j: usize, i: usize, rhs: PcWord) -> Self {
        self.conj.insert((j, i), rhs);
        self
    }

    fn label(&self, pos: usize) -> u32 {
        self.labels.get(pos).copied().unwrap_or(pos as u32 + 1)
    }

    fn check_word(&self, relation: String, rhs: &PcWord, bound: usize) -> Result<()> {
        if let Some(max) = rhs.max_position() {
            if max >= bound {
                return Err(Error::RhsIndex {
                    relation,
                    offending: self.label(max),
                    bound: self.label(bound),
                });
            }
        }
        Ok(())
    }

    pub fn build(self) -> Result<PcPresentation> {
        let n = self.rel_orders.len();
        if self.labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.labels.len(),
            });
        }
        if self.labels.windows(2).any(|w| w[0] >= w[1]) || self.labels.first() == Some(&0) {
            return Err(Error::IndexRange(
                "generator labels must be positive and strictly increasing".into(),
            ));
        }
        if let Some(&o) = self
            .rel_orders
            .iter()
            .find(|&&o| o == 1 || o > i64::MAX as u64)
        {
            return Err(Error::IndexRange(format!(
                "relative order {o} is not allowed"
            )));
        }
        for (&i, rhs) in &self.powers {
            if i >= n {
                return Err(Error::IndexRange(format!(
                    "power relation on generator {}",
                    i + 1
                )));
            }
            self.check_word(format!("pow {}", self.label(i)), rhs, i)?;
            if self.rel_orders[i] == 0 {
                return Err(Error::IndexRange(format!(
                    "power relation on g{} of infinite relative order",
                    self.label(i)
                )));
            }
        }
        for (&(j, i), rhs) in &self.conj {
            if i >= n || j >= n {
                return Err(Error::IndexRange(format!(
                    "conjugate relation on generators {} and {}",
                    j + 1,
                    i + 1
                )));
            }
            self.check_word(format!("conj {} {}", self.label(j), self.label(i)), rhs, i)?;
            if j >= i {
                return Err(Error::IndexRange(format!(
                    "conj {} {}: the conjugated generator must be below the conjugator",
                    self.label(j),
                    self.label(i)
                )));
            }
        }

        let mut pres = PcPresentation {
            name: self.name,
            labels: self.labels,
            rel_orders: self.rel_orders,
            powers: vec![None; n],
            conj: (0..n).map(|i| vec![None; i]).collect(),
            conj_inv: (0..n).map(|i| vec![None; i]).collect(),
            fuel: self.fuel,
        };
        for (i, rhs) in self.powers {
            pres.powers[i] = Some(rhs);
        }
        for ((j, i), rhs) in self.conj {
            pres.conj[i][j] = Some(rhs);
        }
        pres.canonicalize()?;
        Ok(pres)
    }
}

impl PcPresentation {
    /// Rewrites every right-hand side into normal form, drops trivial
    /// relations and derives the inverse conjugates for infinite generators.
    /// Works upward: relations at level `i` only involve generators below `i`,
    /// whose relations are already canonical.
    fn canonicalize(&mut self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if let Some(w) = self.powers[i].take() {
                let e = self.collect(&w)?;
                self.powers[i] = (!e.is_identity()).then(|| e.to_word());
            }
            for j in 0..i {
                if let Some(w) = self.conj[i][j].take() {
                    let e = self.collect(&w)?;
                    let trivial = e.leading() == Some(j)
                        && e.exponent(j) == 1
                        && e.exponents()[..j].iter().all(|&x| x == 0);
                    self.conj[i][j] = (!trivial).then(|| e.to_word());
                }
            }
            if self.rel_orders[i] == 0 {
                for j in 0..i {
                    self.conj_inv[i][j] = self.inverse_conjugate(j, i)?;
                }
            }
        }
        Ok(())
    }

    /// `x_j^{x_i^{-1}}` from `x_j^{x_i} = x_j w`: the answer is `x_j z` with
    /// `z^{x_i} = w^{-1}`, and `z` is obtained by applying the already known
    /// inverse conjugation to `w^{-1}`.
    fn inverse_conjugate(&self, j: usize, i: usize) -> Result<Option<PcWord>> {
        let Some(rhs) = &self.conj[i][j] else {
            return Ok(None);
        };
        let letters = rhs.letters();
        if letters.first() != Some(&(j, 1)) || letters[1..].iter().any(|&(g, _)| g >= j) {
            return Err(Error::Unsupported(format!(
                "conj {} {}: inverse conjugation by an infinite generator needs a relation of the form g{}^g{} = g{} w with w below g{}",
                self.labels[j], self.labels[i], self.labels[j], self.labels[i], self.labels[j], self.labels[j]
            )));
        }
        let tail_inv = PcWord::from_letters(letters[1..].iter().copied()).inverse();
        let mut image = PcWord::generator(j);
        for &(g, e) in tail_inv.letters() {
            match &self.conj_inv[i][g] {
                None => image.push(g, e),
                Some(c) => {
                    let block = if e > 0 { c.clone() } else { c.inverse() };
                    for _ in 0..e.unsigned_abs() {
                        image = image.concat(&block);
                    }
                }
            }
        }
        let e = self.collect(&image)?;
        Ok(Some(e.to_word()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of pc generators.
    pub fn len(&self) -> usize {
        self.rel_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel_orders.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, pos: usize) -> u32 {
        self.labels[pos]
    }

    pub fn position(&self, label: u32) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn rel_orders(&self) -> &[u64] {
        &self.rel_orders
    }

    pub fn rel_order(&self, pos: usize) -> u64 {
        self.rel_orders[pos]
    }

    pub fn is_finite(&self) -> bool {
        self.rel_orders.iter().all(|&o| o != 0)
    }

    /// Number of generators of infinite relative order.
    pub fn hirsch_length(&self) -> usize {
        self.rel_orders.iter().filter(|&&o| o == 0).count()
    }

    pub fn power_rhs(&self, pos: usize) -> Option<&PcWord> {
        self.powers[pos].as_ref()
    }

    /// `x_j^{x_i}` for `j < i`, `None` when the two commute.
    pub fn conj_rhs(&self, j: usize, i: usize) -> Option<&PcWord> {
        self.conj[i][j].as_ref()
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn identity(&self) -> PcElement {
        PcElement::identity(self.len())
    }

    pub fn generator(&self, pos: usize) -> PcElement {
        PcElement::generator(self.len(), pos)
    }

    pub fn generators(&self) -> Vec<PcElement> {
        (0..self.len()).map(|i| self.generator(i)).collect()
    }

    /// Generator by printed label.
    pub fn gen(&self, label: u32) -> Result<PcElement> {
        let pos = self
            .position(label)
            .ok_or_else(|| Error::UnknownGenerator {
                presentation: self.name.clone(),
                label,
            })?;
        Ok(self.generator(pos))
    }

    /// Normalizes an arbitrary exponent vector.
    pub fn element(&self, exps: &[Exp]) -> Result<PcElement> {
        if exps.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: exps.len(),
            });
        }
        let canonical = exps
            .iter()
            .zip(&self.rel_orders)
            .all(|(&e, &o)| o == 0 || (0..o as Exp).contains(&e));
        if canonical {
            return Ok(PcElement::from_exponents_unchecked(exps.to_vec()));
        }
        self.collect(&PcWord::from_letters(
            exps.iter().copied().enumerate().rev(),
        ))
    }

    pub fn collect(&self, w: &PcWord) -> Result<PcElement> {
        if let Some(max) = w.max_position() {
            if max >= self.len() {
                return Err(Error::IndexRange(format!(
                    "generator position {} outside presentation `{}` with {} generators",
                    max + 1,
                    self.name,
                    self.len()
                )));
            }
        }
        let mut c = Collector::new(self, vec![0; self.len()]);
        c.push_word(w, 1)?;
        c.run()
    }

    pub fn multiply(&self, a: &PcElement, b: &PcElement) -> Result<PcElement> {
        let mut c = Collector::new(self, a.exponents().to_vec());
        for (g, &e) in b.exponents().iter().enumerate() {
            if e != 0 {
                c.push_letter(g, e);
            }
        }
        c.run()
    }

    pub fn multiply_all<'a>(
        &self,
        items: impl IntoIterator<Item = &'a PcElement>,
    ) -> Result<PcElement> {
        let mut acc = self.identity();
        for x in items {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn invert(&self, a: &PcElement) -> Result<PcElement> {
        let mut c = Collector::new(self, vec![0; self.len()]);
        for (g, &e) in a.exponents().iter().enumerate().rev() {
            if e != 0 {
                c.push_letter(g, -e);
            }
        }
        c.run()
    }

    pub fn power(&self, a: &PcElement, k: i64) -> Result<PcElement> {
        let mut base = if k < 0 { self.invert(a)? } else { a.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `g^{-1} a g`.
    pub fn conjugate(&self, a: &PcElement, g: &PcElement) -> Result<PcElement> {
        let gi = self.invert(g)?;
        let t = self.multiply(&gi, a)?;
        self.multiply(&t, g)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: &PcElement, b: &PcElement) -> Result<PcElement> {
        let ab = self.multiply(a, b)?;
        let ba = self.multiply(b, a)?;
        self.multiply(&self.invert(&ba)?, &ab)
    }

    /// Left-normed commutator `[s_1, s_2, ..., s_k] = [[s_1, s_2], ..., s_k]`.
    pub fn left_normed_commutator(&self, seq: &[PcElement]) -> Result<PcElement> {
        if seq.len() < 2 {
            return Err(Error::Arity(seq.len()));
        }
        let mut acc = seq[0].clone();
        for s in &seq[1..] {
            acc = self.commutator(&acc, s)?;
        }
        Ok(acc)
    }
}
