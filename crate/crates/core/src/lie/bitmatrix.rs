use std::fmt;

use super::matrix::EndoMatrix;
use crate::error::{Error, Result};

/// Square matrix over GF(2) with bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Packs a matrix over GF(2).
    pub fn from_endo(m: &EndoMatrix) -> Result<Self> {
        if m.characteristic() != 2 {
            return Err(Error::Precondition(format!(
                "bit matrices need characteristic 2, not {}",
                m.characteristic()
            )));
        }
        let mut out = Self::zero(m.dim());
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                if m.get(r, c) == 1 {
                    out.set(r, c, true);
                }
            }
        }
        Ok(out)
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.words..(r + 1) * self.words]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row(r)[c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.row_mut(r)[c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a ^ b)
            .collect();
        Self { bits, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for (wi, &word) in self.row(i).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let k = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let src = other.row(k).to_vec();
                    for (d, s) in out.row_mut(i).iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a.get(r, col))
                .ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
            if piv != col {
                for m in [&mut a, &mut inv] {
                    for w in 0..m.words {
                        m.bits.swap(piv * m.words + w, col * m.words + w);
                    }
                }
            }
            for r in 0..n {
                if r != col && a.get(r, col) {
                    for m in [&mut a, &mut inv] {
                        let src = m.row(col).to_vec();
                        for (d, s) in m.row_mut(r).iter_mut().zip(src) {
                            *d ^= s;
                        }
                    }
                }
            }
        }
        Ok(inv)
    }

    /// `g^{-1} h^{-1} g h`.
    pub fn commutator(g: &Self, h: &Self) -> Result<Self> {
        let hg = h.mul(g);
        Ok(hg.inverse()?.mul(&g.mul(h)))
    }

    /// `g^{-1} a g`.
    pub fn conjugate(a: &Self, g: &Self) -> Result<Self> {
        Ok(g.inverse()?.mul(a).mul(g))
    }

    /// Rows as `0`/`1` strings.
    pub fn bit_rows(&self) -> Vec<String> {
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.bit_rows() {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
