use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::field::{inv_mod, is_prime};
use super::matrix::EndoMatrix;
use crate::error::{Error, Result};

/// Coefficient vector over GF(p) with respect to an algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieElement {
    coeffs: Vec<u64>,
}

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            coeffs: vec![0; dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![0; dim];
        coeffs[i] = 1;
        Self { coeffs }
    }

    pub(crate) fn from_coeffs(coeffs: Vec<u64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs[i]
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
    }
}

/// A finite-dimensional Lie algebra over GF(p) given by structure constants.
///
/// Only products `e_i e_j` with `i < j` are stored; `e_j e_i` is the negative
/// and `e_i e_i = 0`, so alternation holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    p: u64,
    names: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<(usize, u64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiFailure {
    pub triple: [String; 3],
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub dim: usize,
    pub characteristic: u64,
    pub triples_checked: u64,
    pub failures: Vec<JacobiFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl LieAlgebra {
    /// An abelian algebra on the given basis; products are added with
    /// [`LieAlgebra::set_product`].
    pub fn new(p: u64, names: Vec<String>) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::Precondition(format!(
                "characteristic {p} is not a supported prime"
            )));
        }
        Ok(Self {
            p,
            names,
            table: BTreeMap::new(),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Defines `e_i e_j = sum c_k e_k`; with `i > j` the negative is stored.
    pub fn set_product(&mut self, i: usize, j: usize, value: &[(usize, u64)]) -> Result<()> {
        let dim = self.dim();
        if i >= dim || j >= dim || value.iter().any(|&(k, _)| k >= dim) {
            return Err(Error::IndexRange(format!(
                "basis index out of range for dimension {dim}"
            )));
        }
        let mut v = vec![0u64; dim];
        for &(k, c) in value {
            v[k] = (v[k] + c % self.p) % self.p;
        }
        if i == j {
            if v.iter().any(|&c| c != 0) {
                return Err(Error::Precondition(format!(
                    "the square of {} must be zero",
                    self.names[i]
                )));
            }
            return Ok(());
        }
        let (a, b, v) = if i < j {
            (i, j, v)
        } else {
            (j, i, v.iter().map(|&c| (self.p - c) % self.p).collect())
        };
        let sparse: Vec<(usize, u64)> =
            v.into_iter().enumerate().filter(|&(_, c)| c != 0).collect();
        if sparse.is_empty() {
            self.table.remove(&(a, b));
        } else {
            self.table.insert((a, b), sparse);
        }
        Ok(())
    }

    /// Nonzero products `e_i e_j`, `i < j`, in index order.
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, &[(usize, u64)])> {
        self.table.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    pub fn zero(&self) -> LieElement {
        LieElement::zero(self.dim())
    }

    pub fn basis(&self, i: usize) -> LieElement {
        LieElement::basis(self.dim(), i)
    }

    /// Basis element by name.
    pub fn named(&self, name: &str) -> Result<LieElement> {
        self.index_of(name)
            .map(|i| self.basis(i))
            .ok_or_else(|| Error::Precondition(format!("no basis element named `{name}`")))
    }

    pub fn element(&self, terms: &[(usize, u64)]) -> LieElement {
        let mut v = vec![0; self.dim()];
        for &(k, c) in terms {
            v[k] = (v[k] + c % self.p) % self.p;
        }
        LieElement::from_coeffs(v)
    }

    fn check_dim(&self, x: &LieElement) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            })
        }
    }

    pub fn add(&self, x: &LieElement, y: &LieElement) -> LieElement {
        LieElement::from_coeffs(
            x.coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, x: &LieElement, y: &LieElement) -> LieElement {
        LieElement::from_coeffs(
            x.coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| (a + self.p - b) % self.p)
                .collect(),
        )
    }

    pub fn scale(&self, c: u64, x: &LieElement) -> LieElement {
        let c = c % self.p;
        LieElement::from_coeffs(x.coeffs.iter().map(|a| a * c % self.p).collect())
    }

    /// `e_i e_j` as a dense coefficient vector accumulated into `acc` with
    /// weight `w`.
    fn accumulate_basis_product(&self, i: usize, j: usize, w: u64, acc: &mut [u64]) {
        if i == j {
            return;
        }
        let (key, w) = if i < j {
            ((i, j), w)
        } else {
            ((j, i), (self.p - w) % self.p)
        };
        if let Some(v) = self.table.get(&key) {
            for &(k, c) in v {
                acc[k] = (acc[k] + w * c) % self.p;
            }
        }
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut acc = vec![0; self.dim()];
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                self.accumulate_basis_product(i, j, a * b % self.p, &mut acc);
            }
        }
        Ok(LieElement::from_coeffs(acc))
    }

    /// Left-normed product `x_1 x_2 ... x_k = (...(x_1 x_2) ...) x_k`.
    pub fn left_normed(&self, xs: &[&LieElement]) -> Result<LieElement> {
        let Some((first, rest)) = xs.split_first() else {
            return Err(Error::Arity(0));
        };
        let mut acc = (*first).clone();
        for x in rest {
            acc = self.bracket(&acc, x)?;
        }
        Ok(acc)
    }

    /// Human-readable element, e.g. `u_1 + 2 v_2`, or `0`.
    pub fn format(&self, x: &LieElement) -> String {
        let terms: Vec<String> = x
            .support()
            .map(|(i, c)| {
                if c == 1 {
                    self.names[i].clone()
                } else {
                    format!("{c} {}", self.names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Checks the Jacobi identity on every triple of distinct basis elements
    /// (triples with a repeat follow from alternation).
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mut failures = Vec::new();
        let mut checked = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    checked += 1;
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.left_normed(&[&x, &y, &z]).expect("dims agree");
                    let t2 = self.left_normed(&[&y, &z, &x]).expect("dims agree");
                    let t3 = self.left_normed(&[&z, &x, &y]).expect("dims agree");
                    let sum = self.add(&self.add(&t1, &t2), &t3);
                    if !sum.is_zero() {
                        failures.push(JacobiFailure {
                            triple: [
                                self.names[i].clone(),
                                self.names[j].clone(),
                                self.names[k].clone(),
                            ],
                            residual: self.format(&sum),
                        });
                    }
                }
            }
        }
        AxiomReport {
            dim: n,
            characteristic: self.p,
            triples_checked: checked,
            failures,
        }
    }

    /// `ad(x)`: the map `v -> v x`, with column `j` holding `e_j x`.
    pub fn ad(&self, x: &LieElement) -> Result<EndoMatrix> {
        self.check_dim(x)?;
        let n = self.dim();
        let mut m = EndoMatrix::zero(n, self.p);
        for j in 0..n {
            let col = self.bracket(&self.basis(j), x)?;
            for (r, c) in col.support() {
                m.set(r, j, c);
            }
        }
        Ok(m)
    }

    /// `a x a = 0` and `a x y a = 0` for all basis `x, y`.
    pub fn is_sandwich_element(&self, a: &LieElement) -> Result<bool> {
        self.check_dim(a)?;
        let n = self.dim();
        for i in 0..n {
            let ax = self.bracket(a, &self.basis(i))?;
            if !self.bracket(&ax, a)?.is_zero() {
                return Ok(false);
            }
            if ax.is_zero() {
                continue;
            }
            for j in 0..n {
                let axy = self.bracket(&ax, &self.basis(j))?;
                if !self.bracket(&axy, a)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Echelon basis (reduced, pivots ascending) of the span of `vectors`.
    pub fn span(&self, vectors: impl IntoIterator<Item = LieElement>) -> Vec<LieElement> {
        let mut basis = Subspace::new(self.dim(), self.p);
        for v in vectors {
            basis.insert(v.coeffs);
        }
        basis.into_elements()
    }

    /// `L^1 = L`, `L^{i+1} = L^i L`, until the zero space or until the terms
    /// stop shrinking. Each term is an echelon basis.
    pub fn lower_central_series(&self) -> Vec<Vec<LieElement>> {
        self.lower_central_series_upto(usize::MAX)
    }

    /// Like [`LieAlgebra::lower_central_series`] but computes at most `terms`
    /// terms.
    pub fn lower_central_series_upto(&self, terms: usize) -> Vec<Vec<LieElement>> {
        let n = self.dim();
        let mut series = vec![(0..n).map(|i| self.basis(i)).collect::<Vec<_>>()];
        while series.len() < terms {
            let last = series.last().expect("nonempty");
            if last.is_empty() {
                break;
            }
            let mut products = Vec::new();
            for b in last {
                for j in 0..n {
                    products.push(self.bracket(b, &self.basis(j)).expect("dims agree"));
                }
            }
            let next = self.span(products);
            let stalled = next.len() == last.len();
            series.push(next);
            if stalled {
                break;
            }
        }
        series
    }

    /// True iff `L^{k+1} = 0`.
    pub fn is_nilpotent_within(&self, k: usize) -> bool {
        self.lower_central_series_upto(k + 1)
            .iter()
            .any(Vec::is_empty)
    }

    /// `1 + ad(y)`, provided `ad(y)^p = 0`.
    pub fn unipotent(&self, y: &LieElement) -> Result<EndoMatrix> {
        let a = self.ad(y)?;
        if !a.pow(self.p).is_zero() {
            return Err(Error::Precondition(format!(
                "ad({})^{} is not zero",
                self.format(y),
                self.p
            )));
        }
        Ok(EndoMatrix::identity(self.dim(), self.p).add(&a))
    }

    /// Dimension of the associative algebra (without unit) generated by the
    /// adjoint maps of `gens`.
    pub fn enveloping_dimension(&self, gens: &[LieElement]) -> Result<usize> {
        let ads = gens
            .iter()
            .map(|g| self.ad(g))
            .collect::<Result<Vec<_>>>()?;
        let n = self.dim();
        let mut space = Subspace::new(n * n, self.p);
        let mut work: Vec<EndoMatrix> = ads.clone();
        work.reverse();
        while let Some(m) = work.pop() {
            if space.insert(m.entries().to_vec()) {
                if space.rank() > n * n {
                    return Err(Error::CapExceeded(
                        "enveloping closure exceeds dim^2".into(),
                    ));
                }
                for a in ads.iter().rev() {
                    work.push(m.mul(a));
                }
            }
        }
        Ok(space.rank())
    }

    /// Intersection of the kernels of all `ad(e_j)`.
    pub fn center(&self) -> Vec<LieElement> {
        let n = self.dim();
        // z is central iff z e_j = 0 for all j: stack the ad matrices' rows.
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for j in 0..n {
            let m = self.ad(&self.basis(j)).expect("dims agree");
            for r in 0..n {
                rows.push((0..n).map(|c| m.get(r, c)).collect());
            }
        }
        kernel(&rows, n, self.p)
            .into_iter()
            .map(LieElement::from_coeffs)
            .collect()
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::to_source(self))
    }
}

/// Row-echelon subspace of GF(p)^n with reduced pivots.
#[derive(Clone, Debug)]
pub(crate) struct Subspace {
    p: u64,
    n: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Subspace {
    pub(crate) fn new(n: usize, p: u64) -> Self {
        Self {
            p,
            n,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + self.p * self.p - c * r) % self.p;
                }
            }
        }
    }

    pub(crate) fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        for x in v.iter_mut() {
            *x %= self.p;
        }
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + self.p * self.p - c * r) % self.p;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < piv);
        self.rows.insert(at, (piv, v));
        true
    }

    pub(crate) fn into_elements(self) -> Vec<LieElement> {
        self.rows
            .into_iter()
            .map(|(_, r)| LieElement::from_coeffs(r))
            .collect()
    }
}

/// Basis of `{z : R z = 0}` for the matrix with rows `rows` and `n` columns.
pub(crate) fn kernel(rows: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut s = Subspace::new(n, p);
    for r in rows {
        s.insert(r.clone());
    }
    let pivots: Vec<usize> = s.rows.iter().map(|(q, _)| *q).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![0; n];
            z[f] = 1;
            for (piv, row) in &s.rows {
                z[*piv] = (p - row[f]) % p;
            }
            z
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_v, build_vstar};

    #[test]
    fn flipped_constant_breaks_jacobi() {
        let mut l = build_v();
        assert!(l.check_axioms().passed());
        // w x = u becomes w x = v.
        l.set_product(3, 0, &[(2, 1)]).unwrap();
        let r = l.check_axioms();
        assert!(!r.passed());
        assert!(!r.failures.is_empty());
    }

    #[test]
    fn ad_conventions() {
        let l = build_v();
        let w = l.named("w").unwrap();
        let ad = l.ad(&w).unwrap();
        // Column of u holds u w = v.
        assert_eq!(ad.get(2, 1), 1);
        assert!(l.ad(&l.zero()).unwrap().is_zero());
        assert!(l.unipotent(&l.zero()).unwrap().is_identity());
        assert!(l.is_sandwich_element(&l.zero()).unwrap());
    }

    #[test]
    fn unipotent_letters_are_involutions() {
        let l = build_vstar(2).unwrap();
        let m = l.unipotent(&l.named("u_1").unwrap()).unwrap();
        assert!(m.mul(&m).is_identity());
    }

    #[test]
    fn series_of_small_algebras() {
        let abelian = LieAlgebra::new(5, vec!["p".into(), "q".into()]).unwrap();
        assert_eq!(abelian.lower_central_series().len(), 2);
        assert!(abelian.is_nilpotent_within(1));
        let v = build_v();
        assert!(!v.is_nilpotent_within(20));
        let s = v.lower_central_series();
        assert_eq!(s.last().unwrap().len(), 3);
        assert!(LieAlgebra::new(4, vec![]).is_err());
    }

    #[test]
    fn squares_must_vanish() {
        let mut l = LieAlgebra::new(3, vec!["p".into(), "q".into()]).unwrap();
        assert!(l.set_product(0, 0, &[(1, 1)]).is_err());
        assert!(l.set_product(0, 5, &[]).is_err());
        l.set_product(1, 0, &[(1, 1)]).unwrap();
        // Stored as p q = -q.
        assert_eq!(
            l.bracket(&l.basis(0), &l.basis(1)).unwrap(),
            l.element(&[(1, 2)])
        );
    }
}
