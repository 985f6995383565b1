//! The four-dimensional algebra V over GF(2), its simple ideal W, and the
//! truncations of the infinite algebra built from copies of W indexed by
//! finite sets.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieElement, Subspace};

/// Largest index-set size for [`build_vstar`].
pub const VSTAR_CAP: usize = 6;

/// Largest number of nonzero vectors [`verify_simple_ideal`] will visit.
pub const SUBSPACE_CAP: u64 = 1 << 12;

/// Basis `x, u, v, w` with `uv = u`, `vw = w`, `wu = v`, `wx = u`, `ux = vx = 0`.
pub fn build_v() -> LieAlgebra {
    let names = ["x", "u", "v", "w"].map(String::from).to_vec();
    let mut l = LieAlgebra::new(2, names).expect("2 is prime");
    let (x, u, v, w) = (0, 1, 2, 3);
    for (i, j, k) in [(u, v, u), (v, w, w), (w, u, v), (w, x, u)] {
        l.set_product(i, j, &[(k, 1)]).expect("indices in range");
    }
    l
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleIdealReport {
    pub ideal_dim: usize,
    pub is_ideal: bool,
    /// Nonzero vectors of the ideal whose generated ideal was computed.
    pub vectors_checked: u64,
    /// A nonzero vector generating a proper sub-ideal, if one was found.
    pub proper_subideal_generator: Option<String>,
    pub center_dim: usize,
    pub simple: bool,
}

/// Decides whether the span of `basis` is a nonzero ideal of `l` with no
/// proper nonzero sub-ideal. Every nonzero sub-ideal contains the ideal
/// generated by one of its vectors, so it suffices to close each nonzero
/// vector under right multiplication by `l`.
pub fn verify_simple_ideal(l: &LieAlgebra, basis: &[LieElement]) -> Result<SimpleIdealReport> {
    let n = l.dim();
    let p = l.characteristic();
    let gens = l.span(basis.iter().cloned());
    let d = gens.len();
    let center_dim = l.center().len();
    let count = (p as u128)
        .checked_pow(d as u32)
        .map_or(u128::MAX, |c| c - 1);
    if count > SUBSPACE_CAP as u128 {
        return Err(Error::CapExceeded(format!(
            "an ideal of dimension {d} over GF({p}) has more than {SUBSPACE_CAP} nonzero vectors"
        )));
    }
    let mut report = SimpleIdealReport {
        ideal_dim: d,
        is_ideal: false,
        vectors_checked: 0,
        proper_subideal_generator: None,
        center_dim,
        simple: false,
    };
    if d == 0 {
        return Ok(report);
    }
    let mut space = Subspace::new(n, p);
    for g in &gens {
        space.insert(g.coeffs().to_vec());
    }
    for g in &gens {
        for j in 0..n {
            if !space.contains(l.bracket(g, &l.basis(j))?.coeffs()) {
                return Ok(report);
            }
        }
    }
    report.is_ideal = true;
    // Coefficient vectors over the ideal basis, in base-p counting order.
    let mut digits = vec![0u64; d];
    for _ in 0..count {
        for c in digits.iter_mut() {
            *c = (*c + 1) % p;
            if *c != 0 {
                break;
            }
        }
        let mut z = l.zero();
        for (g, &c) in gens.iter().zip(&digits) {
            z = l.add(&z, &l.scale(c, g));
        }
        report.vectors_checked += 1;
        if generated_ideal_dim(l, &z)? < d {
            report.proper_subideal_generator = Some(l.format(&z));
            return Ok(report);
        }
    }
    report.simple = true;
    Ok(report)
}

fn generated_ideal_dim(l: &LieAlgebra, z: &LieElement) -> Result<usize> {
    let mut space = Subspace::new(l.dim(), l.characteristic());
    let mut work = vec![z.clone()];
    while let Some(t) = work.pop() {
        if space.insert(t.coeffs().to_vec()) {
            for j in 0..l.dim() {
                work.push(l.bracket(&t, &l.basis(j))?);
            }
        }
    }
    Ok(space.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    U,
    V,
    W,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::U, Letter::V, Letter::W];

    fn symbol(self) -> char {
        match self {
            Letter::U => 'u',
            Letter::V => 'v',
            Letter::W => 'w',
        }
    }
}

/// A basis letter `u_A`, `v_A` or `w_A` for a nonempty `A` in `{1..n}`,
/// stored as a bitmask with bit `i - 1` standing for `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SubsetIndex {
    pub letter: Letter,
    pub mask: u32,
}

impl SubsetIndex {
    pub fn new(letter: Letter, mask: u32, n: usize) -> Result<Self> {
        if n > VSTAR_CAP {
            return Err(Error::CapExceeded(format!(
                "index sets over {{1..{n}}}, cap is {VSTAR_CAP}"
            )));
        }
        if mask == 0 || mask >> n != 0 {
            return Err(Error::Precondition(format!(
                "mask {mask:#b} is not a nonempty subset of 1..{n}"
            )));
        }
        Ok(Self { letter, mask })
    }

    /// Members of the index set, ascending.
    pub fn members(&self) -> Vec<u32> {
        (0..32)
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// Position in the basis of [`build_vstar`], where `x` comes first and
    /// each mask contributes `u_A, v_A, w_A` in mask order.
    pub fn position(&self) -> usize {
        1 + 3 * (self.mask as usize - 1) + self.letter as usize
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: String = self.members().iter().map(|i| i.to_string()).collect();
        write!(f, "{}_{digits}", self.letter.symbol())
    }
}

/// Dimension of [`build_vstar`]`(n)`.
pub fn vstar_dim(n: usize) -> usize {
    3 * ((1 << n) - 1) + 1
}

/// Basis `x` and `u_A, v_A, w_A` for nonempty `A` in `{1..n}`, with
/// `u_A v_B = u_{A+B}`, `v_A w_B = w_{A+B}`, `w_A u_B = v_{A+B}` for disjoint
/// `A, B` (zero otherwise), `w_A x = u_A`, and all other basis products zero.
pub fn build_vstar(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("index sets need n >= 1".into()));
    }
    if n > VSTAR_CAP {
        return Err(Error::CapExceeded(format!("n = {n} exceeds {VSTAR_CAP}")));
    }
    let letters: Vec<SubsetIndex> = (1..1u32 << n)
        .flat_map(|mask| Letter::ALL.map(|letter| SubsetIndex { letter, mask }))
        .collect();
    let mut names = vec!["x".to_string()];
    names.extend(letters.iter().map(ToString::to_string));
    let mut l = LieAlgebra::new(2, names)?;
    let at = |letter, mask| SubsetIndex { letter, mask }.position();
    for a in 1..1u32 << n {
        l.set_product(at(Letter::W, a), 0, &[(at(Letter::U, a), 1)])?;
        for b in (1..1u32 << n).filter(|b| a & b == 0) {
            let c = a | b;
            l.set_product(at(Letter::U, a), at(Letter::V, b), &[(at(Letter::U, c), 1)])?;
            l.set_product(at(Letter::V, a), at(Letter::W, b), &[(at(Letter::W, c), 1)])?;
            l.set_product(at(Letter::W, a), at(Letter::U, b), &[(at(Letter::V, c), 1)])?;
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_table_and_ideal() {
        let l = build_v();
        let e = |s: &str| l.named(s).unwrap();
        assert_eq!(l.bracket(&e("u"), &e("v")).unwrap(), e("u"));
        assert_eq!(l.bracket(&e("w"), &e("x")).unwrap(), e("u"));
        // u w = v, read off the transposed entry w u = v.
        assert_eq!(l.bracket(&e("u"), &e("w")).unwrap(), e("v"));
        assert!(l.check_axioms().passed());
        assert!(l.center().is_empty());
        let r = verify_simple_ideal(&l, &[e("u"), e("v"), e("w")]).unwrap();
        assert!(r.simple && r.is_ideal);
        assert_eq!(r.vectors_checked, 7);
        assert!(!verify_simple_ideal(&l, &[]).unwrap().simple);
        // span{u, v} is not an ideal: v w = w.
        assert!(!verify_simple_ideal(&l, &[e("u"), e("v")]).unwrap().is_ideal);
        // V itself has W as a proper ideal.
        let all: Vec<_> = (0..4).map(|i| l.basis(i)).collect();
        assert!(verify_simple_ideal(&l, &all)
            .unwrap()
            .proper_subideal_generator
            .is_some());
    }

    #[test]
    fn enveloping_algebra_is_twelve_dimensional() {
        let l = build_v();
        let gens: Vec<_> = (0..4).map(|i| l.basis(i)).collect();
        assert_eq!(l.enveloping_dimension(&gens).unwrap(), 12);
        assert!(l.unipotent(&l.named("w").unwrap()).is_err());
    }

    #[test]
    fn vstar_shape() {
        for n in 1..=4 {
            assert_eq!(build_vstar(n).unwrap().dim(), vstar_dim(n));
        }
        let l = build_vstar(2).unwrap();
        let e = |s: &str| l.named(s).unwrap();
        assert_eq!(l.bracket(&e("w_1"), &e("x")).unwrap(), e("u_1"));
        assert_eq!(l.bracket(&e("u_1"), &e("v_2")).unwrap(), e("u_12"));
        assert!(l.bracket(&e("u_1"), &e("v_1")).unwrap().is_zero());
        assert!(l.bracket(&e("u_1"), &e("u_1")).unwrap().is_zero());
        assert!(build_vstar(0).is_err() && build_vstar(VSTAR_CAP + 1).is_err());
    }

    #[test]
    fn vstar_axioms_and_x_properties() {
        for n in 1..=3 {
            let l = build_vstar(n).unwrap();
            assert!(l.check_axioms().passed(), "n = {n}");
            let x = l.named("x").unwrap();
            for i in 0..l.dim() {
                let zxx = l.left_normed(&[&l.basis(i), &x, &x]).unwrap();
                assert!(zxx.is_zero());
            }
        }
        let l = build_vstar(2).unwrap();
        assert!(l.is_sandwich_element(&l.named("x").unwrap()).unwrap());
    }

    #[test]
    fn subset_index_display() {
        let s = SubsetIndex::new(Letter::W, 0b101, 3).unwrap();
        assert_eq!(s.to_string(), "w_13");
        assert_eq!(s.members(), vec![1, 3]);
        assert!(SubsetIndex::new(Letter::U, 0, 3).is_err());
        assert!(SubsetIndex::new(Letter::U, 0b1000, 3).is_err());
    }
}
