//! Subgroups of pc groups given by induced sequences.

use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::kernel;
use crate::order::Order;
use crate::pc::{Exp, PcElement, PcPresentation};

/// Default bound on the nilpotency class explored by series computations.
pub const DEFAULT_MAX_CLASS: usize = 16;

/// Largest group that is ever enumerated element by element.
pub const ENUMERATION_CAP: u64 = 1 << 16;

/// Generators in echelon form: leading positions strictly increase, leading
/// exponents are normalized (a divisor of the relative order, or positive for
/// infinite positions), and the set is closed under commutators and relative
/// powers so that sifting decides membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSequence {
    gens: Vec<PcElement>,
}

impl InducedSequence {
    pub fn trivial() -> Self {
        Self { gens: Vec::new() }
    }

    pub fn gens(&self) -> &[PcElement] {
        &self.gens
    }

    /// Number of generators in the sequence.
    pub fn depth(&self) -> usize {
        self.gens.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_positions(&self) -> Vec<usize> {
        self.gens.iter().filter_map(PcElement::leading).collect()
    }

    /// Normal-form words of the generators, for reports.
    pub fn format(&self, p: &PcPresentation) -> Vec<String> {
        self.gens.iter().map(|g| p.format_element(g)).collect()
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn to_exp(v: i128) -> Result<Exp> {
    Exp::try_from(v).map_err(|_| Error::ExponentOverflow)
}

/// Work state for closing a generating set into an induced sequence.
struct Closure<'p> {
    p: &'p PcPresentation,
    table: Vec<Option<PcElement>>,
    queue: VecDeque<PcElement>,
    conjugators: Vec<PcElement>,
}

impl<'p> Closure<'p> {
    fn new(p: &'p PcPresentation, conjugators: Vec<PcElement>) -> Result<Self> {
        let mut conjugators = conjugators;
        if !p.is_finite() {
            let inverses = conjugators
                .iter()
                .map(|c| p.invert(c))
                .collect::<Result<Vec<_>>>()?;
            conjugators.extend(inverses);
        }
        Ok(Self {
            p,
            table: vec![None; p.len()],
            queue: VecDeque::new(),
            conjugators,
        })
    }

    fn seeded(p: &'p PcPresentation, s: &InducedSequence) -> Self {
        let mut table = vec![None; p.len()];
        for g in &s.gens {
            table[g.leading().expect("sequence generators are nontrivial")] = Some(g.clone());
        }
        Self {
            p,
            table,
            queue: VecDeque::new(),
            conjugators: Vec::new(),
        }
    }

    /// Reduces `g` by table entries from the top down until the leading
    /// exponent is not divisible by the matching entry (or has no entry).
    fn sift(&self, mut g: PcElement) -> Result<PcElement> {
        while let Some(j) = g.leading() {
            let Some(t) = &self.table[j] else { break };
            let (e, d) = (g.exponent(j), t.exponent(j));
            if e % d != 0 {
                break;
            }
            let k = self.p.power(t, -(e / d))?;
            g = self.p.multiply(&g, &k)?;
        }
        Ok(g)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(g) = self.queue.pop_front() {
            self.insert(g)?;
        }
        Ok(())
    }

    fn insert(&mut self, g: PcElement) -> Result<()> {
        let p = self.p;
        let g = self.sift(g)?;
        let Some(j) = g.leading() else { return Ok(()) };
        let o = p.rel_order(j) as i128;
        let e = g.exponent(j) as i128;
        // Normalize the leading exponent to gcd(e, o), or to |e| when infinite.
        let (g, pushed_back) = if o != 0 {
            let (d, m, _) = ext_gcd(e, o);
            if d == e {
                (g, None)
            } else {
                (p.power(&g, to_exp(m.rem_euclid(o))?)?, Some(g))
            }
        } else if e < 0 {
            (p.invert(&g)?, None)
        } else {
            (g, None)
        };
        if let Some(orig) = pushed_back {
            self.queue.push_back(orig);
        }
        match self.table[j].take() {
            None => {
                self.add_consequences(&g)?;
                self.table[j] = Some(g);
            }
            Some(t) => {
                let (dt, dg) = (t.exponent(j) as i128, g.exponent(j) as i128);
                let (_, u, v) = ext_gcd(dt, dg);
                let tu = p.power(&t, to_exp(u)?)?;
                let gv = p.power(&g, to_exp(v)?)?;
                let combined = p.multiply(&tu, &gv)?;
                self.queue.push_front(g);
                self.queue.push_front(t);
                self.queue.push_front(combined);
            }
        }
        Ok(())
    }

    fn add_consequences(&mut self, g: &PcElement) -> Result<()> {
        let p = self.p;
        let j = g.leading().expect("nontrivial");
        let o = p.rel_order(j);
        if o != 0 {
            let d = g.exponent(j) as u64;
            let pw = p.power(g, (o / d) as Exp)?;
            self.queue.push_back(pw);
        }
        for t in self.table.iter().flatten() {
            self.queue.push_back(p.commutator(g, t)?);
        }
        for c in &self.conjugators {
            self.queue.push_back(p.commutator(g, c)?);
        }
        Ok(())
    }

    fn finish(self) -> InducedSequence {
        InducedSequence {
            gens: self.table.into_iter().flatten().collect(),
        }
    }
}

impl PcPresentation {
    /// The induced sequence of the subgroup generated by `gens`.
    pub fn induced_sequence(&self, gens: &[PcElement]) -> Result<InducedSequence> {
        let mut c = Closure::new(self, Vec::new())?;
        c.queue.extend(gens.iter().cloned());
        c.run()?;
        Ok(c.finish())
    }

    /// The whole group.
    pub fn full_sequence(&self) -> Result<InducedSequence> {
        self.induced_sequence(&self.generators())
    }

    /// Smallest subgroup containing `gens` and normalized by `ambient`.
    pub fn normal_closure(
        &self,
        gens: &[PcElement],
        ambient: &[PcElement],
    ) -> Result<InducedSequence> {
        let mut c = Closure::new(self, ambient.to_vec())?;
        c.queue.extend(gens.iter().cloned());
        c.run()?;
        Ok(c.finish())
    }

    /// Reduces `g` against `s`; the result is the identity iff `g` lies in `s`.
    pub fn sift(&self, s: &InducedSequence, g: &PcElement) -> Result<PcElement> {
        Closure::seeded(self, s).sift(g.clone())
    }

    pub fn contains(&self, s: &InducedSequence, g: &PcElement) -> Result<bool> {
        Ok(self.sift(s, g)?.is_identity())
    }

    /// True when every generator of `a` lies in `b`.
    pub fn is_subgroup(&self, a: &InducedSequence, b: &InducedSequence) -> Result<bool> {
        for g in &a.gens {
            if !self.contains(b, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn subgroup_order(&self, s: &InducedSequence) -> Order {
        let mut n = BigUint::from(1u32);
        for g in &s.gens {
            let j = g.leading().expect("nontrivial");
            let o = self.rel_order(j);
            if o == 0 {
                return Order::Infinite;
            }
            n *= o / g.exponent(j) as u64;
        }
        Order::Finite(n)
    }

    /// `gamma_1 = s`, `gamma_{i+1} = [gamma_i, s]`, ending with the trivial
    /// subgroup. Fails if the series stalls or exceeds `max_class` steps.
    pub fn lower_central_series(
        &self,
        s: &InducedSequence,
        max_class: usize,
    ) -> Result<Vec<InducedSequence>> {
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                return Ok(series);
            }
            if series.len() > max_class {
                return Err(Error::MaxClassExceeded { bound: max_class });
            }
            let mut comms = Vec::new();
            for a in &last.gens {
                for b in &s.gens {
                    comms.push(self.commutator(a, b)?);
                }
            }
            let next = self.normal_closure(&comms, &s.gens)?;
            if self.is_subgroup(last, &next)? {
                return Err(Error::NotNilpotent {
                    order: self.subgroup_order(last).to_string(),
                });
            }
            series.push(next);
        }
    }

    /// Nilpotency class of `s` (0 for the trivial group).
    pub fn nilpotency_class(&self, s: &InducedSequence, max_class: usize) -> Result<usize> {
        Ok(self.lower_central_series(s, max_class)?.len() - 1)
    }

    /// Nilpotency class of the subgroup generated by `gens`.
    pub fn class_of(&self, gens: &[PcElement], max_class: usize) -> Result<usize> {
        let s = self.induced_sequence(gens)?;
        self.nilpotency_class(&s, max_class)
    }

    /// The prime `p` if every relative order equals `p`.
    fn uniform_prime(&self) -> Option<u64> {
        let &p = self.rel_orders.first()?;
        let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        (is_prime && self.rel_orders.iter().all(|&o| o == p)).then_some(p)
    }

    /// Center of a finite group.
    ///
    /// When every relative order is the same prime `p`, the centralizing
    /// condition is solved layer by layer along the exponent-`p` central
    /// series: `C_{k+1}` is the kernel of `g -> ([g, x] mod P_{k+1})_x` on
    /// `C_k`, a linear map into copies of `P_k / P_{k+1}`. Other finite groups
    /// of at most 2^16 elements are handled by enumeration.
    pub fn center(&self) -> Result<InducedSequence> {
        if !self.is_finite() {
            return Err(Error::Unsupported(
                "center is only computed for finite groups".into(),
            ));
        }
        match self.uniform_prime() {
            Some(p) => self.center_p_group(p),
            None => self.center_by_enumeration(),
        }
    }

    fn center_by_enumeration(&self) -> Result<InducedSequence> {
        let order = self.group_order();
        if let Order::Finite(n) = &order {
            if *n > BigUint::from(ENUMERATION_CAP) {
                return Err(Error::CapExceeded(format!(
                    "center by enumeration is limited to {ENUMERATION_CAP} elements, group has order {order}"
                )));
            }
        }
        let gens = self.generators();
        let mut central = Vec::new();
        for g in self.elements()? {
            let mut ok = true;
            for x in &gens {
                if !self.commutator(&g, x)?.is_identity() {
                    ok = false;
                    break;
                }
            }
            if ok {
                central.push(g);
            }
        }
        self.induced_sequence(&central)
    }

    /// All elements in exponent-vector order. Finite groups only.
    pub fn elements(&self) -> Result<Vec<PcElement>> {
        match self.group_order() {
            Order::Infinite => {
                return Err(Error::Unsupported(
                    "cannot enumerate an infinite group".into(),
                ))
            }
            Order::Finite(n) if n > BigUint::from(ENUMERATION_CAP) => {
                return Err(Error::CapExceeded(format!(
                    "enumeration is limited to {ENUMERATION_CAP} elements"
                )))
            }
            _ => {}
        }
        let mut out = vec![self.identity()];
        for (g, &o) in self.rel_orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for e in 0..o as Exp {
                for x in &out {
                    let mut v = x.exponents().to_vec();
                    v[g] = e;
                    next.push(self.element(&v)?);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// `P_1 = G`, `P_{i+1} = [P_i, G] P_i^p`, ending with the trivial group.
    pub fn exponent_p_central_series(
        &self,
        p: u64,
        max_len: usize,
    ) -> Result<Vec<InducedSequence>> {
        let gens = self.generators();
        let mut series = vec![self.full_sequence()?];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                return Ok(series);
            }
            if series.len() > max_len {
                return Err(Error::MaxClassExceeded { bound: max_len });
            }
            let mut seeds = Vec::new();
            for a in &last.gens {
                seeds.push(self.power(a, p as Exp)?);
                for x in &gens {
                    seeds.push(self.commutator(a, x)?);
                }
            }
            let next = self.normal_closure(&seeds, &gens)?;
            if next.depth() == last.depth() {
                return Err(Error::NotNilpotent {
                    order: self.subgroup_order(last).to_string(),
                });
            }
            series.push(next);
        }
    }

    fn center_p_group(&self, p: u64) -> Result<InducedSequence> {
        let gens = self.generators();
        let series = self.exponent_p_central_series(p, self.len() + 1)?;
        let mut c = series[0].clone();
        for k in 0..series.len() - 1 {
            let layer = Layer::new(self, &series[k], &series[k + 1])?;
            let rows: Vec<Vec<u64>> = c
                .gens
                .iter()
                .map(|ci| {
                    let mut row = Vec::with_capacity(layer.dim() * gens.len());
                    for x in &gens {
                        row.extend(layer.coords(&self.commutator(ci, x)?)?);
                    }
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            let mut seeds = Vec::new();
            for a in left_nullspace(&rows, p) {
                let mut g = self.identity();
                for (ci, &ai) in c.gens.iter().zip(&a) {
                    g = self.multiply(&g, &self.power(ci, ai as Exp)?)?;
                }
                seeds.push(g);
            }
            for (i, ci) in c.gens.iter().enumerate() {
                seeds.push(self.power(ci, p as Exp)?);
                for cj in &c.gens[i + 1..] {
                    seeds.push(self.commutator(ci, cj)?);
                }
            }
            c = self.normal_closure(&seeds, &c.gens)?;
        }
        Ok(c)
    }
}

/// Coordinates on an elementary abelian section `upper / lower` with `lower`
/// normal in `upper`; all relative orders are a prime.
struct Layer<'p> {
    closure: Closure<'p>,
    basis_slots: Vec<usize>,
    p: u64,
}

impl<'p> Layer<'p> {
    fn new(
        pres: &'p PcPresentation,
        upper: &InducedSequence,
        lower: &InducedSequence,
    ) -> Result<Self> {
        let mut closure = Closure::seeded(pres, lower);
        let old: Vec<bool> = closure.table.iter().map(Option::is_some).collect();
        closure.queue.extend(upper.gens.iter().cloned());
        closure.run()?;
        let basis_slots = (0..pres.len())
            .filter(|&j| !old[j] && closure.table[j].is_some())
            .collect();
        Ok(Self {
            closure,
            basis_slots,
            p: pres.rel_order(0),
        })
    }

    fn dim(&self) -> usize {
        self.basis_slots.len()
    }

    fn coords(&self, w: &PcElement) -> Result<Vec<u64>> {
        let pres = self.closure.p;
        let mut out = vec![0; self.dim()];
        let mut g = w.clone();
        while let Some(j) = g.leading() {
            let Some(t) = &self.closure.table[j] else {
                return Err(Error::Precondition("element lies outside the layer".into()));
            };
            let e = g.exponent(j);
            if let Some(k) = self.basis_slots.iter().position(|&s| s == j) {
                out[k] = (e as u64) % self.p;
            }
            g = pres.multiply(&g, &pres.power(t, -e)?)?;
        }
        Ok(out)
    }
}

/// Basis of `{a : a M = 0}` over GF(p) for the matrix with the given rows.
fn left_nullspace(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let transposed: Vec<Vec<u64>> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect();
    kernel(&transposed, rows.len(), p)
}

/// Report-friendly view of a series.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesTerm {
    pub order: Order,
    pub generators: Vec<String>,
}

impl PcPresentation {
    pub fn describe_series(&self, series: &[InducedSequence]) -> Vec<SeriesTerm> {
        series
            .iter()
            .map(|s| SeriesTerm {
                order: self.subgroup_order(s),
                generators: s.format(self),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::pc::parse_presentation;

    #[test]
    fn dihedral_subgroups() {
        let p = builtin("d8").unwrap().presentation;
        let full = p.full_sequence().unwrap();
        assert_eq!(p.subgroup_order(&full), Order::finite(8));
        let z = p.center().unwrap();
        assert_eq!(p.subgroup_order(&z), Order::finite(2));
        assert_eq!(z.format(&p), vec!["g1"]);
        let x = p.gen(2).unwrap();
        let h = p.induced_sequence(std::slice::from_ref(&x)).unwrap();
        assert!(p.contains(&h, &x).unwrap());
        assert!(!p.contains(&h, &p.gen(3).unwrap()).unwrap());
        assert!(p.is_subgroup(&h, &full).unwrap());
        assert_eq!(p.nilpotency_class(&full, 4).unwrap(), 2);
        assert_eq!(p.class_of(&[x], 4).unwrap(), 1);
        assert_eq!(p.class_of(&[], 4).unwrap(), 0);
        assert_eq!(p.elements().unwrap().len(), 8);
    }

    #[test]
    fn r_inv_center_contains_the_bottom_generator() {
        let p = builtin("r_inv").unwrap().presentation;
        let z = p.center().unwrap();
        assert!(p.contains(&z, &p.gen(1).unwrap()).unwrap());
        let series = p
            .lower_central_series(&p.full_sequence().unwrap(), 16)
            .unwrap();
        assert_eq!(series.len(), 6);
        for w in series.windows(2) {
            assert!(p.is_subgroup(&w[1], &w[0]).unwrap());
        }
    }

    #[test]
    fn non_nilpotent_groups_are_reported() {
        let s3 =
            parse_presentation("pcgroup s3\nngens 2\norders 3 2\nconj 1 2 := g1^2\nend\n").unwrap();
        let full = s3.full_sequence().unwrap();
        assert!(matches!(
            s3.nilpotency_class(&full, 8),
            Err(Error::NotNilpotent { .. })
        ));
        let dinf =
            parse_presentation("pcgroup dinf\nngens 2\norders 0 2\nconj 1 2 := g1^-1\nend\n")
                .unwrap();
        let full = dinf.full_sequence().unwrap();
        assert!(matches!(
            dinf.nilpotency_class(&full, 5),
            Err(Error::MaxClassExceeded { bound: 5 })
        ));
        assert_eq!(dinf.subgroup_order(&full), Order::Infinite);
        assert!(matches!(dinf.center(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn p_central_series_of_d16() {
        let p = builtin("d16").unwrap().presentation;
        let series = p.exponent_p_central_series(2, 8).unwrap();
        assert!(series.last().unwrap().is_trivial());
        assert_eq!(p.subgroup_order(&series[0]), Order::prime_power(2, 4));
        assert_eq!(p.subgroup_order(&p.center().unwrap()), Order::finite(2));
    }
}
