//! Seeded random elements and bounded enumeration of generated subgroups.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pc::{Exp, PcElement, PcPresentation};

/// The random source used by every sampled check.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exponent range drawn at infinite positions.
const INFINITE_SPREAD: Exp = 2;

/// A random normal form: uniform at finite positions, in `[-2, 2]` at
/// infinite ones. Uniform over the group when it is finite.
pub fn random_element(p: &PcPresentation, rng: &mut impl Rng) -> PcElement {
    let exps: Vec<Exp> = p
        .rel_orders()
        .iter()
        .map(|&o| {
            if o == 0 {
                rng.gen_range(-INFINITE_SPREAD..=INFINITE_SPREAD)
            } else {
                rng.gen_range(0..o as Exp)
            }
        })
        .collect();
    p.element(&exps).expect("exponents drawn in range")
}

/// Precomputed generators and inverses for random words in a subgroup.
pub struct WordSampler {
    letters: Vec<PcElement>,
}

impl WordSampler {
    pub fn new(p: &PcPresentation, gens: &[PcElement]) -> Result<Self> {
        let mut letters = Vec::with_capacity(2 * gens.len());
        for g in gens.iter().filter(|g| !g.is_identity()) {
            let inv = p.invert(g)?;
            letters.push(g.clone());
            if inv != *g {
                letters.push(inv);
            }
        }
        Ok(Self { letters })
    }

    /// Letters of a random word of the given length, as indices.
    pub fn draw(&self, len: usize, rng: &mut impl Rng) -> Vec<usize> {
        if self.letters.is_empty() {
            return Vec::new();
        }
        (0..len)
            .map(|_| rng.gen_range(0..self.letters.len()))
            .collect()
    }

    pub fn evaluate(&self, p: &PcPresentation, word: &[usize]) -> Result<PcElement> {
        p.multiply_all(word.iter().map(|&i| &self.letters[i]))
    }
}

/// All elements of `<gens>` in breadth-first order from the identity, right
/// multiplying by the generators in the order given. Fails once more than
/// `cap` elements have been found.
pub fn enumerate_subgroup(
    p: &PcPresentation,
    gens: &[PcElement],
    cap: u64,
) -> Result<Vec<PcElement>> {
    if !p.is_finite() {
        return Err(Error::Unsupported(format!(
            "enumeration of subgroups of `{}`, which has infinite relative orders",
            p.name()
        )));
    }
    let mut seen: HashSet<PcElement> = HashSet::new();
    let mut out = vec![p.identity()];
    seen.insert(p.identity());
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in gens {
            let y = p.multiply(&x, g)?;
            if seen.insert(y.clone()) {
                if out.len() as u64 >= cap {
                    return Err(Error::CapExceeded(format!(
                        "subgroup of `{}` has more than {cap} elements",
                        p.name()
                    )));
                }
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// The defining generators that survive modulo the Frattini-type subgroup
/// generated by relative powers and commutators of generators. Falls back to
/// all generators when the survivors do not generate the group.
pub fn generating_set(p: &PcPresentation) -> Result<Vec<PcElement>> {
    let gens = p.generators();
    let mut derived = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if p.rel_order(i) != 0 {
            derived.push(p.power(g, p.rel_order(i) as Exp)?);
        }
        for h in &gens[..i] {
            derived.push(p.commutator(h, g)?);
        }
    }
    let phi = p.normal_closure(&derived, &gens)?;
    let redundant = phi.leading_positions();
    let kept: Vec<PcElement> = (0..p.len())
        .filter(|i| !redundant.contains(i))
        .map(|i| gens[i].clone())
        .collect();
    let spans = p.is_subgroup(&p.full_sequence()?, &p.induced_sequence(&kept)?)?;
    Ok(if spans { kept } else { gens })
}
