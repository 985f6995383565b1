//! The group generated by `a = 1 + ad(x)` and the involutions `1 + ad(z)` for
//! basis letters `z` of a truncated V*, acting on the algebra by matrices
//! over GF(2).

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::vstar::{build_vstar, VSTAR_CAP};
use crate::error::{Error, Result};
use crate::lie::{to_source, BitMatrix, LieAlgebra};
use crate::report::{run_instances, witness, Mode, SamplingPolicy, VerdictReport};
use crate::sampling::rng;

/// Generator matrices of the truncated group. Generator 0 is `a`.
#[derive(Clone, Debug)]
pub struct UnipotentContext {
    n: usize,
    algebra: LieAlgebra,
    names: Vec<String>,
    gens: Vec<BitMatrix>,
}

pub fn build_unipotent_group(n: usize) -> Result<UnipotentContext> {
    if n > VSTAR_CAP {
        return Err(Error::CapExceeded(format!("n = {n} exceeds {VSTAR_CAP}")));
    }
    let algebra = build_vstar(n)?;
    let mut names = Vec::with_capacity(algebra.dim());
    let mut gens = Vec::with_capacity(algebra.dim());
    for (i, name) in algebra.names().iter().enumerate() {
        let m = algebra.unipotent(&algebra.basis(i))?;
        names.push(if i == 0 {
            "a".to_string()
        } else {
            name.clone()
        });
        gens.push(BitMatrix::from_endo(&m)?);
    }
    Ok(UnipotentContext {
        n,
        algebra,
        names,
        gens,
    })
}

impl UnipotentContext {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn a(&self) -> &BitMatrix {
        &self.gens[0]
    }

    pub fn generators(&self) -> &[BitMatrix] {
        &self.gens
    }

    /// Generator names: `a`, then the basis letters `u_A, v_A, w_A`.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> BitMatrix {
        BitMatrix::identity(self.algebra.dim())
    }

    /// Product of the generators at the given positions, left to right.
    pub fn evaluate(&self, word: &[usize]) -> BitMatrix {
        word.iter()
            .fold(self.identity(), |acc, &i| acc.mul(&self.gens[i]))
    }

    /// `id` for the empty word, else generator names separated by spaces.
    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "id".into();
        }
        word.iter()
            .map(|&i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn random_word(&self, len: usize, rng: &mut impl Rng) -> Vec<usize> {
        (0..len)
            .map(|_| rng.gen_range(0..self.gens.len()))
            .collect()
    }

    /// The underlying algebra in the Lie file format.
    pub fn export_lie(&self) -> String {
        to_source(&self.algebra)
    }

    /// One record per generator: a `gen <name>` line followed by its rows.
    pub fn matrix_dump(&self) -> String {
        let mut s = String::new();
        for (name, m) in self.names.iter().zip(&self.gens) {
            let _ = writeln!(s, "gen {name}");
            for row in m.bit_rows() {
                let _ = writeln!(s, "{row}");
            }
        }
        s
    }

    /// The conjugacy class of `a`, breadth first under conjugation by the
    /// generators. Fails once it holds more than `cap` matrices.
    pub fn conjugates_of_a(&self, cap: usize) -> Result<Vec<BitMatrix>> {
        let mut seen = HashSet::new();
        seen.insert(self.a().clone());
        let mut out = vec![self.a().clone()];
        let mut head = 0;
        while head < out.len() {
            let c = out[head].clone();
            head += 1;
            for g in &self.gens {
                // Generators are involutions, so g c g is the conjugate.
                let d = g.mul(&c).mul(g);
                if seen.insert(d.clone()) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded(format!(
                            "more than {cap} conjugates of a"
                        )));
                    }
                    out.push(d);
                }
            }
        }
        Ok(out)
    }

    /// All elements, breadth first from the identity.
    fn enumerate(&self, cap: u64) -> Result<Vec<Vec<usize>>> {
        let mut seen = HashSet::new();
        seen.insert(self.identity());
        let mut out: Vec<(Vec<usize>, BitMatrix)> = vec![(Vec::new(), self.identity())];
        let mut head = 0;
        while head < out.len() {
            let (w, m) = out[head].clone();
            head += 1;
            for (i, g) in self.gens.iter().enumerate() {
                let y = m.mul(g);
                if seen.insert(y.clone()) {
                    if out.len() as u64 >= cap {
                        return Err(Error::CapExceeded(format!(
                            "the group for n = {} has more than {cap} elements",
                            self.n
                        )));
                    }
                    let mut wi = w.clone();
                    wi.push(i);
                    out.push((wi, y));
                }
            }
        }
        Ok(out.into_iter().map(|(w, _)| w).collect())
    }
}

fn engel_word(g: &BitMatrix, a: &BitMatrix, n: usize) -> Result<BitMatrix> {
    let mut c = g.clone();
    for _ in 0..n {
        c = BitMatrix::commutator(&c, a)?;
    }
    Ok(c)
}

/// Checks `[g, a, ..., a] = 1` (`n_engel` copies of `a`). Sampled mode draws
/// `g` as random words of length `max_word_length`, after the identity and
/// the generators; exhaustive mode enumerates the group up to the cap.
pub fn matrix_left_engel_check(
    ctx: &UnipotentContext,
    n_engel: usize,
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    pol.validate()?;
    let domain: Vec<Vec<usize>> = match pol.mode {
        Mode::Exhaustive => ctx.enumerate(pol.exhaustive_cap)?,
        Mode::Sampled => {
            let mut r = rng(pol.seed);
            let mut words = vec![Vec::new()];
            words.extend((0..ctx.gens.len()).map(|i| vec![i]));
            words.truncate(pol.samples as usize);
            while (words.len() as u64) < pol.samples {
                words.push(ctx.random_word(pol.max_word_length, &mut r));
            }
            words
        }
    };
    let check = format!("left {n_engel}-Engel (matrices, n = {})", ctx.n);
    run_instances(&check, pol, &domain, |w| {
        let c = engel_word(&ctx.evaluate(w), ctx.a(), n_engel)?;
        Ok((!c.is_identity()).then(|| witness([("g", ctx.format_word(w))])))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub depth: usize,
    pub seed: u64,
    pub found: bool,
    pub attempts: u64,
    /// Conjugating words `g_1, ..., g_k` with `[a^{g_1}, ..., a^{g_k}] != 1`.
    pub conjugators: Vec<String>,
}

const ATTEMPT_CHUNK: u64 = 256;

/// Searches for `g_1, ..., g_k` with `[a^{g_1}, ..., a^{g_k}] != 1`, which
/// shows the normal closure of `a` has class at least `k`. Each attempt draws
/// fresh words of length at most `2n`; at most `pol.samples` attempts are made.
pub fn nonnilpotence_witness(
    ctx: &UnipotentContext,
    k: usize,
    pol: &SamplingPolicy,
) -> Result<WitnessReport> {
    if k == 0 {
        return Err(Error::Precondition(
            "witness depth must be at least 1".into(),
        ));
    }
    let mut report = WitnessReport {
        n: ctx.n,
        depth: k,
        seed: pol.seed,
        found: false,
        attempts: 0,
        conjugators: Vec::new(),
    };
    let max_len = 2 * ctx.n;
    let mut r = rng(pol.seed);
    while report.attempts < pol.samples {
        let batch = ATTEMPT_CHUNK.min(pol.samples - report.attempts);
        let attempts: Vec<Vec<Vec<usize>>> = (0..batch)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let len = r.gen_range(0..=max_len);
                        ctx.random_word(len, &mut r)
                    })
                    .collect()
            })
            .collect();
        let hits: Vec<bool> = attempts
            .par_iter()
            .map(|words| -> Result<bool> {
                let mut acc: Option<BitMatrix> = None;
                for w in words {
                    let conj = BitMatrix::conjugate(ctx.a(), &ctx.evaluate(w))?;
                    acc = Some(match acc {
                        None => conj,
                        Some(c) => BitMatrix::commutator(&c, &conj)?,
                    });
                }
                Ok(!acc.expect("k >= 1").is_identity())
            })
            .collect::<Result<_>>()?;
        if let Some(i) = hits.iter().position(|&h| h) {
            report.attempts += i as u64 + 1;
            report.found = true;
            report.conjugators = attempts[i].iter().map(|w| ctx.format_word(w)).collect();
            return Ok(report);
        }
        report.attempts += batch;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn generators_are_involutions() {
        let ctx = build_unipotent_group(2).unwrap();
        assert_eq!(ctx.generators().len(), 10);
        for g in ctx.generators() {
            assert!(g.mul(g).is_identity());
        }
        assert!(!ctx.a().is_identity());
        // u and v on the full index set are central in the truncation.
        let trivial: Vec<&str> = ctx
            .names()
            .iter()
            .zip(ctx.generators())
            .filter(|(_, g)| g.is_identity())
            .map(|(n, _)| n.as_str())
            .collect();
        assert_eq!(trivial, ["u_12", "v_12"]);
    }

    #[test]
    fn letter_families_commute() {
        let ctx = build_unipotent_group(2).unwrap();
        for letter in ["u", "v", "w"] {
            let family: Vec<&BitMatrix> = ctx
                .names()
                .iter()
                .zip(ctx.generators())
                .filter(|(n, _)| n.starts_with(letter))
                .map(|(_, g)| g)
                .collect();
            assert_eq!(family.len(), 3);
            for g in &family {
                for h in &family {
                    assert_eq!(g.mul(h), h.mul(g));
                }
            }
        }
    }

    #[test]
    fn engel_checks() {
        let ctx = build_unipotent_group(2).unwrap();
        let pol = SamplingPolicy::sampled(200, 3);
        assert_eq!(
            matrix_left_engel_check(&ctx, 3, &pol).unwrap().verdict,
            Verdict::SampledPass
        );
        let one = matrix_left_engel_check(&ctx, 1, &pol).unwrap();
        assert_eq!(one.verdict, Verdict::Fail);
        let g = &one.counterexample.unwrap()["g"];
        assert_ne!(g, "id");
    }

    #[test]
    fn small_group_exhaustively() {
        let ctx = build_unipotent_group(1).unwrap();
        let r = matrix_left_engel_check(&ctx, 3, &SamplingPolicy::exhaustive()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn small_truncations_have_abelian_closure() {
        for n in 1..=3 {
            let ctx = build_unipotent_group(n).unwrap();
            let class = ctx.conjugates_of_a(1 << 12).unwrap();
            assert_eq!(class.len(), [1, 4, 64][n - 1]);
            for c in &class {
                for d in &class {
                    assert_eq!(c.mul(d), d.mul(c));
                }
            }
        }
        let ctx = build_unipotent_group(2).unwrap();
        let none = nonnilpotence_witness(&ctx, 2, &SamplingPolicy::sampled(500, 1)).unwrap();
        assert!(!none.found && none.attempts == 500);
    }

    #[test]
    fn witnesses() {
        let pol = SamplingPolicy::sampled(10_000, 1);
        let ctx = build_unipotent_group(2).unwrap();
        let w1 = nonnilpotence_witness(&ctx, 1, &pol).unwrap();
        assert!(w1.found && w1.attempts == 1);
        let ctx = build_unipotent_group(4).unwrap();
        let w2 = nonnilpotence_witness(&ctx, 2, &pol).unwrap();
        assert!(w2.found);
        assert_eq!(w2.conjugators.len(), 2);
        assert_eq!(w2, nonnilpotence_witness(&ctx, 2, &pol).unwrap());
    }

    #[test]
    fn exports() {
        let ctx = build_unipotent_group(1).unwrap();
        let dump = ctx.matrix_dump();
        assert_eq!(dump.lines().filter(|l| l.starts_with("gen ")).count(), 4);
        assert_eq!(dump.lines().count(), 4 * 5);
        let back = crate::lie::parse_lie(&ctx.export_lie()).unwrap();
        assert_eq!(back.dim(), 4);
    }
}
