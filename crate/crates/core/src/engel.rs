//! Engel conditions, sandwich sets and commutativity graphs, checked
//! exhaustively on small domains or on seeded samples.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pc::{PcElement, PcPresentation};
use crate::report::{run_instances, witness, Mode, SamplingPolicy, Verdict, VerdictReport};
use crate::sampling::{enumerate_subgroup, generating_set, random_element, rng, WordSampler};

/// Graph on named elements with an edge exactly where two elements commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativityGraph {
    pub vertices: Vec<String>,
    /// Each edge lists its endpoints in vertex order.
    pub edges: BTreeSet<(String, String)>,
}

impl CommutativityGraph {
    /// Builds a graph from vertex names and unordered edges. Panics on an
    /// unknown vertex, since graphs are written by hand.
    pub fn new(vertices: &[&str], edges: &[(&str, &str)]) -> Self {
        let vertices: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let pos = |v: &str| {
            vertices
                .iter()
                .position(|w| w == v)
                .unwrap_or_else(|| panic!("unknown vertex {v}"))
        };
        let edges = edges
            .iter()
            .map(|&(u, v)| {
                let (i, j) = (pos(u), pos(v));
                let (i, j) = (i.min(j), i.max(j));
                (vertices[i].clone(), vertices[j].clone())
            })
            .collect();
        Self { vertices, edges }
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        self.edges.contains(&(u.to_string(), v.to_string()))
            || self.edges.contains(&(v.to_string(), u.to_string()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

impl fmt::Display for CommutativityGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "no edges on {}", self.vertices.join(", "));
        }
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{}", edges.join(", "))
    }
}

pub fn commutativity_graph(
    p: &PcPresentation,
    named: &[(String, PcElement)],
) -> Result<CommutativityGraph> {
    let mut edges = BTreeSet::new();
    for (i, (u, a)) in named.iter().enumerate() {
        for (v, b) in &named[i + 1..] {
            if p.commutator(a, b)?.is_identity() {
                edges.insert((u.clone(), v.clone()));
            }
        }
    }
    Ok(CommutativityGraph {
        vertices: named.iter().map(|(n, _)| n.clone()).collect(),
        edges,
    })
}

/// Elements of the whole group to quantify over: every element in
/// exhaustive mode, uniform random normal forms otherwise.
fn group_domain(p: &PcPresentation, pol: &SamplingPolicy) -> Result<Vec<PcElement>> {
    pol.validate()?;
    match pol.mode {
        Mode::Exhaustive => enumerate_subgroup(p, &generating_set(p)?, pol.exhaustive_cap),
        Mode::Sampled => {
            let mut r = rng(pol.seed);
            Ok((0..pol.samples)
                .map(|_| random_element(p, &mut r))
                .collect())
        }
    }
}

fn repeat_commutator(
    p: &PcPresentation,
    first: &PcElement,
    then: &PcElement,
    n: usize,
) -> Result<PcElement> {
    let mut c = first.clone();
    for _ in 0..n {
        c = p.commutator(&c, then)?;
    }
    Ok(c)
}

/// `[x, a, ..., a] = 1` with `n` copies of `a`, for every tested `x`.
pub fn is_left_n_engel(
    p: &PcPresentation,
    a: &PcElement,
    n: usize,
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    let domain = group_domain(p, pol)?;
    run_instances(&format!("left-{n}-engel"), pol, &domain, |x| {
        let c = repeat_commutator(p, x, a, n)?;
        Ok((!c.is_identity()).then(|| witness([("x", p.format_element(x))])))
    })
}

/// `[a, x, ..., x] = 1` with `n` copies of `x`, for every tested `x`.
pub fn is_right_n_engel(
    p: &PcPresentation,
    a: &PcElement,
    n: usize,
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    let domain = group_domain(p, pol)?;
    run_instances(&format!("right-{n}-engel"), pol, &domain, |x| {
        let c = repeat_commutator(p, a, x, n)?;
        Ok((!c.is_identity()).then(|| witness([("x", p.format_element(x))])))
    })
}

/// A quantified element of `<X>`: enumerated, or a random word in `X`.
#[derive(Clone)]
enum Pick {
    Element(PcElement),
    Word(Vec<usize>),
}

struct SubgroupDomain<'a> {
    p: &'a PcPresentation,
    sampler: WordSampler,
    elements: Option<Vec<PcElement>>,
}

impl<'a> SubgroupDomain<'a> {
    fn new(p: &'a PcPresentation, xs: &[PcElement], pol: &SamplingPolicy) -> Result<Self> {
        pol.validate()?;
        let elements = match pol.mode {
            Mode::Exhaustive => Some(enumerate_subgroup(p, xs, pol.exhaustive_cap)?),
            Mode::Sampled => None,
        };
        Ok(Self {
            p,
            sampler: WordSampler::new(p, xs)?,
            elements,
        })
    }

    fn size(&self) -> u64 {
        self.elements.as_ref().map_or(0, |e| e.len() as u64)
    }

    fn all(&self) -> impl Iterator<Item = Pick> + '_ {
        self.elements.iter().flatten().cloned().map(Pick::Element)
    }

    fn resolve(&self, pick: &Pick) -> Result<PcElement> {
        match pick {
            Pick::Element(e) => Ok(e.clone()),
            Pick::Word(w) => self.sampler.evaluate(self.p, w),
        }
    }
}

fn check_domain_size(count: u64, pol: &SamplingPolicy, what: &str) -> Result<()> {
    if count > pol.exhaustive_cap {
        return Err(Error::CapExceeded(format!(
            "exhaustive {what} would test {count} instances, above the cap {}",
            pol.exhaustive_cap
        )));
    }
    Ok(())
}

/// Instances of a quantifier over `k` members of `X` and `m` elements of
/// `<X>`: every combination in exhaustive mode; in sampled mode every member
/// tuple with identity conjugators first, then random tuples and words.
fn quantified_instances(
    dom: &SubgroupDomain,
    members: usize,
    k: usize,
    m: usize,
    pol: &SamplingPolicy,
    what: &str,
) -> Result<Vec<(Vec<usize>, Vec<Pick>)>> {
    let tuples = |k: usize| -> Vec<Vec<usize>> {
        (0..k).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter()
                .flat_map(|t| {
                    (0..members).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect()
        })
    };
    if members == 0 {
        return Ok(Vec::new());
    }
    match pol.mode {
        Mode::Exhaustive => {
            let count = (members as u64)
                .saturating_pow(k as u32)
                .saturating_mul(dom.size().saturating_pow(m as u32));
            check_domain_size(count, pol, what)?;
            let picks: Vec<Vec<Pick>> = (0..m).fold(vec![Vec::new()], |acc, _| {
                acc.into_iter()
                    .flat_map(|t| {
                        dom.all().map(move |g| {
                            let mut t = t.clone();
                            t.push(g);
                            t
                        })
                    })
                    .collect()
            });
            Ok(tuples(k)
                .into_iter()
                .flat_map(|t| picks.iter().map(move |ps| (t.clone(), ps.clone())))
                .collect())
        }
        Mode::Sampled => {
            let mut r = rng(pol.seed);
            let ident = vec![Pick::Word(Vec::new()); m];
            let mut out: Vec<_> = tuples(k)
                .into_iter()
                .take(pol.samples as usize)
                .map(|t| (t, ident.clone()))
                .collect();
            while (out.len() as u64) < pol.samples {
                let t: Vec<usize> = (0..k)
                    .map(|_| rand::Rng::gen_range(&mut r, 0..members))
                    .collect();
                let ps = (0..m)
                    .map(|_| Pick::Word(dom.sampler.draw(pol.max_word_length, &mut r)))
                    .collect();
                out.push((t, ps));
            }
            Ok(out)
        }
    }
}

/// For `a, b` in `X` and `g` in `<X>`, `<a, b^g>` has class at most 2,
/// tested as `[u, v, u] = [u, v, v] = 1` with `u = a`, `v = b^g`.
pub fn is_sandwich_set(
    p: &PcPresentation,
    xs: &[PcElement],
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    let dom = SubgroupDomain::new(p, xs, pol)?;
    let instances = quantified_instances(&dom, xs.len(), 2, 1, pol, "sandwich check")?;
    run_instances("sandwich", pol, &instances, |(t, picks)| {
        let (a, b) = (&xs[t[0]], &xs[t[1]]);
        let g = dom.resolve(&picks[0])?;
        let v = p.conjugate(b, &g)?;
        let uv = p.commutator(a, &v)?;
        let bad = !p.commutator(&uv, a)?.is_identity() || !p.commutator(&uv, &v)?.is_identity();
        Ok(bad.then(|| {
            witness([
                ("a", p.format_element(a)),
                ("b", p.format_element(b)),
                ("g", p.format_element(&g)),
            ])
        }))
    })
}

/// Sandwich set whose conjugate triples `<a, b^f, c^g>` have class at most 3.
pub fn is_strong_sandwich_set(
    p: &PcPresentation,
    xs: &[PcElement],
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    let pairs = is_sandwich_set(p, xs, pol)?;
    if !pairs.verdict.is_pass() {
        let mut r = pairs.with_note("pairwise class-2 condition does not hold");
        r.check = "strong-sandwich".into();
        return Ok(r);
    }
    let dom = SubgroupDomain::new(p, xs, pol)?;
    let instances = quantified_instances(&dom, xs.len(), 3, 2, pol, "strong sandwich check")?;
    let mut report = run_instances("strong-sandwich", pol, &instances, |(t, picks)| {
        let f = dom.resolve(&picks[0])?;
        let g = dom.resolve(&picks[1])?;
        let gens = [
            xs[t[0]].clone(),
            p.conjugate(&xs[t[1]], &f)?,
            p.conjugate(&xs[t[2]], &g)?,
        ];
        let bad = match p.class_of(&gens, 3) {
            Ok(_) => false,
            Err(Error::MaxClassExceeded { .. }) => true,
            Err(e) => return Err(e),
        };
        Ok(bad.then(|| {
            witness([
                ("a", p.format_element(&xs[t[0]])),
                ("b", p.format_element(&xs[t[1]])),
                ("c", p.format_element(&xs[t[2]])),
                ("f", p.format_element(&f)),
                ("g", p.format_element(&g)),
            ])
        }))
    })?;
    report.samples += pairs.samples;
    Ok(report)
}

/// For an involution `a`: `[x, a, ..., a] = [x, a]^((-2)^n)` with `n + 1`
/// copies of `a`, for each tested `x` and each `n` in `ns`.
pub fn engel_power_identity_check(
    p: &PcPresentation,
    a: &PcElement,
    ns: RangeInclusive<u32>,
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    if !p.power(a, 2)?.is_identity() {
        return Err(Error::Precondition(format!(
            "{} is not an involution",
            p.format_element(a)
        )));
    }
    if *ns.end() > 40 {
        return Err(Error::Precondition(
            "exponent (-2)^n must fit in 64 bits; use n <= 40".into(),
        ));
    }
    let domain = group_domain(p, pol)?;
    run_instances("engel-power-identity", pol, &domain, |x| {
        let base = p.commutator(x, a)?;
        let mut lhs = base.clone();
        for n in 1..=*ns.end() {
            lhs = p.commutator(&lhs, a)?;
            if n < *ns.start() {
                continue;
            }
            let rhs = p.power(&base, (-2i64).pow(n))?;
            if lhs != rhs {
                return Ok(Some(witness([
                    ("x", p.format_element(x)),
                    ("n", n.to_string()),
                ])));
            }
        }
        Ok(None)
    })
}

/// For each pair `(a, b)` of members of a strong sandwich set `X`, checks
/// that `X` together with `[a, b]` is again a strong sandwich set. `pairs`
/// defaults to all ordered pairs of distinct members.
pub fn sandwich_closure_check(
    p: &PcPresentation,
    xs: &[PcElement],
    pairs: Option<&[(usize, usize)]>,
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    let pre = is_strong_sandwich_set(p, xs, pol)?;
    if !pre.verdict.is_pass() {
        return Ok(VerdictReport::vacuous(
            "sandwich-closure",
            pol,
            format!("the set is not a strong sandwich set ({:?})", pre.verdict),
        ));
    }
    let all: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..xs.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let pairs = pairs.unwrap_or(&all);
    let mut total = VerdictReport {
        check: "sandwich-closure".into(),
        verdict: if pol.mode == Mode::Exhaustive {
            Verdict::Pass
        } else {
            Verdict::SampledPass
        },
        mode: pol.mode,
        samples: pre.samples,
        seed: pol.seed,
        inconclusive: 0,
        counterexample: None,
        notes: Vec::new(),
    };
    for &(i, j) in pairs {
        let (a, b) = (xs.get(i), xs.get(j));
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::IndexRange(format!(
                "pair ({i}, {j}) for a set of {}",
                xs.len()
            )));
        };
        let mut ys = xs.to_vec();
        ys.push(p.commutator(a, b)?);
        let r = is_strong_sandwich_set(p, &ys, pol)?;
        total.samples += r.samples;
        total.inconclusive += r.inconclusive;
        match r.verdict {
            Verdict::Fail => {
                let mut w = r.counterexample.unwrap_or_default();
                w.insert(
                    "pair".into(),
                    format!("{}, {}", p.format_element(a), p.format_element(b)),
                );
                total.verdict = Verdict::Fail;
                total.counterexample = Some(w);
                return Ok(total);
            }
            Verdict::Inconclusive => total.verdict = Verdict::Inconclusive,
            _ => {}
        }
    }
    Ok(total)
}

/// If `a` and `b` are left 3-Engel (under `pol`), then `<a, b>` has class at
/// most 4. The class itself is computed exactly.
pub fn pair_class_bound_check(
    p: &PcPresentation,
    a: &PcElement,
    b: &PcElement,
    pol: &SamplingPolicy,
) -> Result<VerdictReport> {
    for x in [a, b] {
        let r = is_left_n_engel(p, x, 3, pol)?;
        if !r.verdict.is_pass() {
            return Ok(VerdictReport::vacuous(
                "pair-class-bound",
                pol,
                format!(
                    "{} is not left 3-Engel ({:?})",
                    p.format_element(x),
                    r.verdict
                ),
            ));
        }
    }
    let mut report = VerdictReport {
        check: "pair-class-bound".into(),
        verdict: Verdict::Pass,
        mode: pol.mode,
        samples: 1,
        seed: pol.seed,
        inconclusive: 0,
        counterexample: None,
        notes: Vec::new(),
    };
    match p.class_of(&[a.clone(), b.clone()], 4) {
        Ok(c) => report.notes.push(format!("class {c}")),
        Err(Error::MaxClassExceeded { .. }) => {
            report.verdict = Verdict::Fail;
            report.counterexample = Some(witness([
                ("a", p.format_element(a)),
                ("b", p.format_element(b)),
            ]));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_presentation;

    fn d8() -> PcPresentation {
        parse_presentation("pcgroup d8\nngens 3\norders 2 2 2\nconj 2 3 := g2 g1\nend\n").unwrap()
    }

    fn d16() -> PcPresentation {
        parse_presentation(
            "pcgroup d16\nngens 4\norders 2 2 2 2\npow 2 := g1\npow 3 := g2\nconj 2 4 := g2 g1\nconj 3 4 := g3 g2 g1\nend\n",
        )
        .unwrap()
    }

    #[test]
    fn reflections_of_d8_form_a_sandwich_set() {
        let p = d8();
        let xs = [p.generator(1), p.generator(2)];
        let r = is_sandwich_set(&p, &xs, &SamplingPolicy::exhaustive()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.samples, 4 * 8);
    }

    #[test]
    fn reflections_of_d16_do_not() {
        let p = d16();
        let s = p.generator(3);
        let sr = p.multiply(&s, &p.generator(2)).unwrap();
        let r = is_sandwich_set(&p, &[s, sr], &SamplingPolicy::sampled(50, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.counterexample.unwrap()["g"], "id");
    }

    #[test]
    fn identity_is_engel_and_sandwich() {
        let p = d8();
        let id = p.identity();
        let pol = SamplingPolicy::exhaustive();
        assert_eq!(
            is_left_n_engel(&p, &id, 1, &pol).unwrap().verdict,
            Verdict::Pass
        );
        assert_eq!(
            is_sandwich_set(&p, std::slice::from_ref(&id), &pol)
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        assert_eq!(
            is_strong_sandwich_set(&p, &[id], &pol).unwrap().verdict,
            Verdict::Pass
        );
    }

    #[test]
    fn power_identity_on_d8() {
        let p = d8();
        let r =
            engel_power_identity_check(&p, &p.generator(2), 1..=3, &SamplingPolicy::exhaustive())
                .unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.samples, 8);
        let rotation = p.multiply(&p.generator(1), &p.generator(2)).unwrap();
        assert!(matches!(
            engel_power_identity_check(&p, &rotation, 1..=1, &SamplingPolicy::exhaustive()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn graph_of_d8_generators() {
        let p = d8();
        let named = vec![
            ("x".to_string(), p.generator(1)),
            ("y".to_string(), p.generator(2)),
            ("z".to_string(), p.generator(0)),
        ];
        let g = commutativity_graph(&p, &named).unwrap();
        assert_eq!(
            g,
            CommutativityGraph::new(&["x", "y", "z"], &[("z", "x"), ("y", "z")])
        );
        assert!(g.has_edge("z", "y"));
        assert!(!g.has_edge("x", "y"));
    }
}
