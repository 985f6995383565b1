//! Built-in groups with their expected invariants, and replayable
//! commutator identities.

mod replay;

use serde::Serialize;

use crate::engel::{commutativity_graph, is_sandwich_set, CommutativityGraph};
use crate::error::{Error, Result};
use crate::expr::evaluate;
use crate::order::Order;
use crate::pc::{parse_presentation, PcBuilder, PcElement, PcPresentation, PcWord};
use crate::report::{SamplingPolicy, VerdictReport};
use crate::subgroup::DEFAULT_MAX_CLASS;

pub use replay::{lemma_replay, ReplayItem, ReplayOutcome, ReplayReport, REPLAY_SUITES};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Stated for this group in the literature.
    Published,
    /// Determined by an independent computation and recorded here.
    Computed,
    /// Immediate from the construction.
    Immediate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected<T> {
    pub value: T,
    pub source: Source,
}

fn expect<T>(value: T, source: Source) -> Expected<T> {
    Expected { value, source }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub presentation: PcPresentation,
    /// Named generating elements (the sandwich generators) as words.
    pub roles: Vec<(&'static str, &'static str)>,
    pub expected_order: Expected<Order>,
    pub expected_class: Expected<usize>,
    pub expected_graph: Option<Expected<CommutativityGraph>>,
    /// Whether the named generators should form a sandwich set.
    pub expect_sandwich: bool,
    pub replay_items: Vec<ReplayItem>,
}

impl CatalogEntry {
    pub fn named_generators(&self) -> Result<Vec<(String, PcElement)>> {
        self.roles
            .iter()
            .map(|&(name, word)| Ok((name.to_string(), evaluate(&self.presentation, word)?)))
            .collect()
    }

    pub fn generator_set(&self) -> Result<Vec<PcElement>> {
        Ok(self
            .named_generators()?
            .into_iter()
            .map(|(_, g)| g)
            .collect())
    }

    /// Looks up a named generator such as `x`.
    pub fn role(&self, name: &str) -> Result<PcElement> {
        let &(_, word) = self.roles.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            Error::Precondition(format!("`{}` has no generator named {name}", self.key))
        })?;
        evaluate(&self.presentation, word)
    }
}

pub const KEYS: [&str; 12] = [
    "r_free",
    "r_inv",
    "beta",
    "gamma",
    "complete4",
    "graph5",
    "graph4a",
    "graph4b",
    "alpha",
    "d8",
    "d16",
    "c2",
];

/// Source text of the presentations shipped as data files.
pub fn embedded_source(key: &str) -> Option<&'static str> {
    Some(match key {
        "r_free" => include_str!("data/r_free.pc"),
        "r_inv" => include_str!("data/r_inv.pc"),
        "beta" => include_str!("data/beta.pc"),
        "gamma" => include_str!("data/gamma.pc"),
        "graph4b" => include_str!("data/graph4b.pc"),
        "d8" => include_str!("data/d8.pc"),
        "d16" => include_str!("data/d16.pc"),
        "c2" => include_str!("data/c2.pc"),
        _ => return None,
    })
}

fn embedded(key: &str) -> Result<PcPresentation> {
    parse_presentation(embedded_source(key).expect("embedded presentation"))
}

/// Direct product with `p`'s generators below `q`'s. The labels of `q` are
/// shifted past the largest label of `p`.
pub fn direct_product(p: &PcPresentation, q: &PcPresentation) -> Result<PcPresentation> {
    let shift = p.len();
    let label_shift = p.labels().last().copied().unwrap_or(0);
    let orders = p
        .rel_orders()
        .iter()
        .chain(q.rel_orders())
        .copied()
        .collect();
    let labels = p
        .labels()
        .iter()
        .copied()
        .chain(q.labels().iter().map(|l| l + label_shift))
        .collect();
    let mut b = PcBuilder::new(format!("{}_x_{}", p.name(), q.name()), orders)
        .labels(labels)
        .fuel(p.fuel().max(q.fuel()));
    for (part, offset) in [(p, 0), (q, shift)] {
        let moved =
            |w: &PcWord| PcWord::from_letters(w.letters().iter().map(|&(g, e)| (g + offset, e)));
        for i in 0..part.len() {
            if let Some(w) = part.power_rhs(i) {
                b = b.power(i + offset, moved(w));
            }
            for j in 0..i {
                if let Some(w) = part.conj_rhs(j, i) {
                    b = b.conj(j + offset, i + offset, moved(w));
                }
            }
        }
    }
    b.build()
}

fn c2() -> Result<PcPresentation> {
    embedded("c2")
}

fn d8() -> Result<PcPresentation> {
    embedded("d8")
}

pub fn builtin(key: &str) -> Result<CatalogEntry> {
    use Source::*;
    let graph = |v: &[&str], e: &[(&str, &str)], s| Some(expect(CommutativityGraph::new(v, e), s));
    let entry = match key {
        "r_free" => CatalogEntry {
            key: "r_free",
            description: "free sandwich group of rank 3",
            presentation: embedded(key)?,
            roles: vec![("x", "g12"), ("y", "g13"), ("z", "g14")],
            expected_order: expect(Order::Infinite, Computed),
            expected_class: expect(5, Published),
            expected_graph: graph(&["x", "y", "z"], &[], Published),
            expect_sandwich: true,
            replay_items: Vec::new(),
        },
        "r_inv" => CatalogEntry {
            key: "r_inv",
            description: "largest sandwich group of rank 3 generated by involutions",
            presentation: embedded(key)?,
            roles: vec![("x", "g12"), ("y", "g13"), ("z", "g14")],
            expected_order: expect(Order::prime_power(2, 13), Published),
            expected_class: expect(5, Published),
            expected_graph: graph(&["x", "y", "z"], &[], Computed),
            expect_sandwich: true,
            replay_items: replay::items("r_inv"),
        },
        "beta" => CatalogEntry {
            key: "beta",
            description: "sandwich group on involutions x, a, b, c with commutativity graph beta",
            presentation: embedded(key)?,
            roles: vec![("x", "g18"), ("a", "g26"), ("b", "g27"), ("c", "g28")],
            expected_order: expect(Order::prime_power(2, 28), Published),
            expected_class: expect(9, Published),
            expected_graph: graph(
                &["x", "a", "b", "c"],
                &[("a", "b"), ("a", "c"), ("b", "c")],
                Published,
            ),
            expect_sandwich: true,
            replay_items: replay::items("beta"),
        },
        "gamma" => CatalogEntry {
            key: "gamma",
            description: "sandwich group on involutions x, y, a, b with commutativity graph gamma",
            presentation: embedded(key)?,
            roles: vec![("x", "g17"), ("y", "g18"), ("a", "g19"), ("b", "g20")],
            expected_order: expect(Order::prime_power(2, 20), Published),
            expected_class: expect(9, Published),
            expected_graph: graph(
                &["x", "y", "a", "b"],
                &[("a", "b"), ("x", "a"), ("y", "b")],
                Published,
            ),
            expect_sandwich: true,
            replay_items: replay::items("gamma"),
        },
        "complete4" => {
            let c4 = direct_product(
                &direct_product(&c2()?, &c2()?)?,
                &direct_product(&c2()?, &c2()?)?,
            )?;
            CatalogEntry {
                key: "complete4",
                description:
                    "elementary abelian group of order 16 (complete graph on four vertices)",
                presentation: c4.rename("complete4"),
                roles: vec![("x", "g1"), ("y", "g2"), ("a", "g3"), ("b", "g4")],
                expected_order: expect(Order::finite(16), Published),
                expected_class: expect(1, Immediate),
                expected_graph: graph(
                    &["x", "y", "a", "b"],
                    &[
                        ("x", "y"),
                        ("x", "a"),
                        ("x", "b"),
                        ("y", "a"),
                        ("y", "b"),
                        ("a", "b"),
                    ],
                    Published,
                ),
                expect_sandwich: true,
                replay_items: Vec::new(),
            }
        }
        "graph5" => CatalogEntry {
            key: "graph5",
            description: "D8 x C2 x C2 (all edges but x-y)",
            presentation: direct_product(&d8()?, &direct_product(&c2()?, &c2()?)?)?
                .rename("graph5"),
            roles: vec![("x", "g2"), ("y", "g3"), ("a", "g4"), ("b", "g5")],
            expected_order: expect(Order::finite(32), Published),
            expected_class: expect(2, Immediate),
            expected_graph: graph(
                &["x", "y", "a", "b"],
                &[("x", "a"), ("x", "b"), ("y", "a"), ("y", "b"), ("a", "b")],
                Immediate,
            ),
            expect_sandwich: true,
            replay_items: Vec::new(),
        },
        "graph4a" => CatalogEntry {
            key: "graph4a",
            description: "D8 x D8 (four-cycle x-a-y-b)",
            presentation: direct_product(&d8()?, &d8()?)?.rename("graph4a"),
            roles: vec![("x", "g2"), ("y", "g3"), ("a", "g5"), ("b", "g6")],
            expected_order: expect(Order::finite(64), Published),
            expected_class: expect(2, Immediate),
            expected_graph: graph(
                &["x", "y", "a", "b"],
                &[("x", "a"), ("x", "b"), ("y", "a"), ("y", "b")],
                Immediate,
            ),
            expect_sandwich: true,
            replay_items: Vec::new(),
        },
        "graph4b" => CatalogEntry {
            key: "graph4b",
            description: "(D8 wr C2) x C2 (triangle a-b-x with c joined to x)",
            presentation: embedded(key)?,
            roles: vec![("a", "g5"), ("b", "g4"), ("c", "g7"), ("x", "g8")],
            expected_order: expect(Order::finite(256), Published),
            expected_class: expect(4, Computed),
            expected_graph: graph(
                &["a", "b", "c", "x"],
                &[("a", "x"), ("c", "x"), ("a", "b"), ("b", "x")],
                Immediate,
            ),
            expect_sandwich: true,
            replay_items: Vec::new(),
        },
        "alpha" => CatalogEntry {
            key: "alpha",
            description: "r_inv x C2 (a joined to each of x, y, z)",
            presentation: direct_product(&embedded("r_inv")?, &c2()?)?.rename("alpha"),
            roles: vec![("x", "g12"), ("y", "g13"), ("z", "g14"), ("a", "g15")],
            expected_order: expect(Order::prime_power(2, 14), Immediate),
            expected_class: expect(5, Immediate),
            expected_graph: graph(
                &["x", "y", "z", "a"],
                &[("x", "a"), ("y", "a"), ("z", "a")],
                Published,
            ),
            expect_sandwich: true,
            replay_items: Vec::new(),
        },
        "d8" => CatalogEntry {
            key: "d8",
            description: "dihedral group of order 8",
            presentation: d8()?,
            roles: vec![("x", "g2"), ("y", "g3")],
            expected_order: expect(Order::finite(8), Immediate),
            expected_class: expect(2, Immediate),
            expected_graph: graph(&["x", "y"], &[], Immediate),
            expect_sandwich: true,
            replay_items: Vec::new(),
        },
        "d16" => CatalogEntry {
            key: "d16",
            description:
                "dihedral group of order 16, generated by two reflections (negative control)",
            presentation: embedded(key)?,
            roles: vec![("s", "g4"), ("sr", "g4 g3")],
            expected_order: expect(Order::finite(16), Immediate),
            expected_class: expect(3, Immediate),
            expected_graph: graph(&["s", "sr"], &[], Immediate),
            expect_sandwich: false,
            replay_items: Vec::new(),
        },
        "c2" => CatalogEntry {
            key: "c2",
            description: "cyclic group of order 2",
            presentation: c2()?,
            roles: vec![("x", "g1")],
            expected_order: expect(Order::finite(2), Immediate),
            expected_class: expect(1, Immediate),
            expected_graph: graph(&["x"], &[], Immediate),
            expect_sandwich: true,
            replay_items: Vec::new(),
        },
        _ => return Err(Error::UnknownKey(key.to_string())),
    };
    Ok(entry)
}

/// One compared field of a catalog report. Sub-computation errors are kept
/// here rather than aborting the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Field<T> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ok: bool,
}

impl<T: PartialEq> Field<T> {
    fn compare(expected: Option<&Expected<T>>, computed: Result<T>) -> Self
    where
        T: Clone,
    {
        let (computed, error) = match computed {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let ok = match (expected, &computed) {
            (Some(e), Some(c)) => e.value == *c,
            (None, Some(_)) => true,
            _ => false,
        };
        Self {
            expected: expected.map(|e| e.value.clone()),
            source: expected.map(|e| e.source),
            computed,
            error,
            ok,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencySummary {
    pub tests: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub key: String,
    pub consistency: ConsistencySummary,
    pub order: Field<Order>,
    pub class: Field<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Field<CommutativityGraph>>,
    pub sandwich: SandwichField,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichField {
    pub expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ok: bool,
}

/// Recomputes consistency, order, class, graph and the sandwich verdict of a
/// catalog entry and compares them with the recorded values.
pub fn verify_builtin(key: &str, pol: &SamplingPolicy, max_class: usize) -> Result<CatalogReport> {
    verify_entry(&builtin(key)?, pol, max_class)
}

/// [`verify_builtin`] for an entry already loaded, e.g. with a changed fuel.
pub fn verify_entry(
    entry: &CatalogEntry,
    pol: &SamplingPolicy,
    max_class: usize,
) -> Result<CatalogReport> {
    let p = &entry.presentation;
    let cr = p.check_consistency();
    let consistency = ConsistencySummary {
        tests: cr.tests.len(),
        failed: cr.failures().count(),
        inconclusive: cr.inconclusive().count(),
    };
    let order = Field::compare(Some(&entry.expected_order), Ok(p.group_order()));
    let class = Field::compare(
        Some(&entry.expected_class),
        p.full_sequence()
            .and_then(|s| p.nilpotency_class(&s, max_class)),
    );
    let named = entry.named_generators();
    let graph = entry.expected_graph.as_ref().map(|eg| {
        let computed = named.clone().and_then(|n| commutativity_graph(p, &n));
        Field::compare(Some(eg), computed)
    });
    let sandwich = match entry
        .generator_set()
        .and_then(|xs| is_sandwich_set(p, &xs, pol))
    {
        Ok(r) => SandwichField {
            expected: entry.expect_sandwich,
            ok: r.verdict.is_pass() == entry.expect_sandwich,
            report: Some(r),
            error: None,
        },
        Err(e) => SandwichField {
            expected: entry.expect_sandwich,
            report: None,
            error: Some(e.to_string()),
            ok: false,
        },
    };
    let passed = consistency.failed == 0
        && consistency.inconclusive == 0
        && order.ok
        && class.ok
        && graph.as_ref().is_none_or(|g| g.ok)
        && sandwich.ok;
    Ok(CatalogReport {
        key: entry.key.to_string(),
        consistency,
        order,
        class,
        graph,
        sandwich,
        passed,
    })
}

/// [`verify_builtin`] with the default policy and class bound.
pub fn verify_builtin_default(key: &str) -> Result<CatalogReport> {
    verify_builtin(key, &SamplingPolicy::default(), DEFAULT_MAX_CLASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_loads() {
        for key in KEYS {
            let e = builtin(key).unwrap();
            assert_eq!(e.key, key);
            assert_eq!(e.named_generators().unwrap().len(), e.roles.len());
        }
        assert!(matches!(builtin("nosuchgroup"), Err(Error::UnknownKey(_))));
    }

    #[test]
    fn direct_products_shift_labels() {
        let p = direct_product(&embedded("r_inv").unwrap(), &c2().unwrap()).unwrap();
        assert_eq!(p.len(), 14);
        assert_eq!(p.labels().last(), Some(&15));
        assert_eq!(p.group_order(), Order::prime_power(2, 14));
        let a = p.gen(15).unwrap();
        for g in p.generators() {
            assert!(p.commutator(&a, &g).unwrap().is_identity());
        }
        let d = direct_product(&d8().unwrap(), &d8().unwrap()).unwrap();
        assert_eq!(d.group_order(), Order::finite(64));
        assert!(d.check_consistency().is_consistent());
    }
}
