//! Laws of the Lie algebra engine, the commutator type bookkeeping and the
//! unipotent matrix groups, on random inputs.

use proptest::prelude::*;
use sandwichlab::constructions::{
    build_char2_example, build_unipotent_group, build_v, build_vstar, commutator_type,
    multi_weight, relation4_filter, CommutatorTree,
};
use sandwichlab::lie::{BitMatrix, LieAlgebra, LieElement};

fn algebras() -> Vec<LieAlgebra> {
    vec![
        build_v(),
        build_vstar(2).unwrap(),
        build_char2_example(5).unwrap(),
    ]
}

/// A random element from a list of coefficients, cycled over the basis.
fn element(l: &LieAlgebra, coeffs: &[u64]) -> LieElement {
    let terms: Vec<(usize, u64)> = (0..l.dim())
        .map(|i| (i, coeffs[i % coeffs.len()] % l.characteristic()))
        .collect();
    l.element(&terms)
}

fn coeffs() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..7, 1..24)
}

fn tree() -> impl Strategy<Value = CommutatorTree> {
    let leaf = prop_oneof![
        Just(CommutatorTree::X),
        (1u32..5).prop_map(CommutatorTree::A)
    ];
    leaf.prop_recursive(5, 32, 2, |inner| {
        (inner.clone(), inner).prop_map(|(u, v)| CommutatorTree::node(u, v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bracket_is_bilinear_and_alternating(a in coeffs(), b in coeffs(), c in coeffs(), k in 0u64..5) {
        for l in algebras() {
            let (x, y, z) = (element(&l, &a), element(&l, &b), element(&l, &c));
            let lhs = l.bracket(&l.add(&x, &y), &z).unwrap();
            let rhs = l.add(&l.bracket(&x, &z).unwrap(), &l.bracket(&y, &z).unwrap());
            prop_assert_eq!(lhs, rhs);
            let scaled = l.bracket(&l.scale(k, &x), &z).unwrap();
            prop_assert_eq!(scaled, l.scale(k, &l.bracket(&x, &z).unwrap()));
            prop_assert!(l.bracket(&x, &x).unwrap().is_zero());
        }
    }

    /// With `ad(x): v -> v x`, Jacobi reads `ad([x, y]) = ad(y) ad(x) - ad(x) ad(y)`.
    #[test]
    fn ad_is_an_anti_representation(a in coeffs(), b in coeffs()) {
        for l in algebras() {
            let (x, y) = (element(&l, &a), element(&l, &b));
            let (ax, ay) = (l.ad(&x).unwrap(), l.ad(&y).unwrap());
            let lhs = l.ad(&l.bracket(&x, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, ay.mul(&ax).sub(&ax.mul(&ay)));
        }
    }

    /// The basis test for sandwich elements extends to arbitrary elements.
    #[test]
    fn sandwich_condition_holds_off_the_basis(a in coeffs(), b in coeffs()) {
        let cases = [(build_vstar(2).unwrap(), "x"), (build_char2_example(5).unwrap(), "u0"), (build_v(), "x")];
        for (l, name) in cases {
            let s = l.named(name).unwrap();
            prop_assert!(l.is_sandwich_element(&s).unwrap());
            let (x, y) = (element(&l, &a), element(&l, &b));
            prop_assert!(l.left_normed(&[&s, &x, &s]).unwrap().is_zero());
            prop_assert!(l.left_normed(&[&s, &x, &y, &s]).unwrap().is_zero());
        }
    }

    #[test]
    fn lower_central_series_terms_are_nested(a in coeffs()) {
        for l in algebras() {
            let series = l.lower_central_series_upto(6);
            for w in series.windows(2) {
                let joined = l.span(w[0].iter().chain(&w[1]).cloned());
                prop_assert_eq!(joined.len(), w[0].len());
                // L^i L lies in L^{i+1}.
                if let Some(v) = w[0].first() {
                    let p = l.bracket(v, &element(&l, &a)).unwrap();
                    let with = l.span(w[1].iter().cloned().chain([p]));
                    prop_assert_eq!(with.len(), w[1].len());
                }
            }
        }
    }

    #[test]
    fn type_is_additive(u in tree(), v in tree()) {
        let t = CommutatorTree::node(u.clone(), v.clone());
        prop_assert_eq!(commutator_type(&t), commutator_type(&u) + commutator_type(&v));
        let w = multi_weight(&t);
        prop_assert_eq!(w.m as usize + w.e.values().sum::<u64>() as usize, t.leaves());
    }

    #[test]
    fn bracketing_with_a_letter_raises_the_type(u in tree(), j in 1u32..9) {
        let t = CommutatorTree::node(u.clone(), CommutatorTree::A(j));
        prop_assert_eq!(commutator_type(&t), commutator_type(&u) + 1);
        prop_assert_eq!(relation4_filter(&t), commutator_type(&t).abs() >= 2);
    }

    #[test]
    fn trees_survive_a_print_parse_round_trip(u in tree(), v in tree()) {
        let t = CommutatorTree::node(u, v);
        prop_assert_eq!(t.to_string().parse::<CommutatorTree>().unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// In the n = 3 group the normal closure of `a` is abelian and consists
    /// of involutions.
    #[test]
    fn conjugates_of_a_are_commuting_involutions(
        w1 in prop::collection::vec(0usize..22, 0..10),
        w2 in prop::collection::vec(0usize..22, 0..10),
    ) {
        let ctx = build_unipotent_group(3).unwrap();
        prop_assert_eq!(ctx.generators().len(), 22);
        let c1 = BitMatrix::conjugate(ctx.a(), &ctx.evaluate(&w1)).unwrap();
        let c2 = BitMatrix::conjugate(ctx.a(), &ctx.evaluate(&w2)).unwrap();
        prop_assert!(c1.mul(&c1).is_identity());
        prop_assert_eq!(c1.mul(&c2), c2.mul(&c1));
    }
}

#[test]
fn unipotent_generators_are_involutions() {
    for n in 1..=3 {
        let ctx = build_unipotent_group(n).unwrap();
        for g in ctx.generators() {
            assert!(g.mul(g).is_identity());
        }
    }
}
