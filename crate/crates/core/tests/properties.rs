//! Algebraic invariants of the free Lie algebra and the series calculus.

use dgla::cells::{banana_model_at_a, interval_model};
use dgla::lie::{bernoulli, AssocSeries, BracketTree};
use dgla::rational::{frac, int};
use dgla::series_calc::{bch2, exp_ad, flow, mu2, OperatorPoly};
use dgla::{Generator, LieElement, Rational};
use proptest::prelude::*;

const POOL: [(&str, i32); 6] = [("a", -1), ("b", -1), ("x", 0), ("y", 0), ("f", 1), ("h", 2)];

fn leaf() -> impl Strategy<Value = BracketTree> {
    (0..POOL.len()).prop_map(|i| BracketTree::leaf(Generator::new(POOL[i].0, POOL[i].1)))
}

fn tree() -> impl Strategy<Value = BracketTree> {
    leaf().prop_recursive(2, 6, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| BracketTree::bracket(&l, &r)))
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

/// Homogeneous element: a combination of random trees, all of the first tree's degree.
fn element() -> impl Strategy<Value = LieElement> {
    prop::collection::vec((coeff(), tree()), 1..4).prop_map(|terms| {
        let d = terms[0].1.degree();
        LieElement::from_terms(terms.into_iter().filter(|(_, t)| t.degree() == d).map(|(c, t)| (t, c)))
    })
}

fn even_leaf() -> impl Strategy<Value = BracketTree> {
    prop::sample::select(vec!["x", "y", "z"]).prop_map(|n| BracketTree::leaf(Generator::new(n, 0)))
}

/// Degree-0 element in the free Lie algebra on `x, y, z`.
fn degree_zero() -> impl Strategy<Value = LieElement> {
    let t = even_leaf()
        .prop_recursive(2, 4, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| BracketTree::bracket(&l, &r)));
    prop::collection::vec((coeff(), t), 1..4)
        .prop_map(|terms| LieElement::from_terms(terms.into_iter().map(|(c, t)| (t, c))))
}

fn koszul(p: i32, q: i32) -> Rational {
    if (p as i64 * q as i64).rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn degree(x: &LieElement) -> i32 {
    x.homogeneous_degree().unwrap().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_antisymmetry(u in tree(), v in tree()) {
        let uv = LieElement::tree(BracketTree::bracket(&u, &v)).expand_assoc(6);
        let vu = LieElement::tree(BracketTree::bracket(&v, &u)).expand_assoc(6);
        prop_assert!(uv.add(&vu.scale(&koszul(u.degree(), v.degree()))).is_zero());
    }

    #[test]
    fn graded_jacobi(a in tree(), b in tree(), c in tree()) {
        let (x, y, z) = (LieElement::tree(a.clone()), LieElement::tree(b.clone()), LieElement::tree(c.clone()));
        let (p, q, r) = (a.degree(), b.degree(), c.degree());
        let sum = &(&y.bracket(&z).bracket(&x).scale(&koszul(p, q)) + &z.bracket(&x).bracket(&y).scale(&koszul(q, r)))
            + &x.bracket(&y).bracket(&z).scale(&koszul(r, p));
        prop_assert!(sum.is_zero_at(5));
    }

    #[test]
    fn expansion_is_a_homomorphism(x in element(), y in element()) {
        let n = 7;
        let (ex, ey) = (x.expand_assoc(n), y.expand_assoc(n));
        let direct = x.bracket(&y).expand_assoc(n);
        let formula = ex.mul(&ey).sub(&ey.mul(&ex).scale(&koszul(degree(&x), degree(&y))));
        prop_assert!(direct.sub(&formula).is_zero());
    }

    #[test]
    fn component_is_a_projection(x in element(), m in 0usize..4) {
        let c = x.component(m);
        prop_assert_eq!(c.component(m), c.clone());
        let top = x.max_bracket_count().unwrap_or(0);
        prop_assert!(x.component(top + 1 + m).is_empty());
    }

    #[test]
    fn dynkin_projection_recovers_lie_elements(x in element()) {
        prop_assert!(LieElement::from_assoc(&x.expand_assoc(4)).is_equal(&x, 4));
    }

    #[test]
    fn bch_exponentiates(x in degree_zero(), y in degree_zero(), n in 1usize..=4) {
        let z = bch2(&x, &y, n).unwrap();
        let lhs = z.expand_assoc(n).exp();
        let rhs = x.expand_assoc(n).exp().mul(&y.expand_assoc(n).exp());
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn bch_is_associative(x in degree_zero(), y in degree_zero(), z in degree_zero(), n in 1usize..=4) {
        let left = bch2(&bch2(&x, &y, n).unwrap(), &z, n).unwrap();
        let right = bch2(&x, &bch2(&y, &z, n).unwrap(), n).unwrap();
        prop_assert!(left.is_equal(&right, n));
    }

    #[test]
    fn bch_of_adjoints(x in degree_zero(), y in degree_zero(), t in element(), n in 1usize..=3) {
        let ops = [OperatorPoly::symbol(0, 2, n), OperatorPoly::symbol(1, 2, n)];
        let lhs = OperatorPoly::bch(&ops, 2, n).apply(&[x.clone(), y.clone()], &t, n).unwrap();
        let rhs = bch2(&x, &y, n).unwrap().bracket(&t);
        prop_assert!(lhs.is_equal(&rhs, n));
    }

    #[test]
    fn exp_ad_inverts(e in degree_zero(), t in element()) {
        let back = exp_ad(&-&e, &exp_ad(&e, &t, 4).unwrap(), 4).unwrap();
        prop_assert!(back.is_equal(&t, 4));
    }

    #[test]
    fn interval_flows_compose(c1 in coeff(), c2 in coeff(), n in 1usize..=4) {
        let m = interval_model(4).unwrap();
        let (a, e) = (m.elem("a").unwrap(), m.elem("e").unwrap());
        let (e1, e2) = (e.scale(&c1), e.scale(&c2));
        let lhs = flow(&e2, &flow(&e1, &a, &m, n).unwrap(), &m, n).unwrap();
        let rhs = flow(&bch2(&e1, &e2, n).unwrap(), &a, &m, n).unwrap();
        prop_assert!(lhs.is_equal(&rhs, n));
    }
}

#[test]
fn odd_bernoulli_numbers_vanish() {
    for k in 1..=10 {
        assert_eq!(bernoulli(2 * k + 1), int(0), "B_{}", 2 * k + 1);
    }
    assert_eq!(bernoulli(1), frac(-1, 2));
}

#[test]
fn average_of_two_edges_flows_across() {
    let m = banana_model_at_a(2, 3).unwrap();
    let (a, b) = (m.elem("a").unwrap(), m.elem("b").unwrap());
    let v = mu2(&m.elem("e1").unwrap(), &m.elem("e2").unwrap(), 3).unwrap();
    assert!(flow(&v, &a, &m, 3).unwrap().is_equal(&b, 3));
}

#[test]
fn truncation_keeps_word_length() {
    let x = LieElement::generator(Generator::new("x", 0));
    let y = LieElement::generator(Generator::new("y", 0));
    let s: AssocSeries = x.bracket(&x.bracket(&y)).expand_assoc(1);
    assert!(s.is_zero());
}
