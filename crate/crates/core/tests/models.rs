//! Properties of the built models and of operations on them.

use std::sync::Arc;

use dgla::cells::{
    banana_model_at_a, banana_model_symmetric, banana_p, banana_shelling, bigon_model, cube_data, cube_spec,
    interval_model, polyhedron_model, PVariant,
};
use dgla::model::{check_d_squared, check_localised, check_morphism, twist_cell, twisted_diff, Model, Morphism};
use dgla::rational::frac;
use dgla::series_calc::{bch2, flow, mu2, mun_truncated, OperatorPoly};
use dgla::{DglaError, LieElement};
use proptest::prelude::*;

fn elem(m: &Model, name: &str) -> LieElement {
    m.elem(name).unwrap()
}

fn diff_of(m: &Model, name: &str) -> LieElement {
    m.diff(m.generator(name).unwrap()).unwrap().clone()
}

fn point(m: &Model, name: &str) -> LieElement {
    m.cell(m.generator(name).unwrap()).unwrap().localisation.clone().unwrap()
}

fn all_models() -> Vec<Model> {
    let mut v = vec![interval_model(4).unwrap(), bigon_model(4).unwrap()];
    for n in 2..=4 {
        v.push(banana_model_at_a(n, 3).unwrap());
        v.push(banana_model_symmetric(n, 3).unwrap());
    }
    v.push((*cube_data(2).unwrap().model).clone());
    v.push(polyhedron_model(&cube_spec(), 2).unwrap());
    v.push(polyhedron_model(&banana_shelling(4), 3).unwrap());
    v
}

#[test]
fn every_model_squares_to_zero() {
    for m in all_models() {
        let r = check_d_squared(&m, m.max_order()).unwrap();
        assert!(r.pass, "{}: {:?}", m.name(), r.failures);
    }
}

#[test]
fn checks_refuse_orders_beyond_the_model() {
    let m = bigon_model(2).unwrap();
    assert!(matches!(check_d_squared(&m, 3), Err(DglaError::OrderExceedsModel { .. })));
}

#[test]
fn bigon_twisted_to_its_vertex() {
    let order = 3;
    let m = bigon_model(order).unwrap();
    let (a, e1, e2) = (elem(&m, "a"), elem(&m, "e1"), elem(&m, "e2"));
    let v = mu2(&e1, &e2, order).unwrap();
    let f = m.generator("f").unwrap();
    let t = twist_cell(&m, f, &v.scale(&frac(-1, 2)), order).unwrap();
    let expected = &bch2(&e1, &-&e2, order).unwrap() - &a.bracket(&elem(&t, "f"));
    assert!(diff_of(&t, "f").is_equal(&expected, order));
    assert!(point(&t, "f").is_equal(&a, order));
    assert!(check_d_squared(&t, order).unwrap().pass);
    assert!(check_localised(&t, f, &a, order).unwrap().pass);
}

#[test]
fn twisting_there_and_back_is_the_identity() {
    let order = 3;
    let m = bigon_model(order).unwrap();
    let f = m.generator("f").unwrap();
    let e = &elem(&m, "e1").scale(&frac(1, 3)) + &elem(&m, "e2").scale(&frac(-2, 5));
    let back = twist_cell(&twist_cell(&m, f, &e, order).unwrap(), f, &-&e, order).unwrap();
    assert!(diff_of(&back, "f").is_equal(&diff_of(&m, "f"), order));
    assert!(point(&back, "f").is_equal(&point(&m, "f"), order));
}

#[test]
fn twist_moves_the_localisation_point() {
    let order = 3;
    let m = banana_model_at_a(3, order).unwrap();
    let ctx = m.clone();
    let e = &elem(&m, "e1").scale(&frac(1, 2)) + &elem(&m, "e3").scale(&frac(1, 4));
    let h = m.generator("h").unwrap();
    let t = twist_cell(&m, h, &e, order).unwrap();
    let moved = flow(&e, &elem(&m, "a"), &ctx, order).unwrap();
    assert!(point(&t, "h").is_equal(&moved, order));
    assert!(check_d_squared(&t, order).unwrap().pass);
    assert!(check_localised(&t, h, &moved, order).unwrap().pass);
}

#[test]
fn twist_rejects_edges_outside_the_cell() {
    let m = bigon_model(2).unwrap();
    let a = m.generator("a").unwrap();
    assert!(twist_cell(&m, a, &elem(&m, "e1"), 2).is_err());
}

#[test]
fn symmetric_banana_twists_back_to_the_vertex_model() {
    for n in [2usize, 3] {
        let order = 3;
        let sym = banana_model_symmetric(n, order).unwrap();
        let at_a = banana_model_at_a(n, order).unwrap();
        let e = |i: usize| elem(&sym, &format!("e{}", i % n + 1));
        let mut t = sym.clone();
        for i in 0..n {
            let vi = mu2(&e(i), &e(i + 1), order).unwrap();
            let fi = t.generator(&format!("f{}", i + 1)).unwrap();
            t = twist_cell(&t, fi, &vi.scale(&frac(-1, 2)), order).unwrap();
        }
        let es: Vec<LieElement> = (0..n).map(e).collect();
        let v = mun_truncated(&es, order).unwrap();
        t = twist_cell(&t, t.generator("h").unwrap(), &v.scale(&frac(-1, 2)), order).unwrap();
        for c in at_a.cells() {
            let name = c.generator.name();
            assert!(diff_of(&t, name).is_equal(&c.diff, order), "n = {n}, ∂{name}");
        }
    }
}

#[test]
fn vertex_banana_3_cell_is_linear_in_faces() {
    let m = banana_model_at_a(4, 3).unwrap();
    let (a, h) = (elem(&m, "a"), elem(&m, "h"));
    let rest = &diff_of(&m, "h") + &a.bracket(&h);
    for (t, _) in rest.normalized(3).terms() {
        let leaves = t.leaves();
        assert_eq!(leaves.iter().filter(|g| g.degree() == 1).count(), 1, "{t}");
        assert!(leaves.iter().all(|g| g.degree() >= 0), "{t}");
    }
}

#[test]
fn face_boundaries_lie_in_the_vertex_kernel() {
    let n = 4;
    let m = banana_model_at_a(n, 3).unwrap();
    let a = elem(&m, "a");
    for i in 0..n {
        let x = bch2(&elem(&m, &format!("e{}", i + 1)), &-&elem(&m, &format!("e{}", (i + 1) % n + 1)), 3).unwrap();
        assert!(twisted_diff(&m, &a, &x, 3).unwrap().is_zero_at(3), "BCH(e{}, −e{})", i + 1, (i + 1) % n + 1);
    }
}

#[test]
fn cube_centres_are_related_by_conjugators() {
    let data = cube_data(2).unwrap();
    let ctx = &*data.model;
    for ((name, c), (sq, bi)) in data.conjugators.iter().zip(data.square_centres.iter().zip(&data.bigon_centres)) {
        assert!(flow(c, sq, ctx, 2).unwrap().is_equal(bi, 2), "{name}");
    }
}

#[test]
fn morphisms_compose() {
    let order = 2;
    let m = Arc::new(bigon_model(order).unwrap());
    let id = Morphism::identity(m.clone());
    let twice = id.compose(&id, order).unwrap();
    assert!(twice.agrees_with(&id, order));
    assert!(check_morphism(&twice, order).unwrap().pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `P(ad_{y₁},…)` commutes with `∂_a` when every `yᵢ` is `∂_a`-closed.
    #[test]
    fn operators_commute_with_the_twisted_differential(
        cs in prop::collection::vec((-3i64..=3, 1i64..=3), 6),
        which in 0usize..3,
    ) {
        let order = 3;
        let n = 3;
        let m = banana_model_at_a(n, order).unwrap();
        let a = elem(&m, "a");
        let c = |k: usize| frac(cs[k].0, cs[k].1);
        let ys: Vec<LieElement> = (0..n - 1)
            .map(|i| {
                let w = &elem(&m, &format!("f{}", i + 1)).scale(&c(i)) + &elem(&m, &format!("f{}", i + 2)).scale(&c(i + 2));
                twisted_diff(&m, &a, &w, order).unwrap()
            })
            .collect();
        let p = &banana_p(n, order, PVariant::Averaged).unwrap()[which];
        let w = &elem(&m, "h").scale(&c(4)) + &elem(&m, "e1").bracket(&elem(&m, "h")).scale(&c(5));
        let lhs = twisted_diff(&m, &a, &p.apply(&ys, &w, order).unwrap(), order).unwrap();
        let rhs = p.apply(&ys, &twisted_diff(&m, &a, &w, order).unwrap(), order).unwrap();
        prop_assert!(lhs.is_equal(&rhs, order));
    }

    #[test]
    fn twisting_preserves_d_squared(c1 in (-3i64..=3, 1i64..=4), c2 in (-3i64..=3, 1i64..=4)) {
        let order = 3;
        let m = bigon_model(order).unwrap();
        let e = &elem(&m, "e1").scale(&frac(c1.0, c1.1)) + &elem(&m, "e2").scale(&frac(c2.0, c2.1));
        let t = twist_cell(&m, m.generator("f").unwrap(), &e, order).unwrap();
        prop_assert!(check_d_squared(&t, order).unwrap().pass);
    }
}

#[test]
fn operator_identity_is_unital() {
    let one = OperatorPoly::one(2, 3);
    assert!(one.is_unital());
    for p in banana_p(4, 3, PVariant::Averaged).unwrap() {
        assert!(p.is_unital());
    }
}
