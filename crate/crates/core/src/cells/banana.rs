use std::collections::BTreeMap;
use std::sync::Arc;

use super::face::{bigon_face, Edge};
use super::{gen, skeleton};
use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, Generator, LieElement};
use crate::model::{morphism_report, Cell, Failure, Model, Morphism, Report};
use crate::rational::{self, frac};
use crate::series_calc::{
    bch2, bch_multi, exp_ad_series, extract_q, flow, mun_truncated, OperatorPoly, MU_N_MAX_ORDER,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PVariant {
    /// Dihedral average of the basic solution; satisfies the covariance conditions.
    Averaged,
    /// `P₁ = Pₙ = 1`, `Pᵢ = 1 + Q(BCH(X₁..Xᵢ₋₁), Xᵢ)`.
    Unaveraged,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BananaVariant {
    AtA,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryKind {
    Tau,
    Sigma,
    Iota,
}

/// Symbols `X₁..Xₙ` (1-based) with `Xₙ = −BCH(X₁,…,Xₙ₋₁)`.
fn cyclic_symbols(n: usize, order: usize) -> Vec<OperatorPoly> {
    let k = n - 1;
    let mut xs: Vec<OperatorPoly> = (0..k).map(|i| OperatorPoly::symbol(i, k, order)).collect();
    xs.push(OperatorPoly::bch(&xs, k, order).neg());
    xs
}

/// The operator polynomials `P₁..Pₙ` in `n − 1` symbols.
pub fn banana_p(n: usize, order: usize, variant: PVariant) -> Result<Vec<OperatorPoly>> {
    if n < 2 {
        return Err(DglaError::InvalidArgument(format!("banana needs n ≥ 2, got {n}")));
    }
    let k = n - 1;
    let q = extract_q(order);
    let x = cyclic_symbols(n, order);
    let xi = |i: usize| &x[i - 1];
    let seg = |j: usize, l: usize| OperatorPoly::bch(&x[j - 1..l], k, order);
    let qq = |a: &OperatorPoly, b: &OperatorPoly| OperatorPoly::q_of(&q, a, b);
    let one = OperatorPoly::one(k, order);
    let ps = (1..=n)
        .map(|i| match variant {
            PVariant::Unaveraged => {
                if i == 1 || i == n {
                    one.clone()
                } else {
                    one.add(&qq(&seg(1, i - 1), xi(i)))
                }
            }
            PVariant::Averaged => {
                let lo = if i == n { 2 } else { 1 };
                let mut acc = OperatorPoly::zero(k, order);
                for j in lo..i {
                    acc = acc.add(&qq(&seg(j, i - 1), xi(i)));
                    acc = acc.add(&qq(&seg(j, i), &xi(i).neg()));
                }
                for j in i + 1..n {
                    acc = acc.add(&qq(&seg(i, j).neg(), xi(i)));
                    acc = acc.add(&qq(&seg(i + 1, j).neg(), &xi(i).neg()));
                }
                one.add(&acc.scale(&frac(1, 2 * n as i64)))
            }
        })
        .collect();
    Ok(ps)
}

fn free_symbols(k: usize) -> Vec<LieElement> {
    (1..=k).map(|i| gen(Generator::new(&format!("x{i}"), 0))).collect()
}

/// `Σ_{i<n} Pᵢ(ad_x)xᵢ = Pₙ(ad_x)BCH(x₁,…,xₙ₋₁)` on free degree-0 generators.
pub fn check_identity6(ps: &[OperatorPoly], order: usize) -> Result<Report> {
    let n = ps.len();
    let xs = free_symbols(n - 1);
    let series: Vec<AssocSeries> = xs.iter().map(|x| x.expand_assoc(order)).collect();
    let mut lhs = AssocSeries::zero(order + 1);
    for (p, x) in ps.iter().zip(&series) {
        lhs = lhs.add(&p.apply_series(&series, x));
    }
    let rhs = ps[n - 1].apply_series(&series, &bch_multi(&xs, order)?.expand_assoc(order));
    Ok(series_report("identity6", "P", &lhs.sub(&rhs)))
}

fn series_report(check: &str, subject: &str, delta: &AssocSeries) -> Report {
    let failures = crate::model::first_nonzero(delta)
        .map(|k| Failure {
            subject: subject.to_string(),
            component: k,
            term: LieElement::from_assoc(&delta.length_component(k + 1)).to_string(),
        })
        .into_iter()
        .collect();
    Report::new(check, failures)
}

fn poly_report(check: &str, pairs: Vec<(String, OperatorPoly)>) -> Report {
    let failures = pairs
        .into_iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(subject, d)| {
            let terms = d.terms();
            let (w, c) = &terms[0];
            let word: Vec<String> = w.iter().map(|i| format!("X{}", i + 1)).collect();
            Failure { subject, component: w.len(), term: format!("{} {}", crate::rational::format(c), word.join("")) }
        })
        .collect();
    Report::new(check, failures)
}

/// `P_{i+1}(X) = Pᵢ(X₂,…,Xₙ₋₁,−BCH(X₁,…,Xₙ₋₁))`, indices mod n.
pub fn check_cyclic_covariance(ps: &[OperatorPoly]) -> Result<Report> {
    let n = ps.len();
    let order = ps.iter().map(|p| p.order()).min().unwrap_or(0);
    let x = cyclic_symbols(n, order);
    let images: Vec<OperatorPoly> = x[1..].to_vec();
    let mut pairs = Vec::new();
    for i in 0..n {
        let rhs = ps[i].substitute(&images)?;
        pairs.push((format!("P{}", (i + 1) % n + 1), ps[(i + 1) % n].sub(&rhs)));
    }
    Ok(poly_report("cyclic", pairs))
}

/// `P_{n−i}(X) = Pᵢ(−Xₙ₋₁,…,−X₁)` with `P₀ = Pₙ`.
pub fn check_reversal_covariance(ps: &[OperatorPoly]) -> Result<Report> {
    let n = ps.len();
    let k = n - 1;
    let order = ps.iter().map(|p| p.order()).min().unwrap_or(0);
    let images: Vec<OperatorPoly> = (0..k).map(|j| OperatorPoly::symbol(k - 1 - j, k, order).neg()).collect();
    let mut pairs = Vec::new();
    for i in 1..=n {
        let target = if i == n { n } else { n - i };
        let rhs = ps[i - 1].substitute(&images)?;
        pairs.push((format!("P{target}"), ps[target - 1].sub(&rhs)));
    }
    Ok(poly_report("reversal", pairs))
}

struct BananaGens {
    a: Generator,
    b: Generator,
    e: Vec<Generator>,
    f: Vec<Generator>,
    h: Generator,
}

fn banana_gens(n: usize) -> BananaGens {
    BananaGens {
        a: Generator::new("a", -1),
        b: Generator::new("b", -1),
        e: (1..=n).map(|i| Generator::new(&format!("e{i}"), 0)).collect(),
        f: (1..=n).map(|i| Generator::new(&format!("f{i}"), 1)).collect(),
        h: Generator::new("h", 2),
    }
}

fn banana_skeleton(g: &BananaGens, order: usize) -> Result<Model> {
    let edges: Vec<Edge> = g.e.iter().map(|&e| Edge::new(e, g.a, g.b)).collect();
    skeleton("banana", &[g.a, g.b], &edges, order)
}

/// `Yⱼ = BCH(eⱼ, −eⱼ₊₁)` for `j = 1..n−1`.
fn p_arguments(g: &BananaGens, order: usize) -> Result<Vec<AssocSeries>> {
    let n = g.e.len();
    (0..n - 1).map(|j| Ok(bch2(&gen(g.e[j]), &-gen(g.e[j + 1]), order)?.expand_assoc(order))).collect()
}

fn face_cell(g: &BananaGens, i: usize, diff: LieElement, point: LieElement) -> Cell {
    let n = g.e.len();
    let (ei, ej) = (g.e[i], g.e[(i + 1) % n]);
    Cell::new(g.f[i], diff, &gen(ei) - &gen(ej), [g.a, g.b, ei, ej, g.f[i]].into()).localised_at(point)
}

fn three_cell(g: &BananaGens, diff: LieElement, point: LieElement) -> Cell {
    let boundary = g.f.iter().fold(LieElement::zero(), |acc, &f| &acc + &gen(f));
    let mut closure: std::collections::BTreeSet<Generator> = [g.a, g.b, g.h].into();
    closure.extend(g.e.iter().chain(g.f.iter()).copied());
    Cell::new(g.h, diff, boundary, closure).localised_at(point)
}

/// All 2-cells and the 3-cell localised at the vertex `a`.
pub fn banana_model_at_a(n: usize, order: usize) -> Result<Model> {
    let ps = banana_p(n, order, PVariant::Averaged)?;
    banana_model_at_a_with(n, order, &ps)
}

pub(crate) fn banana_model_at_a_with(n: usize, order: usize, ps: &[OperatorPoly]) -> Result<Model> {
    let g = banana_gens(n);
    let sk = banana_skeleton(&g, order)?;
    let a = gen(g.a);
    let mut cells = sk.cells().to_vec();
    for i in 0..n {
        let y = bch2(&gen(g.e[i]), &-gen(g.e[(i + 1) % n]), order)?;
        let diff = &y - &a.bracket(&gen(g.f[i]));
        cells.push(face_cell(&g, i, diff, a.clone()));
    }
    let args = p_arguments(&g, order)?;
    let len = order + 1;
    let mut dh = a.expand_assoc(order).bracket(&AssocSeries::letter(g.h, len)).neg();
    for (p, &f) in ps.iter().zip(&g.f) {
        dh = dh.add(&p.apply_series(&args, &AssocSeries::letter(f, len)));
    }
    cells.push(three_cell(&g, LieElement::from_assoc(&dh), a));
    Model::new(format!("banana{n}-at-a"), order, cells)
}

/// Centre point `x = u_{½v}(a)` and diagonal `v = μₙ(e₁,…,eₙ)`.
pub(crate) fn banana_centre(n: usize, ctx: &Model, order: usize) -> Result<(LieElement, LieElement)> {
    let g = banana_gens(n);
    let es: Vec<LieElement> = g.e.iter().map(|&e| gen(e)).collect();
    let v = mun_truncated(&es, order)?;
    let x = flow(&v.scale(&frac(1, 2)), &gen(g.a), ctx, order)?;
    Ok((v, x))
}

/// The symmetric model: faces localised at their centres, the 3-cell at `u_{½v}(a)`.
///
/// For `n ≥ 3`, `v` is the displayed expansion of `μₙ`; the model is valid at
/// every order, and symmetric through [`SYMMETRY_CAP`] brackets.
pub fn banana_model_symmetric(n: usize, order: usize) -> Result<Model> {
    let ps = banana_p(n, order, PVariant::Averaged)?;
    let g = banana_gens(n);
    let sk = banana_skeleton(&g, order)?;
    let a = gen(g.a);
    let mut cells = sk.cells().to_vec();
    let len = order + 1;
    let mut inner = AssocSeries::zero(len);
    let args = p_arguments(&g, order)?;
    for (i, p) in ps.iter().enumerate() {
        let (ei, ej) = (gen(g.e[i]), gen(g.e[(i + 1) % n]));
        let face = bigon_face(g.f[i], &ei, &ej, &a, &sk, order)?;
        let half_vi = face.diagonal.expand_assoc(order).scale(&frac(1, 2));
        let fi = exp_ad_series(&half_vi, &AssocSeries::letter(g.f[i], len), &rational::one());
        inner = inner.add(&p.apply_series(&args, &fi));
        cells.push(face_cell(&g, i, face.diff, face.centre));
    }
    let (v, x) = banana_centre(n, &sk, order)?;
    let half_v = v.expand_assoc(order).scale(&frac(1, 2));
    let mut dh = exp_ad_series(&half_v, &inner, &-rational::one());
    dh = dh.sub(&x.expand_assoc(order).bracket(&AssocSeries::letter(g.h, len)));
    cells.push(three_cell(&g, LieElement::from_assoc(&dh), x));
    let model = Model::new(format!("banana{n}-symmetric"), order, cells)?;
    Ok(if n >= 3 { model.with_symmetry_cap(n, SYMMETRY_CAP) } else { model })
}

/// Highest order at which the 3-cell's symmetry is certified for `n ≥ 3`:
/// `∂h` through `N` brackets involves `v` only through `N − 1` brackets.
pub const SYMMETRY_CAP: usize = MU_N_MAX_ORDER + 1;

fn idx(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// τ, σ or ι on the banana's generators; indices are 1-based and taken mod n.
pub fn banana_symmetry(kind: SymmetryKind, model: Arc<Model>) -> Result<Morphism> {
    let n = (1..).take_while(|i| model.generator(&format!("e{i}")).is_ok()).count();
    if n < 2 {
        return Err(DglaError::InvalidModel(format!("{} is not a banana model", model.name())));
    }
    let g = banana_gens(n);
    for x in g.e.iter().chain(&g.f).chain([&g.a, &g.b, &g.h]) {
        model.cell(*x)?;
    }
    let mut assign = BTreeMap::new();
    let (a, b, h) = (gen(g.a), gen(g.b), gen(g.h));
    for i in 0..n {
        let (e, f) = (gen(g.e[i]), gen(g.f[i]));
        let ii = i as i64 + 1;
        let (eimg, fimg) = match kind {
            SymmetryKind::Tau => (gen(g.e[idx(ii, n)]), gen(g.f[idx(ii, n)])),
            SymmetryKind::Sigma => {
                // eᵢ ↦ e_{n−i}, fᵢ ↦ −f_{n−i−1}
                (gen(g.e[idx(n as i64 - ii - 1, n)]), -gen(g.f[idx(n as i64 - ii - 2, n)]))
            }
            SymmetryKind::Iota => (-&e, -&f),
        };
        assign.insert(g.e[i], eimg);
        assign.insert(g.f[i], fimg);
    }
    match kind {
        SymmetryKind::Tau => {
            assign.insert(g.a, a);
            assign.insert(g.b, b);
            assign.insert(g.h, h);
        }
        SymmetryKind::Sigma => {
            assign.insert(g.a, a);
            assign.insert(g.b, b);
            assign.insert(g.h, -&h);
        }
        SymmetryKind::Iota => {
            assign.insert(g.a, b);
            assign.insert(g.b, a);
            assign.insert(g.h, -&h);
        }
    }
    Morphism::new(model.clone(), model, assign)
}

/// `φ(∂g) = ∂φ(g)` for every generator of an endomorphism, refusing orders
/// beyond the model's certified symmetry order.
pub fn check_symmetry(m: &Model, phi: &Morphism, order: usize) -> Result<Report> {
    if let Some((n, cap)) = m.symmetry_cap() {
        if order > cap {
            return Err(DglaError::SymmetryOrderCap { n, requested: order, cap });
        }
    }
    morphism_report("symmetry", phi, order, &|_| true)
}
