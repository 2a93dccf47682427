use num_traits::{One, Zero};

use super::bch::{degree_zero, exp_ad_series};
use crate::error::Result;
use crate::lie::{bernoulli_table, AssocSeries, Generator, LieElement};
use crate::rational::{self, Rational};

/// Source of `∂` on associative images: the Leibniz extension of a
/// differential given on generators.
pub trait Differential: Sync {
    fn apply(&self, x: &AssocSeries) -> Result<AssocSeries>;
}

/// `u_e(a) = e^{−ad_e} a + Σₙ (−1)ⁿ/(n+1)! adₑⁿ(∂e)` on associative images.
pub fn flow_series(e: &AssocSeries, a: &AssocSeries, de: &AssocSeries) -> AssocSeries {
    let mut acc = exp_ad_series(e, a, &-Rational::one());
    let max_len = acc.max_len().min(de.max_len());
    let mut term = de.truncate(max_len);
    let mut n = 0i64;
    while !term.is_zero() {
        // (−1)ⁿ/(n+1)!
        acc.add_assign_scaled(&term, &Rational::one());
        n += 1;
        term = e.bracket(&term).scale(&(-Rational::one() / rational::int(n + 1)));
    }
    acc
}

/// Unit-time flow of the point `a` along `e`.
pub fn flow(e: &LieElement, a: &LieElement, diff: &dyn Differential, order: usize) -> Result<LieElement> {
    degree_zero(e)?;
    a.require_degree(-1)?;
    let es = e.expand_assoc(order);
    let de = diff.apply(&es)?;
    Ok(LieElement::from_assoc(&flow_series(&es, &a.expand_assoc(order), &de)))
}

/// Flow for time `t`, i.e. unit-time flow along `t·e`.
pub fn flow_time(
    e: &LieElement,
    a: &LieElement,
    t: &Rational,
    diff: &dyn Differential,
    order: usize,
) -> Result<LieElement> {
    if t.is_zero() {
        degree_zero(e)?;
        a.require_degree(-1)?;
        return Ok(a.normalized(order));
    }
    flow(&e.scale(t), a, diff, order)
}

/// `∂e = ad_e b + Σᵢ Bᵢ/i! adₑⁱ(b − a)` on associative images, the unique
/// differential with `u_e(a) = b`.
pub fn interval_diff_series(e: &AssocSeries, a: &AssocSeries, b: &AssocSeries) -> AssocSeries {
    let max_len = e.max_len().min(a.max_len()).min(b.max_len());
    let mut acc = e.bracket(b);
    let bern = bernoulli_table(max_len);
    let mut term = b.sub(a);
    let mut i = 0usize;
    while !term.is_zero() {
        let c = &bern[i] / Rational::from_integer(rational::factorial(i));
        acc.add_assign_scaled(&term, &c);
        i += 1;
        term = e.bracket(&term);
    }
    acc
}

pub fn interval_diff(e: Generator, a: Generator, b: Generator, order: usize) -> Result<LieElement> {
    LieElement::generator(e).require_degree(0)?;
    LieElement::generator(a).require_degree(-1)?;
    LieElement::generator(b).require_degree(-1)?;
    let len = order + 1;
    let s =
        interval_diff_series(&AssocSeries::letter(e, len), &AssocSeries::letter(a, len), &AssocSeries::letter(b, len));
    Ok(LieElement::from_assoc(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn interval_low_order_terms() {
        let (ge, ga, gb) = (Generator::new("e", 0), Generator::new("a", -1), Generator::new("b", -1));
        let (e, a, b) = (LieElement::generator(ge), LieElement::generator(ga), LieElement::generator(gb));
        let d = interval_diff(ge, ga, gb, 3).unwrap();
        assert!(d.component(0).is_equal(&(&b - &a), 0));
        assert!(d.component(1).is_equal(&e.bracket(&(&a + &b)).scale(&frac(1, 2)), 1));
        let two = e.bracket(&e.bracket(&(&b - &a))).scale(&frac(1, 12));
        assert!(d.component(2).is_equal(&two, 2));
        // B₃ = 0
        assert!(d.component(3).is_zero_at(3));
    }

    #[test]
    fn interval_diff_rejects_bad_degrees() {
        let (ge, ga) = (Generator::new("e", 0), Generator::new("a", -1));
        assert!(interval_diff(ga, ga, ga, 2).is_err());
        assert!(interval_diff(ge, ge, ga, 2).is_err());
    }
}
