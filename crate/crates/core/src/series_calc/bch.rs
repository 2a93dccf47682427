use num_traits::{One, Zero};

use crate::error::Result;
use crate::lie::{AssocSeries, Letter, LieElement, Series};
use crate::rational::{self, Rational};

/// `log(exp(x₁)·…·exp(xₖ))`, truncated at the inputs' common length bound.
///
/// Exact in the truncated algebra, so this agrees with any bracketing of
/// iterated two-argument BCH.
pub fn bch_series<L: Letter>(xs: &[Series<L>]) -> Series<L> {
    let max_len = xs.iter().map(|x| x.max_len()).min().unwrap_or(0);
    let mut prod = Series::one(max_len);
    for x in xs {
        if !x.is_zero() {
            prod = prod.mul(&x.truncate(max_len).exp());
        }
    }
    prod.log()
}

/// `exp(t·ad_e)(x) = Σₖ tᵏadₑᵏ(x)/k!` for `e` of degree 0.
pub fn exp_ad_series(e: &AssocSeries, x: &AssocSeries, t: &Rational) -> AssocSeries {
    let max_len = e.max_len().min(x.max_len());
    let mut acc = x.truncate(max_len);
    if e.is_zero() || t.is_zero() {
        return acc;
    }
    let mut term = acc.clone();
    let mut k = 1i64;
    loop {
        term = e.bracket(&term).scale(&(t / rational::int(k)));
        if term.is_zero() {
            break;
        }
        acc.add_assign_scaled(&term, &Rational::one());
        k += 1;
    }
    acc
}

pub(crate) fn degree_zero(x: &LieElement) -> Result<()> {
    x.require_degree(0)
}

/// BCH(x, y) to `order` brackets, computed as `log(exp x · exp y)` and
/// projected to Lie form.
pub fn bch2(x: &LieElement, y: &LieElement, order: usize) -> Result<LieElement> {
    bch_multi(&[x.clone(), y.clone()], order)
}

/// Iterated BCH of a sequence of degree-0 elements; the empty sequence gives 0.
pub fn bch_multi(xs: &[LieElement], order: usize) -> Result<LieElement> {
    for x in xs {
        degree_zero(x)?;
    }
    let series: Vec<AssocSeries> = xs.iter().map(|x| x.expand_assoc(order)).collect();
    if series.is_empty() {
        return Ok(LieElement::zero());
    }
    Ok(LieElement::from_assoc(&bch_series(&series)))
}

/// `exp(ad_e)(x)` to `order` brackets. Flows act on non-vertex degrees by `exp(−ad_e)`;
/// negate `e` for that.
pub fn exp_ad(e: &LieElement, x: &LieElement, order: usize) -> Result<LieElement> {
    degree_zero(e)?;
    let s = exp_ad_series(&e.expand_assoc(order), &x.expand_assoc(order), &Rational::one());
    Ok(LieElement::from_assoc(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Generator;
    use crate::rational::frac;

    fn g(name: &str) -> LieElement {
        LieElement::generator(Generator::new(name, 0))
    }

    #[test]
    fn low_order_terms() {
        let (x, y) = (g("x"), g("y"));
        let z = bch2(&x, &y, 3).unwrap();
        assert!(z.component(0).is_equal(&(&x + &y), 0));
        assert!(z.component(1).is_equal(&x.bracket(&y).scale(&frac(1, 2)), 1));
        let two = &x.bracket(&x.bracket(&y)) + &y.bracket(&y.bracket(&x));
        assert!(z.component(2).is_equal(&two.scale(&frac(1, 12)), 2));
        let three = x.bracket(&y.bracket(&x.bracket(&y))).scale(&frac(-1, 24));
        assert!(z.component(3).is_equal(&three, 3));
    }

    #[test]
    fn identities() {
        let (x, y) = (g("x"), g("y"));
        let zero = LieElement::zero();
        assert!(bch2(&x, &zero, 4).unwrap().is_equal(&x, 4));
        assert!(bch2(&zero, &y, 4).unwrap().is_equal(&y, 4));
        assert!(bch2(&x, &-&x, 4).unwrap().is_zero_at(4));
        assert!(bch_multi(std::slice::from_ref(&x), 3).unwrap().is_equal(&x, 3));
        let f = g("f0");
        assert!(bch_multi(&[x.clone(), -&x, f.clone()], 4).unwrap().is_equal(&f, 4));
    }

    #[test]
    fn rejects_nonzero_degree() {
        let a = LieElement::generator(Generator::new("a", -1));
        assert!(bch2(&a, &g("x"), 2).is_err());
        assert!(exp_ad(&a, &g("x"), 2).is_err());
    }

    #[test]
    fn exp_ad_first_order() {
        let (e, x) = (g("e"), g("x"));
        assert!(exp_ad(&LieElement::zero(), &x, 3).unwrap().is_equal(&x, 3));
        let r = exp_ad(&e, &x, 1).unwrap();
        assert!(r.is_equal(&(&x + &e.bracket(&x)), 1));
    }

    #[test]
    fn exponential_of_bch_is_product() {
        let (x, y) = (g("x"), g("y"));
        let z = bch2(&x, &y, 4).unwrap();
        let lhs = z.expand_assoc(4).exp();
        let rhs = x.expand_assoc(4).exp().mul(&y.expand_assoc(4).exp());
        assert_eq!(lhs, rhs);
    }
}
