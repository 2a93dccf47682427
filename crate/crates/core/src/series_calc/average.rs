use super::bch::{bch_series, degree_zero};
use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, LieElement};
use crate::rational::frac;

/// Highest bracket count to which `μₙ` (n ≥ 3) is available.
pub const MU_N_MAX_ORDER: usize = 2;

/// `μ₂(x, y) = BCH(x, ½·BCH(−x, y))` on associative images.
pub fn mu2_series(x: &AssocSeries, y: &AssocSeries) -> AssocSeries {
    let inner = bch_series(&[x.neg(), y.clone()]).scale(&frac(1, 2));
    bch_series(&[x.clone(), inner])
}

/// `(1/n)Σxᵢ − 1/(12n²) Σ_{i≠j} [xᵢ,[xᵢ,xⱼ]]` on associative images.
pub fn mun_series(xs: &[AssocSeries]) -> AssocSeries {
    let n = xs.len() as i64;
    let max_len = xs.iter().map(|x| x.max_len()).min().unwrap_or(1);
    let mut acc = AssocSeries::zero(max_len);
    for x in xs {
        acc.add_assign_scaled(x, &frac(1, n));
    }
    let c = frac(-1, 12 * n * n);
    for (i, xi) in xs.iter().enumerate() {
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                acc.add_assign_scaled(&xi.bracket(&xi.bracket(xj)), &c);
            }
        }
    }
    acc
}

pub fn mu2(x: &LieElement, y: &LieElement, order: usize) -> Result<LieElement> {
    degree_zero(x)?;
    degree_zero(y)?;
    Ok(LieElement::from_assoc(&mu2_series(&x.expand_assoc(order), &y.expand_assoc(order))))
}

/// Universal average of `n` degree-0 elements.
///
/// `n = 1` returns the argument, `n = 2` uses the closed form of [`mu2`] at any
/// order, and `n ≥ 3` is limited to [`MU_N_MAX_ORDER`] brackets.
pub fn mun(xs: &[LieElement], order: usize) -> Result<LieElement> {
    for x in xs {
        degree_zero(x)?;
    }
    if xs.len() >= 3 && order > MU_N_MAX_ORDER {
        return Err(DglaError::AverageOrderCap { n: xs.len(), requested: order, cap: MU_N_MAX_ORDER });
    }
    mun_truncated(xs, order)
}

/// The displayed expansion of `μₙ` evaluated at any order, without the cap.
///
/// Beyond [`MU_N_MAX_ORDER`] brackets this is a degree-0 element agreeing
/// with `μₙ` only to that order.
pub fn mun_truncated(xs: &[LieElement], order: usize) -> Result<LieElement> {
    for x in xs {
        degree_zero(x)?;
    }
    match xs.len() {
        0 => Err(DglaError::InvalidArgument("μₙ needs at least one argument".into())),
        1 => Ok(xs[0].normalized(order)),
        2 => mu2(&xs[0], &xs[1], order),
        _ => {
            let series: Vec<AssocSeries> = xs.iter().map(|x| x.expand_assoc(order)).collect();
            Ok(LieElement::from_assoc(&mun_series(&series)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Generator;

    fn g(name: &str) -> LieElement {
        LieElement::generator(Generator::new(name, 0))
    }

    #[test]
    fn mu2_low_orders() {
        let (x, y) = (g("x"), g("y"));
        let m = mu2(&x, &y, 2).unwrap();
        assert!(m.component(0).is_equal(&(&x + &y).scale(&frac(1, 2)), 0));
        assert!(m.component(1).is_zero_at(1));
        let two = &x.bracket(&x.bracket(&y)) + &y.bracket(&y.bracket(&x));
        assert!(m.component(2).is_equal(&two.scale(&frac(-1, 48)), 2));
    }

    #[test]
    fn mu2_is_symmetric() {
        let (x, y) = (g("x"), g("y"));
        assert!(mu2(&x, &y, 4).unwrap().is_equal(&mu2(&y, &x, 4).unwrap(), 4));
    }

    #[test]
    fn mun_agrees_with_mu2() {
        let (x, y) = (g("x"), g("y"));
        let direct = mun_series(&[x.expand_assoc(2), y.expand_assoc(2)]);
        assert!(LieElement::from_assoc(&direct).is_equal(&mu2(&x, &y, 2).unwrap(), 2));
    }

    #[test]
    fn mun_is_odd_and_capped() {
        let xs = [g("x"), g("y"), g("z")];
        let neg: Vec<LieElement> = xs.iter().map(|x| -x).collect();
        let m = mun(&xs, 2).unwrap();
        assert!(mun(&neg, 2).unwrap().is_equal(&-&m, 2));
        assert!(mun(&xs[..1], 5).unwrap().is_equal(&xs[0], 5));
        assert!(matches!(mun(&xs, MU_N_MAX_ORDER + 1), Err(DglaError::AverageOrderCap { .. })));
    }
}
