use std::collections::HashMap;

use num_traits::One;

use super::bch::{bch_series, degree_zero};
use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, Generator, LieElement, Series, Symbol, Word};
use crate::rational::{self, Rational};

/// Noncommutative polynomial in formal adjoint symbols `X₁..X_k`.
///
/// Stored as a series over [`Symbol`]s (0-based internally), truncated at word
/// length `order`: applying a word of length `m` adds `m` brackets.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPoly {
    symbols: usize,
    poly: Series<Symbol>,
}

impl OperatorPoly {
    pub fn zero(symbols: usize, order: usize) -> Self {
        OperatorPoly { symbols, poly: Series::zero(order) }
    }

    pub fn one(symbols: usize, order: usize) -> Self {
        OperatorPoly { symbols, poly: Series::one(order) }
    }

    /// The symbol `X_{i+1}` (0-based index `i`).
    pub fn symbol(i: usize, symbols: usize, order: usize) -> Self {
        assert!(i < symbols, "symbol index out of range");
        OperatorPoly { symbols, poly: Series::letter(Symbol(i as u16), order) }
    }

    pub fn from_series(symbols: usize, poly: Series<Symbol>) -> Self {
        OperatorPoly { symbols, poly }
    }

    /// Builds from `(coefficient, 0-based word)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Vec<usize>)>>(
        symbols: usize,
        order: usize,
        terms: I,
    ) -> Result<Self> {
        let mut poly = Series::zero(order);
        for (c, w) in terms {
            if let Some(&bad) = w.iter().find(|&&i| i >= symbols) {
                return Err(DglaError::InvalidArgument(format!("symbol X{} outside X1..X{symbols}", bad + 1)));
            }
            poly.add_term(w.iter().map(|&i| Symbol(i as u16)).collect(), c);
        }
        Ok(OperatorPoly { symbols, poly })
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn order(&self) -> usize {
        self.poly.max_len()
    }

    pub fn series(&self) -> &Series<Symbol> {
        &self.poly
    }

    pub fn scalar_term(&self) -> Rational {
        self.poly.constant()
    }

    pub fn coeff(&self, word: &[usize]) -> Rational {
        let w: Word<Symbol> = word.iter().map(|&i| Symbol(i as u16)).collect();
        self.poly.coeff(&w)
    }

    /// Terms as `(0-based word, coefficient)`, by length then lexicographically.
    pub fn terms(&self) -> Vec<(Vec<usize>, Rational)> {
        self.poly
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| (w.iter().map(|s| s.0 as usize).collect(), c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        OperatorPoly { symbols: self.symbols.max(other.symbols), poly: self.poly.add(&other.poly) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        OperatorPoly { symbols: self.symbols.max(other.symbols), poly: self.poly.sub(&other.poly) }
    }

    pub fn neg(&self) -> Self {
        OperatorPoly { symbols: self.symbols, poly: self.poly.neg() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        OperatorPoly { symbols: self.symbols, poly: self.poly.scale(c) }
    }

    /// Composition: `(PQ)(t) = P(Q(t))`.
    pub fn mul(&self, other: &Self) -> Self {
        OperatorPoly { symbols: self.symbols.max(other.symbols), poly: self.poly.mul(&other.poly) }
    }

    pub fn truncate(&self, order: usize) -> Self {
        OperatorPoly { symbols: self.symbols, poly: self.poly.truncate(order) }
    }

    /// BCH of operators, `log(Π exp(Pᵢ))`; all inputs must have zero scalar term.
    pub fn bch(ps: &[OperatorPoly], symbols: usize, order: usize) -> Self {
        if ps.is_empty() {
            return OperatorPoly::zero(symbols, order);
        }
        let series: Vec<Series<Symbol>> = ps.iter().map(|p| p.poly.truncate(order)).collect();
        OperatorPoly { symbols, poly: bch_series(&series) }
    }

    /// Substitutes an operator polynomial for each symbol.
    pub fn substitute(&self, images: &[OperatorPoly]) -> Result<Self> {
        if images.len() != self.symbols {
            return Err(DglaError::ArityMismatch { expected: self.symbols, found: images.len() });
        }
        let symbols = images.iter().map(|p| p.symbols).max().unwrap_or(0);
        let order = images.iter().map(|p| p.order()).min().unwrap_or(self.order()).min(self.order());
        let poly = self.poly.substitute(&mut |s: Symbol| images[s.0 as usize].poly.clone(), order);
        Ok(OperatorPoly { symbols, poly })
    }

    /// `P(ad_{args₁},…)` applied to `target`, truncated at `order` brackets.
    pub fn apply(&self, args: &[LieElement], target: &LieElement, order: usize) -> Result<LieElement> {
        if args.len() != self.symbols {
            return Err(DglaError::ArityMismatch { expected: self.symbols, found: args.len() });
        }
        for a in args {
            degree_zero(a)?;
        }
        let args: Vec<AssocSeries> = args.iter().map(|a| a.expand_assoc(order)).collect();
        let s = self.apply_series(&args, &target.expand_assoc(order));
        Ok(LieElement::from_assoc(&s))
    }

    /// Associative-level application; suffix results are shared between words.
    pub fn apply_series(&self, args: &[AssocSeries], target: &AssocSeries) -> AssocSeries {
        let max_len = target.max_len();
        let mut memo: HashMap<Vec<Symbol>, AssocSeries> = HashMap::new();
        memo.insert(Vec::new(), target.clone());
        let mut acc = AssocSeries::zero(max_len);
        for (w, c) in self.poly.sorted_terms() {
            let value = suffix_value(&mut memo, w, args);
            acc.add_assign_scaled(&value, c);
        }
        acc
    }
}

fn suffix_value(memo: &mut HashMap<Vec<Symbol>, AssocSeries>, w: &[Symbol], args: &[AssocSeries]) -> AssocSeries {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let inner = suffix_value(memo, &w[1..], args);
    let v = if inner.is_zero() { inner } else { args[w[0].0 as usize].bracket(&inner) };
    memo.insert(w.to_vec(), v.clone());
    v
}

pub fn op_apply(p: &OperatorPoly, args: &[LieElement], target: &LieElement, order: usize) -> Result<LieElement> {
    p.apply(args, target, order)
}

/// Two-symbol `Q` with `BCH(x,y) = x + y + Q(ad_x, ad_y)y` through `order` brackets.
///
/// Each Dynkin word of `BCH − x − y` ending in `xy` contributes its prefix
/// followed by `X`; a word ending in `yx` does the same with opposite sign;
/// words ending in `xx` or `yy` give vanishing brackets.
pub fn extract_q(order: usize) -> OperatorPoly {
    let gx = Generator::new("x", 0);
    let gy = Generator::new("y", 0);
    let len = order + 1;
    let (x, y) = (AssocSeries::letter(gx, len), AssocSeries::letter(gy, len));
    let rest = bch_series(&[x.clone(), y.clone()]).sub(&x).sub(&y);
    let sym = |g: Generator| if g == gx { Symbol(0) } else { Symbol(1) };
    let mut poly = Series::<Symbol>::zero(order);
    for (w, c) in rest.terms() {
        let d = w.len();
        if d < 2 {
            continue;
        }
        let c = c / rational::int(d as i64);
        let (p, l) = (w[d - 2], w[d - 1]);
        let c = match (p == gx, l == gx) {
            (true, false) => c,
            (false, true) => -c,
            _ => continue,
        };
        let mut ow: Word<Symbol> = w[..d - 2].iter().map(|&g| sym(g)).collect();
        ow.push(Symbol(0));
        poly.add_term(ow, c);
    }
    OperatorPoly { symbols: 2, poly }
}

impl OperatorPoly {
    /// `Q(A, B)` for operator arguments.
    pub fn q_of(q: &OperatorPoly, a: &OperatorPoly, b: &OperatorPoly) -> OperatorPoly {
        q.substitute(&[a.clone(), b.clone()]).expect("Q has two symbols")
    }

    /// Whether the scalar term is 1.
    pub fn is_unital(&self) -> bool {
        self.scalar_term().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::series_calc::bch2;
    use num_traits::Zero;

    #[test]
    fn q_low_terms() {
        let q = extract_q(2);
        assert_eq!(q.scalar_term(), Rational::zero());
        assert_eq!(q.coeff(&[0]), frac(1, 2));
        assert_eq!(q.coeff(&[1]), Rational::zero());
        assert_eq!(q.coeff(&[0, 0]), frac(1, 12));
        assert_eq!(q.coeff(&[1, 0]), frac(-1, 12));
        assert_eq!(q.coeff(&[0, 1]), Rational::zero());
        assert_eq!(q.coeff(&[1, 1]), Rational::zero());
    }

    #[test]
    fn q_defining_identity() {
        let x = LieElement::generator(Generator::new("x", 0));
        let y = LieElement::generator(Generator::new("y", 0));
        for order in 1..=4 {
            let q = extract_q(order);
            let lhs = &(&x + &y) + &q.apply(&[x.clone(), y.clone()], &y, order).unwrap();
            assert!(lhs.is_equal(&bch2(&x, &y, order).unwrap(), order));
        }
    }

    #[test]
    fn apply_basics() {
        let u = LieElement::generator(Generator::new("u", 0));
        let t = LieElement::generator(Generator::new("t", 1));
        let one = OperatorPoly::one(1, 3);
        assert!(one.apply(std::slice::from_ref(&u), &t, 3).unwrap().is_equal(&t, 3));
        let x1 = OperatorPoly::symbol(0, 1, 3);
        assert!(x1.apply(std::slice::from_ref(&u), &t, 3).unwrap().is_equal(&u.bracket(&t), 3));
        assert!(matches!(x1.apply(&[], &t, 3), Err(DglaError::ArityMismatch { .. })));
    }
}
