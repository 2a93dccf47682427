use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::generator::Generator;
use super::series::Series;
use super::tree::BracketTree;
use crate::error::{DglaError, Result};
use crate::rational::{self, Rational};

/// Associative image of Lie elements.
pub type AssocSeries = Series<Generator>;

/// Finite ℚ-combination of bracket trees; no zero coefficients are stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<BracketTree, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::tree(BracketTree::leaf(g))
    }

    pub fn tree(t: BracketTree) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(t, Rational::one());
        LieElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (BracketTree, Rational)>>(terms: I) -> Self {
        let mut x = LieElement::zero();
        for (t, c) in terms {
            x.add_term(t, c);
        }
        x
    }

    pub fn add_term(&mut self, t: BracketTree, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Terms in canonical order (bracket count, then tree encoding).
    pub fn terms(&self) -> impl Iterator<Item = (&BracketTree, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Structurally empty; use [`LieElement::is_zero_at`] for equality in the algebra.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &BracketTree) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement { terms: self.terms.iter().map(|(t, d)| (t.clone(), d * c)).collect() }
    }

    /// Formal bilinear bracket over pairs of trees.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        let mut r = LieElement::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                r.add_term(BracketTree::bracket(t1, t2), c1 * c2);
            }
        }
        r
    }

    /// `x^{[m]}`: the terms with exactly `m` brackets.
    pub fn component(&self, m: usize) -> LieElement {
        LieElement {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.bracket_count() == m)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms with at most `order` brackets.
    pub fn truncate(&self, order: usize) -> LieElement {
        LieElement {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.bracket_count() <= order)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_bracket_count(&self) -> Option<usize> {
        self.terms.keys().map(|t| t.bracket_count()).max()
    }

    pub fn degrees(&self) -> BTreeSet<i32> {
        self.terms.keys().map(|t| t.degree()).collect()
    }

    /// The degree shared by every tree; `Ok(None)` for the empty element.
    pub fn homogeneous_degree(&self) -> Result<Option<i32>> {
        let d = self.degrees();
        match d.len() {
            0 => Ok(None),
            1 => Ok(d.into_iter().next()),
            _ => Err(DglaError::MixedDegree(d.into_iter().collect())),
        }
    }

    /// Fails unless the element is homogeneous of degree `degree` (zero passes).
    pub fn require_degree(&self, degree: i32) -> Result<()> {
        match self.homogeneous_degree()? {
            Some(d) if d != degree => Err(DglaError::DegreeMismatch { expected: degree, found: d }),
            _ => Ok(()),
        }
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|t| t.leaves()).collect()
    }

    /// Associative image, discarding trees with more than `max_brackets` brackets.
    pub fn expand_assoc(&self, max_brackets: usize) -> AssocSeries {
        let mut r = AssocSeries::zero(max_brackets + 1);
        for (t, c) in &self.terms {
            if t.bracket_count() <= max_brackets {
                r.add_assign_scaled(&t.expand(), c);
            }
        }
        r
    }

    /// Dynkin projection of a Lie-valued associative series: a word of length
    /// `d` maps to `1/d` times its right-normed bracketing.
    ///
    /// The input must lie in the image of the free Lie algebra; every
    /// operation in this crate preserves that.
    pub fn from_assoc(s: &AssocSeries) -> LieElement {
        let mut r = LieElement::zero();
        for (w, c) in s.terms() {
            if w.is_empty() {
                continue;
            }
            let c = c / rational::int(w.len() as i64);
            if let Some((c, t)) = BracketTree::right_normed(w).orient_coeff(&c) {
                r.add_term(t, c);
            }
        }
        r.terms.retain(|t, _| t.bracket_count() < 2 || !t.expand().is_zero());
        r
    }

    /// Canonical form: expand, then project back.
    pub fn normalized(&self, order: usize) -> LieElement {
        LieElement::from_assoc(&self.expand_assoc(order))
    }

    pub fn is_zero_at(&self, order: usize) -> bool {
        self.expand_assoc(order).is_zero()
    }

    /// Equality modulo terms with more than `order` brackets.
    pub fn is_equal(&self, other: &LieElement, order: usize) -> bool {
        (self - other).is_zero_at(order)
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut r = self.clone();
        for (t, c) in &rhs.terms {
            r.add_term(t.clone(), c.clone());
        }
        r
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut r = self.clone();
        for (t, c) in &rhs.terms {
            r.add_term(t.clone(), -c.clone());
        }
        r
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&-Rational::one())
    }
}

impl Mul<&LieElement> for &Rational {
    type Output = LieElement;
    fn mul(self, rhs: &LieElement) -> LieElement {
        rhs.scale(self)
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, rhs: LieElement) -> LieElement {
        &self + &rhs
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, rhs: LieElement) -> LieElement {
        &self - &rhs
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let (lead, mag) = if c.is_negative() {
                (if i == 0 { "-" } else { " - " }, -c.clone())
            } else {
                (if i == 0 { "" } else { " + " }, c.clone())
            };
            f.write_str(lead)?;
            if mag.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{} {t}", rational::format(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn g(name: &str, d: i32) -> LieElement {
        LieElement::generator(Generator::new(name, d))
    }

    #[test]
    fn odd_square_is_twice_the_word() {
        let a = g("a", -1);
        let aa = a.bracket(&a);
        assert!(!aa.is_empty());
        let ga = Generator::new("a", -1);
        assert_eq!(aa.expand_assoc(3).coeff(&[ga, ga]), int(2));
    }

    #[test]
    fn even_square_vanishes() {
        let e = g("e", 0);
        assert!(e.bracket(&e).is_zero_at(3));
    }

    #[test]
    fn double_commutator_expansion() {
        // [x,[x,y]] = xxy − 2xyx + yxx
        let (gx, gy) = (Generator::new("x", 0), Generator::new("y", 0));
        let (x, y) = (g("x", 0), g("y", 0));
        let s = x.bracket(&x.bracket(&y)).expand_assoc(2);
        assert_eq!(s.len(), 3);
        assert_eq!(s.coeff(&[gx, gx, gy]), int(1));
        assert_eq!(s.coeff(&[gx, gy, gx]), int(-2));
        assert_eq!(s.coeff(&[gy, gx, gx]), int(1));
    }

    #[test]
    fn odd_odd_bracket_is_anticommutator() {
        let (ga, gf) = (Generator::new("a", -1), Generator::new("f", 1));
        let s = g("a", -1).bracket(&g("f", 1)).expand_assoc(1);
        assert_eq!(s.coeff(&[ga, gf]), int(1));
        assert_eq!(s.coeff(&[gf, ga]), int(1));
    }

    #[test]
    fn component_projection() {
        let (a, b) = (g("a", -1), g("b", -1));
        let x = &a + &a.bracket(&b).scale(&frac(1, 2));
        assert_eq!(x.component(0), a);
        assert!(x.component(3).is_empty());
        assert_eq!(&x.component(0) + &x.component(1), x);
    }

    #[test]
    fn dynkin_round_trip_recovers_brackets() {
        let (x, y) = (g("x", 0), g("y", 0));
        let t = x.bracket(&x.bracket(&y)).scale(&frac(1, 12));
        let back = LieElement::from_assoc(&t.expand_assoc(4));
        assert_eq!(back, t);
    }

    #[test]
    fn mixed_degree_is_reported() {
        let x = &g("a", -1) + &g("e", 0);
        assert!(matches!(x.homogeneous_degree(), Err(DglaError::MixedDegree(_))));
        assert!(g("e", 0).require_degree(-1).is_err());
        assert!(LieElement::zero().require_degree(5).is_ok());
    }
}
