//! Truncated free associative algebras over an alphabet of graded letters.
//!
//! [`Series`] is the workhorse behind every Lie computation: Lie elements are
//! expanded into their associative images (the universal envelope of a free
//! graded Lie algebra embeds faithfully in characteristic zero), manipulated
//! there, and projected back with the Dynkin map. The same type, over
//! formal [`Symbol`]s, carries operator polynomials.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::generator::Generator;
use crate::rational::{self, Rational};

pub trait Letter: Copy + Eq + Hash + Ord + fmt::Debug + Send + Sync {
    fn degree(&self) -> i32;
}

impl Letter for Generator {
    fn degree(&self) -> i32 {
        Generator::degree(self)
    }
}

/// A formal operator symbol `X_k` (zero-based index), always of degree 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol(pub u16);

impl Letter for Symbol {
    fn degree(&self) -> i32 {
        0
    }
}

pub type Word<L> = SmallVec<[L; 6]>;

pub fn word_degree<L: Letter>(w: &[L]) -> i32 {
    w.iter().map(|l| l.degree()).sum()
}

static MAX_TERMS: AtomicUsize = AtomicUsize::new(0);

/// Panic payload raised when a series outgrows the configured term cap.
#[derive(Debug, Clone)]
pub struct TermLimitExceeded {
    pub limit: usize,
    pub found: usize,
}

/// Caps the number of stored terms in any single series; `None` removes the cap.
///
/// Exceeding the cap unwinds with a [`TermLimitExceeded`] payload.
pub fn set_max_terms(limit: Option<usize>) {
    MAX_TERMS.store(limit.unwrap_or(0), Ordering::Relaxed);
}

fn check_limit(len: usize) {
    let limit = MAX_TERMS.load(Ordering::Relaxed);
    if limit != 0 && len > limit {
        std::panic::panic_any(TermLimitExceeded { limit, found: len });
    }
}

/// Finite ℚ-combination of words of length at most `max_len`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<L: Letter> {
    terms: HashMap<Word<L>, Rational>,
    max_len: usize,
}

impl<L: Letter> fmt::Debug for Series<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (w, c) in self.sorted_terms() {
            m.entry(&w, &rational::format(c));
        }
        m.finish()
    }
}

impl<L: Letter> Series<L> {
    pub fn zero(max_len: usize) -> Self {
        Series { terms: HashMap::new(), max_len }
    }

    pub fn one(max_len: usize) -> Self {
        let mut s = Self::zero(max_len);
        s.add_term(Word::new(), Rational::one());
        s
    }

    pub fn letter(l: L, max_len: usize) -> Self {
        let mut s = Self::zero(max_len);
        if max_len >= 1 {
            s.add_term(smallvec::smallvec![l], Rational::one());
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Word<L>, Rational)>>(terms: I, max_len: usize) -> Self {
        let mut s = Self::zero(max_len);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[L]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> Rational {
        self.coeff(&[])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<L>, &Rational)> {
        self.terms.iter()
    }

    /// Terms ordered by word length, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&Word<L>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Adds `c·w`, silently discarding words longer than the truncation bound.
    pub fn add_term(&mut self, w: Word<L>, c: Rational) {
        if w.len() > self.max_len || c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
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

    fn finish(self) -> Self {
        check_limit(self.terms.len());
        self
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
        check_limit(self.terms.len());
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.max_len = self.max_len.min(other.max_len);
        r.terms.retain(|w, _| w.len() <= r.max_len);
        r.add_assign_scaled(other, &Rational::one());
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.max_len = self.max_len.min(other.max_len);
        r.terms.retain(|w, _| w.len() <= r.max_len);
        r.add_assign_scaled(other, &-Rational::one());
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.max_len);
        }
        Series { terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(), max_len: self.max_len }
    }

    pub fn truncate(&self, max_len: usize) -> Self {
        Series {
            terms: self.terms.iter().filter(|(w, _)| w.len() <= max_len).map(|(w, c)| (w.clone(), c.clone())).collect(),
            max_len: max_len.min(self.max_len),
        }
    }

    /// Words of exactly length `len`.
    pub fn length_component(&self, len: usize) -> Self {
        Series {
            terms: self.terms.iter().filter(|(w, _)| w.len() == len).map(|(w, c)| (w.clone(), c.clone())).collect(),
            max_len: self.max_len,
        }
    }

    pub fn min_word_len(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn letters(&self) -> BTreeSet<L> {
        self.terms.keys().flat_map(|w| w.iter().copied()).collect()
    }

    pub fn degrees(&self) -> BTreeSet<i32> {
        self.terms.keys().map(|w| word_degree(w)).collect()
    }

    /// The common degree of all words, `None` for mixed series; zero is homogeneous of every degree.
    pub fn homogeneous_degree(&self) -> Option<Option<i32>> {
        let d = self.degrees();
        match d.len() {
            0 => Some(None),
            1 => Some(d.into_iter().next()),
            _ => None,
        }
    }

    /// Truncated concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let max_len = self.max_len.min(other.max_len);
        let mut r = Self::zero(max_len);
        for (w1, c1) in &self.terms {
            if w1.len() > max_len {
                continue;
            }
            for (w2, c2) in &other.terms {
                if w1.len() + w2.len() > max_len {
                    continue;
                }
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, c1 * c2);
            }
        }
        r.finish()
    }

    /// Graded commutator `xy − (−1)^{|x||y|} yx`, evaluated term by term.
    pub fn bracket(&self, other: &Self) -> Self {
        let max_len = self.max_len.min(other.max_len);
        let mut r = Self::zero(max_len);
        for (w1, c1) in &self.terms {
            let d1 = word_degree(w1) as i64;
            for (w2, c2) in &other.terms {
                if w1.len() + w2.len() > max_len {
                    continue;
                }
                let d2 = word_degree(w2) as i64;
                let c = c1 * c2;
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, c.clone());
                let mut w = w2.clone();
                w.extend_from_slice(w1);
                r.add_term(w, -(c * rational::sign(d1 * d2)));
            }
        }
        r.finish()
    }

    /// `exp(x)` for `x` without constant term.
    pub fn exp(&self) -> Self {
        debug_assert!(self.constant().is_zero());
        let mut result = Self::one(self.max_len);
        let mut power = Self::one(self.max_len);
        let mut k = 1usize;
        loop {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            let inv = Rational::new(1.into(), rational::factorial(k));
            result.add_assign_scaled(&power, &inv);
            k += 1;
        }
        result
    }

    /// `log(s)` for `s` with constant term one.
    pub fn log(&self) -> Self {
        debug_assert!(self.constant().is_one());
        let mut z = self.clone();
        z.add_term(Word::new(), -Rational::one());
        let mut result = Self::zero(self.max_len);
        let mut power = Self::one(self.max_len);
        let mut k = 1i64;
        loop {
            power = power.mul(&z);
            if power.is_zero() {
                break;
            }
            result.add_assign_scaled(&power, &(rational::sign(k + 1) / rational::int(k)));
            k += 1;
        }
        result
    }

    /// Extends a letter assignment multiplicatively (a degree-preserving algebra map).
    pub fn substitute<M: Letter>(&self, image: &mut dyn FnMut(L) -> Series<M>, max_len: usize) -> Series<M> {
        let mut cache: HashMap<L, Series<M>> = HashMap::new();
        let mut r = Series::<M>::zero(max_len);
        for (w, c) in &self.terms {
            let mut acc = Series::<M>::one(max_len);
            for l in w.iter() {
                let img = cache.entry(*l).or_insert_with(|| image(*l).truncate(max_len));
                acc = acc.mul(img);
                if acc.is_zero() {
                    break;
                }
            }
            r.add_assign_scaled(&acc, c);
        }
        r.finish()
    }

    /// Applies the degree −1 derivation determined by its values on letters,
    /// with the Koszul sign `(−1)^{|prefix|}`.
    pub fn derivation(&self, image: &dyn Fn(L) -> Option<Series<L>>) -> Option<Self> {
        let max_len = self.max_len;
        let mut cache: HashMap<L, Series<L>> = HashMap::new();
        let mut r = Self::zero(max_len);
        for (w, c) in &self.terms {
            let mut prefix_degree = 0i64;
            for j in 0..w.len() {
                let l = w[j];
                if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry(l) {
                    slot.insert(image(l)?);
                }
                let d = &cache[&l];
                let coeff = c * rational::sign(prefix_degree);
                for (dw, dc) in &d.terms {
                    let len = w.len() - 1 + dw.len();
                    if len > max_len {
                        continue;
                    }
                    let mut nw: Word<L> = SmallVec::with_capacity(len);
                    nw.extend_from_slice(&w[..j]);
                    nw.extend_from_slice(dw);
                    nw.extend_from_slice(&w[j + 1..]);
                    r.add_term(nw, &coeff * dc);
                }
                prefix_degree += l.degree() as i64;
            }
        }
        Some(r.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn sym(i: u16, n: usize) -> Series<Symbol> {
        Series::letter(Symbol(i), n)
    }

    #[test]
    fn exp_log_round_trip() {
        let x = sym(0, 4).add(&sym(1, 4).scale(&frac(1, 3)));
        let back = x.exp().log();
        assert_eq!(back, x);
    }

    #[test]
    fn product_truncates() {
        let x = sym(0, 2);
        assert!(x.mul(&x).mul(&x).is_zero());
        assert_eq!(x.mul(&x).len(), 1);
    }

    #[test]
    fn odd_commutator_is_anticommutator() {
        let a = Generator::new("series_test_a", -1);
        let s = Series::letter(a, 3);
        let aa = s.bracket(&s);
        assert_eq!(aa.coeff(&[a, a]), frac(2, 1));
    }
}
