//! Free graded Lie algebras over ℚ.
//!
//! Elements are formal combinations of bracket trees. Equality is decided in
//! the free associative algebra, where graded antisymmetry and Jacobi hold
//! identically, and truncation is always by bracket count.

mod bernoulli;
mod element;
mod generator;
pub mod series;
mod tree;

pub use bernoulli::{bernoulli, bernoulli_table};
pub use element::{AssocSeries, LieElement};
pub use generator::Generator;
pub use series::{Letter, Series, Symbol, Word};
pub use tree::BracketTree;

/// Formal bracket `[x, y]`.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    x.bracket(y)
}

pub fn expand_assoc(x: &LieElement, max_brackets: usize) -> AssocSeries {
    x.expand_assoc(max_brackets)
}

pub fn is_equal(x: &LieElement, y: &LieElement, order: usize) -> bool {
    x.is_equal(y, order)
}

pub fn component(x: &LieElement, m: usize) -> LieElement {
    x.component(m)
}
