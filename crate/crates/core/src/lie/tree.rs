use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::generator::Generator;
use super::series::Series;
use crate::rational::Rational;

enum Shape {
    Leaf(Generator),
    Branch(BracketTree, BracketTree),
}

struct Node {
    shape: Shape,
    degree: i32,
    brackets: usize,
    key: Box<str>,
}

/// A bracketing of generators: a leaf, or `[left, right]`.
///
/// Trees are immutable and shared. They order by bracket count, then by their
/// textual encoding (`a` for a leaf, `[L,R]` for a bracket).
#[derive(Clone)]
pub struct BracketTree(Arc<Node>);

impl BracketTree {
    pub fn leaf(g: Generator) -> BracketTree {
        BracketTree(Arc::new(Node { shape: Shape::Leaf(g), degree: g.degree(), brackets: 0, key: g.name().into() }))
    }

    pub fn bracket(left: &BracketTree, right: &BracketTree) -> BracketTree {
        let key = format!("[{},{}]", left.key(), right.key());
        BracketTree(Arc::new(Node {
            degree: left.degree() + right.degree(),
            brackets: left.bracket_count() + right.bracket_count() + 1,
            shape: Shape::Branch(left.clone(), right.clone()),
            key: key.into(),
        }))
    }

    /// `[w₁,[w₂,…,[w_{d−1},w_d]…]]`.
    pub fn right_normed(word: &[Generator]) -> BracketTree {
        let (last, rest) = word.split_last().expect("right_normed of empty word");
        rest.iter().rev().fold(BracketTree::leaf(*last), |acc, g| BracketTree::bracket(&BracketTree::leaf(*g), &acc))
    }

    pub fn degree(&self) -> i32 {
        self.0.degree
    }

    pub fn bracket_count(&self) -> usize {
        self.0.brackets
    }

    pub fn key(&self) -> &str {
        &self.0.key
    }

    pub fn as_leaf(&self) -> Option<Generator> {
        match &self.0.shape {
            Shape::Leaf(g) => Some(*g),
            Shape::Branch(..) => None,
        }
    }

    pub fn children(&self) -> Option<(&BracketTree, &BracketTree)> {
        match &self.0.shape {
            Shape::Leaf(_) => None,
            Shape::Branch(l, r) => Some((l, r)),
        }
    }

    pub fn leaves(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.bracket_count() + 1);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Generator>) {
        match &self.0.shape {
            Shape::Leaf(g) => out.push(*g),
            Shape::Branch(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Associative image, `[u,v] ↦ uv − (−1)^{|u||v|} vu`.
    pub fn expand(&self) -> Series<Generator> {
        self.expand_with_len(self.bracket_count() + 1)
    }

    fn expand_with_len(&self, len: usize) -> Series<Generator> {
        match &self.0.shape {
            Shape::Leaf(g) => Series::letter(*g, len),
            Shape::Branch(l, r) => l.expand_with_len(len).bracket(&r.expand_with_len(len)),
        }
    }

    /// Orders every bracket by graded antisymmetry and kills `[u,u]` for even `u`.
    ///
    /// Returns the sign relating the result to `self`, or `None` when the tree vanishes.
    pub fn orient(&self) -> Option<(bool, BracketTree)> {
        match &self.0.shape {
            Shape::Leaf(_) => Some((false, self.clone())),
            Shape::Branch(l, r) => {
                let (nl, l) = l.orient()?;
                let (nr, r) = r.orient()?;
                let mut negate = nl ^ nr;
                match l.cmp(&r) {
                    Ordering::Less => Some((negate, BracketTree::bracket(&l, &r))),
                    Ordering::Equal => {
                        if l.degree() % 2 == 0 {
                            None
                        } else {
                            Some((negate, BracketTree::bracket(&l, &r)))
                        }
                    }
                    Ordering::Greater => {
                        // [l,r] = −(−1)^{|l||r|}[r,l]
                        let parity = (l.degree() as i64 * r.degree() as i64).rem_euclid(2) == 1;
                        if !parity {
                            negate = !negate;
                        }
                        Some((negate, BracketTree::bracket(&r, &l)))
                    }
                }
            }
        }
    }

    pub(crate) fn orient_coeff(&self, c: &Rational) -> Option<(Rational, BracketTree)> {
        self.orient().map(|(neg, t)| if neg { (-c.clone(), t) } else { (c.clone(), t) })
    }
}

impl PartialEq for BracketTree {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BracketTree {}

impl Hash for BracketTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state);
    }
}

impl Ord for BracketTree {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.bracket_count()
            .cmp(&other.bracket_count())
            .then_with(|| self.key().cmp(other.key()))
            .then_with(|| self.leaves().cmp(&other.leaves()))
    }
}

impl PartialOrd for BracketTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl fmt::Debug for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}
