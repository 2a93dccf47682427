use super::bch::bch_multi;
use crate::error::Result;
use crate::lie::LieElement;

/// Edge path: degree-0 edge elements, each traversed forward (`true`) or reversed.
#[derive(Clone, Debug, Default)]
pub struct Path {
    pub edges: Vec<(LieElement, bool)>,
}

impl Path {
    pub fn new(edges: Vec<(LieElement, bool)>) -> Self {
        Path { edges }
    }

    pub fn forward(edges: &[LieElement]) -> Self {
        Path { edges: edges.iter().map(|e| (e.clone(), true)).collect() }
    }

    pub fn then(mut self, e: LieElement, forward: bool) -> Self {
        self.edges.push((e, forward));
        self
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Self {
        Path { edges: self.edges.iter().rev().map(|(e, f)| (e.clone(), !f)).collect() }
    }

    pub fn signed(&self) -> Vec<LieElement> {
        self.edges.iter().map(|(e, f)| if *f { e.clone() } else { -e }).collect()
    }
}

/// Iterated BCH of the signed edges in traversal order.
pub fn path_bch(path: &Path, order: usize) -> Result<LieElement> {
    bch_multi(&path.signed(), order)
}
