//! DGLA models as data: generators, differentials on generators, geometric
//! boundaries and closures, plus the operations built on them.

mod check;
mod morphism;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;

pub use check::{
    check_bracket_free, check_d_squared, check_localised, check_locality, check_mc, curvature, first_nonzero, Failure,
    Report,
};
pub(crate) use morphism::morphism_report;
pub use morphism::{apply_morphism, apply_morphism_series, check_morphism, Morphism};

use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, Generator, LieElement};
use crate::series_calc::{exp_ad_series, flow, Differential};

/// Everything a model records about one cell.
#[derive(Clone, Debug)]
pub struct Cell {
    pub generator: Generator,
    pub diff: LieElement,
    /// Bracket-free part of `diff`: the signed geometric boundary.
    pub boundary: LieElement,
    /// Generators of the closed cell, including the cell itself.
    pub closure: BTreeSet<Generator>,
    /// Point at which the cell is localised, if any.
    pub localisation: Option<LieElement>,
}

impl Cell {
    pub fn new(generator: Generator, diff: LieElement, boundary: LieElement, closure: BTreeSet<Generator>) -> Self {
        Cell { generator, diff, boundary, closure, localisation: None }
    }

    pub fn localised_at(mut self, point: LieElement) -> Self {
        self.localisation = Some(point);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Model {
    name: String,
    cells: Vec<Cell>,
    index: HashMap<Generator, usize>,
    assoc: HashMap<Generator, AssocSeries>,
    max_order: usize,
    symmetry_cap: Option<(usize, usize)>,
}

impl Model {
    /// Validates homogeneity, generator membership and closures, and caches
    /// the associative images of the differentials.
    pub fn new(name: impl Into<String>, max_order: usize, cells: Vec<Cell>) -> Result<Model> {
        let mut index = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if index.insert(c.generator, i).is_some() {
                return Err(DglaError::InvalidModel(format!("duplicate generator {}", c.generator)));
            }
        }
        let mut cells = cells;
        for c in &mut cells {
            let g = c.generator;
            if let Some(d) = c.diff.homogeneous_degree()? {
                if d != g.degree() - 1 {
                    return Err(DglaError::InvalidModel(format!("∂{g} has degree {d}, expected {}", g.degree() - 1)));
                }
            }
            for h in c.diff.generators().iter().chain(c.boundary.generators().iter()).chain(c.closure.iter()) {
                if !index.contains_key(h) {
                    return Err(DglaError::UnknownGenerator(h.name().to_string()));
                }
            }
            c.closure.insert(g);
            c.diff = c.diff.normalized(max_order);
        }
        let assoc = cells.iter().map(|c| (c.generator, c.diff.expand_assoc(max_order))).collect();
        Ok(Model { name: name.into(), cells, index, assoc, max_order, symmetry_cap: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Marks the model as symmetric only through `cap` brackets, because it
    /// uses the truncated average of `n` edges.
    pub fn with_symmetry_cap(mut self, n: usize, cap: usize) -> Model {
        self.symmetry_cap = Some((n, cap));
        self
    }

    pub fn symmetry_cap(&self) -> Option<(usize, usize)> {
        self.symmetry_cap
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.cells.iter().map(|c| c.generator)
    }

    pub fn cell(&self, g: Generator) -> Result<&Cell> {
        self.index.get(&g).map(|&i| &self.cells[i]).ok_or_else(|| DglaError::UnknownGenerator(g.name().to_string()))
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.index.contains_key(&g)
    }

    /// Looks a generator up by name.
    pub fn generator(&self, name: &str) -> Result<Generator> {
        self.cells
            .iter()
            .map(|c| c.generator)
            .find(|g| g.name() == name)
            .ok_or_else(|| DglaError::UnknownGenerator(name.to_string()))
    }

    /// Shorthand for `LieElement::generator(self.generator(name)?)`.
    pub fn elem(&self, name: &str) -> Result<LieElement> {
        Ok(LieElement::generator(self.generator(name)?))
    }

    pub fn diff(&self, g: Generator) -> Result<&LieElement> {
        Ok(&self.cell(g)?.diff)
    }

    pub fn require_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(DglaError::OrderExceedsModel { requested: order, max: self.max_order });
        }
        Ok(())
    }

    fn check_letters(&self, x: &AssocSeries) -> Result<()> {
        for l in x.letters() {
            if !self.index.contains_key(&l) {
                return Err(DglaError::UnknownGenerator(l.name().to_string()));
            }
        }
        Ok(())
    }

    /// Same model with its cells replaced.
    pub fn with_cells(&self, cells: Vec<Cell>) -> Result<Model> {
        let mut m = Model::new(self.name.clone(), self.max_order, cells)?;
        m.symmetry_cap = self.symmetry_cap;
        Ok(m)
    }
}

impl Differential for Model {
    fn apply(&self, x: &AssocSeries) -> Result<AssocSeries> {
        self.check_letters(x)?;
        let len = x.max_len();
        let image = |g: Generator| self.assoc.get(&g).map(|s| s.truncate(len));
        x.derivation(&image).ok_or_else(|| DglaError::InvalidModel("differential lookup failed".into()))
    }
}

/// Leibniz extension of the model's differential to a homogeneous element.
pub fn extend_diff(m: &Model, x: &LieElement, order: usize) -> Result<LieElement> {
    m.require_order(order)?;
    x.homogeneous_degree()?;
    Ok(LieElement::from_assoc(&m.apply(&x.expand_assoc(order))?))
}

/// `∂_a x = ∂x + [a, x]`, refusing points that are not Maurer-Cartan at `order`.
pub fn twisted_diff(m: &Model, a: &LieElement, x: &LieElement, order: usize) -> Result<LieElement> {
    m.require_order(order)?;
    a.require_degree(-1)?;
    x.homogeneous_degree()?;
    let cur = curvature(m, a, order)?;
    if let Some(k) = first_nonzero(&cur) {
        return Err(DglaError::NotMaurerCartan { component: k });
    }
    Ok(LieElement::from_assoc(&twisted_series(m, a, x, order)?))
}

pub(crate) fn twisted_series(m: &Model, a: &LieElement, x: &LieElement, order: usize) -> Result<AssocSeries> {
    let xs = x.expand_assoc(order);
    Ok(m.apply(&xs)?.add(&a.expand_assoc(order).bracket(&xs)))
}

/// Replaces the generator of `cell` by `exp(−ad_e)` of itself.
///
/// Every differential mentioning the cell is rewritten through
/// `f ↦ exp(ad_e) f′`, and the localisation point moves to `u_e(p)`.
pub fn twist_cell(m: &Model, cell: Generator, e: &LieElement, order: usize) -> Result<Model> {
    m.require_order(order)?;
    let target = m.cell(cell)?;
    if cell.degree() < 1 {
        return Err(DglaError::InvalidArgument(format!("cannot twist {cell}: degree {} < 1", cell.degree())));
    }
    e.require_degree(0)?;
    for g in e.generators() {
        if g.degree() > 0 || !target.closure.contains(&g) {
            return Err(DglaError::LocalityViolation(format!("{g} is not in the 1-skeleton of the closure of {cell}")));
        }
    }
    if e.is_zero_at(order) {
        return Ok(m.clone());
    }
    let len = order + 1;
    let es = e.expand_assoc(order);
    let f = AssocSeries::letter(cell, len);
    let old_in_new = exp_ad_series(&es, &f, &One::one());
    let new_in_old = exp_ad_series(&es, &f, &-crate::Rational::one());
    let rewrite = |s: &AssocSeries| -> AssocSeries {
        s.substitute(&mut |g| if g == cell { old_in_new.clone() } else { AssocSeries::letter(g, len) }, len)
    };
    let mut cells = m.cells.clone();
    for c in &mut cells {
        if c.generator == cell {
            let d = rewrite(&m.apply(&new_in_old)?);
            c.diff = LieElement::from_assoc(&d);
            if let Some(p) = &c.localisation {
                c.localisation = Some(flow(e, p, m, order)?);
            }
        } else if c.diff.generators().contains(&cell) {
            c.diff = LieElement::from_assoc(&rewrite(&m.assoc[&c.generator].truncate(len)));
        }
    }
    let mut twisted = Model::new(m.name.clone(), order.min(m.max_order), cells)?;
    twisted.symmetry_cap = m.symmetry_cap;
    Ok(twisted)
}

/// Convenience: generator-name lookup for a set of names.
pub fn closure_of(names: &[Generator]) -> BTreeSet<Generator> {
    names.iter().copied().collect()
}

/// Diff map keyed by generator, as stored.
pub fn diff_map(m: &Model) -> BTreeMap<Generator, LieElement> {
    m.cells.iter().map(|c| (c.generator, c.diff.clone())).collect()
}
