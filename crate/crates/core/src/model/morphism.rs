use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::check::{first_nonzero, Failure, Report};
use super::Model;
use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, Generator, LieElement};
use crate::series_calc::Differential;

/// Degree-preserving assignment of target elements to source generators.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Arc<Model>,
    pub target: Arc<Model>,
    pub assign: BTreeMap<Generator, LieElement>,
}

impl Morphism {
    pub fn new(source: Arc<Model>, target: Arc<Model>, assign: BTreeMap<Generator, LieElement>) -> Result<Morphism> {
        for (g, x) in &assign {
            if !source.contains(*g) {
                return Err(DglaError::UnknownGenerator(g.name().to_string()));
            }
            for h in x.generators() {
                if !target.contains(h) {
                    return Err(DglaError::UnknownGenerator(h.name().to_string()));
                }
            }
            if let Some(d) = x.homogeneous_degree()? {
                if d != g.degree() {
                    return Err(DglaError::DegreeMismatch { expected: g.degree(), found: d });
                }
            }
        }
        Ok(Morphism { source, target, assign })
    }

    pub fn identity(m: Arc<Model>) -> Morphism {
        let assign = m.generators().map(|g| (g, LieElement::generator(g))).collect();
        Morphism { source: m.clone(), target: m, assign }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Morphism, order: usize) -> Result<Morphism> {
        let assign =
            other.assign.iter().map(|(g, x)| Ok((*g, apply_morphism(self, x, order)?))).collect::<Result<_>>()?;
        Ok(Morphism { source: other.source.clone(), target: self.target.clone(), assign })
    }

    /// Whether two morphisms agree on every source generator through `order`.
    pub fn agrees_with(&self, other: &Morphism, order: usize) -> bool {
        self.source.generators().all(|g| match (self.assign.get(&g), other.assign.get(&g)) {
            (Some(x), Some(y)) => x.is_equal(y, order),
            (None, None) => true,
            _ => false,
        })
    }
}

pub fn apply_morphism_series(phi: &Morphism, x: &AssocSeries) -> Result<AssocSeries> {
    let len = x.max_len();
    for g in x.letters() {
        if !phi.assign.contains_key(&g) {
            return Err(DglaError::UnmappedGenerator(g.name().to_string()));
        }
    }
    let order = len.saturating_sub(1);
    Ok(x.substitute(&mut |g| phi.assign[&g].expand_assoc(order), len))
}

/// Homomorphic extension over brackets.
pub fn apply_morphism(phi: &Morphism, x: &LieElement, order: usize) -> Result<LieElement> {
    Ok(LieElement::from_assoc(&apply_morphism_series(phi, &x.expand_assoc(order))?))
}

/// `φ(∂g) = ∂φ(g)` for every source generator.
pub fn check_morphism(phi: &Morphism, order: usize) -> Result<Report> {
    morphism_report("morphism", phi, order, &|_| true)
}

pub(crate) fn morphism_report(
    name: &str,
    phi: &Morphism,
    order: usize,
    include: &(dyn Fn(Generator) -> bool + Sync),
) -> Result<Report> {
    phi.source.require_order(order)?;
    phi.target.require_order(order)?;
    let gens: Vec<Generator> = phi.source.generators().filter(|g| include(*g)).collect();
    let results: Result<Vec<Option<Failure>>> = gens
        .par_iter()
        .map(|&g| {
            let len = order + 1;
            let image = phi.assign.get(&g).ok_or_else(|| DglaError::UnmappedGenerator(g.name().to_string()))?;
            let lhs = apply_morphism_series(phi, &phi.source.apply(&AssocSeries::letter(g, len))?)?;
            let rhs = phi.target.apply(&image.expand_assoc(order))?;
            let delta = lhs.sub(&rhs);
            Ok(first_nonzero(&delta).map(|k| Failure {
                subject: g.name().to_string(),
                component: k,
                term: LieElement::from_assoc(&delta.length_component(k + 1)).to_string(),
            }))
        })
        .collect();
    Ok(Report::new(name, results?.into_iter().flatten().collect()))
}
