use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{twisted_series, Model};
use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, Generator, LieElement};
use crate::series_calc::Differential;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub subject: String,
    /// Bracket count of the first offending component.
    pub component: usize,
    pub term: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(check: impl Into<String>, failures: Vec<Failure>) -> Report {
        Report { check: check.into(), pass: failures.is_empty(), failures }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

/// Lowest bracket count with a nonzero component.
pub fn first_nonzero(s: &AssocSeries) -> Option<usize> {
    s.min_word_len().map(|l| l.saturating_sub(1))
}

fn failure(subject: impl Into<String>, s: &AssocSeries) -> Option<Failure> {
    let k = first_nonzero(s)?;
    let term = LieElement::from_assoc(&s.length_component(k + 1));
    Some(Failure { subject: subject.into(), component: k, term: term.to_string() })
}

/// `∂a + ½[a,a]` on the associative side.
pub fn curvature(m: &Model, a: &LieElement, order: usize) -> Result<AssocSeries> {
    m.require_order(order)?;
    a.require_degree(-1)?;
    let s = a.expand_assoc(order);
    let half = crate::rational::frac(1, 2);
    Ok(m.apply(&s)?.add(&s.bracket(&s).scale(&half)))
}

pub fn check_mc(m: &Model, a: &LieElement, order: usize) -> Result<Report> {
    let cur = curvature(m, a, order)?;
    Ok(Report::new("mc", failure(a.to_string(), &cur).into_iter().collect()))
}

pub fn check_d_squared(m: &Model, order: usize) -> Result<Report> {
    m.require_order(order)?;
    let gens: Vec<Generator> = m.generators().collect();
    let results: Result<Vec<Option<Failure>>> = gens
        .par_iter()
        .map(|&g| {
            let dd = m.apply(&m.apply(&AssocSeries::letter(g, order + 1))?)?;
            Ok(failure(g.name(), &dd))
        })
        .collect();
    Ok(Report::new("d_squared", results?.into_iter().flatten().collect()))
}

/// Bracket-free part of each differential equals the stored geometric boundary.
pub fn check_bracket_free(m: &Model) -> Report {
    let failures = m
        .cells()
        .iter()
        .filter_map(|c| {
            let diff = c.diff.component(0);
            let delta = (&diff - &c.boundary).normalized(0);
            (!delta.is_zero_at(0)).then(|| Failure {
                subject: c.generator.name().to_string(),
                component: 0,
                term: delta.to_string(),
            })
        })
        .collect();
    Report::new("bracket_free", failures)
}

/// Every generator in `∂g` lies in the closure of `g`.
pub fn check_locality(m: &Model) -> Report {
    let failures = m
        .cells()
        .iter()
        .filter_map(|c| {
            let outside: Vec<String> = c
                .diff
                .generators()
                .into_iter()
                .filter(|h| !c.closure.contains(h))
                .map(|h| h.name().to_string())
                .collect();
            (!outside.is_empty()).then(|| Failure {
                subject: c.generator.name().to_string(),
                component: 0,
                term: outside.join(","),
            })
        })
        .collect();
    Report::new("locality", failures)
}

/// `∂_a(cell)` only involves the closed boundary of the cell.
pub fn check_localised(m: &Model, cell: Generator, a: &LieElement, order: usize) -> Result<Report> {
    if cell.degree() < 1 {
        return Err(DglaError::InvalidArgument(format!(
            "localisation is defined for cells of dimension > 1; {cell} has degree {}",
            cell.degree()
        )));
    }
    m.require_order(order)?;
    a.require_degree(-1)?;
    let c = m.cell(cell)?;
    let mut allowed: BTreeSet<Generator> = c.closure.clone();
    allowed.remove(&cell);
    let d = twisted_series(m, a, &LieElement::generator(cell), order)?;
    let outside: Vec<String> =
        d.letters().into_iter().filter(|g| !allowed.contains(g)).map(|g| g.name().to_string()).collect();
    let mut failures = Vec::new();
    if !outside.is_empty() {
        let bad: AssocSeries = AssocSeries::from_terms(
            d.terms().filter(|(w, _)| w.iter().any(|g| !allowed.contains(g))).map(|(w, c)| (w.clone(), c.clone())),
            d.max_len(),
        );
        let k = first_nonzero(&bad).unwrap_or(0);
        failures.push(Failure { subject: cell.name().to_string(), component: k, term: outside.join(",") });
    }
    Ok(Report::new("localised", failures))
}
