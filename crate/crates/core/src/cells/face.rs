use super::{edge_cell, gen, skeleton, vertex_cell};
use crate::error::{DglaError, Result};
use crate::lie::{Generator, LieElement};
use crate::model::{Cell, Model};
use crate::rational::frac;
use crate::series_calc::{bch2, bch_multi, exp_ad, flow, mu2, Differential};

/// Oriented edge of a cell complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: Generator,
    pub from: Generator,
    pub to: Generator,
}

impl Edge {
    pub fn new(name: Generator, from: Generator, to: Generator) -> Edge {
        Edge { name, from, to }
    }
}

/// Differential of a face localised at its centre, with the centre and the
/// diagonal `w` it was built from.
#[derive(Clone, Debug)]
pub struct FaceData {
    pub diff: LieElement,
    pub centre: LieElement,
    pub diagonal: LieElement,
}

pub fn interval_model(order: usize) -> Result<Model> {
    let (a, b, e) = (Generator::new("a", -1), Generator::new("b", -1), Generator::new("e", 0));
    Model::new("interval", order, vec![vertex_cell(a), vertex_cell(b), edge_cell(e, a, b, order)?])
}

/// Face bounded by two paths `p` and `q` from `start` to a common end:
/// `∂g = exp(−½ad_w) BCH(p, −q) − [x, g]`, `w = μ₂(p, q)`, `x = u_{w/2}(start)`.
pub fn bigon_face(
    g: Generator,
    p: &LieElement,
    q: &LieElement,
    start: &LieElement,
    ctx: &dyn Differential,
    order: usize,
) -> Result<FaceData> {
    let w = mu2(p, q, order)?;
    let half = w.scale(&frac(1, 2));
    let core = exp_ad(&-&half, &bch2(p, &-q, order)?, order)?;
    let centre = flow(&half, start, ctx, order)?;
    let diff = (&core - &centre.bracket(&gen(g))).normalized(order);
    Ok(FaceData { diff, centre, diagonal: w })
}

/// Square face with chains `first = (c₁, c₂)` and `second = (d₁, d₂)` sharing
/// both endpoints: `∂g = exp(−½ad_w) BCH(c₁, c₂, −d₂, −d₁) − [x, g]`.
pub fn square_face_diff(
    g: Generator,
    first: [&Edge; 2],
    second: [&Edge; 2],
    ctx: &dyn Differential,
    order: usize,
) -> Result<FaceData> {
    for chain in [&first, &second] {
        if chain[0].to != chain[1].from {
            return Err(DglaError::ChainEndpoint(format!(
                "{} ends at {} but {} starts at {}",
                chain[0].name, chain[0].to, chain[1].name, chain[1].from
            )));
        }
    }
    if first[0].from != second[0].from || first[1].to != second[1].to {
        return Err(DglaError::ChainEndpoint(format!(
            "chains {}{} and {}{} do not share endpoints",
            first[0].name, first[1].name, second[0].name, second[1].name
        )));
    }
    let p = bch_multi(&[gen(first[0].name), gen(first[1].name)], order)?;
    let q = bch_multi(&[gen(second[0].name), gen(second[1].name)], order)?;
    bigon_face(g, &p, &q, &gen(first[0].from), ctx, order)
}

/// The symmetric bi-gon: edges `e1`, `e2` from `a` to `b` and a face `f`
/// localised at its centre.
pub fn bigon_model(order: usize) -> Result<Model> {
    let (a, b) = (Generator::new("a", -1), Generator::new("b", -1));
    let (e1, e2) = (Generator::new("e1", 0), Generator::new("e2", 0));
    let f = Generator::new("f", 1);
    let edges = [Edge::new(e1, a, b), Edge::new(e2, a, b)];
    let sk = skeleton("bigon", &[a, b], &edges, order)?;
    let face = bigon_face(f, &gen(e1), &gen(e2), &gen(a), &sk, order)?;
    let mut cells = sk.cells().to_vec();
    cells.push(Cell::new(f, face.diff, &gen(e1) - &gen(e2), [a, b, e1, e2, f].into()).localised_at(face.centre));
    Model::new("bigon", order, cells)
}
