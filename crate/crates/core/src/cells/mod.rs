//! Builders for concrete cell models: interval, bi-gon and square faces,
//! the n-faceted banana with its symmetries, polyhedral 3-cells and the cube.

mod banana;
mod cube;
mod face;
mod polyhedron;

pub use banana::{
    banana_model_at_a, banana_model_symmetric, banana_p, banana_symmetry, check_cyclic_covariance, check_identity6,
    check_reversal_covariance, check_symmetry, BananaVariant, PVariant, SymmetryKind, SYMMETRY_CAP,
};
pub use cube::{
    cube_data, cube_model, cube_morphism, cube_spec, CubeData, CubeFace, CUBE_CHAINS, CUBE_EDGES, CUBE_FACES,
    CUBE_VERTICES,
};
pub use face::{bigon_face, bigon_model, interval_model, square_face_diff, Edge, FaceData};
pub use polyhedron::{banana_shelling, polyhedron_model, polyhedron_morphism, EdgeSpec, FaceSpec, PolyhedronSpec};

use crate::lie::{Generator, LieElement};
use crate::model::{Cell, Model};
use crate::rational::frac;
use crate::series_calc::interval_diff;
use crate::Result;

pub(crate) fn gen(x: Generator) -> LieElement {
    LieElement::generator(x)
}

/// Vertex with `∂a = −½[a,a]`.
pub(crate) fn vertex_cell(a: Generator) -> Cell {
    let x = gen(a);
    Cell::new(a, x.bracket(&x).scale(&frac(-1, 2)), LieElement::zero(), [a].into())
}

/// Edge `e` from `a` to `b` with the interval differential.
pub(crate) fn edge_cell(e: Generator, a: Generator, b: Generator, order: usize) -> Result<Cell> {
    Ok(Cell::new(e, interval_diff(e, a, b, order)?, &gen(b) - &gen(a), [a, b, e].into()))
}

/// Vertices and edges only; used as the differential context for flows.
pub(crate) fn skeleton(name: &str, vertices: &[Generator], edges: &[Edge], order: usize) -> Result<Model> {
    let mut cells: Vec<Cell> = vertices.iter().map(|&v| vertex_cell(v)).collect();
    for e in edges {
        cells.push(edge_cell(e.name, e.from, e.to, order)?);
    }
    Model::new(name, order, cells)
}
