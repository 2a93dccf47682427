use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::banana::banana_model_symmetric;
use super::face::{square_face_diff, Edge};
use super::polyhedron::{EdgeSpec, FaceSpec, PolyhedronSpec};
use super::{gen, skeleton};
use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, Generator, LieElement};
use crate::model::{Cell, Model, Morphism};
use crate::rational::{frac, int};
use crate::series_calc::{bch_multi, exp_ad_series, mu2};

/// One square of the cube, listed in the order of the banana faces it receives.
#[derive(Clone, Copy, Debug)]
pub struct CubeFace {
    pub name: &'static str,
    /// Minimal vertex in the order induced by the edge orientations.
    pub min: &'static str,
    pub first: [&'static str; 2],
    pub second: [&'static str; 2],
    /// Sign with which the banana face maps onto this square.
    pub sign: i64,
}

pub const CUBE_VERTICES: [&str; 8] = ["a", "b", "a1", "a2", "a3", "a4", "a5", "a6"];

/// `(name, from, to)`; edges at `a` point away from it, parallel edges agree.
pub const CUBE_EDGES: [(&str, &str, &str); 12] = [
    ("e1", "a", "a2"),
    ("e2", "a", "a6"),
    ("e3", "a", "a4"),
    ("eb1", "a5", "b"),
    ("eb2", "a3", "b"),
    ("eb3", "a1", "b"),
    ("f1", "a2", "a1"),
    ("f2", "a2", "a3"),
    ("f3", "a4", "a3"),
    ("f4", "a4", "a5"),
    ("f5", "a6", "a5"),
    ("f6", "a6", "a1"),
];

/// The six maximal chains from `a` to `b`, images of the banana edges.
pub const CUBE_CHAINS: [[&str; 3]; 6] = [
    ["e3", "f4", "eb1"],
    ["e2", "f5", "eb1"],
    ["e2", "f6", "eb3"],
    ["e1", "f1", "eb3"],
    ["e1", "f2", "eb2"],
    ["e3", "f3", "eb2"],
];

pub const CUBE_FACES: [CubeFace; 6] = [
    CubeFace { name: "g1", min: "a", first: ["e2", "f5"], second: ["e3", "f4"], sign: -1 },
    CubeFace { name: "gb2", min: "a6", first: ["f6", "eb3"], second: ["f5", "eb1"], sign: -1 },
    CubeFace { name: "g3", min: "a", first: ["e1", "f1"], second: ["e2", "f6"], sign: -1 },
    CubeFace { name: "gb1", min: "a2", first: ["f1", "eb3"], second: ["f2", "eb2"], sign: 1 },
    CubeFace { name: "g2", min: "a", first: ["e1", "f2"], second: ["e3", "f3"], sign: 1 },
    CubeFace { name: "gb3", min: "a4", first: ["f3", "eb2"], second: ["f4", "eb1"], sign: 1 },
];

/// The cube model together with the map from the symmetric 6-faceted banana.
#[derive(Clone, Debug)]
pub struct CubeData {
    pub model: Arc<Model>,
    pub morphism: Morphism,
    /// `(square, vₖ)`: flows the square's centre to the matching bi-gon centre.
    pub conjugators: Vec<(String, LieElement)>,
    pub square_centres: Vec<LieElement>,
    pub bigon_centres: Vec<LieElement>,
}

fn edge(name: &str) -> Generator {
    Generator::new(name, 0)
}

fn chain_elems(chain: &[&str]) -> Vec<LieElement> {
    chain.iter().map(|e| gen(edge(e))).collect()
}

pub fn cube_data(order: usize) -> Result<CubeData> {
    let v = |s: &str| Generator::new(s, -1);
    let vertices: Vec<Generator> = CUBE_VERTICES.iter().map(|s| v(s)).collect();
    let edges: Vec<Edge> = CUBE_EDGES.iter().map(|(n, f, t)| Edge::new(edge(n), v(f), v(t))).collect();
    let by_name: BTreeMap<&str, Edge> = CUBE_EDGES.iter().map(|e| e.0).zip(edges.iter().copied()).collect();
    let sk = skeleton("cube", &vertices, &edges, order)?;
    let mut cells = sk.cells().to_vec();

    let source = Arc::new(banana_model_symmetric(6, order)?);
    let chains: Vec<LieElement> =
        CUBE_CHAINS.iter().map(|c| bch_multi(&chain_elems(c), order)).collect::<Result<_>>()?;
    let mut assign = BTreeMap::new();
    for (k, e) in chains.iter().enumerate() {
        assign.insert(source.generator(&format!("e{}", k + 1))?, e.clone());
    }
    let (mut conj, mut squares, mut bigons) = (Vec::new(), Vec::new(), Vec::new());
    let mut boundary_h = LieElement::zero();
    for (k, sq) in CUBE_FACES.iter().enumerate() {
        let g = Generator::new(sq.name, 1);
        let first = [&by_name[sq.first[0]], &by_name[sq.first[1]]];
        let second = [&by_name[sq.second[0]], &by_name[sq.second[1]]];
        if first[0].from != v(sq.min) {
            return Err(DglaError::Orientation(format!("{} does not start at {}", sq.name, sq.min)));
        }
        let face = square_face_diff(g, first, second, &sk, order)?;
        let boundary = &(&gen(first[0].name) + &gen(first[1].name)) - &(&gen(second[0].name) + &gen(second[1].name));
        let (ck, cn) = (&CUBE_CHAINS[k], &CUBE_CHAINS[(k + 1) % 6]);
        let expected = &chain_elems(ck).iter().fold(LieElement::zero(), |s, x| &s + x)
            - &chain_elems(cn).iter().fold(LieElement::zero(), |s, x| &s + x);
        if !boundary.scale(&int(sq.sign)).is_equal(&expected, 0) {
            return Err(DglaError::Orientation(format!(
                "banana face {} does not map to {}{} with matching boundary",
                k + 1,
                if sq.sign < 0 { "-" } else { "+" },
                sq.name
            )));
        }
        let mut closure: BTreeSet<Generator> = [g].into();
        for e in first.iter().chain(second.iter()) {
            closure.extend([e.name, e.from, e.to]);
        }
        cells.push(Cell::new(g, face.diff.clone(), boundary, closure).localised_at(face.centre.clone()));
        boundary_h = &boundary_h + &gen(g).scale(&int(sq.sign));

        let prefix: Vec<&str> = ck.iter().zip(cn.iter()).take_while(|(x, y)| x == y).map(|(x, _)| *x).collect();
        let alpha = bch_multi(&chain_elems(&prefix), order)?;
        let vk = mu2(&chains[k], &chains[(k + 1) % 6], order)?;
        let half = frac(1, 2);
        let c = bch_multi(&[face.diagonal.scale(&-&half), -&alpha, vk.scale(&half)], order)?;
        let image = exp_ad_series(&c.expand_assoc(order), &AssocSeries::letter(g, order + 1), &int(-1));
        assign.insert(source.generator(&format!("f{}", k + 1))?, LieElement::from_assoc(&image.scale(&int(sq.sign))));
        let fk = source.generator(&format!("f{}", k + 1))?;
        bigons.push(source.cell(fk)?.localisation.clone().unwrap_or_default());
        squares.push(face.centre);
        conj.push((sq.name.to_string(), c));
    }
    let (a, b, h) = (source.generator("a")?, source.generator("b")?, source.generator("h")?);
    assign.insert(a, gen(a));
    assign.insert(b, gen(b));
    assign.insert(h, gen(h));
    let push = |x: &LieElement| -> LieElement {
        let len = order + 1;
        let s = x.expand_assoc(order).substitute(&mut |g| assign[&g].expand_assoc(order), len);
        LieElement::from_assoc(&s)
    };
    for b in &mut bigons {
        *b = push(b);
    }
    let h_cell = source.cell(h)?;
    let dh = push(&h_cell.diff);
    let centre = push(h_cell.localisation.as_ref().expect("3-cell is localised"));
    let closure_h: BTreeSet<Generator> = cells.iter().map(|c| c.generator).chain([h]).collect();
    cells.push(Cell::new(h, dh, boundary_h, closure_h).localised_at(centre));
    let model = Arc::new(Model::new("cube", order, cells)?.with_symmetry_cap(6, super::banana::SYMMETRY_CAP));
    let morphism = Morphism::new(source, model.clone(), assign)?;
    Ok(CubeData { model, morphism, conjugators: conj, square_centres: squares, bigon_centres: bigons })
}

/// Cube with faces localised at their centres and `∂h` induced from the
/// symmetric 6-faceted banana.
pub fn cube_model(order: usize) -> Result<Model> {
    Ok((*cube_data(order)?.model).clone())
}

pub fn cube_morphism(order: usize) -> Result<Morphism> {
    Ok(cube_data(order)?.morphism)
}

/// The cube's shelling by its six maximal chains, as a polyhedron spec.
pub fn cube_spec() -> PolyhedronSpec {
    PolyhedronSpec {
        name: "cube".into(),
        vertices: CUBE_VERTICES.iter().map(|s| s.to_string()).collect(),
        a: "a".into(),
        b: "b".into(),
        cell: "h".into(),
        edges: CUBE_EDGES
            .iter()
            .map(|(n, f, t)| EdgeSpec { name: n.to_string(), from: f.to_string(), to: t.to_string() })
            .collect(),
        chains: CUBE_CHAINS.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect(),
        faces: CUBE_FACES
            .iter()
            .map(|sq| FaceSpec {
                name: sq.name.to_string(),
                delta: None,
                delta_prime: None,
                boundary: Some(vec![
                    sq.first[0].to_string(),
                    sq.first[1].to_string(),
                    format!("-{}", sq.second[1]),
                    format!("-{}", sq.second[0]),
                ]),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_bracket_free, check_d_squared, check_locality, check_morphism};
    use crate::series_calc::flow;

    #[test]
    fn cube_at_order_two() {
        let t = std::time::Instant::now();
        let data = cube_data(2).unwrap();
        eprintln!("cube build {:?}", t.elapsed());
        let m = &data.model;
        assert!(check_bracket_free(m).pass && check_locality(m).pass);
        assert!(check_d_squared(m, 2).unwrap().pass);
        assert!(check_morphism(&data.morphism, 2).unwrap().pass);
        eprintln!("cube checks {:?}", t.elapsed());
        let el = |s: &str| gen(Generator::new(s, 0));
        let expected = [
            el("eb1").scale(&frac(1, 2)),
            el("e2").scale(&frac(-1, 2)),
            el("eb3").scale(&frac(1, 2)),
            el("e1").scale(&frac(-1, 2)),
            el("eb2").scale(&frac(1, 2)),
            el("e3").scale(&frac(-1, 2)),
        ];
        for ((name, c), e) in data.conjugators.iter().zip(&expected) {
            assert!(c.is_equal(e, 0), "{name}: {c}");
        }
        for ((sq, bg), (_, c)) in data.square_centres.iter().zip(&data.bigon_centres).zip(&data.conjugators) {
            assert!(flow(c, sq, m.as_ref(), 2).unwrap().is_equal(bg, 2));
        }
    }
}
