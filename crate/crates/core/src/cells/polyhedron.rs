use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::banana::{banana_model_at_a_with, banana_p, PVariant};
use super::face::Edge;
use super::{gen, skeleton};
use crate::error::{DglaError, Result};
use crate::lie::{AssocSeries, Generator, LieElement};
use crate::model::{Cell, Model, Morphism};
use crate::rational::int;
use crate::series_calc::{bch2, bch_multi, exp_ad_series};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_prime: Option<Vec<String>>,
    /// Oriented boundary loop; `-name` traverses an edge backwards.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<String>>,
}

/// A 3-cell with a shelling: chains `γ₁..γₙ` from `a` to `b`, face `i`
/// lying between `γᵢ` and `γᵢ₊₁`. Chain entries `-name` traverse an edge backwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronSpec {
    #[serde(default = "default_name")]
    pub name: String,
    pub vertices: Vec<String>,
    #[serde(default = "default_a")]
    pub a: String,
    #[serde(default = "default_b")]
    pub b: String,
    #[serde(default = "default_cell")]
    pub cell: String,
    pub edges: Vec<EdgeSpec>,
    pub chains: Vec<Vec<String>>,
    pub faces: Vec<FaceSpec>,
}

fn default_name() -> String {
    "polyhedron".into()
}
fn default_a() -> String {
    "a".into()
}
fn default_b() -> String {
    "b".into()
}
fn default_cell() -> String {
    "h".into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Step {
    edge: Edge,
    forward: bool,
}

impl Step {
    fn start(&self) -> Generator {
        if self.forward {
            self.edge.from
        } else {
            self.edge.to
        }
    }
    fn end(&self) -> Generator {
        if self.forward {
            self.edge.to
        } else {
            self.edge.from
        }
    }
    fn reversed(self) -> Step {
        Step { edge: self.edge, forward: !self.forward }
    }
    fn elem(&self) -> LieElement {
        if self.forward {
            gen(self.edge.name)
        } else {
            -gen(self.edge.name)
        }
    }
}

struct ShellFace {
    g: Generator,
    alpha: Vec<Step>,
    delta: Vec<Step>,
    delta_prime: Vec<Step>,
    p: Generator,
    sign: i64,
}

struct Shelling {
    a: Generator,
    b: Generator,
    h: Generator,
    vertices: Vec<Generator>,
    edges: Vec<Edge>,
    chains: Vec<Vec<Step>>,
    faces: Vec<ShellFace>,
}

fn fmt_steps(steps: &[Step]) -> String {
    let names: Vec<String> =
        steps.iter().map(|s| if s.forward { s.edge.name.to_string() } else { format!("-{}", s.edge.name) }).collect();
    format!("[{}]", names.join(","))
}

impl PolyhedronSpec {
    pub fn from_json(text: &str) -> Result<PolyhedronSpec> {
        serde_json::from_str(text).map_err(|e| DglaError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    fn resolve(&self) -> Result<Shelling> {
        let mut names = HashSet::new();
        for n in self
            .vertices
            .iter()
            .chain(self.edges.iter().map(|e| &e.name))
            .chain(self.faces.iter().map(|f| &f.name))
            .chain([&self.cell])
        {
            if n.is_empty() || n.starts_with('-') || !names.insert(n.clone()) {
                return Err(DglaError::InvalidModel(format!("bad or duplicate cell name {n:?}")));
            }
        }
        let vertex_set: HashMap<&str, Generator> =
            self.vertices.iter().map(|v| (v.as_str(), Generator::new(v, -1))).collect();
        let vertex = |v: &str| vertex_set.get(v).copied().ok_or_else(|| DglaError::UnknownGenerator(v.to_string()));
        let (a, b) = (vertex(&self.a)?, vertex(&self.b)?);
        if a == b {
            return Err(DglaError::InvalidModel("a and b must differ".into()));
        }
        let mut edges = Vec::new();
        let mut edge_map = HashMap::new();
        for e in &self.edges {
            let edge = Edge::new(Generator::new(&e.name, 0), vertex(&e.from)?, vertex(&e.to)?);
            if edge.from == edge.to {
                return Err(DglaError::InvalidModel(format!("edge {} is a loop", e.name)));
            }
            edges.push(edge);
            edge_map.insert(e.name.as_str(), edge);
        }
        let step = |s: &str| -> Result<Step> {
            let (name, forward) = match s.strip_prefix('-') {
                Some(rest) => (rest, false),
                None => (s, true),
            };
            let edge = *edge_map.get(name).ok_or_else(|| DglaError::UnknownGenerator(name.to_string()))?;
            Ok(Step { edge, forward })
        };
        let steps = |list: &[String]| list.iter().map(|s| step(s)).collect::<Result<Vec<Step>>>();

        let n = self.chains.len();
        if n < 2 {
            return Err(DglaError::Shelling(format!("need at least 2 chains, got {n}")));
        }
        let mut chains = Vec::new();
        for (i, c) in self.chains.iter().enumerate() {
            let c = steps(c)?;
            if c.is_empty() {
                return Err(DglaError::ChainEndpoint(format!("chain {} is empty", i + 1)));
            }
            if c[0].start() != a || c[c.len() - 1].end() != b {
                return Err(DglaError::ChainEndpoint(format!("chain {} does not run from {a} to {b}", i + 1)));
            }
            let mut seen = HashSet::from([a]);
            for w in c.windows(2) {
                if w[0].end() != w[1].start() {
                    return Err(DglaError::ChainEndpoint(format!(
                        "chain {}: {} ends at {} but {} starts at {}",
                        i + 1,
                        w[0].edge.name,
                        w[0].end(),
                        w[1].edge.name,
                        w[1].start()
                    )));
                }
            }
            for s in &c {
                if !seen.insert(s.end()) {
                    return Err(DglaError::Shelling(format!("chain {} revisits {}", i + 1, s.end())));
                }
            }
            chains.push(c);
        }
        if self.faces.len() != n {
            return Err(DglaError::Shelling(format!("{n} chains but {} faces", self.faces.len())));
        }
        let mut faces = Vec::new();
        for (i, fs) in self.faces.iter().enumerate() {
            let (gi, gj) = (&chains[i], &chains[(i + 1) % n]);
            let pre = gi.iter().zip(gj).take_while(|(x, y)| x == y).count();
            let suf = gi[pre..].iter().rev().zip(gj[pre..].iter().rev()).take_while(|(x, y)| x == y).count();
            let delta = gi[pre..gi.len() - suf].to_vec();
            let delta_prime = gj[pre..gj.len() - suf].to_vec();
            if delta.is_empty() || delta_prime.is_empty() {
                return Err(DglaError::Shelling(format!(
                    "chains {} and {} do not bound a face",
                    i + 1,
                    (i + 1) % n + 1
                )));
            }
            for (given, derived, label) in [(&fs.delta, &delta, "delta"), (&fs.delta_prime, &delta_prime, "deltaPrime")]
            {
                if let Some(given) = given {
                    if &steps(given)? != derived {
                        return Err(DglaError::Shelling(format!(
                            "face {}: {label} {} does not match the shelling's {}",
                            fs.name,
                            fmt_steps(&steps(given)?),
                            fmt_steps(derived)
                        )));
                    }
                }
            }
            let mut lp: Vec<Step> = delta.clone();
            lp.extend(delta_prime.iter().rev().map(|s| s.reversed()));
            let sign = match &fs.boundary {
                None => 1,
                Some(loop_names) => {
                    let given = steps(loop_names)?;
                    let reversed: Vec<Step> = lp.iter().rev().map(|s| s.reversed()).collect();
                    if cyclic_eq(&given, &lp) {
                        1
                    } else if cyclic_eq(&given, &reversed) {
                        -1
                    } else {
                        return Err(DglaError::Orientation(format!(
                            "face {}: boundary {} is not the loop {} in either direction",
                            fs.name,
                            fmt_steps(&given),
                            fmt_steps(&lp)
                        )));
                    }
                }
            };
            faces.push(ShellFace {
                g: Generator::new(&fs.name, 1),
                alpha: gi[..pre].to_vec(),
                p: delta[0].start(),
                delta,
                delta_prime,
                sign,
            });
        }
        Ok(Shelling {
            a,
            b,
            h: Generator::new(&self.cell, 2),
            vertices: self.vertices.iter().map(|v| vertex_set[v.as_str()]).collect(),
            edges,
            chains,
            faces,
        })
    }
}

fn cyclic_eq(x: &[Step], y: &[Step]) -> bool {
    x.len() == y.len() && (0..y.len().max(1)).any(|r| x.iter().enumerate().all(|(i, s)| *s == y[(i + r) % y.len()]))
}

fn path_elem(steps: &[Step], order: usize) -> Result<LieElement> {
    bch_multi(&steps.iter().map(|s| s.elem()).collect::<Vec<_>>(), order)
}

fn signed_sum(steps: &[Step]) -> LieElement {
    steps.iter().fold(LieElement::zero(), |acc, s| &acc + &s.elem())
}

/// 2-cells localised at the start of their `δ`, the 3-cell localised at `a`.
pub fn polyhedron_model(spec: &PolyhedronSpec, order: usize) -> Result<Model> {
    let sh = spec.resolve()?;
    polyhedron_from_shelling(&spec.name, &sh, order)
}

fn polyhedron_from_shelling(name: &str, sh: &Shelling, order: usize) -> Result<Model> {
    let n = sh.chains.len();
    let ps = banana_p(n, order, PVariant::Averaged)?;
    let sk = skeleton(name, &sh.vertices, &sh.edges, order)?;
    let mut cells = sk.cells().to_vec();
    let len = order + 1;
    let gammas: Vec<LieElement> = sh.chains.iter().map(|c| path_elem(c, order)).collect::<Result<_>>()?;
    let args: Vec<AssocSeries> = (0..n - 1)
        .map(|j| Ok(bch2(&gammas[j], &-&gammas[j + 1], order)?.expand_assoc(order)))
        .collect::<Result<_>>()?;
    let a = gen(sh.a);
    let mut dh = a.expand_assoc(order).bracket(&AssocSeries::letter(sh.h, len)).neg();
    let mut boundary_h = LieElement::zero();
    let mut closure_h: BTreeSet<Generator> = sh.vertices.iter().copied().collect();
    closure_h.extend(sh.edges.iter().map(|e| e.name));
    closure_h.insert(sh.h);
    for (i, f) in sh.faces.iter().enumerate() {
        let sign = int(f.sign);
        let core = bch2(&path_elem(&f.delta, order)?, &-path_elem(&f.delta_prime, order)?, order)?;
        let diff = &core.scale(&sign) - &gen(f.p).bracket(&gen(f.g));
        let boundary = (&signed_sum(&f.delta) - &signed_sum(&f.delta_prime)).scale(&sign);
        let mut closure: BTreeSet<Generator> = [f.g].into();
        for s in f.delta.iter().chain(&f.delta_prime) {
            closure.extend([s.edge.name, s.edge.from, s.edge.to]);
        }
        cells.push(Cell::new(f.g, diff, boundary, closure).localised_at(gen(f.p)));
        let alpha = path_elem(&f.alpha, order)?.expand_assoc(order);
        let gi = exp_ad_series(&alpha, &AssocSeries::letter(f.g, len), &int(1)).scale(&sign);
        dh = dh.add(&ps[i].apply_series(&args, &gi));
        boundary_h = &boundary_h + &gen(f.g).scale(&sign);
        closure_h.insert(f.g);
    }
    cells.push(Cell::new(sh.h, LieElement::from_assoc(&dh), boundary_h, closure_h).localised_at(a));
    Model::new(name, order, cells)
}

/// The natural map from the banana localised at `a`:
/// `eᵢ ↦ BCH(γᵢ)`, `fᵢ ↦ ±exp(ad_{BCH(αᵢ)}) gᵢ`, `a, b, h` fixed.
pub fn polyhedron_morphism(spec: &PolyhedronSpec, order: usize) -> Result<Morphism> {
    let sh = spec.resolve()?;
    let n = sh.chains.len();
    let target = Arc::new(polyhedron_from_shelling(&spec.name, &sh, order)?);
    let ps = banana_p(n, order, PVariant::Averaged)?;
    let source = Arc::new(banana_model_at_a_with(n, order, &ps)?);
    let mut assign = BTreeMap::new();
    assign.insert(source.generator("a")?, gen(sh.a));
    assign.insert(source.generator("b")?, gen(sh.b));
    assign.insert(source.generator("h")?, gen(sh.h));
    for (i, chain) in sh.chains.iter().enumerate() {
        assign.insert(source.generator(&format!("e{}", i + 1))?, path_elem(chain, order)?);
    }
    for (i, f) in sh.faces.iter().enumerate() {
        let alpha = path_elem(&f.alpha, order)?.expand_assoc(order);
        let gi = exp_ad_series(&alpha, &AssocSeries::letter(f.g, order + 1), &int(1)).scale(&int(f.sign));
        assign.insert(source.generator(&format!("f{}", i + 1))?, LieElement::from_assoc(&gi));
    }
    Morphism::new(source, target, assign)
}

/// Trivial shelling of the banana: `γᵢ = eᵢ`, faces `fᵢ` between `eᵢ` and `eᵢ₊₁`.
pub fn banana_shelling(n: usize) -> PolyhedronSpec {
    let e = |i: usize| format!("e{}", (i - 1) % n + 1);
    PolyhedronSpec {
        name: format!("banana{n}-shelling"),
        vertices: vec!["a".into(), "b".into()],
        a: "a".into(),
        b: "b".into(),
        cell: "h".into(),
        edges: (1..=n).map(|i| EdgeSpec { name: e(i), from: "a".into(), to: "b".into() }).collect(),
        chains: (1..=n).map(|i| vec![e(i)]).collect(),
        faces: (1..=n)
            .map(|i| FaceSpec {
                name: format!("f{i}"),
                delta: Some(vec![e(i)]),
                delta_prime: Some(vec![e(i + 1)]),
                boundary: Some(vec![e(i), format!("-{}", e(i + 1))]),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{banana_model_at_a, cube_spec, CUBE_FACES};
    use crate::model::{check_bracket_free, check_d_squared, check_locality, check_morphism};

    #[test]
    fn banana_shelling_reproduces_banana() {
        for n in [2, 3] {
            let p = polyhedron_model(&banana_shelling(n), 3).unwrap();
            let b = banana_model_at_a(n, 3).unwrap();
            for c in b.cells() {
                assert!(p.diff(c.generator).unwrap().is_equal(&c.diff, 3), "{}", c.generator);
            }
        }
    }

    #[test]
    fn cube_shelling() {
        let spec = cube_spec();
        let m = polyhedron_model(&spec, 2).unwrap();
        assert!(check_d_squared(&m, 2).unwrap().pass);
        assert!(check_bracket_free(&m).pass && check_locality(&m).pass);
        assert!(check_morphism(&polyhedron_morphism(&spec, 2).unwrap(), 2).unwrap().pass);
        let h = m.diff(m.generator("h").unwrap()).unwrap().component(0);
        let expected = CUBE_FACES
            .iter()
            .fold(LieElement::zero(), |acc, f| &acc + &gen(Generator::new(f.name, 1)).scale(&int(f.sign)));
        assert!(h.is_equal(&expected, 0));
    }

    #[test]
    fn json_round_trip() {
        let spec = cube_spec();
        assert_eq!(PolyhedronSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn inconsistent_shellings_fail() {
        let mut spec = banana_shelling(3);
        spec.faces[0].boundary = Some(vec!["e1".into(), "-e3".into()]);
        assert!(matches!(polyhedron_model(&spec, 2), Err(DglaError::Orientation(_))));
        let mut spec = banana_shelling(3);
        spec.faces[1].delta = Some(vec!["e1".into()]);
        assert!(matches!(polyhedron_model(&spec, 2), Err(DglaError::Shelling(_))));
        let mut spec = banana_shelling(3);
        spec.chains[1] = vec!["-e2".into()];
        assert!(matches!(polyhedron_model(&spec, 2), Err(DglaError::ChainEndpoint(_))));
        let mut spec = banana_shelling(3);
        spec.chains[2] = spec.chains[1].clone();
        assert!(matches!(polyhedron_model(&spec, 2), Err(DglaError::Shelling(_))));
    }

    #[test]
    fn reversed_boundary_flips_the_face() {
        let mut spec = banana_shelling(3);
        spec.faces[0].boundary = Some(vec!["e2".into(), "-e1".into()]);
        let m = polyhedron_model(&spec, 3).unwrap();
        assert!(check_d_squared(&m, 3).unwrap().pass);
        assert!(check_bracket_free(&m).pass);
        assert!(check_morphism(&polyhedron_morphism(&spec, 3).unwrap(), 3).unwrap().pass);
    }
}
