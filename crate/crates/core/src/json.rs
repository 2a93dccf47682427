//! JSON encodings of elements, operator polynomials, models and reports.
//!
//! An element is `{"terms":[{"coeff":"p/q","tree":T}]}` in canonical order,
//! where `T` is `{"gen":"a"}` or `{"br":[T,T]}`. Readers also accept a tree
//! written compactly as a string such as `"[a,[a,e]]"`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{DglaError, Result};
use crate::lie::{BracketTree, Generator, LieElement};
use crate::model::{Cell, Model};
use crate::rational;
use crate::series_calc::OperatorPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i32,
}

#[derive(Deserialize)]
struct TermEntry {
    coeff: String,
    tree: Value,
}

#[derive(Deserialize)]
struct ElementEntry {
    terms: Vec<TermEntry>,
}

/// Name → generator lookup built from a generator table.
#[derive(Clone, Debug, Default)]
pub struct GeneratorTable(HashMap<String, Generator>);

impl GeneratorTable {
    pub fn from_entries(entries: &[GeneratorEntry]) -> Result<Self> {
        let mut map = HashMap::new();
        for e in entries {
            validate_name(&e.name)?;
            if map.insert(e.name.clone(), Generator::new(&e.name, e.degree)).is_some() {
                return Err(DglaError::Parse(format!("duplicate generator {:?}", e.name)));
            }
        }
        Ok(GeneratorTable(map))
    }

    pub fn from_model(m: &Model) -> Self {
        GeneratorTable(m.generators().map(|g| (g.name().to_string(), g)).collect())
    }

    pub fn get(&self, name: &str) -> Result<Generator> {
        self.0.get(name).copied().ok_or_else(|| DglaError::UnknownGenerator(name.to_string()))
    }
}

fn validate_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| "[], \t\n".contains(c)) {
        return Err(DglaError::Parse(format!("invalid generator name {name:?}")));
    }
    Ok(())
}

pub fn tree_to_json(t: &BracketTree) -> Value {
    match t.children() {
        None => json!({"gen": t.key()}),
        Some((l, r)) => json!({"br": [tree_to_json(l), tree_to_json(r)]}),
    }
}

pub fn tree_from_json(v: &Value, table: &GeneratorTable) -> Result<BracketTree> {
    let bad = || DglaError::Parse(format!("malformed tree {v}"));
    match v {
        Value::String(s) => parse_tree(s, table),
        Value::Object(o) if o.len() == 1 => {
            if let Some(name) = o.get("gen") {
                Ok(BracketTree::leaf(table.get(name.as_str().ok_or_else(bad)?)?))
            } else if let Some(Value::Array(pair)) = o.get("br") {
                match pair.as_slice() {
                    [l, r] => Ok(BracketTree::bracket(&tree_from_json(l, table)?, &tree_from_json(r, table)?)),
                    _ => Err(bad()),
                }
            } else {
                Err(bad())
            }
        }
        _ => Err(bad()),
    }
}

pub fn element_to_json(x: &LieElement) -> Value {
    let terms: Vec<Value> =
        x.terms().map(|(t, c)| json!({"coeff": rational::format(c), "tree": tree_to_json(t)})).collect();
    json!({"terms": terms})
}

pub fn element_from_json(v: &Value, table: &GeneratorTable) -> Result<LieElement> {
    let e: ElementEntry = serde_json::from_value(v.clone()).map_err(|e| DglaError::Parse(e.to_string()))?;
    let mut x = LieElement::zero();
    for t in e.terms {
        x.add_term(tree_from_json(&t.tree, table)?, rational::parse(&t.coeff)?);
    }
    Ok(x)
}

/// Parses `name` or `[L,R]`.
pub fn parse_tree(s: &str, table: &GeneratorTable) -> Result<BracketTree> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (t, rest) = tree_prefix(&compact, table)?;
    if !rest.is_empty() {
        return Err(DglaError::Parse(format!("trailing input {rest:?} in tree {s:?}")));
    }
    Ok(t)
}

fn tree_prefix<'a>(s: &'a str, table: &GeneratorTable) -> Result<(BracketTree, &'a str)> {
    let bad = || DglaError::Parse(format!("malformed tree near {s:?}"));
    if let Some(rest) = s.strip_prefix('[') {
        let (l, rest) = tree_prefix(rest, table)?;
        let rest = rest.strip_prefix(',').ok_or_else(bad)?;
        let (r, rest) = tree_prefix(rest, table)?;
        let rest = rest.strip_prefix(']').ok_or_else(bad)?;
        Ok((BracketTree::bracket(&l, &r), rest))
    } else {
        let end = s.find([',', ']', '[']).unwrap_or(s.len());
        if end == 0 {
            return Err(bad());
        }
        Ok((BracketTree::leaf(table.get(&s[..end])?), &s[end..]))
    }
}

/// `{"symbols":k,"terms":[{"coeff":"1/12","word":[1,1]}]}` with 1-based symbols.
pub fn operator_to_json(p: &OperatorPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .into_iter()
        .map(|(w, c)| json!({"coeff": rational::format(&c), "word": w.iter().map(|i| i + 1).collect::<Vec<_>>()}))
        .collect();
    json!({"symbols": p.symbols(), "terms": terms})
}

pub fn operator_from_json(v: &Value) -> Result<OperatorPoly> {
    #[derive(Deserialize)]
    struct Term {
        coeff: String,
        word: Vec<usize>,
    }
    #[derive(Deserialize)]
    struct Poly {
        symbols: usize,
        terms: Vec<Term>,
    }
    let p: Poly = serde_json::from_value(v.clone()).map_err(|e| DglaError::Parse(e.to_string()))?;
    let order = p.terms.iter().map(|t| t.word.len()).max().unwrap_or(0);
    let mut terms = Vec::new();
    for t in p.terms {
        if t.word.contains(&0) {
            return Err(DglaError::Parse("symbols are numbered from 1".into()));
        }
        terms.push((rational::parse(&t.coeff)?, t.word.iter().map(|i| i - 1).collect()));
    }
    OperatorPoly::from_terms(p.symbols, order, terms)
}

pub fn generator_table_json(gens: impl IntoIterator<Item = Generator>) -> Value {
    Value::Array(gens.into_iter().map(|g| json!({"name": g.name(), "degree": g.degree()})).collect())
}

pub fn model_to_json(m: &Model) -> Value {
    let mut diff = serde_json::Map::new();
    let mut boundary = serde_json::Map::new();
    let mut closure = serde_json::Map::new();
    let mut localisation = serde_json::Map::new();
    for c in m.cells() {
        let name = c.generator.name().to_string();
        diff.insert(name.clone(), element_to_json(&c.diff));
        boundary.insert(name.clone(), element_to_json(&c.boundary));
        let names: Vec<&str> = c.closure.iter().map(|g| g.name()).collect();
        closure.insert(name.clone(), json!(names));
        if let Some(p) = &c.localisation {
            localisation.insert(name, element_to_json(p));
        }
    }
    json!({
        "name": m.name(),
        "generators": generator_table_json(m.generators()),
        "diff": diff,
        "boundary": boundary,
        "closure": closure,
        "localisation": localisation,
        "maxOrder": m.max_order(),
    })
}

pub fn model_from_json(v: &Value) -> Result<Model> {
    #[derive(Deserialize)]
    #[serde(rename_all = "camelCase")]
    struct Raw {
        #[serde(default)]
        name: Option<String>,
        generators: Vec<GeneratorEntry>,
        diff: BTreeMap<String, Value>,
        #[serde(default)]
        boundary: BTreeMap<String, Value>,
        #[serde(default)]
        closure: BTreeMap<String, Vec<String>>,
        #[serde(default)]
        localisation: BTreeMap<String, Value>,
        max_order: usize,
    }
    let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| DglaError::Parse(e.to_string()))?;
    let table = GeneratorTable::from_entries(&raw.generators)?;
    for key in raw.diff.keys().chain(raw.boundary.keys()).chain(raw.closure.keys()).chain(raw.localisation.keys()) {
        table.get(key)?;
    }
    let mut cells = Vec::new();
    for entry in &raw.generators {
        let g = table.get(&entry.name)?;
        let diff = match raw.diff.get(&entry.name) {
            Some(d) => element_from_json(d, &table)?,
            None => return Err(DglaError::InvalidModel(format!("no differential for {}", entry.name))),
        };
        let boundary = match raw.boundary.get(&entry.name) {
            Some(b) => element_from_json(b, &table)?,
            None => diff.component(0),
        };
        let closure: BTreeSet<Generator> = match raw.closure.get(&entry.name) {
            Some(names) => names.iter().map(|n| table.get(n)).collect::<Result<_>>()?,
            None => [g].into(),
        };
        let mut cell = Cell::new(g, diff, boundary, closure);
        if let Some(p) = raw.localisation.get(&entry.name) {
            cell = cell.localised_at(element_from_json(p, &table)?);
        }
        cells.push(cell);
    }
    Model::new(raw.name.unwrap_or_else(|| "model".into()), raw.max_order, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::bigon_model;
    use crate::series_calc::extract_q;

    #[test]
    fn element_round_trip() {
        let m = bigon_model(2).unwrap();
        let table = GeneratorTable::from_model(&m);
        for c in m.cells() {
            let back = element_from_json(&element_to_json(&c.diff), &table).unwrap();
            assert_eq!(back, c.diff);
        }
    }

    #[test]
    fn model_round_trip() {
        let m = bigon_model(2).unwrap();
        let back = model_from_json(&model_to_json(&m)).unwrap();
        assert_eq!(model_to_json(&back), model_to_json(&m));
    }

    #[test]
    fn operator_encoding() {
        let q = extract_q(2);
        let v = operator_to_json(&q);
        assert_eq!(v["symbols"], 2);
        assert_eq!(v["terms"][0], json!({"coeff": "1/2", "word": [1]}));
        assert_eq!(operator_from_json(&v).unwrap(), q);
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let table = GeneratorTable::from_entries(&[GeneratorEntry { name: "x".into(), degree: 0 }]).unwrap();
        for bad in ["[x,x", "[x]", "", "y", "[x,x]]"] {
            assert!(parse_tree(bad, &table).is_err(), "{bad}");
        }
        assert_eq!(parse_tree("[ x , [x,x] ]", &table).unwrap().key(), "[x,[x,x]]");
        for bad in [json!({"br": [{"gen": "x"}]}), json!({"gen": 3}), json!({"leaf": "x"}), json!(7)] {
            assert!(tree_from_json(&bad, &table).is_err(), "{bad}");
        }
    }

    #[test]
    fn element_encoding_shape() {
        let table = GeneratorTable::from_entries(&[
            GeneratorEntry { name: "a".into(), degree: -1 },
            GeneratorEntry { name: "e".into(), degree: 0 },
        ])
        .unwrap();
        let v = json!({"terms": [{"coeff": "-1/2", "tree": {"br": [{"gen": "a"}, {"gen": "e"}]}}]});
        let x = element_from_json(&v, &table).unwrap();
        assert_eq!(element_to_json(&x), v);
        let compact = json!({"terms": [{"coeff": "-1/2", "tree": "[a,e]"}]});
        assert_eq!(element_from_json(&compact, &table).unwrap(), x);
    }
}
