//! JSON forms of simplicial sets, marked sets, categories, functors and diagrams.
//!
//! Simplicial set: cell names per dimension, and the faces `d_0, …, d_n` of every
//! cell of positive dimension as references `{base, word}`; `word` is a degeneracy
//! word `[j_1, …, j_k]` standing for `s_{j_1} ⋯ s_{j_k}`.
//!
//! ```json
//! {"cells": {"0": ["a", "b"], "1": ["f"]},
//!  "faces": {"f": [{"base": "b", "word": []}, {"base": "a", "word": []}]}}
//! ```
//!
//! A marked set adds `"marked": ["f"]` (nondegenerate edges only). Shortcuts accepted
//! on input: `{"standard": "horn", "params": [2, 1]}` and `{"nerve": <category>, "level": 2}`.
//!
//! Category: objects, arrows per hom-set keyed `"a,b"`, identities, and every composite
//! `g∘f` of non-identity arrows keyed `"g,f"`.
//!
//! ```json
//! {"objects": ["0", "1"], "hom": {"0,0": ["id0"], "0,1": ["f"], "1,1": ["id1"]},
//!  "compose": {}, "id": {"0": "id0", "1": "id1"}}
//! ```
//!
//! Shortcut on input: `{"standard": "ordinal", "params": [2]}` (also `point`,
//! `discrete`, `indiscrete`, `parallel`).
//!
//! Functor: `{"source", "target", "objects": {a: b}, "arrows": {f: g}}`; identities
//! may be omitted. Diagram: `{"shape", "values": {j: <category>}, "actions": {α: {"objects", "arrows"}}}`
//! with one action per non-identity arrow of the shape.
//!
//! Serializing then parsing gives back the same structure, and parsing then
//! serializing a canonical document gives back the same document.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{Arrow, Cat, FinCategory, Functor};
use crate::grothendieck::Diagram;
use crate::marked::{Marked, MarkedMap, MarkedSimplicialSet};
use crate::simplicial::{build_standard, nerve_truncated, Cell, DegenerateRef, FinSimplicialSet, SimplicialMap};
use crate::{Error, Result};

fn parse_err(m: impl Into<String>) -> Error {
    Error::Parse(m.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefJson {
    pub base: String,
    #[serde(default)]
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialJson {
    pub cells: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<RefJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum SimplicialInput {
    Standard { standard: String, #[serde(default)] params: Vec<i64> },
    Nerve { nerve: CategoryInput, level: usize },
    Cells(SimplicialJson),
}

pub fn simplicial_to_json(x: &FinSimplicialSet) -> SimplicialJson {
    let mut cells = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for n in 0..=x.top() {
        if x.dims() < 0 {
            break;
        }
        cells.insert(n.to_string(), x.cells(n).map(|c| x.name(c).to_string()).collect());
        if n > 0 {
            for c in x.cells(n) {
                faces.insert(x.name(c).to_string(), x.faces_of(c).iter().map(|r| ref_to_json(x, r)).collect());
            }
        }
    }
    SimplicialJson { cells, faces, marked: None }
}

fn ref_to_json(x: &FinSimplicialSet, r: &DegenerateRef) -> RefJson {
    RefJson { base: x.name(r.base).to_string(), word: r.word.clone() }
}

fn cell_index(x: &FinSimplicialSet) -> HashMap<String, Cell> {
    x.all_cells().map(|c| (x.name(c).to_string(), c)).collect()
}

fn ref_from_json(index: &HashMap<String, Cell>, r: &RefJson) -> Result<DegenerateRef> {
    let base = *index.get(&r.base).ok_or_else(|| parse_err(format!("unknown cell {}", r.base)))?;
    Ok(DegenerateRef { base, word: r.word.clone() })
}

pub fn simplicial_from_json(j: &SimplicialJson) -> Result<FinSimplicialSet> {
    let mut dims: Vec<usize> = Vec::new();
    for k in j.cells.keys() {
        dims.push(k.parse().map_err(|_| parse_err(format!("dimension key {k:?}")))?);
    }
    let top = dims.iter().copied().max().map_or(0, |t| t + 1);
    let mut names = vec![Vec::new(); top];
    let mut index: HashMap<String, Cell> = HashMap::new();
    for (k, level) in &j.cells {
        let n: usize = k.parse().expect("checked");
        for name in level {
            let c = Cell::new(n, names[n].len());
            if index.insert(name.clone(), c).is_some() {
                return Err(parse_err(format!("duplicate cell name {name}")));
            }
            names[n].push(name.clone());
        }
    }
    for k in j.faces.keys() {
        if !index.contains_key(k) {
            return Err(parse_err(format!("faces given for unknown cell {k}")));
        }
    }
    let mut faces = vec![Vec::new(); top];
    for (n, level) in names.iter().enumerate() {
        for name in level {
            let fs = if n == 0 {
                Vec::new()
            } else {
                let given = j.faces.get(name).ok_or_else(|| parse_err(format!("no faces for {name}")))?;
                given.iter().map(|r| ref_from_json(&index, r)).collect::<Result<Vec<_>>>()?
            };
            faces[n].push(fs);
        }
    }
    FinSimplicialSet::new(names, faces)
}

pub fn parse_simplicial(text: &str) -> Result<FinSimplicialSet> {
    let input: SimplicialInput = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    simplicial_from_input(input)
}

fn simplicial_from_input(input: SimplicialInput) -> Result<FinSimplicialSet> {
    match input {
        SimplicialInput::Standard { standard, params } => build_standard(&standard, &params),
        SimplicialInput::Nerve { nerve, level } => {
            let c = category_from_input(nerve)?;
            Ok((*nerve_truncated(&Arc::new(c), level).set).clone())
        }
        SimplicialInput::Cells(j) => simplicial_from_json(&j),
    }
}

pub fn marked_to_json(m: &MarkedSimplicialSet) -> SimplicialJson {
    let x = &m.underlying;
    let mut j = simplicial_to_json(x);
    j.marked = Some(m.marked_nondegenerate().iter().map(|&e| x.name(Cell::new(1, e)).to_string()).collect());
    j
}

pub fn parse_marked(text: &str) -> Result<Marked> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    marked_from_value(v)
}

fn marked_from_value(mut v: serde_json::Value) -> Result<Marked> {
    let marked: Vec<String> = match v.get("marked") {
        Some(m) => serde_json::from_value(m.clone()).map_err(|e| parse_err(e.to_string()))?,
        None => Vec::new(),
    };
    if let Some(o) = v.as_object_mut() {
        o.remove("marked");
    }
    let input: SimplicialInput = serde_json::from_value(v).map_err(|e| parse_err(e.to_string()))?;
    let x = Arc::new(simplicial_from_input(input)?);
    let index = cell_index(&x);
    let mut edges = Vec::new();
    for name in &marked {
        match index.get(name) {
            Some(c) if c.dim == 1 => edges.push(c.index),
            _ => return Err(parse_err(format!("marked edge {name} is not a nondegenerate edge"))),
        }
    }
    Ok(Arc::new(MarkedSimplicialSet::with_edges(&x, edges)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub source: SimplicialJson,
    pub target: SimplicialJson,
    pub assignment: BTreeMap<String, RefJson>,
}

pub fn map_to_json(f: &SimplicialMap) -> MapJson {
    let mut assignment = BTreeMap::new();
    for c in f.source.all_cells() {
        assignment.insert(f.source.name(c).to_string(), ref_to_json(&f.target, f.at(c)));
    }
    MapJson { source: simplicial_to_json(&f.source), target: simplicial_to_json(&f.target), assignment }
}

pub fn map_from_json(j: &MapJson) -> Result<SimplicialMap> {
    let source = Arc::new(simplicial_from_json(&j.source)?);
    let target = Arc::new(simplicial_from_json(&j.target)?);
    let index = cell_index(&target);
    let mut assignment = Vec::new();
    for n in 0..=source.top() {
        if source.dims() < 0 {
            break;
        }
        let mut level = Vec::new();
        for c in source.cells(n) {
            let name = source.name(c);
            let r = j.assignment.get(name).ok_or_else(|| parse_err(format!("no image for {name}")))?;
            level.push(ref_from_json(&index, r)?);
        }
        assignment.push(level);
    }
    SimplicialMap::new(source, target, assignment)
}

#[derive(Clone, Debug, Deserialize)]
struct MarkedMapInput {
    source: serde_json::Value,
    target: serde_json::Value,
    assignment: BTreeMap<String, RefJson>,
}

/// A map of marked sets: source and target as marked sets (shortcuts allowed),
/// assignment on every nondegenerate cell of the source.
pub fn parse_marked_map(text: &str) -> Result<MarkedMap> {
    let input: MarkedMapInput = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let source = marked_from_value(input.source)?;
    let target = marked_from_value(input.target)?;
    let (x, y) = (source.underlying.clone(), target.underlying.clone());
    let index = cell_index(&y);
    let mut assignment = Vec::new();
    for n in 0..=x.top() {
        if x.dims() < 0 {
            break;
        }
        let mut level = Vec::new();
        for c in x.cells(n) {
            let name = x.name(c);
            let r = input.assignment.get(name).ok_or_else(|| parse_err(format!("no image for {name}")))?;
            level.push(ref_from_json(&index, r)?);
        }
        assignment.push(level);
    }
    let map = SimplicialMap::new(x, y, assignment)?;
    MarkedMap::new(source, target, map)
}

pub fn marked_map_to_json(f: &MarkedMap) -> MapJson {
    let mut j = map_to_json(&f.map);
    j.source = marked_to_json(&f.source);
    j.target = marked_to_json(&f.target);
    j
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub hom: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub compose: BTreeMap<String, String>,
    pub id: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CategoryInput {
    Standard { standard: String, #[serde(default)] params: Vec<usize> },
    Table(CategoryJson),
}

pub fn category_to_json(c: &FinCategory) -> CategoryJson {
    let mut hom = BTreeMap::new();
    for a in c.objects() {
        for b in c.objects() {
            let h = c.hom(a, b);
            if !h.is_empty() {
                let key = format!("{},{}", c.object_name(a), c.object_name(b));
                hom.insert(key, h.iter().map(|&f| c.arrow_name(f).to_string()).collect());
            }
        }
    }
    let mut compose = BTreeMap::new();
    for f in c.non_identity_arrows() {
        for &g in c.out(c.tgt(f)) {
            if !c.is_identity(g) {
                let key = format!("{},{}", c.arrow_name(g), c.arrow_name(f));
                compose.insert(key, c.arrow_name(c.compose(g, f)).to_string());
            }
        }
    }
    let id = c.objects().map(|a| (c.object_name(a).to_string(), c.arrow_name(c.id(a)).to_string())).collect();
    CategoryJson { objects: c.object_names().to_vec(), hom, compose, id }
}

/// Splits `"x,y"` where both sides are known names; names may contain commas.
fn split_pair<'a, T: Copy>(key: &'a str, known: &HashMap<String, T>) -> Result<(T, T)> {
    let hits: Vec<(T, T)> = key
        .match_indices(',')
        .filter_map(|(i, _)| Some((*known.get(&key[..i])?, *known.get(&key[i + 1..])?)))
        .collect();
    match hits.as_slice() {
        [one] => Ok(*one),
        [] => Err(parse_err(format!("key {key:?} is not a pair of known names"))),
        _ => Err(parse_err(format!("key {key:?} is ambiguous"))),
    }
}

pub fn category_from_json(j: &CategoryJson) -> Result<FinCategory> {
    let mut objects: HashMap<String, usize> = HashMap::new();
    for (i, o) in j.objects.iter().enumerate() {
        if objects.insert(o.clone(), i).is_some() {
            return Err(parse_err(format!("duplicate object {o}")));
        }
    }
    let mut arrows = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (key, names) in &j.hom {
        let (a, b) = split_pair(key, &objects)?;
        for n in names {
            if index.insert(n.clone(), arrows.len()).is_some() {
                return Err(parse_err(format!("duplicate arrow {n}")));
            }
            arrows.push(Arrow { name: n.clone(), src: a, tgt: b });
        }
    }
    let mut ids = vec![usize::MAX; j.objects.len()];
    for (o, f) in &j.id {
        let a = *objects.get(o).ok_or_else(|| parse_err(format!("identity for unknown object {o}")))?;
        ids[a] = *index.get(f).ok_or_else(|| parse_err(format!("unknown identity arrow {f}")))?;
    }
    if ids.contains(&usize::MAX) {
        return Err(parse_err("every object needs an identity"));
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (key, h) in &j.compose {
        let (g, f) = split_pair(key, &index)?;
        let h = *index.get(h).ok_or_else(|| parse_err(format!("unknown composite {h}")))?;
        table.insert((g, f), h);
    }
    let is_id: Vec<bool> = (0..arrows.len()).map(|f| ids.contains(&f) && ids[arrows[f].src] == f).collect();
    let c = FinCategory::from_fn(j.objects.clone(), arrows, ids, |g, f| {
        if is_id[g] {
            Some(f)
        } else if is_id[f] {
            Some(g)
        } else {
            table.get(&(g, f)).copied()
        }
    });
    c.check()?;
    Ok(c)
}

pub fn category_from_input(input: CategoryInput) -> Result<FinCategory> {
    match input {
        CategoryInput::Table(j) => category_from_json(&j),
        CategoryInput::Standard { standard, params } => {
            let n = |i: usize| params.get(i).copied().ok_or_else(|| parse_err(format!("{standard} needs a parameter")));
            Ok(match standard.as_str() {
                "point" => FinCategory::point(),
                "ordinal" => FinCategory::ordinal(n(0)?),
                "discrete" => FinCategory::discrete(n(0)?),
                "indiscrete" => FinCategory::indiscrete(n(0)?),
                "parallel" => FinCategory::parallel(n(0)?),
                other => return Err(parse_err(format!("unknown standard category {other}"))),
            })
        }
    }
}

pub fn parse_category(text: &str) -> Result<FinCategory> {
    let input: CategoryInput = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    category_from_input(input)
}

/// Object and arrow assignments between named categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub source: CategoryJson,
    pub target: CategoryJson,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
struct FunctorInput {
    source: CategoryInput,
    target: CategoryInput,
    objects: BTreeMap<String, String>,
    #[serde(default)]
    arrows: BTreeMap<String, String>,
}

pub fn assignment_to_json(f: &Functor) -> AssignmentJson {
    let (s, t) = (&f.source, &f.target);
    AssignmentJson {
        objects: s.objects().map(|o| (s.object_name(o).to_string(), t.object_name(f.ob(o)).to_string())).collect(),
        arrows: s.non_identity_arrows().map(|a| (s.arrow_name(a).to_string(), t.arrow_name(f.ar(a)).to_string())).collect(),
    }
}

fn assignment_from_json(source: Cat, target: Cat, j: &AssignmentJson) -> Result<Functor> {
    let tobj: HashMap<&str, usize> = target.objects().map(|o| (target.object_name(o), o)).collect();
    let tarr: HashMap<&str, usize> = target.arrows().map(|a| (target.arrow_name(a), a)).collect();
    let mut objects = Vec::new();
    for o in source.objects() {
        let name = source.object_name(o);
        let img = j.objects.get(name).ok_or_else(|| parse_err(format!("no image for object {name}")))?;
        objects.push(*tobj.get(img.as_str()).ok_or_else(|| parse_err(format!("unknown object {img}")))?);
    }
    for k in j.objects.keys() {
        if source.find_object(k).is_none() {
            return Err(parse_err(format!("unknown source object {k}")));
        }
    }
    for k in j.arrows.keys() {
        if source.find_arrow(k).is_none() {
            return Err(parse_err(format!("unknown source arrow {k}")));
        }
    }
    let mut arrows = Vec::new();
    for a in source.arrows() {
        let name = source.arrow_name(a);
        let img = match j.arrows.get(name) {
            Some(img) => *tarr.get(img.as_str()).ok_or_else(|| parse_err(format!("unknown arrow {img}")))?,
            None if source.is_identity(a) => target.id(objects[source.src(a)]),
            None => return Err(parse_err(format!("no image for arrow {name}"))),
        };
        arrows.push(img);
    }
    Functor::new(source, target, objects, arrows)
}

pub fn functor_to_json(f: &Functor) -> FunctorJson {
    let a = assignment_to_json(f);
    FunctorJson { source: category_to_json(&f.source), target: category_to_json(&f.target), objects: a.objects, arrows: a.arrows }
}

pub fn functor_from_json(j: &FunctorJson) -> Result<Functor> {
    let source = Arc::new(category_from_json(&j.source)?);
    let target = Arc::new(category_from_json(&j.target)?);
    assignment_from_json(source, target, &AssignmentJson { objects: j.objects.clone(), arrows: j.arrows.clone() })
}

pub fn parse_functor(text: &str) -> Result<Functor> {
    let input: FunctorInput = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let source = Arc::new(category_from_input(input.source)?);
    let target = Arc::new(category_from_input(input.target)?);
    assignment_from_json(source, target, &AssignmentJson { objects: input.objects, arrows: input.arrows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub shape: CategoryJson,
    pub values: BTreeMap<String, CategoryJson>,
    pub actions: BTreeMap<String, AssignmentJson>,
}

#[derive(Clone, Debug, Deserialize)]
struct DiagramInput {
    shape: CategoryInput,
    values: BTreeMap<String, CategoryInput>,
    #[serde(default)]
    actions: BTreeMap<String, AssignmentJson>,
}

pub fn diagram_to_json(d: &Diagram) -> DiagramJson {
    let j = &d.shape;
    DiagramJson {
        shape: category_to_json(j),
        values: j.objects().map(|o| (j.object_name(o).to_string(), category_to_json(&d.values[o]))).collect(),
        actions: j
            .non_identity_arrows()
            .map(|a| (j.arrow_name(a).to_string(), assignment_to_json(&d.actions[a])))
            .collect(),
    }
}

fn diagram_from_parts(
    shape: FinCategory,
    mut values: BTreeMap<String, FinCategory>,
    actions: &BTreeMap<String, AssignmentJson>,
) -> Result<Diagram> {
    let shape = Arc::new(shape);
    let mut vals = Vec::new();
    for o in shape.objects() {
        let name = shape.object_name(o);
        vals.push(Arc::new(values.remove(name).ok_or_else(|| parse_err(format!("no value at {name}")))?));
    }
    if let Some(k) = values.keys().next() {
        return Err(parse_err(format!("value given for unknown object {k}")));
    }
    for k in actions.keys() {
        if shape.find_arrow(k).map_or(true, |a| shape.is_identity(a)) {
            return Err(parse_err(format!("action given for {k}, not a non-identity arrow")));
        }
    }
    let mut acts = Vec::new();
    for a in shape.arrows() {
        let (s, t) = (shape.src(a), shape.tgt(a));
        if shape.is_identity(a) {
            acts.push(Functor::identity(vals[s].clone()));
            continue;
        }
        let name = shape.arrow_name(a);
        let j = actions.get(name).ok_or_else(|| parse_err(format!("no action for {name}")))?;
        acts.push(assignment_from_json(vals[s].clone(), vals[t].clone(), j)?);
    }
    Diagram::new(shape, vals, acts)
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<Diagram> {
    let values = j.values.iter().map(|(k, v)| Ok((k.clone(), category_from_json(v)?))).collect::<Result<_>>()?;
    diagram_from_parts(category_from_json(&j.shape)?, values, &j.actions)
}

pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let input: DiagramInput = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let values = input
        .values
        .into_iter()
        .map(|(k, v)| Ok((k, category_from_input(v)?)))
        .collect::<Result<_>>()?;
    diagram_from_parts(category_from_input(input.shape)?, values, &input.actions)
}

pub fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
