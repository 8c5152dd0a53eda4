use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{coproduct, ordinal, pushout, Cell, DegenerateRef, FinSimplicialSet, SimplicialMap};
use crate::{Error, Result};

/// Standard shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Empty,
    /// `Δⁿ`
    Simplex(usize),
    /// `∂Δⁿ`
    Boundary(usize),
    /// `Λⁿ_k`
    Horn(usize, usize),
    /// `Iⁿ`, the spine `Δ¹ ∨ ... ∨ Δ¹`
    Spine(usize),
    /// `E¹`
    WalkingEquivalence,
}

impl Shape {
    pub fn build(self) -> Result<FinSimplicialSet> {
        match self {
            Shape::Empty => Ok(FinSimplicialSet::empty()),
            Shape::Simplex(n) => Ok(from_vertex_sets(all_subsets(n, |_| true))),
            Shape::Boundary(n) => Ok(from_vertex_sets(all_subsets(n, |s| s.len() <= n))),
            Shape::Horn(n, k) => {
                if k > n || n == 0 {
                    return Err(Error::InvalidParams(format!("horn({n}, {k})")));
                }
                Ok(from_vertex_sets(all_subsets(n, |s| {
                    s.len() < n || (s.len() == n && s.contains(&k))
                })))
            }
            Shape::Spine(n) => Ok(from_vertex_sets(all_subsets(n, |s| {
                s.len() == 1 || (s.len() == 2 && s[1] == s[0] + 1)
            }))),
            Shape::WalkingEquivalence => Ok(walking_equivalence()),
        }
    }
}

/// `kind` is one of `empty`, `simplex`, `boundary`, `horn`, `spine`, `walking_equivalence`.
pub fn build_standard(kind: &str, params: &[i64]) -> Result<FinSimplicialSet> {
    let bad = || Error::InvalidParams(format!("{kind} {params:?}"));
    let nat = |i: usize| -> Result<usize> {
        let v = *params.get(i).ok_or_else(bad)?;
        usize::try_from(v).map_err(|_| bad())
    };
    let shape = match kind {
        "empty" => Shape::Empty,
        "simplex" => Shape::Simplex(nat(0)?),
        "boundary" => Shape::Boundary(nat(0)?),
        "horn" => Shape::Horn(nat(0)?, nat(1)?),
        "spine" => Shape::Spine(nat(0)?),
        "walking_equivalence" | "E1" => Shape::WalkingEquivalence,
        _ => return Err(bad()),
    };
    shape.build()
}

fn all_subsets(n: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        let s: Vec<usize> = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
        if keep(&s) {
            out.push(s);
        }
    }
    out
}

pub(crate) fn vertex_name(vs: &[usize]) -> String {
    if vs.iter().all(|&v| v < 10) {
        vs.iter().map(|v| v.to_string()).collect()
    } else {
        vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// The subcomplex of a simplex spanned by a face-closed family of vertex sets.
pub(crate) fn from_vertex_sets(sets: Vec<Vec<usize>>) -> FinSimplicialSet {
    let mut by_dim: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for s in sets {
        by_dim.entry(s.len() - 1).or_default().insert(s);
    }
    let top = by_dim.keys().next_back().copied().map_or(0, |t| t + 1);
    let mut names = vec![Vec::new(); top];
    let mut faces = vec![Vec::new(); top];
    let mut index: BTreeMap<Vec<usize>, Cell> = BTreeMap::new();
    for (&n, sets) in &by_dim {
        for s in sets {
            let c = Cell::new(n, names[n].len());
            index.insert(s.clone(), c);
            names[n].push(vertex_name(s));
            let fs = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        DegenerateRef::nondeg(index[&t])
                    })
                    .collect()
            };
            faces[n].push(fs);
        }
    }
    FinSimplicialSet::from_parts_unchecked(names, faces)
}

/// The cell of a standard shape spanned by the given vertices.
pub fn vertex_cell(x: &FinSimplicialSet, vs: &[usize]) -> Option<Cell> {
    if vs.is_empty() {
        return None;
    }
    let name = vertex_name(vs);
    x.cells(vs.len() - 1).find(|&c| x.name(c) == name)
}

/// The map between standard shapes induced by a monotone vertex map.
pub fn simplex_map(
    source: &Arc<FinSimplicialSet>,
    target: &Arc<FinSimplicialSet>,
    vmap: &[usize],
) -> Result<SimplicialMap> {
    let mut assignment = Vec::new();
    for n in 0..=source.top() {
        let mut level = Vec::new();
        for c in source.cells(n) {
            let vs: Vec<usize> = parse_vertices(source.name(c));
            let img: Vec<usize> = vs.iter().map(|&v| vmap[v]).collect();
            if !ordinal::is_monotone(&img) {
                return Err(Error::InvalidParams(format!("vertex map {vmap:?} not monotone")));
            }
            let (rho, image) = ordinal::epi_mono(&img);
            let base = vertex_cell(target, &image).ok_or_else(|| {
                Error::InvalidParams(format!("simplex {image:?} missing from the target"))
            })?;
            level.push(DegenerateRef::nondeg(base).degenerate_by(&rho));
        }
        assignment.push(level);
    }
    if source.dims() < 0 {
        assignment.clear();
    }
    SimplicialMap::new(source.clone(), target.clone(), assignment)
}

pub(crate) fn parse_vertices(name: &str) -> Vec<usize> {
    if name.contains('.') {
        name.split('.').map(|s| s.parse().expect("vertex")).collect()
    } else {
        name.chars().map(|ch| ch.to_digit(10).expect("vertex") as usize).collect()
    }
}

/// `Δ³ ⊔_{Δ¹ ⊔ Δ¹} (Δ⁰ ⊔ Δ⁰)` collapsing the edges `02` and `13`.
fn walking_equivalence() -> FinSimplicialSet {
    let d0 = Arc::new(Shape::Simplex(0).build().expect("Δ⁰"));
    let d1 = Arc::new(Shape::Simplex(1).build().expect("Δ¹"));
    let d3 = Arc::new(Shape::Simplex(3).build().expect("Δ³"));
    let edges = coproduct(&d1, &d1);
    let points = coproduct(&d0, &d0);
    let e02 = simplex_map(&d1, &d3, &[0, 2]).expect("edge 02");
    let e13 = simplex_map(&d1, &d3, &[1, 3]).expect("edge 13");
    let collapse = simplex_map(&d1, &d0, &[0, 0]).expect("collapse");
    let f = edges.induced(&e02, &e13);
    let g = edges.induced(&collapse.then(&points.left), &collapse.then(&points.right));
    let po = pushout(&f, &g);
    (*po.object).clone()
}
