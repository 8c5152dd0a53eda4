//! Finite simplicial sets presented by nondegenerate simplices and their faces.
//!
//! Every simplex is kept in Eilenberg-Zilber normal form: a nondegenerate base cell
//! together with a strictly decreasing word of degeneracy indices. Degenerate
//! simplices are never stored.

mod nerve;
pub mod ordinal;
mod ops;
mod search;
mod shapes;
mod table;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use nerve::{nerve_map, nerve_truncated, Nerve};
pub use ops::{
    coproduct, product, pullback, pushout, subcomplex, Coproduct, Product, Pushout, Side,
};
pub use search::{enumerate_maps, MapSearch, SearchOutcome};
pub use shapes::{build_standard, simplex_map, vertex_cell, Shape};
pub use table::SimplexTable;
pub(crate) use shapes::{from_vertex_sets as shapes_from_vertex_sets, parse_vertices as parse_vertex_name};

/// A nondegenerate cell: dimension and index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub dim: usize,
    pub index: usize,
}

impl Cell {
    pub fn new(dim: usize, index: usize) -> Self {
        Cell { dim, index }
    }
}

/// A simplex `s_{j1} ... s_{jt} base` with `j1 > ... > jt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegenerateRef {
    pub base: Cell,
    pub word: Vec<usize>,
}

impl DegenerateRef {
    pub fn nondeg(base: Cell) -> Self {
        DegenerateRef { base, word: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// The surjection `[dim] -> [base.dim]` encoded by the word.
    pub fn surjection(&self) -> Vec<usize> {
        ordinal::surjection_from_word(self.dim(), &self.word)
    }

    /// `self · rho` for a monotone surjection `rho: [m] -> [dim]`.
    pub fn degenerate_by(&self, rho: &[usize]) -> DegenerateRef {
        let tau = self.surjection();
        let comp = ordinal::compose(&tau, rho);
        DegenerateRef { base: self.base, word: ordinal::word_from_surjection(&comp) }
    }

    /// `s_j self`.
    pub fn degeneracy(&self, j: usize) -> DegenerateRef {
        self.degenerate_by(&ordinal::codegeneracy(self.dim(), j))
    }

    fn word_is_valid(&self) -> bool {
        self.word.windows(2).all(|w| w[0] > w[1]) && self.word.iter().all(|&j| j < self.dim())
    }
}

impl fmt::Display for DegenerateRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.word {
            write!(f, "s{j}")?;
        }
        write!(f, "<{}:{}>", self.base.dim, self.base.index)
    }
}

/// A finite simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinSimplicialSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<DegenerateRef>>>,
}

impl FinSimplicialSet {
    pub fn empty() -> Self {
        FinSimplicialSet::default()
    }

    /// Builds from names and faces per dimension, checking every invariant.
    pub fn new(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<DegenerateRef>>>) -> Result<Self> {
        let x = Self::from_parts_unchecked(names, faces);
        x.check()?;
        Ok(x)
    }

    pub(crate) fn from_parts_unchecked(
        mut names: Vec<Vec<String>>,
        mut faces: Vec<Vec<Vec<DegenerateRef>>>,
    ) -> Self {
        while names.last().is_some_and(|l| l.is_empty()) {
            names.pop();
        }
        faces.truncate(names.len());
        while faces.len() < names.len() {
            faces.push(Vec::new());
        }
        FinSimplicialSet { names, faces }
    }

    /// Maximal dimension of a nondegenerate cell, `-1` when empty.
    pub fn dims(&self) -> isize {
        self.names.len() as isize - 1
    }

    /// Top dimension as an index; `0` for the empty set.
    pub fn top(&self) -> usize {
        self.names.len().saturating_sub(1)
    }

    pub fn count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |l| l.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(|l| l.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|l| l.len()).sum()
    }

    pub fn cells(&self, n: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.count(n)).map(move |i| Cell::new(n, i))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.names.len()).flat_map(move |n| self.cells(n))
    }

    pub fn name(&self, c: Cell) -> &str {
        &self.names[c.dim][c.index]
    }

    pub fn names(&self) -> &[Vec<String>] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<Cell> {
        self.all_cells().find(|&c| self.name(c) == name)
    }

    pub fn ref_name(&self, x: &DegenerateRef) -> String {
        let mut s = String::new();
        for j in &x.word {
            s.push_str(&format!("s{j}"));
        }
        if s.is_empty() {
            self.name(x.base).to_string()
        } else {
            format!("{s}({})", self.name(x.base))
        }
    }

    /// The stored `i`-th face of a nondegenerate cell.
    pub fn face(&self, c: Cell, i: usize) -> &DegenerateRef {
        &self.faces[c.dim][c.index][i]
    }

    pub fn faces_of(&self, c: Cell) -> &[DegenerateRef] {
        &self.faces[c.dim][c.index]
    }

    /// The simplicial operator `x · θ` for a monotone `θ: [m] -> [dim x]`.
    pub fn apply(&self, x: &DegenerateRef, theta: &[usize]) -> DegenerateRef {
        let tau = x.surjection();
        let mu = ordinal::compose(&tau, theta);
        let (rho, image) = ordinal::epi_mono(&mu);
        let y = self.restrict_injective(x.base, &image);
        y.degenerate_by(&rho)
    }

    fn restrict_injective(&self, base: Cell, image: &[usize]) -> DegenerateRef {
        let k = base.dim;
        if image.len() == k + 1 {
            return DegenerateRef::nondeg(base);
        }
        let i = (0..=k).rev().find(|v| !image.contains(v)).expect("omitted vertex");
        let z = &self.faces[k][base.index][i];
        let rest: Vec<usize> = image.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
        self.apply(z, &rest)
    }

    pub fn face_of(&self, x: &DegenerateRef, i: usize) -> DegenerateRef {
        self.apply(x, &ordinal::coface(x.dim(), i))
    }

    /// Vertex `k` of a simplex.
    pub fn vertex(&self, x: &DegenerateRef, k: usize) -> Cell {
        self.apply(x, &[k]).base
    }

    pub fn vertices(&self, x: &DegenerateRef) -> Vec<Cell> {
        (0..=x.dim()).map(|k| self.vertex(x, k)).collect()
    }

    pub fn first_vertex(&self, x: &DegenerateRef) -> Cell {
        self.vertex(x, 0)
    }

    pub fn last_vertex(&self, x: &DegenerateRef) -> Cell {
        self.vertex(x, x.dim())
    }

    /// All references that name a valid simplex of dimension `n` with base in `self`.
    pub fn is_valid_ref(&self, x: &DegenerateRef) -> bool {
        x.base.dim < self.names.len() && x.base.index < self.count(x.base.dim) && x.word_is_valid()
    }

    /// Checks reference validity and the simplicial identities on every cell.
    pub fn check(&self) -> Result<()> {
        for n in 0..self.names.len() {
            if self.faces[n].len() != self.names[n].len() {
                return Err(Error::Invariant(format!("dimension {n}: face list length mismatch")));
            }
            for (idx, fs) in self.faces[n].iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if fs.len() != expected {
                    return Err(Error::Invariant(format!(
                        "cell {} has {} faces, expected {expected}",
                        self.names[n][idx],
                        fs.len()
                    )));
                }
                for f in fs {
                    if !self.is_valid_ref(f) || f.dim() + 1 != n {
                        return Err(Error::Invariant(format!(
                            "cell {}: face {f} does not resolve to an {}-simplex",
                            self.names[n][idx],
                            n - 1
                        )));
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        for c in self.all_cells() {
            if !seen.insert(self.name(c)) {
                return Err(Error::Invariant(format!("duplicate cell name {}", self.name(c))));
            }
        }
        for c in self.all_cells() {
            let n = c.dim;
            if n < 2 {
                continue;
            }
            let x = DegenerateRef::nondeg(c);
            for j in 1..=n {
                for i in 0..j {
                    let a = self.face_of(&self.face_of(&x, j), i);
                    let b = self.face_of(&self.face_of(&x, i), j - 1);
                    if a != b {
                        return Err(Error::Invariant(format!(
                            "simplicial identity d{i} d{j} = d{} d{i} fails on {}",
                            j - 1,
                            self.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map of finite simplicial sets, given on nondegenerate cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: Arc<FinSimplicialSet>,
    pub target: Arc<FinSimplicialSet>,
    pub assignment: Vec<Vec<DegenerateRef>>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<FinSimplicialSet>,
        target: Arc<FinSimplicialSet>,
        assignment: Vec<Vec<DegenerateRef>>,
    ) -> Result<Self> {
        let m = SimplicialMap { source, target, assignment };
        m.check()?;
        Ok(m)
    }

    pub fn identity(x: Arc<FinSimplicialSet>) -> Self {
        let assignment = (0..x.names.len())
            .map(|n| x.cells(n).map(DegenerateRef::nondeg).collect())
            .collect();
        SimplicialMap { source: x.clone(), target: x, assignment }
    }

    pub fn from_empty(target: Arc<FinSimplicialSet>) -> Self {
        SimplicialMap { source: Arc::new(FinSimplicialSet::empty()), target, assignment: Vec::new() }
    }

    pub fn at(&self, c: Cell) -> &DegenerateRef {
        &self.assignment[c.dim][c.index]
    }

    pub fn image(&self, x: &DegenerateRef) -> DegenerateRef {
        let y = self.at(x.base);
        if x.word.is_empty() {
            y.clone()
        } else {
            y.degenerate_by(&x.surjection())
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        let assignment = self
            .assignment
            .iter()
            .map(|l| l.iter().map(|y| other.image(y)).collect())
            .collect();
        SimplicialMap { source: self.source.clone(), target: other.target.clone(), assignment }
    }

    pub fn check(&self) -> Result<()> {
        if self.assignment.len() != self.source.names.len()
            || (0..self.assignment.len()).any(|n| self.assignment[n].len() != self.source.count(n))
        {
            return Err(Error::Invariant("assignment does not cover the source".into()));
        }
        for c in self.source.all_cells() {
            let y = self.at(c);
            if !self.target.is_valid_ref(y) || y.dim() != c.dim {
                return Err(Error::Invariant(format!(
                    "image of {} is not a {}-simplex of the target",
                    self.source.name(c),
                    c.dim
                )));
            }
            for i in 0..if c.dim == 0 { 0 } else { c.dim + 1 } {
                let lhs = self.image(self.source.face(c, i));
                let rhs = self.target.face_of(y, i);
                if lhs != rhs {
                    return Err(Error::Invariant(format!(
                        "map does not commute with d{i} on {}",
                        self.source.name(c)
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when distinct simplices have distinct images.
    pub fn is_injective(&self) -> bool {
        let top = self.source.top();
        let t = SimplexTable::new(&self.source, top);
        (0..=top).all(|n| {
            let mut seen = BTreeSet::new();
            t.level(n).iter().all(|x| seen.insert(self.image(x)))
        })
    }

    /// True when the map is a bijection on simplices of every dimension.
    pub fn is_isomorphism(&self) -> bool {
        self.source.counts() == self.target.counts()
            && self.is_injective()
            && self.source.all_cells().all(|c| !self.at(c).is_degenerate())
    }
}

#[cfg(test)]
mod tests;
