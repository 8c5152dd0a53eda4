//! Marked simplicial sets, the marked simplex category and anodyne generators.

mod anodyne;
mod delta_plus;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use anodyne::{anodyne_generators, Family, Generator, Probe, Variance};
pub use delta_plus::{delta_plus_hom, delta_plus_hom_with, DeltaPlusArrow, DpObject, DEFAULT_DEGREE_BOUND};

use crate::simplicial::{
    product, pushout, Cell, DegenerateRef, FinSimplicialSet, SimplicialMap,
};
use crate::{Error, Result};

/// A simplicial set with a set of marked edges. Degenerate edges are always
/// marked; only nondegenerate marked edges are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSimplicialSet {
    pub underlying: Arc<FinSimplicialSet>,
    marked: BTreeSet<usize>,
}

pub type Marked = Arc<MarkedSimplicialSet>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Marking {
    Flat,
    Sharp,
    /// Every marked edge, degenerate ones included.
    Custom(Vec<DegenerateRef>),
}

/// Marks `x`; a custom set must list every degenerate edge.
pub fn mark(x: &Arc<FinSimplicialSet>, mode: Marking) -> Result<MarkedSimplicialSet> {
    let marked = match mode {
        Marking::Flat => BTreeSet::new(),
        Marking::Sharp => (0..x.count(1)).collect(),
        Marking::Custom(edges) => {
            let mut set = BTreeSet::new();
            let mut degenerate = BTreeSet::new();
            for e in &edges {
                if !x.is_valid_ref(e) || e.dim() != 1 {
                    return Err(Error::InvalidMarking(format!("{e} is not an edge")));
                }
                if e.is_degenerate() {
                    degenerate.insert(e.base.index);
                } else {
                    set.insert(e.base.index);
                }
            }
            if let Some(v) = x.cells(0).find(|v| !degenerate.contains(&v.index)) {
                return Err(Error::InvalidMarking(format!(
                    "degenerate edge at {} is not marked",
                    x.name(v)
                )));
            }
            set
        }
    };
    Ok(MarkedSimplicialSet { underlying: x.clone(), marked })
}

impl MarkedSimplicialSet {
    pub fn flat(x: &Arc<FinSimplicialSet>) -> Self {
        MarkedSimplicialSet { underlying: x.clone(), marked: BTreeSet::new() }
    }

    pub fn sharp(x: &Arc<FinSimplicialSet>) -> Self {
        MarkedSimplicialSet { underlying: x.clone(), marked: (0..x.count(1)).collect() }
    }

    /// Marks the given nondegenerate edges (by index) on top of the degenerate ones.
    pub fn with_edges(x: &Arc<FinSimplicialSet>, edges: impl IntoIterator<Item = usize>) -> Result<Self> {
        let marked: BTreeSet<usize> = edges.into_iter().collect();
        if let Some(&e) = marked.iter().find(|&&e| e >= x.count(1)) {
            return Err(Error::InvalidMarking(format!("no edge with index {e}")));
        }
        Ok(MarkedSimplicialSet { underlying: x.clone(), marked })
    }

    pub fn is_marked(&self, e: &DegenerateRef) -> bool {
        e.dim() == 1 && (e.is_degenerate() || (e.base.dim == 1 && self.marked.contains(&e.base.index)))
    }

    /// Indices of marked nondegenerate edges.
    pub fn marked_nondegenerate(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    /// All marked edges: degenerate edges first, then nondegenerate ones.
    pub fn marked_edges(&self) -> Vec<DegenerateRef> {
        let x = &self.underlying;
        let mut v: Vec<DegenerateRef> = x.cells(0).map(|c| DegenerateRef { base: c, word: vec![0] }).collect();
        v.extend(self.marked.iter().map(|&i| DegenerateRef::nondeg(Cell::new(1, i))));
        v
    }

    pub fn is_flat(&self) -> bool {
        self.marked.is_empty()
    }

    pub fn is_sharp(&self) -> bool {
        self.marked.len() == self.underlying.count(1)
    }

    pub fn check(&self) -> Result<()> {
        self.underlying.check()?;
        match self.marked.iter().find(|&&e| e >= self.underlying.count(1)) {
            Some(e) => Err(Error::InvalidMarking(format!("no edge with index {e}"))),
            None => Ok(()),
        }
    }
}

/// A map of simplicial sets carrying marked edges to marked edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedMap {
    pub source: Marked,
    pub target: Marked,
    pub map: SimplicialMap,
}

impl MarkedMap {
    pub fn new(source: Marked, target: Marked, map: SimplicialMap) -> Result<Self> {
        let m = MarkedMap { source, target, map };
        m.check()?;
        Ok(m)
    }

    /// Both ends flat.
    pub fn flat(map: &SimplicialMap) -> Self {
        MarkedMap {
            source: Arc::new(MarkedSimplicialSet::flat(&map.source)),
            target: Arc::new(MarkedSimplicialSet::flat(&map.target)),
            map: map.clone(),
        }
    }

    /// Both ends sharp.
    pub fn sharp(map: &SimplicialMap) -> Self {
        MarkedMap {
            source: Arc::new(MarkedSimplicialSet::sharp(&map.source)),
            target: Arc::new(MarkedSimplicialSet::sharp(&map.target)),
            map: map.clone(),
        }
    }

    pub fn identity(x: Marked) -> Self {
        MarkedMap { map: SimplicialMap::identity(x.underlying.clone()), source: x.clone(), target: x }
    }

    /// `X^♭ -> X^♯`.
    pub fn flat_to_sharp(x: &Arc<FinSimplicialSet>) -> Self {
        MarkedMap {
            source: Arc::new(MarkedSimplicialSet::flat(x)),
            target: Arc::new(MarkedSimplicialSet::sharp(x)),
            map: SimplicialMap::identity(x.clone()),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MarkedMap) -> MarkedMap {
        MarkedMap { source: self.source.clone(), target: other.target.clone(), map: self.map.then(&other.map) }
    }

    pub fn check(&self) -> Result<()> {
        if self.map.source != self.source.underlying || self.map.target != self.target.underlying {
            return Err(Error::Invariant("marked map ends do not match the underlying map".into()));
        }
        self.map.check()?;
        for &e in self.source.marked_nondegenerate() {
            let img = self.map.at(Cell::new(1, e));
            if !self.target.is_marked(img) {
                return Err(Error::InvalidMarking(format!(
                    "marked edge {} goes to an unmarked edge",
                    self.source.underlying.name(Cell::new(1, e))
                )));
            }
        }
        Ok(())
    }
}

/// `X × Y` with an edge marked when both components are.
#[derive(Clone, Debug)]
pub struct MarkedProduct {
    pub object: Marked,
    pub first: MarkedMap,
    pub second: MarkedMap,
    pub product: crate::simplicial::Product,
}

pub fn marked_product(x: &Marked, y: &Marked) -> MarkedProduct {
    let p = product(&x.underlying, &y.underlying);
    let marked = p
        .object
        .cells(1)
        .filter(|&e| x.is_marked(p.first.at(e)) && y.is_marked(p.second.at(e)))
        .map(|e| e.index)
        .collect();
    let object = Arc::new(MarkedSimplicialSet { underlying: p.object.clone(), marked });
    MarkedProduct {
        first: MarkedMap { source: object.clone(), target: x.clone(), map: p.first.clone() },
        second: MarkedMap { source: object.clone(), target: y.clone(), map: p.second.clone() },
        object,
        product: p,
    }
}

impl MarkedProduct {
    /// `f × g` into another marked product.
    pub fn map(&self, f: &MarkedMap, g: &MarkedMap, target: &MarkedProduct) -> MarkedMap {
        MarkedMap {
            source: self.object.clone(),
            target: target.object.clone(),
            map: self.product.map(&f.map, &g.map, &target.product),
        }
    }
}

/// Pushout with an edge marked when it is the image of a marked edge.
#[derive(Clone, Debug)]
pub struct MarkedPushout {
    pub object: Marked,
    pub left: MarkedMap,
    pub right: MarkedMap,
    pub pushout: crate::simplicial::Pushout,
}

pub fn marked_pushout(f: &MarkedMap, g: &MarkedMap) -> MarkedPushout {
    let po = pushout(&f.map, &g.map);
    let mut marked = BTreeSet::new();
    for (side, x) in [(&po.left, &f.target), (&po.right, &g.target)] {
        for &e in x.marked_nondegenerate() {
            let img = side.at(Cell::new(1, e));
            if !img.is_degenerate() {
                marked.insert(img.base.index);
            }
        }
    }
    let object = Arc::new(MarkedSimplicialSet { underlying: po.object.clone(), marked });
    MarkedPushout {
        left: MarkedMap { source: f.target.clone(), target: object.clone(), map: po.left.clone() },
        right: MarkedMap { source: g.target.clone(), target: object.clone(), map: po.right.clone() },
        object,
        pushout: po,
    }
}

impl MarkedPushout {
    pub fn induced(&self, u: &MarkedMap, v: &MarkedMap) -> MarkedMap {
        MarkedMap { source: self.object.clone(), target: u.target.clone(), map: self.pushout.induced(&u.map, &v.map) }
    }
}

#[cfg(test)]
mod tests;
