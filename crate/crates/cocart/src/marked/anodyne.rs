use std::sync::Arc;

use super::{marked_product, marked_pushout, MarkedMap, MarkedSimplicialSet};
use crate::simplicial::{product, simplex_map, FinSimplicialSet, Shape, SimplicialMap};

/// The six generator families of marked left (or right) anodyne maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `(I² × K)^♭ -> (Δ² × K)^♭`
    InnerHorn,
    /// `(E¹ × K)^♭ -> K^♭`
    Equivalence,
    /// `(Δ¹ × A)^♯ ⊔_{(Δ¹ × A)^♭} (Δ¹ × A)^♯ -> (Δ¹ × A)^♯`
    DoubleMarking,
    /// `♮(Λ²₀)^♭ × A -> ♮(Δ²)^♭ × A`, or the `Λ²₂` version
    MarkedHorn,
    /// `d¹: A^♯ -> (Δ¹ × A)^♯`, or `d⁰`
    MarkedEdge,
    /// `(I² × A)^♯ -> (Δ² × A)^♯`
    SharpInnerHorn,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::InnerHorn,
        Family::Equivalence,
        Family::DoubleMarking,
        Family::MarkedHorn,
        Family::MarkedEdge,
        Family::SharpInnerHorn,
    ];

    pub fn number(self) -> usize {
        Family::ALL.iter().position(|&f| f == self).expect("family") + 1
    }

    /// Families (3)-(6) only take discrete probes.
    pub fn takes_any_probe(self) -> bool {
        matches!(self, Family::InnerHorn | Family::Equivalence)
    }
}

/// A probe object `K` (or `A` when discrete).
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub set: Arc<FinSimplicialSet>,
}

impl Probe {
    pub fn new(name: &str, set: FinSimplicialSet) -> Self {
        Probe { name: name.to_string(), set: Arc::new(set) }
    }

    pub fn simplex(n: usize) -> Self {
        Probe::new(&format!("Δ{n}"), Shape::Simplex(n).build().expect("simplex"))
    }

    pub fn is_discrete(&self) -> bool {
        self.set.dims() <= 0
    }
}

/// One instantiated generator.
#[derive(Clone, Debug)]
pub struct Generator {
    pub family: Family,
    pub probe: String,
    pub map: MarkedMap,
}

impl Generator {
    pub fn label(&self) -> String {
        format!("({}) {:?} at {}", self.family.number(), self.family, self.probe)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Left,
    Right,
}

fn std_shape(s: Shape) -> Arc<FinSimplicialSet> {
    Arc::new(s.build().expect("standard shape"))
}

/// `f × id_K`.
fn times(f: &SimplicialMap, k: &Arc<FinSimplicialSet>) -> SimplicialMap {
    let a = product(&f.source, k);
    let b = product(&f.target, k);
    a.map(f, &SimplicialMap::identity(k.clone()), &b)
}

fn marked_edge_set(x: &Arc<FinSimplicialSet>, vs: &[usize]) -> MarkedSimplicialSet {
    let e = crate::simplicial::vertex_cell(x, vs).expect("edge");
    MarkedSimplicialSet::with_edges(x, [e.index]).expect("edge index")
}

/// One map per (family, probe) pair; families (3)-(6) skip probes that are not discrete.
pub fn anodyne_generators(side: Variance, probes: &[Probe]) -> Vec<Generator> {
    let mut out = Vec::new();
    let d0 = std_shape(Shape::Simplex(0));
    let d1 = std_shape(Shape::Simplex(1));
    let d2 = std_shape(Shape::Simplex(2));
    let i2 = std_shape(Shape::Spine(2));
    let e1 = std_shape(Shape::WalkingEquivalence);
    let spine = simplex_map(&i2, &d2, &[0, 1, 2]).expect("spine inclusion");
    let (horn, marked_vs) = match side {
        Variance::Left => (Shape::Horn(2, 0), [0, 1]),
        Variance::Right => (Shape::Horn(2, 2), [1, 2]),
    };
    let horn = std_shape(horn);
    let horn_inc = simplex_map(&horn, &d2, &[0, 1, 2]).expect("horn inclusion");
    let end = match side {
        Variance::Left => 0,
        Variance::Right => 1,
    };
    let point = simplex_map(&d0, &d1, &[end]).expect("endpoint");
    for family in Family::ALL {
        for probe in probes {
            if !family.takes_any_probe() && !probe.is_discrete() {
                continue;
            }
            let k = &probe.set;
            let map = match family {
                Family::InnerHorn => MarkedMap::flat(&times(&spine, k)),
                Family::Equivalence => {
                    let p = product(&e1, k);
                    MarkedMap::flat(&p.second)
                }
                Family::DoubleMarking => {
                    let p = product(&d1, k);
                    let f = MarkedMap::flat_to_sharp(&p.object);
                    let po = marked_pushout(&f, &f);
                    let id = MarkedMap::identity(f.target.clone());
                    po.induced(&id, &id)
                }
                Family::MarkedHorn => {
                    let a = Arc::new(MarkedSimplicialSet::flat(k));
                    let src = Arc::new(marked_edge_set(&horn, &marked_vs));
                    let tgt = Arc::new(marked_edge_set(&d2, &marked_vs));
                    let inc = MarkedMap { source: src.clone(), target: tgt.clone(), map: horn_inc.clone() };
                    let ps = marked_product(&src, &a);
                    let pt = marked_product(&tgt, &a);
                    ps.map(&inc, &MarkedMap::identity(a.clone()), &pt)
                }
                Family::MarkedEdge => {
                    let f = times(&point, k);
                    let pa = product(&d0, k);
                    // A ≅ Δ⁰ × A
                    let iso = pa.induced(&to_point(k, &d0), &SimplicialMap::identity(k.clone())).expect("pair");
                    MarkedMap::sharp(&iso.then(&f))
                }
                Family::SharpInnerHorn => MarkedMap::sharp(&times(&spine, k)),
            };
            out.push(Generator { family, probe: probe.name.clone(), map });
        }
    }
    out
}

fn to_point(k: &Arc<FinSimplicialSet>, d0: &Arc<FinSimplicialSet>) -> SimplicialMap {
    let tgt = crate::simplicial::enumerate_maps(k, d0);
    tgt.into_iter().next().expect("a map to the point")
}
