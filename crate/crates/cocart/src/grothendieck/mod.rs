//! Diagrams of categories and their Grothendieck constructions.
//!
//! `unstraighten` builds the total category of elements; `straighten` recovers a
//! strict diagram from a cocartesian fibration by transporting along chosen lifts,
//! falling back to categories of cocartesian sections when chosen lifts do not
//! compose strictly.

mod duality;
mod limits;

use std::collections::HashMap;
use std::sync::Arc;

use crate::fibration::{fiber, is_cocartesian_functor, left_fibration_part, power, Fibration};
use crate::fincat::{
    build_functor_category_with, comma, enumerate_functors_with, Arr, Arrow, Cat, FinCategory, Functor, Obj,
    DEFAULT_GUARD,
};
use crate::simplicial::nerve_truncated;
use crate::{Error, Result};

pub use duality::{adjoint_duality_check, DualityReport};
pub use limits::{colimit, limit, set_colimit, set_limit, ColimitMethod, ColimitReport, LimitReport, SetColimit};

/// A strict functor from `shape` to categories: one category per object and one
/// functor per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub shape: Cat,
    pub values: Vec<Cat>,
    pub actions: Vec<Functor>,
}

fn same(a: &Cat, b: &Cat) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Diagram {
    pub fn new(shape: Cat, values: Vec<Cat>, actions: Vec<Functor>) -> Result<Self> {
        let d = Diagram { shape, values, actions };
        d.check()?;
        Ok(d)
    }

    /// The constant diagram at `c`.
    pub fn constant(shape: Cat, c: Cat) -> Self {
        let values = vec![c.clone(); shape.num_objects()];
        let actions = shape.arrows().map(|_| Functor::identity(c.clone())).collect();
        Diagram { shape, values, actions }
    }

    /// `f: A -> B` as a diagram over `[1]`.
    pub fn arrow(f: &Functor) -> Self {
        let shape = Arc::new(FinCategory::ordinal(1));
        let values = vec![f.source.clone(), f.target.clone()];
        let actions = shape
            .arrows()
            .map(|a| match (shape.src(a), shape.tgt(a)) {
                (0, 0) => Functor::identity(f.source.clone()),
                (1, 1) => Functor::identity(f.target.clone()),
                _ => f.clone(),
            })
            .collect();
        Diagram { shape, values, actions }
    }

    pub fn is_discrete(&self) -> bool {
        self.values.iter().all(|v| v.is_discrete())
    }

    /// Strict functoriality, with exact equality of tables.
    pub fn check(&self) -> Result<()> {
        let j = &self.shape;
        if self.values.len() != j.num_objects() || self.actions.len() != j.num_arrows() {
            return Err(Error::InvalidParams("diagram needs one value per object and one action per arrow".into()));
        }
        for v in &self.values {
            v.check()?;
        }
        for a in j.arrows() {
            let f = &self.actions[a];
            if !same(&f.source, &self.values[j.src(a)]) || !same(&f.target, &self.values[j.tgt(a)]) {
                return Err(Error::InvalidParams(format!("action of {} has the wrong ends", j.arrow_name(a))));
            }
            f.check()?;
        }
        for o in j.objects() {
            let f = &self.actions[j.id(o)];
            let v = &self.values[o];
            if f.objects.iter().enumerate().any(|(i, &x)| i != x) || f.arrows.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(Error::Invariant(format!("action of {} is not the identity", j.arrow_name(j.id(o)))));
            }
            debug_assert_eq!(f.arrows.len(), v.num_arrows());
        }
        for a in j.arrows() {
            for &b in j.out(j.tgt(a)) {
                let lhs = self.actions[a].then(&self.actions[b]);
                let rhs = &self.actions[j.compose(b, a)];
                if lhs.objects != rhs.objects || lhs.arrows != rhs.arrows {
                    return Err(Error::Invariant(format!(
                        "action of {} ∘ {} differs from the composite",
                        j.arrow_name(b),
                        j.arrow_name(a)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The category of elements of a diagram with its projection.
#[derive(Clone, Debug)]
pub struct Unstraightening {
    pub fibration: Fibration,
    /// `(j, x)` per object of the total category.
    pub objects: Vec<(Obj, Obj)>,
    /// `(α, f: α_* x -> x')` per arrow.
    pub arrows: Vec<(Arr, Arr)>,
    object_index: HashMap<(Obj, Obj), Obj>,
    arrow_index: HashMap<(Obj, Arr, Arr), Arr>,
}

impl Unstraightening {
    pub fn total(&self) -> &Cat {
        self.fibration.total()
    }

    pub fn object(&self, j: Obj, x: Obj) -> Obj {
        self.object_index[&(j, x)]
    }

    /// The arrow `(α, f)` out of `(j, x)`.
    pub fn arrow(&self, source: Obj, alpha: Arr, f: Arr) -> Arr {
        self.arrow_index[&(source, alpha, f)]
    }

    /// `d(j) -> P`, `x ↦ (j, x)`, `f ↦ (id_j, f)`.
    pub fn inclusion(&self, d: &Diagram, j: Obj) -> Functor {
        let v = &d.values[j];
        let idj = d.shape.id(j);
        Functor {
            source: v.clone(),
            target: self.total().clone(),
            objects: v.objects().map(|x| self.object(j, x)).collect(),
            arrows: v.arrows().map(|f| self.arrow(self.object(j, v.src(f)), idj, f)).collect(),
        }
    }

    /// `d(j)` as the fiber over `j`: an isomorphism onto `fiber(p, j)`.
    pub fn fiber_iso(&self, d: &Diagram, j: Obj) -> (Cat, Functor, Functor) {
        let (fib, incl) = fiber(&self.fibration.p, j);
        let oi: HashMap<Obj, usize> = incl.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let ai: HashMap<Arr, usize> = incl.arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let v = &d.values[j];
        let idj = d.shape.id(j);
        let objects = v.objects().map(|x| oi[&self.object(j, x)]).collect();
        let arrows = v.arrows().map(|f| ai[&self.arrow(self.object(j, v.src(f)), idj, f)]).collect();
        let iso = Functor { source: v.clone(), target: fib.clone(), objects, arrows };
        (fib, iso, incl)
    }
}

/// The Grothendieck construction: objects `(j, x)`, arrows `(α, f: α_* x -> x')`.
/// Out of each `(j, x)` and for each `α`, the arrow with `f` an identity comes first.
pub fn unstraighten(d: &Diagram) -> Result<Unstraightening> {
    d.check()?;
    let j = &d.shape;
    let mut objects = Vec::new();
    let mut names = Vec::new();
    let mut object_index = HashMap::new();
    for o in j.objects() {
        for x in d.values[o].objects() {
            object_index.insert((o, x), objects.len());
            objects.push((o, x));
            names.push(format!("({},{})", j.object_name(o), d.values[o].object_name(x)));
        }
    }
    let mut arrows = Vec::new();
    let mut data = Vec::new();
    let mut ids = vec![0; objects.len()];
    let mut arrow_index = HashMap::new();
    for (s, &(o, x)) in objects.iter().enumerate() {
        for &al in j.out(o) {
            let o2 = j.tgt(al);
            let v2 = &d.values[o2];
            let y = d.actions[al].ob(x);
            let mut fs: Vec<Arr> = v2.out(y).to_vec();
            fs.sort_by_key(|&f| (!v2.is_identity(f), f));
            for f in fs {
                let t = object_index[&(o2, v2.tgt(f))];
                if j.is_identity(al) && v2.is_identity(f) {
                    ids[s] = arrows.len();
                }
                arrow_index.insert((s, al, f), arrows.len());
                data.push(Arrow { name: format!("({},{})", j.arrow_name(al), v2.arrow_name(f)), src: s, tgt: t });
                arrows.push((al, f));
            }
        }
    }
    let total = FinCategory::from_fn(names, data.clone(), ids, |h, k| {
        let (al, f) = arrows[k];
        let (be, g) = arrows[h];
        let ab = j.compose(be, al);
        let v3 = &d.values[j.tgt(be)];
        let gf = v3.compose(g, d.actions[be].ar(f));
        arrow_index.get(&(data[k].src, ab, gf)).copied()
    });
    let total = Arc::new(total);
    let p = Functor {
        source: total,
        target: j.clone(),
        objects: objects.iter().map(|o| o.0).collect(),
        arrows: arrows.iter().map(|a| a.0).collect(),
    };
    let fibration = Fibration::new(p).map_err(|e| Error::Invariant(format!("unstraightening: {e}")))?;
    Ok(Unstraightening { fibration, objects, arrows, object_index, arrow_index })
}

/// How a straightening was made strict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Strictification {
    /// Values are fibers, actions transport along chosen lifts.
    ChosenLifts,
    /// Values are categories of cocartesian sections over `j/C`.
    Sections,
}

/// A comparison `lift(x, β∘α) ≅ lift(α_* x, β) ∘ lift(x, α)` that is not an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub first: Arr,
    pub second: Arr,
    pub object: Obj,
    /// The vertical isomorphism in the total category.
    pub iso: Arr,
}

#[derive(Clone, Debug)]
pub struct Straightening {
    pub diagram: Diagram,
    pub method: Strictification,
    /// Non-identity comparisons of chosen lifts, all verified invertible.
    pub comparisons: Vec<Comparison>,
    /// `value(j) -> P`: fiber inclusion, or evaluation at `id_j`.
    pub eval: Vec<Functor>,
    /// For `α: j -> j'` and `x` in `value(j)`, an arrow `eval(x) -> eval(α_* x)` over `α`.
    pub transport: Vec<Vec<Arr>>,
}

/// The unique `v: y -> y'` over `id` with `v ∘ l = l' ∘ u`, given cocartesian `l`.
fn factor(p: &Fibration, l: Arr, target: Arr, id: Arr) -> Option<Arr> {
    let pp = p.total();
    let (y, y2) = (pp.tgt(l), pp.tgt(target));
    pp.hom(y, y2).iter().copied().find(|&v| p.p.ar(v) == id && pp.compose(v, l) == target)
}

pub fn straighten(p: &Fibration) -> Result<Straightening> {
    let (pp, c) = (p.total(), p.base());
    let mut comparisons = Vec::new();
    for a in c.arrows() {
        for &b in c.out(c.tgt(a)) {
            let ba = c.compose(b, a);
            for x in p.fiber_objects(c.src(a)) {
                let la = p.lift(x, a);
                let two = pp.compose(p.lift(pp.tgt(la), b), la);
                let one = p.lift(x, ba);
                if two == one {
                    continue;
                }
                let iso = factor(p, one, two, c.id(c.tgt(b)))
                    .ok_or_else(|| Error::Strictification("comparison of chosen lifts does not exist".into()))?;
                if !pp.is_iso(iso) {
                    return Err(Error::Strictification(format!("comparison {} is not invertible", pp.arrow_name(iso))));
                }
                comparisons.push(Comparison { first: a, second: b, object: x, iso });
            }
        }
    }
    if comparisons.is_empty() {
        by_chosen_lifts(p)
    } else {
        let mut s = by_sections(p)?;
        s.comparisons = comparisons;
        Ok(s)
    }
}

fn by_chosen_lifts(p: &Fibration) -> Result<Straightening> {
    let (pp, c) = (p.total(), p.base());
    let fibers: Vec<(Cat, Functor)> = c.objects().map(|o| p.fiber(o)).collect();
    let index: Vec<(HashMap<Obj, usize>, HashMap<Arr, usize>)> = fibers
        .iter()
        .map(|(_, i)| {
            (
                i.objects.iter().enumerate().map(|(k, &o)| (o, k)).collect(),
                i.arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect(),
            )
        })
        .collect();
    let mut actions = Vec::new();
    let mut transport = Vec::new();
    for a in c.arrows() {
        let (s, t) = (c.src(a), c.tgt(a));
        let (fs, is) = &fibers[s];
        let (ft, _) = &fibers[t];
        let objects: Vec<Obj> = is.objects.iter().map(|&x| index[t].0[&pp.tgt(p.lift(x, a))]).collect();
        let mut arrows = Vec::new();
        for &u in &is.arrows {
            let (x, x1) = (pp.src(u), pp.tgt(u));
            let target = pp.compose(p.lift(x1, a), u);
            let v = factor(p, p.lift(x, a), target, c.id(t))
                .ok_or_else(|| Error::Invariant("chosen lift is not cocartesian".into()))?;
            arrows.push(index[t].1[&v]);
        }
        transport.push(is.objects.iter().map(|&x| p.lift(x, a)).collect());
        actions.push(Functor { source: fs.clone(), target: ft.clone(), objects, arrows });
    }
    let diagram = Diagram::new(c.clone(), fibers.iter().map(|f| f.0.clone()).collect(), actions)
        .map_err(|e| Error::Strictification(e.to_string()))?;
    Ok(Straightening {
        diagram,
        method: Strictification::ChosenLifts,
        comparisons: Vec::new(),
        eval: fibers.into_iter().map(|f| f.1).collect(),
        transport,
    })
}

/// `value(j)` = cocartesian sections of `P ×_C j/C -> j/C`, vertical transformations;
/// `α_*` is restriction along `j'/C -> j/C`, `γ ↦ γ∘α`.
fn by_sections(p: &Fibration) -> Result<Straightening> {
    let (pp, c) = (p.total(), p.base());
    let pt = Arc::new(FinCategory::point());
    let slices: Vec<_> = c
        .objects()
        .map(|j| comma(&Functor::constant(pt.clone(), c.clone(), j), &Functor::identity(c.clone())))
        .collect();
    let mut values = Vec::new();
    for sl in &slices {
        let cod = &sl.proj_b;
        let obj_ok = |o: Obj, x: Obj| p.p.ob(x) == cod.ob(o);
        let arr_ok = |a: Arr, g: Arr| p.p.ar(g) == cod.ar(a) && p.is_cocartesian(g);
        let secs = enumerate_functors_with(&sl.category, pp, &obj_ok, &arr_ok, DEFAULT_GUARD)?;
        let vertical = |_: Obj, t: Arr| c.is_identity(p.p.ar(t));
        values.push(build_functor_category_with(secs, pp, DEFAULT_GUARD, &vertical)?);
    }
    // γ ↦ γ∘α as a functor j'/C -> j/C
    let restrict = |a: Arr| -> Functor {
        let (s, t) = (&slices[c.src(a)], &slices[c.tgt(a)]);
        let oi: HashMap<(Obj, Arr), usize> = s.objects.iter().enumerate().map(|(i, o)| ((o.1, o.2), i)).collect();
        let ai: HashMap<(usize, usize, Arr), usize> =
            (0..s.arrows.len()).map(|k| ((s.category.src(k), s.category.tgt(k), s.arrows[k].1), k)).collect();
        let objects: Vec<usize> = t.objects.iter().map(|o| oi[&(o.1, c.compose(o.2, a))]).collect();
        let arrows = (0..t.arrows.len())
            .map(|k| ai[&(objects[t.category.src(k)], objects[t.category.tgt(k)], t.arrows[k].1)])
            .collect();
        Functor { source: t.category.clone(), target: s.category.clone(), objects, arrows }
    };
    let key = |f: &Functor| (f.objects.clone(), f.arrows.clone());
    let fidx: Vec<HashMap<(Vec<Obj>, Vec<Arr>), usize>> =
        values.iter().map(|v| v.functors.iter().enumerate().map(|(i, f)| (key(f), i)).collect()).collect();
    let nidx: Vec<HashMap<(usize, usize, Vec<Arr>), usize>> = values
        .iter()
        .map(|v| {
            (0..v.nats.len())
                .map(|k| ((v.category.src(k), v.category.tgt(k), v.nats[k].components.clone()), k))
                .collect()
        })
        .collect();
    // the object of j/C standing for id_j
    let base_point = |j: Obj| slices[j].objects.iter().position(|o| o.2 == c.id(j)).expect("identity in slice");
    let mut actions = Vec::new();
    let mut transport = Vec::new();
    for a in c.arrows() {
        let (s, t) = (c.src(a), c.tgt(a));
        let r = restrict(a);
        let objects: Vec<usize> = values[s].functors.iter().map(|f| fidx[t][&key(&r.then(f))]).collect();
        let arrows = (0..values[s].nats.len())
            .map(|k| {
                let comps = r.objects.iter().map(|&o| values[s].nats[k].components[o]).collect();
                let ends = (objects[values[s].category.src(k)], objects[values[s].category.tgt(k)]);
                nidx[t][&(ends.0, ends.1, comps)]
            })
            .collect();
        actions.push(Functor {
            source: values[s].category.clone(),
            target: values[t].category.clone(),
            objects,
            arrows,
        });
        // the arrow id_j -> α of j/C, pushed through each section
        let sl = &slices[s];
        let (b0, ba) = (base_point(s), sl.objects.iter().position(|o| o.2 == a).expect("α in slice"));
        let u = sl.category.hom(b0, ba)[0];
        transport.push(values[s].functors.iter().map(|f| f.ar(u)).collect());
    }
    let eval = c
        .objects()
        .map(|j| {
            let v = &values[j];
            let b = base_point(j);
            Functor {
                source: v.category.clone(),
                target: pp.clone(),
                objects: v.functors.iter().map(|f| f.ob(b)).collect(),
                arrows: v.nats.iter().map(|n| n.components[b]).collect(),
            }
        })
        .collect();
    let diagram = Diagram::new(c.clone(), values.iter().map(|v| v.category.clone()).collect(), actions)
        .map_err(|e| Error::Strictification(e.to_string()))?;
    Ok(Straightening { diagram, method: Strictification::Sections, comparisons: Vec::new(), eval, transport })
}

/// The comparison `unstraighten(straighten(p)) -> P`, `(j, x) ↦ eval(x)`,
/// `(α, f) ↦ eval(f) ∘ transport(α, x)`.
pub fn counit(st: &Straightening, un: &Unstraightening, p: &Fibration) -> Functor {
    let pp = p.total();
    let objects = un.objects.iter().map(|&(j, x)| st.eval[j].ob(x)).collect();
    let arrows = (0..un.arrows.len())
        .map(|k| {
            let (al, f) = un.arrows[k];
            let (j, x) = un.objects[un.total().src(k)];
            debug_assert_eq!(j, p.base().src(al));
            pp.compose(st.eval[p.base().tgt(al)].ar(f), st.transport[al][x])
        })
        .collect();
    Functor { source: un.total().clone(), target: pp.clone(), objects, arrows }
}

/// Evidence for `straighten(unstraighten(d)) ≅ d`.
#[derive(Clone, Debug)]
pub struct RoundTripOne {
    pub straightening: Straightening,
    /// `d(j) -> value(j)`, each an isomorphism of categories.
    pub components: Vec<Functor>,
    /// Per arrow `α`, `φ_{j'} ∘ d(α) ≅ st(α) ∘ φ_j` by the identity or a found iso.
    pub naturality_identities: usize,
}

/// Round trip I: straightening the unstraightening recovers `d`.
pub fn round_trip_diagram(d: &Diagram) -> Result<RoundTripOne> {
    let un = unstraighten(d)?;
    let st = straighten(&un.fibration)?;
    if st.method != Strictification::ChosenLifts {
        return Err(Error::Invariant("unstraightening lifts do not compose strictly".into()));
    }
    let mut components = Vec::new();
    for j in d.shape.objects() {
        let (_, iso, _) = un.fiber_iso(d, j);
        let phi = iso.with_ends(d.values[j].clone(), st.diagram.values[j].clone());
        if !phi.is_isomorphism() {
            return Err(Error::Invariant("fiber is not isomorphic to the value".into()));
        }
        components.push(phi);
    }
    let mut naturality_identities = 0;
    for a in d.shape.arrows() {
        let (s, t) = (d.shape.src(a), d.shape.tgt(a));
        let lhs = d.actions[a].then(&components[t]);
        let rhs = components[s].then(&st.diagram.actions[a]);
        if lhs.objects == rhs.objects && lhs.arrows == rhs.arrows {
            naturality_identities += 1;
        } else if crate::fincat::find_natural_iso(&lhs, &rhs).is_none() {
            return Err(Error::Invariant(format!("round trip fails at {}", d.shape.arrow_name(a))));
        }
    }
    Ok(RoundTripOne { straightening: st, components, naturality_identities })
}

/// Evidence for `unstraighten(straighten(p)) ≃ p` over the base.
#[derive(Clone, Debug)]
pub struct RoundTripTwo {
    pub straightening: Straightening,
    pub comparison: Functor,
    pub cocartesian: bool,
    pub fiberwise_equivalence: bool,
    pub equivalence: bool,
}

/// Round trip II.
pub fn round_trip_fibration(p: &Fibration) -> Result<RoundTripTwo> {
    let st = straighten(p)?;
    let un = unstraighten(&st.diagram)?;
    let g = counit(&st, &un, p);
    g.check()?;
    let id = Functor::identity(p.base().clone());
    let cocartesian = is_cocartesian_functor(&un.fibration, p, &g, &id)?;
    let fiberwise_equivalence = crate::fibration::is_fiberwise_equivalence(&g, &un.fibration, p);
    let equivalence = g.is_equivalence();
    Ok(RoundTripTwo { straightening: st, comparison: g, cocartesian, fiberwise_equivalence, equivalence })
}

/// `n ↦ left_fibration_part(power([n], p))` for `n <= nmax`.
pub fn straighten_paper_formula(p: &Fibration, nmax: usize) -> Result<Vec<Fibration>> {
    if nmax > 3 {
        return Err(Error::SizeGuard { what: "straightening formula level".into(), limit: 3 });
    }
    (0..=nmax)
        .map(|n| {
            let d = Arc::new(FinCategory::ordinal(n));
            let pw = power(&d, p, DEFAULT_GUARD)?;
            Ok(left_fibration_part(&pw)?.0)
        })
        .collect()
}

/// All `n`-simplices, degenerate ones included, of the nerve of `c`.
pub fn nerve_level_size(c: &Cat, n: usize) -> usize {
    let nv = nerve_truncated(c, n);
    let set = &nv.set;
    // an n-simplex is a nondegenerate k-simplex with a surjection [n] -> [k]
    (0..=n.min(set.top()))
        .map(|k| set.count(k) * binomial(n, k))
        .sum()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Fiber sizes of a left fibration, indexed by base object.
pub fn fiber_sizes(p: &Fibration) -> Vec<usize> {
    p.base().objects().map(|c| p.fiber_objects(c).len()).collect()
}
