use std::sync::Arc;

use super::{Arr, Cat, FinCategory, Obj};
use crate::{Error, Result};

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub source: Cat,
    pub target: Cat,
    pub objects: Vec<Obj>,
    pub arrows: Vec<Arr>,
}

impl Functor {
    pub fn new(source: Cat, target: Cat, objects: Vec<Obj>, arrows: Vec<Arr>) -> Result<Self> {
        let f = Functor { source, target, objects, arrows };
        f.check()?;
        Ok(f)
    }

    pub fn identity(c: Cat) -> Self {
        Functor {
            objects: c.objects().collect(),
            arrows: c.arrows().collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// The constant functor at an object.
    pub fn constant(source: Cat, target: Cat, at: Obj) -> Self {
        let id = target.id(at);
        Functor {
            objects: vec![at; source.num_objects()],
            arrows: vec![id; source.num_arrows()],
            source,
            target,
        }
    }

    /// The unique functor to the point.
    pub fn to_point(source: Cat) -> Self {
        Functor::constant(source, Arc::new(FinCategory::point()), 0)
    }

    /// The functor into a thin category determined by an object assignment.
    pub fn from_objects(source: Cat, target: Cat, objects: Vec<Obj>) -> Result<Self> {
        let mut arrows = Vec::with_capacity(source.num_arrows());
        for f in source.arrows() {
            match target.hom(objects[source.src(f)], objects[source.tgt(f)]) {
                [g] => arrows.push(*g),
                [] => return Err(Error::InvalidParams(format!("no image for {}", source.arrow_name(f)))),
                _ => return Err(Error::InvalidParams("target is not thin".into())),
            }
        }
        Functor::new(source, target, objects, arrows)
    }

    pub fn ob(&self, a: Obj) -> Obj {
        self.objects[a]
    }

    pub fn ar(&self, f: Arr) -> Arr {
        self.arrows[f]
    }

    pub fn check(&self) -> Result<()> {
        let (c, d) = (&*self.source, &*self.target);
        if self.objects.len() != c.num_objects() || self.arrows.len() != c.num_arrows() {
            return Err(Error::Invariant("functor tables have the wrong size".into()));
        }
        if self.objects.iter().any(|&o| o >= d.num_objects()) || self.arrows.iter().any(|&a| a >= d.num_arrows()) {
            return Err(Error::Invariant("functor table refers outside the target".into()));
        }
        for f in c.arrows() {
            let g = self.ar(f);
            if d.src(g) != self.ob(c.src(f)) || d.tgt(g) != self.ob(c.tgt(f)) {
                return Err(Error::Invariant(format!("arrow {} sent to an arrow of the wrong type", c.arrow_name(f))));
            }
        }
        for a in c.objects() {
            if self.ar(c.id(a)) != d.id(self.ob(a)) {
                return Err(Error::Invariant(format!("identity of {} not preserved", c.object_name(a))));
            }
        }
        for f in c.arrows() {
            for &g in c.out(c.tgt(f)) {
                if self.ar(c.compose(g, f)) != d.compose(self.ar(g), self.ar(f)) {
                    return Err(Error::Invariant(format!(
                        "composite {}∘{} not preserved",
                        c.arrow_name(g),
                        c.arrow_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&o| other.ob(o)).collect(),
            arrows: self.arrows.iter().map(|&a| other.ar(a)).collect(),
        }
    }

    /// The same functor between opposite categories.
    pub fn op(&self) -> Functor {
        Functor {
            source: Arc::new(self.source.op()),
            target: Arc::new(self.target.op()),
            objects: self.objects.clone(),
            arrows: self.arrows.clone(),
        }
    }

    /// Same functor with new (equal or isomorphic-by-numbering) endpoint handles.
    pub fn with_ends(&self, source: Cat, target: Cat) -> Functor {
        Functor { source, target, objects: self.objects.clone(), arrows: self.arrows.clone() }
    }

    pub fn is_faithful(&self) -> bool {
        self.hom_maps_satisfy(|img, n| {
            let mut v = img.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len() == n
        })
    }

    pub fn is_full(&self) -> bool {
        let d = &*self.target;
        self.hom_maps_satisfy_pair(|a, b, img| {
            d.hom(a, b).iter().all(|g| img.contains(g))
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_full() && self.is_faithful()
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let d = &*self.target;
        d.objects().all(|y| {
            self.objects.iter().any(|&fx| fx == y || d.hom(fx, y).iter().any(|&g| d.is_iso(g)))
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        let mut o = self.objects.clone();
        o.sort_unstable();
        o.dedup();
        let mut a = self.arrows.clone();
        a.sort_unstable();
        a.dedup();
        o.len() == self.target.num_objects()
            && a.len() == self.target.num_arrows()
            && o.len() == self.objects.len()
            && a.len() == self.arrows.len()
    }

    fn hom_maps_satisfy(&self, pred: impl Fn(&[Arr], usize) -> bool) -> bool {
        let c = &*self.source;
        c.objects().all(|a| {
            c.objects().all(|b| {
                let img: Vec<Arr> = c.hom(a, b).iter().map(|&f| self.ar(f)).collect();
                pred(&img, c.hom(a, b).len())
            })
        })
    }

    fn hom_maps_satisfy_pair(&self, pred: impl Fn(Obj, Obj, &[Arr]) -> bool) -> bool {
        let c = &*self.source;
        c.objects().all(|a| {
            c.objects().all(|b| {
                let img: Vec<Arr> = c.hom(a, b).iter().map(|&f| self.ar(f)).collect();
                pred(self.ob(a), self.ob(b), &img)
            })
        })
    }
}

/// A natural transformation, given by its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<Arr>,
}

impl NatTransformation {
    pub fn new(source: Functor, target: Functor, components: Vec<Arr>) -> Result<Self> {
        let t = NatTransformation { source, target, components };
        t.check()?;
        Ok(t)
    }

    pub fn identity(f: &Functor) -> Self {
        let d = &f.target;
        NatTransformation {
            source: f.clone(),
            target: f.clone(),
            components: f.objects.iter().map(|&o| d.id(o)).collect(),
        }
    }

    pub fn check(&self) -> Result<()> {
        let (c, d) = (&*self.source.source, &*self.source.target);
        if self.components.len() != c.num_objects() {
            return Err(Error::Invariant("wrong number of components".into()));
        }
        for a in c.objects() {
            let t = self.components[a];
            if d.src(t) != self.source.ob(a) || d.tgt(t) != self.target.ob(a) {
                return Err(Error::Invariant(format!("component at {} has the wrong type", c.object_name(a))));
            }
        }
        for f in c.arrows() {
            let (a, b) = (c.src(f), c.tgt(f));
            if d.compose(self.target.ar(f), self.components[a]) != d.compose(self.components[b], self.source.ar(f)) {
                return Err(Error::Invariant(format!("naturality fails at {}", c.arrow_name(f))));
            }
        }
        Ok(())
    }

    /// `other ∘ self` (vertical).
    pub fn then(&self, other: &NatTransformation) -> NatTransformation {
        let d = &self.source.target;
        NatTransformation {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&s, &o)| d.compose(o, s))
                .collect(),
        }
    }

    pub fn is_iso(&self) -> bool {
        let d = &self.source.target;
        self.components.iter().all(|&t| d.is_iso(t))
    }

    pub fn is_identity(&self) -> bool {
        let d = &self.source.target;
        self.source == self.target && self.components.iter().all(|&t| d.is_identity(t))
    }
}

type ObjOk<'a> = &'a dyn Fn(Obj, Obj) -> bool;
type ArrOk<'a> = &'a dyn Fn(Arr, Arr) -> bool;

/// All functors `c -> d`.
pub fn enumerate_functors(c: &Cat, d: &Cat, guard: usize) -> Result<Vec<Functor>> {
    enumerate_functors_with(c, d, &|_, _| true, &|_, _| true, guard)
}

/// All functors `c -> d` whose object and arrow assignments pass the filters.
pub fn enumerate_functors_with(
    c: &Cat,
    d: &Cat,
    obj_ok: ObjOk<'_>,
    arr_ok: ArrOk<'_>,
    guard: usize,
) -> Result<Vec<Functor>> {
    let nonid: Vec<Arr> = c.non_identity_arrows().collect();
    // composable pairs of non-identity arrows, checked once all three images are known
    let mut pos = vec![usize::MAX; c.num_arrows()];
    for (k, &f) in nonid.iter().enumerate() {
        pos[f] = k;
    }
    let mut checks: Vec<Vec<(Arr, Arr, Arr)>> = vec![Vec::new(); nonid.len()];
    for &f in &nonid {
        for &g in c.out(c.tgt(f)) {
            if c.is_identity(g) {
                continue;
            }
            let h = c.compose(g, f);
            let last = if c.is_identity(h) { pos[f].max(pos[g]) } else { pos[f].max(pos[g]).max(pos[h]) };
            checks[last].push((g, f, h));
        }
    }
    let mut st = EnumState {
        c,
        d,
        nonid: &nonid,
        checks: &checks,
        obj_ok,
        arr_ok,
        objects: vec![0; c.num_objects()],
        arrows: vec![usize::MAX; c.num_arrows()],
        out: Vec::new(),
        guard,
        overflow: false,
    };
    st.objects_step(0);
    if st.overflow {
        return Err(Error::SizeGuard { what: "functor enumeration".into(), limit: guard });
    }
    Ok(st.out)
}

struct EnumState<'a> {
    c: &'a Cat,
    d: &'a Cat,
    nonid: &'a [Arr],
    checks: &'a [Vec<(Arr, Arr, Arr)>],
    obj_ok: ObjOk<'a>,
    arr_ok: ArrOk<'a>,
    objects: Vec<Obj>,
    arrows: Vec<Arr>,
    out: Vec<Functor>,
    guard: usize,
    overflow: bool,
}

impl EnumState<'_> {
    fn objects_step(&mut self, a: Obj) {
        if self.overflow {
            return;
        }
        let (c, d) = (self.c.clone(), self.d.clone());
        if a == c.num_objects() {
            for o in c.objects() {
                self.arrows[c.id(o)] = d.id(self.objects[o]);
            }
            self.arrows_step(0);
            return;
        }
        for x in d.objects() {
            if !(self.obj_ok)(a, x) || !(self.arr_ok)(c.id(a), d.id(x)) {
                continue;
            }
            self.objects[a] = x;
            // every arrow between assigned objects needs a possible image
            let ok = c.arrows().all(|f| {
                let (s, t) = (c.src(f), c.tgt(f));
                s > a || t > a || !d.hom(self.objects[s], self.objects[t]).is_empty()
            });
            if ok {
                self.objects_step(a + 1);
            }
        }
    }

    fn arrows_step(&mut self, k: usize) {
        if self.overflow {
            return;
        }
        let (c, d) = (self.c.clone(), self.d.clone());
        if k == self.nonid.len() {
            if self.out.len() >= self.guard {
                self.overflow = true;
                return;
            }
            self.out.push(Functor {
                source: c.clone(),
                target: d.clone(),
                objects: self.objects.clone(),
                arrows: self.arrows.clone(),
            });
            return;
        }
        let f = self.nonid[k];
        let (s, t) = (self.objects[c.src(f)], self.objects[c.tgt(f)]);
        for &g in d.hom(s, t) {
            if !(self.arr_ok)(f, g) {
                continue;
            }
            self.arrows[f] = g;
            let ok = self.checks[k].iter().all(|&(g1, f1, h1)| {
                d.compose(self.arrows[g1], self.arrows[f1]) == self.arrows[h1]
            });
            if ok {
                self.arrows_step(k + 1);
            }
        }
        self.arrows[f] = usize::MAX;
    }
}

/// All natural transformations `f => g` whose components pass the filter.
pub fn enumerate_nat_trans(
    f: &Functor,
    g: &Functor,
    component_ok: &dyn Fn(Obj, Arr) -> bool,
) -> Vec<NatTransformation> {
    let c = &*f.source;
    let d = &*f.target;
    let n = c.num_objects();
    let mut comps = vec![0; n];
    let mut out = Vec::new();
    fn go(
        a: usize,
        f: &Functor,
        g: &Functor,
        c: &FinCategory,
        d: &FinCategory,
        ok: &dyn Fn(Obj, Arr) -> bool,
        comps: &mut Vec<Arr>,
        out: &mut Vec<NatTransformation>,
    ) {
        if a == c.num_objects() {
            out.push(NatTransformation { source: f.clone(), target: g.clone(), components: comps.clone() });
            return;
        }
        for &t in d.hom(f.ob(a), g.ob(a)) {
            if !ok(a, t) {
                continue;
            }
            comps[a] = t;
            let natural = c.arrows().all(|u| {
                let (s, e) = (c.src(u), c.tgt(u));
                s > a || e > a || d.compose(g.ar(u), comps[s]) == d.compose(comps[e], f.ar(u))
            });
            if natural {
                go(a + 1, f, g, c, d, ok, comps, out);
            }
        }
    }
    go(0, f, g, c, d, component_ok, &mut comps, &mut out);
    out
}

/// A natural isomorphism `f => g`, if one exists.
pub fn find_natural_iso(f: &Functor, g: &Functor) -> Option<NatTransformation> {
    let d = f.target.clone();
    enumerate_nat_trans(f, g, &|_, t| d.is_iso(t)).into_iter().next()
}

/// All isomorphisms of categories `c -> d`.
pub fn isomorphisms_between(c: &Cat, d: &Cat, guard: usize) -> Result<Vec<Functor>> {
    if c.num_objects() != d.num_objects() || c.num_arrows() != d.num_arrows() {
        return Ok(Vec::new());
    }
    let hom_sizes = |cat: &FinCategory, a: Obj| -> (usize, usize, usize) {
        (cat.out(a).len(), cat.inc(a).len(), cat.hom(a, a).len())
    };
    let obj_ok = |a: Obj, x: Obj| hom_sizes(c, a) == hom_sizes(d, x);
    let all = enumerate_functors_with(c, d, &obj_ok, &|_, _| true, guard)?;
    Ok(all.into_iter().filter(|f| f.is_isomorphism()).collect())
}
