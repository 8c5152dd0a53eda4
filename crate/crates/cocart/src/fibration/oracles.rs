//! Independent checkers used to cross-examine [`super::check_cocartesian_fibration`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{comma, find_adjoint, pullback_category, Arr, Comma, FinCategory, Functor, Obj, Side};
use crate::{Error, Result};

/// Outcome of [`poset_check`]: `witness` is an `(x, d)` with `p x < d` and no good lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetVerdict {
    pub holds: bool,
    pub witness: Option<(Obj, Obj)>,
}

/// Over a poset: for every `c < d` and `x` over `c` there is `f: x -> y` over
/// `c <= d` such that `- ∘ f: Hom(y, z) -> Hom(x, z)` is bijective whenever `pz >= d`.
pub fn poset_check(p: &Functor) -> Result<PosetVerdict> {
    let (pp, c) = (&*p.source, &*p.target);
    if !c.is_poset() {
        return Err(Error::BaseNotPoset);
    }
    let leq = |a: Obj, b: Obj| !c.hom(a, b).is_empty();
    for x in pp.objects() {
        let cx = p.ob(x);
        for d in c.objects().filter(|&d| d != cx && leq(cx, d)) {
            let good = pp.out(x).iter().any(|&f| {
                let y = pp.tgt(f);
                p.ob(y) == d
                    && pp.objects().filter(|&z| leq(d, p.ob(z))).all(|z| {
                        let from_y = pp.hom(y, z);
                        let mut image: Vec<Arr> = from_y.iter().map(|&g| pp.compose(g, f)).collect();
                        image.sort_unstable();
                        image.dedup();
                        image.len() == from_y.len() && image.len() == pp.hom(x, z).len()
                    })
            });
            if !good {
                return Ok(PosetVerdict { holds: false, witness: Some((x, d)) });
            }
        }
    }
    Ok(PosetVerdict { holds: true, witness: None })
}

/// The coslice `x/C` as the comma of `x: pt -> C` and the identity.
fn coslice(c: &Arc<FinCategory>, x: Obj) -> Comma {
    let pt = Arc::new(FinCategory::point());
    comma(&Functor::constant(pt, c.clone(), x), &Functor::identity(c.clone()))
}

/// A functor between coslices given on `(z, g)` pairs and on the arrow `v`.
fn between(src: &Comma, tgt: &Comma, obj: impl Fn(Obj, Arr) -> (Obj, Arr), arr: impl Fn(Arr) -> Arr) -> Functor {
    let oi: HashMap<(Obj, Arr), usize> = tgt.objects.iter().enumerate().map(|(i, o)| ((o.1, o.2), i)).collect();
    let ai: HashMap<(usize, usize, Arr), usize> = (0..tgt.arrows.len())
        .map(|k| ((tgt.category.src(k), tgt.category.tgt(k), tgt.arrows[k].1), k))
        .collect();
    let objects: Vec<usize> = src.objects.iter().map(|o| oi[&obj(o.1, o.2)]).collect();
    let arrows = (0..src.arrows.len())
        .map(|k| {
            let (s, t) = (objects[src.category.src(k)], objects[src.category.tgt(k)]);
            ai[&(s, t, arr(src.arrows[k].1))]
        })
        .collect();
    Functor { source: src.category.clone(), target: tgt.category.clone(), objects, arrows }
}

/// `f: x -> y` is cocartesian iff `y/P -> x/P ×_{px/C} py/C` is an isomorphism.
pub fn is_cocartesian_edge_by_slices(p: &Functor, f: Arr) -> bool {
    let (pp, c) = (&p.source, &p.target);
    let (x, y) = (pp.src(f), pp.tgt(f));
    let pf = p.ar(f);
    let (yp, xp) = (coslice(pp, y), coslice(pp, x));
    let (pyc, pxc) = (coslice(c, p.ob(y)), coslice(c, p.ob(x)));
    let push = between(&xp, &pxc, |z, g| (p.ob(z), p.ar(g)), |v| p.ar(v));
    let pre = between(&pyc, &pxc, |z, b| (z, c.compose(b, pf)), |v| v);
    let pb = pullback_category(&push, &pre);
    let to_xp = between(&yp, &xp, |z, g| (z, pp.compose(g, f)), |v| v);
    let to_pyc = between(&yp, &pyc, |z, g| (p.ob(z), p.ar(g)), |v| p.ar(v));
    let oi: HashMap<(Obj, Obj), usize> = pb.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let ai: HashMap<(Arr, Arr), usize> = pb.arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let objects = (0..yp.objects.len()).map(|o| oi[&(to_xp.ob(o), to_pyc.ob(o))]).collect();
    let arrows = (0..yp.arrows.len()).map(|a| ai[&(to_xp.ar(a), to_pyc.ar(a))]).collect();
    Functor { source: yp.category.clone(), target: pb.category.clone(), objects, arrows }.is_isomorphism()
}

/// Cocartesian lifts exist everywhere, with cocartesian edges found by slices.
pub fn horn_check(p: &Functor) -> bool {
    let (pp, c) = (&*p.source, &*p.target);
    let flags: Vec<bool> = pp.arrows().map(|f| is_cocartesian_edge_by_slices(p, f)).collect();
    pp.objects()
        .all(|x| c.out(p.ob(x)).iter().all(|&al| pp.out(x).iter().any(|&f| flags[f] && p.ar(f) == al)))
}

/// `res_p: Fun([1], P) -> P ↓ C`, `(a, b, f) ↦ (a, p b, p f)`.
pub fn res_p(p: &Functor) -> Functor {
    let (pp, c) = (&p.source, &p.target);
    let arrows_of_p = comma(&Functor::identity(pp.clone()), &Functor::identity(pp.clone()));
    let target = comma(p, &Functor::identity(c.clone()));
    let oi: HashMap<(Obj, Obj, Arr), usize> =
        target.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let ai: HashMap<(usize, usize, Arr, Arr), usize> = (0..target.arrows.len())
        .map(|k| ((target.category.src(k), target.category.tgt(k), target.arrows[k].0, target.arrows[k].1), k))
        .collect();
    let objects: Vec<usize> = arrows_of_p
        .objects
        .iter()
        .map(|&(a, b, f)| oi[&(a, p.ob(b), p.ar(f))])
        .collect();
    let arrows = (0..arrows_of_p.arrows.len())
        .map(|k| {
            let (u, v) = arrows_of_p.arrows[k];
            let ends = (objects[arrows_of_p.category.src(k)], objects[arrows_of_p.category.tgt(k)]);
            ai[&(ends.0, ends.1, u, p.ar(v))]
        })
        .collect();
    Functor { source: arrows_of_p.category, target: target.category, objects, arrows }
}

/// `res_p` has a fully faithful left adjoint `lift_p`.
pub fn adjoint_check(p: &Functor) -> bool {
    match find_adjoint(&res_p(p), Side::Left).found() {
        Some(adj) => adj.unit.is_iso(),
        None => false,
    }
}
