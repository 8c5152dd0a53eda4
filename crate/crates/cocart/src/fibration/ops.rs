//! Base change, powering, tensoring and the interval criterion.

use std::collections::HashMap;
use std::sync::Arc;

use super::{check_cartesian_fibration, fiber, Fibration};
use crate::fincat::{
    enumerate_functors_with, find_adjoint, functor_category, product_projections, pullback_category, Arr, Cat,
    FinCategory, Functor, NatTransformation, Obj, Side,
};
use crate::{Error, Result};

fn verified(p: Functor, what: &str) -> Result<Fibration> {
    Fibration::new(p).map_err(|e| Error::Invariant(format!("{what} is not cocartesian: {e}")))
}

/// The pullback of `p` along `f: C' -> C`, with the comparison functor to the total of `p`.
pub fn pullback_fibration(p: &Fibration, f: &Functor) -> Result<(Fibration, Functor)> {
    let pb = pullback_category(&p.p, f);
    Ok((verified(pb.proj_b, "a pullback")?, pb.proj_a))
}

/// `Fun(D, P) ×_{Fun(D, C)} C -> C`, the pullback along the diagonal.
pub fn power(d: &Cat, p: &Fibration, guard: usize) -> Result<Fibration> {
    let (pp, c) = (p.total(), p.base());
    let fp = functor_category(d, pp, guard)?;
    let fc = functor_category(d, c, guard)?;
    let fun_key = |f: &Functor| (f.objects.clone(), f.arrows.clone());
    let fidx: HashMap<(Vec<Obj>, Vec<Arr>), usize> =
        fc.functors.iter().enumerate().map(|(i, f)| (fun_key(f), i)).collect();
    let nidx: HashMap<(usize, usize, Vec<Arr>), usize> = (0..fc.nats.len())
        .map(|k| ((fc.category.src(k), fc.category.tgt(k), fc.nats[k].components.clone()), k))
        .collect();
    let post_obj: Vec<usize> = fp.functors.iter().map(|f| fidx[&fun_key(&f.then(&p.p))]).collect();
    let post_arr = (0..fp.nats.len())
        .map(|k| {
            let comps = fp.nats[k].components.iter().map(|&a| p.p.ar(a)).collect();
            nidx[&(post_obj[fp.category.src(k)], post_obj[fp.category.tgt(k)], comps)]
        })
        .collect();
    let post = Functor { source: fp.category.clone(), target: fc.category.clone(), objects: post_obj, arrows: post_arr };
    let diag_obj: Vec<usize> = c
        .objects()
        .map(|x| fidx[&fun_key(&Functor::constant(d.clone(), c.clone(), x))])
        .collect();
    let diag_arr = c
        .arrows()
        .map(|a| nidx[&(diag_obj[c.src(a)], diag_obj[c.tgt(a)], vec![a; d.num_objects()])])
        .collect();
    let diag = Functor { source: c.clone(), target: fc.category.clone(), objects: diag_obj, arrows: diag_arr };
    let pb = pullback_category(&post, &diag);
    verified(pb.proj_b, "a power")
}

/// `D × P -> P -> C`.
pub fn tensor(d: &Cat, p: &Fibration) -> Result<Fibration> {
    let (_, _, second) = product_projections(d, p.total());
    verified(second.then(&p.p), "a tensor")
}

/// The restriction of `h` (over the identity of the base) to the fibers over `c`.
pub fn fiber_map(h: &Functor, p: &Fibration, q: &Fibration, c: Obj) -> (Cat, Cat, Functor) {
    let (fp, ip) = p.fiber(c);
    let (fq, iq) = q.fiber(c);
    let oi: HashMap<Obj, usize> = iq.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let ai: HashMap<Arr, usize> = iq.arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let g = Functor {
        source: fp.clone(),
        target: fq.clone(),
        objects: ip.objects.iter().map(|&o| oi[&h.ob(o)]).collect(),
        arrows: ip.arrows.iter().map(|&a| ai[&h.ar(a)]).collect(),
    };
    (fp, fq, g)
}

/// Every fiber map of `h` is an equivalence of categories.
pub fn is_fiberwise_equivalence(h: &Functor, p: &Fibration, q: &Fibration) -> bool {
    p.base().objects().all(|c| fiber_map(h, p, q, c).2.is_equivalence())
}

/// Cocartesian functors `P -> Q` over the identity of the common base.
pub fn cocartesian_functors_over(p: &Fibration, q: &Fibration, guard: usize) -> Result<Vec<Functor>> {
    let obj_ok = |x: Obj, y: Obj| q.p.ob(y) == p.p.ob(x);
    let arr_ok = |f: Arr, g: Arr| q.p.ar(g) == p.p.ar(f) && (!p.is_cocartesian(f) || q.is_cocartesian(g));
    enumerate_functors_with(p.total(), q.total(), &obj_ok, &arr_ok, guard)
}

/// Results of analysing a cocartesian fibration over `[1]`.
#[derive(Clone, Debug)]
pub struct IntervalAnalysis {
    /// Fibers over `0` and `1` with their inclusions.
    pub fiber0: (Cat, Functor),
    pub fiber1: (Cat, Functor),
    /// Left adjoint of the inclusion of the fiber over `1`.
    pub l1: Functor,
    /// `L₁ ∘ i₀`.
    pub straightened: Functor,
    pub cartesian: bool,
    pub right_adjoint: Option<Functor>,
    pub unit: NatTransformation,
}

/// Objects of the base as `(0, 1)` when it is isomorphic to `[1]`.
fn interval_ends(c: &FinCategory) -> Option<(Obj, Obj)> {
    if !c.is_poset() || c.num_objects() != 2 || c.num_arrows() != 3 {
        return None;
    }
    let a = c.non_identity_arrows().next()?;
    Some((c.src(a), c.tgt(a)))
}

pub fn interval_analysis(p: &Functor) -> Result<IntervalAnalysis> {
    let (e0, e1) = interval_ends(&p.target).ok_or(Error::BaseNotInterval)?;
    let fib = Fibration::new(p.clone())?;
    let fiber0 = fiber(p, e0);
    let fiber1 = fiber(p, e1);
    let adj = find_adjoint(&fiber1.1, Side::Left);
    let Some(adj) = adj.found() else {
        return Err(Error::Invariant("cocartesian over [1] but the fiber inclusion has no left adjoint".into()));
    };
    let l1 = adj.left.clone();
    let straightened = fiber0.1.then(&l1);
    let by_edges = check_cartesian_fibration(&fib.p).holds();
    let right_adjoint = find_adjoint(&straightened, Side::Right).found().map(|a| a.right.clone());
    if by_edges != right_adjoint.is_some() {
        return Err(Error::Invariant(format!(
            "dual edge criterion says cartesian = {by_edges} but the right adjoint search disagrees"
        )));
    }
    Ok(IntervalAnalysis {
        fiber0,
        fiber1,
        l1,
        straightened,
        cartesian: by_edges,
        right_adjoint,
        unit: adj.unit.clone(),
    })
}

/// Arc identity or structural equality of categories.
pub(crate) fn same(a: &Cat, b: &Cat) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
