use std::collections::HashMap;
use std::sync::Arc;

use super::{enumerate_functors, enumerate_nat_trans, Arr, Arrow, Cat, FinCategory, Functor, NatTransformation, Obj};
use crate::{Error, Result};

/// `Fun(C, D)` together with the functors and transformations its cells stand for.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: Cat,
    pub functors: Vec<Functor>,
    pub nats: Vec<NatTransformation>,
}

pub(crate) fn functor_label(f: &Functor) -> String {
    let (c, d) = (&*f.source, &*f.target);
    let objs: Vec<&str> = f.objects.iter().map(|&o| d.object_name(o)).collect();
    let arrs: Vec<&str> = c.non_identity_arrows().map(|a| d.arrow_name(f.ar(a))).collect();
    if arrs.is_empty() {
        format!("<{}>", objs.join(","))
    } else {
        format!("<{}|{}>", objs.join(","), arrs.join(","))
    }
}

/// The category of functors `c -> d` and natural transformations.
pub fn functor_category(c: &Cat, d: &Cat, guard: usize) -> Result<FunctorCategory> {
    let functors = enumerate_functors(c, d, guard)?;
    build_functor_category(functors, d, guard)
}

/// The full subcategory of a functor category on the given functors.
pub(crate) fn build_functor_category(
    functors: Vec<Functor>,
    d: &Cat,
    guard: usize,
) -> Result<FunctorCategory> {
    build_functor_category_with(functors, d, guard, &|_, _| true)
}

/// As [`build_functor_category`], keeping transformations whose components pass `ok`.
pub(crate) fn build_functor_category_with(
    functors: Vec<Functor>,
    d: &Cat,
    guard: usize,
    ok: &dyn Fn(Obj, Arr) -> bool,
) -> Result<FunctorCategory> {
    let mut nats = Vec::new();
    let mut arrows = Vec::new();
    let mut ids = vec![0; functors.len()];
    let mut index: HashMap<(usize, usize, Vec<Arr>), Arr> = HashMap::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for t in enumerate_nat_trans(f, g, ok) {
                if i == j && t.components.iter().zip(&f.objects).all(|(&x, &o)| x == d.id(o)) {
                    ids[i] = arrows.len();
                }
                let comps: Vec<&str> = t.components.iter().map(|&x| d.arrow_name(x)).collect();
                index.insert((i, j, t.components.clone()), arrows.len());
                arrows.push(Arrow { name: format!("[{}]", comps.join(",")), src: i, tgt: j });
                nats.push(t);
                if arrows.len() > guard {
                    return Err(Error::SizeGuard { what: "functor category arrows".into(), limit: guard });
                }
            }
        }
    }
    let objects = functors.iter().map(functor_label).collect();
    let category = FinCategory::from_fn(objects, arrows.clone(), ids, |g, f| {
        let comps: Vec<Arr> = nats[f]
            .components
            .iter()
            .zip(&nats[g].components)
            .map(|(&a, &b)| d.compose(b, a))
            .collect();
        index.get(&(arrows[f].src, arrows[g].tgt, comps)).copied()
    });
    Ok(FunctorCategory { category: Arc::new(category), functors, nats })
}

/// The comma category `F ↓ G` with its projections.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: Cat,
    pub proj_a: Functor,
    pub proj_b: Functor,
    /// `(a, b, α: F a -> G b)` per object.
    pub objects: Vec<(Obj, Obj, Arr)>,
    /// `(u, v)` per arrow.
    pub arrows: Vec<(Arr, Arr)>,
}

pub fn comma(f: &Functor, g: &Functor) -> Comma {
    let (a, b, c) = (&*f.source, &*g.source, &*f.target);
    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            for &al in c.hom(f.ob(x), g.ob(y)) {
                objects.push((x, y, al));
            }
        }
    }
    let mut arrows = Vec::new();
    let mut ends = Vec::new();
    let mut ids = vec![0; objects.len()];
    let mut index: HashMap<(usize, usize, Arr, Arr), Arr> = HashMap::new();
    for (i, &(x, y, al)) in objects.iter().enumerate() {
        for (j, &(x2, y2, al2)) in objects.iter().enumerate() {
            for &u in a.hom(x, x2) {
                for &v in b.hom(y, y2) {
                    if c.compose(al2, f.ar(u)) == c.compose(g.ar(v), al) {
                        if i == j && a.is_identity(u) && b.is_identity(v) {
                            ids[i] = arrows.len();
                        }
                        index.insert((i, j, u, v), arrows.len());
                        ends.push((i, j));
                        arrows.push((u, v));
                    }
                }
            }
        }
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&(x, y, al)| format!("({},{},{})", a.object_name(x), b.object_name(y), c.arrow_name(al)))
        .collect();
    let arrow_data: Vec<Arrow> = arrows
        .iter()
        .zip(&ends)
        .map(|(&(u, v), &(i, j))| Arrow { name: format!("({},{})", a.arrow_name(u), b.arrow_name(v)), src: i, tgt: j })
        .collect();
    let category = Arc::new(FinCategory::from_fn(names, arrow_data, ids, |h, k| {
        let (i, _) = ends[k];
        let (_, j) = ends[h];
        let u = a.compose(arrows[h].0, arrows[k].0);
        let v = b.compose(arrows[h].1, arrows[k].1);
        index.get(&(i, j, u, v)).copied()
    }));
    let proj_a = Functor {
        source: category.clone(),
        target: f.source.clone(),
        objects: objects.iter().map(|o| o.0).collect(),
        arrows: arrows.iter().map(|p| p.0).collect(),
    };
    let proj_b = Functor {
        source: category.clone(),
        target: g.source.clone(),
        objects: objects.iter().map(|o| o.1).collect(),
        arrows: arrows.iter().map(|p| p.1).collect(),
    };
    Comma { category, proj_a, proj_b, objects, arrows }
}

/// The strict pullback `A ×_C B` of `F: A -> C` and `G: B -> C`.
#[derive(Clone, Debug)]
pub struct PullbackCategory {
    pub category: Cat,
    pub proj_a: Functor,
    pub proj_b: Functor,
    pub objects: Vec<(Obj, Obj)>,
    pub arrows: Vec<(Arr, Arr)>,
}

pub fn pullback_category(f: &Functor, g: &Functor) -> PullbackCategory {
    let (a, b) = (&*f.source, &*g.source);
    let mut objects = Vec::new();
    let mut oindex = HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.ob(x) == g.ob(y) {
                oindex.insert((x, y), objects.len());
                objects.push((x, y));
            }
        }
    }
    let mut arrows = Vec::new();
    let mut data = Vec::new();
    let mut aindex = HashMap::new();
    for u in a.arrows() {
        for v in b.arrows() {
            if f.ar(u) == g.ar(v) {
                let (Some(&i), Some(&j)) = (oindex.get(&(a.src(u), b.src(v))), oindex.get(&(a.tgt(u), b.tgt(v)))) else {
                    continue;
                };
                aindex.insert((u, v), arrows.len());
                data.push(Arrow { name: format!("({},{})", a.arrow_name(u), b.arrow_name(v)), src: i, tgt: j });
                arrows.push((u, v));
            }
        }
    }
    let ids = objects.iter().map(|&(x, y)| aindex[&(a.id(x), b.id(y))]).collect();
    let names = objects
        .iter()
        .map(|&(x, y)| format!("({},{})", a.object_name(x), b.object_name(y)))
        .collect();
    let category = Arc::new(FinCategory::from_fn(names, data, ids, |h, k| {
        let u = a.try_compose(arrows[h].0, arrows[k].0)?;
        let v = b.try_compose(arrows[h].1, arrows[k].1)?;
        aindex.get(&(u, v)).copied()
    }));
    let proj_a = Functor {
        source: category.clone(),
        target: f.source.clone(),
        objects: objects.iter().map(|o| o.0).collect(),
        arrows: arrows.iter().map(|p| p.0).collect(),
    };
    let proj_b = Functor {
        source: category.clone(),
        target: g.source.clone(),
        objects: objects.iter().map(|o| o.1).collect(),
        arrows: arrows.iter().map(|p| p.1).collect(),
    };
    PullbackCategory { category, proj_a, proj_b, objects, arrows }
}

/// The full subcategory on `keep` (in the given order) with its inclusion.
pub fn full_subcategory(c: &Cat, keep: &[Obj]) -> (Cat, Functor) {
    let mut onew = HashMap::new();
    for (i, &o) in keep.iter().enumerate() {
        onew.insert(o, i);
    }
    let arrs: Vec<Arr> = c.arrows().filter(|&f| onew.contains_key(&c.src(f)) && onew.contains_key(&c.tgt(f))).collect();
    sub_from(c, keep, &onew, arrs)
}

/// The wide subcategory on an arrow set containing all identities and closed under composition.
pub fn wide_subcategory(c: &Cat, arrows: &[Arr]) -> Result<(Cat, Functor)> {
    let keep: Vec<Obj> = c.objects().collect();
    let onew: HashMap<Obj, usize> = keep.iter().map(|&o| (o, o)).collect();
    let mut arrs = arrows.to_vec();
    arrs.sort_unstable();
    arrs.dedup();
    let set: std::collections::HashSet<Arr> = arrs.iter().copied().collect();
    if c.objects().any(|o| !set.contains(&c.id(o))) {
        return Err(Error::InvalidParams("wide subcategory misses an identity".into()));
    }
    for &f in &arrs {
        for &g in &arrs {
            if c.src(g) == c.tgt(f) && !set.contains(&c.compose(g, f)) {
                return Err(Error::InvalidParams("arrow set not closed under composition".into()));
            }
        }
    }
    Ok(sub_from(c, &keep, &onew, arrs))
}

/// The subcategory on the given objects and arrows, which must contain the identities
/// of `keep` and be closed under composition.
pub fn subcategory(c: &Cat, keep: &[Obj], arrows: &[Arr]) -> Result<(Cat, Functor)> {
    let onew: HashMap<Obj, usize> = keep.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let set: std::collections::HashSet<Arr> = arrows.iter().copied().collect();
    if keep.iter().any(|o| !set.contains(&c.id(*o))) {
        return Err(Error::InvalidParams("subcategory misses an identity".into()));
    }
    for &f in arrows {
        if !onew.contains_key(&c.src(f)) || !onew.contains_key(&c.tgt(f)) {
            return Err(Error::InvalidParams(format!("arrow {} leaves the object set", c.arrow_name(f))));
        }
        for &g in arrows {
            if c.src(g) == c.tgt(f) && !set.contains(&c.compose(g, f)) {
                return Err(Error::InvalidParams("arrow set not closed under composition".into()));
            }
        }
    }
    let mut arrs = arrows.to_vec();
    arrs.sort_unstable();
    arrs.dedup();
    Ok(sub_from(c, keep, &onew, arrs))
}

/// `C × D` with both projections.
pub fn product_projections(c: &Cat, d: &Cat) -> (Cat, Functor, Functor) {
    let p = Arc::new(FinCategory::product(c, d));
    let (nd, ma) = (d.num_objects(), d.num_arrows());
    let first = Functor {
        source: p.clone(),
        target: c.clone(),
        objects: p.objects().map(|o| o / nd).collect(),
        arrows: p.arrows().map(|a| a / ma).collect(),
    };
    let second = Functor {
        source: p.clone(),
        target: d.clone(),
        objects: p.objects().map(|o| o % nd).collect(),
        arrows: p.arrows().map(|a| a % ma).collect(),
    };
    (p, first, second)
}

fn sub_from(c: &Cat, keep: &[Obj], onew: &HashMap<Obj, usize>, arrs: Vec<Arr>) -> (Cat, Functor) {
    let anew: HashMap<Arr, usize> = arrs.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let data = arrs
        .iter()
        .map(|&f| Arrow { name: c.arrow_name(f).to_string(), src: onew[&c.src(f)], tgt: onew[&c.tgt(f)] })
        .collect();
    let ids = keep.iter().map(|&o| anew[&c.id(o)]).collect();
    let names = keep.iter().map(|&o| c.object_name(o).to_string()).collect();
    let sub = Arc::new(FinCategory::from_fn(names, data, ids, |g, f| {
        c.try_compose(arrs[g], arrs[f]).and_then(|h| anew.get(&h).copied())
    }));
    let inc = Functor { source: sub.clone(), target: c.clone(), objects: keep.to_vec(), arrows: arrs };
    (sub, inc)
}
