//! Colimits by localization at cocartesian arrows, limits by cocartesian sections,
//! and their set-level counterparts for discrete diagrams.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{unstraighten, Diagram};
use crate::fincat::{
    build_functor_category_with, enumerate_functors_with, localize, Cat, FinCategory, Functor, LocalizeOutcome, Obj,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ColimitMethod {
    /// Localize the unstraightening at its cocartesian arrows, with a word-length bound.
    Localization(usize),
    /// Coequalize elements directly; discrete values only.
    SetOracle,
}

impl ColimitMethod {
    /// The set oracle when every value is discrete, localization otherwise.
    pub fn auto(d: &Diagram, bound: usize) -> Self {
        if d.is_discrete() {
            ColimitMethod::SetOracle
        } else {
            ColimitMethod::Localization(bound)
        }
    }
}

#[derive(Clone, Debug)]
pub enum ColimitReport {
    Finite { method: ColimitMethod, category: Cat, legs: Vec<Functor> },
    /// The localization did not close up within `bound`.
    Infinite { bound: usize, hom: (String, String), growth: Vec<usize> },
}

impl ColimitReport {
    pub fn category(&self) -> Option<&Cat> {
        match self {
            ColimitReport::Finite { category, .. } => Some(category),
            ColimitReport::Infinite { .. } => None,
        }
    }
}

/// Equivalence classes of elements `(j, x)` of a discrete diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetColimit {
    pub classes: Vec<Vec<(Obj, Obj)>>,
    /// `class_of[j][x]`.
    pub class_of: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

pub fn set_colimit(d: &Diagram) -> Result<SetColimit> {
    if !d.is_discrete() {
        return Err(Error::InvalidParams("the set oracle needs discrete values".into()));
    }
    let j = &d.shape;
    let mut offset = vec![0];
    for v in &d.values {
        offset.push(offset.last().unwrap() + v.num_objects());
    }
    let mut parent: Vec<usize> = (0..*offset.last().unwrap()).collect();
    for a in j.arrows() {
        let (s, t) = (j.src(a), j.tgt(a));
        for x in d.values[s].objects() {
            let (u, v) = (find(&mut parent, offset[s] + x), find(&mut parent, offset[t] + d.actions[a].ob(x)));
            parent[u.max(v)] = u.min(v);
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut classes: Vec<Vec<(Obj, Obj)>> = Vec::new();
    let mut class_of = Vec::new();
    for o in j.objects() {
        let mut row = Vec::new();
        for x in d.values[o].objects() {
            let r = find(&mut parent, offset[o] + x);
            let k = match roots.iter().position(|&q| q == r) {
                Some(k) => k,
                None => {
                    roots.push(r);
                    classes.push(Vec::new());
                    roots.len() - 1
                }
            };
            classes[k].push((o, x));
            row.push(k);
        }
        class_of.push(row);
    }
    Ok(SetColimit { classes, class_of })
}

pub fn colimit(d: &Diagram, method: ColimitMethod) -> Result<ColimitReport> {
    d.check()?;
    match method {
        ColimitMethod::SetOracle => {
            let sc = set_colimit(d)?;
            let names = sc
                .classes
                .iter()
                .map(|c| {
                    let (o, x) = c[0];
                    format!("[{}.{}]", d.shape.object_name(o), d.values[o].object_name(x))
                })
                .collect();
            let cat = Arc::new(FinCategory::poset(names, |a, b| a == b));
            let legs = d
                .shape
                .objects()
                .map(|o| {
                    let objects = sc.class_of[o].clone();
                    let arrows = objects.iter().map(|&k| cat.id(k)).collect();
                    Functor { source: d.values[o].clone(), target: cat.clone(), objects, arrows }
                })
                .collect();
            Ok(ColimitReport::Finite { method, category: cat, legs })
        }
        ColimitMethod::Localization(bound) => {
            let un = unstraighten(d)?;
            let w: BTreeSet<usize> = un.fibration.cocartesian_arrows().into_iter().collect();
            match localize(un.total(), &w, bound) {
                LocalizeOutcome::Finite(loc) => {
                    let legs = d.shape.objects().map(|o| un.inclusion(d, o).then(&loc.functor)).collect();
                    Ok(ColimitReport::Finite { method, category: loc.category, legs })
                }
                LocalizeOutcome::Infinite { hom, growth, bound } => Ok(ColimitReport::Infinite { bound, hom, growth }),
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    /// Cocartesian sections and vertical transformations.
    pub category: Cat,
    pub sections: Vec<Functor>,
    /// `lim -> d(j)`: value of a section at `j`.
    pub legs: Vec<Functor>,
}

pub fn limit(d: &Diagram, guard: usize) -> Result<LimitReport> {
    let un = unstraighten(d)?;
    let (j, p) = (&d.shape, &un.fibration);
    let obj_ok = |o: Obj, x: Obj| p.p.ob(x) == o;
    let arr_ok = |a: usize, g: usize| p.p.ar(g) == a && p.is_cocartesian(g);
    let secs = enumerate_functors_with(j, un.total(), &obj_ok, &arr_ok, guard)?;
    let vertical = |_: Obj, t: usize| j.is_identity(p.p.ar(t));
    let fc = build_functor_category_with(secs, un.total(), guard, &vertical)?;
    let legs = j
        .objects()
        .map(|o| Functor {
            source: fc.category.clone(),
            target: d.values[o].clone(),
            objects: fc.functors.iter().map(|s| un.objects[s.ob(o)].1).collect(),
            arrows: fc.nats.iter().map(|t| un.arrows[t.components[o]].1).collect(),
        })
        .collect();
    Ok(LimitReport { category: fc.category, sections: fc.functors, legs })
}

/// Compatible families `(x_j)` with `d(α)(x_j) = x_j'`, for discrete values.
pub fn set_limit(d: &Diagram) -> Result<Vec<Vec<Obj>>> {
    if !d.is_discrete() {
        return Err(Error::InvalidParams("the set oracle needs discrete values".into()));
    }
    let j = &d.shape;
    let n = j.num_objects();
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn go(k: usize, d: &Diagram, cur: &mut Vec<Obj>, out: &mut Vec<Vec<Obj>>) {
        let j = &d.shape;
        if k == j.num_objects() {
            out.push(cur.clone());
            return;
        }
        for x in d.values[k].objects() {
            cur[k] = x;
            let ok = j.arrows().all(|a| {
                let (s, t) = (j.src(a), j.tgt(a));
                s > k || t > k || d.actions[a].ob(cur[s]) == cur[t]
            });
            if ok {
                go(k + 1, d, cur, out);
            }
        }
    }
    go(0, d, &mut cur, &mut out);
    Ok(out)
}
