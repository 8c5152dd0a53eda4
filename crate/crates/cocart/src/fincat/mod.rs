//! Finite categories with tabulated composition.

mod adjoint;
mod constructions;
mod functor;
mod localize;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub use adjoint::{find_adjoint, Adjunction, AdjointSearch, Side};
pub use constructions::{
    comma, full_subcategory, functor_category, pullback_category, product_projections, subcategory, wide_subcategory, Comma,
    FunctorCategory, PullbackCategory,
};
pub use functor::{
    enumerate_functors, enumerate_functors_with, enumerate_nat_trans, find_natural_iso,
    isomorphisms_between, Functor, NatTransformation,
};
pub use localize::{localize, Localization, LocalizeOutcome};
pub(crate) use constructions::build_functor_category_with;

pub type Obj = usize;
pub type Arr = usize;

/// Default cap on enumerated functors, objects or arrows.
pub const DEFAULT_GUARD: usize = 200_000;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category. Arrows are numbered; `compose(g, f)` is `g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    ids: Vec<Arr>,
    out: Vec<Vec<Arr>>,
    inc: Vec<Vec<Arr>>,
    out_pos: Vec<usize>,
    table: Vec<Vec<Arr>>,
    homs: HashMap<(Obj, Obj), Vec<Arr>>,
}

/// First violated law found by [`FinCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BadIdentity { object: String },
    MissingComposite { g: String, f: String },
    IllTypedComposite { g: String, f: String, h: String },
    Unit { f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadIdentity { object } => write!(f, "identity of {object} is not an endomorphism of it"),
            Violation::MissingComposite { g, f: ff } => write!(f, "composite {g}∘{ff} undefined"),
            Violation::IllTypedComposite { g, f: ff, h } => {
                write!(f, "composite {g}∘{ff} = {h} has the wrong source or target")
            }
            Violation::Unit { f: ff } => write!(f, "unit law fails for {ff}"),
            Violation::Associativity { h, g, f: ff } => {
                write!(f, "associativity fails: {h}∘({g}∘{ff}) ≠ ({h}∘{g})∘{ff}")
            }
        }
    }
}

fn uniquify(names: &mut [String]) {
    let mut seen: HashMap<String, usize> = HashMap::new();
    for n in names.iter_mut() {
        let mut k = *seen.get(n.as_str()).unwrap_or(&0);
        k += 1;
        if k > 1 {
            let mut cand = format!("{n}#{}", k - 1);
            while seen.contains_key(&cand) {
                k += 1;
                cand = format!("{n}#{}", k - 1);
            }
            seen.insert(n.clone(), k);
            seen.insert(cand.clone(), 1);
            *n = cand;
        } else {
            seen.insert(n.clone(), k);
        }
    }
}

impl FinCategory {
    /// Tabulates composition with `comp(g, f)` for every composable pair; missing
    /// values are left undefined and reported by [`FinCategory::validate`].
    pub fn from_fn(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        ids: Vec<Arr>,
        mut comp: impl FnMut(Arr, Arr) -> Option<Arr>,
    ) -> Self {
        let mut objects = objects;
        let mut arrows = arrows;
        uniquify(&mut objects);
        let mut an: Vec<String> = arrows.iter().map(|a| a.name.clone()).collect();
        uniquify(&mut an);
        for (a, n) in arrows.iter_mut().zip(an) {
            a.name = n;
        }
        let n = objects.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut out_pos = vec![0; arrows.len()];
        let mut homs: HashMap<(Obj, Obj), Vec<Arr>> = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            out_pos[i] = out[a.src].len();
            out[a.src].push(i);
            inc[a.tgt].push(i);
            homs.entry((a.src, a.tgt)).or_default().push(i);
        }
        let table = arrows
            .iter()
            .enumerate()
            .map(|(f, a)| out[a.tgt].iter().map(|&g| comp(g, f).unwrap_or(NONE)).collect())
            .collect();
        FinCategory { objects, arrows, ids, out, inc, out_pos, table, homs }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn arrows(&self) -> std::ops::Range<Arr> {
        0..self.arrows.len()
    }

    pub fn object_name(&self, a: Obj) -> &str {
        &self.objects[a]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, f: Arr) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrow_name(&self, f: Arr) -> &str {
        &self.arrows[f].name
    }

    pub fn src(&self, f: Arr) -> Obj {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: Arr) -> Obj {
        self.arrows[f].tgt
    }

    pub fn id(&self, a: Obj) -> Arr {
        self.ids[a]
    }

    pub fn is_identity(&self, f: Arr) -> bool {
        self.ids[self.src(f)] == f
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Arr] {
        self.homs.get(&(a, b)).map_or(&[], |v| v.as_slice())
    }

    pub fn out(&self, a: Obj) -> &[Arr] {
        &self.out[a]
    }

    pub fn inc(&self, b: Obj) -> &[Arr] {
        &self.inc[b]
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_arrow(&self, name: &str) -> Option<Arr> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn try_compose(&self, g: Arr, f: Arr) -> Option<Arr> {
        if self.src(g) != self.tgt(f) {
            return None;
        }
        let h = self.table[f][self.out_pos[g]];
        (h != NONE).then_some(h)
    }

    /// `g ∘ f`; panics if undefined.
    pub fn compose(&self, g: Arr, f: Arr) -> Arr {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!("composite {}∘{} undefined", self.arrow_name(g), self.arrow_name(f))
        })
    }

    /// Composite of a path given in order of application.
    pub fn compose_path(&self, path: &[Arr]) -> Arr {
        let mut it = path.iter();
        let first = *it.next().expect("nonempty path");
        it.fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn inverse(&self, f: Arr) -> Option<Arr> {
        self.hom(self.tgt(f), self.src(f)).iter().copied().find(|&g| {
            self.compose(g, f) == self.id(self.src(f)) && self.compose(f, g) == self.id(self.tgt(f))
        })
    }

    pub fn is_iso(&self, f: Arr) -> bool {
        self.inverse(f).is_some()
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = Arr> + '_ {
        self.arrows().filter(move |&f| !self.is_identity(f))
    }

    /// At most one arrow between any two objects and no nontrivial cycles.
    pub fn is_poset(&self) -> bool {
        self.homs.values().all(|h| h.len() <= 1)
            && self.non_identity_arrows().all(|f| self.hom(self.tgt(f), self.src(f)).is_empty())
    }

    pub fn is_discrete(&self) -> bool {
        self.arrows().all(|f| self.is_identity(f))
    }

    pub fn has_nontrivial_isos(&self) -> bool {
        self.non_identity_arrows().any(|f| self.is_iso(f))
    }

    /// Connected components as a label per object.
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_objects();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(a) = stack.pop() {
                for &f in self.out(a).iter().chain(self.inc(a)) {
                    for b in [self.src(f), self.tgt(f)] {
                        if label[b] == usize::MAX {
                            label[b] = next;
                            stack.push(b);
                        }
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn num_components(&self) -> usize {
        self.components().iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Checks identities, totality of composition, unit laws and associativity.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for a in self.objects() {
            let i = self.ids.get(a).copied().unwrap_or(NONE);
            if i >= self.arrows.len() || self.src(i) != a || self.tgt(i) != a {
                return Err(Violation::BadIdentity { object: self.objects[a].clone() });
            }
        }
        for f in self.arrows() {
            for (k, &g) in self.out[self.tgt(f)].iter().enumerate() {
                let h = self.table[f][k];
                if h == NONE {
                    return Err(Violation::MissingComposite {
                        g: self.arrow_name(g).into(),
                        f: self.arrow_name(f).into(),
                    });
                }
                if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                    return Err(Violation::IllTypedComposite {
                        g: self.arrow_name(g).into(),
                        f: self.arrow_name(f).into(),
                        h: self.arrow_name(h).into(),
                    });
                }
            }
        }
        for f in self.arrows() {
            if self.compose(f, self.id(self.src(f))) != f || self.compose(self.id(self.tgt(f)), f) != f {
                return Err(Violation::Unit { f: self.arrow_name(f).into() });
            }
        }
        for f in self.arrows() {
            for &g in self.out(self.tgt(f)) {
                let gf = self.compose(g, f);
                for &h in self.out(self.tgt(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Violation::Associativity {
                            h: self.arrow_name(h).into(),
                            g: self.arrow_name(g).into(),
                            f: self.arrow_name(f).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check(&self) -> Result<()> {
        self.validate().map_err(|v| Error::Invariant(v.to_string()))
    }

    /// The opposite category; arrow and object numbering is preserved.
    pub fn op(&self) -> FinCategory {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), src: a.tgt, tgt: a.src })
            .collect();
        FinCategory::from_fn(self.objects.clone(), arrows, self.ids.clone(), |g, f| {
            self.try_compose(f, g)
        })
    }

    pub fn point() -> FinCategory {
        let mut b = CategoryBuilder::new();
        b.object("*");
        b.build()
    }

    pub fn empty() -> FinCategory {
        CategoryBuilder::new().build()
    }

    /// The ordinal `[n] = {0 < 1 < ... < n}`.
    pub fn ordinal(n: usize) -> FinCategory {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        FinCategory::poset(names, |a, b| a <= b)
    }

    /// A finite poset from a reflexive, transitive, antisymmetric relation.
    pub fn poset(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> FinCategory {
        let n = names.len();
        let mut arrows = Vec::new();
        let mut ids = vec![0; n];
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    if a == b {
                        ids[a] = arrows.len();
                    }
                    index.insert((a, b), arrows.len());
                    let name = if a == b { format!("id_{}", names[a]) } else { format!("{}<{}", names[a], names[b]) };
                    arrows.push(Arrow { name, src: a, tgt: b });
                }
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
        FinCategory::from_fn(names, arrows, ids, |g, f| index.get(&(ends[f].0, ends[g].1)).copied())
    }

    pub fn discrete(n: usize) -> FinCategory {
        FinCategory::poset((0..n).map(|i| i.to_string()).collect(), |a, b| a == b)
    }

    /// The contractible groupoid on `n` objects.
    pub fn indiscrete(n: usize) -> FinCategory {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut ids = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    ids[a] = arrows.len();
                }
                let name = if a == b { format!("id_{a}") } else { format!("{a}~{b}") };
                arrows.push(Arrow { name, src: a, tgt: b });
            }
        }
        FinCategory::from_fn(names, arrows, ids, |g, f| Some((f / n) * n + g % n))
    }

    /// One object with the given monoid; element 0 is the unit.
    pub fn monoid(elements: &[&str], mult: impl Fn(usize, usize) -> usize) -> FinCategory {
        let arrows = elements
            .iter()
            .map(|e| Arrow { name: e.to_string(), src: 0, tgt: 0 })
            .collect();
        FinCategory::from_fn(vec!["*".into()], arrows, vec![0], |g, f| Some(mult(g, f)))
    }

    /// Two objects with `k` parallel arrows `a -> b`.
    pub fn parallel(k: usize) -> FinCategory {
        let mut b = CategoryBuilder::new();
        let x = b.object("a");
        let y = b.object("b");
        for i in 0..k {
            b.arrow(&format!("f{i}"), x, y);
        }
        b.build()
    }

    pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
        let nd = d.num_objects();
        let ma = d.num_arrows();
        let objects = c
            .objects()
            .flat_map(|a| d.objects().map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", c.object_name(a), d.object_name(b)))
            .collect();
        let mut arrows = Vec::new();
        for f in c.arrows() {
            for g in d.arrows() {
                arrows.push(Arrow {
                    name: format!("({},{})", c.arrow_name(f), d.arrow_name(g)),
                    src: c.src(f) * nd + d.src(g),
                    tgt: c.tgt(f) * nd + d.tgt(g),
                });
            }
        }
        let ids = c
            .objects()
            .flat_map(|a| d.objects().map(move |b| (a, b)))
            .map(|(a, b)| c.id(a) * ma + d.id(b))
            .collect();
        FinCategory::from_fn(objects, arrows, ids, |g, f| {
            let u = c.try_compose(g / ma, f / ma)?;
            let v = d.try_compose(g % ma, f % ma)?;
            Some(u * ma + v)
        })
    }

    /// Disjoint union.
    pub fn coproduct(c: &FinCategory, d: &FinCategory) -> FinCategory {
        let (no, na) = (c.num_objects(), c.num_arrows());
        let mut objects: Vec<String> = c.objects.clone();
        objects.extend(d.objects.iter().cloned());
        let mut arrows = c.arrows.clone();
        arrows.extend(d.arrows.iter().map(|a| Arrow { name: a.name.clone(), src: a.src + no, tgt: a.tgt + no }));
        let mut ids = c.ids.clone();
        ids.extend(d.ids.iter().map(|&i| i + na));
        FinCategory::from_fn(objects, arrows, ids, |g, f| {
            if g < na && f < na {
                c.try_compose(g, f)
            } else if g >= na && f >= na {
                d.try_compose(g - na, f - na).map(|h| h + na)
            } else {
                None
            }
        })
    }

    /// Renumbers arrows: `order[k]` is the old id of the new arrow `k`.
    pub fn permute_arrows(&self, order: &[Arr]) -> FinCategory {
        let mut new_id = vec![0; order.len()];
        for (k, &old) in order.iter().enumerate() {
            new_id[old] = k;
        }
        let arrows = order.iter().map(|&o| self.arrows[o].clone()).collect();
        let ids = self.ids.iter().map(|&i| new_id[i]).collect();
        FinCategory::from_fn(self.objects.clone(), arrows, ids, |g, f| {
            self.try_compose(order[g], order[f]).map(|h| new_id[h])
        })
    }
}

/// Builds a category by naming objects, arrows and composites. Identities and
/// composites with identities are supplied automatically.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    ids: Vec<Arr>,
    comps: BTreeMap<(Arr, Arr), Arr>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> Obj {
        self.object_with_identity(name, &format!("id_{name}"))
    }

    pub fn object_with_identity(&mut self, name: &str, id_name: &str) -> Obj {
        let a = self.objects.len();
        self.objects.push(name.to_string());
        self.ids.push(self.arrows.len());
        self.arrows.push(Arrow { name: id_name.to_string(), src: a, tgt: a });
        a
    }

    pub fn arrow(&mut self, name: &str, src: Obj, tgt: Obj) -> Arr {
        self.arrows.push(Arrow { name: name.to_string(), src, tgt });
        self.arrows.len() - 1
    }

    /// Declares `g ∘ f = h`.
    pub fn compose(&mut self, g: Arr, f: Arr, h: Arr) -> &mut Self {
        self.comps.insert((g, f), h);
        self
    }

    pub fn obj(&self, name: &str) -> Obj {
        self.objects.iter().position(|o| o == name).unwrap_or_else(|| panic!("no object {name}"))
    }

    pub fn arr(&self, name: &str) -> Arr {
        self.arrows.iter().position(|a| a.name == name).unwrap_or_else(|| panic!("no arrow {name}"))
    }

    pub fn build(&self) -> FinCategory {
        let ids = self.ids.clone();
        let comps = self.comps.clone();
        let arrows = self.arrows.clone();
        FinCategory::from_fn(self.objects.clone(), self.arrows.clone(), self.ids.clone(), |g, f| {
            if ids[arrows[g].src] == g {
                Some(f)
            } else if ids[arrows[f].tgt] == f {
                Some(g)
            } else {
                comps.get(&(g, f)).copied()
            }
        })
    }
}

/// Shared handle used by functors.
pub type Cat = Arc<FinCategory>;

#[cfg(test)]
mod tests;
