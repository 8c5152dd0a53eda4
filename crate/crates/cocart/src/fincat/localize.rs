//! Localization by coset enumeration.
//!
//! For every source object `a` the representable `Hom(a, -)` of the localization is
//! enumerated as a right action of the generators (arrows of `C` and formal inverses
//! of `W`) subject to the composition relations and `w w⁻¹ = id`, `w⁻¹ w = id`.
//! Cosets are defined in breadth-first order, so representatives are length-least.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Arr, Arrow, Cat, FinCategory, Functor, Obj};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    Arrow(Arr),
    Inverse(Arr),
}

/// The localization together with the functor from the original category.
#[derive(Clone, Debug)]
pub struct Localization {
    pub category: Cat,
    pub functor: Functor,
    pub bound: usize,
}

#[derive(Clone, Debug)]
pub enum LocalizeOutcome {
    Finite(Localization),
    /// The bound was hit while `hom` kept acquiring new normal forms; `growth[k]` is
    /// the number of distinct normal forms of length `k` found there.
    Infinite { hom: (String, String), growth: Vec<usize>, bound: usize },
}

impl LocalizeOutcome {
    pub fn finite(&self) -> Option<&Localization> {
        match self {
            LocalizeOutcome::Finite(l) => Some(l),
            LocalizeOutcome::Infinite { .. } => None,
        }
    }
}

const UNDEF: usize = usize::MAX;

struct Presentation<'a> {
    c: &'a FinCategory,
    gens: Vec<(Gen, Obj, Obj)>,
    out: Vec<Vec<usize>>,
    local: Vec<usize>,
    relations: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
}

impl<'a> Presentation<'a> {
    fn new(c: &'a FinCategory, w: &BTreeSet<Arr>) -> Self {
        let mut gens = Vec::new();
        let mut gen_of_arrow = vec![UNDEF; c.num_arrows()];
        let mut inv_of_arrow = vec![UNDEF; c.num_arrows()];
        for f in c.non_identity_arrows() {
            gen_of_arrow[f] = gens.len();
            gens.push((Gen::Arrow(f), c.src(f), c.tgt(f)));
        }
        for &f in w {
            if !c.is_identity(f) {
                inv_of_arrow[f] = gens.len();
                gens.push((Gen::Inverse(f), c.tgt(f), c.src(f)));
            }
        }
        let mut out = vec![Vec::new(); c.num_objects()];
        let mut local = vec![0; gens.len()];
        for (g, &(_, s, _)) in gens.iter().enumerate() {
            local[g] = out[s].len();
            out[s].push(g);
        }
        let mut relations = vec![Vec::new(); c.num_objects()];
        for f in c.non_identity_arrows() {
            for &g in c.out(c.tgt(f)) {
                if c.is_identity(g) {
                    continue;
                }
                let h = c.compose(g, f);
                let rhs = if c.is_identity(h) { Vec::new() } else { vec![gen_of_arrow[h]] };
                relations[c.src(f)].push((vec![gen_of_arrow[f], gen_of_arrow[g]], rhs));
            }
        }
        for &f in w {
            if !c.is_identity(f) {
                let (a, b) = (gen_of_arrow[f], inv_of_arrow[f]);
                relations[c.src(f)].push((vec![a, b], Vec::new()));
                relations[c.tgt(f)].push((vec![b, a], Vec::new()));
            }
        }
        Presentation { c, gens, out, local, relations }
    }
}

struct Cosets<'p, 'a> {
    pres: &'p Presentation<'a>,
    obj: Vec<Obj>,
    len: Vec<usize>,
    word: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    bound: usize,
    limit: usize,
}

struct Overflow;

impl<'p, 'a> Cosets<'p, 'a> {
    fn new(pres: &'p Presentation<'a>, a: Obj, bound: usize, limit: usize) -> Self {
        let mut cs = Cosets {
            pres,
            obj: Vec::new(),
            len: Vec::new(),
            word: Vec::new(),
            table: Vec::new(),
            parent: Vec::new(),
            bound,
            limit,
        };
        cs.push(a, Vec::new());
        cs
    }

    fn push(&mut self, o: Obj, word: Vec<usize>) -> usize {
        let id = self.obj.len();
        self.obj.push(o);
        self.len.push(word.len());
        self.word.push(word);
        self.table.push(vec![UNDEF; self.pres.out[o].len()]);
        self.parent.push(id);
        id
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }

    fn live(&self, x: usize) -> bool {
        self.parent[x] == x
    }

    fn get(&mut self, x: usize, g: usize) -> usize {
        let v = self.table[x][self.pres.local[g]];
        if v == UNDEF {
            UNDEF
        } else {
            self.find(v)
        }
    }

    fn define(&mut self, x: usize, g: usize) -> Result<usize, Overflow> {
        if self.len[x] + 1 > self.bound || self.obj.len() >= self.limit {
            return Err(Overflow);
        }
        let mut w = self.word[x].clone();
        w.push(g);
        let y = self.push(self.pres.gens[g].2, w);
        let l = self.pres.local[g];
        self.table[x][l] = y;
        Ok(y)
    }

    fn trace(&mut self, x: usize, path: &[usize], define: bool) -> Result<Option<usize>, Overflow> {
        let mut cur = self.find(x);
        for &g in path {
            let mut nxt = self.get(cur, g);
            if nxt == UNDEF {
                if !define {
                    return Ok(None);
                }
                nxt = self.define(cur, g)?;
            }
            cur = nxt;
        }
        Ok(Some(cur))
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (keep, drop) = if x < y { (x, y) } else { (y, x) };
            self.parent[drop] = keep;
            for l in 0..self.table[drop].len() {
                let t = self.table[drop][l];
                if t == UNDEF {
                    continue;
                }
                let k = self.table[keep][l];
                if k == UNDEF {
                    self.table[keep][l] = t;
                } else {
                    queue.push((k, t));
                }
            }
        }
    }

    /// Runs until every live coset has a full row and satisfies every relation.
    fn run(&mut self) -> Result<(), Overflow> {
        for _ in 0..64 {
            let mut x = 0;
            while x < self.obj.len() {
                if self.live(x) {
                    let o = self.obj[x];
                    for r in 0..self.pres.relations[o].len() {
                        if !self.live(x) {
                            break;
                        }
                        let (u, v) = self.pres.relations[o][r].clone();
                        let e1 = self.trace(x, &u, true)?.expect("defined");
                        let e2 = self.trace(x, &v, true)?.expect("defined");
                        if self.find(e1) != self.find(e2) {
                            self.coincidence(e1, e2);
                        }
                    }
                    if self.live(x) {
                        for &g in &self.pres.out[o].clone() {
                            if self.get(x, g) == UNDEF {
                                self.define(x, g)?;
                            }
                        }
                    }
                }
                x += 1;
            }
            if self.closed() {
                return Ok(());
            }
        }
        Err(Overflow)
    }

    fn closed(&mut self) -> bool {
        for x in 0..self.obj.len() {
            if !self.live(x) {
                continue;
            }
            let o = self.obj[x];
            for &g in &self.pres.out[o] {
                if self.get(x, g) == UNDEF {
                    return false;
                }
            }
            for r in 0..self.pres.relations[o].len() {
                let (u, v) = self.pres.relations[o][r].clone();
                let e1 = self.trace(x, &u, false).ok().flatten();
                let e2 = self.trace(x, &v, false).ok().flatten();
                match (e1, e2) {
                    (Some(p), Some(q)) if self.find(p) == self.find(q) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn live_cosets(&self) -> Vec<usize> {
        (0..self.obj.len()).filter(|&x| self.live(x)).collect()
    }
}

/// Maximum number of cosets per source object before giving up.
const COSET_LIMIT: usize = 200_000;

/// The localization `C[W⁻¹]`, or a report that the word-length bound was exceeded.
pub fn localize(c: &Cat, w: &BTreeSet<Arr>, bound: usize) -> LocalizeOutcome {
    let pres = Presentation::new(c, w);
    let mut tables = Vec::new();
    for a in c.objects() {
        let mut cs = Cosets::new(&pres, a, bound, COSET_LIMIT);
        if cs.run().is_err() {
            // report the target object with the most live normal forms
            let live = cs.live_cosets();
            let mut best = (0, 0usize);
            for b in c.objects() {
                let n = live.iter().filter(|&&x| cs.obj[x] == b).count();
                if n > best.1 {
                    best = (b, n);
                }
            }
            let mut growth = vec![0; bound + 1];
            for &x in &live {
                if cs.obj[x] == best.0 && cs.len[x] <= bound {
                    growth[cs.len[x]] += 1;
                }
            }
            return LocalizeOutcome::Infinite {
                hom: (c.object_name(a).to_string(), c.object_name(best.0).to_string()),
                growth,
                bound,
            };
        }
        tables.push(cs);
    }
    LocalizeOutcome::Finite(assemble(c, &pres, &mut tables, bound))
}

fn word_name(pres: &Presentation<'_>, word: &[usize], a: Obj) -> String {
    let c = pres.c;
    if word.is_empty() {
        return format!("id_{}", c.object_name(a));
    }
    let parts: Vec<String> = word
        .iter()
        .rev()
        .map(|&g| match pres.gens[g].0 {
            Gen::Arrow(f) => c.arrow_name(f).to_string(),
            Gen::Inverse(f) => format!("{}⁻¹", c.arrow_name(f)),
        })
        .collect();
    parts.join("∘")
}

fn assemble(c: &Cat, pres: &Presentation<'_>, tables: &mut [Cosets<'_, '_>], bound: usize) -> Localization {
    // arrow ids: for each source a, its live cosets in creation order
    let mut arrows = Vec::new();
    let mut arrow_of: Vec<Vec<usize>> = Vec::new();
    let mut ids = Vec::new();
    for (a, cs) in tables.iter().enumerate() {
        let mut m = vec![UNDEF; cs.obj.len()];
        for x in cs.live_cosets() {
            if x == 0 {
                ids.push(arrows.len());
            }
            m[x] = arrows.len();
            arrows.push(Arrow { name: word_name(pres, &cs.word[x], a), src: a, tgt: cs.obj[x] });
        }
        arrow_of.push(m);
    }
    let mut coset_of_arrow = vec![(0, 0); arrows.len()];
    for (a, m) in arrow_of.iter().enumerate() {
        for (x, &id) in m.iter().enumerate() {
            if id != UNDEF {
                coset_of_arrow[id] = (a, x);
            }
        }
    }
    let mut comp = std::collections::HashMap::new();
    for f in 0..arrows.len() {
        let (a, x) = coset_of_arrow[f];
        let b = arrows[f].tgt;
        for g in 0..arrows.len() {
            if arrows[g].src != b {
                continue;
            }
            let (_, y) = coset_of_arrow[g];
            let word = tables[b].word[y].clone();
            let end = tables[a].trace(x, &word, false).ok().flatten().expect("complete table");
            let end = tables[a].find(end);
            comp.insert((g, f), arrow_of[a][end]);
        }
    }
    let category = Arc::new(FinCategory::from_fn(
        c.object_names().to_vec(),
        arrows,
        ids.clone(),
        |g, f| comp.get(&(g, f)).copied(),
    ));
    let mut fmap = Vec::with_capacity(c.num_arrows());
    for f in c.arrows() {
        let a = c.src(f);
        if c.is_identity(f) {
            fmap.push(ids[a]);
        } else {
            let g = pres.out[a].iter().copied().find(|&g| pres.gens[g].0 == Gen::Arrow(f)).expect("generator");
            let x = tables[a].get(0, g);
            fmap.push(arrow_of[a][x]);
        }
    }
    let functor = Functor { source: c.clone(), target: category.clone(), objects: c.objects().collect(), arrows: fmap };
    Localization { category, functor, bound }
}
