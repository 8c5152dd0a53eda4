//! Necklaces `Δ^{n₀} ∨ ⋯ ∨ Δ^{n_k}` mapping into a finite simplicial set between two
//! vertices, the category they span, and its components.
//!
//! Components are computed on a finite piece of the necklace category, cut off by
//! bead dimension and bead count. With `nondeg_only`, only necklaces whose beads hit
//! nondegenerate simplices are kept. Every necklace map has a quotient morphism onto
//! its bead-wise nondegenerate normalization (see [`normalize`]), which is what makes
//! the restriction plausible; the tests check the quotient morphisms exist.

mod appendix;
#[cfg(test)]
mod tests;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{Arrow, Cat, FinCategory, Obj, DEFAULT_GUARD};
use crate::simplicial::{ordinal, Cell, DegenerateRef, FinSimplicialSet, SimplexTable, SimplicialMap};
use crate::{Error, Result};

pub use appendix::{
    appendix_battery, appendix_checks, delta_leq, glue_k, standard_k, AppendixReport, Battery, KModel,
};

/// Bead dimensions; `[0]` is the point necklace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Necklace {
    pub beads: Vec<usize>,
}

impl Necklace {
    pub fn new(beads: Vec<usize>) -> Result<Self> {
        let ok = beads == [0] || (!beads.is_empty() && beads.iter().all(|&n| n >= 1));
        if !ok {
            return Err(Error::InvalidParams(format!("bead dimensions {beads:?}")));
        }
        Ok(Necklace { beads })
    }

    pub fn point() -> Self {
        Necklace { beads: vec![0] }
    }

    pub fn is_point(&self) -> bool {
        self.beads == [0]
    }

    /// Index of the final vertex; vertices are numbered `0..=last`.
    pub fn last(&self) -> usize {
        self.beads.iter().sum()
    }

    /// First vertex of every bead.
    pub fn starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.beads.len());
        let mut at = 0;
        for &n in &self.beads {
            out.push(at);
            at += n;
        }
        out
    }

    /// As a simplicial set: the simplices of `Δ^{last}` lying inside one bead.
    pub fn simplicial_set(&self) -> FinSimplicialSet {
        let mut sets = BTreeSet::new();
        for (&a, &n) in self.starts().iter().zip(&self.beads) {
            for mask in 1u64..(1u64 << (n + 1)) {
                sets.insert((0..=n).filter(|&i| mask >> i & 1 == 1).map(|i| a + i).collect::<Vec<_>>());
            }
        }
        crate::simplicial::shapes_from_vertex_sets(sets.into_iter().collect())
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.beads.iter().map(|n| format!("Δ{n}")).collect();
        write!(f, "{}", parts.join("∨"))
    }
}

/// A necklace with a simplex of the target for each bead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecklaceMap {
    pub necklace: Necklace,
    pub target: Arc<FinSimplicialSet>,
    pub simplices: Vec<DegenerateRef>,
    pub source: Cell,
    pub sink: Cell,
}

impl NecklaceMap {
    pub fn new(target: Arc<FinSimplicialSet>, simplices: Vec<DegenerateRef>) -> Result<Self> {
        let necklace = Necklace::new(simplices.iter().map(|x| x.dim()).collect())?;
        for w in simplices.windows(2) {
            if target.last_vertex(&w[0]) != target.first_vertex(&w[1]) {
                return Err(Error::InvalidParams("consecutive beads do not meet".into()));
            }
        }
        let source = target.first_vertex(&simplices[0]);
        let sink = target.last_vertex(simplices.last().expect("nonempty"));
        Ok(NecklaceMap { necklace, target, simplices, source, sink })
    }

    /// Image of every vertex of the necklace.
    pub fn vertices(&self) -> Vec<Cell> {
        let mut out = vec![self.source];
        for x in &self.simplices {
            out.extend(self.target.vertices(x).into_iter().skip(1));
        }
        out
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.simplices.iter().all(|x| !x.is_degenerate())
    }

    /// Every vertex lands on `v`.
    pub fn is_constant_at(&self, v: Cell) -> bool {
        self.vertices().iter().all(|&w| w == v)
    }

    pub fn name(&self) -> String {
        let parts: Vec<String> = self.simplices.iter().map(|x| self.target.ref_name(x)).collect();
        parts.join(" ∨ ")
    }

    /// The simplicial map from [`Necklace::simplicial_set`].
    pub fn to_map(&self) -> Result<SimplicialMap> {
        let source = Arc::new(self.necklace.simplicial_set());
        let starts = self.necklace.starts();
        let bead_of = |vs: &[usize]| -> (usize, Vec<usize>) {
            let k = (0..starts.len())
                .rev()
                .find(|&k| starts[k] <= vs[0] && vs.iter().all(|&v| v <= starts[k] + self.necklace.beads[k]))
                .expect("simplex inside a bead");
            (k, vs.iter().map(|&v| v - starts[k]).collect())
        };
        let mut assignment = Vec::new();
        for n in 0..=source.top() {
            let mut level = Vec::new();
            for c in source.cells(n) {
                let vs = crate::simplicial::parse_vertex_name(source.name(c));
                let (k, theta) = bead_of(&vs);
                level.push(self.target.apply(&self.simplices[k], &theta));
            }
            assignment.push(level);
        }
        SimplicialMap::new(source, self.target.clone(), assignment)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NecklaceOpts {
    pub nondeg_only: bool,
    pub max_dim: usize,
    pub max_beads: usize,
}

impl Default for NecklaceOpts {
    fn default() -> Self {
        NecklaceOpts { nondeg_only: true, max_dim: 2, max_beads: 3 }
    }
}

/// Necklace maps from `s` to `t` within the bounds. The point necklace is listed
/// first when `s == t`.
pub fn enumerate(s_set: &Arc<FinSimplicialSet>, s: Cell, t: Cell, opts: NecklaceOpts) -> Vec<NecklaceMap> {
    let mut out = Vec::new();
    if s.dim != 0 || t.dim != 0 || s.index >= s_set.count(0) || t.index >= s_set.count(0) {
        return out;
    }
    if s == t {
        out.push(NecklaceMap {
            necklace: Necklace::point(),
            target: s_set.clone(),
            simplices: vec![DegenerateRef::nondeg(s)],
            source: s,
            sink: t,
        });
    }
    if opts.max_beads == 0 || opts.max_dim == 0 {
        return out;
    }
    // simplices of positive dimension, grouped by first vertex
    let table = SimplexTable::new(s_set, opts.max_dim);
    let mut from: Vec<Vec<(DegenerateRef, Cell)>> = vec![Vec::new(); s_set.count(0)];
    for n in 1..=opts.max_dim {
        for x in table.level(n) {
            if opts.nondeg_only && x.is_degenerate() {
                continue;
            }
            from[s_set.first_vertex(x).index].push((x.clone(), s_set.last_vertex(x)));
        }
    }
    let partitions: Vec<Vec<NecklaceMap>> = std::thread::scope(|sc| {
        let handles: Vec<_> = (1..=opts.max_beads)
            .map(|beads| {
                let from = &from;
                sc.spawn(move || {
                    let mut found = Vec::new();
                    let mut cur = Vec::new();
                    walk(s_set, from, s, t, beads, &mut cur, &mut found);
                    found
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("necklace worker")).collect()
    });
    out.extend(partitions.into_iter().flatten());
    out
}

fn walk(
    s_set: &Arc<FinSimplicialSet>,
    from: &[Vec<(DegenerateRef, Cell)>],
    at: Cell,
    t: Cell,
    beads: usize,
    cur: &mut Vec<DegenerateRef>,
    out: &mut Vec<NecklaceMap>,
) {
    if cur.len() == beads {
        if at == t {
            out.push(NecklaceMap {
                necklace: Necklace { beads: cur.iter().map(|x| x.dim()).collect() },
                target: s_set.clone(),
                simplices: cur.clone(),
                source: s_set.first_vertex(&cur[0]),
                sink: t,
            });
        }
        return;
    }
    for (x, end) in &from[at.index] {
        cur.push(x.clone());
        walk(s_set, from, *end, t, beads, cur, out);
        cur.pop();
    }
}

/// Vertex maps of the bipointed maps `a -> b` over the target.
pub fn necklace_maps(a: &NecklaceMap, b: &NecklaceMap) -> Vec<Vec<usize>> {
    let (na, nb) = (&a.necklace, &b.necklace);
    let starts_b = nb.starts();
    let dims_a: Vec<usize> = if na.is_point() { vec![0] } else { na.beads.clone() };
    let mut out = BTreeSet::new();
    let mut phi = vec![0usize];
    fn go(
        i: usize,
        a: &NecklaceMap,
        b: &NecklaceMap,
        dims_a: &[usize],
        starts_b: &[usize],
        phi: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if i == dims_a.len() {
            if *phi.last().expect("vertex") == b.necklace.last() {
                out.insert(phi.clone());
            }
            return;
        }
        let p = *phi.last().expect("vertex");
        let n = dims_a[i];
        for (k, &start) in starts_b.iter().enumerate() {
            let m = b.necklace.beads[k];
            if p < start || p > start + m {
                continue;
            }
            for theta in ordinal::monotone_maps(n, m) {
                if theta[0] != p - start {
                    continue;
                }
                if b.target.apply(&b.simplices[k], &theta) != a.simplices[i] {
                    continue;
                }
                let before = phi.len();
                if n == 0 {
                    // the point necklace: its vertex is both ends
                } else {
                    phi.extend(theta[1..].iter().map(|&v| start + v));
                }
                go(i + 1, a, b, dims_a, starts_b, phi, out);
                phi.truncate(before);
            }
        }
    }
    go(0, a, b, &dims_a, &starts_b, &mut phi, &mut out);
    out.into_iter().collect()
}

/// The finite necklace category with its objects and the vertex map of every arrow.
#[derive(Clone, Debug)]
pub struct NecklaceCategory {
    pub category: Cat,
    pub objects: Vec<NecklaceMap>,
    pub vertex_maps: Vec<Vec<usize>>,
}

impl NecklaceCategory {
    pub fn arrow_with(&self, src: Obj, tgt: Obj, vmap: &[usize]) -> Option<usize> {
        self.category.hom(src, tgt).iter().copied().find(|&f| self.vertex_maps[f] == vmap)
    }

    pub fn pi0(&self) -> usize {
        self.category.num_components()
    }
}

pub fn necklace_category(
    s_set: &Arc<FinSimplicialSet>,
    s: Cell,
    t: Cell,
    opts: NecklaceOpts,
    guard: usize,
) -> Result<NecklaceCategory> {
    let objects = enumerate(s_set, s, t, opts);
    category_on(objects, guard)
}

pub(crate) fn category_on(objects: Vec<NecklaceMap>, guard: usize) -> Result<NecklaceCategory> {
    let n = objects.len();
    let supports: Vec<BTreeSet<Cell>> = objects.iter().map(|o| o.vertices().into_iter().collect()).collect();
    let rows: Vec<Vec<(Obj, Vec<usize>)>> = if n >= 64 {
        let jobs = std::thread::available_parallelism().map(|j| j.get()).unwrap_or(1);
        let chunk = n.div_ceil(jobs);
        let (objects, supports) = (&objects, &supports);
        std::thread::scope(|sc| {
            let handles: Vec<_> = (0..n)
                .step_by(chunk)
                .map(|lo| sc.spawn(move || (lo..(lo + chunk).min(n)).map(|i| row(objects, supports, i)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("hom worker")).collect()
        })
    } else {
        (0..n).map(|i| row(&objects, &supports, i)).collect()
    };
    let total: usize = rows.iter().map(|r| r.len()).sum();
    if total > guard {
        return Err(Error::SizeGuard { what: "necklace category arrows".into(), limit: guard });
    }
    let mut arrows = Vec::with_capacity(total);
    let mut vertex_maps = Vec::with_capacity(total);
    let mut ids = vec![0; n];
    let mut index: HashMap<(Obj, Obj, Vec<usize>), usize> = HashMap::new();
    for (i, r) in rows.into_iter().enumerate() {
        for (j, vmap) in r {
            let id = i == j && vmap.iter().enumerate().all(|(k, &v)| k == v);
            if id {
                ids[i] = arrows.len();
            }
            let name = if id {
                format!("id{i}")
            } else {
                format!("{i}>{j}:{}", vmap.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("."))
            };
            index.insert((i, j, vmap.clone()), arrows.len());
            arrows.push(Arrow { name, src: i, tgt: j });
            vertex_maps.push(vmap);
        }
    }
    let names = objects.iter().map(|o| o.name()).collect();
    let vm = &vertex_maps;
    let category = FinCategory::from_fn(names, arrows.clone(), ids, |g, f| {
        let v: Vec<usize> = vm[f].iter().map(|&x| vm[g][x]).collect();
        index.get(&(arrows[f].src, arrows[g].tgt, v)).copied()
    });
    category.check()?;
    Ok(NecklaceCategory { category: Arc::new(category), objects, vertex_maps })
}

fn row(objects: &[NecklaceMap], supports: &[BTreeSet<Cell>], i: usize) -> Vec<(Obj, Vec<usize>)> {
    let mut out = Vec::new();
    for (j, b) in objects.iter().enumerate() {
        // every vertex of the source is hit by the target
        if !supports[i].is_subset(&supports[j]) {
            continue;
        }
        for vmap in necklace_maps(&objects[i], b) {
            out.push((j, vmap));
        }
    }
    out
}

pub fn pi0_mapping_space(s_set: &Arc<FinSimplicialSet>, s: Cell, t: Cell, opts: NecklaceOpts) -> Result<usize> {
    Ok(necklace_category(s_set, s, t, opts, DEFAULT_GUARD)?.pi0())
}

/// The bead-wise nondegenerate quotient of a necklace map and the vertex map of the
/// quotient morphism onto it. Beads hitting a vertex collapse away.
pub fn normalize(m: &NecklaceMap) -> (NecklaceMap, Vec<usize>) {
    if m.necklace.is_point() {
        return (m.clone(), vec![0]);
    }
    let mut simplices = Vec::new();
    let mut vmap = vec![0];
    let mut at = 0;
    for x in &m.simplices {
        let rho = x.surjection();
        vmap.extend(rho[1..].iter().map(|&r| at + r));
        if x.base.dim > 0 {
            simplices.push(DegenerateRef::nondeg(x.base));
            at += x.base.dim;
        }
    }
    let q = if simplices.is_empty() {
        NecklaceMap {
            necklace: Necklace::point(),
            target: m.target.clone(),
            simplices: vec![DegenerateRef::nondeg(m.source)],
            source: m.source,
            sink: m.sink,
        }
    } else {
        NecklaceMap::new(m.target.clone(), simplices).expect("normalized beads meet")
    };
    (q, vmap)
}
