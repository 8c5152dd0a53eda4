//! Seeded generators for small test instances: functors over poset bases, diagrams
//! over posets, and fibrations over `[1]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{Arrow, Cat, FinCategory, Functor, Obj};
use crate::grothendieck::{unstraighten, Diagram};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// A named instance.
#[derive(Clone, Debug)]
pub struct Item<T> {
    pub name: String,
    pub value: T,
}

fn item<T>(name: String, value: T) -> Item<T> {
    Item { name, value }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random partial order on `n` elements refining the index order.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> FinCategory {
    let mut lt = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            lt[i][j] = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    FinCategory::poset((0..n).map(|i| i.to_string()).collect(), |a, b| a == b || lt[a][b])
}

/// Free category on a random acyclic multigraph; `None` when it has more than `max_arrows`.
pub fn random_free_category(rng: &mut impl Rng, n: usize, edges: usize, max_arrows: usize) -> Option<FinCategory> {
    if n < 2 {
        return None;
    }
    let mut gens: Vec<(Obj, Obj)> = Vec::new();
    for _ in 0..edges {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        gens.push((a, b));
    }
    gens.sort();
    // paths as generator sequences, built by length
    let mut paths: Vec<Vec<usize>> = (0..gens.len()).map(|g| vec![g]).collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = gens[*p.last().expect("path")].1;
            for (g, &(s, _)) in gens.iter().enumerate() {
                if s == end {
                    let mut q = p.clone();
                    q.push(g);
                    next.push(q);
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
        if paths.len() + n > max_arrows {
            return None;
        }
    }
    let mut arrows: Vec<Arrow> = (0..n).map(|o| Arrow { name: format!("id{o}"), src: o, tgt: o }).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in &paths {
        let (s, t) = (gens[p[0]].0, gens[*p.last().expect("path")].1);
        let name = p.iter().map(|g| format!("e{g}")).collect::<Vec<_>>().join(";");
        index.insert(p.clone(), arrows.len());
        arrows.push(Arrow { name, src: s, tgt: t });
        words.push(p.clone());
    }
    let ids: Vec<usize> = (0..n).collect();
    let c = FinCategory::from_fn((0..n).map(|o| o.to_string()).collect(), arrows, ids, |g, f| {
        if g < n {
            return Some(f);
        }
        if f < n {
            return Some(g);
        }
        let mut w = words[f].clone();
        w.extend_from_slice(&words[g]);
        index.get(&w).copied()
    });
    c.check().ok()?;
    Some(c)
}

/// A random object map `c -> d` (thin target) that respects every arrow.
pub fn random_monotone(rng: &mut impl Rng, c: &FinCategory, d: &FinCategory, tries: usize) -> Option<Vec<Obj>> {
    for _ in 0..tries {
        let m: Vec<Obj> = c.objects().map(|_| rng.gen_range(0..d.num_objects())).collect();
        if c.arrows().all(|f| !d.hom(m[c.src(f)], m[c.tgt(f)]).is_empty()) {
            return Some(m);
        }
    }
    None
}

/// Pairs `a < b` of a poset with nothing strictly between.
pub fn hasse_edges(c: &FinCategory) -> Vec<(Obj, Obj)> {
    let below = |a, b| a != b && !c.hom(a, b).is_empty();
    let mut out = Vec::new();
    for a in c.objects() {
        for b in c.objects() {
            if below(a, b) && !c.objects().any(|m| below(a, m) && below(m, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Chooses maps along Hasse edges and composes them; `None` when two chains disagree.
fn diagram_from_hasse(
    rng: &mut impl Rng,
    shape: &Cat,
    values: Vec<Cat>,
    tries: usize,
) -> Option<Diagram> {
    let mut edge_map: BTreeMap<(Obj, Obj), Vec<Obj>> = BTreeMap::new();
    for (a, b) in hasse_edges(shape) {
        edge_map.insert((a, b), random_monotone(rng, &values[a], &values[b], tries)?);
    }
    // object map along every chain from a to b, all chains agreeing
    fn along(
        shape: &FinCategory,
        values: &[Cat],
        edges: &BTreeMap<(Obj, Obj), Vec<Obj>>,
        memo: &mut BTreeMap<(Obj, Obj), Option<Vec<Obj>>>,
        a: Obj,
        b: Obj,
    ) -> Option<Vec<Obj>> {
        if a == b {
            return Some(values[a].objects().collect());
        }
        if let Some(m) = memo.get(&(a, b)) {
            return m.clone();
        }
        let mut result: Option<Vec<Obj>> = None;
        let mut ok = true;
        for (&(x, y), m) in edges.range((a, 0)..(a + 1, 0)) {
            debug_assert_eq!(x, a);
            if shape.hom(y, b).is_empty() {
                continue;
            }
            let Some(rest) = along(shape, values, edges, memo, y, b) else {
                ok = false;
                break;
            };
            let composed: Vec<Obj> = m.iter().map(|&o| rest[o]).collect();
            match &result {
                Some(r) if *r != composed => {
                    ok = false;
                    break;
                }
                _ => result = Some(composed),
            }
        }
        let out = if ok { result } else { None };
        memo.insert((a, b), out.clone());
        out
    }
    let mut memo = BTreeMap::new();
    let mut maps: BTreeMap<(Obj, Obj), Vec<Obj>> = BTreeMap::new();
    for f in shape.arrows() {
        let (a, b) = (shape.src(f), shape.tgt(f));
        maps.insert((a, b), along(shape, &values, &edge_map, &mut memo, a, b)?);
    }
    let actions = shape
        .arrows()
        .map(|f| {
            let (s, t) = (shape.src(f), shape.tgt(f));
            Functor::from_objects(values[s].clone(), values[t].clone(), maps[&(s, t)].clone()).ok()
        })
        .collect::<Option<Vec<_>>>()?;
    Diagram::new(shape.clone(), values, actions).ok()
}

/// Diagrams over posets with at most `max_shape` objects and discrete values.
pub fn discrete_diagrams(seed: u64, count: usize, max_shape: usize) -> Vec<Item<Diagram>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut attempt = 0;
    while out.len() < count {
        attempt += 1;
        let n = r.gen_range(1..=max_shape);
        let shape: Cat = Arc::new(random_poset(&mut r, n, 0.6));
        let values: Vec<Cat> = (0..n).map(|_| Arc::new(FinCategory::discrete(r.gen_range(1..=3)))).collect();
        if let Some(d) = diagram_from_hasse(&mut r, &shape, values, 20) {
            out.push(item(format!("discrete-{attempt:03}"), d));
        }
    }
    out
}

/// Diagrams over posets with small poset values, at most `max_total` elements in all.
pub fn poset_diagrams(seed: u64, count: usize, max_shape: usize, max_total: usize) -> Vec<Item<Diagram>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut attempt = 0;
    while out.len() < count {
        attempt += 1;
        let n = r.gen_range(1..=max_shape);
        let shape: Cat = Arc::new(random_poset(&mut r, n, 0.6));
        let sizes: Vec<usize> = (0..n).map(|_| r.gen_range(1..=3)).collect();
        if sizes.iter().sum::<usize>() > max_total {
            continue;
        }
        let values: Vec<Cat> = sizes.iter().map(|&k| Arc::new(random_poset(&mut r, k, 0.5))).collect();
        if let Some(d) = diagram_from_hasse(&mut r, &shape, values, 20) {
            out.push(item(format!("posets-{attempt:03}"), d));
        }
    }
    out
}

/// Functors with at most 5 objects upstairs over posets with at most 4, none with
/// non-identity isomorphisms: poset maps, free categories on acyclic graphs, and
/// unstraightenings of poset-valued diagrams.
pub fn functors(seed: u64, count: usize) -> Vec<Item<Functor>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut attempt = 0;
    while out.len() < count {
        attempt += 1;
        let kind = attempt % 3;
        let nb = r.gen_range(1..=4);
        let base = random_poset(&mut r, nb, 0.6);
        let p = match kind {
            0 => {
                let k = r.gen_range(1..=5);
                let total = random_poset(&mut r, k, 0.5);
                random_monotone(&mut r, &total, &base, 50)
                    .and_then(|m| Functor::from_objects(Arc::new(total), Arc::new(base), m).ok())
            }
            1 => {
                let (n, e) = (r.gen_range(2..=5), r.gen_range(1..=5));
                random_free_category(&mut r, n, e, 40).and_then(|total| {
                    random_monotone(&mut r, &total, &base, 50)
                        .and_then(|m| Functor::from_objects(Arc::new(total), Arc::new(base), m).ok())
                })
            }
            _ => {
                let shape: Cat = Arc::new(base);
                let sizes: Vec<usize> = (0..nb).map(|_| r.gen_range(1..=2)).collect();
                if sizes.iter().sum::<usize>() > 5 {
                    continue;
                }
                let values = sizes.iter().map(|&k| Arc::new(random_poset(&mut r, k, 0.5))).collect();
                diagram_from_hasse(&mut r, &shape, values, 20)
                    .and_then(|d| unstraighten(&d).ok())
                    .map(|u| u.fibration.p.clone())
            }
        };
        if let Some(p) = p {
            if p.source.num_objects() <= 5 && !p.source.has_nontrivial_isos() {
                out.push(item(format!("functor-{attempt:03}"), p));
            }
        }
    }
    out
}

/// Functors over `[1]`: unstraightenings of random maps of small posets, poset maps
/// and free categories; not all are fibrations.
pub fn over_interval(seed: u64, count: usize) -> Vec<Item<Functor>> {
    let mut r = rng(seed);
    let base = Arc::new(FinCategory::ordinal(1));
    let mut out = Vec::new();
    let mut attempt = 0;
    while out.len() < count {
        attempt += 1;
        let p = match attempt % 3 {
            0 => {
                let (a, b) = (r.gen_range(1..=3), r.gen_range(1..=3));
                let values = vec![Arc::new(random_poset(&mut r, a, 0.5)), Arc::new(random_poset(&mut r, b, 0.5))];
                diagram_from_hasse(&mut r, &(base.clone() as Cat), values, 20)
                    .and_then(|d| unstraighten(&d).ok())
                    .map(|u| u.fibration.p.clone())
            }
            1 => {
                let k = r.gen_range(2..=5);
                let total = random_poset(&mut r, k, 0.5);
                random_monotone(&mut r, &total, &base, 50)
                    .and_then(|m| Functor::from_objects(Arc::new(total), base.clone(), m).ok())
            }
            _ => {
                let (n, e) = (r.gen_range(2..=4), r.gen_range(1..=4));
                random_free_category(&mut r, n, e, 30).and_then(|total| {
                random_monotone(&mut r, &total, &base, 50)
                    .and_then(|m| Functor::from_objects(Arc::new(total), base.clone(), m).ok())
                })
            }
        };
        if let Some(p) = p {
            out.push(item(format!("interval-{attempt:03}"), p));
        }
    }
    out
}

/// Shuffled copy, for order-independence checks.
pub fn shuffled<T: Clone>(items: &[T], seed: u64) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(&mut rng(seed));
    v
}
