//! Lifting problems, right lifting properties and pushout-products.
//!
//! Plain simplicial maps go through the same engine with flat markings.

use std::sync::Arc;

use crate::marked::{marked_product, marked_pushout, Marked, MarkedMap, MarkedSimplicialSet};
use crate::simplicial::{Cell, DegenerateRef, MapSearch, SearchOutcome, SimplexTable, SimplicialMap};
use crate::{Error, Result};

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// ```text
///   A --top--> X
///   |          |
///   i          p
///   v          v
///   B -bottom-> Y
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingSquare {
    pub i: MarkedMap,
    pub p: MarkedMap,
    pub top: MarkedMap,
    pub bottom: MarkedMap,
}

impl LiftingSquare {
    pub fn new(i: MarkedMap, p: MarkedMap, top: MarkedMap, bottom: MarkedMap) -> Result<Self> {
        let sq = LiftingSquare { i, p, top, bottom };
        sq.check()?;
        Ok(sq)
    }

    /// A square of plain simplicial sets, marked flat.
    pub fn plain(i: &SimplicialMap, p: &SimplicialMap, top: &SimplicialMap, bottom: &SimplicialMap) -> Result<Self> {
        let fl = |x: &Arc<crate::simplicial::FinSimplicialSet>| Arc::new(MarkedSimplicialSet::flat(x));
        let (a, b, x, y) = (fl(&i.source), fl(&i.target), fl(&p.source), fl(&p.target));
        Self::new(
            MarkedMap { source: a.clone(), target: b.clone(), map: i.clone() },
            MarkedMap { source: x.clone(), target: y.clone(), map: p.clone() },
            MarkedMap { source: a, target: x, map: top.clone() },
            MarkedMap { source: b, target: y, map: bottom.clone() },
        )
    }

    pub fn check(&self) -> Result<()> {
        for m in [&self.i, &self.p, &self.top, &self.bottom] {
            m.check()?;
        }
        let ends_ok = self.i.source == self.top.source
            && self.i.target == self.bottom.source
            && self.p.source == self.top.target
            && self.p.target == self.bottom.target;
        if !ends_ok {
            return Err(Error::SquareDoesNotCommute("the four maps do not form a square".into()));
        }
        if self.top.map.then(&self.p.map).assignment != self.i.map.then(&self.bottom.map).assignment {
            return Err(Error::SquareDoesNotCommute("p∘top ≠ bottom∘i".into()));
        }
        Ok(())
    }

    /// Whether `h: B -> X` is a diagonal filler.
    pub fn is_filler(&self, h: &MarkedMap) -> bool {
        h.check().is_ok()
            && self.i.map.then(&h.map).assignment == self.top.map.assignment
            && h.map.then(&self.p.map).assignment == self.bottom.map.assignment
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fillers {
    Complete(Vec<MarkedMap>),
    /// The budget ran out; `found` lists the fillers seen so far.
    BudgetExceeded { found: Vec<MarkedMap>, nodes: u64 },
}

impl Fillers {
    pub fn found(&self) -> &[MarkedMap] {
        match self {
            Fillers::Complete(v) => v,
            Fillers::BudgetExceeded { found, .. } => found,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Fillers::Complete(_))
    }
}

/// Marked maps `src -> tgt` with an optional per-cell requirement `(cell, image in tgt)`.
fn marked_search<'a>(
    src: &'a Marked,
    tgt: &'a Marked,
    table: &'a SimplexTable,
    extra: impl Fn(Cell, &DegenerateRef) -> bool + 'a,
) -> MapSearch<'a> {
    MapSearch::new(&src.underlying, table).filter(move |c, idx| {
        let img = table.get(c.dim, idx);
        (c.dim != 1 || !src.marked_nondegenerate().contains(&c.index) || tgt.is_marked(img)) && extra(c, img)
    })
}

fn to_marked(search: &MapSearch, src: &Marked, tgt: &Marked, sols: &[Vec<Vec<u32>>]) -> Vec<MarkedMap> {
    search
        .to_maps(&src.underlying, &tgt.underlying, sols)
        .into_iter()
        .map(|map| MarkedMap { source: src.clone(), target: tgt.clone(), map })
        .collect()
}

fn table_top(x: &Marked, n: usize) -> SimplexTable {
    SimplexTable::new(&x.underlying, n)
}

/// All diagonal fillers, without duplicates.
pub fn solve_square(sq: &LiftingSquare, budget: u64) -> Fillers {
    let (a, b) = (&sq.i.source, &sq.i.target);
    let (x, _) = (&sq.p.source, &sq.p.target);
    let top = b.underlying.top().max(a.underlying.top());
    let table = table_top(x, top);
    // constraints from h∘i = top, indexed by the nondegenerate cell of B they land on
    let mut derived: Vec<Vec<Vec<(Vec<usize>, u32)>>> =
        (0..=b.underlying.top()).map(|n| vec![Vec::new(); b.underlying.count(n)]).collect();
    let mut fixed = Vec::new();
    let mut impossible = false;
    for c in a.underlying.all_cells() {
        let r = sq.i.map.at(c);
        let Some(want) = table.lookup(sq.top.map.at(c)) else {
            impossible = true;
            continue;
        };
        if r.word.is_empty() {
            fixed.push((r.base, want));
        } else {
            derived[r.base.dim][r.base.index].push((r.word.clone(), want));
        }
    }
    let bottom = &sq.bottom.map;
    let p = &sq.p.map;
    let tref = &table;
    let mut search = marked_search(b, x, &table, move |c, img| {
        p.image(img) == *bottom.at(c)
            && derived[c.dim][c.index].iter().all(|(w, want)| {
                let idx = tref.lookup(img).expect("table cell");
                tref.degenerate(c.dim, idx, w) == *want
            })
    })
    .budget(budget);
    for (cell, idx) in fixed {
        search.fix(cell, idx);
    }
    if impossible {
        search.fail();
    }
    match search.run() {
        SearchOutcome::Complete(s) => Fillers::Complete(to_marked(&search, b, x, &s)),
        SearchOutcome::BudgetExceeded { found, nodes } => {
            Fillers::BudgetExceeded { found: to_marked(&search, b, x, &found), nodes }
        }
    }
}

/// A named left map for [`has_rlp`].
#[derive(Clone, Debug)]
pub struct Labeled {
    pub label: String,
    pub map: MarkedMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RlpVerdict {
    Holds,
    /// The first square over `generator` with no filler (or, when uniqueness was
    /// requested, with `fillers != 1`).
    Fails { generator: String, square: Box<LiftingSquare>, fillers: usize },
    BudgetExceeded { generator: String },
}

/// Outcome of [`has_rlp`], naming the probes used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlpReport {
    pub verdict: RlpVerdict,
    pub probes: Vec<String>,
    pub squares: usize,
}

impl RlpReport {
    pub fn holds(&self) -> bool {
        self.verdict == RlpVerdict::Holds
    }
}

/// Every square from a generator to `p` has a filler (exactly one if `unique`).
pub fn has_rlp(p: &MarkedMap, gens: &[Labeled], unique: bool, budget: u64) -> RlpReport {
    let probes: Vec<String> = gens.iter().map(|g| g.label.clone()).collect();
    let mut squares = 0;
    let (x, y) = (&p.source, &p.target);
    for g in gens {
        let i = &g.map;
        let (a, b) = (&i.source, &i.target);
        let over = |label: &str, squares: usize| RlpReport {
            verdict: RlpVerdict::BudgetExceeded { generator: label.to_string() },
            probes: probes.clone(),
            squares,
        };
        let ytable = table_top(y, b.underlying.top());
        let bs = marked_search(b, y, &ytable, |_, _| true).budget(budget);
        let bottoms = match bs.run() {
            SearchOutcome::Complete(s) => to_marked(&bs, b, y, &s),
            SearchOutcome::BudgetExceeded { .. } => return over(&g.label, squares),
        };
        let xtable = table_top(x, a.underlying.top());
        for bottom in bottoms {
            let want = i.map.then(&bottom.map);
            let ts = marked_search(a, x, &xtable, |c, img| p.map.image(img) == *want.at(c)).budget(budget);
            let tops = match ts.run() {
                SearchOutcome::Complete(s) => to_marked(&ts, a, x, &s),
                SearchOutcome::BudgetExceeded { .. } => return over(&g.label, squares),
            };
            for top in tops {
                squares += 1;
                let sq = LiftingSquare { i: i.clone(), p: p.clone(), top, bottom: bottom.clone() };
                let fl = solve_square(&sq, budget);
                if !fl.is_complete() && fl.found().len() < 2 {
                    return over(&g.label, squares);
                }
                let n = fl.found().len();
                if n == 0 || (unique && n != 1) {
                    return RlpReport {
                        verdict: RlpVerdict::Fails { generator: g.label.clone(), square: Box::new(sq), fillers: n },
                        probes,
                        squares,
                    };
                }
            }
        }
    }
    RlpReport { verdict: RlpVerdict::Holds, probes, squares }
}

/// `(A × D) ⊔_{A × C} (B × C) -> B × D` for `f: A -> B`, `g: C -> D`.
pub fn pushout_product(f: &MarkedMap, g: &MarkedMap) -> MarkedMap {
    let (a, b, c, d) = (&f.source, &f.target, &g.source, &g.target);
    let ac = marked_product(a, c);
    let ad = marked_product(a, d);
    let bc = marked_product(b, c);
    let bd = marked_product(b, d);
    let ida = MarkedMap::identity(a.clone());
    let idb = MarkedMap::identity(b.clone());
    let idc = MarkedMap::identity(c.clone());
    let idd = MarkedMap::identity(d.clone());
    let left = ac.map(&ida, g, &ad);
    let right = ac.map(f, &idc, &bc);
    let po = marked_pushout(&left, &right);
    po.induced(&ad.map(f, &idd, &bd), &bc.map(&idb, g, &bd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::simplicial::{enumerate_maps, nerve_truncated, simplex_map, FinSimplicialSet, Shape};

    fn shape(s: Shape) -> Arc<FinSimplicialSet> {
        Arc::new(s.build().unwrap())
    }

    #[test]
    fn inner_horn_in_a_nerve_has_one_filler() {
        let n = nerve_truncated(&Arc::new(FinCategory::ordinal(2)), 2).set;
        let pt = shape(Shape::Simplex(0));
        let h = shape(Shape::Horn(2, 1));
        let d2 = shape(Shape::Simplex(2));
        let i = simplex_map(&h, &d2, &[0, 1, 2]).unwrap();
        let p = enumerate_maps(&n, &pt).remove(0);
        let bottom = enumerate_maps(&d2, &pt).remove(0);
        let tops = enumerate_maps(&h, &n);
        assert!(!tops.is_empty());
        for top in tops {
            let sq = LiftingSquare::plain(&i, &p, &top, &bottom).unwrap();
            let fl = solve_square(&sq, DEFAULT_BUDGET);
            assert_eq!(fl.found().len(), 1);
            assert!(sq.is_filler(&fl.found()[0]));
        }
    }

    #[test]
    fn no_lift_into_a_discrete_total() {
        let d0 = shape(Shape::Simplex(0));
        let d1 = shape(Shape::Simplex(1));
        let disc = Arc::new(FinCategory::discrete(2));
        let base = Arc::new(FinCategory::ordinal(1));
        let f = crate::fincat::Functor::new(disc.clone(), base.clone(), vec![0, 1], vec![base.id(0), base.id(1)]).unwrap();
        let (nt, nb) = (nerve_truncated(&disc, 1), nerve_truncated(&base, 1));
        let p = crate::simplicial::nerve_map(&f, &nt, &nb);
        let i = simplex_map(&d0, &d1, &[0]).unwrap();
        let top = SimplicialMap::new(d0.clone(), nt.set.clone(), vec![vec![DegenerateRef::nondeg(Cell::new(0, 0))]]).unwrap();
        let bottom = SimplicialMap::new(
            d1.clone(),
            nb.set.clone(),
            vec![
                vec![DegenerateRef::nondeg(Cell::new(0, 0)), DegenerateRef::nondeg(Cell::new(0, 1))],
                vec![DegenerateRef::nondeg(Cell::new(1, 0))],
            ],
        )
        .unwrap();
        let sq = LiftingSquare::plain(&i, &p, &top, &bottom).unwrap();
        assert!(solve_square(&sq, DEFAULT_BUDGET).found().is_empty());
    }

    #[test]
    fn lifts_from_the_point_are_fibre_vertices() {
        let d0 = shape(Shape::Simplex(0));
        let c2 = Arc::new(FinCategory::ordinal(2));
        let c1 = Arc::new(FinCategory::ordinal(1));
        let arrows: Vec<usize> = c2
            .arrows()
            .map(|a| {
                let (s, t) = (c2.src(a), c2.tgt(a));
                let m = |o: usize| if o == 0 { 0 } else { 1 };
                c1.hom(m(s), m(t))[0]
            })
            .collect();
        let f = crate::fincat::Functor::new(c2.clone(), c1.clone(), vec![0, 1, 1], arrows).unwrap();
        let (nt, nb) = (nerve_truncated(&c2, 2), nerve_truncated(&c1, 2));
        let p = crate::simplicial::nerve_map(&f, &nt, &nb);
        let i = SimplicialMap::from_empty(d0.clone());
        for (v, expected) in [(0, 1), (1, 2)] {
            let bottom =
                SimplicialMap::new(d0.clone(), nb.set.clone(), vec![vec![DegenerateRef::nondeg(Cell::new(0, v))]]).unwrap();
            let top = SimplicialMap::from_empty(nt.set.clone());
            let sq = LiftingSquare::plain(&i, &p, &top, &bottom).unwrap();
            assert_eq!(solve_square(&sq, DEFAULT_BUDGET).found().len(), expected);
        }
    }

    #[test]
    fn identity_has_unique_lifts() {
        let d1 = shape(Shape::Simplex(1));
        let x = Arc::new(MarkedSimplicialSet::sharp(&shape(Shape::Horn(2, 0))));
        let id = MarkedMap::identity(x);
        let gens = vec![Labeled { label: "d1".into(), map: MarkedMap::flat_to_sharp(&d1) }];
        assert!(has_rlp(&id, &gens, true, DEFAULT_BUDGET).holds());
    }

    #[test]
    fn pushout_product_examples() {
        let d0 = shape(Shape::Simplex(0));
        let d1 = shape(Shape::Simplex(1));
        let b1 = shape(Shape::Boundary(1));
        let empty = shape(Shape::Empty);
        let inc = MarkedMap::flat(&simplex_map(&b1, &d1, &[0, 1]).unwrap());
        let pp = pushout_product(&inc, &inc);
        pp.check().unwrap();
        assert_eq!(pp.source.underlying.counts(), vec![4, 4]);
        assert_eq!(pp.target.underlying.counts(), vec![4, 5, 2]);
        assert!(pp.map.is_injective());
        let unit = MarkedMap::flat(&SimplicialMap::from_empty(d0.clone()));
        let _ = empty;
        let f = MarkedMap::flat_to_sharp(&d1);
        let g = pushout_product(&f, &unit);
        assert_eq!(g.source.underlying.counts(), vec![2, 1]);
        assert!(g.source.is_flat() && g.target.is_sharp());
        assert!(g.map.is_isomorphism());
        let h = pushout_product(&inc, &unit);
        assert_eq!(h.source.underlying.counts(), vec![2]);
        assert_eq!(h.target.underlying.counts(), vec![2, 1]);
    }
}
