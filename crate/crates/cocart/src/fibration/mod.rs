//! Cocartesian edges and fibrations of finite categories.
//!
//! An arrow `f: x -> y` of `P` is cocartesian for `p: P -> C` when for every `z`
//! the map `Hom(y, z) -> Hom(x, z) ×_{Hom(px, pz)} Hom(py, pz)`, `g ↦ (g∘f, p g)`,
//! is a bijection. `p` is a cocartesian fibration when every `(x, α: px -> c)` has
//! a cocartesian lift.

mod ops;
mod oracles;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{subcategory, wide_subcategory, Arr, Cat, Functor, Obj};
use crate::lifting::{has_rlp, Labeled, RlpReport};
use crate::marked::{anodyne_generators, MarkedMap, MarkedSimplicialSet, Probe, Variance};
use crate::simplicial::{nerve_map, nerve_truncated, Cell, Nerve};
use crate::{Error, Result};

pub use ops::{
    cocartesian_functors_over, fiber_map, interval_analysis, is_fiberwise_equivalence, power, pullback_fibration,
    tensor, IntervalAnalysis,
};
pub use oracles::{adjoint_check, horn_check, is_cocartesian_edge_by_slices, poset_check, res_p, PosetVerdict};

/// Arrow count above which edge checks are split over threads.
const PARALLEL_ARROWS: usize = 512;

/// Whether `f` is `p`-cocartesian.
pub fn is_cocartesian_edge(p: &Functor, f: Arr) -> bool {
    let (pp, c) = (&*p.source, &*p.target);
    let (x, y) = (pp.src(f), pp.tgt(f));
    let pf = p.ar(f);
    let mut image = std::collections::HashSet::new();
    for z in pp.objects() {
        let from_y = pp.hom(y, z);
        image.clear();
        for &g in from_y {
            image.insert((pp.compose(g, f), p.ar(g)));
        }
        if image.len() != from_y.len() {
            return false;
        }
        // size of Hom(x, z) ×_{Hom(px, pz)} Hom(py, pz)
        let mut want = 0;
        for &h in pp.hom(x, z) {
            let ph = p.ar(h);
            want += c.hom(p.ob(y), p.ob(z)).iter().filter(|&&b| c.compose(b, pf) == ph).count();
        }
        if want != image.len() {
            return false;
        }
    }
    true
}

/// One flag per arrow of the source of `p`.
pub fn cocartesian_edges(p: &Functor) -> Vec<bool> {
    let n = p.source.num_arrows();
    if n < PARALLEL_ARROWS {
        return (0..n).map(|f| is_cocartesian_edge(p, f)).collect();
    }
    let jobs = std::thread::available_parallelism().map(|j| j.get()).unwrap_or(1);
    let chunk = n.div_ceil(jobs);
    let mut flags = vec![false; n];
    std::thread::scope(|s| {
        for (k, part) in flags.chunks_mut(chunk).enumerate() {
            s.spawn(move || {
                for (i, slot) in part.iter_mut().enumerate() {
                    *slot = is_cocartesian_edge(p, k * chunk + i);
                }
            });
        }
    });
    flags
}

/// A verified cocartesian fibration with its edge flags and chosen lifts.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub p: Functor,
    flags: Vec<bool>,
    lifts: BTreeMap<(Obj, Arr), Arr>,
}

/// Outcome of [`check_cocartesian_fibration`].
#[derive(Clone, Debug)]
pub enum CocartesianVerdict {
    Verified(Fibration),
    /// `arrow` is a base arrow out of `p(object)` with no cocartesian lift.
    Refuted { object: Obj, arrow: Arr },
}

impl CocartesianVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CocartesianVerdict::Verified(_))
    }

    pub fn fibration(self) -> Option<Fibration> {
        match self {
            CocartesianVerdict::Verified(f) => Some(f),
            CocartesianVerdict::Refuted { .. } => None,
        }
    }
}

/// Builds the lift table or names an `(x, α)` without a cocartesian lift.
pub fn check_cocartesian_fibration(p: &Functor) -> CocartesianVerdict {
    let flags = cocartesian_edges(p);
    let (pp, c) = (&*p.source, &*p.target);
    let mut lifts = BTreeMap::new();
    for x in pp.objects() {
        for &al in c.out(p.ob(x)) {
            let chosen = if c.is_identity(al) {
                Some(pp.id(x))
            } else {
                pp.out(x).iter().copied().filter(|&f| flags[f] && p.ar(f) == al).min()
            };
            match chosen {
                Some(f) => {
                    lifts.insert((x, al), f);
                }
                None => return CocartesianVerdict::Refuted { object: x, arrow: al },
            }
        }
    }
    CocartesianVerdict::Verified(Fibration { p: p.clone(), flags, lifts })
}

/// `p` is cartesian when `p^op` is cocartesian.
pub fn check_cartesian_fibration(p: &Functor) -> CocartesianVerdict {
    check_cocartesian_fibration(&p.op())
}

/// Every `(x, α)` has exactly one lift: a discrete opfibration.
pub fn is_left_fibration(p: &Functor) -> bool {
    let (pp, c) = (&*p.source, &*p.target);
    pp.objects().all(|x| {
        c.out(p.ob(x)).iter().all(|&al| pp.out(x).iter().filter(|&&f| p.ar(f) == al).count() == 1)
    })
}

impl Fibration {
    /// Verifies `p`; the error names the first `(x, α)` without a lift.
    pub fn new(p: Functor) -> Result<Self> {
        p.check()?;
        match check_cocartesian_fibration(&p) {
            CocartesianVerdict::Verified(f) => Ok(f),
            CocartesianVerdict::Refuted { object, arrow } => Err(Error::NotAFibration(format!(
                "no cocartesian lift of {} at {}",
                p.target.arrow_name(arrow),
                p.source.object_name(object)
            ))),
        }
    }

    pub fn total(&self) -> &Cat {
        &self.p.source
    }

    pub fn base(&self) -> &Cat {
        &self.p.target
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn is_cocartesian(&self, f: Arr) -> bool {
        self.flags[f]
    }

    /// Flagged arrows in id order.
    pub fn cocartesian_arrows(&self) -> Vec<Arr> {
        (0..self.flags.len()).filter(|&f| self.flags[f]).collect()
    }

    /// The chosen lift of `alpha` at `x`: an identity over identities, otherwise
    /// the least flagged arrow id.
    pub fn lift(&self, x: Obj, alpha: Arr) -> Arr {
        self.lifts[&(x, alpha)]
    }

    pub fn lift_table(&self) -> &BTreeMap<(Obj, Arr), Arr> {
        &self.lifts
    }

    /// Where the chosen lift of `alpha` sends `x`.
    pub fn transport(&self, x: Obj, alpha: Arr) -> Obj {
        self.total().tgt(self.lift(x, alpha))
    }

    /// Objects over `c`.
    pub fn fiber_objects(&self, c: Obj) -> Vec<Obj> {
        self.total().objects().filter(|&x| self.p.ob(x) == c).collect()
    }

    /// The fiber over `c` (arrows over `id_c`) with its inclusion.
    pub fn fiber(&self, c: Obj) -> (Cat, Functor) {
        fiber(&self.p, c)
    }

    /// Recomputes flags and lifts and compares them with the cache.
    pub fn check(&self) -> Result<()> {
        self.p.check()?;
        if cocartesian_edges(&self.p) != self.flags {
            return Err(Error::Invariant("cached cocartesian flags are stale".into()));
        }
        for (&(x, al), &f) in &self.lifts {
            let pp = self.total();
            if pp.src(f) != x || self.p.ar(f) != al || !self.flags[f] {
                return Err(Error::Invariant(format!("bad chosen lift {}", pp.arrow_name(f))));
            }
        }
        Ok(())
    }
}

/// The fiber of any functor over `c`.
pub fn fiber(p: &Functor, c: Obj) -> (Cat, Functor) {
    let pp = &p.source;
    let objs: Vec<Obj> = pp.objects().filter(|&x| p.ob(x) == c).collect();
    let idc = p.target.id(c);
    let arrs: Vec<Arr> = pp.arrows().filter(|&f| p.ar(f) == idc).collect();
    subcategory(pp, &objs, &arrs).expect("fibers are subcategories")
}

/// Truncated nerves of total and base with cocartesian arrows marked upstairs and
/// everything marked downstairs.
#[derive(Clone, Debug)]
pub struct NaturalMarking {
    pub total: Nerve,
    pub base: Nerve,
    pub map: MarkedMap,
}

pub fn natural_marking(p: &Fibration, level: usize) -> NaturalMarking {
    natural_marking_with(&p.p, &p.flags, level)
}

/// [`natural_marking`] for any functor with the given flags, used to probe
/// functors that are not fibrations.
pub fn natural_marking_with(p: &Functor, flags: &[bool], level: usize) -> NaturalMarking {
    let total = nerve_truncated(&p.source, level);
    let base = nerve_truncated(&p.target, level);
    let marked = (0..total.set.count(1)).filter(|&e| flags[total.chain(Cell::new(1, e))[0]]);
    let source = Arc::new(MarkedSimplicialSet::with_edges(&total.set, marked).expect("edge indices"));
    let target = Arc::new(MarkedSimplicialSet::sharp(&base.set));
    let map = MarkedMap { source, target, map: nerve_map(p, &total, &base) };
    NaturalMarking { total, base, map }
}

/// Nerve truncation that is exact for the generators on [`standard_probes`]: the
/// largest of them, `E¹ × Δ¹`, has dimension 4.
pub const RLP_LEVEL: usize = 4;

pub fn standard_probes() -> Vec<Probe> {
    vec![Probe::simplex(0), Probe::simplex(1)]
}

/// Semi-decision through the natural marking: right lifting against the left
/// anodyne generators on `probes`, nerves truncated at `level`.
pub fn marked_rlp_check(p: &Functor, level: usize, probes: &[Probe], budget: u64) -> RlpReport {
    let flags = cocartesian_edges(p);
    let nm = natural_marking_with(p, &flags, level);
    let gens: Vec<Labeled> = anodyne_generators(Variance::Left, probes)
        .into_iter()
        .map(|g| Labeled { label: g.label(), map: g.map })
        .collect();
    has_rlp(&nm.map, &gens, false, budget)
}

/// The wide subcategory on cocartesian arrows, over the same base.
pub fn left_fibration_part(p: &Fibration) -> Result<(Fibration, Functor)> {
    let (sub, incl) = wide_subcategory(p.total(), &p.cocartesian_arrows())?;
    let q = incl.then(&p.p);
    debug_assert!(Arc::ptr_eq(&q.source, &sub));
    if !is_left_fibration(&q) {
        return Err(Error::Invariant("cocartesian arrows do not form a left fibration".into()));
    }
    Ok((Fibration::new(q)?, incl))
}

/// `g` over `f` from `p` to `q` carries cocartesian arrows to cocartesian arrows.
pub fn is_cocartesian_functor(p: &Fibration, q: &Fibration, g: &Functor, f: &Functor) -> Result<bool> {
    if !ops::same(&g.source, p.total()) || !ops::same(&g.target, q.total()) {
        return Err(Error::SquareDoesNotCommute("functor ends do not match the fibrations".into()));
    }
    for x in p.total().objects() {
        if q.p.ob(g.ob(x)) != f.ob(p.p.ob(x)) {
            return Err(Error::SquareDoesNotCommute(format!("at object {}", p.total().object_name(x))));
        }
    }
    for a in p.total().arrows() {
        if q.p.ar(g.ar(a)) != f.ar(p.p.ar(a)) {
            return Err(Error::SquareDoesNotCommute(format!("at arrow {}", p.total().arrow_name(a))));
        }
    }
    Ok(p.total().arrows().all(|a| !p.is_cocartesian(a) || q.is_cocartesian(g.ar(a))))
}

/// Serializable summary of a verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerdictReport {
    pub cocartesian: bool,
    pub flagged: Vec<String>,
    pub lifts: Vec<(String, String, String)>,
    pub witness: Option<(String, String)>,
}

impl VerdictReport {
    pub fn new(p: &Functor, v: &CocartesianVerdict) -> Self {
        let (pp, c) = (&*p.source, &*p.target);
        match v {
            CocartesianVerdict::Verified(f) => VerdictReport {
                cocartesian: true,
                flagged: f.cocartesian_arrows().into_iter().map(|a| pp.arrow_name(a).to_string()).collect(),
                lifts: f
                    .lifts
                    .iter()
                    .map(|(&(x, al), &l)| {
                        (pp.object_name(x).to_string(), c.arrow_name(al).to_string(), pp.arrow_name(l).to_string())
                    })
                    .collect(),
                witness: None,
            },
            CocartesianVerdict::Refuted { object, arrow } => VerdictReport {
                cocartesian: false,
                flagged: cocartesian_edges(p)
                    .iter()
                    .enumerate()
                    .filter(|x| *x.1)
                    .map(|(a, _)| pp.arrow_name(a).to_string())
                    .collect(),
                lifts: Vec::new(),
                witness: Some((pp.object_name(*object).to_string(), c.arrow_name(*arrow).to_string())),
            },
        }
    }
}
