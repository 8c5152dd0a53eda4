//! The model `K = Δ² ⊔_{02} D` for `Δ₊`, with `D` a truncated nerve of `Δ`, and the
//! checks on necklaces from `+` to `+`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{category_on, enumerate, necklace_category, NecklaceCategory, NecklaceOpts};
use crate::fincat::{Arrow, FinCategory, DEFAULT_GUARD};
use crate::marked::{delta_plus_hom, DeltaPlusArrow, DpObject};
use crate::simplicial::{
    coproduct, nerve_truncated, ordinal, pushout, simplex_map, Cell, DegenerateRef, FinSimplicialSet, Shape,
    SimplicialMap,
};
use crate::{Error, Result};

/// The full subcategory of `Δ` on `[0], …, [n]`.
pub fn delta_leq(n: usize) -> FinCategory {
    let objects = (0..=n).map(|k| format!("[{k}]")).collect();
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    let mut ids = vec![0; n + 1];
    for a in 0..=n {
        for b in 0..=n {
            for t in ordinal::monotone_maps(a, b) {
                if a == b && t == ordinal::identity(a) {
                    ids[a] = arrows.len();
                }
                arrows.push(Arrow { name: DeltaPlusArrow::Delta(t.clone(), b).to_string(), src: a, tgt: b });
                maps.push((t, b));
            }
        }
    }
    let lookup: HashMap<(Vec<usize>, usize), usize> = maps.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    FinCategory::from_fn(objects, arrows, ids, |g, f| {
        let ((tg, b), (tf, _)) = (&maps[g], &maps[f]);
        lookup.get(&(ordinal::compose(tg, tf), *b)).copied()
    })
}

/// `K` with its plus vertex.
#[derive(Clone, Debug)]
pub struct KModel {
    pub k: Arc<FinSimplicialSet>,
    pub plus: Cell,
}

/// Glues `Δ²` to `D`, sending `0 ↦ from` and `2 ↦ to`. The edge `02` is identified
/// with the unique nondegenerate edge `from -> to` of `D` if there is one; otherwise
/// only the two vertices are glued. The remaining cells of `Δ²` are renamed `+`,
/// `α` (`01`), `β` (`12`) and `α;β`.
pub fn glue_k(d: &Arc<FinSimplicialSet>, from: Cell, to: Cell) -> Result<KModel> {
    let bad = |m: &str| Error::MalformedK(m.to_string());
    if from.dim != 0 || to.dim != 0 || from.index >= d.count(0) || to.index >= d.count(0) {
        return Err(bad("gluing vertices are not vertices of D"));
    }
    let d2 = Arc::new(Shape::Simplex(2).build()?);
    let edges: Vec<Cell> = d
        .cells(1)
        .filter(|&e| d.face(e, 1).base == from && d.face(e, 0).base == to)
        .collect();
    let (f, g) = if edges.len() == 1 {
        let d1 = Arc::new(Shape::Simplex(1).build()?);
        let into_d = SimplicialMap::new(
            d1.clone(),
            d.clone(),
            vec![vec![DegenerateRef::nondeg(from), DegenerateRef::nondeg(to)], vec![DegenerateRef::nondeg(edges[0])]],
        )?;
        (into_d, simplex_map(&d1, &d2, &[0, 2])?)
    } else {
        let d0 = Arc::new(Shape::Simplex(0).build()?);
        let pts = coproduct(&d0, &d0);
        let at = |v: Cell| SimplicialMap::new(d0.clone(), d.clone(), vec![vec![DegenerateRef::nondeg(v)]]);
        let into_d = pts.induced(&at(from)?, &at(to)?);
        let into_2 = pts.induced(&simplex_map(&d0, &d2, &[0])?, &simplex_map(&d0, &d2, &[2])?);
        (into_d, into_2)
    };
    let po = pushout(&f, &g);
    let k = &po.object;
    let rename = |c: Cell, new: &str| (po.right.at(c).base, new.to_string());
    let cell = |vs: &[usize]| crate::simplicial::vertex_cell(&d2, vs).expect("cell of Δ²");
    let renames: HashMap<Cell, String> = [
        rename(cell(&[1]), "+"),
        rename(cell(&[0, 1]), "α"),
        rename(cell(&[1, 2]), "β"),
        rename(cell(&[0, 1, 2]), "α;β"),
    ]
    .into_iter()
    .collect();
    let names: Vec<Vec<String>> = (0..=k.top())
        .map(|n| k.cells(n).map(|c| renames.get(&c).cloned().unwrap_or_else(|| k.name(c).to_string())).collect())
        .collect();
    let faces = (0..=k.top()).map(|n| k.cells(n).map(|c| k.faces_of(c).to_vec()).collect()).collect();
    let k = Arc::new(FinSimplicialSet::new(names, faces)?);
    let plus = po.right.at(cell(&[1])).base;
    Ok(KModel { k, plus })
}

/// `K` with `D` the nerve of `Δ≤1` truncated at `level`.
pub fn standard_k(level: usize) -> Result<KModel> {
    let c = Arc::new(delta_leq(1));
    let d = nerve_truncated(&c, level).set;
    glue_k(&d, Cell::new(0, 1), Cell::new(0, 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub plus: String,
    pub alpha: String,
    pub beta: String,
    pub opts: NecklaceOpts,
    pub objects: usize,
    pub degenerate: usize,
    pub nondegenerate: usize,
    /// Arrows between the degenerate and the nondegenerate part, either way.
    pub cross_arrows: usize,
    pub final_object: Option<String>,
    pub pi0_degenerate: usize,
    pub pi0_nondegenerate: usize,
    /// Components of necklaces from the target of `β` to `+`, one bead fewer.
    pub pi0_comparison: usize,
    pub total: usize,
}

impl AppendixReport {
    pub fn block_diagonal(&self) -> bool {
        self.cross_arrows == 0
    }

    pub fn comparison_agrees(&self) -> bool {
        self.pi0_comparison == self.pi0_nondegenerate
    }

    pub fn holds(&self) -> bool {
        self.block_diagonal() && self.final_object.is_some() && self.comparison_agrees()
    }
}

fn components_within(nc: &NecklaceCategory, keep: &[bool]) -> usize {
    let c = &nc.category;
    let mut parent: Vec<usize> = c.objects().collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for f in c.arrows() {
        let (s, t) = (c.src(f), c.tgt(f));
        if keep[s] && keep[t] {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..parent.len()).filter(|&o| keep[o] && find(&mut parent, o) == o).count()
}

/// The unique nondegenerate edge into (`into`) or out of `plus`, avoiding loops.
fn edge_at(k: &FinSimplicialSet, plus: Cell, into: bool) -> Result<Cell> {
    let (here, there) = if into { (0, 1) } else { (1, 0) };
    let es: Vec<Cell> = k
        .cells(1)
        .filter(|&e| k.face(e, here).base == plus && k.face(e, there).base != plus)
        .collect();
    match es.as_slice() {
        [e] => Ok(*e),
        _ => Err(Error::MalformedK(format!(
            "{} nondegenerate edges {} the plus vertex",
            es.len(),
            if into { "into" } else { "out of" }
        ))),
    }
}

pub fn appendix_checks(k: &Arc<FinSimplicialSet>, plus: Cell, opts: NecklaceOpts) -> Result<AppendixReport> {
    if plus.dim != 0 || plus.index >= k.count(0) {
        return Err(Error::MalformedK("plus is not a vertex".into()));
    }
    let alpha = edge_at(k, plus, true)?;
    let beta = edge_at(k, plus, false)?;
    let has_cell = k.top() >= 2
        && k.cells(2).any(|c| k.face(c, 2) == &DegenerateRef::nondeg(alpha) && k.face(c, 0) == &DegenerateRef::nondeg(beta));
    if !has_cell {
        return Err(Error::MalformedK("no 2-simplex with spine α, β".into()));
    }
    let nc = necklace_category(k, plus, plus, opts, DEFAULT_GUARD)?;
    let c = &nc.category;
    let degenerate: Vec<bool> = nc.objects.iter().map(|m| m.is_constant_at(plus)).collect();
    let nondeg: Vec<bool> = degenerate.iter().map(|d| !d).collect();
    let cross_arrows = c.arrows().filter(|&f| degenerate[c.src(f)] != degenerate[c.tgt(f)]).count();
    let final_object = c
        .objects()
        .filter(|&o| degenerate[o])
        .find(|&o| c.objects().filter(|&x| degenerate[x]).all(|x| c.hom(x, o).len() == 1))
        .map(|o| c.object_name(o).to_string());
    let target = k.face(beta, 0).base;
    let fewer = NecklaceOpts { max_beads: opts.max_beads.saturating_sub(1), ..opts };
    let comparison = category_on(enumerate(k, target, plus, fewer), DEFAULT_GUARD)?;
    Ok(AppendixReport {
        plus: k.name(plus).to_string(),
        alpha: k.name(alpha).to_string(),
        beta: k.name(beta).to_string(),
        opts,
        objects: c.num_objects(),
        degenerate: degenerate.iter().filter(|&&d| d).count(),
        nondegenerate: nondeg.iter().filter(|&&d| d).count(),
        cross_arrows,
        final_object,
        pi0_degenerate: components_within(&nc, &degenerate),
        pi0_nondegenerate: components_within(&nc, &nondeg),
        pi0_comparison: comparison.pi0(),
        total: nc.pi0(),
    })
}

/// The checks on the standard models at two consecutive truncation levels, against
/// the count of `Hom(+, +)` in `Δ₊`.
#[derive(Clone, Debug, Serialize)]
pub struct Battery {
    pub levels: Vec<(usize, AppendixReport)>,
    pub oracle: usize,
    pub stable: bool,
}

impl Battery {
    pub fn passed(&self) -> bool {
        self.stable && self.levels.iter().all(|(_, r)| r.holds() && r.total == self.oracle)
    }
}

/// Runs [`appendix_checks`] on [`standard_k`] at `level` and `level + 1`, with bead
/// dimension bounded by the truncation level.
pub fn appendix_battery(level: usize, nondeg_only: bool, max_beads: usize) -> Result<Battery> {
    let oracle = delta_plus_hom(DpObject::Plus, DpObject::Plus)?.len();
    let mut levels = Vec::new();
    for l in [level, level + 1] {
        let m = standard_k(l)?;
        let opts = NecklaceOpts { nondeg_only, max_dim: l.max(2), max_beads };
        levels.push((l, appendix_checks(&m.k, m.plus, opts)?));
    }
    let stable = levels[0].1.total == levels[1].1.total;
    Ok(Battery { levels, oracle, stable })
}
