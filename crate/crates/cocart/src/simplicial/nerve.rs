use std::collections::HashMap;
use std::sync::Arc;

use super::{Cell, DegenerateRef, FinSimplicialSet, SimplicialMap};
use crate::fincat::{Arr, Cat, Functor, Obj};

/// A truncated nerve with the chain behind every nondegenerate cell.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub category: Cat,
    pub level: usize,
    pub set: Arc<FinSimplicialSet>,
    chains: Vec<Vec<Vec<Arr>>>,
    lookup: HashMap<Vec<Arr>, usize>,
}

impl Nerve {
    /// Chain of arrows of a nondegenerate cell of positive dimension.
    pub fn chain(&self, c: Cell) -> &[Arr] {
        &self.chains[c.dim][c.index]
    }

    /// The simplex spanned by a composable path (identities allowed) from `start`.
    pub fn simplex(&self, start: Obj, path: &[Arr]) -> DegenerateRef {
        let c = &self.category;
        let base: Vec<Arr> = path.iter().copied().filter(|&f| !c.is_identity(f)).collect();
        let mut word: Vec<usize> = path
            .iter()
            .enumerate()
            .filter(|(_, &f)| c.is_identity(f))
            .map(|(k, _)| k)
            .collect();
        word.reverse();
        let cell = if base.is_empty() {
            Cell::new(0, start)
        } else {
            Cell::new(base.len(), self.lookup[&base])
        };
        DegenerateRef { base: cell, word }
    }

    /// The full path (with identities) of any simplex, plus its first vertex.
    pub fn path(&self, x: &DegenerateRef) -> (Obj, Vec<Arr>) {
        let c = &self.category;
        let (start, base): (Obj, Vec<Arr>) = if x.base.dim == 0 {
            (x.base.index, Vec::new())
        } else {
            let ch = self.chain(x.base).to_vec();
            (c.src(ch[0]), ch)
        };
        let tau = x.surjection();
        let mut path = Vec::with_capacity(x.dim());
        let mut cur = start;
        for k in 0..x.dim() {
            if tau[k] == tau[k + 1] {
                path.push(c.id(cur));
            } else {
                let f = base[tau[k]];
                path.push(f);
                cur = c.tgt(f);
            }
        }
        (start, path)
    }

    /// The edge of an arrow.
    pub fn edge(&self, f: Arr) -> DegenerateRef {
        self.simplex(self.category.src(f), &[f])
    }

    /// The arrow of an edge.
    pub fn arrow_of(&self, x: &DegenerateRef) -> Arr {
        let (start, path) = self.path(x);
        debug_assert_eq!(path.len(), 1);
        path.first().copied().unwrap_or_else(|| self.category.id(start))
    }
}

/// Nondegenerate `n`-cells for `n <= level` are chains of `n` composable non-identity arrows.
pub fn nerve_truncated(c: &Cat, level: usize) -> Nerve {
    let mut chains: Vec<Vec<Vec<Arr>>> = vec![c.objects().map(|_| Vec::new()).collect()];
    let nonid: Vec<Arr> = c.non_identity_arrows().collect();
    for n in 1..=level {
        let mut next = Vec::new();
        if n == 1 {
            next.extend(nonid.iter().map(|&f| vec![f]));
        } else {
            for ch in &chains[n - 1] {
                let last = *ch.last().expect("chain");
                for &g in c.out(c.tgt(last)) {
                    if !c.is_identity(g) {
                        let mut e = ch.clone();
                        e.push(g);
                        next.push(e);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        chains.push(next);
    }
    let mut lookup = HashMap::new();
    for level in chains.iter().skip(1) {
        for (i, ch) in level.iter().enumerate() {
            lookup.insert(ch.clone(), i);
        }
    }
    let mut nerve = Nerve {
        category: c.clone(),
        level,
        set: Arc::new(FinSimplicialSet::empty()),
        chains,
        lookup,
    };
    let mut names = Vec::new();
    let mut faces = Vec::new();
    for (n, level) in nerve.chains.iter().enumerate() {
        let mut ln = Vec::new();
        let mut lf = Vec::new();
        for (i, ch) in level.iter().enumerate() {
            if n == 0 {
                ln.push(c.object_name(i).to_string());
                lf.push(Vec::new());
                continue;
            }
            ln.push(ch.iter().map(|&f| c.arrow_name(f)).collect::<Vec<_>>().join(";"));
            let fs = (0..=n)
                .map(|k| {
                    if k == 0 {
                        nerve.simplex(c.tgt(ch[0]), &ch[1..])
                    } else if k == n {
                        nerve.simplex(c.src(ch[0]), &ch[..n - 1])
                    } else {
                        let mut p = ch[..k - 1].to_vec();
                        p.push(c.compose(ch[k], ch[k - 1]));
                        p.extend_from_slice(&ch[k + 1..]);
                        nerve.simplex(c.src(ch[0]), &p)
                    }
                })
                .collect();
            lf.push(fs);
        }
        names.push(ln);
        faces.push(lf);
    }
    nerve.set = Arc::new(FinSimplicialSet::from_parts_unchecked(names, faces));
    nerve
}

/// The map of truncated nerves induced by a functor.
pub fn nerve_map(f: &Functor, source: &Nerve, target: &Nerve) -> SimplicialMap {
    let assignment = (0..=source.set.top())
        .map(|n| {
            source
                .set
                .cells(n)
                .map(|cell| {
                    let (start, path) = source.path(&DegenerateRef::nondeg(cell));
                    let img: Vec<Arr> = path.iter().map(|&a| f.ar(a)).collect();
                    target.simplex(f.ob(start), &img)
                })
                .collect()
        })
        .collect::<Vec<Vec<DegenerateRef>>>();
    let assignment = if source.set.dims() < 0 { Vec::new() } else { assignment };
    SimplicialMap { source: source.set.clone(), target: target.set.clone(), assignment }
}
