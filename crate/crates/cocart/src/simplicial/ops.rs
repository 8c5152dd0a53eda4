use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{ordinal, Cell, DegenerateRef, FinSimplicialSet, SimplexTable, SimplicialMap};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Appends primes to later duplicates until all names are distinct.
fn disambiguate(names: &mut [Vec<String>]) {
    let mut seen = BTreeSet::new();
    for level in names.iter_mut() {
        for name in level.iter_mut() {
            while !seen.insert(name.clone()) {
                name.push('\'');
            }
        }
    }
}

/// `X ⊔ Y` with its coprojections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Arc<FinSimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

pub fn coproduct(x: &Arc<FinSimplicialSet>, y: &Arc<FinSimplicialSet>) -> Coproduct {
    let top = x.names.len().max(y.names.len());
    let mut names = vec![Vec::new(); top];
    let mut faces = vec![Vec::new(); top];
    let shift = |r: &DegenerateRef| DegenerateRef {
        base: Cell::new(r.base.dim, r.base.index + x.count(r.base.dim)),
        word: r.word.clone(),
    };
    for n in 0..top {
        for c in x.cells(n) {
            names[n].push(x.name(c).to_string());
            faces[n].push(x.faces_of(c).to_vec());
        }
        for c in y.cells(n) {
            names[n].push(y.name(c).to_string());
            faces[n].push(y.faces_of(c).iter().map(shift).collect());
        }
    }
    disambiguate(&mut names);
    let object = Arc::new(FinSimplicialSet::from_parts_unchecked(names, faces));
    let left = SimplicialMap {
        source: x.clone(),
        target: object.clone(),
        assignment: (0..x.names.len()).map(|n| x.cells(n).map(DegenerateRef::nondeg).collect()).collect(),
    };
    let right = SimplicialMap {
        source: y.clone(),
        target: object.clone(),
        assignment: (0..y.names.len())
            .map(|n| y.cells(n).map(|c| shift(&DegenerateRef::nondeg(c))).collect())
            .collect(),
    };
    Coproduct { object, left, right }
}

impl Coproduct {
    /// The map out of the coproduct with the given components.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> SimplicialMap {
        let x = &self.left.source;
        let top = self.object.names.len();
        let assignment = (0..top)
            .map(|n| {
                let mut l: Vec<DegenerateRef> = x.cells(n).map(|c| u.at(c).clone()).collect();
                l.extend(v.source.cells(n).map(|c| v.at(c).clone()));
                l
            })
            .collect();
        SimplicialMap { source: self.object.clone(), target: u.target.clone(), assignment }
    }
}

/// `X × Y` (or a pullback, as a subcomplex of it) with the projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Arc<FinSimplicialSet>,
    pub first: SimplicialMap,
    pub second: SimplicialMap,
    lookup: Vec<HashMap<(DegenerateRef, DegenerateRef), usize>>,
}

impl Product {
    /// The simplex `(x, y)` in normal form, if it lies in the object.
    pub fn pair(&self, x: &DegenerateRef, y: &DegenerateRef) -> Option<DegenerateRef> {
        let n = x.dim();
        debug_assert_eq!(n, y.dim());
        let common: Vec<usize> = x.word.iter().copied().filter(|j| y.word.contains(j)).collect();
        if common.is_empty() {
            let idx = *self.lookup.get(n)?.get(&(x.clone(), y.clone()))?;
            return Some(DegenerateRef::nondeg(Cell::new(n, idx)));
        }
        let rho = ordinal::surjection_from_word(n, &common);
        let m = n - common.len();
        let sec: Vec<usize> = (0..=m).map(|j| rho.iter().position(|&v| v == j).expect("section")).collect();
        let strip = |r: &DegenerateRef| {
            let tau = r.surjection();
            let t: Vec<usize> = sec.iter().map(|&i| tau[i]).collect();
            DegenerateRef { base: r.base, word: ordinal::word_from_surjection(&t) }
        };
        let idx = *self.lookup.get(m)?.get(&(strip(x), strip(y)))?;
        Some(DegenerateRef { base: Cell::new(m, idx), word: common })
    }

    /// The product map `f × g` into another product.
    pub fn map(&self, f: &SimplicialMap, g: &SimplicialMap, target: &Product) -> SimplicialMap {
        let assignment = (0..self.object.names.len())
            .map(|n| {
                self.object
                    .cells(n)
                    .map(|c| {
                        let x = f.image(self.first.at(c));
                        let y = g.image(self.second.at(c));
                        target.pair(&x, &y).expect("product map lands in the target")
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { source: self.object.clone(), target: target.object.clone(), assignment }
    }

    /// The map `Z -> X × Y` with components `u` and `v`.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> Option<SimplicialMap> {
        let z = &u.source;
        let mut assignment = Vec::new();
        for n in 0..z.names.len() {
            let mut l = Vec::new();
            for c in z.cells(n) {
                l.push(self.pair(u.at(c), v.at(c))?);
            }
            assignment.push(l);
        }
        Some(SimplicialMap { source: z.clone(), target: self.object.clone(), assignment })
    }
}

pub fn product(x: &Arc<FinSimplicialSet>, y: &Arc<FinSimplicialSet>) -> Product {
    product_filtered(x, y, |_, _| true)
}

/// `X ×_Y Z` for `f: X -> Y` and `g: Z -> Y`, as a subcomplex of `X × Z`.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Product {
    product_filtered(&f.source, &g.source, |x, z| f.image(x) == g.image(z))
}

fn product_filtered(
    x: &Arc<FinSimplicialSet>,
    y: &Arc<FinSimplicialSet>,
    keep: impl Fn(&DegenerateRef, &DegenerateRef) -> bool,
) -> Product {
    let top = if x.dims() < 0 || y.dims() < 0 { 0 } else { x.top() + y.top() + 1 };
    let mut keys: Vec<Vec<(DegenerateRef, DegenerateRef)>> = vec![Vec::new(); top];
    for (n, level) in keys.iter_mut().enumerate() {
        for p in 0..=n.min(x.top()) {
            for q in 0..=n.min(y.top()) {
                if p + q < n {
                    continue;
                }
                for wx in ordinal::words(n, n - p) {
                    for wy in ordinal::words(n, n - q) {
                        if wy.iter().any(|j| wx.contains(j)) {
                            continue;
                        }
                        for bx in x.cells(p) {
                            for by in y.cells(q) {
                                let a = DegenerateRef { base: bx, word: wx.clone() };
                                let b = DegenerateRef { base: by, word: wy.clone() };
                                if keep(&a, &b) {
                                    level.push((a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
        level.sort();
    }
    let lookup: Vec<HashMap<(DegenerateRef, DegenerateRef), usize>> = keys
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
        .collect();
    let mut prod = Product {
        object: Arc::new(FinSimplicialSet::empty()),
        first: SimplicialMap::from_empty(x.clone()),
        second: SimplicialMap::from_empty(y.clone()),
        lookup,
    };
    let mut names = vec![Vec::new(); top];
    let mut faces = vec![Vec::new(); top];
    for n in 0..top {
        for (a, b) in &keys[n] {
            names[n].push(format!("({},{})", x.ref_name(a), y.ref_name(b)));
            let fs = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        prod.pair(&x.face_of(a, i), &y.face_of(b, i))
                            .expect("faces of product cells lie in the product")
                    })
                    .collect()
            };
            faces[n].push(fs);
        }
    }
    disambiguate(&mut names);
    let object = Arc::new(FinSimplicialSet::from_parts_unchecked(names, faces));
    let proj = |pick: fn(&(DegenerateRef, DegenerateRef)) -> DegenerateRef, t: &Arc<FinSimplicialSet>| {
        SimplicialMap {
            source: object.clone(),
            target: t.clone(),
            assignment: (0..object.names.len())
                .map(|n| keys[n].iter().map(pick).collect())
                .collect(),
        }
    };
    prod.first = proj(|k| k.0.clone(), x);
    prod.second = proj(|k| k.1.clone(), y);
    prod.object = object;
    prod
}

/// `X ⊔_A Y` for `f: A -> X`, `g: A -> Y`, with both coprojections.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<FinSimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    reps: Vec<Vec<(Side, Cell)>>,
}

impl Pushout {
    /// The map out of the pushout determined by `u: X -> Z` and `v: Y -> Z`.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> SimplicialMap {
        let assignment = self
            .reps
            .iter()
            .map(|l| {
                l.iter()
                    .map(|&(side, c)| match side {
                        Side::Left => u.at(c).clone(),
                        Side::Right => v.at(c).clone(),
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { source: self.object.clone(), target: u.target.clone(), assignment }
    }

    /// The nondegenerate cell of the source chosen to represent a pushout cell.
    pub fn representative(&self, c: Cell) -> (Side, Cell) {
        self.reps[c.dim][c.index]
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let next = self.0[a];
            self.0[a] = r;
            a = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Pushout {
    assert_eq!(f.source, g.source, "pushout legs must share their source");
    let (x, y, a) = (&f.target, &g.target, &f.source);
    let d = x.top().max(y.top());
    let empty = x.dims() < 0 && y.dims() < 0;
    let tx = SimplexTable::new(x, d);
    let ty = SimplexTable::new(y, d);
    let ta = SimplexTable::new(a, d);
    // class[n][member] and the nondegenerate classes at each level
    let mut class_of: Vec<Vec<usize>> = Vec::new();
    let mut nondeg_cell: Vec<HashMap<usize, usize>> = Vec::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut reps: Vec<Vec<(Side, Cell)>> = Vec::new();
    let member = |n: usize, m: usize| -> (Side, &DegenerateRef) {
        let nx = tx.level(n).len();
        if m < nx {
            (Side::Left, tx.get(n, m as u32))
        } else {
            (Side::Right, ty.get(n, (m - nx) as u32))
        }
    };
    for n in 0..=d {
        let nx = tx.level(n).len();
        let total = nx + ty.level(n).len();
        let mut uf = UnionFind((0..total).collect());
        for s in ta.level(n) {
            let i = tx.lookup(&f.image(s)).expect("image in X") as usize;
            let j = ty.lookup(&g.image(s)).expect("image in Y") as usize;
            uf.union(i, nx + j);
        }
        let roots: Vec<usize> = (0..total).map(|m| uf.find(m)).collect();
        let mut degenerate_class = vec![false; total];
        for (m, &r) in roots.iter().enumerate() {
            if member(n, m).1.is_degenerate() {
                degenerate_class[r] = true;
            }
        }
        let mut cells = HashMap::new();
        let mut lnames = Vec::new();
        let mut lreps = Vec::new();
        for (m, &r) in roots.iter().enumerate() {
            if r == m && !degenerate_class[r] {
                cells.insert(r, lnames.len());
                let (side, s) = member(n, m);
                lnames.push(match side {
                    Side::Left => x.name(s.base).to_string(),
                    Side::Right => y.name(s.base).to_string(),
                });
                lreps.push((side, s.base));
            }
        }
        class_of.push(roots);
        nondeg_cell.push(cells);
        names.push(lnames);
        reps.push(lreps);
    }
    // normal forms of classes, computed bottom-up
    let mut nf: Vec<HashMap<usize, DegenerateRef>> = vec![HashMap::new(); d + 1];
    for n in 0..=d {
        let total = class_of[n].len();
        for m in 0..total {
            let r = class_of[n][m];
            if nf[n].contains_key(&r) {
                continue;
            }
            let value = if let Some(&idx) = nondeg_cell[n].get(&r) {
                DegenerateRef::nondeg(Cell::new(n, idx))
            } else {
                let dm = (0..total)
                    .find(|&k| class_of[n][k] == r && member(n, k).1.is_degenerate())
                    .expect("degenerate member");
                let (side, s) = member(n, dm);
                let k = s.base.dim;
                let base_idx = match side {
                    Side::Left => tx.lookup(&DegenerateRef::nondeg(s.base)).expect("base") as usize,
                    Side::Right => {
                        tx.level(k).len()
                            + ty.lookup(&DegenerateRef::nondeg(s.base)).expect("base") as usize
                    }
                };
                let base_class = class_of[k][base_idx];
                nf[k][&base_class].degenerate_by(&s.surjection())
            };
            nf[n].insert(r, value);
        }
    }
    let class_nf = |side: Side, s: &DegenerateRef| -> DegenerateRef {
        let n = s.dim();
        let m = match side {
            Side::Left => tx.lookup(s).expect("simplex of X") as usize,
            Side::Right => tx.level(n).len() + ty.lookup(s).expect("simplex of Y") as usize,
        };
        nf[n][&class_of[n][m]].clone()
    };
    let mut faces: Vec<Vec<Vec<DegenerateRef>>> = Vec::new();
    for n in 0..=d {
        let mut lf = Vec::new();
        for &(side, c) in &reps[n] {
            let src = if side == Side::Left { x } else { y };
            let fs = if n == 0 {
                Vec::new()
            } else {
                let me = DegenerateRef::nondeg(c);
                (0..=n).map(|i| class_nf(side, &src.face_of(&me, i))).collect()
            };
            lf.push(fs);
        }
        faces.push(lf);
    }
    if empty {
        names.clear();
        faces.clear();
        reps.clear();
    }
    disambiguate(&mut names);
    let object = Arc::new(FinSimplicialSet::from_parts_unchecked(names, faces));
    reps.truncate(object.names.len());
    let coproj = |side: Side, s: &Arc<FinSimplicialSet>| SimplicialMap {
        source: s.clone(),
        target: object.clone(),
        assignment: (0..s.names.len())
            .map(|n| s.cells(n).map(|c| class_nf(side, &DegenerateRef::nondeg(c))).collect())
            .collect(),
    };
    let left = coproj(Side::Left, x);
    let right = coproj(Side::Right, y);
    Pushout { object, left, right, reps }
}

/// The subcomplex on a face-closed set of nondegenerate cells, with its inclusion.
pub fn subcomplex(
    x: &Arc<FinSimplicialSet>,
    keep: &BTreeSet<Cell>,
) -> Result<(Arc<FinSimplicialSet>, SimplicialMap)> {
    let top = keep.iter().map(|c| c.dim + 1).max().unwrap_or(0);
    let mut renumber: HashMap<Cell, Cell> = HashMap::new();
    let mut names = vec![Vec::new(); top];
    for &c in keep {
        if c.dim >= x.names.len() || c.index >= x.count(c.dim) {
            return Err(Error::InvalidParams(format!("no cell {c:?}")));
        }
        renumber.insert(c, Cell::new(c.dim, names[c.dim].len()));
        names[c.dim].push(x.name(c).to_string());
    }
    let mut faces = vec![Vec::new(); top];
    let mut assignment = vec![Vec::new(); top];
    for &c in keep {
        let mut fs = Vec::new();
        for f in x.faces_of(c) {
            let b = renumber.get(&f.base).ok_or_else(|| {
                Error::InvalidParams(format!("cell set not closed under faces at {}", x.name(c)))
            })?;
            fs.push(DegenerateRef { base: *b, word: f.word.clone() });
        }
        faces[c.dim].push(fs);
        assignment[c.dim].push(DegenerateRef::nondeg(c));
    }
    let sub = Arc::new(FinSimplicialSet::from_parts_unchecked(names, faces));
    assignment.truncate(sub.names.len());
    let inc = SimplicialMap { source: sub.clone(), target: x.clone(), assignment };
    Ok((sub, inc))
}
