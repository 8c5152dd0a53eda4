use std::collections::HashMap;

use super::{ordinal, DegenerateRef, FinSimplicialSet};

/// Every simplex (degenerate or not) of a finite simplicial set up to a level,
/// with face and degeneracy operators tabulated as indices.
#[derive(Clone, Debug)]
pub struct SimplexTable {
    levels: Vec<Vec<DegenerateRef>>,
    index: Vec<HashMap<DegenerateRef, u32>>,
    faces: Vec<Vec<Vec<u32>>>,
    degens: Vec<Vec<Vec<u32>>>,
    by_ends: Vec<HashMap<(u32, u32), Vec<u32>>>,
}

impl SimplexTable {
    pub fn new(x: &FinSimplicialSet, top: usize) -> Self {
        let mut levels = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut level = Vec::new();
            for k in (0..=n.min(x.top())).rev() {
                if x.dims() < 0 {
                    break;
                }
                let words = ordinal::words(n, n - k);
                for c in x.cells(k) {
                    for w in &words {
                        level.push(DegenerateRef { base: c, word: w.clone() });
                    }
                }
            }
            levels.push(level);
        }
        let index: Vec<HashMap<DegenerateRef, u32>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, r)| (r.clone(), i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        let mut by_ends = vec![HashMap::new()];
        for n in 1..=top {
            let mut fl = Vec::with_capacity(levels[n].len());
            let mut ends: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
            for (idx, r) in levels[n].iter().enumerate() {
                let fs: Vec<u32> = (0..=n).map(|i| index[n - 1][&x.face_of(r, i)]).collect();
                ends.entry((fs[0], fs[n])).or_default().push(idx as u32);
                fl.push(fs);
            }
            faces.push(fl);
            by_ends.push(ends);
        }
        let mut degens = Vec::with_capacity(top);
        for n in 0..top {
            let dl = levels[n]
                .iter()
                .map(|r| (0..=n).map(|j| index[n + 1][&r.degeneracy(j)]).collect())
                .collect();
            degens.push(dl);
        }
        SimplexTable { levels, index, faces, degens, by_ends }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[DegenerateRef] {
        self.levels.get(n).map_or(&[], |l| l.as_slice())
    }

    pub fn get(&self, n: usize, idx: u32) -> &DegenerateRef {
        &self.levels[n][idx as usize]
    }

    pub fn lookup(&self, x: &DegenerateRef) -> Option<u32> {
        self.index.get(x.dim())?.get(x).copied()
    }

    pub fn face(&self, n: usize, idx: u32, i: usize) -> u32 {
        self.faces[n][idx as usize][i]
    }

    pub fn faces(&self, n: usize, idx: u32) -> &[u32] {
        &self.faces[n][idx as usize]
    }

    pub fn degeneracy(&self, n: usize, idx: u32, j: usize) -> u32 {
        self.degens[n][idx as usize][j]
    }

    /// Applies the degeneracy word of a normal form to a simplex given by index.
    pub fn degenerate(&self, n: usize, idx: u32, word: &[usize]) -> u32 {
        let mut cur = idx;
        let mut d = n;
        for &j in word.iter().rev() {
            cur = self.degeneracy(d, cur, j);
            d += 1;
        }
        cur
    }

    /// Simplices of dimension `n >= 1` with prescribed `d_0` and `d_n`.
    pub fn with_ends(&self, n: usize, d0: u32, dn: u32) -> &[u32] {
        self.by_ends[n].get(&(d0, dn)).map_or(&[], |v| v.as_slice())
    }
}
