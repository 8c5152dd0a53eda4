use std::sync::Arc;

use super::{Cell, DegenerateRef, FinSimplicialSet, SimplexTable, SimplicialMap};

/// Result of a backtracking map search. Assignments are table indices per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Complete(Vec<Vec<Vec<u32>>>),
    BudgetExceeded { found: Vec<Vec<Vec<u32>>>, nodes: u64 },
}

impl SearchOutcome {
    pub fn solutions(&self) -> &[Vec<Vec<u32>>] {
        match self {
            SearchOutcome::Complete(s) => s,
            SearchOutcome::BudgetExceeded { found, .. } => found,
        }
    }
}

type Filter<'a> = Box<dyn Fn(Cell, u32) -> bool + 'a>;

/// Backtracking search for maps `source -> target` over nondegenerate source cells
/// in dimension order, with optional fixed values and a per-candidate filter.
pub struct MapSearch<'a> {
    source: &'a FinSimplicialSet,
    target: &'a SimplexTable,
    fixed: Vec<Vec<Option<u32>>>,
    filter: Option<Filter<'a>>,
    budget: u64,
    limit: usize,
    conflict: bool,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a FinSimplicialSet, target: &'a SimplexTable) -> Self {
        assert!(source.dims() < 0 || source.top() <= target.top(), "target table too shallow");
        let fixed = (0..=source.top()).map(|n| vec![None; source.count(n)]).collect();
        MapSearch {
            source,
            target,
            fixed,
            filter: None,
            budget: u64::MAX,
            limit: usize::MAX,
            conflict: false,
        }
    }

    /// Prescribes the image of a cell; conflicting prescriptions empty the search.
    pub fn fix(&mut self, c: Cell, idx: u32) {
        match self.fixed[c.dim][c.index] {
            Some(old) if old != idx => self.conflict = true,
            _ => self.fixed[c.dim][c.index] = Some(idx),
        }
    }

    /// Marks the search as having no solutions.
    pub fn fail(&mut self) {
        self.conflict = true;
    }

    pub fn filter(mut self, f: impl Fn(Cell, u32) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    pub fn limit(mut self, n: usize) -> Self {
        self.limit = n;
        self
    }

    pub fn run(&self) -> SearchOutcome {
        let mut st = State {
            assigned: (0..=self.source.top()).map(|n| vec![0u32; self.source.count(n)]).collect(),
            found: Vec::new(),
            nodes: 0,
            out_of_budget: false,
        };
        if !self.conflict {
            let order: Vec<Cell> = self.source.all_cells().collect();
            self.go(&order, 0, &mut st);
        }
        if st.out_of_budget {
            SearchOutcome::BudgetExceeded { found: st.found, nodes: st.nodes }
        } else {
            SearchOutcome::Complete(st.found)
        }
    }

    fn face_image(&self, st: &State, f: &DegenerateRef) -> u32 {
        let b = st.assigned[f.base.dim][f.base.index];
        self.target.degenerate(f.base.dim, b, &f.word)
    }

    fn go(&self, order: &[Cell], pos: usize, st: &mut State) -> bool {
        if st.found.len() >= self.limit {
            return true;
        }
        if pos == order.len() {
            st.found.push(st.assigned.clone());
            return st.found.len() >= self.limit;
        }
        let c = order[pos];
        let n = c.dim;
        let required: Vec<u32> = if n == 0 {
            Vec::new()
        } else {
            self.source.faces_of(c).iter().map(|f| self.face_image(st, f)).collect()
        };
        let fits = |idx: u32| -> bool {
            (n == 0 || self.target.faces(n, idx) == required.as_slice())
                && self.filter.as_ref().is_none_or(|f| f(c, idx))
        };
        let candidates: Vec<u32> = match self.fixed[n][c.index] {
            Some(idx) => vec![idx],
            None if n == 0 => (0..self.target.level(0).len() as u32).collect(),
            None => self.target.with_ends(n, required[0], required[n]).to_vec(),
        };
        for idx in candidates {
            st.nodes += 1;
            if st.nodes > self.budget {
                st.out_of_budget = true;
                return true;
            }
            if !fits(idx) {
                continue;
            }
            st.assigned[n][c.index] = idx;
            if self.go(order, pos + 1, st) {
                return true;
            }
        }
        false
    }

    /// Converts table-index assignments into maps.
    pub fn to_maps(
        &self,
        source: &Arc<FinSimplicialSet>,
        target: &Arc<FinSimplicialSet>,
        sols: &[Vec<Vec<u32>>],
    ) -> Vec<SimplicialMap> {
        sols.iter()
            .map(|s| SimplicialMap {
                source: source.clone(),
                target: target.clone(),
                assignment: if source.dims() < 0 {
                    Vec::new()
                } else {
                    s.iter()
                        .enumerate()
                        .map(|(n, l)| l.iter().map(|&i| self.target.get(n, i).clone()).collect())
                        .collect()
                },
            })
            .collect()
    }
}

struct State {
    assigned: Vec<Vec<u32>>,
    found: Vec<Vec<Vec<u32>>>,
    nodes: u64,
    out_of_budget: bool,
}

/// All maps `x -> y`.
pub fn enumerate_maps(x: &Arc<FinSimplicialSet>, y: &Arc<FinSimplicialSet>) -> Vec<SimplicialMap> {
    let table = SimplexTable::new(y, x.top());
    let search = MapSearch::new(x, &table);
    let out = search.run();
    search.to_maps(x, y, out.solutions())
}
