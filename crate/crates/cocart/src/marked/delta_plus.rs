//! The marked simplex category `Δ₊`: `Δ` with an extra object `+` and arrows
//! `a: ι⟨1⟩ -> +`, `b: + -> ι⟨0⟩` subject to `b∘a = σ⁰`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::simplicial::ordinal;
use crate::{Error, Result};

/// Degree bound used by [`delta_plus_hom`].
pub const DEFAULT_DEGREE_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DpObject {
    Iota(usize),
    Plus,
}

impl DpObject {
    fn degree(self) -> usize {
        match self {
            DpObject::Iota(n) => n,
            DpObject::Plus => 1,
        }
    }
}

impl fmt::Display for DpObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DpObject::Iota(n) => write!(f, "ι⟨{n}⟩"),
            DpObject::Plus => write!(f, "+"),
        }
    }
}

impl FromStr for DpObject {
    type Err = Error;

    /// Accepts `+`, `n`, `[n]`, `<n>`, `⟨n⟩` and `ιn` forms.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "+" {
            return Ok(DpObject::Plus);
        }
        let digits: String = t
            .trim_start_matches('ι')
            .trim_matches(|c| matches!(c, '[' | ']' | '<' | '>' | '⟨' | '⟩'))
            .to_string();
        digits
            .parse()
            .map(DpObject::Iota)
            .map_err(|_| Error::Parse(format!("not an object of Δ₊: {s}")))
    }
}

/// An arrow of `Δ₊` in normal form. Every arrow is uniquely one of these, since
/// the only way through `+` is `b∘a`, which rewrites to `σ⁰`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DeltaPlusArrow {
    /// A monotone map `θ: ι⟨m⟩ -> ι⟨n⟩`, with `n`.
    Delta(Vec<usize>, usize),
    /// `a∘θ` for `θ: ⟨m⟩ -> ⟨1⟩`.
    A(Vec<usize>),
    /// `θ∘b` for `θ: ⟨0⟩ -> ⟨n⟩`, with `n`.
    B(Vec<usize>, usize),
    /// `a∘θ∘b` for `θ: ⟨0⟩ -> ⟨1⟩`.
    Atb(Vec<usize>),
    IdPlus,
}

const SIGMA0: [usize; 2] = [0, 0];

impl DeltaPlusArrow {
    pub fn source(&self) -> DpObject {
        match self {
            DeltaPlusArrow::Delta(t, _) | DeltaPlusArrow::A(t) => DpObject::Iota(t.len() - 1),
            _ => DpObject::Plus,
        }
    }

    pub fn target(&self) -> DpObject {
        match self {
            DeltaPlusArrow::Delta(_, n) | DeltaPlusArrow::B(_, n) => DpObject::Iota(*n),
            _ => DpObject::Plus,
        }
    }

    /// `self ∘ f`, or `None` when not composable.
    pub fn after(&self, f: &DeltaPlusArrow) -> Option<DeltaPlusArrow> {
        use DeltaPlusArrow::*;
        let c = ordinal::compose;
        if self.source() != f.target() {
            return None;
        }
        Some(match (self, f) {
            (IdPlus, IdPlus | A(_) | Atb(_)) => f.clone(),
            (B(..) | Atb(_), IdPlus) => self.clone(),
            (Delta(p, n), Delta(t, _)) => Delta(c(p, t), *n),
            (A(p), Delta(t, _)) => A(c(p, t)),
            (Delta(p, n), B(t, _)) => B(c(p, t), *n),
            (A(p), B(t, _)) => Atb(c(p, t)),
            (B(t, n), A(p)) => Delta(c(t, &c(&SIGMA0, p)), *n),
            (B(t, n), Atb(p)) => B(c(t, &c(&SIGMA0, p)), *n),
            (Atb(p), A(t)) => A(c(p, &c(&SIGMA0, t))),
            (Atb(p), Atb(t)) => Atb(c(p, &c(&SIGMA0, t))),
            _ => return None,
        })
    }
}

/// `θ` as a composite of cofaces after codegeneracies.
fn render_delta(t: &[usize], n: usize) -> String {
    let (rho, image) = ordinal::epi_mono(t);
    let mut parts = Vec::new();
    let omitted: Vec<usize> = (0..=n).filter(|v| !image.contains(v)).collect();
    for &j in omitted.iter().rev() {
        parts.push(format!("δ{}", sup(j)));
    }
    for j in ordinal::word_from_surjection(&rho).into_iter().rev() {
        parts.push(format!("σ{}", sup(j)));
    }
    if parts.is_empty() {
        format!("id⟨{n}⟩")
    } else {
        parts.join("∘")
    }
}

fn sup(n: usize) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| D[c.to_digit(10).expect("digit") as usize]).collect()
}

impl fmt::Display for DeltaPlusArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = |t: &[usize], n: usize| {
            if t.len() == n + 1 && t.iter().enumerate().all(|(i, &v)| i == v) {
                None
            } else {
                Some(render_delta(t, n))
            }
        };
        match self {
            DeltaPlusArrow::Delta(t, n) => write!(f, "{}", render_delta(t, *n)),
            DeltaPlusArrow::A(t) => match inner(t, 1) {
                None => write!(f, "a"),
                Some(s) => write!(f, "a∘{s}"),
            },
            DeltaPlusArrow::B(t, n) => match inner(t, *n) {
                None => write!(f, "b"),
                Some(s) => write!(f, "{s}∘b"),
            },
            DeltaPlusArrow::Atb(t) => write!(f, "a∘{}∘b", render_delta(t, 1)),
            DeltaPlusArrow::IdPlus => write!(f, "id₊"),
        }
    }
}

/// One generator: an elementary coface or codegeneracy, `a` or `b`.
fn generators(x: DpObject, bound: usize) -> Vec<DeltaPlusArrow> {
    let mut out = Vec::new();
    match x {
        DpObject::Iota(m) => {
            if m < bound {
                for i in 0..=m + 1 {
                    out.push(DeltaPlusArrow::Delta(ordinal::coface(m + 1, i), m + 1));
                }
            }
            if m > 0 {
                for j in 0..m {
                    out.push(DeltaPlusArrow::Delta(ordinal::codegeneracy(m - 1, j), m - 1));
                }
            }
            if m == 1 {
                out.push(DeltaPlusArrow::A(ordinal::identity(1)));
            }
        }
        DpObject::Plus => out.push(DeltaPlusArrow::B(vec![0], 0)),
    }
    out
}

fn identity(x: DpObject) -> DeltaPlusArrow {
    match x {
        DpObject::Iota(m) => DeltaPlusArrow::Delta(ordinal::identity(m), m),
        DpObject::Plus => DeltaPlusArrow::IdPlus,
    }
}

/// `Hom(x, y)` with the default degree bound.
pub fn delta_plus_hom(x: DpObject, y: DpObject) -> Result<Vec<(DeltaPlusArrow, String)>> {
    delta_plus_hom_with(x, y, DEFAULT_DEGREE_BOUND)
}

/// `Hom(x, y)` as the normal forms reachable from `id_x` by postcomposing
/// generators, never passing through an object of degree above `bound`.
pub fn delta_plus_hom_with(x: DpObject, y: DpObject, bound: usize) -> Result<Vec<(DeltaPlusArrow, String)>> {
    let need = x.degree().max(y.degree());
    if need > bound {
        return Err(Error::BoundExceeded { bound, what: format!("Hom({x}, {y}) needs degree {need}") });
    }
    let mut seen: BTreeSet<DeltaPlusArrow> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity(x));
    queue.push_back(identity(x));
    while let Some(f) = queue.pop_front() {
        for g in generators(f.target(), bound) {
            let h = g.after(&f).expect("composable");
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    Ok(seen
        .into_iter()
        .filter(|f| f.target() == y)
        .map(|f| {
            let s = f.to_string();
            (f, s)
        })
        .collect())
}
