//! Oracles and invariant checks shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use cocart::corpus::{self, Item};
use cocart::fibration::{
    cocartesian_edges, cocartesian_functors_over, is_cocartesian_edge_by_slices, is_cocartesian_functor,
    is_fiberwise_equivalence, left_fibration_part, power, pullback_fibration, tensor, Fibration,
};
use cocart::fincat::{Cat, FinCategory, Functor, DEFAULT_GUARD};
use cocart::grothendieck::{round_trip_fibration, unstraighten};
use cocart::necklace::{pi0_mapping_space, NecklaceOpts};
use cocart::simplicial::{build_standard, enumerate_maps, nerve_truncated, product, pushout, simplex_map};
use cocart::simplicial::{Cell, FinSimplicialSet, SimplicialMap};
use rand::Rng;

pub type Check = Result<(), String>;

/// Raw-word model of the marked simplex category: words in cofaces, codegeneracies,
/// `a: ⟨1⟩ -> +` and `b: + -> ⟨0⟩`, reduced by `b∘a = σ⁰` and composition in Δ.
pub mod raw_words {
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Obj {
        Iota(usize),
        Plus,
    }

    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
    enum Token {
        Map(Vec<usize>, usize),
        A,
        B,
    }

    #[derive(Clone, Copy, Debug)]
    enum Letter {
        Coface(usize, usize),
        Codegeneracy(usize, usize),
        A,
        B,
    }

    fn letters(at: Obj, max_deg: usize) -> Vec<(Letter, Obj)> {
        match at {
            Obj::Plus => vec![(Letter::B, Obj::Iota(0))],
            Obj::Iota(n) => {
                let mut v = Vec::new();
                if n < max_deg {
                    for i in 0..=n + 1 {
                        v.push((Letter::Coface(i, n + 1), Obj::Iota(n + 1)));
                    }
                }
                if n >= 1 {
                    for j in 0..n {
                        v.push((Letter::Codegeneracy(j, n - 1), Obj::Iota(n - 1)));
                    }
                }
                if n == 1 {
                    v.push((Letter::A, Obj::Plus));
                }
                v
            }
        }
    }

    fn as_map(l: Letter) -> Option<(Vec<usize>, usize)> {
        match l {
            // δⁱ: ⟨n-1⟩ -> ⟨n⟩ skips i
            Letter::Coface(i, n) => Some(((0..n).map(|k| if k < i { k } else { k + 1 }).collect(), n)),
            // σʲ: ⟨n+1⟩ -> ⟨n⟩ repeats j
            Letter::Codegeneracy(j, n) => Some(((0..n + 2).map(|k| if k <= j { k } else { k - 1 }).collect(), n)),
            _ => None,
        }
    }

    fn push(tokens: &mut Vec<Token>, t: Token) {
        match (tokens.last_mut(), t) {
            (Some(Token::Map(f, _)), Token::Map(g, n)) => {
                let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                *tokens.last_mut().unwrap() = Token::Map(h, n);
            }
            (Some(Token::A), Token::B) => {
                tokens.pop();
                push(tokens, Token::Map(vec![0, 0], 0));
            }
            (_, t) => tokens.push(t),
        }
    }

    fn normal_form(start: Obj, word: &[Letter]) -> Vec<Token> {
        let mut tokens = Vec::new();
        if let Obj::Iota(n) = start {
            tokens.push(Token::Map((0..=n).collect(), n));
        }
        for &l in word {
            let t = match (as_map(l), l) {
                (Some((m, n)), _) => Token::Map(m, n),
                (None, Letter::A) => Token::A,
                _ => Token::B,
            };
            push(&mut tokens, t);
        }
        let is_id = |t: &Token| matches!(t, Token::Map(m, n) if m.len() == n + 1 && m.iter().enumerate().all(|(i, &x)| i == x));
        if tokens.len() > 1 {
            tokens.retain(|t| !is_id(t));
        }
        tokens
    }

    /// Distinct normal forms of words `x -> y` of length at most `max_len`, never
    /// passing above degree `max_deg`.
    pub fn hom_count(x: Obj, y: Obj, max_len: usize, max_deg: usize) -> usize {
        let mut forms = std::collections::BTreeSet::new();
        let mut stack: Vec<(Obj, Vec<Letter>)> = vec![(x, Vec::new())];
        while let Some((at, word)) = stack.pop() {
            if at == y {
                forms.insert(normal_form(x, &word));
            }
            if word.len() == max_len {
                continue;
            }
            for (l, next) in letters(at, max_deg) {
                let mut w = word.clone();
                w.push(l);
                stack.push((next, w));
            }
        }
        forms.len()
    }
}

/// Nondecreasing maps `[m] -> [n]`, by brute force.
pub fn monotone_count(m: usize, n: usize) -> usize {
    let mut count = 0;
    let total = (n + 1).pow(m as u32 + 1);
    for code in 0..total {
        let mut c = code;
        let digits: Vec<usize> = (0..=m).map(|_| {
            let d = c % (n + 1);
            c /= n + 1;
            d
        }).collect();
        if digits.windows(2).all(|w| w[0] <= w[1]) {
            count += 1;
        }
    }
    count
}

/// Small simplicial sets: standard shapes and nerves of small posets.
pub fn small_sets() -> Vec<(String, Arc<FinSimplicialSet>)> {
    let mut out = Vec::new();
    for (k, p) in [
        ("simplex", vec![0]),
        ("simplex", vec![1]),
        ("simplex", vec![2]),
        ("boundary", vec![2]),
        ("horn", vec![2, 0]),
        ("horn", vec![2, 1]),
        ("spine", vec![2]),
    ] {
        out.push((format!("{k}{p:?}"), Arc::new(build_standard(k, &p).unwrap())));
    }
    let v = FinCategory::poset(vec!["0".into(), "1".into(), "2".into()], |a, b| a == b || a == 0);
    out.push(("N(V)".into(), nerve_truncated(&Arc::new(v), 2).set.clone()));
    out
}

/// `d_i d_j = d_{j-1} d_i` for `i < j`, and the face-degeneracy identities, on every cell.
pub fn simplicial_identities(x: &FinSimplicialSet) -> Check {
    x.check().map_err(|e| e.to_string())?;
    if x.dims() < 0 {
        return Ok(());
    }
    for c in x.all_cells() {
        let n = c.dim;
        let r = cocart::simplicial::DegenerateRef::nondeg(c);
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = x.face_of(&x.face_of(&r, j), i);
                    let rhs = x.face_of(&x.face_of(&r, i), j - 1);
                    if lhs != rhs {
                        return Err(format!("d{i} d{j} ≠ d{} d{i} on {}", j - 1, x.name(c)));
                    }
                }
            }
        }
        for j in 0..=n {
            let s = r.degeneracy(j);
            for i in 0..=n + 1 {
                let lhs = x.face_of(&s, i);
                let want = if i == j || i == j + 1 {
                    r.clone()
                } else if n == 0 {
                    continue;
                } else if i < j {
                    x.face_of(&r, i).degeneracy(j - 1)
                } else {
                    x.face_of(&r, i - 1).degeneracy(j)
                };
                if lhs != want {
                    return Err(format!("d{i} s{j} fails on {}", x.name(c)));
                }
            }
        }
    }
    Ok(())
}

/// Maps `T -> X × Y` correspond to pairs of maps.
pub fn product_property(t: &Arc<FinSimplicialSet>, x: &Arc<FinSimplicialSet>, y: &Arc<FinSimplicialSet>) -> Check {
    let pr = product(x, y);
    let into = enumerate_maps(t, &pr.object);
    let mut pairs = BTreeSet::new();
    for h in &into {
        let key = (format!("{:?}", h.then(&pr.first).assignment), format!("{:?}", h.then(&pr.second).assignment));
        if !pairs.insert(key) {
            return Err("two maps into the product have the same projections".into());
        }
    }
    let want = enumerate_maps(t, x).len() * enumerate_maps(t, y).len();
    if pairs.len() != want {
        return Err(format!("{} maps into the product, {} pairs", pairs.len(), want));
    }
    Ok(())
}

/// Maps out of `X ⊔_A Y` correspond to compatible pairs.
pub fn pushout_property(f: &SimplicialMap, g: &SimplicialMap, w: &Arc<FinSimplicialSet>) -> Check {
    let po = pushout(f, g);
    let out = enumerate_maps(&po.object, w);
    let mut seen = BTreeSet::new();
    for h in &out {
        let (u, v) = (po.left.then(h), po.right.then(h));
        if f.then(&u).assignment != g.then(&v).assignment {
            return Err("restrictions of a map out of the pushout are incompatible".into());
        }
        if !seen.insert((format!("{:?}", u.assignment), format!("{:?}", v.assignment))) {
            return Err("two maps out of the pushout restrict to the same pair".into());
        }
    }
    let us = enumerate_maps(&f.target, w);
    let vs = enumerate_maps(&g.target, w);
    let compatible = us
        .iter()
        .map(|u| vs.iter().filter(|v| f.then(u).assignment == g.then(v).assignment).count())
        .sum::<usize>();
    if compatible != out.len() {
        return Err(format!("{} maps out of the pushout, {compatible} compatible pairs", out.len()));
    }
    for h in &out {
        let back = po.induced(&po.left.then(h), &po.right.then(h));
        if back.assignment != h.assignment {
            return Err("induced map differs from the original".into());
        }
    }
    Ok(())
}

/// Gluing inputs: two standard shapes sharing a vertex or an edge.
pub fn gluings() -> Vec<(String, SimplicialMap, SimplicialMap)> {
    let s = |n: i64| Arc::new(build_standard("simplex", &[n]).unwrap());
    let h = Arc::new(build_standard("horn", &[2, 1]).unwrap());
    let (d0, d1, d2) = (s(0), s(1), s(2));
    vec![
        ("Δ¹ ⊔_Δ⁰ Δ¹".into(), simplex_map(&d0, &d1, &[1]).unwrap(), simplex_map(&d0, &d1, &[0]).unwrap()),
        ("Δ² ⊔_Δ¹ Δ²".into(), simplex_map(&d1, &d2, &[0, 2]).unwrap(), simplex_map(&d1, &d2, &[0, 1]).unwrap()),
        ("Λ²₁ ⊔_Δ¹ Δ¹".into(), simplex_map(&d1, &h, &[0, 1]).unwrap(), simplex_map(&d1, &d1, &[0, 1]).unwrap()),
    ]
}

/// Cocartesian edges contain invertible arrows over identities, are closed under
/// composition and right cancellation, and agree with the slice description.
pub fn closure(p: &Functor) -> Check {
    let (pp, c) = (&*p.source, &*p.target);
    let flags = cocartesian_edges(p);
    for f in pp.arrows() {
        if pp.is_iso(f) && c.is_identity(p.ar(f)) && !flags[f] {
            return Err(format!("invertible {} over an identity is not flagged", pp.arrow_name(f)));
        }
        if flags[f] != is_cocartesian_edge_by_slices(p, f) {
            return Err(format!("slice description disagrees at {}", pp.arrow_name(f)));
        }
        for &g in pp.out(pp.tgt(f)) {
            let gf = pp.compose(g, f);
            if flags[f] && flags[g] && !flags[gf] {
                return Err(format!("{}∘{} not flagged", pp.arrow_name(g), pp.arrow_name(f)));
            }
            if flags[f] && flags[gf] && !flags[g] {
                return Err(format!("right cancellation fails for {} after {}", pp.arrow_name(g), pp.arrow_name(f)));
            }
        }
    }
    Ok(())
}

/// The pullback along `f` is a fibration and the comparison square is cocartesian.
pub fn pullback_stability(p: &Fibration, f: &Functor) -> Check {
    let (q, g) = pullback_fibration(p, f).map_err(|e| e.to_string())?;
    q.check().map_err(|e| e.to_string())?;
    match is_cocartesian_functor(&q, p, &g, f) {
        Ok(true) => Ok(()),
        Ok(false) => Err("comparison square is not a cocartesian functor".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Over every cocartesian functor `p -> q` over the base: equivalence iff fiberwise equivalence.
/// Returns how many were equivalences and how many were not.
pub fn fiberwise_criterion(p: &Fibration, q: &Fibration) -> Result<(usize, usize), String> {
    let hs = cocartesian_functors_over(p, q, DEFAULT_GUARD).map_err(|e| e.to_string())?;
    let (mut yes, mut no) = (0, 0);
    for h in &hs {
        let eq = h.is_equivalence();
        if eq != is_fiberwise_equivalence(h, p, q) {
            return Err(format!("equivalence {eq} but fiberwise equivalence {}", !eq));
        }
        if eq {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok((yes, no))
}

/// The fibrations to compare `p` with: itself, its left part and the round trip.
pub fn partners(p: &Fibration) -> Result<Vec<Fibration>, String> {
    let e = |e: cocart::Error| e.to_string();
    let lf = left_fibration_part(p).map_err(e)?.0;
    let rt = round_trip_fibration(p).map_err(e)?;
    let un = unstraighten(&rt.straightening.diagram).map_err(e)?;
    Ok(vec![p.clone(), lf, un.fibration])
}

/// `|Hom(D ⊗ p, q)| = |Hom(p, q^D)|` over the base, cocartesian functors.
pub fn tensor_power(d: &Cat, p: &Fibration, q: &Fibration) -> Check {
    let e = |e: cocart::Error| e.to_string();
    let left = cocartesian_functors_over(&tensor(d, p).map_err(e)?, q, DEFAULT_GUARD).map_err(e)?.len();
    let right = cocartesian_functors_over(p, &power(d, q, DEFAULT_GUARD).map_err(e)?, DEFAULT_GUARD).map_err(e)?.len();
    if left != right {
        return Err(format!("{left} maps out of the tensor, {right} into the power"));
    }
    Ok(())
}

/// Posets on at most `n` elements, one per isomorphism class.
pub fn posets_up_to(n: usize) -> Vec<FinCategory> {
    let mut out = Vec::new();
    for k in 1..=n {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let rel: BTreeSet<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let transitive = rel.iter().all(|&(a, b)| rel.iter().all(|&(c, d)| c != b || rel.contains(&(a, d))));
            if !transitive {
                continue;
            }
            let canon = permutations(k)
                .into_iter()
                .map(|pi| {
                    let mut r: Vec<(usize, usize)> = rel.iter().map(|&(a, b)| (pi[a], pi[b])).collect();
                    r.sort();
                    r
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                let names = (0..k).map(|i| i.to_string()).collect();
                out.push(FinCategory::poset(names, |a, b| a == b || rel.contains(&(a, b))));
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// `π₀` of every mapping space of the nerve is `|Hom_P(s, t)|`.
pub fn poset_soundness(poset: &FinCategory) -> Check {
    let c: Cat = Arc::new(poset.clone());
    let nv = nerve_truncated(&c, 3);
    let opts = NecklaceOpts { nondeg_only: true, max_dim: 3, max_beads: 3 };
    for s in c.objects() {
        for t in c.objects() {
            let got = pi0_mapping_space(&nv.set, Cell::new(0, s), Cell::new(0, t), opts).map_err(|e| e.to_string())?;
            if got != c.hom(s, t).len() {
                return Err(format!("π₀({s}, {t}) = {got}, |Hom| = {}", c.hom(s, t).len()));
            }
        }
    }
    Ok(())
}

/// Maps `f: C' -> C` from random posets into the base of `p`.
pub fn base_changes(seed: u64, base: &Cat, count: usize) -> Vec<Functor> {
    let mut r = corpus::rng(seed);
    let mut out = Vec::new();
    for _ in 0..count * 10 {
        if out.len() == count {
            break;
        }
        let k = r.gen_range(1..=3);
        let c2 = corpus::random_poset(&mut r, k, 0.5);
        if let Some(m) = corpus::random_monotone(&mut r, &c2, base, 30) {
            out.push(Functor::from_objects(Arc::new(c2), base.clone(), m).unwrap());
        }
    }
    out
}

/// Verified fibrations from the functor corpus.
pub fn fibrations(items: &[Item<Functor>]) -> Vec<Item<Fibration>> {
    items
        .iter()
        .filter_map(|it| Fibration::new(it.value.clone()).ok().map(|f| Item { name: it.name.clone(), value: f }))
        .collect()
}

/// Groups fibrations by base, up to equality of the base category.
pub fn by_base(fs: &[Item<Fibration>]) -> Vec<Vec<&Item<Fibration>>> {
    let mut groups: BTreeMap<String, Vec<&Item<Fibration>>> = BTreeMap::new();
    for f in fs {
        groups.entry(format!("{:?}", cocart::json::category_to_json(f.value.base()))).or_default().push(f);
    }
    groups.into_values().collect()
}

/// Tally of failures per suite.
#[derive(Default, Debug)]
pub struct Tally {
    pub checked: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, suite: &'static str, item: &str, r: Check) {
        *self.checked.entry(suite).or_default() += 1;
        if let Err(e) = r {
            self.failures.push(format!("{suite} / {item}: {e}"));
        }
    }
}
