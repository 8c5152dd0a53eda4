use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::simplicial::{simplex_map, vertex_cell, Shape};

fn shape(s: Shape) -> Arc<FinSimplicialSet> {
    Arc::new(s.build().unwrap())
}

fn degenerate_edges(x: &FinSimplicialSet) -> Vec<DegenerateRef> {
    x.cells(0).map(|v| DegenerateRef { base: v, word: vec![0] }).collect()
}

#[test]
fn mark_examples() {
    let d1 = shape(Shape::Simplex(1));
    let flat = mark(&d1, Marking::Flat).unwrap();
    assert_eq!(flat.marked_edges().len(), 2);
    assert!(flat.is_flat());
    let sharp = mark(&d1, Marking::Sharp).unwrap();
    assert!(sharp.is_sharp());
    assert_eq!(sharp.marked_edges().len(), 3);

    let d2 = shape(Shape::Simplex(2));
    let e01 = DegenerateRef::nondeg(vertex_cell(&d2, &[0, 1]).unwrap());
    assert!(matches!(mark(&d2, Marking::Custom(vec![e01.clone()])), Err(Error::InvalidMarking(_))));
    let mut all = degenerate_edges(&d2);
    all.push(e01.clone());
    let m = mark(&d2, Marking::Custom(all)).unwrap();
    assert_eq!(m.marked_edges().len(), 4);
    assert!(m.is_marked(&e01));
    let e02 = DegenerateRef::nondeg(vertex_cell(&d2, &[0, 2]).unwrap());
    assert!(!m.is_marked(&e02));
    let bad = DegenerateRef::nondeg(vertex_cell(&d2, &[0, 1, 2]).unwrap());
    assert!(mark(&d2, Marking::Custom(vec![bad])).is_err());
}

#[test]
fn flat_to_sharp_is_identity_underneath() {
    for s in [Shape::Simplex(2), Shape::Horn(3, 1), Shape::WalkingEquivalence] {
        let x = shape(s);
        let f = MarkedMap::flat_to_sharp(&x);
        f.check().unwrap();
        assert!(f.map.is_isomorphism());
        assert!(f.source.marked_nondegenerate().is_subset(f.target.marked_nondegenerate()));
        // the other direction is not a marked map unless there are no edges
        let back = MarkedMap { source: f.target.clone(), target: f.source.clone(), map: f.map.clone() };
        assert_eq!(back.check().is_ok(), x.count(1) == 0);
    }
}

#[test]
fn marked_product_marks_pairs_of_marked_edges() {
    let d1 = shape(Shape::Simplex(1));
    let sharp = Arc::new(MarkedSimplicialSet::sharp(&d1));
    let flat = Arc::new(MarkedSimplicialSet::flat(&d1));
    assert_eq!(marked_product(&sharp, &sharp).object.marked_nondegenerate().len(), 5);
    // (Δ¹)^♯ × (Δ¹)^♭: edges whose second component is degenerate
    assert_eq!(marked_product(&sharp, &flat).object.marked_nondegenerate().len(), 2);
    assert_eq!(marked_product(&flat, &flat).object.marked_nondegenerate().len(), 0);
}

struct Square {
    k: Marked,
    l: Marked,
    m: Marked,
    n: Marked,
    top: SimplicialMap,
}

fn random_marking(x: &Arc<FinSimplicialSet>, rng: &mut ChaCha8Rng, p: f64) -> BTreeSet<usize> {
    (0..x.count(1)).filter(|_| rng.gen_bool(p)).collect()
}

/// `K -> M` on top, `K -> L` and `M -> N` identities underneath.
fn random_square(rng: &mut ChaCha8Rng) -> Square {
    let (ks, ms, vs): (Shape, Shape, Vec<usize>) = match rng.gen_range(0..3) {
        0 => (Shape::Simplex(1), Shape::Simplex(2), vec![0, 2]),
        1 => (Shape::Simplex(2), Shape::Simplex(3), vec![0, 1, 3]),
        _ => (Shape::Horn(2, 0), Shape::Simplex(2), vec![0, 1, 2]),
    };
    let (kx, mx) = (shape(ks), shape(ms));
    let top = simplex_map(&kx, &mx, &vs).unwrap();
    let km = random_marking(&kx, rng, 0.3);
    let lm: BTreeSet<usize> = km.union(&random_marking(&kx, rng, 0.4)).copied().collect();
    let image: BTreeSet<usize> = km.iter().map(|&e| top.at(Cell::new(1, e)).base.index).collect();
    let mm: BTreeSet<usize> = image.union(&random_marking(&mx, rng, 0.3)).copied().collect();
    let pushed: BTreeSet<usize> = lm.iter().map(|&e| top.at(Cell::new(1, e)).base.index).collect();
    let mut nm: BTreeSet<usize> = mm.union(&pushed).copied().collect();
    if rng.gen_bool(0.3) {
        nm.extend(random_marking(&mx, rng, 0.5));
    }
    let mk = |x: &Arc<FinSimplicialSet>, s: &BTreeSet<usize>| {
        Arc::new(MarkedSimplicialSet::with_edges(x, s.iter().copied()).unwrap())
    };
    Square { k: mk(&kx, &km), l: mk(&kx, &lm), m: mk(&mx, &mm), n: mk(&mx, &nm), top }
}

/// Some edge of `N` is hit twice by distinct marked edges of `L ⊔_K M`.
fn double_marked(sq: &Square) -> bool {
    let img = |e: usize| sq.top.at(Cell::new(1, e)).base.index;
    let from_l: BTreeSet<usize> = sq
        .l
        .marked_nondegenerate()
        .difference(sq.k.marked_nondegenerate())
        .map(|&e| img(e))
        .collect();
    let count_l = sq.l.marked_nondegenerate().difference(sq.k.marked_nondegenerate()).count();
    count_l != from_l.len() || from_l.iter().any(|e| sq.m.marked_nondegenerate().contains(e))
}

/// Pushout in marked simplicial sets, detected by the comparison map being an isomorphism.
fn is_marked_pushout(sq: &Square) -> bool {
    let f = MarkedMap { source: sq.k.clone(), target: sq.l.clone(), map: SimplicialMap::identity(sq.k.underlying.clone()) };
    let g = MarkedMap { source: sq.k.clone(), target: sq.m.clone(), map: sq.top.clone() };
    let po = marked_pushout(&f, &g);
    let u = MarkedMap { source: sq.l.clone(), target: sq.n.clone(), map: sq.top.clone() };
    let v = MarkedMap { source: sq.m.clone(), target: sq.n.clone(), map: SimplicialMap::identity(sq.m.underlying.clone()) };
    u.check().unwrap();
    v.check().unwrap();
    let c = po.induced(&u, &v);
    c.check().unwrap();
    c.map.is_isomorphism()
        && po.object.marked_nondegenerate().iter().map(|&e| c.map.at(Cell::new(1, e)).base.index).collect::<BTreeSet<_>>()
            == *sq.n.marked_nondegenerate()
}

/// Pushout of the marked-edge sets, computed as a set coequalizer.
fn is_set_pushout(sq: &Square) -> bool {
    let edges = |x: &Marked| x.marked_edges();
    let (lk, mk, nk) = (edges(&sq.l), edges(&sq.m), edges(&sq.n));
    let mut parent: Vec<usize> = (0..lk.len() + mk.len()).collect();
    fn find(p: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while p[r] != r {
            r = p[r];
        }
        p[a] = r;
        r
    }
    let pos = |v: &[DegenerateRef], x: &DegenerateRef| v.iter().position(|y| y == x).unwrap();
    for e in edges(&sq.k) {
        let a = pos(&lk, &e);
        let b = lk.len() + pos(&mk, &sq.top.image(&e));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut classes: BTreeMap<usize, BTreeSet<DegenerateRef>> = BTreeMap::new();
    for (i, e) in lk.iter().enumerate() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().insert(sq.top.image(e));
    }
    for (i, e) in mk.iter().enumerate() {
        let r = find(&mut parent, lk.len() + i);
        classes.entry(r).or_default().insert(e.clone());
    }
    let images: Vec<&DegenerateRef> = classes.values().map(|s| s.iter().next().unwrap()).collect();
    let distinct: BTreeSet<&DegenerateRef> = images.iter().copied().collect();
    classes.values().all(|s| s.len() == 1) && distinct.len() == images.len() && distinct.len() == nk.len()
}

#[test]
fn pushout_detection_at_plus() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut positives = 0;
    for _ in 0..200 {
        let sq = random_square(&mut rng);
        if double_marked(&sq) {
            continue;
        }
        let a = is_marked_pushout(&sq);
        assert_eq!(a, is_set_pushout(&sq));
        checked += 1;
        positives += a as usize;
    }
    assert!(checked >= 10 && positives >= 3 && checked - positives >= 3, "{checked} {positives}");
}
