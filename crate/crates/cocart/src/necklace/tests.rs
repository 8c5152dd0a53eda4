use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::fincat::FinCategory;
use crate::simplicial::{nerve_truncated, MapSearch, Shape};

fn shape(s: Shape) -> Arc<FinSimplicialSet> {
    Arc::new(s.build().unwrap())
}

fn v(i: usize) -> Cell {
    Cell::new(0, i)
}

fn opts(nondeg_only: bool, max_dim: usize, max_beads: usize) -> NecklaceOpts {
    NecklaceOpts { nondeg_only, max_dim, max_beads }
}

/// Two edges `0 -> 1` and nothing else.
fn parallel_edges() -> Arc<FinSimplicialSet> {
    let p = |i| DegenerateRef::nondeg(v(i));
    Arc::new(
        FinSimplicialSet::new(
            vec![vec!["0".into(), "1".into()], vec!["e".into(), "f".into()]],
            vec![vec![vec![], vec![]], vec![vec![p(1), p(0)], vec![p(1), p(0)]]],
        )
        .unwrap(),
    )
}

fn names(ms: &[NecklaceMap]) -> Vec<String> {
    ms.iter().map(|m| m.name()).collect()
}

#[test]
fn enumeration() {
    let d1 = shape(Shape::Simplex(1));
    let ms = enumerate(&d1, v(0), v(1), opts(true, 2, 3));
    assert_eq!(names(&ms), vec!["01"]);
    assert_eq!(ms[0].necklace.beads, vec![1]);

    let d2 = shape(Shape::Simplex(2));
    let ms = enumerate(&d2, v(0), v(2), opts(true, 2, 3));
    let got: BTreeSet<String> = names(&ms).into_iter().collect();
    let want: BTreeSet<String> = ["02", "01 ∨ 12", "012"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);

    assert!(enumerate(&d1, v(1), v(0), opts(false, 2, 3)).is_empty());

    let d0 = shape(Shape::Simplex(0));
    let ms = enumerate(&d0, v(0), v(0), opts(true, 2, 3));
    assert_eq!(ms.len(), 1);
    assert!(ms[0].necklace.is_point());
}

#[test]
fn categories() {
    let d2 = shape(Shape::Simplex(2));
    let nc = necklace_category(&d2, v(0), v(2), opts(true, 2, 3), DEFAULT_GUARD).unwrap();
    let c = &nc.category;
    assert_eq!(c.num_objects(), 3);
    let arrows: BTreeSet<(String, String)> = c
        .non_identity_arrows()
        .map(|f| (c.object_name(c.src(f)).to_string(), c.object_name(c.tgt(f)).to_string()))
        .collect();
    let want: BTreeSet<(String, String)> =
        [("02", "012"), ("01 ∨ 12", "012")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(arrows, want);
    assert_eq!(nc.pi0(), 1);

    let d1 = shape(Shape::Simplex(1));
    let nc = necklace_category(&d1, v(0), v(1), opts(true, 2, 3), DEFAULT_GUARD).unwrap();
    assert_eq!((nc.category.num_objects(), nc.category.num_arrows()), (1, 1));
}

#[test]
fn components() {
    let n = nerve_truncated(&Arc::new(FinCategory::ordinal(2)), 2).set;
    assert_eq!(pi0_mapping_space(&n, v(0), v(2), NecklaceOpts::default()).unwrap(), 1);
    let d1 = shape(Shape::Simplex(1));
    assert_eq!(pi0_mapping_space(&d1, v(1), v(0), NecklaceOpts::default()).unwrap(), 0);
    assert_eq!(pi0_mapping_space(&parallel_edges(), v(0), v(1), NecklaceOpts::default()).unwrap(), 2);
}

/// Maps of necklaces over the target through the generic map search, with the
/// endpoints fixed and every candidate cell checked over the target.
fn maps_by_search(a: &NecklaceMap, b: &NecklaceMap) -> BTreeSet<Vec<usize>> {
    let (fa, fb) = (a.to_map().unwrap(), b.to_map().unwrap());
    let (last_a, last_b) = (a.necklace.last(), b.necklace.last());
    let table = SimplexTable::new(&fb.source, fa.source.top());
    let mut search = MapSearch::new(&fa.source, &table);
    search.fix(v(0), table.lookup(&DegenerateRef::nondeg(v(0))).unwrap());
    search.fix(v(last_a), table.lookup(&DegenerateRef::nondeg(v(last_b))).unwrap());
    let search = search.filter(|c, idx| fb.image(table.get(c.dim, idx)) == *fa.at(c));
    let out = search.run();
    search
        .to_maps(&fa.source, &fb.source, out.solutions())
        .into_iter()
        .map(|g| (0..=last_a).map(|i| g.at(v(i)).base.index).collect())
        .collect()
}

#[test]
fn homs_agree_with_map_search() {
    let d2 = shape(Shape::Simplex(2));
    let k = standard_k(2).unwrap();
    let cases = [
        enumerate(&d2, v(0), v(2), opts(false, 2, 3)),
        enumerate(&d2, v(1), v(1), opts(false, 2, 2)),
        enumerate(&k.k, k.plus, k.plus, opts(true, 2, 3)),
    ];
    for objs in cases {
        for a in &objs {
            for b in &objs {
                let fast: BTreeSet<Vec<usize>> = necklace_maps(a, b).into_iter().collect();
                assert_eq!(fast, maps_by_search(a, b), "{} -> {}", a.name(), b.name());
            }
        }
    }
}

#[test]
fn quotient_morphisms_exist() {
    let d2 = shape(Shape::Simplex(2));
    let k = standard_k(2).unwrap();
    for (s, a, b) in [(d2.clone(), v(0), v(2)), (d2, v(1), v(1)), (k.k.clone(), k.plus, k.plus)] {
        let nc = necklace_category(&s, a, b, opts(false, 2, 3), DEFAULT_GUARD).unwrap();
        for (i, m) in nc.objects.iter().enumerate() {
            let (q, vmap) = normalize(m);
            assert!(q.is_nondegenerate());
            let j = nc.objects.iter().position(|o| *o == q).expect("normal form enumerated");
            assert!(nc.arrow_with(i, j, &vmap).is_some(), "{} -> {}", m.name(), q.name());
        }
    }
}

#[test]
fn delta_leq_counts() {
    let c = delta_leq(2);
    c.check().unwrap();
    let counts: Vec<usize> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).map(|(a, b)| c.hom(a, b).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 1, 3, 6, 1, 4, 10]);
}

#[test]
fn standard_battery() {
    let b = appendix_battery(2, true, 3).unwrap();
    assert_eq!(b.oracle, 3);
    assert!(b.stable);
    for (_, r) in &b.levels {
        assert!(r.block_diagonal());
        assert_eq!(r.final_object.as_deref(), Some("+"));
        assert!(r.comparison_agrees());
        assert_eq!((r.pi0_degenerate, r.pi0_nondegenerate, r.total), (1, 2, 3));
    }
    assert!(b.passed());

    // degenerate beads included
    let k = standard_k(2).unwrap();
    let r = appendix_checks(&k.k, k.plus, opts(false, 2, 3)).unwrap();
    assert!(r.holds());
    assert!(r.degenerate > 1);
    assert_eq!(r.total, 3);
}

#[test]
fn other_models() {
    let d1 = shape(Shape::Simplex(1));
    let k = glue_k(&d1, v(1), v(0)).unwrap();
    let r = appendix_checks(&k.k, k.plus, NecklaceOpts::default()).unwrap();
    assert!(r.holds());
    assert_eq!((r.pi0_degenerate, r.pi0_nondegenerate, r.total), (1, 1, 2));

    let two_points = shape(Shape::Boundary(1));
    let k = glue_k(&two_points, v(1), v(0)).unwrap();
    let r = appendix_checks(&k.k, k.plus, NecklaceOpts::default()).unwrap();
    assert_eq!((r.nondegenerate, r.total), (0, 1));
    assert!(r.holds());

    let d2 = shape(Shape::Simplex(2));
    assert!(matches!(appendix_checks(&d2, v(0), NecklaceOpts::default()), Err(Error::MalformedK(_))));
    assert!(matches!(appendix_checks(&d2, Cell::new(1, 0), NecklaceOpts::default()), Err(Error::MalformedK(_))));
}
