use std::sync::Arc;

use super::*;
use crate::fincat::FinCategory;

fn shape(s: Shape) -> Arc<FinSimplicialSet> {
    Arc::new(s.build().unwrap())
}

#[test]
fn standard_counts() {
    assert_eq!(shape(Shape::Simplex(2)).counts(), vec![3, 3, 1]);
    let h = shape(Shape::Horn(2, 0));
    assert_eq!(h.counts(), vec![3, 2]);
    assert!(vertex_cell(&h, &[0, 1]).is_some() && vertex_cell(&h, &[0, 2]).is_some());
    assert_eq!(shape(Shape::Boundary(2)).counts(), vec![3, 3]);
    assert_eq!(shape(Shape::Spine(3)).counts(), vec![4, 3]);
    for s in [Shape::Simplex(3), Shape::Horn(3, 1), Shape::Boundary(3), Shape::WalkingEquivalence] {
        shape(s).check().unwrap();
    }
    assert!(build_standard("horn", &[2, 3]).is_err());
    assert!(build_standard("simplex", &[-1]).is_err());
}

#[test]
fn walking_equivalence_matches_hand_quotient() {
    // collapsing 02 and 13 in Δ³: vertices {0,2},{1,3}; edges 01,03,12,23 survive;
    // 02 and 13 become degenerate; 012,013,023,123 all survive as 2-cells
    let e = shape(Shape::WalkingEquivalence);
    assert_eq!(e.counts(), vec![2, 4, 4, 1]);
    e.check().unwrap();
}

#[test]
fn enumerate_maps_examples() {
    let d0 = shape(Shape::Simplex(0));
    let d1 = shape(Shape::Simplex(1));
    let d2 = shape(Shape::Simplex(2));
    assert_eq!(enumerate_maps(&d0, &d2).len(), 3);
    assert_eq!(enumerate_maps(&d1, &d1).len(), ordinal::monotone_maps(1, 1).len());
    assert_eq!(enumerate_maps(&d2, &d1).len(), ordinal::monotone_maps(2, 1).len());
    for m in enumerate_maps(&d2, &d1) {
        m.check().unwrap();
    }
    let empty = shape(Shape::Empty);
    assert_eq!(enumerate_maps(&empty, &d1).len(), 1);
    assert_eq!(enumerate_maps(&d0, &empty).len(), 0);
}

#[test]
fn product_of_intervals() {
    let d1 = shape(Shape::Simplex(1));
    let p = product(&d1, &d1);
    assert_eq!(p.object.counts(), vec![4, 5, 2]);
    p.object.check().unwrap();
    p.first.check().unwrap();
    p.second.check().unwrap();
    // oracle: nerve of the poset [1]×[1]
    let sq = Arc::new(FinCategory::product(&FinCategory::ordinal(1), &FinCategory::ordinal(1)));
    assert_eq!(nerve_truncated(&sq, 3).set.counts(), vec![4, 5, 2]);
}

#[test]
fn pushout_examples() {
    let d0 = shape(Shape::Simplex(0));
    let d1 = shape(Shape::Simplex(1));
    let d2 = shape(Shape::Simplex(2));
    let end = simplex_map(&d0, &d1, &[1]).unwrap();
    let start = simplex_map(&d0, &d1, &[0]).unwrap();
    let po = pushout(&end, &start);
    assert_eq!(po.object.counts(), vec![3, 2]);
    po.object.check().unwrap();
    po.left.check().unwrap();
    po.right.check().unwrap();

    let e02 = simplex_map(&d1, &d2, &[0, 2]).unwrap();
    let collapse = simplex_map(&d1, &d0, &[0, 0]).unwrap();
    let po = pushout(&e02, &collapse);
    assert_eq!(po.object.count(0), 2);
    assert_eq!(po.object.counts(), vec![2, 2, 1]);
    po.object.check().unwrap();
}

#[test]
fn nerve_examples() {
    let n1 = nerve_truncated(&Arc::new(FinCategory::ordinal(1)), 2);
    assert_eq!(n1.set.counts(), vec![2, 1]);
    let n2 = nerve_truncated(&Arc::new(FinCategory::ordinal(2)), 2);
    assert_eq!(n2.set.counts(), vec![3, 3, 1]);
    n2.set.check().unwrap();
    let par = nerve_truncated(&Arc::new(FinCategory::parallel(2)), 2);
    assert_eq!(par.set.counts(), vec![2, 2]);
    // idempotent: cells in every dimension
    let idem = Arc::new(FinCategory::monoid(&["1", "e"], |a, b| a | b));
    let n = nerve_truncated(&idem, 4);
    assert_eq!(n.set.counts(), vec![1, 1, 1, 1, 1]);
    n.set.check().unwrap();
}

#[test]
fn nerve_truncation_is_compatible() {
    let c = Arc::new(FinCategory::monoid(&["1", "e", "f"], |a, b| if a == 0 { b } else { a }));
    c.check().unwrap();
    let n3 = nerve_truncated(&c, 3);
    let n2 = nerve_truncated(&c, 2);
    n3.set.check().unwrap();
    assert_eq!(n3.set.counts()[..3], n2.set.counts()[..]);
    for d in 0..3 {
        for cell in n2.set.cells(d) {
            assert_eq!(n2.set.name(cell), n3.set.name(cell));
            assert_eq!(n2.set.faces_of(cell), n3.set.faces_of(cell));
        }
    }
}

#[test]
fn simplicial_operator_roundtrip() {
    let d3 = shape(Shape::Simplex(3));
    let top = DegenerateRef::nondeg(Cell::new(3, 0));
    for theta in ordinal::monotone_maps(3, 3) {
        let y = d3.apply(&top, &theta);
        let (_, image) = ordinal::epi_mono(&theta);
        assert_eq!(d3.name(y.base), shapes::vertex_name(&image));
        assert_eq!(y.surjection().len(), 4);
    }
}
