use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;

fn cat(c: FinCategory) -> Cat {
    Arc::new(c)
}

#[test]
fn validate_examples() {
    assert!(FinCategory::ordinal(2).validate().is_ok());
    let idem = FinCategory::monoid(&["id", "e"], |a, b| a | b);
    assert!(idem.validate().is_ok());
    // planted associativity failure: monoid table that is not associative
    let bad = FinCategory::monoid(&["1", "a", "b"], |x, y| match (x, y) {
        (0, z) | (z, 0) => z,
        (1, 1) => 2,
        (1, 2) => 1,
        (2, 1) => 2,
        _ => 1,
    });
    assert!(matches!(bad.validate(), Err(Violation::Associativity { .. })));
}

#[test]
fn functor_category_examples() {
    let i = cat(FinCategory::ordinal(1));
    let fc = functor_category(&i, &i, DEFAULT_GUARD).unwrap();
    assert_eq!(fc.category.num_objects(), 3);
    assert_eq!(fc.category.non_identity_arrows().count(), 3);
    fc.category.check().unwrap();
    assert!(fc.category.is_poset());
    let pt = cat(FinCategory::point());
    let fc = functor_category(&cat(FinCategory::ordinal(2)), &pt, DEFAULT_GUARD).unwrap();
    assert_eq!((fc.category.num_objects(), fc.category.num_arrows()), (1, 1));
    let fc = functor_category(&cat(FinCategory::empty()), &i, DEFAULT_GUARD).unwrap();
    assert_eq!((fc.category.num_objects(), fc.category.num_arrows()), (1, 1));
}

#[test]
fn comma_examples() {
    let i = cat(FinCategory::ordinal(1));
    let id = Functor::identity(i.clone());
    let arr = comma(&id, &id);
    assert_eq!(arr.category.num_objects(), 3);
    assert_eq!(arr.category.non_identity_arrows().count(), 3);
    arr.category.check().unwrap();
    let e = Functor::constant(cat(FinCategory::empty()), i.clone(), 0);
    assert_eq!(comma(&e, &id).category.num_objects(), 0);
    let at0 = Functor::constant(cat(FinCategory::point()), i.clone(), 0);
    let cs = comma(&at0, &id);
    assert_eq!(cs.category.num_objects(), 2);
    assert_eq!(cs.category.non_identity_arrows().count(), 1);
}

#[test]
fn adjoint_examples() {
    let i = cat(FinCategory::ordinal(1));
    let pt = cat(FinCategory::point());
    let at1 = Functor::constant(pt.clone(), i.clone(), 1);
    let at0 = Functor::constant(pt.clone(), i.clone(), 0);
    let adj = find_adjoint(&at1, Side::Left);
    let a = adj.found().expect("left adjoint");
    assert_eq!(a.left.objects, vec![0, 0]);
    assert!(find_adjoint(&at0, Side::Left).found().is_none());
    assert!(find_adjoint(&at0, Side::Right).found().is_some());
    let id = Functor::identity(i.clone());
    for side in [Side::Left, Side::Right] {
        let a = find_adjoint(&id, side);
        let a = a.found().unwrap();
        assert!(a.unit.is_identity() && a.counit.is_identity());
    }
}

#[test]
fn localize_examples() {
    let i = cat(FinCategory::ordinal(1));
    let f = i.non_identity_arrows().next().unwrap();
    let l = localize(&i, &BTreeSet::from([f]), 8);
    let l = l.finite().expect("finite");
    l.category.check().unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(l.category.hom(a, b).len(), 1);
        }
    }
    let c = cat(FinCategory::ordinal(2));
    let l = localize(&c, &BTreeSet::new(), 8);
    let l = l.finite().unwrap();
    assert_eq!(l.category.num_arrows(), c.num_arrows());
    assert!(l.functor.is_isomorphism());
    let par = cat(FinCategory::parallel(2));
    let f0 = par.find_arrow("f0").unwrap();
    match localize(&par, &BTreeSet::from([f0]), 6) {
        LocalizeOutcome::Infinite { hom, growth, .. } => {
            assert!(growth.iter().sum::<usize>() > 3, "{hom:?} {growth:?}");
        }
        LocalizeOutcome::Finite(_) => panic!("expected an infinite report"),
    }
    // an idempotent becomes an identity once inverted
    let idem = cat(FinCategory::monoid(&["1", "e"], |a, b| a | b));
    let l = localize(&idem, &BTreeSet::from([1]), 8);
    assert_eq!(l.finite().unwrap().category.num_arrows(), 1);
}

#[test]
fn functor_enumeration_matches_brute_force() {
    let cats = [
        FinCategory::ordinal(2),
        FinCategory::parallel(2),
        FinCategory::monoid(&["1", "e"], |a, b| a | b),
        FinCategory::indiscrete(2),
    ];
    for c in &cats {
        for d in &cats {
            let (c, d) = (cat(c.clone()), cat(d.clone()));
            let fast = enumerate_functors(&c, &d, DEFAULT_GUARD).unwrap();
            // brute force: every object map and every arrow map
            let mut count = 0;
            let no = d.num_objects().pow(c.num_objects() as u32);
            let na = d.num_arrows().pow(c.num_arrows() as u32);
            for om in 0..no {
                let objects: Vec<usize> =
                    (0..c.num_objects()).map(|k| om / d.num_objects().pow(k as u32) % d.num_objects()).collect();
                for am in 0..na {
                    let arrows: Vec<usize> =
                        (0..c.num_arrows()).map(|k| am / d.num_arrows().pow(k as u32) % d.num_arrows()).collect();
                    if Functor::new(c.clone(), d.clone(), objects.clone(), arrows).is_ok() {
                        count += 1;
                    }
                }
            }
            assert_eq!(fast.len(), count);
        }
    }
}

#[test]
fn op_is_an_involution() {
    let c = FinCategory::monoid(&["1", "a", "b"], |x, y| if x == 0 { y } else { x });
    c.check().unwrap();
    assert_eq!(c.op().op(), c);
    c.op().check().unwrap();
}
