//! Cocartesian edges and fibrations, checked three ways.

use std::sync::Arc;

use cocart::fibration::{adjoint_check, check_cocartesian_fibration, cocartesian_edges, poset_check};
use cocart::fincat::{FinCategory, Functor};

fn report(name: &str, p: &Functor) -> cocart::Result<()> {
    let flags = cocartesian_edges(p);
    let names: Vec<&str> = p.source.non_identity_arrows().filter(|&a| flags[a]).map(|a| p.source.arrow_name(a)).collect();
    println!("{name}");
    println!("  cocartesian edges: {names:?}");
    println!(
        "  fibration: {} (poset criterion {}, adjoint criterion {})",
        check_cocartesian_fibration(p).holds(),
        poset_check(p)?.holds,
        adjoint_check(p)
    );
    Ok(())
}

fn main() -> cocart::Result<()> {
    let i = Arc::new(FinCategory::ordinal(1));
    report("[2] -> [1]", &Functor::from_objects(Arc::new(FinCategory::ordinal(2)), i.clone(), vec![0, 1, 1])?)?;
    report("{0, 1} -> [1]", &Functor::from_objects(Arc::new(FinCategory::discrete(2)), i.clone(), vec![0, 1])?)?;
    // 0 < 1 and 0 < 2 both lie over 0 < 1, and neither factors through the other
    let v = FinCategory::poset(vec!["0".into(), "1".into(), "2".into()], |a, b| a == b || a == 0);
    report("1 > 0 < 2 -> [1]", &Functor::from_objects(Arc::new(v), i, vec![0, 1, 1])?)?;
    Ok(())
}
