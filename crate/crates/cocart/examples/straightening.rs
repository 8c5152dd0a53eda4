//! Diagram -> fibration -> diagram, and back.

use std::sync::Arc;

use cocart::fibration::Fibration;
use cocart::fincat::{FinCategory, Functor};
use cocart::grothendieck::{
    fiber_sizes, nerve_level_size, round_trip_diagram, round_trip_fibration, straighten, straighten_paper_formula,
    unstraighten, Diagram,
};

fn main() -> cocart::Result<()> {
    // [1] -> [0] classified by the functor picking 1
    let d = Diagram::arrow(&Functor::from_objects(Arc::new(FinCategory::point()), Arc::new(FinCategory::ordinal(1)), vec![1])?);
    let un = unstraighten(&d)?;
    println!("unstraightening: {} objects, {} arrows", un.total().num_objects(), un.total().num_arrows());
    let r1 = round_trip_diagram(&d)?;
    println!("round trip I: {} of {} naturality squares strict", r1.naturality_identities, d.shape.num_arrows());

    let p = Fibration::new(Functor::from_objects(Arc::new(FinCategory::ordinal(2)), Arc::new(FinCategory::ordinal(1)), vec![0, 1, 1])?)?;
    let r2 = round_trip_fibration(&p)?;
    println!(
        "round trip II: cocartesian {}, fiberwise equivalence {}, equivalence {}",
        r2.cocartesian, r2.fiberwise_equivalence, r2.equivalence
    );

    // fiber sizes of the power construction against nerve levels of the values
    let st = straighten(&p)?;
    for (n, lf) in straighten_paper_formula(&p, 2)?.iter().enumerate() {
        let want: Vec<usize> = st.diagram.values.iter().map(|v| nerve_level_size(v, n)).collect();
        println!("level {n}: {:?} vs {:?}", fiber_sizes(lf), want);
    }
    Ok(())
}
