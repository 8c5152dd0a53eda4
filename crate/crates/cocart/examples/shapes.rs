//! Standard shapes, a product and a pushout.

use std::sync::Arc;

use cocart::simplicial::{build_standard, product, pushout, simplex_map};

fn main() -> cocart::Result<()> {
    for (kind, params) in [("simplex", vec![2]), ("boundary", vec![2]), ("horn", vec![3, 1]), ("spine", vec![3])] {
        let x = build_standard(kind, &params)?;
        println!("{kind}{params:?}: cells per dimension {:?}", x.counts());
    }

    // Δ¹ × Δ¹ is a square: four vertices, five edges, two triangles
    let d1 = Arc::new(build_standard("simplex", &[1])?);
    let sq = product(&d1, &d1);
    println!("Δ¹ × Δ¹: {:?}", sq.object.counts());

    // two triangles glued along an edge
    let d2 = Arc::new(build_standard("simplex", &[2])?);
    let f = simplex_map(&d1, &d2, &[0, 2])?;
    let po = pushout(&f, &f);
    println!("Δ² ⊔_Δ¹ Δ²: {:?}", po.object.counts());
    for c in po.object.cells(2) {
        println!("  {}", po.object.name(c));
    }
    Ok(())
}
