//! A fibration over [1] is classified by L₁ ∘ i₀.

use std::sync::Arc;

use cocart::fibration::interval_analysis;
use cocart::fincat::{product_projections, FinCategory, Functor};

fn show(f: &Functor) -> String {
    f.source.objects().map(|x| format!("{}↦{}", f.source.object_name(x), f.target.object_name(f.ob(x)))).collect::<Vec<_>>().join(" ")
}

fn main() -> cocart::Result<()> {
    let i = Arc::new(FinCategory::ordinal(1));
    let examples = [
        ("[2] -> [1]", Functor::from_objects(Arc::new(FinCategory::ordinal(2)), i.clone(), vec![0, 1, 1])?),
        ("[1] × [1] -> [1]", product_projections(&i, &i).2),
    ];
    for (name, p) in examples {
        let a = interval_analysis(&p)?;
        println!("{name}");
        println!("  L₁ ∘ i₀: {}", show(&a.straightened));
        println!("  cartesian: {}", a.cartesian);
        if let Some(r) = &a.right_adjoint {
            println!("  right adjoint: {}", show(r));
        }
    }
    Ok(())
}
