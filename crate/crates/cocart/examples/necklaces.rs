//! Components of mapping spaces by necklaces, and the Hom(+, +) battery.

use std::sync::Arc;

use cocart::json;
use cocart::necklace::{appendix_battery, pi0_mapping_space, NecklaceOpts};

fn main() -> cocart::Result<()> {
    let opts = NecklaceOpts::default();
    let parallel = Arc::new(json::parse_simplicial(
        r#"{"cells": {"0": ["a", "b"], "1": ["f", "g"]},
            "faces": {"f": [{"base": "b"}, {"base": "a"}], "g": [{"base": "b"}, {"base": "a"}]}}"#,
    )?);
    let (a, b) = (parallel.find("a").unwrap(), parallel.find("b").unwrap());
    println!("two parallel edges: π₀ = {}", pi0_mapping_space(&parallel, a, b, opts)?);

    let battery = appendix_battery(2, true, 3)?;
    for (level, r) in &battery.levels {
        println!(
            "sk{level}: {} necklaces, degenerate π₀ {}, nondegenerate π₀ {}, total {}",
            r.objects, r.pi0_degenerate, r.pi0_nondegenerate, r.total
        );
    }
    println!("oracle {}, stable {}, passed {}", battery.oracle, battery.stable, battery.passed());
    Ok(())
}
