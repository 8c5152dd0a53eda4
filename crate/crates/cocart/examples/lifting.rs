//! Inner horns against nerves, and the left anodyne generators against a fibration.

use std::sync::Arc;

use cocart::fibration::{marked_rlp_check, standard_probes, RLP_LEVEL};
use cocart::fincat::{FinCategory, Functor};
use cocart::lifting::{has_rlp, Labeled, DEFAULT_BUDGET};
use cocart::marked::MarkedMap;
use cocart::simplicial::{build_standard, simplex_map};

fn main() -> cocart::Result<()> {
    let horn = Arc::new(build_standard("horn", &[2, 1])?);
    let d2 = Arc::new(build_standard("simplex", &[2])?);
    let i = MarkedMap::flat(&simplex_map(&horn, &d2, &[0, 1, 2])?);
    let gens = [Labeled { label: "Λ²₁ ⊂ Δ²".into(), map: i }];

    let pt = Arc::new(build_standard("simplex", &[0])?);
    for (name, x) in [("Δ¹", build_standard("simplex", &[1])?), ("∂Δ²", build_standard("boundary", &[2])?)] {
        let x = Arc::new(x);
        let to_pt = simplex_map(&x, &pt, &vec![0; x.count(0)])?;
        let r = has_rlp(&MarkedMap::flat(&to_pt), &gens, true, DEFAULT_BUDGET);
        println!("{name} -> Δ⁰ lifts uniquely against inner horns: {} ({} squares)", r.holds(), r.squares);
    }

    // [2] -> [1], 0 ↦ 0, 1, 2 ↦ 1 is cocartesian; its natural marking lifts
    let c2 = Arc::new(FinCategory::ordinal(2));
    let c1 = Arc::new(FinCategory::ordinal(1));
    let p = Functor::from_objects(c2, c1, vec![0, 1, 1])?;
    let r = marked_rlp_check(&p, RLP_LEVEL, &standard_probes(), DEFAULT_BUDGET);
    println!("natural marking has the RLP: {} against {} generators", r.holds(), r.probes.len());
    Ok(())
}
