//! Hom-sets of the marked simplex category, in normal form.

use cocart::marked::{delta_plus_hom, DpObject};

fn main() -> cocart::Result<()> {
    let plus = DpObject::Plus;
    for n in 0..=3 {
        let x = DpObject::Iota(n);
        println!("|Hom({x}, +)| = {}   |Hom(+, {x})| = {}", delta_plus_hom(x, plus)?.len(), delta_plus_hom(plus, x)?.len());
    }
    println!("Hom(+, +):");
    for (_, word) in delta_plus_hom(plus, plus)? {
        println!("  {word}");
    }
    Ok(())
}
