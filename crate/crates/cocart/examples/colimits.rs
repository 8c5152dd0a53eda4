//! Colimits by localization, limits by cocartesian sections, against set oracles.

use std::sync::Arc;

use cocart::fincat::{CategoryBuilder, FinCategory, Functor};
use cocart::grothendieck::{colimit, limit, set_colimit, set_limit, ColimitMethod, Diagram};

fn main() -> cocart::Result<()> {
    // {0,1} <- {0} -> {0,1}
    let mut b = CategoryBuilder::new();
    let (l, m, r) = (b.object("l"), b.object("m"), b.object("r"));
    b.arrow("m>l", m, l);
    b.arrow("m>r", m, r);
    let shape = Arc::new(b.build());
    let two = Arc::new(FinCategory::discrete(2));
    let one = Arc::new(FinCategory::discrete(1));
    let values = vec![two.clone(), one.clone(), two.clone()];
    let actions = shape
        .arrows()
        .map(|a| match shape.is_identity(a) {
            true => Ok(Functor::identity(values[shape.src(a)].clone())),
            false => Functor::from_objects(one.clone(), two.clone(), vec![0]),
        })
        .collect::<cocart::Result<Vec<_>>>()?;
    let d = Diagram::new(shape, values, actions)?;

    println!("set colimit: {} classes", set_colimit(&d)?.classes.len());
    let loc = colimit(&d, ColimitMethod::Localization(8))?;
    let c = loc.category().expect("finite");
    println!("localization: {} objects in {} components, all arrows invertible", c.num_objects(), c.num_components());

    println!("compatible families: {}", set_limit(&d)?.len());
    let lim = limit(&d, 10_000)?;
    println!("cocartesian sections: {}", lim.category.num_objects());
    Ok(())
}
