//! A left adjoint, unstraightened over `[1]`, is also cartesian; straightening the
//! dual fibration gives the right adjoint, dualized.

use super::{straighten, unstraighten, Diagram};
use crate::fibration::{check_cartesian_fibration, Fibration};
use crate::fincat::{find_natural_iso, Adjunction, Functor, NatTransformation};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub cartesian: bool,
    /// Straightening of the dual fibration along the arrow of `[1]^op`.
    pub dual: Functor,
    /// `g^op` on the same categories.
    pub expected: Option<Functor>,
    pub iso: Option<NatTransformation>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.cartesian && self.iso.is_some()
    }
}

pub fn adjoint_duality_check(adj: &Adjunction) -> Result<DualityReport> {
    adj.verify().map_err(|e| match e {
        Error::NotAnAdjunction(m) => Error::NotAnAdjunction(m),
        other => Error::NotAnAdjunction(other.to_string()),
    })?;
    let (f, g) = (&adj.left, &adj.right);
    let d = Diagram::arrow(f);
    let un = unstraighten(&d)?;
    let cartesian = check_cartesian_fibration(&un.fibration.p).holds();
    if !cartesian {
        return Err(Error::Invariant("unstraightening of a left adjoint is not cartesian".into()));
    }
    let dual = Fibration::new(un.fibration.p.op())?;
    let st = straighten(&dual)?;
    let base = dual.base();
    let a = base.non_identity_arrows().next().expect("[1] has an arrow");
    let (s, t) = (base.src(a), base.tgt(a));
    debug_assert_eq!((s, t), (1, 0));
    let action = st.diagram.actions[a].clone();
    let (e1, e0) = (&st.eval[1], &st.eval[0]);
    let (v1, v0) = (&st.diagram.values[1], &st.diagram.values[0]);
    let mut objects = Vec::new();
    for o in v1.objects() {
        let (_, y) = un.objects[e1.ob(o)];
        let want = un.object(0, g.ob(y));
        match v0.objects().find(|&q| e0.ob(q) == want) {
            Some(q) => objects.push(q),
            None => return Ok(DualityReport { cartesian, dual: action, expected: None, iso: None }),
        }
    }
    let mut arrows = Vec::new();
    for k in v1.arrows() {
        let (_, h) = un.arrows[e1.ar(k)];
        let dd = &f.target;
        let want = un.arrow(un.object(0, g.ob(dd.src(h))), d.shape.id(0), g.ar(h));
        let (src, tgt) = (objects[v1.src(k)], objects[v1.tgt(k)]);
        match v0.hom(src, tgt).iter().find(|&&q| e0.ar(q) == want) {
            Some(&q) => arrows.push(q),
            None => return Ok(DualityReport { cartesian, dual: action, expected: None, iso: None }),
        }
    }
    let expected = Functor { source: v1.clone(), target: v0.clone(), objects, arrows };
    expected.check()?;
    let iso = find_natural_iso(&action, &expected);
    Ok(DualityReport { cartesian, dual: action, expected: Some(expected), iso })
}
