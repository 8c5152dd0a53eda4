use super::{Arr, FinCategory, Functor, NatTransformation, Obj};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `left ⊣ right` with unit `id => right ∘ left` and counit `left ∘ right => id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub unit: NatTransformation,
    pub counit: NatTransformation,
}

impl Adjunction {
    /// Checks functoriality, naturality and both triangle identities.
    pub fn verify(&self) -> crate::Result<()> {
        let (l, r) = (&self.left, &self.right);
        l.check()?;
        r.check()?;
        self.unit.check()?;
        self.counit.check()?;
        let c = &*l.source;
        let d = &*l.target;
        for x in c.objects() {
            // ε_{Lx} ∘ L(η_x) = id
            let lhs = d.compose(self.counit.components[l.ob(x)], l.ar(self.unit.components[x]));
            if lhs != d.id(l.ob(x)) {
                return Err(crate::Error::NotAnAdjunction(format!(
                    "triangle identity fails at {}",
                    c.object_name(x)
                )));
            }
        }
        for y in d.objects() {
            // R(ε_y) ∘ η_{Ry} = id
            let lhs = c.compose(r.ar(self.counit.components[y]), self.unit.components[r.ob(y)]);
            if lhs != c.id(r.ob(y)) {
                return Err(crate::Error::NotAnAdjunction(format!(
                    "triangle identity fails at {}",
                    d.object_name(y)
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of [`find_adjoint`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjointSearch {
    Found(Adjunction),
    /// No universal arrow exists at this object of the functor's target.
    None { witness: Obj },
}

impl AdjointSearch {
    pub fn found(&self) -> Option<&Adjunction> {
        match self {
            AdjointSearch::Found(a) => Some(a),
            AdjointSearch::None { .. } => None,
        }
    }
}

/// Candidate arrows out of `d` ordered with identities first, then by id.
fn ordered(d: &FinCategory, arrows: &[Arr]) -> Vec<Arr> {
    let mut v = arrows.to_vec();
    v.sort_by_key(|&a| (!d.is_identity(a), a));
    v
}

/// Searches for a left or right adjoint of `f` by universal arrows, after pruning
/// candidate objects by hom-set cardinalities.
pub fn find_adjoint(f: &Functor, side: Side) -> AdjointSearch {
    match side {
        Side::Left => left_adjoint(f),
        Side::Right => right_adjoint(f),
    }
}

fn left_adjoint(f: &Functor) -> AdjointSearch {
    let (c, d) = (&*f.source, &*f.target);
    let mut lob = Vec::with_capacity(d.num_objects());
    let mut eta = Vec::with_capacity(d.num_objects());
    for y in d.objects() {
        let mut found = None;
        let mut cands: Vec<(Arr, Obj)> = Vec::new();
        for x in c.objects() {
            let counts_ok = c.objects().all(|x2| c.hom(x, x2).len() == d.hom(y, f.ob(x2)).len());
            if counts_ok {
                cands.extend(d.hom(y, f.ob(x)).iter().map(|&e| (e, x)));
            }
        }
        let order = ordered(d, &cands.iter().map(|p| p.0).collect::<Vec<_>>());
        'search: for e in order {
            for &(e2, x) in cands.iter().filter(|p| p.0 == e) {
                let _ = e2;
                let universal = c.objects().all(|x2| {
                    let mut img: Vec<Arr> = c.hom(x, x2).iter().map(|&u| d.compose(f.ar(u), e)).collect();
                    img.sort_unstable();
                    img.dedup();
                    img.len() == d.hom(y, f.ob(x2)).len()
                });
                if universal {
                    found = Some((x, e));
                    break 'search;
                }
            }
        }
        match found {
            Some((x, e)) => {
                lob.push(x);
                eta.push(e);
            }
            None => return AdjointSearch::None { witness: y },
        }
    }
    // L on arrows: the unique u with F(u) ∘ η_y = η_{y'} ∘ v
    let larr: Vec<Arr> = d
        .arrows()
        .map(|v| {
            let (y, y2) = (d.src(v), d.tgt(v));
            let target = d.compose(eta[y2], v);
            *c.hom(lob[y], lob[y2])
                .iter()
                .find(|&&u| d.compose(f.ar(u), eta[y]) == target)
                .expect("universal arrow")
        })
        .collect();
    let l = Functor { source: f.target.clone(), target: f.source.clone(), objects: lob, arrows: larr };
    let eps: Vec<Arr> = c
        .objects()
        .map(|x| {
            let fx = f.ob(x);
            *c.hom(l.ob(fx), x)
                .iter()
                .find(|&&u| d.compose(f.ar(u), eta[fx]) == d.id(fx))
                .expect("counit component")
        })
        .collect();
    let adj = Adjunction {
        unit: NatTransformation { source: Functor::identity(f.target.clone()), target: l.then(f), components: eta },
        counit: NatTransformation { source: f.then(&l), target: Functor::identity(f.source.clone()), components: eps },
        left: l,
        right: f.clone(),
    };
    match adj.verify() {
        Ok(()) => AdjointSearch::Found(adj),
        Err(_) => unreachable!("universal arrows always assemble into an adjunction"),
    }
}

fn right_adjoint(f: &Functor) -> AdjointSearch {
    let (c, d) = (&*f.source, &*f.target);
    let mut rob = Vec::with_capacity(d.num_objects());
    let mut eps = Vec::with_capacity(d.num_objects());
    for y in d.objects() {
        let mut found = None;
        let mut cands: Vec<(Arr, Obj)> = Vec::new();
        for x in c.objects() {
            let counts_ok = c.objects().all(|x2| c.hom(x2, x).len() == d.hom(f.ob(x2), y).len());
            if counts_ok {
                cands.extend(d.hom(f.ob(x), y).iter().map(|&e| (e, x)));
            }
        }
        let order = ordered(d, &cands.iter().map(|p| p.0).collect::<Vec<_>>());
        'search: for e in order {
            for &(_, x) in cands.iter().filter(|p| p.0 == e) {
                let universal = c.objects().all(|x2| {
                    let mut img: Vec<Arr> = c.hom(x2, x).iter().map(|&u| d.compose(e, f.ar(u))).collect();
                    img.sort_unstable();
                    img.dedup();
                    img.len() == d.hom(f.ob(x2), y).len()
                });
                if universal {
                    found = Some((x, e));
                    break 'search;
                }
            }
        }
        match found {
            Some((x, e)) => {
                rob.push(x);
                eps.push(e);
            }
            None => return AdjointSearch::None { witness: y },
        }
    }
    // R on arrows: the unique u with ε_{y'} ∘ F(u) = v ∘ ε_y
    let rarr: Vec<Arr> = d
        .arrows()
        .map(|v| {
            let (y, y2) = (d.src(v), d.tgt(v));
            let target = d.compose(v, eps[y]);
            *c.hom(rob[y], rob[y2])
                .iter()
                .find(|&&u| d.compose(eps[y2], f.ar(u)) == target)
                .expect("universal arrow")
        })
        .collect();
    let r = Functor { source: f.target.clone(), target: f.source.clone(), objects: rob, arrows: rarr };
    let eta: Vec<Arr> = c
        .objects()
        .map(|x| {
            let fx = f.ob(x);
            *c.hom(x, r.ob(fx))
                .iter()
                .find(|&&u| d.compose(eps[fx], f.ar(u)) == d.id(fx))
                .expect("unit component")
        })
        .collect();
    let adj = Adjunction {
        unit: NatTransformation { source: Functor::identity(f.source.clone()), target: f.then(&r), components: eta },
        counit: NatTransformation { source: r.then(f), target: Functor::identity(f.target.clone()), components: eps },
        left: f.clone(),
        right: r,
    };
    match adj.verify() {
        Ok(()) => AdjointSearch::Found(adj),
        Err(_) => unreachable!("universal arrows always assemble into an adjunction"),
    }
}
