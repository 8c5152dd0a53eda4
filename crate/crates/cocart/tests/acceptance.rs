//! Acceptance runner: one line per criterion, nonzero exit on any failure.
//! Run with `cargo test -p cocart --release --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cocart::corpus::{self, Item, DEFAULT_SEED};
use cocart::fibration::{
    adjoint_check, check_cartesian_fibration, check_cocartesian_fibration, interval_analysis, marked_rlp_check,
    poset_check, standard_probes, Fibration, RLP_LEVEL,
};
use cocart::fincat::{FinCategory, Functor, DEFAULT_GUARD};
use cocart::grothendieck::{
    colimit, fiber_sizes, limit, nerve_level_size, round_trip_diagram, round_trip_fibration, set_colimit, set_limit,
    straighten, straighten_paper_formula, unstraighten, ColimitMethod, ColimitReport, Diagram, Strictification,
};
use cocart::lifting::{RlpVerdict, DEFAULT_BUDGET};
use cocart::marked::{delta_plus_hom, DpObject};
use cocart::necklace::appendix_battery;
use common::raw_words::{self, Obj as Raw};
use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hom_plus(x: DpObject, y: DpObject) -> Result<usize, String> {
    delta_plus_hom(x, y).map(|h| h.len()).map_err(|e| e.to_string())
}

fn raw(x: DpObject) -> Raw {
    match x {
        DpObject::Iota(n) => Raw::Iota(n),
        DpObject::Plus => Raw::Plus,
    }
}

/// Raw words long enough to reach every normal form between degrees at most 3.
fn raw_count(x: DpObject, y: DpObject) -> usize {
    raw_words::hom_count(raw(x), raw(y), 6, 3)
}

fn delta_plus_counts() -> Outcome {
    use DpObject::{Iota, Plus};
    let mut checked = 0;
    for n in 0..=3 {
        let into = hom_plus(Iota(n), Plus)?;
        ensure(into == n + 2, || format!("|Hom(⟨{n}⟩, +)| = {into}, want {}", n + 2))?;
        let out = hom_plus(Plus, Iota(n))?;
        ensure(out == n + 1, || format!("|Hom(+, ⟨{n}⟩)| = {out}, want {}", n + 1))?;
        ensure(raw_count(Iota(n), Plus) == into, || format!("raw words disagree on Hom(⟨{n}⟩, +)"))?;
        ensure(raw_count(Plus, Iota(n)) == out, || format!("raw words disagree on Hom(+, ⟨{n}⟩)"))?;
        checked += 2;
    }
    let pp = hom_plus(Plus, Plus)?;
    let oracle = raw_count(Plus, Plus);
    ensure(pp == 3 && oracle == 3, || format!("|Hom(+, +)| = {pp}, raw words give {oracle}"))?;
    for m in 0..=3 {
        for n in 0..=3 {
            let h = hom_plus(Iota(m), Iota(n))?;
            let want = monotone_count(m, n);
            ensure(h == want, || format!("|Hom(⟨{m}⟩, ⟨{n}⟩)| = {h}, want {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{} hom-sets exact, |Hom(+,+)| = 3", checked + 1))
}

fn concordance() -> Outcome {
    let items = corpus::functors(DEFAULT_SEED, 60);
    ensure(items.len() >= 50, || format!("corpus has {} functors", items.len()))?;
    let (mut yes, mut no) = (0, 0);
    for it in &items {
        let p = &it.value;
        ensure(p.source.num_objects() <= 5, || format!("{}: total too large", it.name))?;
        ensure(p.target.is_poset() && p.target.num_objects() <= 4, || format!("{}: base not a small poset", it.name))?;
        let direct = check_cocartesian_fibration(p).holds();
        let poset = poset_check(p).map_err(|e| format!("{}: {e}", it.name))?.holds;
        let adjoint = adjoint_check(p);
        let rlp = marked_rlp_check(p, RLP_LEVEL, &standard_probes(), DEFAULT_BUDGET);
        ensure(!matches!(rlp.verdict, RlpVerdict::BudgetExceeded { .. }), || format!("{}: marked check out of budget", it.name))?;
        let marked = rlp.holds();
        ensure(direct == poset && poset == adjoint && adjoint == marked, || {
            format!("{}: direct {direct}, poset {poset}, adjoint {adjoint}, marked {marked}", it.name)
        })?;
        if direct {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, || format!("one-sided corpus: {yes} fibrations, {no} not"))?;
    Ok(format!("{} functors, 4 checkers agree ({yes} fibrations, {no} not)", items.len()))
}

fn corpus_fibrations() -> Vec<Item<Fibration>> {
    let mut items = corpus::functors(DEFAULT_SEED, 60);
    items.extend(corpus::over_interval(DEFAULT_SEED, 40));
    fibrations(&items)
}

fn straightening() -> Outcome {
    let diagrams: Vec<Item<Diagram>> = corpus::discrete_diagrams(DEFAULT_SEED, 20, 4)
        .into_iter()
        .chain(corpus::poset_diagrams(DEFAULT_SEED, 20, 4, 8))
        .collect();
    for it in &diagrams {
        round_trip_diagram(&it.value).map_err(|e| format!("round trip I, {}: {e}", it.name))?;
    }
    let fs = corpus_fibrations();
    for f in &fs {
        let r = round_trip_fibration(&f.value).map_err(|e| format!("round trip II, {}: {e}", f.name))?;
        ensure(r.cocartesian && r.fiberwise_equivalence && r.equivalence, || {
            format!(
                "round trip II, {}: cocartesian {}, fiberwise {}, equivalence {}",
                f.name, r.cocartesian, r.fiberwise_equivalence, r.equivalence
            )
        })?;
    }
    let mut formula = 0;
    for f in fs.iter().filter(|f| f.value.total().num_objects() <= 4) {
        let st = straighten(&f.value).map_err(|e| e.to_string())?;
        let levels = straighten_paper_formula(&f.value, 2).map_err(|e| format!("{}: {e}", f.name))?;
        for (n, lf) in levels.iter().enumerate() {
            let want: Vec<usize> = st.diagram.values.iter().map(|v| nerve_level_size(v, n)).collect();
            let got = fiber_sizes(lf);
            ensure(got == want, || format!("formula, {} level {n}: {got:?} vs {want:?}", f.name))?;
        }
        formula += 1;
    }
    ensure(formula >= 10, || format!("formula checked on only {formula} fibrations"))?;
    Ok(format!(
        "I on {} diagrams, II on {} fibrations, formula on {formula}",
        diagrams.len(),
        fs.len()
    ))
}

fn interval() -> Outcome {
    let items = corpus::over_interval(DEFAULT_SEED, 40);
    let fs = fibrations(&items);
    ensure(!fs.is_empty(), || "no fibrations over [1]".into())?;
    let mut cartesian = 0;
    for f in &fs {
        let p = &f.value.p;
        let a = interval_analysis(p).map_err(|e| format!("{}: {e}", f.name))?;
        let st = straighten(&f.value).map_err(|e| e.to_string())?;
        ensure(st.method == Strictification::ChosenLifts, || format!("{}: unexpected strictification", f.name))?;
        let base = p.target.clone();
        let e = base.non_identity_arrows().next().ok_or("base has no arrow")?;
        let (e0, e1) = (base.src(e), base.tgt(e));
        // values are the fibers, so compare inside the total category
        ensure(
            st.eval[e0].objects == a.fiber0.1.objects && st.eval[e0].arrows == a.fiber0.1.arrows,
            || format!("{}: fiber over 0 differs", f.name),
        )?;
        ensure(
            st.eval[e1].objects == a.fiber1.1.objects && st.eval[e1].arrows == a.fiber1.1.arrows,
            || format!("{}: fiber over 1 differs", f.name),
        )?;
        let lhs = st.diagram.actions[e].then(&st.eval[e1]);
        let rhs = a.straightened.then(&a.fiber1.1);
        ensure(lhs.objects == rhs.objects && lhs.arrows == rhs.arrows, || format!("{}: action ≠ L₁∘i₀", f.name))?;
        let dual = check_cocartesian_fibration(&p.op()).holds();
        let by_edges = check_cartesian_fibration(p).holds();
        ensure(a.right_adjoint.is_some() == by_edges && by_edges == dual && a.cartesian == by_edges, || {
            format!("{}: right adjoint {}, edges {by_edges}, op {dual}", f.name, a.right_adjoint.is_some())
        })?;
        cartesian += by_edges as usize;
    }
    ensure(cartesian > 0 && cartesian < fs.len(), || format!("cartesian flag one-sided: {cartesian}/{}", fs.len()))?;
    Ok(format!("{} fibrations over [1], {cartesian} cartesian", fs.len()))
}

/// Assignments `(j, x) -> S` compatible with every action, counted by brute force.
fn cocones_into(d: &Diagram, s: usize) -> usize {
    let elems: Vec<(usize, usize)> =
        d.shape.objects().flat_map(|j| d.values[j].objects().map(move |x| (j, x))).collect();
    let index: BTreeMap<_, _> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut count = 0;
    let total = s.pow(elems.len() as u32);
    for code in 0..total {
        let at = |i: usize| (code / s.pow(i as u32)) % s;
        let ok = d.shape.arrows().all(|a| {
            let (j, k) = (d.shape.src(a), d.shape.tgt(a));
            d.values[j].objects().all(|x| at(index[&(j, x)]) == at(index[&(k, d.actions[a].ob(x))]))
        });
        count += ok as usize;
    }
    count
}

/// Families `(x_j)` compatible with every action, by brute force over the product.
fn cones_from_point(d: &Diagram) -> BTreeSet<Vec<usize>> {
    let sizes: Vec<usize> = d.values.iter().map(|v| v.num_objects()).collect();
    let total: usize = sizes.iter().product();
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        let fam: Vec<usize> = sizes
            .iter()
            .map(|&n| {
                let x = c % n;
                c /= n;
                x
            })
            .collect();
        if d.shape.arrows().all(|a| d.actions[a].ob(fam[d.shape.src(a)]) == fam[d.shape.tgt(a)]) {
            out.insert(fam);
        }
    }
    out
}

fn colimits_and_limits() -> Outcome {
    let items: Vec<Item<Diagram>> = corpus::discrete_diagrams(DEFAULT_SEED, 30, 4)
        .into_iter()
        .filter(|it| it.value.values.iter().all(|v| v.num_objects() > 0))
        .collect();
    ensure(items.len() >= 20, || format!("only {} diagrams", items.len()))?;
    let mut localized = 0;
    for it in &items {
        let d = &it.value;
        let name = &it.name;
        ensure(d.shape.num_objects() <= 4 && d.is_discrete(), || format!("{name}: not a small discrete diagram"))?;
        let sc = set_colimit(d).map_err(|e| format!("{name}: {e}"))?;
        let classes = sc.classes.len();
        let cocones = cocones_into(d, 2);
        ensure(cocones == 1 << classes, || format!("{name}: {cocones} cocones into 2, {classes} classes"))?;
        match colimit(d, ColimitMethod::Localization(8)).map_err(|e| format!("{name}: {e}"))? {
            ColimitReport::Finite { category: k, legs, .. } => {
                localized += 1;
                ensure(k.num_components() == classes, || format!("{name}: π₀ {} vs {classes}", k.num_components()))?;
                ensure(k.arrows().all(|a| k.is_iso(a)), || format!("{name}: localization not a groupoid"))?;
                ensure(k.objects().all(|x| k.objects().all(|y| k.hom(x, y).len() <= 1)), || {
                    format!("{name}: localization has parallel arrows")
                })?;
                let comp = k.components();
                let mut bij: BTreeMap<usize, usize> = BTreeMap::new();
                for j in d.shape.objects() {
                    for x in d.values[j].objects() {
                        let c = comp[legs[j].ob(x)];
                        let cls = sc.class_of[j][x];
                        ensure(*bij.entry(cls).or_insert(c) == c, || format!("{name}: legs split a class"))?;
                    }
                }
                let image: BTreeSet<_> = bij.values().collect();
                ensure(image.len() == classes, || format!("{name}: legs merge classes"))?;
            }
            ColimitReport::Infinite { .. } => {
                let un = unstraighten(d).map_err(|e| e.to_string())?;
                let c = un.total().num_components();
                ensure(c == classes, || format!("{name}: {c} components vs {classes} classes"))?;
            }
        }
        let lim = limit(d, DEFAULT_GUARD).map_err(|e| format!("{name}: {e}"))?;
        let oracle = set_limit(d).map_err(|e| e.to_string())?;
        let cones = cones_from_point(d);
        ensure(oracle.len() == cones.len() && oracle.iter().all(|f| cones.contains(f)), || {
            format!("{name}: set limit disagrees with cones from a point")
        })?;
        ensure(lim.category.arrows().all(|a| lim.category.is_identity(a)), || format!("{name}: limit not discrete"))?;
        let families: BTreeSet<Vec<usize>> =
            lim.category.objects().map(|s| d.shape.objects().map(|j| lim.legs[j].ob(s)).collect()).collect();
        ensure(families.len() == lim.category.num_objects() && families == cones, || {
            format!("{name}: {} sections vs {} compatible families", lim.category.num_objects(), cones.len())
        })?;
    }
    Ok(format!("{} diagrams, {localized} finite localizations", items.len()))
}

fn appendix() -> Outcome {
    let b = appendix_battery(2, true, 3).map_err(|e| e.to_string())?;
    let oracle = raw_count(DpObject::Plus, DpObject::Plus);
    ensure(b.oracle == oracle, || format!("battery oracle {} vs raw words {oracle}", b.oracle))?;
    for (level, r) in &b.levels {
        ensure(r.block_diagonal(), || format!("sk{level}: degenerate and nondegenerate parts connect"))?;
        ensure(r.final_object.is_some(), || format!("sk{level}: no final object in the degenerate part"))?;
        ensure(r.comparison_agrees(), || format!("sk{level}: α∨− changes π₀"))?;
        ensure(r.total == 3, || format!("sk{level}: total π₀ = {}", r.total))?;
    }
    ensure(b.stable && b.passed(), || "battery not stable".into())?;
    let sizes: Vec<String> = b.levels.iter().map(|(l, r)| format!("sk{l} {} objects", r.objects)).collect();
    Ok(format!("total π₀ = 3, stable ({})", sizes.join(", ")))
}

fn invariants() -> Outcome {
    let mut t = Tally::default();
    for (name, x) in small_sets() {
        t.record("simplicial identities", &name, simplicial_identities(&x));
    }
    let sets = small_sets();
    for (nx, x) in sets.iter().take(4) {
        for (ny, y) in [&sets[1], &sets[3], &sets[7]] {
            for t_ in [&sets[1].1, &sets[2].1] {
                t.record("product", &format!("{nx} × {ny}"), product_property(t_, x, y));
            }
        }
    }
    for (name, f, g) in gluings() {
        let po = cocart::simplicial::pushout(&f, &g);
        t.record("simplicial identities", &name, simplicial_identities(&po.object));
        for (nw, w) in [&sets[2], &sets[3], &sets[7]] {
            t.record("pushout", &format!("{name} into {nw}"), pushout_property(&f, &g, w));
        }
    }
    let functors: Vec<Item<Functor>> =
        corpus::functors(DEFAULT_SEED, 60).into_iter().chain(corpus::over_interval(DEFAULT_SEED, 40)).collect();
    for it in &functors {
        t.record("closure", &it.name, closure(&it.value));
    }
    let fs = fibrations(&functors);
    let (mut equivalences, mut others) = (0, 0);
    for (i, f) in fs.iter().enumerate() {
        for g in base_changes(DEFAULT_SEED + i as u64, f.value.base(), 2) {
            t.record("pullback", &f.name, pullback_stability(&f.value, &g));
        }
        let mut yes = 0;
        match partners(&f.value) {
            Ok(qs) => {
                for q in qs {
                    for (a, b) in [(&f.value, &q), (&q, &f.value)] {
                        match fiberwise_criterion(a, b) {
                            Ok((y, n)) => {
                                yes += y;
                                others += n;
                            }
                            Err(e) => t.record("fiberwise", &f.name, Err(e)),
                        }
                    }
                }
                t.record("fiberwise", &f.name, ensure(yes > 0, || "no equivalence found among partners".into()));
            }
            Err(e) => t.record("fiberwise", &f.name, Err(e)),
        }
        equivalences += yes;
    }
    t.record(
        "fiberwise",
        "corpus",
        ensure(equivalences > 0 && others > 0, || format!("{equivalences} equivalences, {others} others")),
    );
    let shapes = [FinCategory::point(), FinCategory::ordinal(1), FinCategory::discrete(2)].map(Arc::new);
    for group in by_base(&fs) {
        let small: Vec<_> = group.into_iter().filter(|f| f.value.total().num_objects() <= 3).take(3).collect();
        for p in &small {
            for q in &small {
                for d in &shapes {
                    t.record("tensor/power", &format!("{} {}", p.name, q.name), tensor_power(d, &p.value, &q.value));
                }
            }
        }
    }
    for p in posets_up_to(4) {
        t.record("necklaces", &format!("{:?}", p.object_names()), poset_soundness(&p));
    }
    if let Some(first) = t.failures.first() {
        return Err(format!("{} failures, first: {first}", t.failures.len()));
    }
    let counts: Vec<String> = t.checked.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok(counts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 7] = [
        ("Δ₊ hom-set counts", Duration::from_secs(1), delta_plus_counts),
        ("checker concordance", Duration::from_secs(120), concordance),
        ("straightening round trips", Duration::from_secs(300), straightening),
        ("interval formula and cartesian criterion", Duration::from_secs(60), interval),
        ("colimit and limit formulas", Duration::from_secs(120), colimits_and_limits),
        ("necklace battery", Duration::from_secs(300), appendix),
        ("structural invariants", Duration::from_secs(300), invariants),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
