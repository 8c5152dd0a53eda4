use std::path::Path;
use std::process::Command;

use cocart::grothendieck::{set_colimit, unstraighten};
use cocart::fibration::Fibration;
use cocart::grothendieck::straighten;
use cocart::json::{diagram_to_json, functor_to_json, parse_diagram, parse_functor};

const BIN: &str = env!("CARGO_BIN_EXE_cocart");

fn data() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))
}

fn cocart(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).current_dir(data()).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Set UPDATE_GOLDEN=1 to rewrite.
fn golden(name: &str, args: &[&str], code: i32) {
    let (got, stdout, _) = cocart(args);
    assert_eq!(got, code, "{args:?}");
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden")).join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout, want, "{args:?}");
}

#[test]
fn goldens() {
    golden("check_cocart.txt", &["check-cocart", "p_2_to_1.json"], 0);
    golden("check_cocart.json", &["--format", "json", "check-cocart", "p_2_to_1.json"], 0);
    golden("check_cocart.dot", &["--format", "dot", "check-cocart", "p_2_to_1.json"], 0);
    golden("colim.txt", &["colim", "span_sets.json"], 0);
    golden("colim.json", &["--format", "json", "colim", "span_sets.json"], 0);
    golden("colim_localize.json", &["--format", "json", "colim", "--method", "localize", "span_sets.json"], 0);
    golden("lim.txt", &["lim", "span_sets.json"], 0);
    golden("map_space.txt", &["map-space", "parallel_edges.json", "--from", "a", "--to", "b"], 0);
    golden("hom_plus.txt", &["delta-plus", "hom", "+", "+"], 0);
    golden("lift.txt", &["lift", "--left", "interval_to_point.json", "--right", "interval_to_point.json"], 1);
    golden("validate.json", &["--format", "json", "validate", "two_to_one.json", "span_sets.json"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(cocart(&["check-cocart", "p_2_to_1.json"]).0, 0);
    assert_eq!(cocart(&["interval", "discrete_over_interval.json"]).0, 1);
    assert_eq!(cocart(&["lift", "--left", "boundary_to_point.json", "--right", "interval_to_point.json", "--budget", "3"]).0, 2);
    assert_eq!(cocart(&["validate", "nope.json"]).0, 64);
    assert_eq!(cocart(&["validate", "--kind", "bogus", "x.json"]).0, 64);
    assert_eq!(cocart(&["--format", "dot", "delta-plus", "hom", "+", "+"]).0, 64);
    let (code, _, err) = cocart(&["validate", "broken_assoc.json"]);
    assert_eq!(code, 65);
    assert!(err.contains("associativity"), "{err}");
    assert_eq!(cocart(&["--help"]).0, 0);
}

#[test]
fn json_errors_carry_the_code() {
    let (code, out, _) = cocart(&["--format", "json", "validate", "broken_assoc.json"]);
    assert_eq!(code, 65);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["code"], 65);
}

#[test]
fn jobs_do_not_change_output() {
    let files = ["p_2_to_1.json", "discrete_over_interval.json", "nope.json", "two_to_one.json"];
    let run = |jobs: &str, order: &[&str]| {
        let mut args = vec!["--jobs", jobs, "check-cocart"];
        args.extend(order);
        cocart(&args)
    };
    let serial = run("1", &files);
    let mut reversed = files;
    reversed.reverse();
    assert_eq!(run("4", &reversed), serial);
    // worst exit code wins
    assert_eq!(serial.0, 64);
    let heads: Vec<_> = serial.1.lines().filter(|l| l.starts_with("== ")).collect();
    let mut sorted = heads.clone();
    sorted.sort();
    assert_eq!(heads, sorted);
    assert_eq!(heads.len(), files.len());
}

#[test]
fn colimit_matches_the_library() {
    let d = parse_diagram(&std::fs::read_to_string(data().join("span_sets.json")).unwrap()).unwrap();
    let classes = set_colimit(&d).unwrap().classes.len();
    for method in ["sets", "localize"] {
        let (code, out, _) = cocart(&["--format", "json", "colim", "--method", method, "span_sets.json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["components"], classes, "{method}");
    }
}

#[test]
fn unstraighten_matches_the_library() {
    let text = std::fs::read_to_string(data().join("two_to_one.json")).unwrap();
    let p = unstraighten(&parse_diagram(&text).unwrap()).unwrap();
    let (code, out, _) = cocart(&["--format", "json", "unstraighten", "two_to_one.json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["functor"], serde_json::to_value(functor_to_json(&p.fibration.p)).unwrap());
    let q = parse_functor(&v["functor"].to_string()).unwrap();
    assert_eq!(q.source.num_objects(), p.total().num_objects());
    assert_eq!(q.source.num_arrows(), p.total().num_arrows());
    let flags = cocart::fibration::cocartesian_edges(&q);
    let mut want: Vec<String> = (0..q.source.num_arrows())
        .filter(|&a| flags[a] && q.source.src(a) != q.source.tgt(a))
        .map(|a| q.source.arrow_name(a).to_string())
        .collect();
    let mut got: Vec<String> = serde_json::from_value(v["cocartesian"].clone()).unwrap();
    want.sort();
    got.sort();
    assert_eq!(got, want);
}

#[test]
fn dot_flags_exactly_the_cocartesian_edges() {
    let (_, out, _) = cocart(&["--format", "dot", "check-cocart", "p_2_to_1.json"]);
    let red: Vec<_> = out.lines().filter(|l| l.contains("color=red")).collect();
    assert_eq!(red.len(), 1);
    assert!(red[0].contains("0<1"));
}

#[test]
fn straighten_matches_the_library() {
    let p = parse_functor(&std::fs::read_to_string(data().join("p_2_to_1.json")).unwrap()).unwrap();
    let st = straighten(&Fibration::new(p).unwrap()).unwrap();
    let (code, out, _) = cocart(&["--format", "json", "straighten", "p_2_to_1.json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["diagram"], serde_json::to_value(diagram_to_json(&st.diagram)).unwrap());
    assert_eq!(v["comparisons"], st.comparisons.len());
    // values of the straightening are the fibers: one object over 0, two over 1
    let sizes: Vec<usize> = st.diagram.values.iter().map(|c| c.num_objects()).collect();
    assert_eq!(sizes, [1, 2]);
}
