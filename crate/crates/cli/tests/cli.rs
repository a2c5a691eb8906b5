use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name)
}

fn qcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn invocations() -> Vec<(i32, Vec<String>)> {
    let d = data;
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        (0, v(&["parse", "--theory", &d("order.thy")])),
        (0, v(&["translate", "--theory", &d("order.thy")])),
        (0, v(&["axioms", "--frag", &d("lt.frag"), "--sa"])),
        (0, v(&["axioms", "--frag", &d("lt_g.frag"), "--sa", "--sk", "--adapter"])),
        (0, v(&["eval", "--theory", &d("order.thy"), "--structure", &d("weak.json"), "--weak"])),
        (0, v(&["eval", "--theory", &d("order.thy"), "--structure", &d("weak.json"), "--cfinite", "--cof", "omega"])),
        (0, v(&["find-model", "--theory", &d("pair.thy"), "--frag", &d("r.frag"), "--max-size", "3"])),
        (0, v(&["find-model", "--theory", &d("contradiction.thy"), "--frag", &d("r.frag"), "--max-size", "3"])),
        (0, v(&["find-model", "--theory", &d("pair.thy"), "--frag", &d("r.frag"), "--max-size", "3", "--budget", "0"])),
        (0, v(&["order-cf", "--x", "omega + reg(aleph1)"])),
        (0, v(&["order-connect", "--x", "omega", "--y", "reg(aleph1)"])),
        (0, v(&["order-connect", "--x", "omega", "--y", "omega + omega", "--sparse", "--check", "50"])),
        (0, v(&["order-check", "--x", "omega", "--y", "fin(2) + omega", "--relation", "lower(sparse)", "--bound", "40"])),
        (0, v(&["--help"])),
        (1, v(&["parse", "--theory", &d("missing.thy")])),
        (1, v(&["parse", "--theory", &d("broken.thy")])),
        (1, v(&["parse", "--theory", &d("free.thy")])),
        (1, v(&["axioms", "--frag", &d("order.thy"), "--sa"])),
        (1, v(&["eval", "--theory", &d("order.thy"), "--structure", &d("broken.json"), "--weak"])),
        (1, v(&["order-connect", "--x", "omega", "--y", "fin(3)"])),
        (1, v(&["order-connect", "--x", "reg(k)", "--y", "reg(k)", "--check", "10"])),
        (1, v(&["order-check", "--x", "omega", "--y", "omega + omega", "--relation", "self", "--bound", "10"])),
        (2, v(&[])),
        (2, v(&["frobnicate"])),
        (2, v(&["parse"])),
        (2, v(&["axioms", "--frag", &d("lt.frag")])),
        (2, v(&["eval", "--theory", &d("order.thy"), "--structure", &d("weak.json")])),
        (2, v(&["eval", "--theory", &d("order.thy"), "--structure", &d("weak.json"), "--cfinite"])),
        (2, v(&["eval", "--theory", &d("order.thy"), "--structure", &d("weak.json"), "--weak", "--cof", "omega"])),
        (2, v(&["eval", "--theory", &d("order.thy"), "--structure", &d("weak.json"), "--cfinite", "--cof", "9x"])),
        (2, v(&["find-model", "--theory", &d("pair.thy"), "--frag", &d("r.frag")])),
        (2, v(&["find-model", "--theory", &d("pair.thy"), "--frag", &d("r.frag"), "--max-size", "-1"])),
        (2, v(&["order-cf", "--x", "omega +"])),
        (2, v(&["order-connect", "--x", "omega", "--y", "omega", "--sparse"])),
        (2, v(&["order-check", "--x", "omega", "--y", "omega", "--relation", "wobbly", "--bound", "5"])),
    ]
}

#[test]
fn exit_statuses_follow_the_contract() {
    for (want, args) in invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = qcf(&args);
        assert_eq!(o.status.code(), Some(want), "qcf {args:?}\nstderr: {}", String::from_utf8_lossy(&o.stderr));
        if want != 0 {
            assert!(!o.stderr.is_empty(), "qcf {args:?} failed silently");
        }
    }
}

#[test]
fn every_invocation_is_deterministic() {
    for (_, args) in invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (qcf(&args), qcf(&args));
        assert_eq!(a.stdout, b.stdout, "qcf {args:?}");
        assert_eq!(a.stderr, b.stderr, "qcf {args:?}");
    }
}

#[test]
fn axioms_match_the_golden_files() {
    let sa = qcf(&["axioms", "--frag", &data("lt.frag"), "--sa"]);
    assert_eq!(stdout(&sa), std::fs::read_to_string(golden("sa_order.ax")).unwrap());
    let conn = qcf(&["axioms", "--frag", &data("lt_g.frag"), "--sa"]);
    assert_eq!(stdout(&conn), std::fs::read_to_string(golden("sa_connection.ax")).unwrap());
    let sk = qcf(&["axioms", "--frag", &data("lt.frag"), "--sk"]);
    assert_eq!(stdout(&sk), std::fs::read_to_string(golden("sk_arity0.ax")).unwrap());
    let adapter = qcf(&["axioms", "--frag", &data("lt.frag"), "--adapter"]);
    assert_eq!(stdout(&adapter), std::fs::read_to_string(golden("adapter_order.ax")).unwrap());
}

#[test]
fn combined_axioms_declare_all_fresh_symbols_once() {
    let text = stdout(&qcf(&["axioms", "--frag", &data("lt_g.frag"), "--adapter", "--sk", "--sa"]));
    let header: Vec<&str> = text.lines().take_while(|l| *l != "begin").collect();
    assert_eq!(header, ["rel < 2", "rel G 2", "rel V_1 2", "rel O_1 2", "rel H_1 2"]);
    let tags: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix("# tag: ")).map(|t| t.split(' ').next().unwrap()).collect();
    assert_eq!(tags.iter().filter(|t| **t == "SK").count(), 1);
    assert_eq!(tags.iter().filter(|t| **t == "adapter").count(), 1);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sa.ax");
    let p = path.to_str().unwrap();
    let o = qcf(&["axioms", "--frag", &data("lt.frag"), "--sa", "--out", p]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&qcf(&["axioms", "--frag", &data("lt.frag"), "--sa"])));
    let t = dir.path().join("t.txt");
    assert!(qcf(&["translate", "--theory", &data("order.thy"), "--out", t.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(&t).unwrap(), "forall x. ~(x < x)\nR[x < y]\n# template/0: x < y\n");
}

#[test]
fn parse_prints_canonical_forms() {
    let o = qcf(&["parse", "--theory", &data("order.thy")]);
    assert_eq!(stdout(&o), "rel < 2\nbegin\nforall x. ~(x < x)\nQcf x y. x < y\n");
}

#[test]
fn eval_reports_each_sentence() {
    let weak = qcf(&["eval", "--theory", &data("order.thy"), "--structure", &data("weak.json"), "--weak"]);
    assert_eq!(stdout(&weak), "TRUE  forall x. ~(x < x)\nTRUE  Qcf x y. x < y\nSATISFIED 2/2\n");
    let c = qcf(&["eval", "--theory", &data("order.thy"), "--structure", &data("weak.json"), "--cfinite", "--cof", "omega"]);
    assert_eq!(stdout(&c), "TRUE  forall x. ~(x < x)\nFALSE Qcf x y. x < y\nFALSIFIED 1/2\n");
    assert!(c.stderr.is_empty());
}

#[test]
fn degenerate_cofinality_classes_warn() {
    for (spec, warning) in [("", "empty"), ("all-except:", "every regular cardinal")] {
        let o = qcf(&["eval", "--theory", &data("order.thy"), "--structure", &data("weak.json"), "--cfinite", "--cof", spec]);
        assert!(o.status.success());
        assert!(String::from_utf8_lossy(&o.stderr).contains(warning), "{spec:?}");
    }
}

#[test]
fn find_model_reports_found_exhausted_and_budget() {
    let found = stdout(&qcf(&["find-model", "--theory", &data("pair.thy"), "--frag", &data("r.frag"), "--max-size", "3"]));
    assert!(found.starts_with("FOUND size=2\n{"), "{found}");
    let exhausted = qcf(&["find-model", "--theory", &data("contradiction.thy"), "--frag", &data("r.frag"), "--max-size", "3"]);
    assert_eq!(stdout(&exhausted), "EXHAUSTED max=3\n");
    let budget = stdout(&qcf(&["find-model", "--theory", &data("pair.thy"), "--frag", &data("r.frag"), "--max-size", "3", "--budget", "0"]));
    assert!(budget.starts_with("BUDGET "), "{budget}");
}

#[test]
fn order_queries_print_stable_tokens() {
    assert_eq!(stdout(&qcf(&["order-cf", "--x", "omega + fin(5)"])), "HAS_LAST\n");
    assert_eq!(stdout(&qcf(&["order-cf", "--x", "omega + reg(aleph1)"])), "COF(aleph1)\n");
    assert_eq!(stdout(&qcf(&["order-cf", "--x", "fin(0)"])), "EMPTY\n");
    let c = stdout(&qcf(&["order-connect", "--x", "omega", "--y", "omega + omega", "--check", "200"]));
    assert_eq!(c, "cf(x) = COF(omega)\ncf(y) = COF(omega)\nconnected: true\nrelation: connection\n(1) EXACT_TRUE\n(2) EXACT_TRUE\n");
    let r = stdout(&qcf(&["order-connect", "--x", "omega", "--y", "reg(aleph1)"]));
    assert!(r.ends_with("connected: false\n"), "{r}");
    let sparse = stdout(&qcf(&["order-connect", "--x", "omega", "--y", "omega + omega", "--sparse", "--check", "200"]));
    assert!(sparse.contains("relation: sparse\n") && !sparse.contains("REFUTED"), "{sparse}");
}

#[test]
fn order_check_refutes_the_empty_relation() {
    let o = stdout(&qcf(&["order-check", "--x", "omega", "--y", "omega", "--relation", "empty", "--bound", "20"]));
    let one = o.lines().find(|l| l.starts_with("(1) ")).unwrap();
    assert!(one.starts_with("(1) REFUTED(") || one == "(1) EXACT_FALSE", "{o}");
}
