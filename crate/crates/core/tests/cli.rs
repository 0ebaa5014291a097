use weakfree::cli::run;

fn wf(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("weakfree").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = wf(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn normalize_examples() {
    assert_eq!(ok(&["normalize", "x x' x"]), "1 1 B(x) x 1\n");
    assert_eq!(ok(&["normalize", "x"]), "1 1 B(x) x 1\n");
    assert_eq!(ok(&["normalize", "x'"]), "1 x' B(x) 1 1\n");
    assert_eq!(ok(&["normalize", "x x"]), "1 1 B(x) x T(B(x);1;1;x;B(x)) 1 B(x) x 1\n");
    assert_eq!(ok(&["normalize", "--alphabet", "x", "1"]), "1\n");
}

#[test]
fn normalize_trace_is_json() {
    let out = ok(&["normalize", "--trace", "x x"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let steps = v.as_array().unwrap();
    assert!(steps.len() >= 2);
    assert_eq!(steps.last(), Some(&serde_json::from_str::<serde_json::Value>(&ok(&["render", "--format", "json", "--normalize", "x x"])).unwrap()));
}

#[test]
fn equality_and_product() {
    assert_eq!(ok(&["eq", "x x'", "B(x)"]), "true\n");
    assert_eq!(ok(&["eq", "x", "x'"]), "false\n");
    assert_eq!(ok(&["mul", "x", "x'"]), ok(&["normalize", "x x'"]));
    assert_eq!(ok(&["idempotent", "x x'"]), "true\n");
    assert_eq!(ok(&["idempotent", "x"]), "false\n");
    assert_eq!(ok(&["idempotent", "--gorge", "x x'"]), "true\n");
}

#[test]
fn green_and_order() {
    assert_eq!(ok(&["green", "D", "x", "x'"]), "true\n");
    assert_eq!(ok(&["green", "R", "x", "x x'"]), "true\n");
    assert_eq!(ok(&["green", "L", "x", "x x'"]), "false\n");
    assert_eq!(ok(&["order", "x", "x"]), "true\n");
    assert_eq!(wf(&["green", "Q", "x", "x"]).0, 3);
}

#[test]
fn inverses_of_x() {
    let out = ok(&["inverses", "x"]);
    let x_prime = ok(&["normalize", "x'"]);
    assert!(out.lines().any(|l| format!("{l}\n") == x_prime), "{out}");
}

#[test]
fn counting() {
    assert_eq!(ok(&["count", "--peak", "T(B(x);1;1;x;B(x))"]), "uphills=4 mountains=16 expected=4,16 OK\n");
    assert_eq!(ok(&["count", "--peak", "B(x)"]), "uphills=2 mountains=4 expected=2,4 OK\n");
    assert_eq!(ok(&["gens", "--alphabet", "x,y", "--height", "2", "--kind", "d"]).lines().count(), 8);
    assert_eq!(ok(&["gens", "--alphabet", "x,y", "--height", "1"]).lines().count(), 2);
}

#[test]
fn info_reports_shape() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["info", "1 1 B(x) x 1"])).unwrap();
    assert_eq!(v["class"], "Mountain");
    assert_eq!(v["height"], 1);
    assert_eq!(v["kappa"], "B(x)");
}

#[test]
fn exit_codes() {
    let (code, _, err) = wf(&["normalize", "x ?"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(wf(&["normalize", "--alphabet", "x", "y"]).0, 2);
    assert_eq!(wf(&["render", "B(x) 1 B(y)"]).0, 3);
    assert_eq!(wf(&["normalize", "T(B(x);1;1;1;B(x))"]).0, 3);
    assert_eq!(wf(&["--cap", "2", "normalize", "x x x x"]).0, 4);
    assert_eq!(wf(&["frobnicate"]).0, 2);
    assert_eq!(wf(&["--help"]).0, 0);
}

#[test]
fn render_formats() {
    assert_eq!(ok(&["render", "1 1 B(x) x 1"]), "1 |      B(x)\n0 | 1 /1      x\\ 1\n");
    let svg = ok(&["render", "--format", "svg", "--normalize", "x x"]);
    assert!(svg.starts_with("<svg") && svg.matches("<circle").count() == 5);
    let v: serde_json::Value = serde_json::from_str(&ok(&["render", "--format", "json", "1 1 B(x) x 1"])).unwrap();
    assert!(v.is_object());

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.svg");
    assert_eq!(ok(&["render", "--format", "svg", "-o", p.to_str().unwrap(), "1 1 B(x) x 1"]), "");
    assert!(std::fs::read_to_string(&p).unwrap().contains("<svg"));
}

#[test]
fn skeleton_into_t3() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t3.json");
    std::fs::write(&p, ok(&["transformations", "3"])).unwrap();
    let table = p.to_str().unwrap();
    for strategy in ["first", "seeded"] {
        let out = ok(&["skeleton", "--table", table, "--map", "x=5", "--strategy", strategy, "--seed", "3", "--height", "2"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for check in ["skeleton_conditions", "closure_regular", "closure_monoid_one_phi"] {
            assert_eq!(v["checks"][check], "PASS", "{strategy} {check}");
        }
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(wf(&["skeleton", "--table", bad.to_str().unwrap(), "--map", "x=0"]).0, 2);
    assert_eq!(wf(&["skeleton", "--table", "/nonexistent/t.json", "--map", "x=0"]).0, 2);
    assert_eq!(wf(&["skeleton", "--table", table, "--map", "x"]).0, 2);
}

#[test]
fn non_associative_table_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("na.json");
    std::fs::write(&p, r#"{"size": 2, "table": [[1, 0], [0, 0]]}"#).unwrap();
    assert_eq!(wf(&["skeleton", "--table", p.to_str().unwrap(), "--map", "x=0"]).0, 3);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = wf(&["selftest", "--max-height", "3", "--seed", "7"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 10);
    assert!(out.lines().all(|l| l.starts_with("PASS ") && l.ends_with("seed=7")));
    assert_eq!(wf(&["selftest", "--max-height", "0"]).0, 3);
}

#[test]
fn normal_forms_are_fixed_points() {
    for w in ["x x", "x y' x", "y x x' y", "B(x) x B(y)"] {
        let nf = ok(&["normalize", "--alphabet", "x,y", w]);
        assert_eq!(ok(&["normalize", "--alphabet", "x,y", nf.trim()]), nf, "{w}");
    }
}
