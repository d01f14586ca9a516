use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::{json, Value};

fn cpgb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpgb")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn load_schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema: &Value, instance: &Value) {
    let compiled = JSONSchema::compile(schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(instance) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:#?}\n{instance:#}");
}

fn json_output(args: &[&str], schema: &str) -> Value {
    let out = cpgb(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    assert_valid(&load_schema(schema), &v);
    v
}

#[test]
fn identity_for_single_site() {
    let out = cpgb(&["identities", "--pattern", "o"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2*l*y - 2*l*x - x + 1\n");
}

#[test]
fn third_order_identity_set() {
    let out = cpgb(&["identities", "--order", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["identities", "--pattern", "q"][..],
        &["identities"],
        &["identities", "--order", "9"],
        &["compare", "--order", "3"],
        &["approx", "--order", "5"],
        &["approx", "--order", "1", "--out", "csv"],
        &["ideal", "--relation", "o*o=oo"],
        &["sweep", "--from", "2", "--to", "1", "--step", "0.1"],
        &["simulate", "--lambda", "1", "--L", "2"],
    ] {
        assert_eq!(cpgb(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn first_order_text() {
    let out = cpgb(&["approx", "--order", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lambda_c: 1/2 = 0.5"), "{text}");
    assert!(text.contains("branch: x = 1/(2*l)"), "{text}");
}

#[test]
fn degenerate_order_exits_3() {
    let out = cpgb(&["approx", "--order", "2prime"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("trivial solution only"));
    for g in ["x - 1", "y - 1", "z - 1"] {
        assert!(text.lines().any(|l| l.trim() == g), "{text}");
    }
    let v = json_output(&["approx", "--order", "2prime", "--out", "json"], "approx.schema.json");
    assert_eq!(v["degenerate"], json!(true));
    assert_eq!(v["basis"], json!(["x - 1", "y - 1", "z - 1"]));
}

#[test]
fn third_order_json() {
    let v = json_output(&["approx", "--order", "3", "--out", "json"], "approx.schema.json");
    assert_eq!(v["lambda_c"]["exact"], json!("(1 + sqrt(37))/6"));
    assert_eq!(v["lambda_c"]["value"], json!(1.18046042172));
    assert_eq!(v["nontrivial"], json!("12*l^3*x^2 - 5*l*x^2 - x^2 - 4*l^2*x - 6*l*x - l + 1"));
    assert_eq!(v["discriminant"], json!("16*l^4 + 4*l^2 + 4*l + 1"));
    assert_eq!(v["manifest"]["command_line"][1], json!("approx"));
}

#[test]
fn groebner_prints_reduced_basis() {
    let out = cpgb(&["groebner", "--order", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "2*l*x^2 - x^2 - 2*l*x + 1\n2*l*y - 2*l*x - x + 1\nx*y + y - 2*x^2\nz + y^2 + 2*y - 4*x^2\n"
    );
    let traced = cpgb(&["groebner", "--order", "2", "--trace"]);
    assert_eq!(traced.stdout, out.stdout);
    assert!(String::from_utf8_lossy(&traced.stderr).contains("pair ("));
}

#[test]
fn custom_scheme_reproduces_pair_closure() {
    let custom = cpgb(&["groebner", "--order", "2", "--scheme", "custom", "--relation", "o*ooo=oo*oo"]);
    let builtin = cpgb(&["groebner", "--order", "2"]);
    assert_eq!(custom.stdout, builtin.stdout);
    let ideal = cpgb(&["ideal", "--order", "3", "--scheme", "custom", "--relation", "o*ooxo=oo*oxo"]);
    assert_eq!(stdout(&ideal).lines().last(), Some("x*u - y*w"));
    let open = cpgb(&["approx", "--order", "1", "--scheme", "custom"]);
    assert_eq!(open.status.code(), Some(3));
}

#[test]
fn sweep_csv_has_manifest_header() {
    let out = cpgb(&["sweep", "--order", "3", "--from", "1.0", "--to", "5.0", "--step", "0.05", "--out", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let manifest: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    let sweep_schema = load_schema("sweep.schema.json");
    let manifest_schema = json!({"$ref": "#/definitions/manifest", "definitions": sweep_schema["definitions"]});
    assert_valid(&manifest_schema, &manifest);
    assert_eq!(lines.next(), Some("lambda,rho"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 81);
    assert_eq!(rows[0], (1.0, 0.0));
    assert_eq!(rows[80].0, 5.0);
    assert!(rows.windows(2).all(|w| w[1].1 >= w[0].1));
}

#[test]
fn sweep_json_and_file_output() {
    let dir = std::env::temp_dir().join(format!("cpgb-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rho.json");
    let out = cpgb(&[
        "sweep",
        "--order",
        "2",
        "--from",
        "0",
        "--to",
        "3",
        "--step",
        "0.5",
        "--out",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid(&load_schema("sweep.schema.json"), &v);
    assert_eq!(v["rows"][4], json!({"lambda": 2.0, "rho": 2.0 / 3.0}));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn simulate_modes_validate() {
    let base = ["simulate", "--lambda", "2.0", "--L", "60", "--T", "20", "--replicas", "40", "--seed", "7"];
    for mode in ["extinction", "density", "duality"] {
        let mut args = base.to_vec();
        args.extend(["--mode", mode]);
        let v = json_output(&args, "simulate.schema.json");
        assert_eq!(v["mode"], json!(mode));
        assert_eq!(v["manifest"]["seed"], json!(7));
        assert_eq!(v["rng"], v["manifest"]["rng"]);
        assert_eq!(v["duality"].is_null(), mode != "duality");
    }
}

#[test]
fn simulate_is_deterministic() {
    let args =
        ["simulate", "--lambda", "1.5", "--pattern", "oo", "--L", "80", "--T", "30", "--replicas", "50", "--seed", "3"];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("manifest");
        v
    };
    let a = strip(json_output(&args, "simulate.schema.json"));
    let b = strip(json_output(&args, "simulate.schema.json"));
    assert_eq!(a, b);
}

#[test]
fn compare_records() {
    let sim = ["--L", "100", "--T", "40", "--replicas", "40", "--seed", "11"];
    let mut args = vec!["compare", "--order", "3", "--lambda", "2"];
    args.extend(sim);
    let v = json_output(&args, "compare.schema.json");
    assert!((v["rho_approx"].as_f64().unwrap() - 0.638_081_710_420_703_4).abs() < 1e-12);
    assert!(v["rho_sim"].as_f64().unwrap() > 0.0);

    let mut args = vec!["compare", "--order", "1", "--lambda", "0.3"];
    args.extend(sim);
    let v = json_output(&args, "compare.schema.json");
    assert_eq!(v["rho_approx"], json!(0.0));
    assert_eq!(v["extinction_sim"], json!(1.0));

    let mut args = vec!["compare", "--order", "2prime", "--lambda", "2"];
    args.extend(sim);
    assert_eq!(cpgb(&args).status.code(), Some(3));
}
