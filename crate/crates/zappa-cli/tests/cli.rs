use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use zappa::chain_maps::RawChainMap;
use zappa::cocycle::{Phase, RawCochain2};
use zappa::complexes::{ChainComplex, RawComplex};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn zappa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zappa")).args(args).env_remove("ZAPPA_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = zappa(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn groups(v: &Value) -> Vec<String> {
    v["homology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| {
            let t: Vec<String> = g["torsion"].as_array().unwrap().iter().map(|x| format!("Z/{x}")).collect();
            let mut parts = match g["free_rank"].as_u64().unwrap() {
                0 => vec![],
                1 => vec!["Z".to_string()],
                r => vec![format!("Z^{r}")],
            };
            parts.extend(t);
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        })
        .collect()
}

#[test]
fn validate_reports() {
    let o = zappa(&["validate", &corpus("s3_pair.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok: matched pair"));

    let o = zappa(&["validate", &corpus("mp2_broken.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MP2 fails at (t, r, r)"));

    let o = zappa(&["validate", &corpus("malformed.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2 column"));

    assert_eq!(zappa(&["validate", "/nonexistent.json"]).status.code(), Some(3));
    assert_eq!(zappa(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn homology_examples() {
    let g = |file: &str, k: &str| groups(&json(&["homology", &corpus(file), "-K", k]));
    assert_eq!(g("gamma_2.json", "2"), ["Z", "0", "0"]);
    assert_eq!(g("z2_monoid.json", "3"), ["Z", "Z/2", "0", "Z/2"]);
    assert_eq!(g("discrete3.json", "1"), ["Z^3", "0"]);
    assert_eq!(g("g2_category.json", "2"), ["Z", "0", "0"]);
    let tot = groups(&json(&["homology", &corpus("klein_pair.json"), "-K", "2", "--theory", "total"]));
    assert_eq!(tot, ["Z", "Z/2 + Z/2", "Z/2"]);
    // a theory that needs a pair
    assert_eq!(zappa(&["homology", &corpus("z2_monoid.json"), "--theory", "total"]).status.code(), Some(3));
}

#[test]
fn compare_examples() {
    for (file, expect) in [
        ("s3_pair.json", ["Z", "Z/2", "0"]),
        ("model_pair_2.json", ["Z", "0", "0"]),
        ("g2_trivial_pair.json", ["Z", "0", "0"]),
    ] {
        let v = json(&["compare", &corpus(file), "-K", "2"]);
        assert_eq!(v["agree"], true, "{file}");
        for (k, row) in v["degrees"].as_array().unwrap().iter().enumerate() {
            for theory in ["product", "diagonal", "total"] {
                let g: zappa::abelian::AbelianGroup = serde_json::from_value(row[theory].clone()).unwrap();
                assert_eq!(g.to_string(), expect[k], "{file} {theory} {k}");
            }
            assert_eq!(row["round_trip_identity"], true);
        }
        let text = stdout(&zappa(&["compare", &corpus(file), "-K", "2"]));
        assert_eq!(text.lines().filter(|l| l.contains("iso  iso  iso  id")).count(), 3);
    }
}

#[test]
fn dumps_round_trip() {
    let o = zappa(&["homology", &corpus("s3_pair.json"), "-K", "2", "--theory", "total", "--dump-complex"]);
    let raw: RawComplex = serde_json::from_str(&stdout(&o)).unwrap();
    let cx = ChainComplex::from_raw(&raw).unwrap();
    assert_eq!(cx.homology(1).unwrap().group.to_string(), "Z/2");

    let o = zappa(&["compare", &corpus("swap_pair.json"), "-K", "1", "--dump-map", "psi"]);
    let map: RawChainMap = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(map.degrees.len(), 3);
    for d in &map.degrees {
        assert_eq!((d.matrix.rows(), d.matrix.cols()), (d.target.len(), d.source.len()));
    }
}

#[test]
fn spectral_trivial_pair_has_one_row() {
    let v = json(&["spectral", &corpus("g2_trivial_pair.json"), "-K", "2"]);
    for cell in v["cells"].as_array().unwrap() {
        if cell["q"].as_u64().unwrap() > 0 {
            assert_eq!(cell["group"], "0");
        }
    }
    let text = stdout(&zappa(&["spectral", &corpus("s3_pair.json"), "--orientation", "hv", "--page", "1"]));
    assert!(text.starts_with("E^{hv,1}"));
}

#[test]
fn odometer_binary() {
    let v = json(&["odometer", &corpus("odometer_binary.json"), "--check", "--cutoff", "4"]);
    assert_eq!(v["report"]["h1"]["resolved"]["free_rank"], 1);
    assert_eq!(v["report"]["h2"]["free_rank"], 0);
    assert_eq!(v["oracles"]["decomposition"]["failures"].as_array().unwrap().len(), 0);
    let text = stdout(&zappa(&["odometer", &corpus("odometer_loop_p1.json")]));
    assert!(text.contains("H1 = Z^2") && text.contains("H2 = Z"), "{text}");
    assert_eq!(zappa(&["odometer", &corpus("s3_pair.json")]).status.code(), Some(3));
}

#[test]
fn cocycle_commands() {
    let z2 = corpus("z2_monoid.json");
    let (zero, half) = (corpus("cochain_zero.json"), corpus("cochain_z2_half.json"));
    assert!(zappa(&["cocycle", "check", &z2, &half]).status.success());
    let v = json(&["cocycle", "cohomologous", &z2, &zero, &half]);
    assert_eq!(v["cohomologous"], true);
    let v = json(&["cocycle", "cohomologous", &z2, &zero, &half, "--modulus", "2"]);
    assert_eq!(v["cohomologous"], false);

    let s3 = corpus("s3_pair.json");
    assert!(zappa(&["cocycle", "validate", &s3, &corpus("s3_total_cocycle.json")]).status.success());
    let o = zappa(&["cocycle", "validate", &s3, &corpus("s3_total_perturbed.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(A) at"));
    // the same cocycle read in the literal convention needs φ₁₁ negated
    let lit = corpus("s3_total_literal.json");
    assert!(zappa(&["cocycle", "validate", &s3, &lit, "--convention", "literal"]).status.success());

    let v = json(&["cocycle", "transfer", &s3, &corpus("s3_total_cocycle.json")]);
    assert_eq!(v["valid"], true);
    let raw: RawCochain2 = serde_json::from_value(serde_json::json!({ "c": v["psi2"] })).unwrap();
    assert!(raw.c.iter().all(|(_, _, p)| *p != Phase::zero()));
    let v2 = json(&["cocycle", "transfer", &s3, &lit, "--convention", "literal"]);
    assert_eq!(v["psi2"], v2["psi2"]);
}

#[test]
fn caps_and_env() {
    let s3 = corpus("s3_pair.json");
    assert_eq!(zappa(&["homology", &s3, "--cap", "10"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_zappa")).args(["homology", &s3]).env("ZAPPA_CAP", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(zappa(&["homology", &s3, "--cap", "0"]).status.code(), Some(3));
}

#[test]
fn deterministic_output() {
    let a = zappa(&["selftest", "--seed", "42", "--cases", "5"]);
    let b = zappa(&["selftest", "--seed", "42", "--cases", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("all passed\n"));
    let c = zappa(&["compare", &corpus("swap_pair.json"), "-K", "2", "--format", "json"]);
    let d = zappa(&["compare", &corpus("swap_pair.json"), "-K", "2", "--format", "json"]);
    assert_eq!(c.stdout, d.stdout);
}
