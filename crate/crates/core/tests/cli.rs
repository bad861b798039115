// Copyright 2026 The structsums developers
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_structsums"))
        .args(args)
        .current_dir(dir)
        .env_remove("STRUCTSUMS_SEED")
        .env_remove("STRUCTSUMS_THREADS")
        .env_remove("STRUCTSUMS_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn read(dir: &Path, file: &str) -> String {
    fs::read_to_string(dir.join(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

fn rows(dir: &Path, file: &str) -> Vec<Vec<String>> {
    read(dir, file).lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn write_spec(dir: &Path, name: &str, json: &str) {
    fs::write(dir.join(name), json).unwrap();
}

const WALK: &str = r#"{"protocol": "mc_walk", "N": 12, "concentration": 0.4, "radii_law": {"law": "uniform"}, "step_law": "Z2", "cycles": 5, "seed": 1}"#;

#[test]
fn latsum_table() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["latsum", "--n-max", "8", "--out", "a"]);
    let t = rows(d, "a/latsum.csv");
    assert_eq!(t[0], ["n", "re", "im"]);
    assert_eq!(t.len(), 8);
    for r in &t[1..] {
        if r[0].parse::<u32>().unwrap() % 2 == 1 {
            assert_eq!((r[1].as_str(), r[2].as_str()), ("0", "0"));
        }
    }
    ok(d, &["latsum", "--n-max", "8", "--out", "b"]);
    assert_eq!(read(d, "a/latsum.csv"), read(d, "b/latsum.csv"));
    ok(d, &["latsum", "--n-max", "2", "--lattice", "hexagonal", "--out", "c"]);
    assert_eq!(rows(d, "c/latsum.csv").len(), 2);
    assert!(d.join("a/manifest.json").is_file());
}

#[test]
fn generate_files_and_seeds() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write_spec(d, "walk.json", WALK);
    ok(d, &["generate", "--spec", "walk.json", "--count", "100", "--out", "g1"]);
    let samples = fs::read_dir(d.join("g1")).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("sample_")).count();
    assert_eq!(samples, 100);
    ok(d, &["generate", "--spec", "walk.json", "--count", "3", "--out", "g2"]);
    assert_eq!(read(d, "g1/sample_0002.json"), read(d, "g2/sample_0002.json"));
    ok(d, &["--seed", "9", "generate", "--spec", "walk.json", "--count", "3", "--out", "g3"]);
    assert_ne!(read(d, "g1/sample_0002.json"), read(d, "g3/sample_0002.json"));
    ok(d, &["generate", "--spec", "walk.json", "--count", "2", "--format", "csv", "--out", "g4"]);
    assert!(read(d, "g4/sample_0000.csv").starts_with("x,y,r"));
}

#[test]
fn generate_rejects_infeasible_concentration() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write_spec(d, "rsa.json", r#"{"protocol": "rsa", "N": 30, "concentration": 0.9, "max_attempts": 20000}"#);
    let out = run(d, &["generate", "--spec", "rsa.json", "--out", "g"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("saturation"));
    let out = run(d, &["generate", "--spec", "missing.json", "--out", "g"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn feature_columns() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write_spec(d, "walk.json", WALK);
    ok(d, &["generate", "--spec", "walk.json", "--count", "3", "--out", "g"]);
    ok(d, &["features", "--configs", "g/sample_*.json", "--q", "4", "--out", "f4"]);
    let t = rows(d, "f4/features.csv");
    assert_eq!(t[0].len(), 1 + 7);
    assert_eq!(t[0][1..], ["e_2_abs", "e_2_2_abs", "e_2_2_2_abs", "e_3_3_abs", "e_2_2_2_2_abs", "e_2_3_3_abs", "e_4_4_abs"]);
    assert_eq!(t.len(), 4);
    ok(d, &["features", "--configs", "g/sample_*.json", "--q", "1", "--class", "x", "--out", "f1"]);
    assert_eq!(rows(d, "f1/features.csv")[0], ["sample", "class", "e_2_abs"]);
    let meta: serde_json::Value = serde_json::from_str(&read(d, "f1/features.meta.json")).unwrap();
    assert_eq!(meta["q"], 1);
    assert_eq!(meta["generator"]["protocol"], "mc_walk");
    let out = run(d, &["features", "--configs", "g/nothing_*.json", "--out", "f"]);
    assert_eq!(out.status.code(), Some(2));
}

fn write_table(path: &Path, classes: usize, per: usize, separated: bool, seed: u64) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = Normal::new(0.0, 1.0).unwrap();
    let mut s = String::from("sample,class,e_2_abs,e_2_2_abs\n");
    for c in 0..classes {
        for i in 0..per {
            let shift = if separated { 100.0 * c as f64 } else { 0.0 };
            s += &format!("s{c}_{i},c{c},{},{}\n", shift + n.sample(&mut r), shift + n.sample(&mut r));
        }
    }
    fs::write(path, s).unwrap();
}

fn accuracy_at(d: &Path, file: &str, q: &str) -> f64 {
    let t = rows(d, file);
    let r = t.iter().find(|r| r[0] == "abs" && r[1] == q).unwrap();
    r[3].parse().unwrap()
}

#[test]
fn classify_extremes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write_table(&d.join("sep.csv"), 3, 20, true, 1);
    ok(d, &["classify", "--features", "sep.csv", "--k", "5", "--projections", "abs", "--out", "s"]);
    assert_eq!(accuracy_at(d, "s/accuracy.csv", "2"), 1.0);
    let conf = rows(d, "s/confusion.csv");
    assert_eq!(conf[0], ["projection", "q", "true_class", "predicted_class", "count"]);
    for r in &conf[1..] {
        if r[2] != r[3] {
            assert_eq!(r[4], "0");
        }
    }

    write_table(&d.join("noise.csv"), 9, 30, false, 2);
    ok(d, &["--seed", "4", "classify", "--features", "noise.csv", "--k", "10", "--projections", "abs", "--out", "n"]);
    let acc = accuracy_at(d, "n/accuracy.csv", "2");
    assert!((acc - 1.0 / 9.0).abs() < 0.05, "{acc}");
    let base: f64 = rows(d, "n/baseline.csv")[1][2].parse().unwrap();
    assert!((base - 1.0 / 9.0).abs() < 0.05, "{base}");

    let out = run(d, &["classify", "--features", "sep.csv", "--k", "20", "--projections", "abs", "--out", "x"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_orders_follow_the_table() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let mut s = String::from("sample,class,e_2_2_abs,e_3_3_abs\n");
    for i in 0..12 {
        s += &format!("s{i},c{},{},{}\n", i % 2, i, 2 * i);
    }
    fs::write(d.join("diag.csv"), s).unwrap();
    ok(d, &["classify", "--features", "diag.csv", "--k", "3", "--projections", "abs", "--out", "o"]);
    let qs: Vec<String> = rows(d, "o/accuracy.csv")[1..].iter().map(|r| r[1].clone()).collect();
    assert_eq!(qs, ["2", "3"]);
    let out = run(d, &["classify", "--features", "diag.csv", "--q-min", "4", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conduct_series() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write_spec(d, "walk.json", WALK);
    ok(d, &["generate", "--spec", "walk.json", "--out", "g"]);
    let one = ok(d, &["conduct", "--config", "g/sample_0000.json", "--lambda-f", "1", "--out", "c1"]);
    assert_eq!(one.trim(), "1");
    ok(d, &["conduct", "--config", "g/sample_0000.json", "--lambda-f", "3", "--q-max", "1", "--out", "c2"]);
    let t = rows(d, "c2/conductivity.csv");
    assert_eq!(t[0], ["q", "b_q", "lambda_partial"]);
    assert_eq!(t.len(), 3);
    let result: serde_json::Value = serde_json::from_str(&read(d, "c2/result.json")).unwrap();
    let (rho, nu) = (result["rho"].as_f64().unwrap(), result["concentration"].as_f64().unwrap());
    let b1: f64 = t[2][1].parse().unwrap();
    let lambda: f64 = t[2][2].parse().unwrap();
    assert!((lambda - (1.0 + 2.0 * rho * nu * (1.0 + b1 * nu))).abs() < 1e-14);
    let out = run(d, &["conduct", "--config", "g/sample_0000.json", "--lambda-f", "-2", "--out", "c3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn irregularity_of_arrays() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write_spec(d, "sq.json", r#"{"protocol": "square", "N": 16, "concentration": 0.5}"#);
    write_spec(d, "hex.json", r#"{"protocol": "hexagonal", "N": 16, "concentration": 0.5}"#);
    ok(d, &["generate", "--spec", "sq.json", "--out", "square"]);
    ok(d, &["generate", "--spec", "hex.json", "--out", "hexagonal"]);
    ok(d, &["irregularity", "--configs", "square/sample_*.json", "hexagonal/sample_*.json", "--lambda-f", "10", "--out", "mu"]);
    let means = rows(d, "mu/class_means.csv");
    assert_eq!(means[0], ["class", "count", "mean_mu", "mean_lambda"]);
    let mu = |class: &str| -> f64 { means.iter().find(|r| r[0] == class).unwrap()[2].parse().unwrap() };
    assert!(mu("hexagonal").abs() < 1e-3);
    assert!((mu("square") - 2.950).abs() < 0.05 * 2.950);
    let out = run(d, &["irregularity", "--configs", "nowhere/*.json", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pair_scan_and_curve_fit() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    for (name, law) in [("a", "Z1"), ("b", "Z3")] {
        write_spec(d, &format!("{name}.json"), &WALK.replace("Z2", law).replace("\"N\": 12", "\"N\": 6"));
        ok(d, &["generate", "--spec", &format!("{name}.json"), "--count", "8", "--out", &format!("g{name}")]);
        ok(d, &["features", "--configs", &format!("g{name}/sample_*.json"), "--q", "10", "--class", name, "--out", &format!("f{name}")]);
    }
    ok(d, &["scan-pairs", "--features", "fa/features.csv", "fb/features.csv", "--out", "p"]);
    let t = rows(d, "p/pairs.csv");
    assert_eq!(t.len(), 37);
    assert_eq!(t[0], ["rank", "first", "second", "mean_accuracy"]);

    fs::write(d.join("acc.csv"), "q,acc\n1,0.30\n2,0.45\n3,0.55\n5,0.66\n8,0.75\n10,0.79\n").unwrap();
    ok(d, &["fit-curve", "--input", "acc.csv", "--x", "q", "--y", "acc", "--out", "fit"]);
    let f = rows(d, "fit/fit.csv");
    assert_eq!(f[0], ["group", "n", "a", "b", "residual"]);
    assert!(f[1][2].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn usage_errors_exit_with_two() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    assert_eq!(run(d, &["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(d, &["latsum"]).status.code(), Some(2));
    assert_eq!(run(d, &["--tolerance", "2", "latsum", "--out", "x"]).status.code(), Some(2));
    assert_eq!(run(d, &["--help"]).status.code(), Some(0));
}

#[test]
fn environment_supplies_missing_flags() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write_spec(d, "walk.json", WALK);
    let env_run = |seed: &str, args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_structsums")).args(args).current_dir(d).env("STRUCTSUMS_SEED", seed).output().unwrap();
        assert!(out.status.success());
    };
    env_run("9", &["generate", "--spec", "walk.json", "--out", "e"]);
    ok(d, &["--seed", "9", "generate", "--spec", "walk.json", "--out", "f"]);
    assert_eq!(read(d, "e/sample_0000.json"), read(d, "f/sample_0000.json"));
    env_run("1234", &["--seed", "9", "generate", "--spec", "walk.json", "--out", "g"]);
    assert_eq!(read(d, "f/sample_0000.json"), read(d, "g/sample_0000.json"));
    let m: serde_json::Value = serde_json::from_str(&read(d, "e/manifest.json")).unwrap();
    assert_eq!(m["seed"], 9);
}

/// Runs a generate, features, classify, irregularity pipeline and replays
/// every step from its manifest into fresh directories.
#[test]
fn replay_reproduces_every_csv() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    for (name, law) in [("u", "Z1"), ("n", "Z2")] {
        write_spec(d, &format!("{name}.json"), &WALK.replace("Z2", law));
        ok(d, &["--seed", "3", "generate", "--spec", &format!("{name}.json"), "--count", "8", "--out", &format!("g{name}")]);
        ok(d, &["features", "--configs", &format!("g{name}/sample_*.json"), "--q", "5", "--projection", "re_im", "--class", name, "--out", &format!("f{name}")]);
    }
    ok(d, &["--seed", "5", "classify", "--features", "fu/features.csv", "fn/features.csv", "--k", "3", "--repeats", "4", "--out", "cls"]);
    ok(d, &["irregularity", "--configs", "u=gu/sample_*.json", "n=gn/sample_*.json", "--out", "mu"]);
    ok(d, &["latsum", "--out", "ls"]);
    ok(d, &["conduct", "--config", "gu/sample_0001.json", "--lambda-f", "7", "--out", "con"]);

    for dir in ["gu", "gn", "fu", "fn", "cls", "mu", "ls", "con"] {
        let again = format!("{dir}_replay");
        ok(d, &["replay", &format!("{dir}/manifest.json"), "--out", &again]);
        let mut compared = 0;
        for entry in fs::read_dir(d.join(dir)).unwrap() {
            let name = entry.unwrap().file_name().to_string_lossy().into_owned();
            if name == "manifest.json" {
                continue;
            }
            let a = fs::read(d.join(dir).join(&name)).unwrap();
            let b = fs::read(d.join(&again).join(&name)).unwrap();
            assert!(a == b, "{dir}/{name} differs after replay");
            compared += 1;
        }
        assert!(compared > 0);
    }
}
