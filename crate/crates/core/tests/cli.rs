use std::process::{Command, Output};

use serde_json::Value;

fn metriq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metriq")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_examples() {
    let out = metriq(&["eval", "--domain", "ball:n=2", "--metric", "pp", "--x", "0.3333333333333333,0", "--y", "-0.3333333333333333,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v[0]["value"].as_f64().unwrap() - 0.4472136).abs() < 1e-7);
    assert_eq!(v[0]["method"], "closed");

    let out = metriq(&["eval", "--domain", "halfspace:n=2", "--metric", "s", "--x", "0,1", "--y", "0,2"]);
    assert!((json(&out)[0]["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);

    let out = metriq(&["eval", "--metric", "s", "--strategy", "oracle", "--x", "0.3,0.4", "--y", "0.3,-0.4"]);
    let v = json(&out);
    assert_eq!(v[0]["method"], "oracle");
    assert!((v[0]["value"].as_f64().unwrap() - 0.496139).abs() < 1e-6);

    let out = metriq(&["eval", "--metric", "j*,w", "--x", "0.1,0", "--y", "0,0.2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert_eq!(text.lines().next(), Some("domain,metric,x,y,value,method"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--metric", "s", "--x", "a,b", "--y", "0,0"][..],
        &["eval", "--metric", "s", "--x", "0,0"],
        &["eval", "--domain", "halfspace:n=2", "--metric", "low", "--x", "0,1", "--y", "0,2"],
        &["eval", "--domain", "disk", "--x", "0,0", "--y", "0.1,0"],
        &["verify", "--chain", "nonsense"],
        &["search", "--target", "nonsense"],
        &["figure", "--x", "1.5", "--resolution", "16"],
        &["frobnicate"],
    ] {
        let out = metriq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_exit_codes() {
    let out = metriq(&["verify", "--domain", "sector:theta=1.5707963", "--chain", "p-metric", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["details"]["max_ratio"].as_f64().unwrap() > 1.0);
    assert!(v["witness"]["z"].is_array());

    let out = metriq(&["verify", "--domain", "sector:theta=3.1415926535", "--chain", "p-metric", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(0));

    let out = metriq(&["verify", "--domain", "ball:n=2", "--chain", "C48", "--n", "300", "--seed", "7", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("task,domain,metric,seed,n_samples,estimate,x,y,z,margin,pass,runtime_ms\n"));
    assert!(text.lines().nth(1).unwrap().contains(",true,"));
}

#[test]
fn search_targets() {
    let out = metriq(&["search", "--target", "sw-special"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["estimate"].as_f64().unwrap() - 1.07313).abs() < 1e-4);
    assert!((v["details"]["argmax_h"].as_f64().unwrap() - 0.48236).abs() < 1e-4);

    let out = metriq(&["search", "--target", "p-quasi", "--n", "3000", "--seed", "5"]);
    assert!(json(&out)["estimate"].as_f64().unwrap() >= 1.118033);
}

#[test]
fn figure_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let p = path.to_str().unwrap();
    let out = metriq(&["figure", "--x", "0.6", "--resolution", "16", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 16 * 16 + 1);
    assert_eq!(text.lines().next(), Some("re_y,im_y,quotient"));
    assert!(!text.contains('\r'));

    let bad = dir.path().join("missing").join("fig.csv");
    let out = metriq(&["figure", "--resolution", "16", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reruns_are_byte_identical() {
    let runs = [
        &["search", "--target", "w-quasi", "--domain", "polygon:(-1,0);(1,0);(1,1);(-1,1)", "--n", "800", "--seed", "3"][..],
        &["verify", "--domain", "ball:n=2", "--chain", "T46", "--n", "300", "--seed", "11"],
        &["figure", "--resolution", "16"],
    ];
    for args in runs {
        let a = metriq(args);
        let b = metriq(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let one = Command::new(env!("CARGO_BIN_EXE_metriq")).args(args).env("METRIQ_THREADS", "1").output().unwrap();
        assert_eq!(a.stdout, one.stdout, "{args:?}");
    }
}
