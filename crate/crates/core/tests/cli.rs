use serde_json::Value;
use std::process::{Command, Output};

fn qcanon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcanon")).args(args).env_remove("QCANON_THREADS").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn basis_a2_low_heights() {
    let o = qcanon(&["basis", "--type", "A2", "--word", "1,2,1", "--max-height", "2"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    let els = doc["elements"].as_array().unwrap();
    // Kostant counts: 1, 2 and 1 + 2 + 1
    assert_eq!(els.len(), 7);
    let labels: Vec<Vec<u64>> =
        els.iter().map(|e| e["label"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()).collect();
    assert!(labels.contains(&vec![0, 1, 0]) && labels.contains(&vec![1, 0, 1]));
    for e in els {
        assert_eq!(e["word"], serde_json::json!(["1", "2", "1"]));
        let key = e["label"].as_array().unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(e["coeffs"][&key], serde_json::json!({"0": 1}));
        for (k, c) in e["coeffs"].as_object().unwrap() {
            if *k != key {
                assert!(c.as_object().unwrap().keys().all(|d| d.parse::<i32>().unwrap() > 0), "{e}");
            }
        }
    }
}

#[test]
fn basis_height_zero_is_one() {
    let o = qcanon(&["basis", "--type", "B2", "--word", "1,2,1,2", "--max-height", "0"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&qcanon(&["basis", "--type", "B2", "--word", "1,1"])), 2);
    assert_eq!(code(&qcanon(&["basis", "--type", "E6", "--word", "1"])), 2);
    assert_eq!(code(&qcanon(&["basis", "--type", "A2", "--word", "1,x,1"])), 2);
    assert_eq!(code(&qcanon(&["verify", "--checks", "nothing"])), 2);
    assert_eq!(code(&qcanon(&["verify", "--checks", "folding", "--type", "G2"])), 2);
    assert_eq!(code(&qcanon(&["frobnicate"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_qcanon"))
        .args(["verify", "--checks", "tropical", "--grid", "3"])
        .env("QCANON_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn resource_limit_exits_3() {
    assert_eq!(code(&qcanon(&["basis", "--type", "D4", "--word", "1,2,3,4,2,1,3,2,4,2,1,3", "--max-height", "30"])), 3);
    assert_eq!(code(&qcanon(&["verify", "--checks", "pbw", "--type", "G2", "--max-height", "12"])), 3);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--checks", "tropical", "--grid", "8"][..],
        &["verify", "--checks", "folding", "--type", "A3:B2", "--max-height", "6"],
        &["verify", "--checks", "thm317", "--max-height", "8"],
    ] {
        let o = qcanon(args);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
        assert!(String::from_utf8_lossy(&o.stdout).starts_with("PASS"));
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("qcanon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let args = ["verify", "--checks", "pbw,canonical,quotient", "--max-height", "3", "--output"];
    let mut first: Vec<&str> = args.to_vec();
    let pa = a.to_str().unwrap();
    first.push(pa);
    assert_eq!(code(&qcanon(&first)), 0);
    let pb = b.to_str().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qcanon"))
        .args(args)
        .arg(pb)
        .env("QCANON_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_report_lists_scope_and_counts() {
    let o = qcanon(&["verify", "--checks", "prop39", "--grid", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let r = &v["results"][0]["report"];
    assert_eq!(r["check"], "prop39");
    assert_eq!(r["instances"], 96);
    assert_eq!(r["failure_count"], 0);
    assert_eq!(v["results"][0]["job"]["grid"], 2);
}
