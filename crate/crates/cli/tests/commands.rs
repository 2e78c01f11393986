use std::path::PathBuf;
use std::process::Command as Proc;

use ainfty::diagcat::hom_dim;
use ainfty::seeds::{enumerate_variables_an, DEFAULT_CAP};
use ainfty_cli::{run, Cli, Command};
use clap::Parser;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_ainfty")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn parse(args: &[&str]) -> Command {
    Cli::try_parse_from(std::iter::once("ainfty").chain(args.iter().copied())).unwrap().command
}

#[test]
fn enumerate_a2() {
    let (code, out, _) = bin(&["enumerate", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x1\nx2\n(1+x2)/x1\n(1+x1)/x2\n(1+x1+x2)/(x1x2)\n");
}

#[test]
fn enumerate_matches_library() {
    let lib: Vec<String> = enumerate_variables_an(4, DEFAULT_CAP).unwrap().iter().map(|v| v.to_string()).collect();
    let r = run(&parse(&["enumerate", "4"])).unwrap();
    assert_eq!(r.text, lib.iter().map(|l| format!("{l}\n")).collect::<String>());
}

#[test]
fn classify_examples() {
    assert_eq!(bin(&["classify", &data("tprime.tri")]).1, "III 0\n");
    assert_eq!(bin(&["classify", &data("zigzag.tri")]).1, "I\n");
    assert_eq!(bin(&["classify", &data("fountain.tri")]).1, "II\n");
    assert_eq!(bin(&["classify", &data("gap4.tri")]).1, "III 5\n");
}

#[test]
fn hom_forward() {
    assert_eq!(bin(&["hom", "(0,3)", "(1,4)"]), (0, "1 forward\n".into(), String::new()));
    assert_eq!(bin(&["hom", "(-3,-1)", "(-3,-1)"]).1, "1 forward\n");
    for (x, y) in [("(0,3)", "(-2,0)"), ("(2,5)", "(0,4)"), ("(0,2)", "(5,9)")] {
        let (d, kind) = hom_dim(x.parse().unwrap(), y.parse().unwrap());
        assert_eq!(bin(&["hom", x, y]).1, format!("{d} {kind}\n"));
    }
}

#[test]
fn ext_and_ar() {
    assert_eq!(bin(&["ext", "(0,2)", "(1,3)"]).1, "1\n");
    assert_eq!(bin(&["ext", "(0,2)", "(2,4)"]).1, "0\n");
    assert_eq!(bin(&["ar", "(0,3)"]).1, "(0,3) -> (1,3) + (0,4) -> (1,4) -> (-1,2)\n");
}

#[test]
fn predicates_use_exit_code_one() {
    let (code, out, _) = bin(&["congruent", &data("zigzag.tri"), &data("tprime.tri")]);
    assert_eq!((code, out.as_str()), (1, "false (I vs III 0)\n"));
    assert_eq!(bin(&["congruent", &data("fountain.tri"), &data("split.tri")]).0, 0);
    assert_eq!(bin(&["tilting-check", &data("gap4.tri"), "--window", "-7", "7"]).0, 0);
    assert_eq!(bin(&["tower-check", "4"]).0, 0);
    assert_eq!(bin(&["cm-check", "2", "4", "1,2,1", "2,1", "-", "--random", "20"]).0, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["hom", "(0,3)", "nope"]).0, 2);
    assert_eq!(bin(&["classify", "/nonexistent.tri"]).0, 2);
    assert_eq!(bin(&["enumerate", "11"]).0, 2);
    assert_eq!(bin(&["project", "3", "2", "x1"]).0, 2);
    assert_eq!(bin(&["cm-check", "1", "2"]).0, 2);
    assert_eq!(bin(&["no-such-command"]).0, 2);
    let (code, _, err) = bin(&["flip", &data("tprime.tri"), "(-1,1)"]);
    assert_eq!(code, 2);
    assert!(err.contains("frozen"));
}

#[test]
fn json_envelope() {
    let (code, out, _) = bin(&["--json", "hom", "(0,3)", "(1,4)"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["error"], Value::Null);
    assert_eq!(v["result"]["kind"], "forward");

    let (code, out, _) = bin(&["--json", "classify", "/nonexistent.tri"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], false);
    assert!(v["error"].as_str().unwrap().contains("nonexistent"));
}

#[test]
fn flip_output_is_a_presentation_file() {
    let (code, out, _) = bin(&["flip", &data("zigzag.tri"), "(-1,1)"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("ainfty-flip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let once = dir.join("once.tri");
    std::fs::write(&once, &out).unwrap();
    let back = run(&parse(&["--json", "flip", once.to_str().unwrap(), "(0,2)"])).unwrap();
    assert_eq!(back.result["produced"], serde_json::json!([-1, 1]));
    assert_eq!(bin(&["classify", once.to_str().unwrap()]).1, "I\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn quiver_and_mutate() {
    let (code, out, _) = bin(&["quiver", &data("zigzag.tri"), "-3", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("(-1,1) -> (-1,2)\n"), "{out}");
    let (code, out, _) = bin(&["mutate", &data("a3.quiver"), "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!({"vertices": [1, 2, 3], "arrows": ["1->3", "2->1", "3->2"]}));
    assert_eq!(bin(&["mutate", &data("a3.quiver"), "9"]).0, 2);
}

#[test]
fn project_and_grid() {
    assert_eq!(bin(&["project", "1", "2", "(1+x1+x2)/(x1x2)"]).1, "(2+x1)/x1\n");
    let (_, out, _) = bin(&["grid", "2"]);
    assert!(out.starts_with("y(0,1) = x1\n"));
    assert!(out.contains("y(1,2) = (1+x1+x2)/(x1x2)\n"));
}
