mod common;

use std::process::Command;

use common::{bound, naive_power_free, word};
use powerfree::transition::TransitionCertificate;

fn powerfree(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_powerfree"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .or_else(|| out.lines().find(|l| *l == format!("{key}:")).map(|_| ""))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
}

#[test]
fn exit_code_contract() {
    let (code, out, _) = powerfree(&["check", "--alpha", "2", "--word", "012021012102"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "power-free"), "true");
    assert_eq!(powerfree(&["check", "--alpha", "2", "--word", "00"]).0, 1);
    let (code, out, _) = powerfree(&["maxexp", "--word", "1234123"]);
    assert_eq!(code, 0);
    assert!(out.contains("7/4 period=4"));
    let (code, _, err) = powerfree(&["check", "--alpha", "2/", "--word", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed"));
    assert_eq!(powerfree(&["check"]).0, 2);
    let (code, _, err) = powerfree(&[
        "transition",
        "--k",
        "3",
        "--alpha",
        "2",
        "--u",
        "0",
        "--v",
        "0",
    ]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, out, _) = powerfree(&[
        "extendable",
        "--side",
        "right",
        "--k",
        "3",
        "--alpha",
        "2",
        "--word",
        "0102010",
        "--depth",
        "1",
    ]);
    assert_eq!((code, value(&out, "status")), (1, "not-extendable"));
    let (code, out, _) = powerfree(&[
        "extendable",
        "--side",
        "left",
        "--k",
        "3",
        "--alpha",
        "2",
        "--word",
        "010",
        "--depth",
        "20",
    ]);
    assert_eq!((code, value(&out, "status")), (0, "extendable-to-depth"));
    let witness = word(value(&out, "witness"), 3);
    assert!(witness.ends_with(&[0, 1, 0]));
    assert!(naive_power_free(&witness, bound("2")));
}

#[test]
fn transition_certificate_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.txt");
    let (code, out, _) = powerfree(&[
        "transition",
        "--k",
        "4",
        "--alpha",
        "2",
        "--u",
        "01",
        "--v",
        "10",
        "--emit-certificate",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, out);
    assert_eq!(text.lines().last(), Some("verified: true"));
    let cert = TransitionCertificate::parse(&text).unwrap();
    assert_eq!(cert.reverify(), cert.verification);
    let full = word(value(&out, "full-word"), 4);
    assert_eq!(full, cert.full_word);
    assert!(full.starts_with(&[0, 1]) && full.ends_with(&[1, 0]));

    let (_, quiet, _) = powerfree(&[
        "-q",
        "transition",
        "--k",
        "4",
        "--alpha",
        "2",
        "--u",
        "01",
        "--v",
        "10",
    ]);
    assert_eq!(quiet.trim_end(), cert.w.encode());
}

#[test]
fn printed_words_reparse() {
    let (_, out, _) = powerfree(&["generate", "--word", "thue-morse", "--length", "64"]);
    let w = word(value(&out, "prefix"), 2);
    assert_eq!(w.letters(), &common::thue_morse_prefix(64)[..]);
    let (_, out, _) = powerfree(&[
        "generate",
        "--word",
        "theta",
        "--length",
        "10",
        "--relabel",
        "0:0,1:1,2:3",
    ]);
    assert_eq!(value(&out, "prefix"), "0130310131");

    let (code, out, _) = powerfree(&["enumerate", "--k", "3", "--alpha", "2", "--length", "4"]);
    assert_eq!(code, 0);
    let words: Vec<_> = out.lines().filter(|l| !l.contains(':')).collect();
    let expected: Vec<String> = common::unpruned_power_free(3, bound("2"), 4)
        .into_iter()
        .map(|w| w.iter().map(|c| char::from(b'0' + c)).collect())
        .collect();
    assert_eq!(words, expected);
    assert_eq!(value(&out, "count"), "18");
    let (_, out, _) = powerfree(&[
        "enumerate",
        "--k",
        "3",
        "--alpha",
        "2",
        "--length",
        "7",
        "--count-only",
        "--jobs",
        "2",
    ]);
    assert_eq!(value(&out, "count"), "60");

    let (code, out, _) = powerfree(&[
        "oracle",
        "--k",
        "3",
        "--alpha",
        "2",
        "--u",
        "01",
        "--v",
        "01",
        "--max-len",
        "4",
    ]);
    assert_eq!((code, value(&out, "transition")), (0, "2"));
    let (code, out, _) = powerfree(&[
        "oracle",
        "--k",
        "3",
        "--alpha",
        "2",
        "--u",
        "0102010",
        "--v",
        "0",
        "--max-len",
        "6",
    ]);
    assert_eq!((code, value(&out, "transition")), (1, "none"));
}

#[test]
fn gamma_check_reports_properties() {
    let (code, out, _) = powerfree(&[
        "gamma-check",
        "--k",
        "3",
        "--alpha",
        "2+",
        "--x",
        "2",
        "--t",
        "thue-morse",
    ]);
    assert_eq!(code, 0);
    for i in 1..=8 {
        assert_eq!(value(&out, &format!("property-{i}")), "true");
    }
    let (code, out, _) = powerfree(&[
        "gamma-check",
        "--k",
        "3",
        "--alpha",
        "2+",
        "--w1",
        "2",
        "--x",
        "2",
        "--t",
        "thue-morse",
    ]);
    assert_eq!((code, value(&out, "property-8")), (1, "false"));
    // Thue-Morse contains squares
    let (code, out, _) = powerfree(&[
        "gamma-check",
        "--k",
        "3",
        "--alpha",
        "2",
        "--x",
        "2",
        "--t",
        "thue-morse",
    ]);
    assert_eq!((code, value(&out, "property-4")), (1, "false"));
    assert_eq!(
        powerfree(&[
            "gamma-check",
            "--k",
            "3",
            "--alpha",
            "2+",
            "--x",
            "7",
            "--t",
            "theta"
        ])
        .0,
        2
    );
}
