//! End-to-end checks of the mwkit binary: exit codes, output determinism, and
//! certificate round-trips through files.

mod common;

use mwkit::coloring::Colouring;
use mwkit::extraction::EhCertificate;
use mwkit::flips::HideoutCertificate;
use mwkit::graph::{generate, parse_graph, Family};
use mwkit::mergeseq::{parse_mseq, MergeSequence};
use std::path::PathBuf;
use std::process::{Command, Output};

fn mwkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn workdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mwkit-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &std::path::Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_width_validate_pipeline() {
    let dir = workdir();
    // gen writes a parseable graph.
    let out = mwkit(&["gen", "--family", "cycle", "--params", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let c5_text = stdout(&out);
    let c5 = parse_graph(&c5_text).unwrap();
    assert_eq!(c5, generate(&Family::Cycle(5)).unwrap());

    let gpath = write(&dir, "c5.col", &c5_text);
    let out = mwkit(&["trivial-seq", "--graph", &gpath]);
    assert_eq!(out.status.code(), Some(0));
    let seq_text = stdout(&out);
    let seq = parse_mseq(&seq_text).unwrap();
    assert_eq!(seq.validate(&c5), Ok(()));

    let spath = write(&dir, "c5.mseq", &seq_text);
    let out = mwkit(&["validate", "--graph", &gpath, "--seq", &spath]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid\n");

    let out = mwkit(&["width", "--graph", &gpath, "--seq", &spath, "--radius", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "width 3\n");

    // Identical invocations are byte-identical.
    let again = mwkit(&["width", "--graph", &gpath, "--seq", &spath, "--radius", "1"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn exit_codes_cover_the_three_outcomes() {
    let dir = workdir();
    let p3 = generate(&Family::Path(3)).unwrap();
    let gpath = write(&dir, "p3.col", &p3.to_text());
    // Homogeneity violation: computed counterexample, exit 2.
    let bad = "p mseq 3 2\ns 1\nb 1\nb 2\nb 3\ns 2\nb 1 2 3\n";
    let bpath = write(&dir, "bad.mseq", bad);
    let out = mwkit(&["validate", "--graph", &gpath, "--seq", &bpath]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("invalid:"));
    // Malformed input: exit 1.
    let mpath = write(&dir, "broken.mseq", "p mseq 3\n");
    let out = mwkit(&["validate", "--graph", &gpath, "--seq", &mpath]);
    assert_eq!(out.status.code(), Some(1));
    // Success: exit 0.
    let good = MergeSequence::trivial(&p3).minimize(&p3).unwrap();
    let spath = write(&dir, "good.mseq", &good.to_text());
    let out = mwkit(&["validate", "--graph", &gpath, "--seq", &spath]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn solve_minimize_and_sync() {
    let dir = workdir();
    let p3 = generate(&Family::Path(3)).unwrap();
    let gpath = write(&dir, "p3.col", &p3.to_text());
    let out = mwkit(&["solve", "--graph", &gpath, "--radius", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("mw 1\n"));
    let witness: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    let witness = parse_mseq(&witness).unwrap();
    assert_eq!(witness.validate(&p3), Ok(()));

    // minimize emits a sequence that then passes sync-check with exit 0.
    let loose = "p mseq 3 3\ns 1\nb 1\nb 2\nb 3\ns 2\nb 1 3\nb 2\nr 1 2\ns 3\nb 1 2 3\nr 1 3\n";
    let lpath = write(&dir, "loose.mseq", loose);
    let opath = dir.join("minimized.mseq");
    let out = mwkit(&[
        "minimize",
        "--graph",
        &gpath,
        "--seq",
        &lpath,
        "--out",
        opath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let minimized = parse_mseq(&std::fs::read_to_string(&opath).unwrap()).unwrap();
    assert_eq!(minimized.validate(&p3), Ok(()));
    let out = mwkit(&[
        "sync-check",
        "--graph",
        &gpath,
        "--seq",
        opath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "sync ok\n");
}

#[test]
fn certificates_roundtrip_through_the_cli() {
    let dir = workdir();
    let k12 = generate(&Family::Complete(12)).unwrap();
    let gpath = write(&dir, "k12.col", &k12.to_text());
    let spath = write(&dir, "k12.mseq", &MergeSequence::trivial(&k12).to_text());

    let out = mwkit(&["eh", "--graph", &gpath, "--seq", &spath]);
    assert_eq!(out.status.code(), Some(0));
    let cert = EhCertificate::parse(&stdout(&out)).unwrap();
    assert_eq!(cert.verify(&k12), Ok(()));

    let c5 = generate(&Family::Cycle(5)).unwrap();
    let c5path = write(&dir, "c5.col", &c5.to_text());
    let c5seq = MergeSequence::trivial(&c5).minimize(&c5).unwrap();
    let c5spath = write(&dir, "c5min.mseq", &c5seq.to_text());
    let out = mwkit(&["color", "--graph", &c5path, "--seq", &c5spath]);
    assert_eq!(out.status.code(), Some(0));
    let col = Colouring::parse(&stdout(&out)).unwrap();
    assert_eq!(col.verify(&c5), Ok(()));

    // color-sb needs a structurally bounded input.
    let full = common::fully_resolving(&c5);
    let fpath = write(&dir, "c5full.mseq", &full.to_text());
    let out = mwkit(&["color-sb", "--graph", &c5path, "--seq", &fpath]);
    assert_eq!(out.status.code(), Some(0));
    let col = Colouring::parse(&stdout(&out)).unwrap();
    assert_eq!(col.verify(&c5), Ok(()));

    let out = mwkit(&["nc", "--graph", &c5path, "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("pi 2 3\n"));
    let out = mwkit(&["nc", "--graph", &c5path, "--p", "2", "--trials", "40", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("pi-lb 2 "));
}

#[test]
fn flips_and_hideouts_via_cli() {
    let dir = workdir();
    let k5 = generate(&Family::Complete(5)).unwrap();
    let gpath = write(&dir, "k5.col", &k5.to_text());
    let fpath = write(&dir, "comp.flip", "b 1 2 3 4 5\nf 1 1\n");
    let out = mwkit(&["flip", "--graph", &gpath, "--flip", &fpath]);
    assert_eq!(out.status.code(), Some(0));
    let flipped = parse_graph(&stdout(&out)).unwrap();
    assert_eq!(flipped.edge_count(), 0);

    // Hideout pipeline on the all-traces instance at q = 6.
    let (g, x, y) = common::all_traces_graph(6);
    let tpath = write(&dir, "traces.col", &g.to_text());
    let xcsv: Vec<String> = x.iter().map(|v| (v + 1).to_string()).collect();
    let ycsv: Vec<String> = y.iter().map(|v| (v + 1).to_string()).collect();
    let out = mwkit(&[
        "hideout",
        "--graph",
        &tpath,
        "--k",
        "1",
        "--x-set",
        &xcsv.join(","),
        "--y-set",
        &ycsv.join(","),
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let cert = HideoutCertificate::parse(&stdout(&out)).unwrap();
    assert_eq!((cert.r, cert.k, cert.d), (2, 1, 1));
    assert!(stdout(&out).contains("verified=1"));

    // nc-witness emits the minimised trace witness.
    let out = mwkit(&[
        "nc-witness",
        "--graph",
        &tpath,
        "--alpha",
        "8",
        "--x-set",
        &xcsv.join(","),
        "--y-set",
        &ycsv.join(","),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("NC-WITNESS alpha=8\n"));
}

#[test]
fn restrict_reports_the_map() {
    let dir = workdir();
    let k5 = generate(&Family::Complete(5)).unwrap();
    let gpath = write(&dir, "k5r.col", &k5.to_text());
    let spath = write(&dir, "k5r.mseq", &MergeSequence::trivial(&k5).to_text());
    let out = mwkit(&[
        "restrict",
        "--graph",
        &gpath,
        "--seq",
        &spath,
        "--params",
        "2,3,5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("c map 1 2"));
    assert!(text.contains("c map 3 5"));
    let restricted = parse_mseq(&text).unwrap();
    let k3 = generate(&Family::Complete(3)).unwrap();
    assert_eq!(restricted.validate(&k3), Ok(()));
}
