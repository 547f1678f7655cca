use std::path::PathBuf;
use std::process::Command;

use grlab::catalog::Named;
use grlab::construct::{witness_f12_f13, witness_f2n};
use grlab::gcg::{decode_gcg, encode_gcg};
use grlab::graph::{color, ColoredCompleteGraph};
use grlab::search::{search, Forbid, SearchConfig};
use grlab_cli::{run_captured, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VIOLATED};

fn grlab(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("grlab").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_graph(name: &str, g: &ColoredCompleteGraph) -> String {
    let p = scratch(name);
    std::fs::write(&p, encode_gcg(g)).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn construct_writes_a_decodable_witness() {
    let path = scratch("f2n5.gcg");
    let p = path.to_str().unwrap();
    let (code, out, _) = grlab(&["construct", "--target", "f2n:5", "--k", "3", "-o", p, "--trace"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("n=11"), "{out}");
    let g = decode_gcg(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(g, witness_f2n(3, 5).unwrap());
}

#[test]
fn construct_to_stdout_matches_library_bytes() {
    let (code, out, _) = grlab(&["construct", "--target", "f12", "--k", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.as_bytes(), encode_gcg(&witness_f12_f13(3).unwrap()));
}

#[test]
fn verify_passes_on_a_witness() {
    let p = write_graph("f12k3.gcg", &witness_f12_f13(3).unwrap());
    let (code, out, _) = grlab(&[
        "verify",
        "--forbid-rainbow-k3",
        "--forbid-mono",
        "f12",
        "--forbid-mono",
        "f13",
        "--audit",
        &p,
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().any(|l| l.starts_with("audit ")));
    assert!(out.ends_with("result pass\n"));
}

#[test]
fn verify_reports_a_planted_copy() {
    // a color-1 house on vertices 0..5, color 2 elsewhere
    let house = Named::House.graph();
    let g = ColoredCompleteGraph::from_fn(7, 2, |u, v| {
        color(if v < 5 && house.has_edge(u, v) { 1 } else { 2 })
    })
    .unwrap();
    let p = write_graph("planted.gcg", &g);
    let (code, out, _) = grlab(&["verify", "--forbid-mono", "house", &p]);
    assert_eq!(code, EXIT_VIOLATED);
    let line = out.lines().find(|l| l.starts_with("check mono")).unwrap();
    assert!(line.contains("fail color=1 image="), "{line}");
}

#[test]
fn verify_and_decompose_report_rainbow_triangles() {
    let g = ColoredCompleteGraph::from_fn(4, 3, |u, v| color((u + v) % 3 + 1)).unwrap();
    let p = write_graph("rainbow.gcg", &g);
    let (code, out, _) = grlab(&["verify", "--forbid-rainbow-k3", &p]);
    assert_eq!(code, EXIT_VIOLATED);
    assert!(out.contains("check rainbow_k3 fail"), "{out}");
    let (code, out, _) = grlab(&["decompose", &p]);
    assert_eq!(code, EXIT_VIOLATED);
    assert!(out.starts_with("rainbow triangle"), "{out}");
}

#[test]
fn decompose_prints_partition_json() {
    let p = write_graph("f2n6.gcg", &witness_f2n(4, 6).unwrap());
    let (code, out, _) = grlab(&["decompose", &p]);
    assert_eq!(code, EXIT_OK);
    let part = grlab::gallai::GallaiPartition::from_json(out.trim()).unwrap();
    assert!(part.m() >= 2);
}

#[test]
fn malformed_input_is_a_format_error() {
    let p = scratch("bad.gcg");
    std::fs::write(&p, b"not a graph\n").unwrap();
    let (code, _, err) = grlab(&["verify", "--forbid-rainbow-k3", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_RESOURCE);
    assert!(err.starts_with("grlab: "));
    let missing = scratch("missing.gcg");
    let (code, _, _) = grlab(&["decompose", missing.to_str().unwrap()]);
    assert_eq!(code, EXIT_RESOURCE);
}

#[test]
fn table_ends_at_the_known_value() {
    let (code, out, _) = grlab(&["table", "--family", "f12", "--k-max", "6", "--check-constructions"]);
    assert_eq!(code, EXIT_OK);
    let last = out.lines().last().unwrap();
    let cols: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(&cols[..2], &["6", "226"], "{last}");
}

#[test]
fn search_exit_codes_follow_the_verdict() {
    let (code, out, _) = grlab(&["search", "--n", "8", "--colors", "2", "--forbid-mono", "house"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("grlab-certificate v1"));
    let (code, _, _) = grlab(&["search", "--n", "9", "--colors", "2", "--forbid-mono", "f9", "--prove"]);
    assert_eq!(code, EXIT_VIOLATED);
    let (code, _, _) = grlab(&[
        "search", "--n", "9", "--colors", "2", "--forbid-mono", "house", "--prove", "--budget", "3",
    ]);
    assert_eq!(code, EXIT_RESOURCE);
}

#[test]
fn search_certificate_matches_library() {
    let (_, out, _) = grlab(&["search", "--n", "5", "--colors", "2", "--forbid-mono", "k3"]);
    let k3 = grlab::catalog::catalog_graph(&"k3".parse().unwrap()).unwrap();
    let lib = search(5, 2, &Forbid::mono(vec![k3]), &SearchConfig::witness(1_000_000_000)).unwrap();
    assert_eq!(out, lib.certificate());
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(grlab(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(grlab(&["search", "--n", "5"]).0, EXIT_USAGE);
    assert_eq!(grlab(&["search", "--n", "5", "--colors", "2"]).0, EXIT_USAGE);
    assert_eq!(grlab(&["construct", "--target", "p5", "--k", "2"]).0, EXIT_USAGE);
    assert_eq!(grlab(&["construct", "--target", "f9", "--k", "0"]).0, EXIT_USAGE);
    assert_eq!(grlab(&["table", "--family", "nonsense", "--k-max", "3"]).0, EXIT_USAGE);
    assert_eq!(grlab(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_agrees_with_library_entry_point() {
    let exe = env!("CARGO_BIN_EXE_grlab");
    let args = ["table", "--family", "k3", "--k-max", "5"];
    let o = Command::new(exe).args(args).output().unwrap();
    let (code, out, _) = grlab(&args);
    assert_eq!(o.status.code(), Some(code));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), out);
    let o = Command::new(exe).arg("--bogus").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn pin_writes_the_committed_presets() {
    let dest = scratch("presets.txt");
    let evidence = scratch("evidence.txt");
    let (code, out, _) = grlab(&[
        "pin",
        "-o",
        dest.to_str().unwrap(),
        "--evidence",
        evidence.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let committed = include_str!("../../core/data/presets.txt");
    assert_eq!(std::fs::read_to_string(&dest).unwrap(), committed);
    assert!(std::fs::read_to_string(&evidence).unwrap().starts_with("grlab-pin-evidence v1"));
}
