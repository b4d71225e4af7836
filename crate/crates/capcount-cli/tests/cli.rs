//! End-to-end tests of the `capcount` binary.

use std::process::{Command, Output};

fn capcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capcount"))
        .args(args)
        .env_remove("CAPCOUNT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_matching_on_k33_passes() {
    let out = capcount(&["verify", "--gen", "complete_bipartite:3", "--task", "matching"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("exact count:       6"), "{text}");
    assert!(text.contains("2.37037037e0"), "{text}");
    assert!(text.contains("PASS"), "{text}");
}

#[test]
fn capacity_of_cycle_four() {
    let out = capcount(&["capacity", "--gen", "cycle:4", "--alpha", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("value:          1.60000000e1"), "{text}");
    assert!(text.contains("attained"), "{text}");
}

#[test]
fn capacity_accepts_indeg_half_shorthand() {
    let out = capcount(&["capacity", "--gen", "complete:5", "--alpha", "indeg-half"]);
    assert_eq!(out.status.code(), Some(0));
    // 2^10 for the 10 edges of K5
    assert!(stdout(&out).contains("1.02400000e3"), "{}", stdout(&out));
}

#[test]
fn count_eulerian_cycle_five() {
    let out = capcount(&["count-eulerian", "--gen", "cycle:5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn count_orientations_with_explicit_target() {
    let out = capcount(&["count-orientations", "--gen", "cycle:3", "--r", "1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn count_matchings_with_inferred_bipartition() {
    let out = capcount(&["count-matchings", "--gen", "cycle:6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn count_matchings_with_explicit_bipartition() {
    let out = capcount(&[
        "count-matchings",
        "--gen",
        "complete_bipartite:3",
        "--bipartition",
        "0,1,2:3,4,5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "6");
}

#[test]
fn gen_round_trips_through_a_file() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("capcount-roundtrip-{}.edges", std::process::id()));
    let path_str = path.to_str().unwrap();

    let out = capcount(&[
        "gen",
        "--gen",
        "random_regular_bipartite:4:3",
        "--seed",
        "9",
        "--output",
        path_str,
    ]);
    assert_eq!(out.status.code(), Some(0));

    let direct = capcount(&[
        "gen",
        "--gen",
        "random_regular_bipartite:4:3",
        "--seed",
        "9",
    ]);
    let from_file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&direct), from_file);

    // the parsed graph behaves identically to the generated one
    let counted = capcount(&["count-matchings", "--input", path_str]);
    let generated = capcount(&[
        "count-matchings",
        "--gen",
        "random_regular_bipartite:4:3",
        "--seed",
        "9",
    ]);
    assert_eq!(stdout(&counted), stdout(&generated));
    std::fs::remove_file(&path).ok();
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let args = [
        "verify",
        "--gen",
        "random_even_graph:5",
        "--seed",
        "3",
        "--task",
        "eulerian",
        "--format",
        "csv",
    ];
    let a = capcount(&args);
    let b = capcount(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "graph_id,task,count,thm4_bound,specialized_bound,lasvergnas_bound,slack_ratio,capacity_value,capacity_flag"
    );
    let row = lines.next().unwrap();
    assert_eq!(row.split(',').count(), header.split(',').count());
}

#[test]
fn seed_env_variable_is_honored() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_capcount"))
        .args(["gen", "--gen", "random_even_graph:6"])
        .env("CAPCOUNT_SEED", "42")
        .output()
        .unwrap();
    let with_flag = capcount(&["gen", "--gen", "random_even_graph:6", "--seed", "42"]);
    assert_eq!(stdout(&with_env), stdout(&with_flag));

    let default_seed = capcount(&["gen", "--gen", "random_even_graph:6"]);
    assert_ne!(stdout(&default_seed), stdout(&with_flag));
}

#[test]
fn usage_errors_exit_two() {
    // no input source
    let out = capcount(&["count-eulerian"]);
    assert_eq!(out.status.code(), Some(2));

    // both input sources
    let out = capcount(&["count-eulerian", "--gen", "cycle:4", "--input", "x.edges"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown flag (clap)
    let out = capcount(&["count-eulerian", "--gen", "cycle:4", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    // odd degrees for an eulerian count
    let out = capcount(&["count-eulerian", "--gen", "complete_bipartite:3"]);
    assert_eq!(out.status.code(), Some(2));

    // malformed generator
    let out = capcount(&["count-eulerian", "--gen", "moebius:4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stability_test_reports_not_falsified() {
    let out = capcount(&["stability-test", "--gen", "cycle:4", "--trials", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("not-falsified after 16 trials"));
}

#[test]
fn bound_subcommand_reports_without_asserting() {
    let out = capcount(&["bound", "--gen", "complete:5", "--task", "eulerian"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("specialized bound: 7.59375000e0"), "{text}");
    assert!(text.contains("las vergnas bound: 2.02500000e1"), "{text}");
}
