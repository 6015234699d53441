mod common;

use std::path::PathBuf;

use proptest::prelude::*;
use votecx::io::{parse_election, serialize_election, ElectionFile};
use votecx::*;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("votecx").chain(args.iter().copied());
    let code = votecx::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn with_pool() -> impl Strategy<Value = ElectionFile> {
    (common::any_election(), 0..3usize, 0..3usize).prop_flat_map(|(e, spoilers, pool)| {
        let m = e.num_candidates();
        let spoilers = spoilers.min(m);
        let voter = common::ranked_voter(m, 5, 5);
        prop::collection::vec(voter, if m == 0 { 0 } else { pool }).prop_map(move |pool| ElectionFile {
            election: e.clone(),
            spoilers: (m - spoilers..m).map(CandidateId).collect(),
            voter_pool: pool,
        })
    })
}

proptest! {
    #[test]
    fn election_round_trip(e in common::any_election()) {
        let text = serialize_election(&e);
        let back = parse_election(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(serialize_election(&back), text);
    }

    #[test]
    fn file_round_trip(f in with_pool()) {
        let text = f.serialize();
        prop_assert_eq!(ElectionFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn garbage_never_panics(text in "[a-c:>#0-9 \n]{0,60}") {
        let _ = parse_election(&text);
    }
}

#[test]
fn borda_winner_on_the_command_line() {
    let (code, out, _) = cli(&["winners", "--rule", "borda", &data("borda.elect")]);
    assert_eq!(code, 0);
    for line in ["score.a: 16", "score.b: 15", "score.c: 2", "winners: a"] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn control_witness_feeds_back() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("after.elect");
    let emitted = emitted.to_str().unwrap();
    let (code, out, _) = cli(&[
        "control", "--system", "plurality", "--type", "add-voters", "--target", "a", "--limit", "2", "--emit", emitted,
        &data("control.elect"),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("answer: yes"));
    let (code, out, _) = cli(&["winners", "--rule", "plurality", "--mode", "unique", emitted]);
    assert_eq!(code, 0);
    assert!(out.contains("winners: a"), "{out}");

    let (code, out, _) = cli(&[
        "control", "--system", "plurality", "--type", "add-voters", "--target", "a", "--limit", "0", &data("control.elect"),
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("answer: no"));
}

#[test]
fn manipulation_and_classification() {
    let (code, out, _) = cli(&[
        "manipulate", "--rule", "borda", "--target", "b", "--manipulators", "1,1", "--mode", "unique", &data("borda.elect"),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("answer: yes"));
    let (code, out, _) = cli(&["classify", "--problem", "manipulation", "--alpha", "2,1,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("complexity: NP-complete"), "{out}");
    let (_, out, _) = cli(&["classify", "--problem", "control", "--system", "condorcet", "--type", "add-candidates"]);
    assert!(out.contains("complexity: immune"), "{out}");
}

#[test]
fn usage_and_file_errors_exit_two() {
    let (code, _, err) = cli(&["winners", "--rule", "nope", &data("borda.elect")]);
    assert_eq!(code, 2);
    assert!(err.contains("--rule"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.elect");
    std::fs::write(&bad, "candidates: a b\nballot: a > a\n").unwrap();
    let (code, _, err) = cli(&["winners", "--rule", "plurality", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, _) = cli(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn oracle_check_passes() {
    let (code, out, _) = cli(&["oracle-check", "--module", "all", "--count", "200", "--seed", "5"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn queens_court_dodgson() {
    let (code, out, _) = cli(&["dodgson", &data("queens.elect")]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches(": 1").count(), 3, "{out}");
}
