//! Fixture files: expected verdicts, exact failure locations, round-trip
//! stability, and byte-level determinism of the machine report.

use homconf_cli::def::{parse_definition, print_definition};
use homconf_cli::run::run_cli;

fn fixture(name: &str) -> String {
    format!(
        "{}/tests/fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    )
}

const PASSING: &[&str] = &[
    "idempotent_lift.def",
    "weighted_shift.def",
    "central_extension.def",
    "coboundary_seed.def",
    "regular_action.def",
    "split_sum.def",
    "triple_split.def",
];

#[test]
fn passing_fixtures_check_clean() {
    for name in PASSING {
        let out = run_cli(&["check", &fixture(name)]);
        assert_eq!(out.code, 0, "{name}:\n{}{}", out.stdout, out.stderr);
        assert!(out.stdout.contains("PASS"), "{name}:\n{}", out.stdout);
    }
}

#[test]
fn broken_fixture_names_the_failing_tuple() {
    let out = run_cli(&["check", &fixture("broken_bracket.def")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("at (l, l, e): 4*D"), "{}", out.stdout);

    let json = run_cli(&["check", &fixture("broken_bracket.def"), "--format", "json"]);
    assert_eq!(json.code, 1);
    let line = json
        .stdout
        .lines()
        .find(|l| l.contains("\"pass\":false"))
        .expect("a failing record");
    assert_eq!(
        line,
        "{\"subject\":\"broken\",\"axiom\":\"skew\",\"tuple\":\"l,l,e\",\"residual\":\"4*D\",\"pass\":false}"
    );
}

#[test]
fn every_fixture_round_trips_through_the_printer() {
    for name in PASSING.iter().chain(["broken_bracket.def"].iter()) {
        let src = std::fs::read_to_string(fixture(name)).unwrap();
        let file = parse_definition(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print_definition(&file);
        let reparsed = parse_definition(&printed).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(file, reparsed, "{name} drifts through print/parse");
        assert_eq!(printed, print_definition(&reparsed), "{name} printer unstable");
    }
}

#[test]
fn machine_reports_are_byte_identical_across_runs() {
    for name in PASSING {
        let path = fixture(name);
        let a = run_cli(&["check", &path, "--format", "json"]);
        let b = run_cli(&["check", &path, "--format", "json"]);
        assert_eq!(a.stdout, b.stdout, "{name} report differs between runs");
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn json_records_cover_every_residual_tuple() {
    let out = run_cli(&["check", &fixture("central_extension.def"), "--format", "json"]);
    assert_eq!(out.code, 0);
    // 8 skew + 16 jacobi + 8 multiplicative + 4 form-skew + 1 det + 8 cyclic
    assert_eq!(out.stdout.lines().count(), 45);
    assert!(out.stdout.lines().all(|l| l.contains("\"pass\":true")));
}

#[test]
fn undeclared_labels_are_reported_with_their_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.def");
    std::fs::write(&p, "[algebra a]\nkind lie\nbasis e1 e2\n[e1, e2] = e3\n").unwrap();
    let out = run_cli(&["check", p.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    assert!(out.stderr.contains("e3"), "{}", out.stderr);
}
