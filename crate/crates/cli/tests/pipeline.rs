//! Construction subcommands chained into checks, the numeric oracle, the
//! corpus generator, and the polynomial round-trip property.

use homconf_cli::def::{parse_definition, Decl};
use homconf_cli::expr::{parse_poly, print_poly};
use homconf_cli::run::run_cli;

use proptest::prelude::*;

use homconf_core::lambda::Kind;
use homconf_core::poly::{rat, Poly, Var, DEL, LAM, MU};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn out_file(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn sub_adjacent_of_the_shift_checks_as_a_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_file(&dir, "lie.def");
    let r = run_cli(&["construct", "sub-adjacent", &fixture("weighted_shift.def"), "--out", &out]);
    assert_eq!(r.code, 0, "{}", r.stderr);

    let check = run_cli(&["check", &out, "--axioms", "skew,jacobi"]);
    assert_eq!(check.code, 0, "{}", check.stdout);

    // the commutator of the shift is the bracket twin already in the fixture
    let produced = parse_definition(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let twin = parse_definition(&std::fs::read_to_string(fixture("weighted_shift.def")).unwrap())
        .unwrap();
    let lie = produced.decls.iter().find_map(|d| match d {
        Decl::Algebra(a) if a.kind == Kind::Lie => Some(a),
        _ => None,
    });
    assert_eq!(lie.unwrap().table, twin.algebra("shift_bracket").unwrap().table);
}

#[test]
fn symplectic_induction_recovers_a_product_for_the_extension() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_file(&dir, "induced.def");
    let r = run_cli(&[
        "construct",
        "from-symplectic",
        &fixture("central_extension.def"),
        "--out",
        &out,
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let check = run_cli(&["check", &out]);
    assert_eq!(check.code, 0, "{}", check.stdout);
}

#[test]
fn dual_of_the_coproduct_is_the_scaling_product() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_file(&dir, "dual.def");
    let r = run_cli(&["construct", "dual", &fixture("triple_split.def"), "--out", &out]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let produced = parse_definition(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let alg = produced.algebra("cosplit_dual").unwrap();
    assert_eq!(*alg.table.entry(0, 0, 0), Poly::int(3));
    assert_eq!(run_cli(&["check", &out]).code, 0);
}

#[test]
fn coboundary_construction_emits_a_checkable_coalgebra() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_file(&dir, "cob.def");
    let r = run_cli(&["construct", "coboundary", &fixture("coboundary_seed.def"), "--out", &out]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let check = run_cli(&["check", &out]);
    assert_eq!(check.code, 0, "{}", check.stdout);
}

#[test]
fn semidirect_and_bicrossed_products_check_clean() {
    let dir = tempfile::tempdir().unwrap();
    for (what, fix) in [
        ("semidirect", "regular_action.def"),
        ("bicrossed", "split_sum.def"),
    ] {
        let out = out_file(&dir, &format!("{what}.def"));
        let r = run_cli(&["construct", what, &fixture(fix), "--out", &out]);
        assert_eq!(r.code, 0, "{what}: {}", r.stderr);
        let check = run_cli(&["check", &out]);
        assert_eq!(check.code, 0, "{what}:\n{}", check.stdout);
    }
}

#[test]
fn current_lift_validates_constant_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_file(&dir, "cur.def");
    let r = run_cli(&["construct", "current", &fixture("idempotent_lift.def"), "--out", &out]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(run_cli(&["check", &out]).code, 0);

    // non-constant coefficients are refused
    let r = run_cli(&["construct", "current", &fixture("weighted_shift.def"), "--out", &out]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("constant"), "{}", r.stderr);
}

#[test]
fn oracle_runs_clean_over_the_fixture_corpus() {
    for name in ["weighted_shift.def", "central_extension.def", "broken_bracket.def"] {
        let out = run_cli(&["oracle", &fixture(name), "--samples", "12", "--seed", "3"]);
        assert_eq!(out.code, 0, "{name}:\n{}", out.stdout);
        assert!(!out.stdout.contains("DISAGREE"), "{name}:\n{}", out.stdout);
    }
}

#[test]
fn corpus_files_always_parse_and_never_error_under_check() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = out_file(&dir, "corpus");
    let r = run_cli(&[
        "corpus", "--rank", "2", "--degree", "1", "--count", "6", "--seed", "14", "--out", &out_dir,
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut saw = 0;
    for idx in 0..6 {
        let path = format!("{out_dir}/instance_{idx:03}.def");
        let src = std::fs::read_to_string(&path).unwrap();
        parse_definition(&src).unwrap_or_else(|e| panic!("{path}: {e}"));
        let check = run_cli(&["check", &path]);
        assert!(check.code == 0 || check.code == 1, "{path}: {}", check.stderr);
        if idx % 2 == 0 {
            // even instances are drawn from the certified generator
            assert_eq!(check.code, 0, "{path}:\n{}", check.stdout);
        }
        saw += 1;
    }
    assert_eq!(saw, 6);
}

fn arb_named_var() -> impl Strategy<Value = Var> {
    prop_oneof![
        Just(LAM),
        Just(MU),
        Just(DEL),
        Just(Var::Del(1)),
        Just(Var::Del(2)),
        Just(Var::Del(3)),
        Just(Var::Param(0)),
    ]
}

fn arb_surface_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            -9i64..=9,
            1i64..=4,
            prop::collection::vec((arb_named_var(), 0u32..=3), 0..3),
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut p = Poly::zero();
        for (num, den, pows) in terms {
            let mut t = Poly::constant(rat(num, den));
            for (v, e) in pows {
                t = t.mul(&Poly::var(v).pow(e));
            }
            p = p.add(&t);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    // the printed surface syntax parses back to the same polynomial
    #[test]
    fn printed_polynomials_parse_back(p in arb_surface_poly()) {
        let printed = print_poly(&p);
        let reparsed = parse_poly(&printed)
            .unwrap_or_else(|e| panic!("`{printed}`: {e}"));
        prop_assert_eq!(p, reparsed);
    }
}
