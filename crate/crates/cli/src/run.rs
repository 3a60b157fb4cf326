//! The command-line front end: check, construct, oracle, corpus. Everything
//! routes through `run_cli` so tests can call the binary as a function and
//! assert on exit codes and exact output bytes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use homconf_core::bialgebra::{
    check_coalgebra, check_coboundary, coboundary_cobracket, dual_algebra_from_coalgebra,
    dual_coalgebra_from_algebra,
};
use homconf_core::constructions::{
    bicrossed_lie, bicrossed_lsc, check_lie_module, check_lsc_module, check_matched_pair_lie,
    check_matched_pair_lsc, check_symplectic, findim_ok, lsc_from_symplectic, semidirect,
    sub_adjacent,
};
use homconf_core::gen::{corpus_rng, random_certified_algebra, random_table};
use homconf_core::lambda::{check_axiom, oracle_samples, Algebra, Axiom, Kind};
use homconf_core::poly::Rat;
use homconf_core::report::Report;
use homconf_core::Endo;

use crate::def::{parse_definition, print_definition, Decl, DefinitionFile, PairActions, Task};
use crate::report::{ndjson_records, text_records};

pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "homconf",
    about = "exact checks and constructions for twisted conformal algebras",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Construction {
    /// Commutator bracket of each product algebra
    SubAdjacent,
    /// Conformal lift of constant structure coefficients
    Current,
    /// Extension of each algebra by one of its modules
    Semidirect,
    /// Sum algebra of each declared matched pair
    Bicrossed,
    /// Algebra structure on the dual of each coalgebra
    Dual,
    /// Coalgebra structure on the dual of each algebra
    DualCoalgebra,
    /// Product induced by each symplectic form
    FromSymplectic,
    /// Cobracket induced by each structural tensor
    Coboundary,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the structures declared in a definition file
    Check {
        file: PathBuf,
        /// Comma-separated axiom names applied to every algebra target
        #[arg(long)]
        axioms: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build derived structures and write them as a new definition file
    Construct {
        what: Construction,
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare symbolic verdicts against random numeric spot checks
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        /// Defaults to $HOMCONF_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write a deterministic family of definition files
    Corpus {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn fail(stderr: String) -> CliOutput {
    CliOutput {
        code: 2,
        stdout: String::new(),
        stderr,
    }
}

pub fn run_cli(argv: &[&str]) -> CliOutput {
    let mut full = vec!["homconf"];
    full.extend_from_slice(argv);
    let cli = match Cli::try_parse_from(full) {
        Ok(c) => c,
        Err(e) => {
            // clap renders --help and version through the error path too
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                fail(rendered)
            } else {
                CliOutput {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match cli.cmd {
        Cmd::Check {
            file,
            axioms,
            format,
        } => cmd_check(&file, axioms.as_deref(), format),
        Cmd::Construct { what, file, out } => cmd_construct(what, &file, &out),
        Cmd::Oracle {
            file,
            samples,
            seed,
        } => cmd_oracle(&file, samples, seed),
        Cmd::Corpus {
            rank,
            degree,
            count,
            seed,
            out,
        } => cmd_corpus(rank, degree, count, seed, &out),
    }
}

fn load(path: &PathBuf) -> Result<DefinitionFile, CliOutput> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| fail(format!("{}: {e}\n", path.display())))?;
    parse_definition(&src).map_err(|e| fail(format!("{}: {e}\n", path.display())))
}

fn parse_axiom_list(list: &str) -> Result<Vec<Axiom>, CliOutput> {
    list.split(',')
        .map(|w| {
            Axiom::from_name(w.trim()).ok_or_else(|| fail(format!("unknown axiom `{w}`\n")))
        })
        .collect()
}

/// Runs the checks one declaration asks for and appends them to the report.
fn check_decl(
    file: &DefinitionFile,
    decl: &Decl,
    axioms: Option<&[Axiom]>,
    report: &mut Report,
) -> Result<(), CliOutput> {
    match decl {
        Decl::Algebra(a) => {
            let list: Vec<Axiom> = match axioms {
                Some(axs) => axs.to_vec(),
                None => a.kind.axioms().to_vec(),
            };
            for ax in list {
                report.push(check_axiom(a, ax));
            }
        }
        Decl::Coalgebra(c) => report.extend(check_coalgebra(c)),
        Decl::Form { on, form, .. } => {
            let alg = file.algebra(on).expect("validated on parse");
            report.extend(check_symplectic(alg, form));
        }
        Decl::Rep { on, rep, .. } => {
            let alg = file.algebra(on).expect("validated on parse");
            let r = match alg.kind {
                Kind::Lie => check_lie_module(alg, rep),
                _ => check_lsc_module(alg, rep),
            };
            report.extend(r);
        }
        Decl::Tensor { name, on, tensor } => {
            let alg = file.algebra(on).expect("validated on parse");
            match check_coboundary(alg, tensor) {
                Ok(verdict) => {
                    report.extend(verdict.coalgebra);
                    report.extend(verdict.obstruction);
                }
                Err(e) => return Err(fail(format!("{name}: {e}\n"))),
            }
        }
        Decl::Pair(p) => {
            let a = file.algebra(&p.left).expect("validated on parse");
            let b = file.algebra(&p.right).expect("validated on parse");
            let r = match &p.actions {
                PairActions::Lie { rho, sigma } => check_matched_pair_lie(a, b, rho, sigma),
                PairActions::Product { la, ra, lb, rb } => {
                    check_matched_pair_lsc(a, b, la, ra, lb, rb)
                }
            };
            report.extend(r);
        }
    }
    Ok(())
}

fn cmd_check(path: &PathBuf, axioms: Option<&str>, format: Format) -> CliOutput {
    let file = match load(path) {
        Ok(f) => f,
        Err(out) => return out,
    };
    let axiom_list = match axioms.map(parse_axiom_list).transpose() {
        Ok(l) => l,
        Err(out) => return out,
    };

    let mut report = Report::new();
    let targets: Vec<(String, Option<Vec<Axiom>>)> = if file.tasks.is_empty() {
        file.decls
            .iter()
            .map(|d| (d.name().to_string(), None))
            .collect()
    } else {
        file.tasks
            .iter()
            .map(|Task { target, axioms }| (target.clone(), axioms.clone()))
            .collect()
    };
    for (target, task_axioms) in targets {
        let decl = file.find(&target).expect("tasks validated on parse");
        // the command-line list wins over per-task lists
        let effective = axiom_list.as_deref().or(task_axioms.as_deref());
        if let Err(out) = check_decl(&file, decl, effective, &mut report) {
            return out;
        }
    }

    let stdout = match format {
        Format::Text => text_records(&report),
        Format::Json => ndjson_records(&report),
    };
    CliOutput {
        code: if report.passes() { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

/// Constant structure data of an algebra whose table and twist are free of
/// the parameter and the operator, if it is one.
fn constant_structure(a: &Algebra) -> Option<(Vec<Vec<Vec<Rat>>>, Vec<Vec<Rat>>)> {
    let n = a.rank();
    let mut mult = vec![vec![vec![Rat::from_integer(0.into()); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mult[i][j][k] = a.table.entry(i, j, k).constant_value()?;
            }
        }
    }
    let mut twist = vec![vec![Rat::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in 0..n {
            twist[i][j] = a.alpha.mat[i][j].constant_value()?;
        }
    }
    Some((mult, twist))
}

fn cmd_construct(what: Construction, path: &PathBuf, out_path: &PathBuf) -> CliOutput {
    let file = match load(path) {
        Ok(f) => f,
        Err(out) => return out,
    };
    let mut out = DefinitionFile::default();
    let mut log = String::new();

    let result: Result<(), CliOutput> = (|| {
        match what {
            Construction::SubAdjacent => {
                for d in &file.decls {
                    if let Decl::Algebra(a) = d {
                        if a.kind == Kind::Lie {
                            continue;
                        }
                        let lie = sub_adjacent(a);
                        writeln!(log, "{} -> {} (lie)", a.name, lie.name).unwrap();
                        out.decls.push(Decl::Algebra(lie));
                    }
                }
            }
            Construction::Current => {
                for d in &file.decls {
                    if let Decl::Algebra(a) = d {
                        let Some((mult, twist)) = constant_structure(a) else {
                            return Err(fail(format!(
                                "{}: structure coefficients must be constants\n",
                                a.name
                            )));
                        };
                        if !findim_ok(&mult, &twist, a.kind) {
                            return Err(fail(format!(
                                "{}: constant coefficients fail the finite-dimensional axioms\n",
                                a.name
                            )));
                        }
                        writeln!(log, "{} lifts", a.name).unwrap();
                        out.decls.push(Decl::Algebra(a.clone()));
                    }
                }
            }
            Construction::Semidirect => {
                for d in &file.decls {
                    if let Decl::Rep { name, on, rep } = d {
                        let alg = file.algebra(on).expect("validated on parse");
                        let sum = semidirect(alg, rep, &format!("{on}_{name}"));
                        writeln!(log, "{on} |x {name} -> {}", sum.name).unwrap();
                        out.decls.push(Decl::Algebra(sum));
                    }
                }
            }
            Construction::Bicrossed => {
                for d in &file.decls {
                    if let Decl::Pair(p) = d {
                        let a = file.algebra(&p.left).expect("validated on parse");
                        let b = file.algebra(&p.right).expect("validated on parse");
                        let sum_name = format!("{}_{}", p.left, p.right);
                        let sum = match &p.actions {
                            PairActions::Lie { rho, sigma } => {
                                bicrossed_lie(a, b, rho, sigma, &sum_name)
                            }
                            PairActions::Product { la, ra, lb, rb } => {
                                bicrossed_lsc(a, b, la, ra, lb, rb, &sum_name)
                            }
                        };
                        writeln!(log, "{} >< {} -> {}", p.left, p.right, sum.name).unwrap();
                        out.decls.push(Decl::Algebra(sum));
                    }
                }
            }
            Construction::Dual => {
                for d in &file.decls {
                    if let Decl::Coalgebra(c) = d {
                        let dual = dual_algebra_from_coalgebra(
                            c,
                            &format!("{}_dual", c.name),
                            Kind::LeftSymmetric,
                        );
                        writeln!(log, "{} -> {}", c.name, dual.name).unwrap();
                        out.decls.push(Decl::Algebra(dual));
                    }
                }
            }
            Construction::DualCoalgebra => {
                for d in &file.decls {
                    if let Decl::Algebra(a) = d {
                        let co = dual_coalgebra_from_algebra(a, &format!("{}_dual", a.name));
                        writeln!(log, "{} -> {}", a.name, co.name).unwrap();
                        out.decls.push(Decl::Coalgebra(co));
                    }
                }
            }
            Construction::FromSymplectic => {
                for d in &file.decls {
                    if let Decl::Form { name, on, form } = d {
                        let alg = file.algebra(on).expect("validated on parse");
                        match lsc_from_symplectic(alg, form) {
                            Ok(prod) => {
                                writeln!(log, "{on} + {name} -> {}", prod.name).unwrap();
                                out.decls.push(Decl::Algebra(prod));
                            }
                            Err(e) => return Err(fail(format!("{name}: {e}\n"))),
                        }
                    }
                }
            }
            Construction::Coboundary => {
                for d in &file.decls {
                    if let Decl::Tensor { name, on, tensor } = d {
                        let alg = file.algebra(on).expect("validated on parse");
                        match coboundary_cobracket(alg, tensor) {
                            Ok(co) => {
                                writeln!(log, "{on} + {name} -> {}", co.name).unwrap();
                                out.decls.push(Decl::Coalgebra(co));
                            }
                            Err(e) => return Err(fail(format!("{name}: {e}\n"))),
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    if let Err(o) = result {
        return o;
    }
    if out.decls.is_empty() {
        return fail("nothing to construct from this file\n".to_string());
    }

    let text = print_definition(&out);
    if let Err(e) = std::fs::write(out_path, &text) {
        return fail(format!("{}: {e}\n", out_path.display()));
    }
    CliOutput {
        code: 0,
        stdout: log,
        stderr: String::new(),
    }
}

fn cmd_oracle(path: &PathBuf, samples: usize, seed: Option<u64>) -> CliOutput {
    let file = match load(path) {
        Ok(f) => f,
        Err(out) => return out,
    };
    let seed = seed
        .or_else(|| {
            std::env::var("HOMCONF_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);

    let mut stdout = String::new();
    let mut agree = true;
    let mut saw_algebra = false;
    for d in &file.decls {
        let Decl::Algebra(a) = d else { continue };
        saw_algebra = true;
        for &ax in a.kind.axioms() {
            let symbolic = check_axiom(a, ax).passes();
            let pts = oracle_samples(a, ax, samples, seed);
            let numeric = pts.iter().all(|s| s.passes());
            let verdict = if symbolic == numeric { "agree" } else { "DISAGREE" };
            agree &= symbolic == numeric;
            writeln!(
                stdout,
                "{} {}: symbolic={} numeric={} ({} samples) {verdict}",
                a.name,
                ax.name(),
                if symbolic { "pass" } else { "fail" },
                if numeric { "pass" } else { "fail" },
                pts.len(),
            )
            .unwrap();
        }
    }
    if !saw_algebra {
        return fail("no algebras to sample in this file\n".to_string());
    }
    CliOutput {
        code: if agree { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn cmd_corpus(rank: usize, degree: u32, count: usize, seed: u64, out_dir: &PathBuf) -> CliOutput {
    if rank == 0 || rank > 4 {
        return fail("rank must be between 1 and 4\n".to_string());
    }
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        return fail(format!("{}: {e}\n", out_dir.display()));
    }
    let mut rng = corpus_rng(seed);
    let mut log = String::new();
    for idx in 0..count {
        // alternate between certified structures and raw tables so the
        // corpus exercises both verdicts
        let alg = if idx % 2 == 0 {
            let mut a = random_certified_algebra(&mut rng, Kind::LeftSymmetric, rank);
            a.name = format!("instance_{idx:03}");
            a
        } else {
            Algebra {
                name: format!("instance_{idx:03}"),
                module: homconf_core::FreeModule::new(
                    (0..rank).map(|i| format!("e{i}")).collect(),
                ),
                table: random_table(&mut rng, rank, degree),
                alpha: Endo::identity(rank),
                kind: Kind::LeftSymmetric,
            }
        };
        let file = DefinitionFile {
            tasks: vec![Task {
                target: alg.name.clone(),
                axioms: None,
            }],
            decls: vec![Decl::Algebra(alg)],
        };
        let path = out_dir.join(format!("instance_{idx:03}.def"));
        if let Err(e) = std::fs::write(&path, print_definition(&file)) {
            return fail(format!("{}: {e}\n", path.display()));
        }
        writeln!(log, "{}", path.display()).unwrap();
    }
    CliOutput {
        code: 0,
        stdout: log,
        stderr: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
        let p = dir.path().join(name);
        std::fs::write(&p, content).unwrap();
        p.to_string_lossy().into_owned()
    }

    const GOOD: &str = "\
[algebra w]
kind left-symmetric
basis a b
a . b = (L)*b
";

    const BAD: &str = "\
[algebra broken]
kind lie
basis l e
[l, l] = (D - 2*L)*e
";

    #[test]
    fn exit_codes_separate_pass_fail_and_error() {
        let dir = tempfile::tempdir().unwrap();
        let good = write_tmp(&dir, "good.def", GOOD);
        let bad = write_tmp(&dir, "bad.def", BAD);
        let junk = write_tmp(&dir, "junk.def", "[algebra x]\nbasis u\nu . u = (Q)*u\n");

        assert_eq!(run_cli(&["check", &good]).code, 0);
        let failing = run_cli(&["check", &bad]);
        assert_eq!(failing.code, 1);
        assert!(failing.stdout.contains("FAIL"), "{}", failing.stdout);
        let err = run_cli(&["check", &junk]);
        assert_eq!(err.code, 2);
        assert!(err.stderr.contains("unknown variable `Q`"), "{}", err.stderr);
        assert_eq!(run_cli(&["check", "/nonexistent/x.def"]).code, 2);
    }

    #[test]
    fn json_output_is_one_record_per_residual() {
        let dir = tempfile::tempdir().unwrap();
        let good = write_tmp(&dir, "good.def", GOOD);
        let out = run_cli(&["check", &good, "--format", "json"]);
        assert_eq!(out.code, 0);
        for line in out.stdout.lines() {
            assert!(line.starts_with("{\"subject\":"), "{line}");
            assert!(line.ends_with('}'), "{line}");
        }
        // left-symmetry residuals on 2^3 triples, multiplicativity on 2^2
        // pairs, plus twist-linearity rows
        assert!(out.stdout.lines().count() >= 12);
    }

    #[test]
    fn axiom_flag_narrows_the_run() {
        let dir = tempfile::tempdir().unwrap();
        let bad = write_tmp(&dir, "bad.def", BAD);
        // the broken bracket is still multiplicative, so narrowing to that
        // axiom turns the verdict around
        let out = run_cli(&["check", &bad, "--axioms", "multiplicative"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        let out = run_cli(&["check", &bad, "--axioms", "skew"]);
        assert_eq!(out.code, 1);
        assert_eq!(run_cli(&["check", &bad, "--axioms", "bogus"]).code, 2);
    }

    #[test]
    fn construct_sub_adjacent_writes_a_checkable_file() {
        let dir = tempfile::tempdir().unwrap();
        let good = write_tmp(&dir, "good.def", GOOD);
        let out_path = dir.path().join("lie.def");
        let out = run_cli(&[
            "construct",
            "sub-adjacent",
            &good,
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let reread = run_cli(&["check", out_path.to_str().unwrap()]);
        assert_eq!(reread.code, 0, "{}", reread.stdout);
        let text = std::fs::read_to_string(&out_path).unwrap();
        assert!(text.contains("kind lie"), "{text}");
    }

    #[test]
    fn oracle_agrees_on_passing_and_failing_files() {
        let dir = tempfile::tempdir().unwrap();
        let good = write_tmp(&dir, "good.def", GOOD);
        let bad = write_tmp(&dir, "bad.def", BAD);
        let out = run_cli(&["oracle", &good, "--samples", "8", "--seed", "5"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        // disagreement would be a bug in either route, not a failing input
        let out = run_cli(&["oracle", &bad, "--samples", "8", "--seed", "5"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("symbolic=fail numeric=fail"), "{}", out.stdout);
    }

    #[test]
    fn corpus_is_deterministic_and_parses_back() {
        let dir = tempfile::tempdir().unwrap();
        let out_a = dir.path().join("a");
        let out_b = dir.path().join("b");
        for out in [&out_a, &out_b] {
            let r = run_cli(&[
                "corpus",
                "--rank",
                "2",
                "--count",
                "4",
                "--seed",
                "9",
                "--out",
                out.to_str().unwrap(),
            ]);
            assert_eq!(r.code, 0, "{}", r.stderr);
        }
        for idx in 0..4 {
            let name = format!("instance_{idx:03}.def");
            let a = std::fs::read_to_string(out_a.join(&name)).unwrap();
            let b = std::fs::read_to_string(out_b.join(&name)).unwrap();
            assert_eq!(a, b, "{name} differs between identical runs");
            parse_definition(&a).unwrap();
        }
    }
}
