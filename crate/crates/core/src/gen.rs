//! Seeded corpora for the randomized drills: certified algebras of small
//! rank drawn from closed families, deliberately broken variants, twist-fixed
//! structural tensors, and drill harnesses that pit two independent verdict
//! routes against each other, instance by instance. Every function is
//! deterministic in its seed.

use crate::bialgebra::{
    check_coboundary, dual_algebra_from_coalgebra, dual_coalgebra_from_algebra, twist_fixes_tensor,
};
use crate::constructions::{
    bicrossed_lie, bicrossed_lsc, check_dual_pair, check_lsc_module, check_matched_pair_lie,
    check_matched_pair_lsc, commutator_table, current_algebra, dual_action_table, findim_ok,
    regular_rep, right_mult_table, semidirect, sub_adjacent, Rep,
};
use crate::lambda::{certify, check_axiom, oracle_samples, witt_bracket, Algebra, Kind, Table};
use crate::module::{Endo, FreeModule, Tensor};
use crate::poly::{affine, rat_int, Poly, Rat, Var, DEL, LAM};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn corpus_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cint(k: i64) -> Poly {
    Poly::one().scale(&rat_int(k))
}

fn neg_lam_del() -> Poly {
    affine(&[(-1, LAM), (-1, DEL)], 0)
}

/// Random polynomial: up to three terms, each a product of at most
/// `max_degree` variables drawn from `vars`, with integer coefficients
/// bounded by `bound`. May come out zero.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var], max_degree: u32, bound: i64) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = rng.gen_range(-bound..=bound);
        if c == 0 {
            continue;
        }
        let mut term = cint(c);
        for _ in 0..rng.gen_range(0..=max_degree) {
            let v = vars[rng.gen_range(0..vars.len())];
            term = term.mul(&Poly::var(v));
        }
        p = p.add(&term);
    }
    p
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Raw structure table with random entries, no axiom claim.
pub fn random_table(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Table {
    let mut t = Table::zero(n, n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rng.gen_range(0..3) == 0 {
                    t.set(i, j, k, random_poly(rng, &[LAM, DEL], max_degree, 2));
                }
            }
        }
    }
    t
}

fn abelian(name: &str, n: usize, alpha: Endo, kind: Kind) -> Algebra {
    Algebra {
        name: name.into(),
        module: FreeModule::new(labels(n)),
        table: Table::zero(n, n, n),
        alpha,
        kind,
    }
}

fn random_diag(rng: &mut ChaCha8Rng, n: usize) -> Endo {
    let mut e = Endo::identity(n);
    for (i, row) in e.mat.iter_mut().enumerate() {
        row[i] = cint(*[1, 1, -1, 2].get(rng.gen_range(0..4)).unwrap());
    }
    e
}

/// Rank-one algebra with a filtered random product. The twist is forced to
/// the identity whenever the product is nonzero (otherwise multiplicativity
/// pins it down anyway).
fn rank_one_family(rng: &mut ChaCha8Rng, kind: Kind) -> Algebra {
    for _ in 0..40 {
        let p = match kind {
            Kind::Lie => {
                let q = random_poly(rng, &[LAM, DEL], 1, 2);
                q.sub(&q.subst(LAM, &neg_lam_del()))
            }
            _ => random_poly(rng, &[LAM, DEL], 1, 2),
        };
        let alg = crate::lambda::rank_one("g1", "e", p, 1, kind);
        if certify(&alg).passes() {
            return alg;
        }
    }
    let fallback = match kind {
        Kind::Lie => affine(&[(1, DEL), (2, LAM)], 0),
        _ => affine(&[(1, DEL), (1, LAM)], 0),
    };
    crate::lambda::rank_one("g1", "e", fallback, 1, kind)
}

/// Rank two with the only product sending the first generator squared into
/// the second; the twist is diag(c, c^2), which is multiplicative for any
/// entry polynomial, and every axiom collapses because products of the
/// second generator vanish.
fn nilpotent_family(rng: &mut ChaCha8Rng, kind: Kind, max_degree: u32) -> Algebra {
    let p = match kind {
        Kind::Lie => {
            let q = random_poly(rng, &[LAM, DEL], max_degree, 2);
            q.sub(&q.subst(LAM, &neg_lam_del()))
        }
        _ => random_poly(rng, &[LAM, DEL], max_degree, 2),
    };
    let c = *[1i64, -1, 2].get(rng.gen_range(0..3)).unwrap();
    let mut table = Table::zero(2, 2, 2);
    table.set(0, 0, 1, p);
    let mut alpha = Endo::identity(2);
    alpha.mat[0][0] = cint(c);
    alpha.mat[1][1] = cint(c * c);
    Algebra {
        name: "g2".into(),
        module: FreeModule::new(labels(2)),
        table,
        alpha,
        kind,
    }
}

/// Constant-coefficient lift: draws small finite-dimensional products until
/// the finite-dimensional check accepts one, identity twist as the fallback.
fn current_family(rng: &mut ChaCha8Rng, n: usize, kind: Kind) -> Algebra {
    let label_refs: Vec<String> = labels(n);
    let refs: Vec<&str> = label_refs.iter().map(String::as_str).collect();
    for attempt in 0..60 {
        let mut mult = vec![vec![vec![Rat::from_integer(0.into()); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rng.gen_range(0..3) == 0 {
                        mult[i][j][k] = rat_int(rng.gen_range(-2..=2));
                    }
                }
            }
        }
        if kind == Kind::Lie {
            let raw = mult.clone();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        mult[i][j][k] = raw[i][j][k].clone() - raw[j][i][k].clone();
                    }
                }
            }
        }
        let twist: Vec<Vec<Rat>> = if attempt % 2 == 0 {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| rat_int(i64::from(i == j)))
                        .collect()
                })
                .collect()
        } else {
            let d = random_diag(rng, n);
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            d.mat[i][j]
                                .terms()
                                .next()
                                .map(|(_, c)| c.clone())
                                .unwrap_or_else(|| rat_int(0))
                        })
                        .collect()
                })
                .collect()
        };
        if findim_ok(&mult, &twist, kind) {
            return current_algebra("cur", &refs, &mult, &twist, kind);
        }
    }
    abelian("cur", n, Endo::identity(n), kind)
}

/// Conjugation by an elementary unimodular matrix: same algebra in a mixed
/// basis, so certification is preserved while tables and twists densify.
pub fn dressed(rng: &mut ChaCha8Rng, alg: &Algebra) -> Algebra {
    let n = alg.rank();
    if n < 2 {
        return alg.clone();
    }
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    let k = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
    let mut s = Endo::identity(n);
    s.mat[u][v] = cint(k);
    let mut sinv = Endo::identity(n);
    sinv.mat[u][v] = cint(-k);
    let mut table = Table::zero(n, n, n);
    for i in 0..n {
        for j in 0..n {
            let w = sinv.apply(&alg.table.apply(&s.column(i), &s.column(j), LAM));
            for (t, c) in w.coeffs.iter().enumerate() {
                table.set(i, j, t, c.clone());
            }
        }
    }
    let alpha = sinv.compose(&alg.alpha).compose(&s);
    Algebra {
        name: format!("{}~", alg.name),
        module: alg.module.clone(),
        table,
        alpha,
        kind: alg.kind,
    }
}

/// One certified algebra, strategy picked at random; the result always
/// passes `certify`.
pub fn random_certified_algebra(rng: &mut ChaCha8Rng, kind: Kind, max_rank: usize) -> Algebra {
    let out = match rng.gen_range(0..6) {
        0 => rank_one_family(rng, kind),
        1 => nilpotent_family(rng, kind, 2),
        2 => current_family(rng, max_rank.clamp(1, 3), kind),
        3 => {
            let m = rng.gen_range(1..=max_rank.max(1));
            let d = random_diag(rng, m);
            abelian("z", m, d, kind)
        }
        4 if kind == Kind::Lie => witt_bracket("w"),
        _ => {
            let base = nilpotent_family(rng, kind, 1);
            dressed(rng, &base)
        }
    };
    debug_assert!(certify(&out).passes(), "{} generator broke", out.name);
    out
}

/// Perturbs one table entry until certification fails.
pub fn broken_algebra(rng: &mut ChaCha8Rng, alg: &Algebra) -> Algebra {
    let n = alg.rank();
    for _ in 0..60 {
        let mut out = alg.clone();
        out.name = format!("{}!", alg.name);
        let (i, j, k) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        let mut bump = random_poly(rng, &[LAM, DEL], 1, 2);
        if bump.is_zero() {
            bump = Poly::var(LAM);
        }
        out.table.set(i, j, k, out.table.entry(i, j, k).add(&bump));
        if !certify(&out).passes() {
            return out;
        }
    }
    panic!("no single-entry perturbation broke {}", alg.name);
}

/// Random two-leg tensor fixed by the doubled twist: terms are drawn one at
/// a time and kept only when the twist fixes them, so the sum is fixed too.
pub fn random_fixed_tensor(rng: &mut ChaCha8Rng, alg: &Algebra, max_degree: u32) -> Tensor {
    let n = alg.rank();
    let mut out = Tensor::zero(vec![n, n]);
    for _ in 0..rng.gen_range(1..=3) {
        let c = random_poly(rng, &[Var::Del(1), Var::Del(2)], max_degree, 2);
        if c.is_zero() {
            continue;
        }
        let mut t = Tensor::zero(vec![n, n]);
        t.add_term(vec![rng.gen_range(0..n), rng.gen_range(0..n)], c);
        if twist_fixes_tensor(&alg.alpha, &t) {
            out = out.add(&t);
        }
    }
    out
}

/// Certified structure on the dual module of `a`: candidates are drawn and
/// filtered, with the zero product as the guaranteed fallback.
fn certified_dual_for(rng: &mut ChaCha8Rng, a: &Algebra) -> Algebra {
    for _ in 0..40 {
        let cand = raw_dual_for(rng, a);
        if certify(&cand).passes() {
            return cand;
        }
    }
    let mut out = raw_dual_for(rng, a);
    out.table = Table::zero(a.rank(), a.rank(), a.rank());
    out
}

fn raw_dual_for(rng: &mut ChaCha8Rng, a: &Algebra) -> Algebra {
    let n = a.rank();
    let mut table = Table::zero(n, n, n);
    match rng.gen_range(0..4) {
        0 => {}
        1 => table.set(0, 0, 0, Poly::one()),
        2 => table.set(
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            cint(rng.gen_range(1..=2)),
        ),
        _ => table.set(
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            random_poly(rng, &[LAM, DEL], 1, 2),
        ),
    }
    Algebra {
        name: format!("{}'", a.name),
        module: a.module.dual(),
        table,
        alpha: a.alpha.conformal_dual(),
        kind: Kind::LeftSymmetric,
    }
}

/// Tally of one drill run: how many instances were generated, how many of
/// them failed their checks (the deliberately broken share), and on how many
/// the two verdict routes disagreed. A drill is sound when `disagreements`
/// is zero; `broken` shows the run exercised both outcomes.
#[derive(Debug, Clone, Copy)]
pub struct DrillOutcome {
    pub total: usize,
    pub broken: usize,
    pub disagreements: usize,
}

impl DrillOutcome {
    pub fn ok(&self) -> bool {
        self.disagreements == 0
    }
}

/// Module checks against extension certification: a representation passes
/// the module axioms exactly when the split extension built from it passes
/// its own certification.
pub fn drill_lsc_modules(seed: u64, count: usize) -> DrillOutcome {
    let mut rng = corpus_rng(seed);
    let mut out = DrillOutcome {
        total: 0,
        broken: 0,
        disagreements: 0,
    };
    for idx in 0..count {
        let alg = random_certified_algebra(&mut rng, Kind::LeftSymmetric, 2);
        let rep = match idx % 3 {
            0 => regular_rep(&alg),
            1 => {
                let m = rng.gen_range(1..=2);
                Rep::two_sided(
                    FreeModule::new(labels(m)),
                    Endo::identity(m),
                    Table::zero(alg.rank(), m, m),
                    Table::zero(alg.rank(), m, m),
                )
            }
            _ => {
                let mut rep = regular_rep(&alg);
                let n = alg.rank();
                let (i, j, k) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                let which = rng.gen_range(0..2);
                let bump = Poly::one();
                if which == 0 {
                    rep.l.set(i, j, k, rep.l.entry(i, j, k).add(&bump));
                } else {
                    let r = rep.r.as_mut().unwrap();
                    r.set(i, j, k, r.entry(i, j, k).add(&bump));
                }
                rep
            }
        };
        let direct = check_lsc_module(&alg, &rep).passes();
        let via_extension = certify(&semidirect(&alg, &rep, "sd")).passes();
        out.total += 1;
        if !direct {
            out.broken += 1;
        }
        if direct != via_extension {
            out.disagreements += 1;
        }
    }
    out
}

fn lie_pair_instance(
    rng: &mut ChaCha8Rng,
    idx: usize,
) -> (Algebra, Algebra, Table, Table) {
    match idx % 4 {
        0 => {
            // zero actions between two certified Lie algebras
            let a = random_certified_algebra(rng, Kind::Lie, 2);
            let b = random_certified_algebra(rng, Kind::Lie, 2);
            let rho = Table::zero(a.rank(), b.rank(), b.rank());
            let sigma = Table::zero(b.rank(), a.rank(), a.rank());
            (a, b, rho, sigma)
        }
        1 => {
            // adjoint action on an abelian copy
            let a = random_certified_algebra(rng, Kind::Lie, 2);
            let b = abelian("ab", a.rank(), a.alpha.clone(), Kind::Lie);
            let rho = a.table.clone();
            let sigma = Table::zero(a.rank(), a.rank(), a.rank());
            (a, b, rho, sigma)
        }
        2 => {
            // dual actions of a product and a certified candidate dual product
            let a0 = random_certified_algebra(rng, Kind::LeftSymmetric, 2);
            let d0 = certified_dual_for(rng, &a0);
            let rho = dual_action_table(&a0.table);
            let sigma = dual_action_table(&d0.table);
            (sub_adjacent(&a0), sub_adjacent(&d0), rho, sigma)
        }
        _ => {
            // adjoint instance with a perturbed action
            let a = random_certified_algebra(rng, Kind::Lie, 2);
            let b = abelian("ab", a.rank(), a.alpha.clone(), Kind::Lie);
            let mut rho = a.table.clone();
            let n = a.rank();
            let (i, j, k) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            rho.set(i, j, k, rho.entry(i, j, k).add(&Poly::var(LAM)));
            let sigma = Table::zero(n, n, n);
            (a, b, rho, sigma)
        }
    }
}

/// Matched-pair conditions against the bicrossed bracket: the pair checker
/// passes exactly when the assembled double certifies.
pub fn drill_lie_matched_pairs(seed: u64, count: usize) -> DrillOutcome {
    let mut rng = corpus_rng(seed);
    let mut out = DrillOutcome {
        total: 0,
        broken: 0,
        disagreements: 0,
    };
    for idx in 0..count {
        let (a, b, rho, sigma) = lie_pair_instance(&mut rng, idx);
        let direct = check_matched_pair_lie(&a, &b, &rho, &sigma).passes();
        let double = certify(&bicrossed_lie(&a, &b, &rho, &sigma, "dbl")).passes();
        out.total += 1;
        if !direct {
            out.broken += 1;
        }
        if direct != double {
            out.disagreements += 1;
        }
    }
    out
}

fn lsc_pair_instance(
    rng: &mut ChaCha8Rng,
    idx: usize,
) -> (Algebra, Algebra, Table, Table, Table, Table) {
    match idx % 4 {
        0 => {
            let a = random_certified_algebra(rng, Kind::LeftSymmetric, 2);
            let b = random_certified_algebra(rng, Kind::LeftSymmetric, 2);
            let la = Table::zero(a.rank(), b.rank(), b.rank());
            let ra = Table::zero(a.rank(), b.rank(), b.rank());
            let lb = Table::zero(b.rank(), a.rank(), a.rank());
            let rb = Table::zero(b.rank(), a.rank(), a.rank());
            (a, b, la, ra, lb, rb)
        }
        1 => {
            // regular action on an abelian copy
            let a = random_certified_algebra(rng, Kind::LeftSymmetric, 2);
            let n = a.rank();
            let b = abelian("ab", n, a.alpha.clone(), Kind::LeftSymmetric);
            let la = a.table.clone();
            let ra = right_mult_table(&a.table);
            (a, b, la, ra, Table::zero(n, n, n), Table::zero(n, n, n))
        }
        2 => {
            // both sides from a product/dual-product pair
            let a0 = random_certified_algebra(rng, Kind::LeftSymmetric, 2);
            let d0 = certified_dual_for(rng, &a0);
            let la = dual_action_table(&commutator_table(&a0.table));
            let ra = dual_action_table(&right_mult_table(&a0.table)).map(Poly::neg);
            let lb = dual_action_table(&commutator_table(&d0.table));
            let rb = dual_action_table(&right_mult_table(&d0.table)).map(Poly::neg);
            (a0, d0, la, ra, lb, rb)
        }
        _ => {
            let a = random_certified_algebra(rng, Kind::LeftSymmetric, 2);
            let n = a.rank();
            let b = abelian("ab", n, a.alpha.clone(), Kind::LeftSymmetric);
            let mut la = a.table.clone();
            let (i, j, k) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            la.set(i, j, k, la.entry(i, j, k).add(&Poly::var(DEL)));
            let ra = right_mult_table(&a.table);
            (a, b, la, ra, Table::zero(n, n, n), Table::zero(n, n, n))
        }
    }
}

pub fn drill_lsc_matched_pairs(seed: u64, count: usize) -> DrillOutcome {
    let mut rng = corpus_rng(seed);
    let mut out = DrillOutcome {
        total: 0,
        broken: 0,
        disagreements: 0,
    };
    for idx in 0..count {
        let (a, b, la, ra, lb, rb) = lsc_pair_instance(&mut rng, idx);
        let direct = check_matched_pair_lsc(&a, &b, &la, &ra, &lb, &rb).passes();
        let double = certify(&bicrossed_lsc(&a, &b, &la, &ra, &lb, &rb, "dbl")).passes();
        out.total += 1;
        if !direct {
            out.broken += 1;
        }
        if direct != double {
            out.disagreements += 1;
        }
    }
    out
}

/// The two dual-pair pictures must return the same verdict on any pair of
/// certified structures, compatible or not.
pub fn drill_dual_pairs(seed: u64, count: usize) -> DrillOutcome {
    let mut rng = corpus_rng(seed);
    let mut out = DrillOutcome {
        total: 0,
        broken: 0,
        disagreements: 0,
    };
    for _ in 0..count {
        let a0 = random_certified_algebra(&mut rng, Kind::LeftSymmetric, 2);
        let d0 = certified_dual_for(&mut rng, &a0);
        let v = check_dual_pair(&a0, &d0);
        out.total += 1;
        if !v.lie.passes() {
            out.broken += 1;
        }
        if v.lie.passes() != v.lsc.passes() {
            out.disagreements += 1;
        }
    }
    out
}

/// Direct coalgebra defect of the induced cobracket against the vanishing of
/// the obstruction tensors.
pub fn drill_cobracket_obstruction(seed: u64, count: usize) -> DrillOutcome {
    let mut rng = corpus_rng(seed);
    let mut out = DrillOutcome {
        total: 0,
        broken: 0,
        disagreements: 0,
    };
    for _ in 0..count {
        let alg = random_certified_algebra(&mut rng, Kind::LeftSymmetric, 2);
        let r = random_fixed_tensor(&mut rng, &alg, 1);
        let v = check_coboundary(&alg, &r).expect("generator emits fixed tensors");
        out.total += 1;
        if !v.passes() {
            out.broken += 1;
        }
        if !v.agree() {
            out.disagreements += 1;
        }
    }
    out
}

/// Product to dual coproduct and back is the identity on tables, certified
/// or not.
pub fn drill_duality_round_trip(seed: u64, count: usize) -> DrillOutcome {
    let mut rng = corpus_rng(seed);
    let mut out = DrillOutcome {
        total: 0,
        broken: 0,
        disagreements: 0,
    };
    for idx in 0..count {
        let alg = if idx % 2 == 0 {
            let kind = if idx % 4 == 0 {
                Kind::LeftSymmetric
            } else {
                Kind::Lie
            };
            random_certified_algebra(&mut rng, kind, 3)
        } else {
            let n = rng.gen_range(1..=3);
            let alg = Algebra {
                name: "raw".into(),
                module: FreeModule::new(labels(n)),
                table: random_table(&mut rng, n, 2),
                alpha: random_diag(&mut rng, n),
                kind: Kind::LeftSymmetric,
            };
            out.broken += 1;
            alg
        };
        let co = dual_coalgebra_from_algebra(&alg, "tmp");
        let back = dual_algebra_from_coalgebra(&co, "tmp*", alg.kind);
        out.total += 1;
        if back.table != alg.table || back.alpha != alg.alpha {
            out.disagreements += 1;
        }
    }
    out
}

/// Symbolic verdicts against numeric spot checks on random integer points,
/// axiom by axiom.
pub fn drill_numeric_oracle(seed: u64, count: usize) -> DrillOutcome {
    let mut rng = corpus_rng(seed);
    let mut out = DrillOutcome {
        total: 0,
        broken: 0,
        disagreements: 0,
    };
    for idx in 0..count {
        let kind = if idx % 2 == 0 {
            Kind::LeftSymmetric
        } else {
            Kind::Lie
        };
        let mut alg = random_certified_algebra(&mut rng, kind, 2);
        if idx % 3 == 2 {
            alg = broken_algebra(&mut rng, &alg);
        }
        out.total += 1;
        let mut failed = false;
        for &axiom in alg.kind.axioms() {
            let symbolic = check_axiom(&alg, axiom).passes();
            let numeric = oracle_samples(&alg, axiom, 8, seed ^ (idx as u64))
                .iter()
                .all(|s| s.passes());
            if !symbolic {
                failed = true;
            }
            if symbolic != numeric {
                out.disagreements += 1;
            }
        }
        if failed {
            out.broken += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_in_the_seed() {
        let a = random_certified_algebra(&mut corpus_rng(11), Kind::Lie, 2);
        let b = random_certified_algebra(&mut corpus_rng(11), Kind::Lie, 2);
        assert_eq!(a.table, b.table);
        assert_eq!(a.alpha, b.alpha);
    }

    #[test]
    fn certified_generator_certifies_across_seeds() {
        for seed in 0..12 {
            let mut rng = corpus_rng(seed);
            for kind in [Kind::Lie, Kind::LeftSymmetric] {
                let alg = random_certified_algebra(&mut rng, kind, 3);
                assert!(certify(&alg).passes(), "seed {seed}");
            }
        }
    }

    #[test]
    fn dressing_preserves_certification() {
        let mut rng = corpus_rng(5);
        for _ in 0..6 {
            let alg = nilpotent_family(&mut rng, Kind::LeftSymmetric, 2);
            let worn = dressed(&mut rng, &alg);
            assert!(certify(&worn).passes());
        }
    }

    #[test]
    fn breaker_always_fails_certification() {
        let mut rng = corpus_rng(9);
        for kind in [Kind::Lie, Kind::LeftSymmetric] {
            for _ in 0..6 {
                let alg = random_certified_algebra(&mut rng, kind, 2);
                assert!(!certify(&broken_algebra(&mut rng, &alg)).passes());
            }
        }
    }

    #[test]
    fn fixed_tensor_generator_respects_the_twist() {
        let mut rng = corpus_rng(3);
        for _ in 0..8 {
            let alg = random_certified_algebra(&mut rng, Kind::LeftSymmetric, 2);
            let r = random_fixed_tensor(&mut rng, &alg, 1);
            assert!(twist_fixes_tensor(&alg.alpha, &r));
        }
    }

    #[test]
    fn module_drill_agrees() {
        let o = drill_lsc_modules(17, 54);
        assert_eq!(o.total, 54);
        assert!(o.ok(), "{o:?}");
        assert!(o.broken > 0, "{o:?}");
        assert!(o.broken < o.total, "{o:?}");
    }

    #[test]
    fn lie_pair_drill_agrees() {
        let o = drill_lie_matched_pairs(19, 52);
        assert_eq!(o.total, 52);
        assert!(o.ok(), "{o:?}");
        assert!(o.broken > 0, "{o:?}");
        assert!(o.broken < o.total, "{o:?}");
    }

    #[test]
    fn lsc_pair_drill_agrees() {
        let o = drill_lsc_matched_pairs(23, 52);
        assert_eq!(o.total, 52);
        assert!(o.ok(), "{o:?}");
        assert!(o.broken > 0, "{o:?}");
        assert!(o.broken < o.total, "{o:?}");
    }

    #[test]
    fn dual_pair_drill_agrees() {
        let o = drill_dual_pairs(29, 51);
        assert_eq!(o.total, 51);
        assert!(o.ok(), "{o:?}");
        assert!(o.broken > 0, "{o:?}");
    }

    #[test]
    fn cobracket_drill_agrees() {
        let o = drill_cobracket_obstruction(31, 60);
        assert_eq!(o.total, 60);
        assert!(o.ok(), "{o:?}");
        assert!(o.broken > 0, "{o:?}");
        assert!(o.broken < o.total, "{o:?}");
    }

    #[test]
    fn round_trip_drill_is_exact() {
        let o = drill_duality_round_trip(37, 60);
        assert_eq!(o.total, 60);
        assert!(o.ok(), "{o:?}");
    }

    #[test]
    fn numeric_oracle_drill_agrees() {
        let o = drill_numeric_oracle(41, 54);
        assert_eq!(o.total, 54);
        assert!(o.ok(), "{o:?}");
        assert!(o.broken > 0, "{o:?}");
        assert!(o.broken < o.total, "{o:?}");
    }
}
