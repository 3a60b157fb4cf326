//! Randomized law checks for the polynomial ring, the module layer, and the
//! lambda-product plumbing. Everything here must hold for arbitrary data, not
//! just the curated fixtures.

use std::collections::BTreeMap;

use homconf_core::lambda::{check_shift_identities, Algebra, Kind, Table};
use homconf_core::module::{BilinearForm, Element, Endo, FreeModule, Tensor};
use homconf_core::poly::{rat, solve_square_system, Poly, Rat, Var, DEL, LAM, MU};
use proptest::prelude::*;

const VARS: [Var; 4] = [LAM, MU, DEL, Var::Del(1)];

// Coefficients land in a small box; exponents are capped so the total degree
// stays at most 4 over at most 4 variables.
prop_compose! {
    fn arb_poly()(
        terms in prop::collection::vec(
            (-6i64..=6, 1i64..=3, prop::array::uniform4(0u32..=2)),
            0..4,
        ),
    ) -> Poly {
        let mut acc = Poly::zero();
        for (num, den, exps) in terms {
            let mut t = Poly::constant(rat(num, den));
            let mut budget = 4u32;
            for (v, e) in VARS.iter().zip(exps) {
                let e = e.min(budget);
                budget -= e;
                t = t.mul(&Poly::var(*v).pow(e));
            }
            acc = acc.add(&t);
        }
        acc
    }
}

prop_compose! {
    fn arb_del_poly()(
        terms in prop::collection::vec((-5i64..=5, 0u32..=2), 0..3),
    ) -> Poly {
        terms.into_iter().fold(Poly::zero(), |acc, (c, e)| {
            acc.add(&Poly::int(c).mul(&Poly::var(DEL).pow(e)))
        })
    }
}

prop_compose! {
    fn arb_table_entry()(
        terms in prop::collection::vec((-4i64..=4, 0u32..=1, 0u32..=1), 0..3),
    ) -> Poly {
        terms.into_iter().fold(Poly::zero(), |acc, (c, el, ed)| {
            acc.add(
                &Poly::int(c)
                    .mul(&Poly::var(LAM).pow(el))
                    .mul(&Poly::var(DEL).pow(ed)),
            )
        })
    }
}

prop_compose! {
    fn arb_point()(
        nums in prop::array::uniform4(-5i64..=5),
        dens in prop::array::uniform4(1i64..=3),
    ) -> BTreeMap<Var, Rat> {
        VARS.iter()
            .zip(nums.iter().zip(dens.iter()))
            .map(|(v, (n, d))| (*v, rat(*n, *d)))
            .collect()
    }
}

prop_compose! {
    fn arb_endo2()(es in prop::collection::vec(arb_del_poly(), 4)) -> Endo {
        Endo {
            mat: vec![
                vec![es[0].clone(), es[1].clone()],
                vec![es[2].clone(), es[3].clone()],
            ],
        }
    }
}

prop_compose! {
    fn arb_element2()(cs in prop::collection::vec(arb_del_poly(), 2)) -> Element {
        Element { coeffs: cs }
    }
}

prop_compose! {
    fn arb_table2()(es in prop::collection::vec(arb_table_entry(), 8)) -> Table {
        let mut t = Table::zero(2, 2, 2);
        let mut it = es.into_iter();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    t.set(i, j, k, it.next().unwrap());
                }
            }
        }
        t
    }
}

// Three legs of rank 2; coefficients may mix the pending parameter with all
// three leg operators, which is what the elimination steps have to cope with.
prop_compose! {
    fn arb_tensor3()(
        cells in prop::collection::vec(
            (0usize..8, prop::collection::vec((-4i64..=4, prop::array::uniform4(0u32..=1)), 1..3)),
            0..4,
        ),
    ) -> Tensor {
        let tvars = [LAM, Var::Del(1), Var::Del(2), Var::Del(3)];
        let mut t = Tensor::zero(vec![2, 2, 2]);
        for (cell, terms) in cells {
            let idx = vec![cell / 4, (cell / 2) % 2, cell % 2];
            let mut p = Poly::zero();
            for (c, exps) in terms {
                let mut m = Poly::int(c);
                for (v, e) in tvars.iter().zip(exps) {
                    m = m.mul(&Poly::var(*v).pow(e));
                }
                p = p.add(&m);
            }
            t.add_term(idx, p);
        }
        t
    }
}

prop_compose! {
    fn arb_form2()(
        es in prop::collection::vec(
            prop::collection::vec((-5i64..=5, 0u32..=3), 0..3),
            4,
        ),
    ) -> BilinearForm {
        let mk = |terms: &Vec<(i64, u32)>| {
            terms.iter().fold(Poly::zero(), |acc, (c, e)| {
                acc.add(&Poly::int(*c).mul(&Poly::var(LAM).pow(*e)))
            })
        };
        BilinearForm {
            entries: vec![
                vec![mk(&es[0]), mk(&es[1])],
                vec![mk(&es[2]), mk(&es[3])],
            ],
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn ring_laws_hold_on_random_triples(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
    }
}

proptest! {
    #[test]
    fn eval_respects_sums_and_products(p in arb_poly(), q in arb_poly(), pt in arb_point()) {
        let ep = p.eval(&pt).unwrap();
        let eq = q.eval(&pt).unwrap();
        prop_assert_eq!(p.add(&q).eval(&pt).unwrap(), ep.clone() + eq.clone());
        prop_assert_eq!(p.mul(&q).eval(&pt).unwrap(), ep * eq);
    }

    #[test]
    fn subst_then_eval_matches_the_composed_assignment(
        p in arb_poly(),
        q in arb_poly(),
        pt in arb_point(),
    ) {
        let direct = p.subst(LAM, &q).eval(&pt).unwrap();
        let mut composed = pt.clone();
        composed.insert(LAM, q.eval(&pt).unwrap());
        prop_assert_eq!(direct, p.eval(&composed).unwrap());
    }

    #[test]
    fn unitriangular_systems_solve_and_satisfy_their_rows(
        p in arb_poly(),
        b0 in arb_poly(),
        b1 in arb_poly(),
    ) {
        let m = vec![
            vec![Poly::one(), Poly::zero()],
            vec![p.clone(), Poly::one()],
        ];
        let b = [b0, b1];
        let x = solve_square_system(&m, &b).expect("unit determinant");
        for i in 0..2 {
            let lhs = m[i][0].mul(&x[0]).add(&m[i][1].mul(&x[1]));
            prop_assert_eq!(lhs, b[i].clone());
        }
    }

    #[test]
    fn random_systems_satisfy_their_rows_whenever_they_solve(
        es in prop::collection::vec(arb_poly(), 4),
        b in prop::collection::vec(arb_poly(), 2),
    ) {
        let m = vec![
            vec![es[0].clone(), es[1].clone()],
            vec![es[2].clone(), es[3].clone()],
        ];
        if let Ok(x) = solve_square_system(&m, &b) {
            for i in 0..2 {
                let lhs = m[i][0].mul(&x[0]).add(&m[i][1].mul(&x[1]));
                prop_assert_eq!(lhs, b[i].clone());
            }
        }
    }

    #[test]
    fn endo_composition_applies_in_sequence(
        e in arb_endo2(),
        f in arb_endo2(),
        x in arb_element2(),
    ) {
        prop_assert_eq!(e.compose(&f).apply(&x), e.apply(&f.apply(&x)));
    }

    #[test]
    fn endo_actions_on_distinct_legs_commute(
        t in arb_tensor3(),
        e in arb_endo2(),
        f in arb_endo2(),
    ) {
        let ab = t.apply_endo_leg(0, &e).apply_endo_leg(2, &f);
        let ba = t.apply_endo_leg(2, &f).apply_endo_leg(0, &e);
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn elimination_commutes_with_leg_actions(t in arb_tensor3(), e in arb_endo2()) {
        let combo = Poly::var(Var::Del(1))
            .add(&Poly::var(Var::Del(2)))
            .add(&Poly::var(Var::Del(3)))
            .neg();
        let ab = t.apply_endo_leg(1, &e).subst(LAM, &combo);
        let ba = t.subst(LAM, &combo).apply_endo_leg(1, &e);
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn skew_verdict_survives_transpose_negate_flip(w in arb_form2()) {
        let minus = Poly::var(LAM).neg();
        let n = w.rank();
        let flipped = BilinearForm {
            entries: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| w.entries[j][i].subst(LAM, &minus).neg())
                        .collect()
                })
                .collect(),
        };
        for ((_, a), (_, b)) in w.skew_residuals().iter().zip(flipped.skew_residuals().iter()) {
            prop_assert_eq!(a.clone(), b.neg());
        }
    }

    #[test]
    fn products_are_sesquilinear(
        t in arb_table2(),
        x in arb_element2(),
        y in arb_element2(),
    ) {
        let dx = x.scale(&Poly::var(DEL));
        let dy = y.scale(&Poly::var(DEL));
        let base = t.apply(&x, &y, LAM);
        prop_assert_eq!(t.apply(&dx, &y, LAM), base.scale(&Poly::var(LAM).neg()));
        prop_assert_eq!(
            t.apply(&x, &dy, LAM),
            base.scale(&Poly::var(LAM).add(&Poly::var(DEL)))
        );
    }

    #[test]
    fn shift_identities_hold_for_random_tables(t in arb_table2()) {
        let alg = Algebra {
            name: "rand".into(),
            module: FreeModule::new(vec!["e0".into(), "e1".into()]),
            table: t,
            alpha: Endo::identity(2),
            kind: Kind::LeftSymmetric,
        };
        prop_assert!(check_shift_identities(&alg).passes());
    }
}
