//! Lambda-product expansion and the axiom checkers built on it.
//!
//! A product on a free module is stored as a table of structure coefficients:
//! `entries[i][j][k]` is the polynomial in `(L, D)` giving the coefficient of
//! output basis `k` in the product of basis `i` against basis `j` at
//! parameter `L`. Expanding a product of two values substitutes the
//! parameter into the left value's operator negatively and shifts the right
//! value's operator, which is exactly the sesquilinearity rule; any other
//! pending parameters in the values pass through untouched.
//!
//! Subscripts that mention the operator, like the one in the skew condition,
//! are bound at formation: the product is expanded with a scratch parameter
//! which is then substituted by the target expression, `D` meaning the
//! operator of the value just formed. Later consumption of that value
//! resolves the operator the usual way.

use crate::module::{Element, Endo, FreeModule, Tensor};
use crate::par::maybe_par_map;
use crate::poly::{affine, Poly, Rat, Var, DEL, LAM, MU};
use crate::report::{Check, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A lambda-variable not occurring in any of the given polynomials, used as
/// a scratch expansion parameter.
pub fn fresh_lam<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Var {
    let mut max = 5u8;
    for p in polys {
        for v in p.vars() {
            if let Var::Lam(k) = v {
                max = max.max(k);
            }
        }
    }
    Var::Lam(max + 1)
}

/// Structure coefficients of a bilinear lambda-operation. Rows index the
/// left argument's basis, columns the right argument's, and the innermost
/// index the output basis; entries are polynomials in `(L, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub entries: Vec<Vec<Vec<Poly>>>,
}

impl Table {
    pub fn zero(left: usize, right: usize, out: usize) -> Table {
        Table {
            entries: vec![vec![vec![Poly::zero(); out]; right]; left],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        let left = self.entries.len();
        let right = self.entries.first().map_or(0, Vec::len);
        let out = self
            .entries
            .first()
            .and_then(|r| r.first())
            .map_or(0, Vec::len);
        (left, right, out)
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.entries[i][j][k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        self.entries[i][j][k] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .flatten()
            .all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Table {
        Table {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|col| col.iter().map(&f).collect()).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Table) -> Table {
        assert_eq!(self.dims(), other.dims());
        let mut out = self.clone();
        for (i, row) in other.entries.iter().enumerate() {
            for (j, col) in row.iter().enumerate() {
                for (k, p) in col.iter().enumerate() {
                    out.entries[i][j][k] = out.entries[i][j][k].add(p);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Table) -> Table {
        self.add(&other.map(Poly::neg))
    }

    /// Expands the product of two values at a free parameter. The parameter
    /// must not already occur in either value.
    pub fn apply(&self, x: &Element, y: &Element, param: Var) -> Element {
        let (l, r, o) = self.dims();
        assert_eq!(x.rank(), l, "left argument rank mismatch");
        assert_eq!(y.rank(), r, "right argument rank mismatch");
        assert!(
            matches!(param, Var::Lam(_)),
            "expansion parameter must be a lambda-variable"
        );
        assert!(
            !x.contains_var(param) && !y.contains_var(param),
            "expansion parameter {param} already occurs in an argument"
        );
        let minus = Poly::var(param).neg();
        let shifted = affine(&[(1, param), (1, DEL)], 0);
        let pv = Poly::var(param);
        let mut out = Element::zero(o);
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let xi = xi.subst(DEL, &minus);
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let fac = xi.mul(&yj.subst(DEL, &shifted));
                for k in 0..o {
                    let p = &self.entries[i][j][k];
                    if p.is_zero() {
                        continue;
                    }
                    let p = if param == LAM {
                        p.clone()
                    } else {
                        p.subst(LAM, &pv)
                    };
                    out.coeffs[k] = out.coeffs[k].add(&fac.mul(&p));
                }
            }
        }
        out
    }

    /// Expands the product with the parameter bound to `target` at
    /// formation. `D` inside `target` refers to the operator of the value
    /// being formed.
    pub fn apply_at(&self, x: &Element, y: &Element, target: &Poly) -> Element {
        let scratch = fresh_lam(
            x.coeffs
                .iter()
                .chain(y.coeffs.iter())
                .chain(std::iter::once(target)),
        );
        self.apply(x, y, scratch).subst(scratch, target)
    }

    /// Applies `actor` at `param` on one leg (0-based) of a tensor, the
    /// other legs untouched. The leg's operator shifts by the parameter and
    /// the new leg value's operator takes the leg's place.
    pub fn act_on_tensor_leg(
        &self,
        t: &Tensor,
        leg_idx: usize,
        actor: &Element,
        param: Var,
    ) -> Tensor {
        let (l, r, o) = self.dims();
        assert_eq!(actor.rank(), l);
        assert_eq!(t.ranks[leg_idx], r);
        assert!(
            !t.contains_var(param),
            "expansion parameter {param} already occurs in the tensor"
        );
        let leg_var = Var::Del(leg_idx as u8 + 1);
        let leg_poly = Poly::var(leg_var);
        let shifted = affine(&[(1, param), (1, leg_var)], 0);
        let values: Vec<Element> = (0..r)
            .map(|j| self.apply(actor, &Element::basis(j, r), param))
            .collect();
        let mut ranks = t.ranks.clone();
        ranks[leg_idx] = o;
        let mut out = Tensor::zero(ranks);
        for (idx, c) in &t.coeffs {
            let j = idx[leg_idx];
            let shifted_c = c.subst(leg_var, &shifted);
            for (k, vk) in values[j].coeffs.iter().enumerate() {
                if vk.is_zero() {
                    continue;
                }
                let mut idx2 = idx.clone();
                idx2[leg_idx] = k;
                out.add_term(idx2, shifted_c.mul(&vk.subst(DEL, &leg_poly)));
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Lie,
    LeftSymmetric,
    Novikov,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Lie => "lie",
            Kind::LeftSymmetric => "left-symmetric",
            Kind::Novikov => "novikov",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        match s {
            "lie" => Some(Kind::Lie),
            "left-symmetric" => Some(Kind::LeftSymmetric),
            "novikov" => Some(Kind::Novikov),
            _ => None,
        }
    }

    /// The axioms an algebra of this kind must satisfy.
    pub fn axioms(self) -> &'static [Axiom] {
        match self {
            Kind::Lie => &[Axiom::Skew, Axiom::Jacobi, Axiom::Multiplicative],
            Kind::LeftSymmetric => &[Axiom::LeftSymmetry, Axiom::Multiplicative],
            Kind::Novikov => &[Axiom::LeftSymmetry, Axiom::Multiplicative, Axiom::Novikov],
        }
    }
}

/// An algebra structure on a free module: a product table and a twist
/// endomorphism, with the kind naming which axioms it claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    pub module: FreeModule,
    pub table: Table,
    pub alpha: Endo,
    pub kind: Kind,
}

impl Algebra {
    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(i, self.rank())
    }

    pub fn alpha_basis(&self, i: usize) -> Element {
        self.alpha.column(i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Axiom {
    Skew,
    Jacobi,
    LeftSymmetry,
    Novikov,
    Multiplicative,
    ShiftIdentities,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Skew,
        Axiom::Jacobi,
        Axiom::LeftSymmetry,
        Axiom::Novikov,
        Axiom::Multiplicative,
        Axiom::ShiftIdentities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Skew => "skew",
            Axiom::Jacobi => "jacobi",
            Axiom::LeftSymmetry => "left-symmetry",
            Axiom::Novikov => "novikov",
            Axiom::Multiplicative => "multiplicative",
            Axiom::ShiftIdentities => "shift-identities",
        }
    }

    pub fn from_name(s: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.name() == s)
    }
}

fn lam_plus_mu() -> Poly {
    affine(&[(1, LAM), (1, MU)], 0)
}

fn neg_lam_del() -> Poly {
    affine(&[(-1, LAM), (-1, DEL)], 0)
}

fn neg_mu_del() -> Poly {
    affine(&[(-1, MU), (-1, DEL)], 0)
}

fn push_components(check: &mut Check, module: &FreeModule, tuple: &[String], res: &Element) {
    for (k, p) in res.coeffs.iter().enumerate() {
        let mut t = tuple.to_vec();
        t.push(module.label(k).to_string());
        check.push(t, p.clone());
    }
}

/// Residual of the skew condition on a basis pair: the bracket plus the
/// reversed bracket with parameter bound to `-L-D`.
pub fn skew_residual(alg: &Algebra, i: usize, j: usize) -> Element {
    let a = alg.basis(i);
    let b = alg.basis(j);
    let fwd = alg.table.apply(&a, &b, LAM);
    let rev = alg.table.apply_at(&b, &a, &neg_lam_del());
    fwd.add(&rev)
}

/// Residual of the twisted Jacobi condition on a basis triple.
pub fn jacobi_residual(alg: &Algebra, i: usize, j: usize, k: usize) -> Element {
    let t = &alg.table;
    let lhs = t.apply(&alg.alpha_basis(i), &t.apply(&alg.basis(j), &alg.basis(k), MU), LAM);
    let r1 = t.apply_at(
        &t.apply(&alg.basis(i), &alg.basis(j), LAM),
        &alg.alpha_basis(k),
        &lam_plus_mu(),
    );
    let r2 = t.apply(&alg.alpha_basis(j), &t.apply(&alg.basis(i), &alg.basis(k), LAM), MU);
    lhs.sub(&r1).sub(&r2)
}

/// Residual of the left-symmetry condition on a basis triple: associator
/// difference minus its arguments-swapped twin.
pub fn left_symmetry_residual(alg: &Algebra, i: usize, j: usize, k: usize) -> Element {
    let t = &alg.table;
    let ac = alg.alpha_basis(k);
    let lhs1 = t.apply_at(&t.apply(&alg.basis(i), &alg.basis(j), LAM), &ac, &lam_plus_mu());
    let lhs2 = t.apply(&alg.alpha_basis(i), &t.apply(&alg.basis(j), &alg.basis(k), MU), LAM);
    let rhs1 = t.apply_at(&t.apply(&alg.basis(j), &alg.basis(i), MU), &ac, &lam_plus_mu());
    let rhs2 = t.apply(&alg.alpha_basis(j), &t.apply(&alg.basis(i), &alg.basis(k), LAM), MU);
    lhs1.sub(&lhs2).sub(&rhs1).add(&rhs2)
}

/// Residual of right-multiplication commutativity on a basis triple.
pub fn novikov_residual(alg: &Algebra, i: usize, j: usize, k: usize) -> Element {
    let t = &alg.table;
    let t1 = t.apply_at(
        &t.apply(&alg.basis(i), &alg.basis(j), LAM),
        &alg.alpha_basis(k),
        &lam_plus_mu(),
    );
    let t2 = t.apply_at(
        &t.apply(&alg.basis(i), &alg.basis(k), LAM),
        &alg.alpha_basis(j),
        &neg_mu_del(),
    );
    t1.sub(&t2)
}

/// Residual of the twist being an algebra map on a basis pair.
pub fn multiplicative_residual(alg: &Algebra, i: usize, j: usize) -> Element {
    let lhs = alg
        .alpha
        .apply(&alg.table.apply(&alg.basis(i), &alg.basis(j), LAM));
    let rhs = alg
        .table
        .apply(&alg.alpha_basis(i), &alg.alpha_basis(j), LAM);
    lhs.sub(&rhs)
}

pub fn check_skew(alg: &Algebra) -> Check {
    let n = alg.rank();
    let mut check = Check::new(&alg.name, Axiom::Skew.name());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let results = maybe_par_map(pairs.clone(), |(i, j)| skew_residual(alg, i, j));
    for ((i, j), res) in pairs.into_iter().zip(results) {
        let tuple = vec![
            alg.module.label(i).to_string(),
            alg.module.label(j).to_string(),
        ];
        push_components(&mut check, &alg.module, &tuple, &res);
    }
    check
}

fn ternary_check(
    alg: &Algebra,
    axiom: Axiom,
    f: impl Fn(&Algebra, usize, usize, usize) -> Element + Sync + Send,
) -> Check {
    let n = alg.rank();
    let mut check = Check::new(&alg.name, axiom.name());
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let results = maybe_par_map(triples.clone(), |(i, j, k)| f(alg, i, j, k));
    for ((i, j, k), res) in triples.into_iter().zip(results) {
        let tuple = vec![
            alg.module.label(i).to_string(),
            alg.module.label(j).to_string(),
            alg.module.label(k).to_string(),
        ];
        push_components(&mut check, &alg.module, &tuple, &res);
    }
    check
}

pub fn check_jacobi(alg: &Algebra) -> Check {
    ternary_check(alg, Axiom::Jacobi, jacobi_residual)
}

pub fn check_left_symmetry(alg: &Algebra) -> Check {
    ternary_check(alg, Axiom::LeftSymmetry, left_symmetry_residual)
}

pub fn check_novikov(alg: &Algebra) -> Check {
    ternary_check(alg, Axiom::Novikov, novikov_residual)
}

pub fn check_multiplicative(alg: &Algebra) -> Check {
    let n = alg.rank();
    let mut check = Check::new(&alg.name, Axiom::Multiplicative.name());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let results = maybe_par_map(pairs.clone(), |(i, j)| multiplicative_residual(alg, i, j));
    for ((i, j), res) in pairs.into_iter().zip(results) {
        let tuple = vec![
            alg.module.label(i).to_string(),
            alg.module.label(j).to_string(),
        ];
        push_components(&mut check, &alg.module, &tuple, &res);
    }
    check
}

/// Three identities relating subscripts that mention the operator to plain
/// parameters. They hold for any table at all, so this check validates the
/// binding convention itself; the mixed identity is compared against the
/// left-symmetry residual transported by the matching substitution, which is
/// what it reduces to.
pub fn check_shift_identities(alg: &Algebra) -> Check {
    let n = alg.rank();
    let t = &alg.table;
    let mut check = Check::new(&alg.name, Axiom::ShiftIdentities.name());
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let results = maybe_par_map(triples.clone(), |(i, j, k)| {
        let (a, b, c) = (alg.basis(i), alg.basis(j), alg.basis(k));
        let ac = alg.alpha_basis(k);

        // Bound-left-argument identity.
        let u = t.apply_at(&a, &b, &neg_lam_del());
        let left = t
            .apply_at(&u, &ac, &lam_plus_mu())
            .sub(&t.apply_at(&t.apply(&a, &b, MU), &ac, &lam_plus_mu()));

        // Bound-right-argument identity: formation-time binding against late
        // binding after consumption.
        let w = t.apply_at(&b, &c, &neg_lam_del());
        let early = t.apply(&alg.alpha_basis(i), &w, MU);
        let w_free = t.apply(&b, &c, Var::Lam(2));
        let late = t
            .apply(&alg.alpha_basis(i), &w_free, MU)
            .subst(Var::Lam(2), &affine(&[(-1, LAM), (-1, MU), (-1, DEL)], 0));
        let right = early.sub(&late);

        // Mixed identity: its two sides differ by exactly the left-symmetry
        // residual with the second parameter bound to -L-M-D.
        let m1 = t.apply_at(&t.apply(&a, &b, LAM), &ac, &neg_mu_del());
        let m2 = t.apply(&alg.alpha_basis(i), &t.apply_at(&b, &c, &neg_mu_del()), LAM);
        let m3 = t.apply_at(&t.apply_at(&b, &a, &neg_lam_del()), &ac, &neg_mu_del());
        let m4 = t.apply_at(
            &alg.alpha_basis(j),
            &t.apply(&a, &c, LAM),
            &affine(&[(-1, MU), (-1, DEL), (-1, LAM)], 0),
        );
        let transported = left_symmetry_residual(alg, i, j, k)
            .subst(MU, &affine(&[(-1, LAM), (-1, MU), (-1, DEL)], 0));
        let mixed = m1.sub(&m2).sub(&m3).add(&m4).sub(&transported);

        (left, right, mixed)
    });
    for ((i, j, k), (left, right, mixed)) in triples.into_iter().zip(results) {
        for (family, res) in [
            ("left-shift", &left),
            ("right-shift", &right),
            ("mixed-shift", &mixed),
        ] {
            let tuple = vec![
                family.to_string(),
                alg.module.label(i).to_string(),
                alg.module.label(j).to_string(),
                alg.module.label(k).to_string(),
            ];
            push_components(&mut check, &alg.module, &tuple, res);
        }
    }
    check
}

pub fn check_axiom(alg: &Algebra, axiom: Axiom) -> Check {
    match axiom {
        Axiom::Skew => check_skew(alg),
        Axiom::Jacobi => check_jacobi(alg),
        Axiom::LeftSymmetry => check_left_symmetry(alg),
        Axiom::Novikov => check_novikov(alg),
        Axiom::Multiplicative => check_multiplicative(alg),
        Axiom::ShiftIdentities => check_shift_identities(alg),
    }
}

/// Runs every axiom the algebra's kind requires.
pub fn certify(alg: &Algebra) -> Report {
    let mut report = Report::new();
    for &axiom in alg.kind.axioms() {
        report.push(check_axiom(alg, axiom));
    }
    report
}

// ============================================================================
// Numeric route
// ============================================================================
//
// The same axioms evaluated at random rational points, with every parameter
// shift propagated by hand into plain table-entry evaluations. This path
// shares nothing with the symbolic expansion above except `Poly::eval`, so
// agreement between the two is meaningful evidence.

#[derive(Clone, Debug)]
pub struct OracleSample {
    pub axiom: Axiom,
    pub tuple: Vec<String>,
    pub point: Vec<(Var, Rat)>,
    pub value: Rat,
}

impl OracleSample {
    pub fn passes(&self) -> bool {
        use num_traits::Zero;
        self.value.is_zero()
    }

    pub fn point_map(&self) -> BTreeMap<Var, Rat> {
        self.point.iter().cloned().collect()
    }
}

struct NumericCtx<'a> {
    alg: &'a Algebra,
    params: BTreeMap<Var, Rat>,
}

impl NumericCtx<'_> {
    fn table(&self, i: usize, j: usize, k: usize, lam: &Rat, del: &Rat) -> Rat {
        let mut pt = self.params.clone();
        pt.insert(LAM, lam.clone());
        pt.insert(DEL, del.clone());
        self.alg.table.entries[i][j][k]
            .eval(&pt)
            .expect("numeric point assigns every variable")
    }

    fn alpha(&self, i: usize, j: usize, del: &Rat) -> Rat {
        let mut pt = self.params.clone();
        pt.insert(DEL, del.clone());
        self.alg.alpha.mat[i][j]
            .eval(&pt)
            .expect("numeric point assigns every variable")
    }
}

fn numeric_binary(
    ctx: &NumericCtx,
    axiom: Axiom,
    i: usize,
    j: usize,
    t: usize,
    l: &Rat,
    d: &Rat,
) -> Rat {
    use num_traits::Zero;
    let n = ctx.alg.rank();
    match axiom {
        Axiom::Skew => ctx.table(i, j, t, l, d) + ctx.table(j, i, t, &(-l - d), d),
        Axiom::Multiplicative => {
            let mut lhs = Rat::zero();
            for w in 0..n {
                lhs += ctx.table(i, j, w, l, d) * ctx.alpha(t, w, d);
            }
            let mut rhs = Rat::zero();
            for ip in 0..n {
                for jp in 0..n {
                    rhs += ctx.alpha(ip, i, &(-l.clone()))
                        * ctx.alpha(jp, j, &(l + d))
                        * ctx.table(ip, jp, t, l, d);
                }
            }
            lhs - rhs
        }
        _ => unreachable!("not a binary axiom"),
    }
}

fn numeric_ternary(
    ctx: &NumericCtx,
    axiom: Axiom,
    idx: (usize, usize, usize, usize),
    l: &Rat,
    m: &Rat,
    d: &Rat,
) -> Rat {
    use num_traits::Zero;
    let (i, j, k, t) = idx;
    let n = ctx.alg.rank();
    // Inner product of (x, y) at its own parameter, consumed as a left
    // argument at l+m against the twisted third slot; component t.
    let outer_left = |x: usize, y: usize, lx: &Rat| {
        let mut acc = Rat::zero();
        for w in 0..n {
            let inner = ctx.table(x, y, w, lx, &(-l - m));
            if inner.is_zero() {
                continue;
            }
            for kp in 0..n {
                acc += inner.clone()
                    * ctx.alpha(kp, k, &(l + m + d))
                    * ctx.table(w, kp, t, &(l + m), d);
            }
        }
        acc
    };
    // Twisted slot x at lx acting on the inner product of (y, k) at linner.
    let outer_right = |x: usize, y: usize, lx: &Rat, linner: &Rat| {
        let mut acc = Rat::zero();
        for xp in 0..n {
            let a = ctx.alpha(xp, x, &(-lx.clone()));
            if a.is_zero() {
                continue;
            }
            for w in 0..n {
                acc += a.clone()
                    * ctx.table(y, k, w, linner, &(lx + d))
                    * ctx.table(xp, w, t, lx, d);
            }
        }
        acc
    };
    match axiom {
        Axiom::Jacobi => {
            outer_right(i, j, l, m) - outer_left(i, j, l) - outer_right(j, i, m, l)
        }
        Axiom::LeftSymmetry => {
            outer_left(i, j, l) - outer_right(i, j, l, m) - outer_left(j, i, m)
                + outer_right(j, i, m, l)
        }
        Axiom::Novikov => {
            let mut t2 = Rat::zero();
            for w in 0..n {
                for jp in 0..n {
                    t2 += ctx.table(i, k, w, l, &(m + d))
                        * ctx.alpha(jp, j, &(-m.clone()))
                        * ctx.table(w, jp, t, &(-m - d), d);
                }
            }
            outer_left(i, j, l) - t2
        }
        _ => unreachable!("not a ternary axiom"),
    }
}

/// Evaluates an axiom's residual at `count` random rational points per basis
/// tuple. Scalar parameters occurring in the tables are sampled too. The
/// shift-identity families have no numeric route; asking for them yields no
/// samples.
pub fn oracle_samples(alg: &Algebra, axiom: Axiom, count: usize, seed: u64) -> Vec<OracleSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alg.rank();
    let mut free_params: Vec<Var> = Vec::new();
    for p in alg
        .table
        .entries
        .iter()
        .flatten()
        .flatten()
        .chain(alg.alpha.mat.iter().flatten())
    {
        for v in p.vars() {
            if matches!(v, Var::Param(_)) && !free_params.contains(&v) {
                free_params.push(v);
            }
        }
    }
    let draw = |rng: &mut ChaCha8Rng| Rat::from(num_bigint::BigInt::from(rng.gen_range(-99i64..=99)));
    let mut out = Vec::new();
    for _ in 0..count {
        let l = draw(&mut rng);
        let m = draw(&mut rng);
        let d = draw(&mut rng);
        let mut params = BTreeMap::new();
        for &v in &free_params {
            params.insert(v, draw(&mut rng));
        }
        let ctx = NumericCtx { alg, params };
        let mut point = vec![(LAM, l.clone()), (MU, m.clone()), (DEL, d.clone())];
        point.extend(ctx.params.iter().map(|(&v, r)| (v, r.clone())));
        match axiom {
            Axiom::Skew | Axiom::Multiplicative => {
                for i in 0..n {
                    for j in 0..n {
                        for t in 0..n {
                            let value = numeric_binary(&ctx, axiom, i, j, t, &l, &d);
                            out.push(OracleSample {
                                axiom,
                                tuple: vec![
                                    alg.module.label(i).to_string(),
                                    alg.module.label(j).to_string(),
                                    alg.module.label(t).to_string(),
                                ],
                                point: point.clone(),
                                value,
                            });
                        }
                    }
                }
            }
            Axiom::Jacobi | Axiom::LeftSymmetry | Axiom::Novikov => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for t in 0..n {
                                let value =
                                    numeric_ternary(&ctx, axiom, (i, j, k, t), &l, &m, &d);
                                out.push(OracleSample {
                                    axiom,
                                    tuple: vec![
                                        alg.module.label(i).to_string(),
                                        alg.module.label(j).to_string(),
                                        alg.module.label(k).to_string(),
                                        alg.module.label(t).to_string(),
                                    ],
                                    point: point.clone(),
                                    value,
                                });
                            }
                        }
                    }
                }
            }
            Axiom::ShiftIdentities => {}
        }
    }
    out
}

/// Scratch helper for tests and fixtures: a rank-1 algebra from a single
/// structure polynomial and scalar twist.
pub fn rank_one(name: &str, label: &str, p: Poly, twist: i64, kind: Kind) -> Algebra {
    Algebra {
        name: name.to_string(),
        module: FreeModule::new(vec![label.to_string()]),
        table: Table {
            entries: vec![vec![vec![p]]],
        },
        alpha: Endo {
            mat: vec![vec![Poly::int(twist)]],
        },
        kind,
    }
}

/// The rank-1 bracket `(D + 2L)` on one generator with identity twist.
pub fn witt_bracket(name: &str) -> Algebra {
    rank_one(name, "L", affine(&[(2, LAM), (1, DEL)], 0), 1, Kind::Lie)
}
