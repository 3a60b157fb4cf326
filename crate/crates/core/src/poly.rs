//! Sparse multivariate polynomials over the rationals.
//!
//! Variables come from a fixed alphabet split into three disjoint classes:
//! lambda-parameters (`L`, `M`, `N`, ...), the D-variables standing for the
//! module operator on a value or on the legs of a tensor (`D`, `D1`, `D2`,
//! `D3`), and free scalar parameters. Monomials are kept in lexicographic
//! order with respect to the alphabet order, so equality of polynomials is
//! equality of their canonical term maps.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// A variable of the ambient alphabet. The derived `Ord` is the alphabet
/// order used by the lexicographic monomial order: lambda-parameters first,
/// then D-variables, then scalar parameters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// Lambda-parameter. 0..=5 print as L, M, N, H, T, W; higher indices are
    /// scratch parameters for intermediate expansions.
    Lam(u8),
    /// `Del(0)` is the D acting on a plain module value; `Del(k)` for k >= 1
    /// is the D of tensor leg k.
    Del(u8),
    /// Free scalar parameter, printed `c0`, `c1`, ...
    Param(u8),
}

pub const LAM: Var = Var::Lam(0);
pub const MU: Var = Var::Lam(1);
pub const NU: Var = Var::Lam(2);
pub const ETA: Var = Var::Lam(3);
pub const THETA: Var = Var::Lam(4);
pub const OMEGA: Var = Var::Lam(5);
pub const DEL: Var = Var::Del(0);

pub fn leg(k: usize) -> Var {
    Var::Del(k as u8 + 1)
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Lam(0) => write!(f, "L"),
            Var::Lam(1) => write!(f, "M"),
            Var::Lam(2) => write!(f, "N"),
            Var::Lam(3) => write!(f, "H"),
            Var::Lam(4) => write!(f, "T"),
            Var::Lam(5) => write!(f, "W"),
            Var::Lam(k) => write!(f, "L{k}"),
            Var::Del(0) => write!(f, "D"),
            Var::Del(k) => write!(f, "D{k}"),
            Var::Param(k) => write!(f, "c{k}"),
        }
    }
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(Var),
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("coefficient matrix is singular")]
    SingularMatrix,
    #[error("solution is not polynomial")]
    NoPolynomialSolution,
}

// ============================================================================
// Monomials
// ============================================================================

/// Exponent vector, sparse: sorted by variable, exponents nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<(Var, u32)>);

impl Mono {
    pub fn unit() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Mono(vec![(v, 1)])
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find_map(|&(w, e)| (w == v).then_some(e))
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    out.extend(a.by_ref().copied());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.by_ref().copied());
                    break;
                }
                (None, None) => break,
            }
        }
        Mono(out)
    }

    /// Componentwise divisibility of exponent vectors.
    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    fn div(&self, other: &Mono) -> Mono {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let r = e - other.exponent(v);
            if r > 0 {
                out.push((v, r));
            }
        }
        Mono(out)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    /// Lexicographic order over the alphabet order: the earliest variable
    /// with differing exponents decides, larger exponent first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }
}

// ============================================================================
// Polynomials
// ============================================================================

/// Sparse polynomial: canonical map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat_int(n))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(v), Rat::one());
        Poly { terms }
    }

    pub fn term(c: Rat, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::unit()))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Mono::unit()).cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.iter().map(|(v, _)| v));
        }
        out
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    fn insert(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes `replacement` for every occurrence of `v`. Single-target:
    /// composite eliminations are performed as a sequence of these, in the
    /// order the calling convention dictates.
    pub fn subst(&self, v: Var, replacement: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(replacement);
                powers.push(next);
            }
            let mut stripped = Vec::new();
            for (w, k) in m.iter() {
                if w != v {
                    stripped.push((w, k));
                }
            }
            let base = Poly::term(c.clone(), Mono(stripped));
            out = out.add(&base.mul(&powers[e]));
        }
        out
    }

    /// Exchanges two variables everywhere, simultaneously.
    pub fn swap_vars(&self, a: Var, b: Var) -> Poly {
        if a == b {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut exps: Vec<(Var, u32)> = Vec::with_capacity(m.0.len());
            for (v, e) in m.iter() {
                let w = if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                };
                exps.push((w, e));
            }
            exps.sort_by_key(|&(v, _)| v);
            out.insert(Mono(exps), c.clone());
        }
        out
    }

    /// Evaluates at a full assignment of every variable that occurs.
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Result<Rat, PolyError> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point.get(&v).ok_or(PolyError::MissingAssignment(v))?;
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division: `Some(q)` with `self = q * d` when the division leaves
    /// no remainder, `None` otherwise.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let t = Poly::term(rc / dc, rm.div(dm));
            q = q.add(&t);
            rem = rem.sub(&t.mul(d));
        }
        Some(q)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest monomial first so leading terms read naturally.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || m.total_degree() == 0;
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            let mut lead = !show_coeff;
            for (v, e) in m.iter() {
                if !lead {
                    write!(f, "*")?;
                }
                lead = false;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

/// Builds an affine combination `sum of c_i * v_i + k`; convenience for the
/// substitution targets that appear in eliminations.
pub fn affine(parts: &[(i64, Var)], k: i64) -> Poly {
    let mut out = Poly::int(k);
    for &(c, v) in parts {
        out = out.add(&Poly::var(v).scale(&rat_int(c)));
    }
    out
}

// ============================================================================
// Exact linear algebra
// ============================================================================

/// Determinant by fraction-free elimination; every division along the way is
/// exact by the Bareiss identity.
pub fn det(mat: &[Vec<Poly>]) -> Poly {
    let n = mat.len();
    if n == 0 {
        return Poly::one();
    }
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<Poly>> = mat.to_vec();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
        }
        for i in k + 1..n {
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Solves `M x = b` for a polynomial solution vector. The determinant is
/// computed fraction-free; each component must divide exactly, otherwise the
/// solution exists only over the fraction field and is rejected.
pub fn solve_square_system(mat: &[Vec<Poly>], b: &[Poly]) -> Result<Vec<Poly>, SolveError> {
    let n = mat.len();
    assert_eq!(b.len(), n, "system shape mismatch");
    let d = det(mat);
    if d.is_zero() {
        return Err(SolveError::SingularMatrix);
    }
    let mut xs = Vec::with_capacity(n);
    for col in 0..n {
        let mut m = mat.to_vec();
        for (row, bi) in b.iter().enumerate() {
            m[row][col] = bi.clone();
        }
        let dc = det(&m);
        let x = dc.div_exact(&d).ok_or(SolveError::NoPolynomialSolution)?;
        xs.push(x);
    }
    Ok(xs)
}
