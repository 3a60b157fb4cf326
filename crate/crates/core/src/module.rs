//! Finite free modules over the one-variable polynomial ring, together with
//! the value types that live in them: elements, endomorphisms, multilinear
//! tensors, and bilinear pairings.
//!
//! Coefficients are polynomials in `D` (the module operator) plus whatever
//! lambda-parameters an expansion has introduced; those parameters ride along
//! untouched through module operations and are resolved by the caller.

use crate::poly::{det, Poly, Var, DEL, LAM};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Basis bookkeeping for a finite free module: just the ordered labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub labels: Vec<String>,
}

impl FreeModule {
    pub fn new(labels: Vec<String>) -> Self {
        FreeModule { labels }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Basis of the conformal dual: same rank, primed labels.
    pub fn dual(&self) -> FreeModule {
        FreeModule {
            labels: self.labels.iter().map(|l| format!("{l}'")).collect(),
        }
    }

    /// Basis of a direct sum. Colliding labels get distinguishing prefixes so
    /// every summand element stays addressable by name.
    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let collision = self.labels.iter().any(|l| other.labels.contains(l));
        let mut labels = Vec::with_capacity(self.rank() + other.rank());
        if collision {
            labels.extend(self.labels.iter().map(|l| format!("A_{l}")));
            labels.extend(other.labels.iter().map(|l| format!("B_{l}")));
        } else {
            labels.extend(self.labels.iter().cloned());
            labels.extend(other.labels.iter().cloned());
        }
        FreeModule { labels }
    }
}

/// Module element as a coefficient vector over the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub coeffs: Vec<Poly>,
}

impl Element {
    pub fn zero(rank: usize) -> Self {
        Element {
            coeffs: vec![Poly::zero(); rank],
        }
    }

    pub fn basis(i: usize, rank: usize) -> Self {
        let mut e = Element::zero(rank);
        e.coeffs[i] = Poly::one();
        e
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.rank(), other.rank());
        Element {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(Poly::neg).collect(),
        }
    }

    pub fn scale(&self, p: &Poly) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Substitutes into every coefficient; this is how a pending parameter
    /// gets bound to its value.
    pub fn subst(&self, v: Var, replacement: &Poly) -> Element {
        Element {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.subst(v, replacement))
                .collect(),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.coeffs.iter().any(|c| c.contains_var(v))
    }

    /// Concatenation into a direct sum: `self` occupies the leading block.
    pub fn extend_right(&self, trailing_rank: usize) -> Element {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(std::iter::repeat_with(Poly::zero).take(trailing_rank));
        Element { coeffs }
    }

    pub fn extend_left(&self, leading_rank: usize) -> Element {
        let mut coeffs: Vec<Poly> = std::iter::repeat_with(Poly::zero).take(leading_rank).collect();
        coeffs.extend(self.coeffs.iter().cloned());
        Element { coeffs }
    }

    /// Projection onto a contiguous block of basis indices.
    pub fn block(&self, start: usize, len: usize) -> Element {
        Element {
            coeffs: self.coeffs[start..start + len].to_vec(),
        }
    }

    pub fn format(&self, module: &FreeModule) -> String {
        assert_eq!(self.rank(), module.rank());
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "({c})*{}", module.label(i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Endomorphism of a free module, `mat[i][j]` the coefficient of basis `i`
/// in the image of basis `j`; entries are polynomials in `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    pub mat: Vec<Vec<Poly>>,
}

impl Endo {
    pub fn identity(rank: usize) -> Self {
        let mut mat = vec![vec![Poly::zero(); rank]; rank];
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = Poly::one();
        }
        Endo { mat }
    }

    pub fn zero(rank: usize) -> Self {
        Endo {
            mat: vec![vec![Poly::zero(); rank]; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.mat.len()
    }

    pub fn apply(&self, x: &Element) -> Element {
        let n = self.rank();
        assert_eq!(x.rank(), n);
        let mut out = Element::zero(n);
        for i in 0..n {
            let mut acc = Poly::zero();
            for (j, xj) in x.coeffs.iter().enumerate() {
                if !xj.is_zero() && !self.mat[i][j].is_zero() {
                    acc = acc.add(&self.mat[i][j].mul(xj));
                }
            }
            out.coeffs[i] = acc;
        }
        out
    }

    pub fn column(&self, j: usize) -> Element {
        Element {
            coeffs: self.mat.iter().map(|row| row[j].clone()).collect(),
        }
    }

    pub fn compose(&self, inner: &Endo) -> Endo {
        let n = self.rank();
        assert_eq!(inner.rank(), n);
        let mut mat = vec![vec![Poly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero();
                for k in 0..n {
                    acc = acc.add(&self.mat[i][k].mul(&inner.mat[k][j]));
                }
                mat[i][j] = acc;
            }
        }
        Endo { mat }
    }

    /// Adjoint with respect to the conformal pairing of a module with its
    /// dual: transpose with `D` negated.
    pub fn conformal_dual(&self) -> Endo {
        let n = self.rank();
        let flip = Poly::var(DEL).neg();
        let mut mat = vec![vec![Poly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                mat[i][j] = self.mat[j][i].subst(DEL, &flip);
            }
        }
        Endo { mat }
    }

    /// Block-diagonal endomorphism of a direct sum.
    pub fn direct_sum(&self, other: &Endo) -> Endo {
        let (n, m) = (self.rank(), other.rank());
        let mut mat = vec![vec![Poly::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                mat[i][j] = self.mat[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                mat[n + i][n + j] = other.mat[i][j].clone();
            }
        }
        Endo { mat }
    }
}

/// Tensor with any number of legs. The coefficient of a basis tuple is a
/// polynomial in the leg operators `D1`, `D2`, ... (one per leg), plus any
/// pending parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub ranks: Vec<usize>,
    pub coeffs: BTreeMap<Vec<usize>, Poly>,
}

impl Tensor {
    pub fn zero(ranks: Vec<usize>) -> Self {
        Tensor {
            ranks,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn legs(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.coeffs.get(idx).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, idx: Vec<usize>, p: Poly) {
        if p.is_zero() {
            return;
        }
        debug_assert_eq!(idx.len(), self.legs());
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&p);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.ranks, other.ranks);
        let mut out = self.clone();
        for (idx, p) in &other.coeffs {
            out.add_term(idx.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            ranks: self.ranks.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, p: &Poly) -> Tensor {
        if p.is_zero() {
            return Tensor::zero(self.ranks.clone());
        }
        Tensor {
            ranks: self.ranks.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.mul(p)))
                .collect(),
        }
    }

    pub fn subst(&self, v: Var, replacement: &Poly) -> Tensor {
        let mut out = Tensor::zero(self.ranks.clone());
        for (idx, p) in &self.coeffs {
            out.add_term(idx.clone(), p.subst(v, replacement));
        }
        out
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.coeffs.values().any(|p| p.contains_var(v))
    }

    /// `u (x) v` with leg operators `D1`, `D2`.
    pub fn outer2(u: &Element, v: &Element) -> Tensor {
        let mut out = Tensor::zero(vec![u.rank(), v.rank()]);
        for (i, ui) in u.coeffs.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let ui = ui.subst(DEL, &Poly::var(Var::Del(1)));
            for (j, vj) in v.coeffs.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let vj = vj.subst(DEL, &Poly::var(Var::Del(2)));
                out.add_term(vec![i, j], ui.mul(&vj));
            }
        }
        out
    }

    /// Appends an element as a final leg; existing leg operators keep their
    /// numbering and the new leg takes the next one.
    pub fn append_leg(&self, e: &Element) -> Tensor {
        let new_leg = Poly::var(Var::Del(self.legs() as u8 + 1));
        let mut ranks = self.ranks.clone();
        ranks.push(e.rank());
        let mut out = Tensor::zero(ranks);
        for (idx, p) in &self.coeffs {
            for (k, ek) in e.coeffs.iter().enumerate() {
                if ek.is_zero() {
                    continue;
                }
                let mut idx2 = idx.clone();
                idx2.push(k);
                out.add_term(idx2, p.mul(&ek.subst(DEL, &new_leg)));
            }
        }
        out
    }

    /// Applies an endomorphism on one leg (0-based).
    pub fn apply_endo_leg(&self, leg_idx: usize, endo: &Endo) -> Tensor {
        assert_eq!(endo.rank(), self.ranks[leg_idx]);
        let leg_var = Poly::var(Var::Del(leg_idx as u8 + 1));
        let mut out = Tensor::zero(self.ranks.clone());
        for (idx, p) in &self.coeffs {
            let j = idx[leg_idx];
            for i in 0..endo.rank() {
                let a = &endo.mat[i][j];
                if a.is_zero() {
                    continue;
                }
                let mut idx2 = idx.clone();
                idx2[leg_idx] = i;
                out.add_term(idx2, p.mul(&a.subst(DEL, &leg_var)));
            }
        }
        out
    }

    /// Swaps two legs (0-based), exchanging both the basis indices and the
    /// corresponding leg operators in every coefficient.
    pub fn swap_legs(&self, a: usize, b: usize) -> Tensor {
        let (va, vb) = (Var::Del(a as u8 + 1), Var::Del(b as u8 + 1));
        let mut ranks = self.ranks.clone();
        ranks.swap(a, b);
        let mut out = Tensor::zero(ranks);
        for (idx, p) in &self.coeffs {
            let mut idx2 = idx.clone();
            idx2.swap(a, b);
            out.add_term(idx2, p.swap_vars(va, vb));
        }
        out
    }

    pub fn format(&self, modules: &[&FreeModule]) -> String {
        assert_eq!(modules.len(), self.legs());
        let mut out = String::new();
        for (idx, p) in &self.coeffs {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let labels: Vec<&str> = idx
                .iter()
                .zip(modules)
                .map(|(&i, m)| m.label(i))
                .collect();
            let _ = write!(out, "({p})*({})", labels.join(" x "));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Conformal bilinear pairing: `entries[i][j]` is the polynomial in the form
/// parameter `L` giving the pairing of basis `i` against basis `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub entries: Vec<Vec<Poly>>,
}

impl BilinearForm {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Evaluates the pairing of two values at a form parameter. The first
    /// slot's operator maps to minus the parameter, the second slot's to the
    /// parameter; any pending lambda-parameters in the values ride along.
    pub fn eval(&self, u: &Element, v: &Element, param: &Poly) -> Poly {
        let n = self.rank();
        assert_eq!(u.rank(), n);
        assert_eq!(v.rank(), n);
        let neg = param.neg();
        let mut acc = Poly::zero();
        for (i, ui) in u.coeffs.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let ui = ui.subst(DEL, &neg);
            for (j, vj) in v.coeffs.iter().enumerate() {
                if vj.is_zero() || self.entries[i][j].is_zero() {
                    continue;
                }
                let vj = vj.subst(DEL, param);
                let w = self.entries[i][j].subst(LAM, param);
                acc = acc.add(&ui.mul(&vj).mul(&w));
            }
        }
        acc
    }

    /// Residuals of the skew condition: pairing of (i, j) at `L` plus the
    /// pairing of (j, i) at `-L`, for every basis pair.
    pub fn skew_residuals(&self) -> Vec<((usize, usize), Poly)> {
        let n = self.rank();
        let minus = Poly::var(LAM).neg();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let r = self.entries[i][j].add(&self.entries[j][i].subst(LAM, &minus));
                out.push(((i, j), r));
            }
        }
        out
    }

    /// The pairing is nondegenerate when the matrix obtained by writing each
    /// entry as a polynomial in the module operator has a nonzero constant
    /// determinant, so that the induced map onto the dual is invertible.
    pub fn nondegenerate(&self) -> bool {
        let target = Poly::var(DEL).neg();
        let mat: Vec<Vec<Poly>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.subst(LAM, &target)).collect())
            .collect();
        match det(&mat).constant_value() {
            Some(c) => !c.is_zero(),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{affine, rat_int, MU};

    fn d() -> Poly {
        Poly::var(DEL)
    }

    #[test]
    fn endo_applies_columnwise() {
        // alpha(e0) = D*e1, alpha(e1) = e0
        let alpha = Endo {
            mat: vec![
                vec![Poly::zero(), Poly::one()],
                vec![d(), Poly::zero()],
            ],
        };
        let x = Element {
            coeffs: vec![Poly::int(2), Poly::zero()],
        };
        let y = alpha.apply(&x);
        assert_eq!(y.coeffs[0], Poly::zero());
        assert_eq!(y.coeffs[1], d().scale(&rat_int(2)));
        assert_eq!(alpha.column(1).coeffs[0], Poly::one());
    }

    #[test]
    fn conformal_dual_is_involutive() {
        let alpha = Endo {
            mat: vec![
                vec![d(), Poly::one()],
                vec![Poly::int(3), d().pow(2)],
            ],
        };
        assert_eq!(alpha.conformal_dual().conformal_dual(), alpha);
        assert_eq!(alpha.conformal_dual().mat[0][1], Poly::int(3));
        assert_eq!(alpha.conformal_dual().mat[1][0], Poly::one());
        assert_eq!(alpha.conformal_dual().mat[0][0], d().neg());
    }

    #[test]
    fn outer_product_uses_leg_operators() {
        let u = Element {
            coeffs: vec![d(), Poly::zero()],
        };
        let v = Element {
            coeffs: vec![Poly::zero(), Poly::one()],
        };
        let t = Tensor::outer2(&u, &v);
        assert_eq!(t.coeff(&[0, 1]), Poly::var(Var::Del(1)));
        assert_eq!(t.coeff(&[0, 0]), Poly::zero());
    }

    #[test]
    fn swap_legs_exchanges_operators() {
        let u = Element {
            coeffs: vec![d(), Poly::one()],
        };
        let v = Element {
            coeffs: vec![Poly::one(), Poly::zero()],
        };
        let t = Tensor::outer2(&u, &v);
        let s = t.swap_legs(0, 1);
        // coefficient of e0 (x) e0 in the swap is the old (0,0)... the old
        // (0,0) coefficient with D1 and D2 exchanged lands at (0,0).
        assert_eq!(s.coeff(&[0, 0]), Poly::var(Var::Del(2)));
        assert_eq!(s.coeff(&[0, 1]), Poly::one());
        assert_eq!(s.swap_legs(0, 1), t);
    }

    #[test]
    fn form_eval_resolves_slots() {
        // Pairing of basis with itself: entries[0][0] = L.
        let form = BilinearForm {
            entries: vec![vec![Poly::var(LAM)]],
        };
        // u = D*e0, v = e0, parameter M: u side contributes (-M), entry M.
        let u = Element { coeffs: vec![d()] };
        let v = Element {
            coeffs: vec![Poly::one()],
        };
        let got = form.eval(&u, &v, &Poly::var(MU));
        let m = Poly::var(MU);
        assert_eq!(got, m.neg().mul(&m));
    }

    #[test]
    fn constant_symplectic_block_is_nondegenerate_and_skew() {
        let form = BilinearForm {
            entries: vec![
                vec![Poly::zero(), Poly::one()],
                vec![Poly::int(-1), Poly::zero()],
            ],
        };
        assert!(form.nondegenerate());
        assert!(form.skew_residuals().iter().all(|(_, r)| r.is_zero()));
        let degenerate = BilinearForm {
            entries: vec![vec![affine(&[(1, LAM)], 0)]],
        };
        assert!(!degenerate.nondegenerate());
    }
}
