//! Exact symbolic workbench for Hom-Lie and Hom-left-symmetric conformal
//! algebras: finite free C[D]-modules with polynomial lambda-products, axiom
//! checks as polynomial identities, and the standard constructions (current
//! and sub-adjacent algebras, semidirect and bicrossed products, conformal
//! duals, cobrackets and their obstructions).
//!
//! Everything is computed over exact rationals; a check passes only when the
//! residual polynomial is identically zero.

pub mod bialgebra;
pub mod constructions;
pub mod gen;
pub mod lambda;
pub mod module;
pub mod par;
pub mod poly;
pub mod report;

pub use module::{BilinearForm, Element, Endo, FreeModule, Tensor};
pub use poly::{Poly, Rat, Var};
pub use report::{Check, Report, Residual};
