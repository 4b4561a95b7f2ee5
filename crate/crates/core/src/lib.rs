//! Stepanov-method machinery for bounding how often a polynomial map lands in
//! prescribed cosets of a multiplicative subgroup of `F_p^*`.
//!
//! The pipeline for one instance is:
//!
//! 1. [`oracle::enumerate_m`] scans `F_p` for the set
//!    `M = { x : f_i(x) ∈ g_i·Γ for all i }`.
//! 2. [`stepanov::compute_params`] picks `A, B_i, D` with exact integer roots
//!    and evaluates every hypothesis of the counting argument exactly.
//! 3. [`stepanov::build_linear_system`] and [`stepanov::solve_nullspace`]
//!    produce coefficients `λ_{a,b}` for the auxiliary polynomial
//!    `Ψ = Σ λ_{a,b} x^a ∏ f_i^{b_i t}`.
//! 4. [`stepanov::verify_certificate`] measures the vanishing order of `Ψ` at
//!    every element of `M'` by synthetic division, independent of how `Ψ` was
//!    built.
//!
//! [`bounds`] evaluates the closed-form constants and hypothesis windows with
//! big-integer arithmetic only; [`independence`] checks the Wronskian
//! argument behind the non-vanishing of `Ψ`; [`complexroots`] runs the
//! roots-of-unity analogue numerically.

pub mod bounds;
pub mod cli;
pub mod complexroots;
pub mod config;
mod error;
pub mod ffield;
pub mod independence;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod stepanov;
pub mod sweep;

pub use error::{Error, Result};
pub use ffield::{CosetSpec, FieldCtx, SubgroupSpec};
pub use poly::DensePoly;
pub use stepanov::{PolySystem, PsiCertificate, StepanovParams};
