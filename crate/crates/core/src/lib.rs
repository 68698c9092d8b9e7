//! Spectra of the drift Laplacian `𝔏 = Δ − ⟨X, ∇·⟩` on model self-shrinkers
//! and Gaussian-weighted Euclidean domains, together with checks of the
//! universal eigenvalue inequalities and growth bounds satisfied by them.
//!
//! * [`model`]: closed-form spectra for spheres, flat space and cylinders.
//! * [`inequalities`]: the quadratic universal inequality and its companions.
//! * [`chengyang`]: recursion statistics, coefficient functions and bounds.
//! * [`dirichlet`]: finite-difference Dirichlet solver with Sturm bisection.
//! * [`verify`]: the consolidated verification report.

pub mod chengyang;
pub mod dirichlet;
pub mod error;
pub mod inequalities;
pub mod model;
pub mod spectrum;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use spectrum::{EigenvalueSequence, Level, ProblemKind, Provenance};
