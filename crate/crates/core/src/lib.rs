//! Point spectrum of the three-dimensional Rashba Hamiltonian
//! `-Δ + iα(∇₁σ₂ − ∇₂σ₁) + βσ₃` perturbed by a rank-two contact interaction.
//!
//! Eigenvalues are the real zeros of `det(Γ − Q(E))`, where Γ is the 2×2
//! Hermitian coupling and Q the Krein matrix built from closed-form values
//! of the free Green function at the origin.

// `!(x < y)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod extension;
pub mod greens;
pub mod hermitian;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod perturbation;
pub mod quadrature;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use hermitian::Hermitian2;
pub use model::{Spin, SystemParams};
