//! Numerical laboratory for the random copolymer at a selective interface.
//!
//! A chain of `N` monomers carries IID charges `ω_n + h`. Its contacts with
//! the interface form a renewal process `τ` with inter-arrival law `K`, and
//! each excursion between contacts lies in water or oil with probability
//! one half. The polymer measure tilts a trajectory by
//! `exp(-2λ Σ_n Δ_n (ω_n + h))`, where `Δ_n = 1` when monomer `n` is in water.
//!
//! The crate is organised by capability:
//!
//! - [`model`]: disorder laws, inter-arrival laws and reproducible disorder
//!   sampling.
//! - [`partition`]: exact log-domain partition functions (constrained,
//!   free, windowed, annealed) and a brute-force enumeration oracle.
//! - [`estimators`]: Monte Carlo estimates over disorder of the free
//!   energy, the decay rate `μ`, fractional moments, and exact contact
//!   profiles.
//! - [`bounds`]: rigorous bounds on the critical curve `h_c(λ)`, including
//!   the fractional-moment threshold `h̄(λ)`.
//! - [`paths`]: exact trajectory sampling and path observables.
//! - [`experiments`]: configuration-driven experiment runners emitting CSV.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod logspace;
pub mod model;
pub mod partition;
pub mod paths;

pub use error::{Error, Result};
pub use model::{CopolymerParams, DisorderLaw, InterArrivalLaw, QuenchedSample};
