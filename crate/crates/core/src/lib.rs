//! Rotation errors of N two-level atoms driven by a single quantized
//! (coherent or squeezed) field mode.
//!
//! The crate computes the gate error of a collective rotation
//! `exp(-i Jx theta)` implemented by a Tavis–Cummings interaction with a
//! displaced field, both exactly (joint atom-field evolution) and from a
//! second-order expansion in `1/alpha`, together with the closed-form
//! predictions for cat states, Haar-random ensembles and optimized
//! squeezing or interaction time.

pub mod cli;
pub mod dynamics;
pub mod ensemble;
pub mod error;
pub mod formulas;
pub mod krylov;
pub mod perturbation;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};
