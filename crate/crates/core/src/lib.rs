//! Secrecy-performance analysis for interference-limited multiuser networks.
//!
//! A base station serves the user whose signal-to-interference ratio ranks
//! k-th best among N, while a multi-antenna eavesdropper listens through
//! selection combining. This crate evaluates the secrecy outage probability,
//! the probability of strictly positive secrecy capacity and the ergodic
//! secrecy capacity of that link three independent ways:
//!
//! * [`analytic`] — closed-form and asymptotic expressions;
//! * [`oracle`] — adaptive quadrature of the defining integrals and a seeded
//!   Monte Carlo simulation of the physical model;
//! * [`specfun`] — the scalar special functions those closed forms need.
//!
//! Channel and selection parameters live in [`model`], together with the
//! exact and limiting distributions of the selected user's and the
//! eavesdropper's SIR.

// `!(x > 0.0)` guards are deliberate: unlike `x <= 0.0` they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod model;
pub mod oracle;
pub mod specfun;

mod quad;
#[cfg(test)]
pub(crate) mod simpson;

pub use error::{Error, Result};
pub use model::{ChannelParams, SecrecyTarget, SelectionConfig};
