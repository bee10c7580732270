//! Core calculus for belief functions and finite random sets.
//!
//! The crate provides, over finite frames of discernment:
//!
//! - mass functions, belief / plausibility / commonality transforms and
//!   Möbius inversion ([`frame`], [`mass`]);
//! - the usual combination and conditioning rules ([`combine`]);
//! - multivariate machinery: product frames, vacuous extension,
//!   marginalisation, refinings and conditional embedding ([`multivariate`]);
//! - belief likelihoods of repeated trials with their factorisation
//!   checkers ([`likelihood`]);
//! - generalised logistic regression with KKT verification ([`regression`]);
//! - the total-belief constructor, constraint systems and minimal-solution
//!   enumeration ([`total_belief`]);
//! - binary-frame combination geometry and geometric conditioning
//!   ([`geometry`]);
//! - generalised maximum-entropy classification ([`maxent`]);
//! - Monte Carlo checkers for the Bernoulli limit theorems ([`limits`]) and
//!   PAC sample-complexity simulation ([`pac`]).
//!
//! Everything is `no_std` + `alloc`; IO, file formats and the command-line
//! front end live in the companion `ranset-cli` crate.
//!
//! All types are immutable after construction and all operations are pure,
//! so values can be shared freely across threads.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod combine;
pub mod error;
pub mod frame;
pub mod geometry;
pub mod likelihood;
pub mod limits;
pub mod mass;
pub mod math;
pub mod maxent;
pub mod multivariate;
pub(crate) mod opt;
pub mod pac;
pub mod regression;
pub mod rng;
pub mod sampling;
pub mod total_belief;

pub use error::{Error, Result};
pub use frame::{Frame, SubsetMask};
pub use mass::{MassFunction, MoebiusInverse, SetFunction, SetFunctionKind};
pub use rng::Rng;
