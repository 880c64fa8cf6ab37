//! Profitability analysis of double-spend attacks on proof-of-work blockchains.
//!
//! An attacker with relative hashrate `q < 1/2` pre-mines one block, pays a
//! merchant who waits for `z` confirmations, and then races the honest chain,
//! abandoning the attempt once it falls `A` blocks behind. This crate provides:
//!
//! - exact closed forms for the per-cycle success probability, expected
//!   revenue, and expected duration of that strategy ([`model`]);
//! - the special-function substrate those closed forms are built on
//!   ([`specfun`]) and the underlying biased-random-walk formulas ([`walks`]);
//! - an independent discrete-event Monte Carlo simulator ([`simulator`]);
//! - decision utilities: the minimal double-spend value that makes the attack
//!   profitable, the revenue-maximizing give-up threshold, and the minimal
//!   number of confirmations that keeps a merchant safe ([`decision`]).
//!
//! Revenue is expressed in units of the coinbase reward `b` and time in units
//! of the mean interblock time `τ₀`, so every reported quantity is
//! dimensionless; `b` and `τ₀` are carried only for display.
//!
//! Every long closed form is evaluated twice, through algebraically
//! independent routes, and any disagreement beyond the numerical error budget
//! is reported as an [`Error::Integrity`] instead of being returned silently.

pub mod decision;
pub mod error;
pub mod model;
mod numeric;
pub mod simulator;
pub mod specfun;
pub mod tolerances;
pub mod walks;

pub use error::{Error, Result};
pub use model::{AttackParams, ClosedFormReport};
pub use simulator::{CycleOutcome, MonteCarloEstimate, SimConfig};
pub use walks::{NegBinParams, WalkSpec};
