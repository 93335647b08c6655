//! Exact stability and equilibrium analysis for strategic network formation
//! under mutual consent.
//!
//! Networks on up to eight players are bitmasks over lexicographically indexed
//! links; all payoffs are exact rationals. Every predicate is decided by
//! exhaustive enumeration, so results are certificates rather than estimates.

pub mod classify;
pub mod consent;
pub mod correlated;
pub mod dot;
pub mod error;
pub mod game;
pub mod model;
pub mod network;
pub mod payoff;
pub mod potentials;
pub mod random;
pub mod rational;
pub mod report;
pub mod stability;
pub mod trade;
pub mod trust;
pub mod verify;

pub use error::{Error, Result};
pub use network::{Limits, Link, Network, PlayerSet};
pub use payoff::{CostStructure, NetworkPayoff};
pub use rational::Rational;
