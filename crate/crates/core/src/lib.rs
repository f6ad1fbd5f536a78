//! Exact generating functions for alternating link and tangle diagrams.
//!
//! The quartic one-matrix model and its two-point renormalization give the
//! diagram counts in closed form ([`onematrix`]); the skeleton calculus in
//! [`flype`] turns them into counts of flype classes; [`oracle`] enumerates
//! Wick pairings on fat graphs to check every coefficient independently;
//! [`census`] and [`abab`] assemble sequences and growth constants.

pub mod abab;
pub mod census;
pub mod flype;
pub mod numeric;
pub mod onematrix;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod series;

pub use poly::{BiPoly, Poly};
pub use rational::Q;
pub use series::{AlgebraicSystem, Series, SeriesError};
