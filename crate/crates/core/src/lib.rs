//! Exact enumeration and asymptotic verification for large-scale rook
//! placements on (dilated) Young diagrams.
//!
//! The crate is organized around the growth model `log #placements =
//! N log N + B·N + (1/2) log N + D + o(1)` for boards obtained by dilating
//! the region under a weakly decreasing piecewise linear profile:
//!
//! * [`partitions`] — boards, exact counts, dilation, brute-force oracles;
//! * [`plfn`] — the admissible profile classes, lofts, and discretization;
//! * [`combinatorics`] — grid profiles, drop tuples, lattice-path
//!   bijections, waterfalls;
//! * [`asymptotics`] — the coefficients `B` and `D` in closed form, range
//!   bounds, residual harnesses;
//! * [`random`] — exact marginals and a uniform placement sampler;
//! * [`xray`] — cumulative X-rays, exact limit-shape curves, moment
//!   identities, Monte Carlo deviation experiments;
//! * [`suite`] — the self-verification suite driven by the `verify` CLI
//!   subcommand and the `acceptance` test target.

pub mod asymptotics;
pub mod combinatorics;
mod error;
pub mod partitions;
pub mod plfn;
pub mod random;
pub mod ratio;
pub mod suite;
pub mod xray;

pub use error::{Error, Result};
pub use partitions::{Partition, RookPlacement};
pub use plfn::{CombinatorialFn, ExactPlf, FloatPlf, PiecewiseLinearFn};
