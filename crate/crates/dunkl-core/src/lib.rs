//! Numerical toolkit for one-dimensional Dunkl analysis and the convex
//! geometry of finite reflection groups.
//!
//! The crate has three layers:
//!
//! * analysis on the line — normalized Bessel functions ([`specfun`]), the
//!   Dunkl kernel, weight, transform and inverse ([`dunkl1d`]), and the
//!   explicit signed translation kernel with its sharp total-variation
//!   constant ([`translate1d`]);
//! * reflection-group geometry — group generation, dominance order, orbit
//!   hulls, polar sets, gauges, and translation-support predicates
//!   ([`rootgeom`]);
//! * product-case and verification tools — tensor translations in dimension
//!   N for Z_2^N ([`productnd`]) and numerical decay checks of exponential
//!   type against gauges ([`pwverify`]).
//!
//! Everything is plain-value and side-effect free; grid sweeps are
//! independent maps (parallelized with rayon under the default `parallel`
//! feature).

pub mod dunkl1d;
pub mod error;
pub mod grid;
pub mod productnd;
pub mod pwverify;
pub mod quad;
pub mod rootgeom;
pub mod specfun;
pub mod translate1d;

pub use error::{DunklError, Result};
pub use grid::{Grid1D, SampledFunction};
pub use quad::{QuadScheme, QuadratureRule};
