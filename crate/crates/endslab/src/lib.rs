//! endslab: a simulation and verification lab for random walks on
//! infinitely-ended groups, their boundary metrics, and the dimension of
//! harmonic measure on the space of ends.
//!
//! The library is organized around free products with exact normal forms:
//! `group` provides the arithmetic and Cayley windows, `walk` the sampling
//! and exact convolution machinery with drift/entropy/growth estimators,
//! `metrics` the rescaled (Floyd) metric, end separation and the visual
//! ultrametric, `dimension` the ball-mass, box-counting, packing and
//! tree-dimension tooling, and `config`/`report` the experiment plumbing.

pub mod config;
pub mod dimension;
pub mod error;
pub mod group;
pub mod metrics;
pub mod report;
pub mod util;
pub mod walk;

pub use error::{Error, Result};
