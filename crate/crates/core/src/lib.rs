//! Jet schemes of affine varieties.
//!
//! A presentation `k[x_1..x_n]/(f_1..f_r)` is prolonged to level `m` by
//! substituting `x_j = x_j + x_j(1) t + ... + x_j(m) t^m` and collecting
//! the coefficients of `t^s` modulo `t^(m+1)`. The `groebner` and
//! `geometry` modules then answer questions about the resulting ideals
//! (dimension, singular locus, fibers, components, thin and fat arcs).

pub mod error;
pub mod geometry;
pub mod groebner;
pub mod jetcalc;
pub mod polyring;
pub mod text;
pub mod tseries;

pub use error::{Error, Result};
