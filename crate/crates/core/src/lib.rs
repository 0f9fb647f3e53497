//! Spectral and wave-kernel numerics on the flat Euclidean cone C(S¹_ρ).

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cluster_kernel;
pub mod cone_geom;
pub mod dd;
pub mod error;
pub mod phase_lab;
pub mod quadrature;
pub mod special_fn;
pub mod spectrum;
pub mod wave_kernel;

pub use error::{Error, Result};
