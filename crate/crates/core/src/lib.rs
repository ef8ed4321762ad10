//! Numerical laboratory for the contraction of SL(n,R) onto its motion group.
//!
//! The crate provides dense small-matrix Lie primitives (`mat`), the
//! interpolating group family G_t on K x p (`deform`), the motion-group dual
//! bookkeeping and operators (`motion`), compact-picture and wave
//! realizations of spherical principal series (`principal`), and the
//! disk-model realization of discrete series with its zoom contraction
//! (`discrete`). Everything is desk-scale and deterministic.

pub mod basis;
pub mod deform;
pub mod discrete;
pub mod mat;
pub mod motion;
pub mod principal;
pub mod report;
pub mod sample;
pub mod so2;
pub mod spline;
