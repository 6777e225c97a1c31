//! Boundary behaviour of hyperbolic Riemann surfaces through their universal cover.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arc;
pub mod cli;
pub mod covering;
pub mod disk;
pub mod domain;
pub mod exhaustion;
pub mod group;
pub mod harmonic;
pub mod moebius;
pub mod prime_ends;
pub mod render;
