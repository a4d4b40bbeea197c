#![allow(clippy::needless_range_loop)]

pub mod delta;
pub mod equivalence;
pub mod gf2;
pub mod graph;
pub mod isotropic;
pub mod matroid;
pub mod poly;
pub mod polynomials;
pub mod verify;
