//! Exact noncommutative Riemannian geometry on finite groups.

pub mod linalg;
pub mod group;
pub mod calculus;
pub mod riemann;
pub mod dirac;
pub mod cohomology;
