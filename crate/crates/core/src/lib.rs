pub mod coeffs;
pub mod error;
pub mod polyalg;
pub mod algebra;
pub mod geometry;
pub mod mirror;
pub mod cli;
