//! Exact computer algebra for Hopf algebras and their finite duals.

pub mod scalars;
pub mod exactla;
pub mod construct;
pub mod hopf;
pub mod orbits;
pub mod based;
pub mod families;
pub mod suites;
