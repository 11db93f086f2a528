//! Exact K-type tables and branching laws for cohomologically induced
//! modules of SL(4,ℝ) restricted to the symplectic subgroup Sp(4,ℝ) and to
//! GL(2,ℂ)-type subgroups.

pub mod branching;
pub mod catalog;
pub mod decomposer;
pub mod error;
pub mod matrix;
pub mod report;
pub mod weights;

pub use error::{Error, Result};
