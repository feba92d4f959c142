//! Exact finite-field polynomial algebra over P_q(n) = F_q[X]/(X^q - X),
//! Reed-Muller codes, the extended Schwartz-Zippel degree-drop machinery
//! and multiplication-based low-degree tests, with exhaustive oracles and
//! seeded Monte Carlo estimators.

pub mod algebra;
pub mod battery;
pub mod combin;
pub mod enumerate;
pub mod error;
pub mod estimator;
pub mod genbasis;
pub mod linalg;
pub mod multtests;
pub mod report;
pub mod rmcode;
pub mod setmultilin;
pub mod sztest;

pub use error::{Error, Result};
