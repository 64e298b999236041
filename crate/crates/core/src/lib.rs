//! Exact symbolic computation for the half-lattice vertex algebra
//! `V = M(1) ⊗ C[L_C]`, its modules `V_{λ,W}`, the associative algebras
//! `B` and `A` with the module family `M_ω`, and the Zhu algebra `A(V)`.
//!
//! All arithmetic is over the rationals. Formal series are never
//! materialized; every identity is checked through finitely many exact
//! coefficient extractions.

pub mod assoc;
pub mod bridge;
pub mod checks;
pub mod config;
pub mod error;
pub mod fock;
pub mod json;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod probes;
pub mod rational;
pub mod suites;
pub mod vertex;
pub mod zhu;

pub use error::{Error, Result};
pub use lattice::{Charge, LatticeConfig, LatticeVector};
pub use laurent::LaurentPoly;
pub use rational::Rational;
