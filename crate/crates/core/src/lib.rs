//! Matrix representations of `U_q[sl(n+1|m)]` on its Fock modules.
//!
//! The Jacobson generators `H_i`, `a_i^±` and the remaining Cartan-Weyl
//! elements are built as sparse matrices on occupation-vector bases. Every
//! defining relation can then be checked as a finite matrix identity.
//! Oscillator realizations (Dyson and Holstein-Primakoff) and a small
//! exclusion-statistics toolkit sit on top.

pub mod error;
pub mod export;
pub mod fock;
pub mod operator;
pub mod oscillator;
pub mod qnum;
pub mod rep;
pub mod report;
pub mod sparse;
pub mod stats;

pub use error::{Error, Result};
pub use fock::{dimension, enumerate_basis, grading_data, FockBasis, ModeSignature, OccupationVector};
pub use num_complex::Complex64;
pub use operator::{supercommutator, GradedOperator, Parity};
pub use qnum::{q_bracket, q_factorial, q_int_power, QMode, QParameter};
pub use rep::{GeneratorFamily, Jacobson, Normalization, RepContext};
pub use report::RelationReport;
pub use sparse::SparseMatrix;
