//! Oscillator algebra `W(n|m)` on truncated Fock spaces and the Dyson and
//! Holstein-Primakoff realizations.

mod checks;
mod realization;
mod space;

pub use checks::{
    adjoint_deviation, check_deformed_relations, check_equivalence, check_homomorphism, check_oscillator_relations,
    compare_realizations, fermionic_exponential_residual, invariant_subspace_check, structurally_connected,
    transition_consistency,
};
pub use realization::{Generator, RealizationKind, RealizationMap};
pub use space::{OscFockSpace, OscNormalization, Oscillator, SqrtBranch};
