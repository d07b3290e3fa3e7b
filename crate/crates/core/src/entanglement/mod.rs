//! Concurrence and entanglement of formation, both for general two-qubit
//! states and for the vacuum-dressed atom pair.

mod dressed;
mod qubit;

pub use dressed::{
    amplitude_c_ee, c1_c2, c1_c2_from_amplitudes, concurrence_far, concurrence_full,
    concurrence_near, cross_coherence, effective_density_matrix, ConcurrenceResult, LocalTerms,
    Regime, C1C2,
};
pub use qubit::{
    entanglement_of_formation, palma_concurrence, palma_terms, wootters_concurrence,
    wootters_concurrence_dense, x_state_concurrence, SpinCorrelators, TwoQubitState,
};
