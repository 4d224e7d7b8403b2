//! Truncated Fock-space engine for the three-mode squeezed family and
//! pseudospin measurements.
//!
//! Two complementary representations are used. Dense simplex tensors hold
//! every amplitude up to a total-photon cutoff and support direct operator
//! application; they power oracle checks and moderate squeezing. Closed-form
//! shell streaming evaluates norms, pair correlators, and residuals without
//! materializing amplitudes, which is what makes large squeezing (cutoffs in
//! the thousands) tractable.

mod correlator;
mod optimize;
mod shells;
mod state;
mod tensor;

pub use correlator::{
    correlation, correlation_via_operators, svetlichny_fixed_settings, svetlichny_pseudospin,
    PseudospinSetting, PseudospinSettingSet,
};
pub use optimize::{optimize_from_correlators, optimize_pseudospin_settings, PseudospinOptimum};
pub use shells::{elementary_from_squeezing, residual_norm, shell_term_f, ElementaryCorrelators};
pub use state::{
    cutoff_for_tail, ghz_state_fock, tail_deficit, TruncatedTripartiteState, TAIL_TOLERANCE,
};
pub use tensor::{apply_pseudospin, FockTensor, Mode};
