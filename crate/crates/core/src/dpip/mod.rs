// SPDX-License-Identifier: Apache-2.0

//! Principality decisions from Hilbert class field advice.

mod advice;
mod decide;

pub use advice::{AdviceBundle, AdviceFile, PrimeFile, Subfield, SubfieldFile};
pub use decide::{
    conjectural_bound, general_ideal_dpip, prime_ideal_dpip, sample_switch, trial_rng, Decision,
    Reason, SwitchConfig, Switcher, Verdict,
};
