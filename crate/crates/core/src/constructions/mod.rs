//! Verified constructions: progressions, one-point extensions, base-power
//! digit sets, sets with prescribed `Δ`, and replayable recipes.

mod delta;
mod extension;
mod power;
mod progression;
mod recipe;
mod verify;

pub use delta::{
    check_odd_case, delta_case, delta_set, delta_set_with_bounds, odd_block_set, DeltaCase,
    OddCaseCheck, SearchBounds, BLOCK, PERIOD, RESIDUAL,
};
pub use extension::{extend, rsd_successors, Successor};
pub use power::{
    base_power, check_base_power, digit_expansion, find_gap_exponent, normalize, theorem1_witness,
    BasePowerCheck, BasePowerParams, GapProbe, Theorem1Report, Witness,
};
pub use progression::arithmetic_progression;
pub use recipe::{ConstructionRecipe, RecipeKind};
pub use verify::{
    lemma1_weak_hypothesis, verify_lemma, Counterexample, LemmaId, ResidualOutcome,
    VerificationReport, WeakHypothesisDiagnostic,
};
