//! Nonlinear reconstructions from cell averages.

mod blend;
mod schemes;
mod validate;

pub use blend::{
    cweno_blend, cwenoz_ao_blend, cwenoz_blend, BlendParams, Blended, Candidate, CandidateSet,
    MAX_CANDIDATES,
};
pub use schemes::{
    cwz753, weno_ao753, weno_ao753_with, ReconstructionConfig, Reconstructor, Scheme, WaoVariant,
    DELTA_CAP, EPS_FLOOR,
};
pub use validate::{
    validate_cwz753, validate_parameters, Case, Condition, NcpRow, ValidationReport, CWZ753_THETA,
};

/// Work counters. Keep one per thread and [`merge`](Counters::merge) them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    pub reconstructions: u64,
    pub indicators: u64,
    pub weight_sets: u64,
}

impl Counters {
    pub fn merge(&mut self, other: &Counters) {
        self.reconstructions += other.reconstructions;
        self.indicators += other.indicators;
        self.weight_sets += other.weight_sets;
    }

    /// Weight normalizations per reconstruction.
    pub fn weight_sets_per_reconstruction(&self) -> f64 {
        if self.reconstructions == 0 {
            0.0
        } else {
            self.weight_sets as f64 / self.reconstructions as f64
        }
    }
}
