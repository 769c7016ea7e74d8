//! Quantization-model loss curves, the Riemann zeta function, exponent
//! mappings, Elo conversions and exponent-correlation tables.

mod exponents;
mod quanta;
mod zeta;

use thiserror::Error;

use crate::zipfstats::ZipfError;

pub use exponents::{
    elo_to_gamma, exponent_correlation_dataset, gamma_to_elo, size_scaling_exponent, zipf_from_scaling_exponent,
    ExponentPair, ScalingSource, ELO_SCALE,
};
pub use quanta::{
    brute_force_quanta_loss, expected_loss_quanta, expected_loss_real, exponent_discrepancy, model_curve_report,
    BruteForceLoss, ExponentDiscrepancy, ModelCurveReport, QuantizationParams,
};
pub use zeta::{riemann_zeta, ZETA_TERMS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalingError {
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("the loss formula is degenerate at alpha = 1")]
    DegenerateAlpha,
    #[error("cutoff {cutoff} is below the required {needed}")]
    CutoffTooSmall { cutoff: u64, needed: u64 },
    #[error("need at least 2 runs, got {0}")]
    InsufficientRuns(usize),
    #[error("fit failed: {0}")]
    Fit(String),
}

impl From<ZipfError> for ScalingError {
    fn from(e: ZipfError) -> Self {
        ScalingError::Fit(e.to_string())
    }
}
