//! Norms and the weighted Hilbert scale `H_{±p}`.

mod norms;
mod series;
mod vage;
mod weights;

pub use norms::{h_norm, log_h_norm, p_norm};
pub use series::{exp_coefficients, geometric_coefficients, power_series_apply, PowerSeriesOutcome};
pub use vage::{
    check_vage, vage_bound_squared, vage_closed_form, vage_constant, vage_partial_sum,
    vage_tail_bound, VageCheck, VageReport,
};
pub use weights::{Gauge, WeightProfile};
