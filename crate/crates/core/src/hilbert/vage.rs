use serde::Serialize;

use crate::coeff::Coefficient;
use crate::element::Element;
use crate::error::{Error, Result};

use super::norms::h_norm;
use super::weights::WeightProfile;

/// `Σ c_ν^{-2·gap}` over indices supported in positions `1..=d`.
///
/// The sum factorizes over positions:
/// `Π_k (1 + c_{(k,1)}^{-2·gap} + c_{(k,2)}^{-2·gap})`.
pub fn vage_partial_sum(gap: u32, d: u32, w: &WeightProfile) -> f64 {
    let g = 2.0 * gap as f64;
    (1..=d)
        .map(|k| {
            1.0 + (-g * w.slot_log_weight(k, 1)).exp() + (-g * w.slot_log_weight(k, 2)).exp()
        })
        .product()
}

/// Upper bound on the part of the full sum coming from positions beyond `d`.
///
/// With `x = c_{(d+1,1)}^{-2·gap}` the remaining factors satisfy
/// `x_{k+1} <= x_k³`, so their product exceeds one by at most
/// `expm1(x / (1 - x))`.
pub fn vage_tail_bound(gap: u32, d: u32, w: &WeightProfile) -> f64 {
    let x = (-2.0 * gap as f64 * w.slot_log_weight(d + 1, 1)).exp();
    if x >= 1.0 {
        return f64::INFINITY;
    }
    vage_partial_sum(gap, d, w) * (x / (1.0 - x)).exp_m1()
}

/// `C_gap`: square root of the truncated sum plus its tail bound.
pub fn vage_constant(gap: u32, d: u32, w: &WeightProfile) -> f64 {
    (vage_partial_sum(gap, d, w) + vage_tail_bound(gap, d, w)).sqrt()
}

/// `(1 - q) / (1 - 2q)` with `q = e^{-2·gap·φ(1)}`; `None` when `2q >= 1`.
pub fn vage_bound_squared(gap: u32, w: &WeightProfile) -> Option<f64> {
    let q = (-2.0 * gap as f64 * w.rate()).exp();
    (2.0 * q < 1.0).then(|| (1.0 - q) / (1.0 - 2.0 * q))
}

/// Square root of [`vage_bound_squared`].
pub fn vage_closed_form(gap: u32, w: &WeightProfile) -> Option<f64> {
    vage_bound_squared(gap, w).map(f64::sqrt)
}

/// Both sides of `‖ab‖_{H_{-p}} <= C ‖f‖_{H_{-q}} ‖g‖_{H_{-p}}` for one product.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VageReport {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub margin: f64,
    pub holds: bool,
}

/// The inequality checked for `fg` and for the mirrored product `gf`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VageCheck {
    pub forward: VageReport,
    pub mirrored: VageReport,
}

impl VageCheck {
    pub fn holds(&self) -> bool {
        self.forward.holds && self.mirrored.holds
    }
}

const ROUNDOFF: f64 = 1e-12;

pub fn check_vage<C: Coefficient>(
    f: &Element<C>,
    g: &Element<C>,
    p: i32,
    q: i32,
    w: &WeightProfile,
) -> Result<VageCheck> {
    if p <= q {
        return Err(Error::InvalidArgument(format!("need p > q, got p = {p}, q = {q}")));
    }
    let d = f.max_position().max(g.max_position()).max(1);
    let constant = vage_constant((p - q) as u32, d, w);
    let rhs = constant * h_norm(f, -q, w)? * h_norm(g, -p, w)?;
    let report = |lhs: f64| VageReport {
        lhs,
        rhs,
        constant,
        margin: rhs - lhs,
        holds: lhs <= rhs * (1.0 + ROUNDOFF),
    };
    Ok(VageCheck {
        forward: report(h_norm(&f.mul(g), -p, w)?),
        mirrored: report(h_norm(&g.mul(f), -p, w)?),
    })
}
