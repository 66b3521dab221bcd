use num::rational::BigRational;
use num::BigInt;

use crate::coeff::Coefficient;
use crate::element::Element;
use crate::error::{Error, Result};

use super::norms::h_norm;
use super::vage::vage_constant;
use super::weights::WeightProfile;

/// Terms whose `H_{-p-2}` norm falls below this are treated as converged.
pub const SERIES_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesOutcome<C: Coefficient> {
    pub value: Element<C>,
    /// Highest power of `f` that was added.
    pub terms_used: usize,
    /// False when the iteration cap stopped the sum.
    pub converged: bool,
}

/// `Σ α_n f^n` for a series with radius of convergence `radius`.
///
/// Accepted when `‖f‖_{H_{-p}} < R/C₂` or `|f₀| < R/C₂`, with `C₂` the
/// Våge constant for a gap of two. Summation stops once `f^n` vanishes, once
/// two consecutive terms are below [`SERIES_TOLERANCE`] in `H_{-p-2}`, or
/// after `10 · nilpotency_index(f)` powers.
pub fn power_series_apply<C, F>(
    alpha: F,
    radius: f64,
    f: &Element<C>,
    p: i32,
    w: &WeightProfile,
) -> Result<PowerSeriesOutcome<C>>
where
    C: Coefficient,
    F: Fn(usize) -> C,
{
    let norm = h_norm(f, -p, w)?;
    let body = f.body().modulus();
    let limit = radius / vage_constant(2, f.max_position().max(1), w);
    if !(norm < limit || body < limit) {
        return Err(Error::DivergenceGuard {
            p,
            norm,
            body,
            limit,
        });
    }

    let cap = 10 * f.nilpotency_index();
    let mut power = Element::one();
    let mut value = Element::scalar(alpha(0));
    let mut small_run = 0;
    for n in 1..=cap {
        power = power.mul(f);
        if power.is_zero() {
            return Ok(PowerSeriesOutcome {
                value,
                terms_used: n - 1,
                converged: true,
            });
        }
        let term = power.scale(&alpha(n));
        let size = h_norm(&term, -p - 2, w)?;
        value = value.add(&term);
        small_run = if size < SERIES_TOLERANCE { small_run + 1 } else { 0 };
        if small_run == 2 {
            return Ok(PowerSeriesOutcome {
                value,
                terms_used: n,
                converged: true,
            });
        }
    }
    Ok(PowerSeriesOutcome {
        value,
        terms_used: cap,
        converged: false,
    })
}

/// `α_n = 1/n!`, radius ∞.
pub fn exp_coefficients<C: Coefficient>() -> impl Fn(usize) -> C {
    |n| {
        let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
        C::from_rational(&BigRational::new(BigInt::from(1), fact))
    }
}

/// `α_n = 1`, radius 1.
pub fn geometric_coefficients<C: Coefficient>() -> impl Fn(usize) -> C {
    |_| C::one()
}
