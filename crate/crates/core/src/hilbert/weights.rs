use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::index::MultiIndex;

/// An additive, increasing function `φ` on `[0, ∞)` with `φ(0) = 0`.
#[derive(Clone)]
pub enum Gauge {
    /// `φ(x) = rate · x`.
    Linear(f64),
    /// Any other gauge; validated numerically at construction.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gauge::Linear(a) => write!(f, "Linear({a})"),
            Gauge::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl Gauge {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Gauge::Linear(a) => a * x,
            Gauge::Custom(phi) => phi(x),
        }
    }
}

/// The weights `c_ν = exp(Σ_k φ(3^{k-1} ν_k))`, handled in the log domain.
#[derive(Clone, Debug)]
pub struct WeightProfile {
    gauge: Gauge,
}

impl Default for WeightProfile {
    fn default() -> Self {
        WeightProfile {
            gauge: Gauge::Linear(1.0),
        }
    }
}

const GAUGE_SAMPLES: [f64; 7] = [0.5, 1.0, 2.0, 3.0, 9.0, 27.0, 81.0];

impl WeightProfile {
    pub fn new(gauge: Gauge) -> Result<Self> {
        if let Gauge::Linear(a) = gauge {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidGauge(format!("linear rate must be positive, got {a}")));
            }
            return Ok(WeightProfile { gauge });
        }
        let phi = |x| gauge.eval(x);
        if phi(0.0) != 0.0 {
            return Err(Error::InvalidGauge(format!("φ(0) = {} but must be 0", phi(0.0))));
        }
        for &a in &GAUGE_SAMPLES {
            if !(phi(a) > 0.0 && phi(a).is_finite()) {
                return Err(Error::InvalidGauge(format!("φ({a}) = {} is not positive", phi(a))));
            }
            for &b in &GAUGE_SAMPLES {
                let (lhs, rhs) = (phi(a + b), phi(a) + phi(b));
                if (lhs - rhs).abs() > 1e-9 * rhs.abs().max(1.0) {
                    return Err(Error::InvalidGauge(format!(
                        "not additive: φ({a}+{b}) = {lhs}, φ({a}) + φ({b}) = {rhs}"
                    )));
                }
                if b > a && phi(b) <= phi(a) {
                    return Err(Error::InvalidGauge(format!("not increasing between {a} and {b}")));
                }
            }
        }
        Ok(WeightProfile { gauge })
    }

    pub fn linear(rate: f64) -> Result<Self> {
        Self::new(Gauge::Linear(rate))
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    /// `φ(1)`, the slope of the gauge.
    pub fn rate(&self) -> f64 {
        self.gauge.eval(1.0)
    }

    /// `log c_ν`.
    pub fn log_weight(&self, nu: &MultiIndex) -> f64 {
        nu.entries()
            .iter()
            .map(|&(k, e)| self.slot_log_weight(k, e))
            .sum()
    }

    /// `φ(3^{k-1} e)`.
    pub fn slot_log_weight(&self, position: u32, exponent: u8) -> f64 {
        let scale = 3f64.powi(position as i32 - 1);
        self.gauge.eval(scale * exponent as f64)
    }

    /// `c_ν`, or `None` when it exceeds the floating range.
    pub fn weight(&self, nu: &MultiIndex) -> Option<f64> {
        let w = self.log_weight(nu).exp();
        w.is_finite().then_some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_weights() {
        let w = WeightProfile::default();
        assert_eq!(w.log_weight(&MultiIndex::zero()), 0.0);
        let nu = MultiIndex::from_dense(&[2, 0, 1]).unwrap();
        assert_eq!(w.log_weight(&nu), 2.0 + 9.0);
        assert_eq!(w.weight(&MultiIndex::generator(1, 1).unwrap()), Some(1f64.exp()));
        assert_eq!(w.weight(&MultiIndex::generator(12, 1).unwrap()), None);
    }

    #[test]
    fn gauge_validation() {
        assert!(WeightProfile::linear(0.5).is_ok());
        assert!(WeightProfile::linear(0.0).is_err());
        assert!(WeightProfile::new(Gauge::Custom(Arc::new(|x| 2.0 * x))).is_ok());
        for bad in [
            Arc::new(|x: f64| x * x) as Arc<dyn Fn(f64) -> f64 + Send + Sync>,
            Arc::new(|x: f64| x + 1.0),
            Arc::new(|x: f64| -x),
        ] {
            assert!(matches!(
                WeightProfile::new(Gauge::Custom(bad)),
                Err(Error::InvalidGauge(_))
            ));
        }
    }
}
