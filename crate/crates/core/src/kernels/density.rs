use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Growth envelope: `m(u) <= K|u|^{-b}` on `|u| <= 1` and `m(u) <= K|u|^{2N}`
/// beyond.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub k: f64,
    pub b: f64,
    pub n: u32,
}

#[derive(Clone)]
pub enum DensityKind {
    Constant(f64),
    /// `coeff · |u|^exponent`.
    PowerLaw { coeff: f64, exponent: f64 },
    /// Linear interpolation through `(u, m)` samples with `u >= 0`, mirrored
    /// to negative `u` and held constant outside the table.
    Tabulated { u: Vec<f64>, m: Vec<f64> },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for DensityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityKind::Constant(c) => write!(f, "Constant({c})"),
            DensityKind::PowerLaw { coeff, exponent } => {
                write!(f, "PowerLaw {{ coeff: {coeff}, exponent: {exponent} }}")
            }
            DensityKind::Tabulated { u, .. } => write!(f, "Tabulated({} points)", u.len()),
            DensityKind::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// A positive even spectral density `m(u)` with its declared growth.
#[derive(Clone, Debug)]
pub struct SpectralDensity {
    kind: DensityKind,
    envelope: Envelope,
    near_zero_exponent: f64,
    tail_exponent: Option<f64>,
    envelope_violations: usize,
}

/// `Γ(2H+1) sin(πH)`, the coefficient that makes `c_H |u|^{1-2H}` the
/// spectral density of fractional Brownian motion with `K(1,1) = 1`.
pub fn fbm_coefficient(hurst: f64) -> f64 {
    gamma(2.0 * hurst + 1.0) * (PI * hurst).sin()
}

impl SpectralDensity {
    /// Builds a density after checking `K > 0` and `b < 2`.
    ///
    /// `near_zero_exponent` is `a` in `m(u) ~ |u|^a` as `u -> 0`;
    /// `tail_exponent` is `γ` in `m(u) ~ |u|^γ` as `u -> ∞`, when known.
    pub fn new(
        kind: DensityKind,
        envelope: Envelope,
        near_zero_exponent: f64,
        tail_exponent: Option<f64>,
    ) -> Result<Self> {
        if !(envelope.k > 0.0 && envelope.k.is_finite()) {
            return Err(Error::InvalidDensity(format!("K = {} must be positive", envelope.k)));
        }
        if !(envelope.b < 2.0) {
            return Err(Error::InvalidDensity(format!(
                "b = {} violates b < 2 (non-integrable at zero)",
                envelope.b
            )));
        }
        let mut density = SpectralDensity {
            kind,
            envelope,
            near_zero_exponent,
            tail_exponent,
            envelope_violations: 0,
        };
        density.envelope_violations = density.count_envelope_violations();
        Ok(density)
    }

    /// `m ≡ 1`: Brownian motion.
    pub fn brownian() -> Self {
        Self::constant(1.0).expect("positive constant")
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidDensity(format!("constant density {c} must be positive")));
        }
        Self::new(
            DensityKind::Constant(c),
            Envelope { k: c, b: 0.0, n: 0 },
            0.0,
            Some(0.0),
        )
    }

    /// `coeff · |u|^exponent`, with the envelope read off the exponent.
    pub fn power_law(coeff: f64, exponent: f64) -> Result<Self> {
        if !(coeff > 0.0 && coeff.is_finite() && exponent.is_finite()) {
            return Err(Error::InvalidDensity(format!(
                "power law {coeff}·|u|^{exponent} needs a positive coefficient"
            )));
        }
        let envelope = Envelope {
            k: coeff,
            b: (-exponent).max(0.0),
            n: (exponent.max(0.0) / 2.0).ceil() as u32,
        };
        Self::new(
            DensityKind::PowerLaw { coeff, exponent },
            envelope,
            exponent,
            Some(exponent),
        )
    }

    /// Fractional Brownian motion `c_H |u|^{1-2H}` with the analytic `c_H`.
    pub fn fbm(hurst: f64) -> Result<Self> {
        Self::check_hurst(hurst)?;
        Self::power_law(fbm_coefficient(hurst), 1.0 - 2.0 * hurst)
    }

    /// `coeff · |u|^{1-2H}` with a caller-chosen coefficient.
    pub fn fbm_with_coefficient(hurst: f64, coeff: f64) -> Result<Self> {
        Self::check_hurst(hurst)?;
        Self::power_law(coeff, 1.0 - 2.0 * hurst)
    }

    fn check_hurst(hurst: f64) -> Result<()> {
        if hurst > 0.0 && hurst < 1.0 {
            Ok(())
        } else {
            Err(Error::InvalidDensity(format!("Hurst index {hurst} outside (0, 1)")))
        }
    }

    /// Linear interpolation through `(u, m)` rows, `u >= 0` increasing.
    pub fn tabulated(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidDensity("table needs at least two rows".into()));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidDensity(format!(
                    "table abscissae must increase strictly (at u = {})",
                    w[1].0
                )));
            }
        }
        if let Some(&(u, m)) = points
            .iter()
            .find(|(u, m)| !(*u >= 0.0 && u.is_finite() && *m >= 0.0 && m.is_finite()))
        {
            return Err(Error::InvalidDensity(format!("bad table row ({u}, {m})")));
        }
        let k = points.iter().map(|p| p.1).fold(0.0, f64::max);
        let (u, m) = points.iter().cloned().unzip();
        Self::new(
            DensityKind::Tabulated { u, m },
            Envelope { k, b: 0.0, n: 0 },
            0.0,
            Some(0.0),
        )
    }

    /// Any even density with a declared envelope.
    pub fn custom(
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        envelope: Envelope,
        near_zero_exponent: f64,
        tail_exponent: Option<f64>,
    ) -> Result<Self> {
        Self::new(DensityKind::Custom(f), envelope, near_zero_exponent, tail_exponent)
    }

    pub fn kind(&self) -> &DensityKind {
        &self.kind
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    pub fn near_zero_exponent(&self) -> f64 {
        self.near_zero_exponent
    }

    pub fn tail_exponent(&self) -> Option<f64> {
        self.tail_exponent
    }

    /// Sample points (of 121 on a log grid over `[1e-3, 1e3]`) where the
    /// density exceeded its envelope. Recorded, not enforced.
    pub fn envelope_violations(&self) -> usize {
        self.envelope_violations
    }

    /// `∫ m(u) / (u² + 1) du < ∞`, judged from the declared exponents.
    pub fn is_admissible(&self) -> bool {
        let tail_ok = match self.tail_exponent {
            Some(g) => g < 1.0,
            None => self.envelope.n == 0,
        };
        self.near_zero_exponent > -1.0 && tail_ok
    }

    pub fn eval(&self, u: f64) -> f64 {
        let u = u.abs();
        match &self.kind {
            DensityKind::Constant(c) => *c,
            DensityKind::PowerLaw { coeff, exponent } => coeff * u.powf(*exponent),
            DensityKind::Tabulated { u: us, m } => interpolate(us, m, u),
            DensityKind::Custom(f) => f(u),
        }
    }

    fn count_envelope_violations(&self) -> usize {
        let Envelope { k, b, n } = self.envelope;
        (0..=120)
            .map(|i| 10f64.powf(-3.0 + i as f64 * 0.05))
            .filter(|&u| {
                let bound = if u <= 1.0 { k * u.powf(-b) } else { k * u.powi(2 * n as i32) };
                self.eval(u) > bound * (1.0 + 1e-9)
            })
            .count()
    }
}

fn interpolate(us: &[f64], ms: &[f64], u: f64) -> f64 {
    if u <= us[0] {
        return ms[0];
    }
    let last = us.len() - 1;
    if u >= us[last] {
        return ms[last];
    }
    let i = us.partition_point(|&x| x <= u) - 1;
    let frac = (u - us[i]) / (us[i + 1] - us[i]);
    ms[i] + frac * (ms[i + 1] - ms[i])
}
