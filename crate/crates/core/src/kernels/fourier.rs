use std::f64::consts::PI;

use crate::coeff::Complex64;
use crate::error::{Error, Result};
use crate::quadrature::{composite_gauss_legendre, gauss_legendre, tanh_sinh_nodes};

use super::density::SpectralDensity;
use super::hermite::{hermite_all, HermiteBasis};

/// Truncation and resolution of the frequency-domain integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelOptions {
    /// Frequency cutoff `U`.
    pub cutoff: f64,
    /// Quadrature points on `[-U, U]` for [`apply_sm`].
    pub grid_points: usize,
    /// Hermite truncation `N`.
    pub hermite_terms: usize,
    /// Absolute tolerance of the adaptive covariance quadrature.
    pub tolerance: f64,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            cutoff: 50.0,
            grid_points: 1 << 14,
            hermite_terms: 200,
            tolerance: 1e-10,
        }
    }
}

const PANEL_ORDER: usize = 16;

/// `(S_m f)(x) = (1/2π) ∫ √m(u) f̂(u) e^{iux} du` at each `x`, with
/// `f̂(u) = ∫ f(x) e^{-iux} dx`, truncated to `|u| <= U`.
///
/// Errors with [`Error::DomainViolation`] when `∫ m |f̂|²` does not settle
/// before the cutoff.
pub fn apply_sm<F>(
    m: &SpectralDensity,
    f_hat: F,
    xs: &[f64],
    opts: &KernelOptions,
) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    let u_max = opts.cutoff;
    let panels = (opts.grid_points / PANEL_ORDER).max(1);
    let nodes = composite_gauss_legendre(-u_max, u_max, panels, PANEL_ORDER);
    let samples: Vec<(f64, f64, Complex64)> = nodes
        .iter()
        .map(|&(u, w)| (u, w, m.eval(u).sqrt() * f_hat(u)))
        .collect();

    let energy = |lo: f64, hi: f64| -> f64 {
        samples
            .iter()
            .filter(|(u, _, _)| u.abs() >= lo && u.abs() < hi)
            .map(|(_, w, v)| w * v.norm_sqr())
            .sum()
    };
    let total = energy(0.0, f64::INFINITY);
    if !total.is_finite() {
        return Err(Error::DomainViolation("∫ m|f̂|² is not finite on the grid".into()));
    }
    let outer = energy(0.5 * u_max, u_max);
    let inner = energy(0.25 * u_max, 0.5 * u_max);
    if outer > 1e-300 && outer >= 0.9 * inner {
        return Err(Error::DomainViolation(format!(
            "∫ m|f̂|² does not decay: {outer:e} on [U/2, U] vs {inner:e} on [U/4, U/2]"
        )));
    }

    Ok(xs
        .iter()
        .map(|&x| {
            samples
                .iter()
                .map(|&(u, w, v)| v * Complex64::from_polar(w, u * x))
                .sum::<Complex64>()
                / (2.0 * PI)
        })
        .collect())
}

/// The first `N` Hermite functions pushed through `S_m`, tabulated on a
/// fixed frequency grid over `[0, U]`.
///
/// `ξ̂_n = √(2π) (-i)^n ξ_n`, so with `m` even everything reduces to real
/// half-line integrals:
///
/// * `∫_0^t S_m ξ_n = (2/√(2π)) (-1)^{n/2} ∫ √m ξ_n sin(ut)/u` (n even),
///   `(2/√(2π)) (-1)^{(n-1)/2} ∫ √m ξ_n (1 - cos ut)/u` (n odd);
/// * `(S_m ξ_n)(t)` is the same with `cos(ut)` and `sin(ut)` in place of the
///   two kernels.
#[derive(Clone, Debug)]
pub struct HermiteTransform {
    terms: usize,
    nodes: Vec<(f64, f64)>,
    /// `w · √m(u) · ξ_n(u)`, row per node.
    weighted: Vec<Vec<f64>>,
}

const FIRST_PANEL: f64 = 0.25;
const LEGENDRE_ORDER: usize = 20;

impl HermiteTransform {
    pub fn new(m: &SpectralDensity, terms: usize, opts: &KernelOptions) -> Result<Self> {
        if !m.is_admissible() {
            return Err(Error::DomainViolation(format!(
                "indicator functions are outside the domain of S_m (exponents {} at 0, {:?} at ∞)",
                m.near_zero_exponent(),
                m.tail_exponent()
            )));
        }
        if terms > 0 {
            HermiteBasis::default().check(terms - 1)?;
        }
        // ξ_n is negligible beyond its turning point √(2n+1) plus a margin
        let reach = ((2 * terms + 1) as f64).sqrt() + 12.0;
        let top = reach.min(opts.cutoff).max(2.0 * FIRST_PANEL);
        let mut nodes = tanh_sinh_nodes(0.0, FIRST_PANEL, 6);
        let panels = ((top - FIRST_PANEL) / FIRST_PANEL).ceil() as usize;
        let width = (top - FIRST_PANEL) / panels as f64;
        let (x, w) = gauss_legendre(LEGENDRE_ORDER);
        for p in 0..panels {
            let mid = FIRST_PANEL + (p as f64 + 0.5) * width;
            nodes.extend(x.iter().zip(&w).map(|(xi, wi)| (mid + 0.5 * width * xi, 0.5 * width * wi)));
        }
        let weighted = nodes
            .iter()
            .map(|&(u, w)| {
                let scale = w * m.eval(u).sqrt();
                if terms == 0 {
                    return Vec::new();
                }
                hermite_all(terms - 1, u).into_iter().map(|v| scale * v).collect()
            })
            .collect();
        Ok(HermiteTransform {
            terms,
            nodes,
            weighted,
        })
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    fn combine(&self, even: impl Fn(f64) -> f64, odd: impl Fn(f64) -> f64) -> Vec<f64> {
        let mut acc = vec![0.0; self.terms];
        for (&(u, _), row) in self.nodes.iter().zip(&self.weighted) {
            let (ke, ko) = (even(u), odd(u));
            for (n, v) in row.iter().enumerate() {
                acc[n] += v * if n % 2 == 0 { ke } else { ko };
            }
        }
        let scale = 2.0 / (2.0 * PI).sqrt();
        for (n, a) in acc.iter_mut().enumerate() {
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            *a *= scale * sign;
        }
        acc
    }

    /// `a_n(t) = ∫_0^t (S_m ξ_n)(x) dx` for `n < N`.
    pub fn indicator_coefficients(&self, t: f64) -> Vec<f64> {
        self.combine(
            |u| (u * t).sin() / u,
            |u| {
                // 1 - cos(ut) = 2 sin²(ut/2), free of cancellation
                let s = (0.5 * u * t).sin();
                2.0 * s * s / u
            },
        )
    }

    /// `(S_m ξ_n)(t)` for `n < N`.
    pub fn values(&self, t: f64) -> Vec<f64> {
        self.combine(|u| (u * t).cos(), |u| (u * t).sin())
    }
}

/// `∫_0^t (S_m ξ_n)(u) du`.
pub fn indicator_coeff(m: &SpectralDensity, n: usize, t: f64, opts: &KernelOptions) -> Result<f64> {
    Ok(HermiteTransform::new(m, n + 1, opts)?.indicator_coefficients(t)[n])
}
