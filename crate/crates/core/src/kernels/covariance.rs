use std::f64::consts::PI;
use std::io::Write;

use nalgebra::DMatrix;

use crate::coeff::Complex64;
use crate::error::{Error, Result};
use crate::exec::ExecutionMode;
use crate::quadrature::{adaptive_gk, tanh_sinh};

use super::density::SpectralDensity;
use super::fourier::{HermiteTransform, KernelOptions};

/// `K(t,s) = (1/2π) ∫ (e^{iut}-1)(e^{-ius}-1) u^{-2} m(u) du`.
///
/// The real part of the integrand is written as
/// `4 sin(ut/2) sin(us/2) cos(u(t-s)/2) / u²`, which tends to `ts` at
/// `u = 0` without cancellation. The half line is split into `[0, 1]`
/// (tanh-sinh, absorbing the singularity of `m` at zero), unit panels up to
/// the cutoff (adaptive Gauss–Kronrod) and an analytic tail for a power-law
/// continuation of `m` beyond the cutoff.
pub fn covariance_quadrature(
    m: &SpectralDensity,
    t: f64,
    s: f64,
    opts: &KernelOptions,
) -> Result<f64> {
    let gamma = tail_exponent(m)?;
    if t == 0.0 || s == 0.0 {
        return Ok(0.0);
    }
    // evaluate in a fixed argument order so that K(t,s) == K(s,t) bitwise
    let (t, s) = if t <= s { (t, s) } else { (s, t) };
    let g = |u: f64| -> f64 {
        if u == 0.0 {
            return t * s;
        }
        4.0 * (0.5 * u * t).sin() * (0.5 * u * s).sin() * (0.5 * u * (t - s)).cos() / (u * u)
    };
    let integrand = |u: f64| g(u) * m.eval(u);
    let tol = opts.tolerance;
    let u_max = opts.cutoff.max(1.0);
    let mut total = tanh_sinh(&integrand, 0.0, 1.0, 0.1 * tol);
    let panels = (u_max - 1.0).ceil() as usize;
    let width = (u_max - 1.0) / panels.max(1) as f64;
    for k in 0..panels {
        let a = 1.0 + k as f64 * width;
        total += adaptive_gk(&integrand, a, a + width, tol / panels as f64, 20);
    }
    total += power_tail(m.eval(u_max), gamma, u_max, t, s, tol);
    Ok(total / PI)
}

fn tail_exponent(m: &SpectralDensity) -> Result<f64> {
    match m.tail_exponent() {
        Some(g) if g < 1.0 => Ok(g),
        Some(g) => Err(Error::TailDivergence(format!(
            "m(u) grows like |u|^{g} at infinity; need exponent < 1 against the 4/u² factor"
        ))),
        None if m.envelope().n == 0 => Ok(0.0),
        None => Err(Error::TailDivergence(format!(
            "envelope allows growth |u|^{} at infinity (N = {}) with no declared tail exponent",
            2 * m.envelope().n,
            m.envelope().n
        ))),
    }
}

/// `∫_U^∞ g(u) m(U) (u/U)^γ du` in closed form up to one smooth integral.
fn power_tail(m_at_cutoff: f64, gamma: f64, u_max: f64, t: f64, s: f64, tol: f64) -> f64 {
    let beta = gamma - 2.0;
    let t0 = u_max.powf(beta + 1.0) / (-beta - 1.0);
    // Re ∫_U^∞ cos(a u) u^β du via the contour u = U + iy/a
    let cos_moment = |a: f64| -> f64 {
        if a * u_max < 1e-9 {
            return t0;
        }
        let z = |y: f64| Complex64::new(u_max, y / a).powf(beta) * (-y).exp();
        let re = adaptive_gk(&|y| z(y).re, 0.0, 60.0, 1e-3 * tol, 30);
        let im = adaptive_gk(&|y| z(y).im, 0.0, 60.0, 1e-3 * tol, 30);
        let prefactor = Complex64::new(0.0, 1.0 / a) * Complex64::from_polar(1.0, a * u_max);
        (prefactor * Complex64::new(re, im)).re
    };
    let bracket = t0 - cos_moment(t) - cos_moment(s) + cos_moment((t - s).abs());
    m_at_cutoff * u_max.powf(-gamma) * bracket
}

/// `Σ_{n<N} a_n(t) a_n(s)` with `a_n(t) = ∫_0^t S_m ξ_n`.
pub fn covariance_series(
    m: &SpectralDensity,
    t: f64,
    s: f64,
    terms: usize,
    opts: &KernelOptions,
) -> Result<f64> {
    if terms == 0 {
        return Ok(0.0);
    }
    let h = HermiteTransform::new(m, terms, opts)?;
    Ok(series_from(&h, t, s))
}

fn series_from(h: &HermiteTransform, t: f64, s: f64) -> f64 {
    dot(&h.indicator_coefficients(t), &h.indicator_coefficients(s))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// How grid cells are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMethod {
    Quadrature,
    /// Hermite partial sum with this many terms.
    Series(usize),
}

/// Sampled covariance `values[i][j] = K(t_j, s_i)`: one row per `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceGrid {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// Symmetry and definiteness of a square grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdReport {
    pub max_asymmetry: f64,
    pub min_eigenvalue: f64,
    pub trace: f64,
    /// `min_eigenvalue >= -1e-8 · trace` and exact symmetry.
    pub ok: bool,
}

impl CovarianceGrid {
    pub fn compute(
        m: &SpectralDensity,
        t: &[f64],
        s: &[f64],
        method: KernelMethod,
        opts: &KernelOptions,
        exec: ExecutionMode,
    ) -> Result<Self> {
        let cells = t.len() * s.len();
        let values: Vec<f64> = match method {
            KernelMethod::Quadrature => {
                tail_exponent(m)?;
                exec.map(cells, |k| covariance_quadrature(m, t[k % t.len()], s[k / t.len()], opts))
                    .into_iter()
                    .collect::<Result<_>>()?
            }
            KernelMethod::Series(n) => {
                if n == 0 {
                    vec![0.0; cells]
                } else {
                    let h = HermiteTransform::new(m, n, opts)?;
                    let at = exec.map(t.len(), |j| h.indicator_coefficients(t[j]));
                    let at_s = exec.map(s.len(), |i| h.indicator_coefficients(s[i]));
                    exec.map(cells, |k| dot(&at[k % t.len()], &at_s[k / t.len()]))
                }
            }
        };
        Ok(CovarianceGrid {
            t: t.to_vec(),
            s: s.to_vec(),
            values: values.chunks(t.len().max(1)).map(<[f64]>::to_vec).collect(),
        })
    }

    /// CSV with header `s\t,t_1,…` and one row per `s`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        let mut header = vec!["s\\t".to_string()];
        header.extend(self.t.iter().map(|v| format!("{v:.16e}")));
        w.write_record(&header).map_err(io)?;
        for (s, row) in self.s.iter().zip(&self.values) {
            let mut rec = vec![format!("{s:.16e}")];
            rec.extend(row.iter().map(|v| format!("{v:.16e}")));
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is ascii")
    }

    /// Requires identical `t` and `s` grids.
    pub fn psd_report(&self) -> Result<PsdReport> {
        if self.t != self.s {
            return Err(Error::InvalidArgument(
                "definiteness needs identical t and s grids".into(),
            ));
        }
        let n = self.t.len();
        let k = DMatrix::from_fn(n, n, |i, j| self.values[i][j]);
        let max_asymmetry = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (k[(i, j)] - k[(j, i)]).abs())
            .fold(0.0, f64::max);
        let trace = k.trace();
        let min_eigenvalue = if n == 0 {
            0.0
        } else {
            k.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
        };
        Ok(PsdReport {
            max_asymmetry,
            min_eigenvalue,
            trace,
            ok: max_asymmetry == 0.0 && min_eigenvalue >= -1e-8 * trace.abs(),
        })
    }
}

/// Reads `(u, m)` rows; a non-numeric first row is taken as a header.
pub fn read_density_table<R: std::io::Read>(input: R) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut rows = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Io(e.to_string()))?;
        if rec.len() != 2 {
            return Err(Error::InvalidDensity(format!(
                "table row {} has {} columns, expected 2",
                line + 1,
                rec.len()
            )));
        }
        let parsed = (rec[0].parse::<f64>(), rec[1].parse::<f64>());
        match parsed {
            (Ok(u), Ok(m)) => rows.push((u, m)),
            _ if line == 0 => continue,
            _ => {
                return Err(Error::InvalidDensity(format!(
                    "table row {} is not numeric",
                    line + 1
                )))
            }
        }
    }
    Ok(rows)
}
