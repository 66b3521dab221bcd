use serde::Serialize;

use crate::coeff::{Coefficient, Complex64};
use crate::element::{Element, FloatElement};
use crate::error::{Error, Result};
use crate::hilbert::{check_vage, h_norm, VageReport, WeightProfile};

use super::density::SpectralDensity;
use super::fourier::{HermiteTransform, KernelOptions};
use super::hermite::embed_x;

/// Step sizes used by [`differentiability_check`].
pub const DIFFERENCE_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DifferenceRow {
    pub h: f64,
    /// `‖(F_N(t+h) - F_N(t))/h - D_N(t)‖_{H_{-p}}`.
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DifferenceReport {
    pub t: f64,
    pub p: i32,
    pub terms: usize,
    pub rows: Vec<DifferenceRow>,
}

impl DifferenceReport {
    /// `error(h_k) / error(h_{k+1})` for consecutive steps.
    pub fn decay_ratios(&self) -> Vec<f64> {
        self.rows.windows(2).map(|w| w[0].error / w[1].error).collect()
    }
}

fn grade_one(values: &[f64]) -> FloatElement {
    let coeffs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    embed_x(&coeffs)
}

/// Finite-difference check that `F_N(t) = Σ_{n<N} a_n(t) e_{n+1}` has
/// derivative `D_N(t) = Σ_{n<N} (S_m ξ_n)(t) e_{n+1}` in `H_{-p}`.
pub fn differentiability_check(
    m: &SpectralDensity,
    t: f64,
    p: i32,
    w: &WeightProfile,
    terms: usize,
    opts: &KernelOptions,
) -> Result<DifferenceReport> {
    let mut rows = Vec::with_capacity(DIFFERENCE_STEPS.len());
    if terms == 0 {
        rows.extend(DIFFERENCE_STEPS.iter().map(|&h| DifferenceRow { h, error: 0.0 }));
    } else {
        let tr = HermiteTransform::new(m, terms, opts)?;
        let base = tr.indicator_coefficients(t);
        let derivative = grade_one(&tr.values(t));
        for &h in &DIFFERENCE_STEPS {
            let shifted = tr.indicator_coefficients(t + h);
            let quotient: Vec<f64> = shifted.iter().zip(&base).map(|(a, b)| (a - b) / h).collect();
            let diff = grade_one(&quotient).sub(&derivative);
            rows.push(DifferenceRow {
                h,
                error: h_norm(&diff, -p, w)?,
            });
        }
    }
    Ok(DifferenceReport { t, p, terms, rows })
}

/// Refinement control for [`process_integral`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralOptions {
    /// Intervals on the coarsest level.
    pub initial_intervals: usize,
    /// Halvings allowed after the coarsest level.
    pub max_levels: usize,
    /// Stop once successive levels differ by less than this in `H_{-p}`.
    pub tolerance: f64,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        IntegralOptions {
            initial_intervals: 4,
            max_levels: 16,
            tolerance: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProcessIntegral<C: Coefficient> {
    pub value: Element<C>,
    /// Intervals on the accepted level.
    pub intervals: usize,
    /// `H_{-p}` distance between the last two levels.
    pub last_change: f64,
    /// Våge check `‖Y F'‖_{H_{-p}} <= C ‖Y‖_{H_{-q}} ‖F'‖_{H_{-p}}` at every
    /// node of the accepted level.
    pub node_checks: Vec<VageReport>,
}

impl<C: Coefficient> ProcessIntegral<C> {
    pub fn vage_holds(&self) -> bool {
        self.node_checks.iter().all(|r| r.holds)
    }
}

/// `∫_0^1 Y(t) F'(t) dt` by the composite trapezoid rule, halving the step
/// until two successive levels agree within the tolerance in `H_{-p}`.
///
/// Errors with [`Error::NoConvergence`] when the level cap is reached first.
pub fn process_integral<C, Y, F>(
    y: Y,
    fprime: F,
    p: i32,
    q: i32,
    w: &WeightProfile,
    opts: &IntegralOptions,
) -> Result<ProcessIntegral<C>>
where
    C: Coefficient,
    Y: Fn(f64) -> Element<C>,
    F: Fn(f64) -> Element<C>,
{
    let n0 = opts.initial_intervals.max(1);
    let finest = n0 << opts.max_levels;
    refine(
        |n| {
            // node i of n intervals; n divides `finest`
            let stride = finest / n;
            (0..=n)
                .map(|i| {
                    let t = (i * stride) as f64 / finest as f64;
                    (y(t), fprime(t))
                })
                .collect()
        },
        n0,
        opts.max_levels,
        p,
        q,
        w,
        opts.tolerance,
    )
}

/// [`process_integral`] on values sampled at `len - 1` equal intervals of
/// `[0, 1]`; coarser levels use every `2^k`-th node.
pub fn process_integral_grid<C: Coefficient>(
    y: &[Element<C>],
    fprime: &[Element<C>],
    p: i32,
    q: i32,
    w: &WeightProfile,
    tolerance: f64,
) -> Result<ProcessIntegral<C>> {
    if y.len() != fprime.len() || y.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "grids must share at least two nodes (got {} and {})",
            y.len(),
            fprime.len()
        )));
    }
    let finest = y.len() - 1;
    let levels = finest.trailing_zeros() as usize;
    let n0 = finest >> levels;
    refine(
        |n| {
            let stride = finest / n;
            (0..=n)
                .map(|i| (y[i * stride].clone(), fprime[i * stride].clone()))
                .collect()
        },
        n0,
        levels,
        p,
        q,
        w,
        tolerance,
    )
}

fn refine<C: Coefficient>(
    sample: impl Fn(usize) -> Vec<(Element<C>, Element<C>)>,
    n0: usize,
    max_levels: usize,
    p: i32,
    q: i32,
    w: &WeightProfile,
    tolerance: f64,
) -> Result<ProcessIntegral<C>> {
    let trapezoid = |nodes: &[(Element<C>, Element<C>)]| -> Element<C> {
        let n = nodes.len() - 1;
        let h = C::from_rational(&num::BigRational::new(1.into(), (n as i64).into()));
        let half = C::from_rational(&num::BigRational::new(1.into(), 2.into()));
        let mut acc = Element::zero();
        for (i, (a, b)) in nodes.iter().enumerate() {
            let term = a.mul(b);
            let term = if i == 0 || i == n { term.scale(&half) } else { term };
            acc = acc.add(&term);
        }
        acc.scale(&h)
    };

    let mut nodes = sample(n0);
    let mut value = trapezoid(&nodes);
    let mut last_change = f64::INFINITY;
    let mut n = n0;
    for _ in 0..max_levels {
        n *= 2;
        nodes = sample(n);
        let next = trapezoid(&nodes);
        last_change = h_norm(&next.sub(&value), -p, w)?;
        value = next;
        if last_change < tolerance {
            let node_checks = nodes
                .iter()
                .map(|(a, b)| check_vage(a, b, p, q, w).map(|c| c.forward))
                .collect::<Result<_>>()?;
            return Ok(ProcessIntegral {
                value,
                intervals: n,
                last_change,
                node_checks,
            });
        }
    }
    Err(Error::NoConvergence {
        levels: max_levels,
        last_change,
    })
}
