use std::f64::consts::PI;

use crate::coeff::Coefficient;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::index::MultiIndex;

/// Default highest Hermite order.
pub const DEFAULT_MAX_ORDER: usize = 512;

const RESCALE: f64 = 1e150;

/// `ξ_0(x), …, ξ_{n_max}(x)`, the normalized Hermite functions.
///
/// Uses the normalized recurrence, carried with a separate log scale so that
/// the Gaussian factor cannot underflow before the polynomial part grows.
pub fn hermite_all(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut log_scale = -0.5 * x * x;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    out.push(cur * log_scale.exp());
    for n in 0..n_max {
        let next = (2.0 / (n as f64 + 1.0)).sqrt() * x * cur
            - (n as f64 / (n as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(cur * log_scale.exp());
    }
    out
}

/// `ξ_n(x)`.
pub fn hermite_xi(n: usize, x: f64) -> f64 {
    hermite_all(n, x)[n]
}

/// Hermite functions up to a configured order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    max_order: usize,
}

impl Default for HermiteBasis {
    fn default() -> Self {
        HermiteBasis {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl HermiteBasis {
    pub fn new(max_order: usize) -> Self {
        HermiteBasis { max_order }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn xi(&self, n: usize, x: f64) -> Result<f64> {
        self.check(n)?;
        Ok(hermite_xi(n, x))
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.max_order {
            return Err(Error::InvalidArgument(format!(
                "Hermite order {n} exceeds the configured maximum {}",
                self.max_order
            )));
        }
        Ok(())
    }
}

/// `X f = Σ f_n e_{n+1}`: the `n`-th coefficient (0-based) goes to
/// generator `n + 1`.
pub fn embed_x<C: Coefficient>(coeffs: &[C]) -> Element<C> {
    Element::from_terms(coeffs.iter().enumerate().map(|(n, c)| {
        (
            MultiIndex::generator(n as u32 + 1, 1).expect("positions start at 1"),
            c.clone(),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Exact;
    use crate::quadrature::composite_gauss_legendre;

    #[test]
    fn values() {
        assert!((hermite_xi(0, 0.0) - 0.751_125_544_464_942_5).abs() < 1e-15);
        assert_eq!(hermite_xi(1, 0.0), 0.0);
        // ξ_1(x) = √2 x ξ_0(x)
        let x = 0.7;
        assert!((hermite_xi(1, x) - 2f64.sqrt() * x * hermite_xi(0, x)).abs() < 1e-15);
    }

    #[test]
    fn far_tail_is_finite_and_small() {
        for n in [0, 10, 200, 512] {
            let v = hermite_xi(n, 60.0);
            assert!(v.is_finite() && v.abs() < 1e-100, "n={n} v={v}");
        }
        // past the turning point √(2n+1) values stay bounded by π^{-1/4}
        let vals = hermite_all(512, 20.0);
        assert!(vals.iter().all(|v| v.abs() <= 1.0));
    }

    #[test]
    fn gram_matrix_on_legendre_panels() {
        let nodes = composite_gauss_legendre(-14.0, 14.0, 280, 16);
        let table: Vec<Vec<f64>> = nodes.iter().map(|&(x, _)| hermite_all(30, x)).collect();
        for m in 0..=30 {
            for n in 0..=30 {
                let g: f64 = nodes.iter().zip(&table).map(|(&(_, w), v)| w * v[m] * v[n]).sum();
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!((g - expected).abs() < 1e-12, "({m},{n}) -> {g}");
            }
        }
    }

    #[test]
    fn embedding() {
        let x = embed_x(&[Exact::one(), Exact::zero(), Exact::from_ratio(1, 2)]);
        assert_eq!(x.len(), 2);
        assert_eq!(x.max_position(), 3);
        assert!(HermiteBasis::default().xi(513, 0.0).is_err());
    }
}
