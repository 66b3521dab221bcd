use crate::coeff::Coefficient;
use crate::element::Element;
use crate::error::{Error, Result};

use super::weights::WeightProfile;

/// Largest `x` with `exp(x)` finite.
const LOG_MAX: f64 = 709.782_712_893_384;

/// `(Σ |z_ν|^p)^{1/p}` for real `p >= 1`.
pub fn p_norm<C: Coefficient>(z: &Element<C>, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidNormOrder(p));
    }
    let moduli: Vec<f64> = z.terms().map(|(_, c)| c.modulus()).collect();
    let max = moduli.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0.0);
    }
    // scale by the largest modulus to keep |z|^p in range
    let sum: f64 = moduli.iter().map(|m| (m / max).powf(p)).sum();
    Ok(max * sum.powf(1.0 / p))
}

/// `log ‖z‖_{H_level}` where `‖z‖²_{H_level} = Σ |z_ν|² c_ν^{2·level}`.
///
/// Negative levels are the distribution side `H_{-p}`. Returns `-∞` for zero.
pub fn log_h_norm<C: Coefficient>(z: &Element<C>, level: i32, w: &WeightProfile) -> f64 {
    let logs: Vec<f64> = z
        .terms()
        .map(|(idx, c)| 2.0 * c.modulus().ln() + 2.0 * level as f64 * w.log_weight(idx))
        .filter(|x| *x > f64::NEG_INFINITY)
        .collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    if max == f64::INFINITY {
        return max;
    }
    let sum: f64 = logs.iter().map(|x| (x - max).exp()).sum();
    0.5 * (max + sum.ln())
}

/// `‖z‖_{H_level}`; errors with [`Error::Overflow`] past the floating range.
pub fn h_norm<C: Coefficient>(z: &Element<C>, level: i32, w: &WeightProfile) -> Result<f64> {
    let log_norm = log_h_norm(z, level, w);
    if log_norm > LOG_MAX {
        return Err(Error::Overflow { log_norm });
    }
    Ok(log_norm.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Exact;
    use crate::element::ExactElement;
    use crate::format::parse_element;

    fn el(s: &str) -> ExactElement {
        parse_element(s).unwrap()
    }

    #[test]
    fn p_norm_examples() {
        assert_eq!(p_norm(&el("e[1] + e[2]"), 1.0).unwrap(), 2.0);
        assert_eq!(p_norm(&el("3*e[1]"), 2.0).unwrap(), 3.0);
        assert_eq!(p_norm(&el("0"), 2.0).unwrap(), 0.0);
        assert_eq!(p_norm(&el("1"), 0.5), Err(Error::InvalidNormOrder(0.5)));
        assert!(p_norm(&el("1"), f64::NAN).is_err());
    }

    #[test]
    fn h_norm_examples() {
        let w = WeightProfile::default();
        for level in [-3, 0, 5] {
            assert_eq!(h_norm(&el("1"), level, &w).unwrap(), 1.0);
        }
        let v = h_norm(&el("e[1]"), -1, &w).unwrap();
        assert!((v - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(h_norm(&ExactElement::zero(), 2, &w).unwrap(), 0.0);
        assert!((h_norm(&el("3 + 4*e[1]"), 0, &w).unwrap() - 5.0).abs() < 1e-14);
    }

    #[test]
    fn positive_levels_overflow_cleanly() {
        let w = WeightProfile::default();
        let z = el("e[9]^2");
        // log c = 2·3^8 = 13122
        assert!(matches!(h_norm(&z, 1, &w), Err(Error::Overflow { .. })));
        assert!(h_norm(&z, -1, &w).unwrap() == 0.0);
        let big = el("e[7]^2").scale(&Exact::from_ratio(1, 1));
        let log = log_h_norm(&big, -1, &w);
        assert_eq!(log, -1458.0);
    }
}
