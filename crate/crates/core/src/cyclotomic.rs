//! Exact arithmetic in the Eisenstein integers `Z[ω]`, `ω = e^{2πi/3}`.
//!
//! Every structure constant of the algebra is either zero or a power of ω,
//! so phases never touch floating point until a value is explicitly
//! converted with [`Cyclotomic::to_complex`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Complex;

/// `√3 / 2`, the imaginary part of ω.
pub const SQRT3_OVER_2: f64 = 0.866_025_403_784_438_6;

/// An element `a + b·ω` of `Z[ω]`, with `ω² = -1 - ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic {
    pub a: i64,
    pub b: i64,
}

impl Cyclotomic {
    pub const ZERO: Cyclotomic = Cyclotomic { a: 0, b: 0 };
    pub const ONE: Cyclotomic = Cyclotomic { a: 1, b: 0 };
    pub const OMEGA: Cyclotomic = Cyclotomic { a: 0, b: 1 };
    pub const OMEGA_SQUARED: Cyclotomic = Cyclotomic { a: -1, b: -1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Cyclotomic { a, b }
    }

    /// `ω^k` for any integer `k` (reduced mod 3).
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::ONE,
            1 => Self::OMEGA,
            _ => Self::OMEGA_SQUARED,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Returns `k` if `self == ω^k`.
    pub fn as_omega_power(&self) -> Option<u8> {
        match (self.a, self.b) {
            (1, 0) => Some(0),
            (0, 1) => Some(1),
            (-1, -1) => Some(2),
            _ => None,
        }
    }

    /// Complex conjugate: `conj(a + bω) = a + bω² = (a - b) - bω`.
    pub fn conj(&self) -> Self {
        Cyclotomic::new(self.a - self.b, -self.b)
    }

    /// Field norm `a² - ab + b²`, equal to `|a + bω|²`.
    pub fn norm(&self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    pub fn to_complex(&self) -> Complex<f64> {
        Complex::new(
            self.a as f64 - 0.5 * self.b as f64,
            SQRT3_OVER_2 * self.b as f64,
        )
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        Cyclotomic::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        Cyclotomic::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Cyclotomic::new(-self.a, -self.b)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd ω², ω² = -1 - ω
        let bd = self.b * rhs.b;
        Cyclotomic::new(
            self.a * rhs.a - bd,
            self.a * rhs.b + self.b * rhs.a - bd,
        )
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_omega_power() {
            Some(0) => return write!(f, "1"),
            Some(1) => return write!(f, "w"),
            Some(2) => return write!(f, "w^2"),
            _ => {}
        }
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}*w"),
            (a, b) if b < 0 => write!(f, "{a} - {}*w", -b),
            (a, b) => write!(f, "{a} + {b}*w"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_a_primitive_cube_root() {
        let w = Cyclotomic::OMEGA;
        assert_eq!(w * w, Cyclotomic::OMEGA_SQUARED);
        assert_eq!(w * w * w, Cyclotomic::ONE);
        assert_eq!(Cyclotomic::ONE + w + w * w, Cyclotomic::ZERO);
    }

    #[test]
    fn powers_have_unit_modulus() {
        for k in 0..3 {
            let z = Cyclotomic::omega_pow(k).to_complex();
            assert!((z.norm() - 1.0).abs() < 1e-15);
            assert_eq!(Cyclotomic::omega_pow(k).norm(), 1);
        }
        let w = Cyclotomic::OMEGA.to_complex();
        let expected = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((w - expected).norm() < 1e-15);
    }

    #[test]
    fn conj_swaps_omega_and_its_square() {
        assert_eq!(Cyclotomic::OMEGA.conj(), Cyclotomic::OMEGA_SQUARED);
        assert_eq!(Cyclotomic::OMEGA_SQUARED.conj(), Cyclotomic::OMEGA);
        let z = Cyclotomic::new(3, -2);
        assert_eq!(z * z.conj(), Cyclotomic::new(z.norm(), 0));
    }

    #[test]
    fn negative_exponents_wrap() {
        assert_eq!(Cyclotomic::omega_pow(-1), Cyclotomic::OMEGA_SQUARED);
        assert_eq!(Cyclotomic::omega_pow(5), Cyclotomic::OMEGA_SQUARED);
    }
}
