//! Coefficient fields for [`Element`](crate::Element).
//!
//! Two fields are provided:
//!
//! * [`Exact`]: the cyclotomic field `Q(i, ω)`, written as `(x + y·ω) / den`
//!   with `x, y` Gaussian integers. It is closed under complex conjugation and
//!   contains every structure constant, so algebraic laws can be checked with
//!   `==`.
//! * [`Complex64`]: double precision, with terms of modulus at most
//!   [`FLOAT_ZERO_THRESHOLD`] dropped on normalization.

use std::fmt;

use num::bigint::Sign;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::{BigInt, Complex, Integer};

use crate::cyclotomic::{Cyclotomic, SQRT3_OVER_2};

pub type Complex64 = Complex<f64>;

/// Float coefficients at or below this modulus are treated as zero.
pub const FLOAT_ZERO_THRESHOLD: f64 = 1e-14;

/// Float scalars at or below this modulus are reported as non-invertible.
pub const FLOAT_INVERSE_FLOOR: f64 = 1e-12;

/// Arithmetic required of element coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    /// Exact rational value (floats round).
    fn from_rational(value: &BigRational) -> Self;
    fn imaginary_unit() -> Self;
    fn from_phase(phase: Cyclotomic) -> Self;
    /// `None` when the pair has no representation (non-finite input).
    fn from_f64_parts(re: f64, im: f64) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Complex conjugation of the coefficient.
    fn conjugate(&self) -> Self;
    /// Multiplicative inverse, `None` for zero (or below the float floor).
    fn try_inverse(&self) -> Option<Self>;
    /// `self · ω^k`.
    fn scale_by_omega(&self, k: u8) -> Self;
    fn to_complex(&self) -> Complex64;

    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    fn mul_phase(&self, phase: Cyclotomic) -> Self {
        match phase.as_omega_power() {
            Some(k) => self.scale_by_omega(k),
            None => self.mul(&Self::from_phase(phase)),
        }
    }
}

// ---------------------------------------------------------------------------
// Exact coefficients

/// Exact element of `Q(i, ω)`: `(x + y·ω) / den` with Gaussian integers
/// `x = num[0] + num[1]·i`, `y = num[2] + num[3]·i` and `den > 0`.
///
/// The representation is kept reduced (`gcd(num…, den) = 1`), so structural
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    num: [BigInt; 4],
    den: BigInt,
}

type Gaussian = (BigInt, BigInt);

fn g_mul(a: &Gaussian, b: &Gaussian) -> Gaussian {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn g_sub(a: &Gaussian, b: &Gaussian) -> Gaussian {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn g_add(a: &Gaussian, b: &Gaussian) -> Gaussian {
    (&a.0 + &b.0, &a.1 + &b.1)
}

impl Exact {
    fn from_raw(num: [BigInt; 4], den: BigInt) -> Self {
        let mut out = Exact { num, den };
        out.reduce();
        out
    }

    fn from_gaussians(x: Gaussian, y: Gaussian, den: BigInt) -> Self {
        Self::from_raw([x.0, x.1, y.0, y.1], den)
    }

    fn reduce(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.sign() == Sign::Minus {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        let mut g = self.den.clone();
        for n in &self.num {
            g = g.gcd(n);
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n = &*n / &g;
            }
            self.den = &self.den / &g;
        }
    }

    fn x(&self) -> Gaussian {
        (self.num[0].clone(), self.num[1].clone())
    }

    fn y(&self) -> Gaussian {
        (self.num[2].clone(), self.num[3].clone())
    }

    /// Gaussian rational `(re + im·i)`.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let re_n = re.numer() * (&den / re.denom());
        let im_n = im.numer() * (&den / im.denom());
        Self::from_raw([re_n, im_n, BigInt::zero(), BigInt::zero()], den)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_raw(
            [BigInt::from(numer), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            BigInt::from(denom),
        )
    }

    pub fn omega() -> Self {
        Self::from_phase(Cyclotomic::OMEGA)
    }

    /// The two Gaussian-rational components `(x/den, y/den)` of `x/den + (y/den)·ω`,
    /// each as `(re, im)`.
    pub fn components(&self) -> [(BigRational, BigRational); 2] {
        let r = |n: &BigInt| BigRational::new(n.clone(), self.den.clone());
        [
            (r(&self.num[0]), r(&self.num[1])),
            (r(&self.num[2]), r(&self.num[3])),
        ]
    }

    /// True for nonnegative rationals (no `i`, no `ω` component).
    pub fn is_nonnegative_rational(&self) -> bool {
        self.num[1].is_zero()
            && self.num[2].is_zero()
            && self.num[3].is_zero()
            && !self.num[0].is_negative()
    }

    /// Splits `self = q · ω^k` with `q` Gaussian rational, when possible.
    pub fn as_scaled_phase(&self) -> Option<((BigRational, BigRational), u8)> {
        let [x, y] = self.components();
        let zero = (BigRational::zero(), BigRational::zero());
        if y == zero {
            return Some((x, 0));
        }
        if x == zero {
            return Some((y, 1));
        }
        // q ω² = -q - q ω
        if x == y {
            return Some(((-x.0, -x.1), 2));
        }
        None
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Exact(({} + {}i) + ({} + {}i)w) / {}",
            self.num[0], self.num[1], self.num[2], self.num[3], self.den
        )
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::NAN)
}

impl Coefficient for Exact {
    fn zero() -> Self {
        Exact {
            num: [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigInt::one(),
        }
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn from_i64(value: i64) -> Self {
        Exact {
            num: [BigInt::from(value), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigInt::one(),
        }
    }

    fn from_rational(value: &BigRational) -> Self {
        Self::gaussian(value.clone(), BigRational::zero())
    }

    fn imaginary_unit() -> Self {
        Exact {
            num: [BigInt::zero(), BigInt::one(), BigInt::zero(), BigInt::zero()],
            den: BigInt::one(),
        }
    }

    fn from_phase(phase: Cyclotomic) -> Self {
        Self::from_raw(
            [BigInt::from(phase.a), BigInt::zero(), BigInt::from(phase.b), BigInt::zero()],
            BigInt::one(),
        )
    }

    fn from_f64_parts(re: f64, im: f64) -> Option<Self> {
        let re = BigRational::from_float(re)?;
        let im = BigRational::from_float(im)?;
        Some(Self::gaussian(re, im))
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::from_raw(
                std::array::from_fn(|k| &self.num[k] + &rhs.num[k]),
                self.den.clone(),
            );
        }
        Self::from_raw(
            std::array::from_fn(|k| &self.num[k] * &rhs.den + &rhs.num[k] * &self.den),
            &self.den * &rhs.den,
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (x + yω)(x' + y'ω) = (xx' - yy') + (xy' + yx' - yy')ω
        let (x, y, xp, yp) = (self.x(), self.y(), rhs.x(), rhs.y());
        let yy = g_mul(&y, &yp);
        let re = g_sub(&g_mul(&x, &xp), &yy);
        let om = g_sub(&g_add(&g_mul(&x, &yp), &g_mul(&y, &xp)), &yy);
        Self::from_gaussians(re, om, &self.den * &rhs.den)
    }

    fn neg(&self) -> Self {
        Exact {
            num: std::array::from_fn(|k| -&self.num[k]),
            den: self.den.clone(),
        }
    }

    fn conjugate(&self) -> Self {
        // conj(x + yω) = x̄ + ȳω² = (x̄ - ȳ) - ȳω
        let xb = (self.num[0].clone(), -&self.num[1]);
        let yb = (self.num[2].clone(), -&self.num[3]);
        let re = g_sub(&xb, &yb);
        Self::from_gaussians(re, (-yb.0, -yb.1), self.den.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/(x + yω) = (x + yω²) / N,  N = x² - xy + y² ∈ Z[i]
        let (x, y) = (self.x(), self.y());
        let galois = (g_sub(&x, &y), (-&y.0, -&y.1));
        let norm = g_add(&g_sub(&g_mul(&x, &x), &g_mul(&x, &y)), &g_mul(&y, &y));
        // 1/N = N̄ / |N|²
        let norm_bar = (norm.0.clone(), -&norm.1);
        let abs2 = &norm.0 * &norm.0 + &norm.1 * &norm.1;
        let scale = (&norm_bar.0 * &self.den, &norm_bar.1 * &self.den);
        Some(Self::from_gaussians(
            g_mul(&galois.0, &scale),
            g_mul(&galois.1, &scale),
            abs2,
        ))
    }

    fn scale_by_omega(&self, k: u8) -> Self {
        match k % 3 {
            0 => self.clone(),
            // ω(x + yω) = -y + (x - y)ω
            1 => {
                let (x, y) = (self.x(), self.y());
                let re = (-&y.0, -&y.1);
                Self::from_gaussians(re, g_sub(&x, &y), self.den.clone())
            }
            // ω²(x + yω) = (y - x) - xω
            _ => {
                let (x, y) = (self.x(), self.y());
                let re = g_sub(&y, &x);
                Self::from_gaussians(re, (-&x.0, -&x.1), self.den.clone())
            }
        }
    }

    fn to_complex(&self) -> Complex64 {
        let den = big_to_f64(&self.den);
        let x = Complex::new(big_to_f64(&self.num[0]), big_to_f64(&self.num[1]));
        let y = Complex::new(big_to_f64(&self.num[2]), big_to_f64(&self.num[3]));
        let w = Complex::new(-0.5, SQRT3_OVER_2);
        (x + y * w) / den
    }
}

// ---------------------------------------------------------------------------
// Float coefficients

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }

    fn from_i64(value: i64) -> Self {
        Complex::new(value as f64, 0.0)
    }

    fn from_rational(value: &BigRational) -> Self {
        Complex::new(value.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn imaginary_unit() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn from_phase(phase: Cyclotomic) -> Self {
        phase.to_complex()
    }

    fn from_f64_parts(re: f64, im: f64) -> Option<Self> {
        (re.is_finite() && im.is_finite()).then(|| Complex::new(re, im))
    }

    fn is_zero(&self) -> bool {
        self.norm() <= FLOAT_ZERO_THRESHOLD
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn try_inverse(&self) -> Option<Self> {
        (self.norm() > FLOAT_INVERSE_FLOOR).then(|| self.inv())
    }

    fn scale_by_omega(&self, k: u8) -> Self {
        match k % 3 {
            0 => *self,
            _ => self * Cyclotomic::omega_pow(k as i64).to_complex(),
        }
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}
