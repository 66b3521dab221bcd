//! Sparse elements of the ternary Grassmann algebra.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{Coefficient, Complex64, Exact};
use crate::error::{Error, Result};
use crate::index::{phase_exponent, MultiIndex};

/// A finite sum `Σ z_ν e^ν`.
///
/// Terms are kept in canonical [`MultiIndex`] order and zero coefficients are
/// never stored. Elements are immutable values; every operation returns a
/// new element.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<C: Coefficient> {
    terms: BTreeMap<MultiIndex, C>,
}

pub type ExactElement = Element<Exact>;
pub type FloatElement = Element<Complex64>;

impl<C: Coefficient> Default for Element<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Element<C> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::monomial(MultiIndex::zero(), c)
    }

    /// The generator `e_position`.
    pub fn generator(position: u32) -> Self {
        Self::monomial(
            MultiIndex::generator(position, 1).expect("positions are 1-based"),
            C::one(),
        )
    }

    /// `c · e^index`.
    pub fn monomial(index: MultiIndex, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(index, c);
        }
        Element { terms }
    }

    /// Sums the given terms; repeated indices accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut out = BTreeMap::new();
        for (idx, c) in terms {
            accumulate(&mut out, idx, c);
        }
        Self::normalized(out)
    }

    fn normalized(mut terms: BTreeMap<MultiIndex, C>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Element { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Option<&C> {
        self.terms.get(index)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest generator position in the support (0 for scalars).
    pub fn max_position(&self) -> u32 {
        self.terms.keys().map(MultiIndex::max_position).max().unwrap_or(0)
    }

    /// Largest total degree present, `None` for zero.
    pub fn max_grade(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::grade).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.terms.clone();
        for (idx, c) in &other.terms {
            accumulate(&mut out, idx.clone(), c.clone());
        }
        Self::normalized(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.neg())
    }

    /// `c · z`, coefficient-wise.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::normalized(
            self.terms
                .iter()
                .map(|(idx, z)| (idx.clone(), c.mul(z)))
                .collect(),
        )
    }

    /// The algebra product `z w = Σ σ(ν,μ) z_ν w_μ e^{ν+μ}`.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with_phase_rule(other, phase_exponent)
    }

    /// Product with a caller-supplied structure phase (exponent of ω, or
    /// `None` for a vanishing product).
    ///
    /// Slots that overflow past `e_j²` always vanish; the rule only decides
    /// the phase of admissible pairs. Used by the law suite to check that
    /// alternative phase rules are detected.
    pub fn mul_with_phase_rule<F>(&self, other: &Self, rule: F) -> Self
    where
        F: Fn(&MultiIndex, &MultiIndex) -> Option<u8>,
    {
        let mut out = BTreeMap::new();
        for (nu, a) in &self.terms {
            for (mu, b) in &other.terms {
                let Some(sum) = nu.checked_add(mu) else {
                    continue;
                };
                let Some(k) = rule(nu, mu) else {
                    continue;
                };
                accumulate(&mut out, sum, a.mul(b).scale_by_omega(k));
            }
        }
        Self::normalized(out)
    }

    /// `z^n` with `z^0 = 1`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul(self);
        }
        acc
    }

    /// Blade projection `[z]_k`: terms of total degree `k`.
    pub fn grade_project(&self, k: u32) -> Self {
        self.filter_terms(|idx| idx.grade() == k)
    }

    /// Component in `G^k`, `k ∈ {0,1,2}`: terms with `|ν| ≡ k (mod 3)`.
    pub fn z3_component(&self, k: u32) -> Self {
        self.filter_terms(|idx| idx.grade() % 3 == k % 3)
    }

    /// Scalar part (body) `z_0`.
    pub fn body(&self) -> C {
        self.terms
            .get(&MultiIndex::zero())
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Nilpotent remainder (soul) `z - z_0`.
    pub fn soul(&self) -> Self {
        self.filter_terms(|idx| !idx.is_zero())
    }

    /// Pseudo-conjugation: `conj(z_ν) σ(ν,ν) e^{2ν}` for square-free `ν`,
    /// and zero for any term containing a square.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(nu, c)| {
            let doubled = nu.doubled()?;
            let k = phase_exponent(nu, nu).expect("2ν is admissible for square-free ν");
            Some((doubled, c.conjugate().scale_by_omega(k)))
        }))
    }

    /// `P_n`: keeps the terms supported on positions `1..=d-n`.
    pub fn project_pn(&self, n: usize, d: usize) -> Result<Self> {
        if n > d {
            return Err(Error::InvalidProjector { n, d });
        }
        self.check_support(d)?;
        let keep = (d - n) as u32;
        Ok(self.filter_terms(|idx| idx.max_position() <= keep))
    }

    /// Least `m >= 1` with `soul(z)^m = 0`.
    pub fn nilpotency_index(&self) -> usize {
        let soul = self.soul();
        let mut power = soul.clone();
        let mut m = 1;
        while !power.is_zero() {
            power = power.mul(&soul);
            m += 1;
        }
        m
    }

    /// Two-sided inverse via the finite series
    /// `Σ_{k<m} (-1)^k soul^k / z_0^{k+1}`.
    pub fn inverse(&self) -> Result<Self> {
        let inv_body = self.body().try_inverse().ok_or(Error::NotInvertible)?;
        let step = self.soul().scale(&inv_body.neg());
        let mut term = Self::scalar(inv_body);
        let mut acc = term.clone();
        loop {
            term = term.mul(&step);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `ℓ²` pairing `⟨z, w⟩ = Σ z_ν conj(w_ν)`.
    pub fn l2_inner(&self, other: &Self) -> C {
        let mut acc = C::zero();
        for (idx, a) in &self.terms {
            if let Some(b) = other.terms.get(idx) {
                acc = acc.add(&a.mul(&b.conjugate()));
            }
        }
        acc
    }

    /// `z³` for a grade-1 element (always zero in this algebra).
    pub fn cube_of_vector(&self) -> Result<Self> {
        if let Some(bad) = self.terms.keys().find(|idx| idx.grade() != 1) {
            return Err(Error::NotGradeOne { grade: bad.grade() });
        }
        Ok(self.mul(self).mul(self))
    }

    /// Splits `z = A + B e_d + C e_d²` with `A, B, C` supported on `1..d-1`.
    pub fn decompose_last(&self, d: usize) -> Result<(Self, Self, Self)> {
        if d == 0 {
            return Err(Error::InvalidArgument("decomposition needs d >= 1".into()));
        }
        self.check_support(d)?;
        let mut parts: [BTreeMap<MultiIndex, C>; 3] = Default::default();
        for (idx, c) in &self.terms {
            let (rest, exp) = idx.split_off_position(d as u32);
            parts[exp as usize].insert(rest, c.clone());
        }
        let [a, b, c] = parts;
        Ok((
            Self::normalized(a),
            Self::normalized(b),
            Self::normalized(c),
        ))
    }

    /// `A' = Σ a_ν ω^{|ν|} e^ν`, so that `A e_j = e_j A'` when `A` lives
    /// below position `j`.
    pub fn omega_grade_twist(&self) -> Self {
        self.map_coefficients_indexed(|idx, c| c.scale_by_omega((idx.grade() % 3) as u8))
    }

    /// Errors when the support reaches beyond position `d`.
    pub fn check_support(&self, d: usize) -> Result<()> {
        match self.max_position() {
            p if p as usize > d => Err(Error::SupportOutOfRange { position: p, d }),
            _ => Ok(()),
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Element<D> {
        Element::normalized(
            self.terms
                .iter()
                .map(|(idx, c)| (idx.clone(), f(c)))
                .collect(),
        )
    }

    fn map_coefficients_indexed(&self, f: impl Fn(&MultiIndex, &C) -> C) -> Self {
        Self::normalized(
            self.terms
                .iter()
                .map(|(idx, c)| (idx.clone(), f(idx, c)))
                .collect(),
        )
    }

    fn filter_terms(&self, keep: impl Fn(&MultiIndex) -> bool) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(idx, _)| keep(idx))
                .map(|(idx, c)| (idx.clone(), c.clone()))
                .collect(),
        }
    }

    /// Double-precision copy.
    pub fn to_float(&self) -> FloatElement {
        self.map_coefficients(|c| c.to_complex())
    }
}

fn accumulate<C: Coefficient>(map: &mut BTreeMap<MultiIndex, C>, idx: MultiIndex, c: C) {
    match map.entry(idx) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            let sum = slot.get().add(&c);
            *slot.get_mut() = sum;
        }
    }
}

/// `I_n = e²_{d-n+1} ⋯ e²_d`.
pub fn projector_element<C: Coefficient>(n: usize, d: usize) -> Result<Element<C>> {
    if n == 0 || n > d {
        return Err(Error::InvalidProjector { n, d });
    }
    let entries = ((d - n + 1)..=d).map(|p| (p as u32, 2u8)).collect();
    Ok(Element::monomial(MultiIndex::from_entries(entries)?, C::one()))
}

/// The ternary form `𝒯(e_i, e_j, e_k)`: sum of the six orderings of the
/// triple product.
pub fn ternary_form<C: Coefficient>(i: u32, j: u32, k: u32) -> Result<Element<C>> {
    if i == 0 || !(i <= j && j <= k) {
        return Err(Error::InvalidArgument(format!(
            "ternary form needs 1 <= i <= j <= k, got ({i}, {j}, {k})"
        )));
    }
    let (a, b, c) = (
        Element::<C>::generator(i),
        Element::<C>::generator(j),
        Element::<C>::generator(k),
    );
    let triple = |x: &Element<C>, y: &Element<C>, z: &Element<C>| x.mul(y).mul(z);
    Ok([
        triple(&a, &b, &c),
        triple(&a, &c, &b),
        triple(&b, &a, &c),
        triple(&b, &c, &a),
        triple(&c, &a, &b),
        triple(&c, &b, &a),
    ]
    .iter()
    .fold(Element::zero(), |acc, t| acc.add(t)))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<C: Coefficient> $trait<&Element<C>> for &Element<C> {
            type Output = Element<C>;
            fn $method(self, rhs: &Element<C>) -> Element<C> {
                Element::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<C: Coefficient> Neg for &Element<C> {
    type Output = Element<C>;
    fn neg(self) -> Element<C> {
        Element::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;

    type E = ExactElement;

    fn e(p: u32) -> E {
        E::generator(p)
    }

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    fn w(k: u8) -> Exact {
        Exact::one().scale_by_omega(k)
    }

    fn mono(dense: &[u8], c: Exact) -> E {
        E::monomial(MultiIndex::from_dense(dense).unwrap(), c)
    }

    #[test]
    fn product_examples() {
        let e1 = e(1);
        assert!(e1.mul(&e1.pow(2)).is_zero());
        assert_eq!(e(2).mul(&e1), mono(&[1, 1], w(2)));
        let a = E::one().add(&e1);
        let b = E::one().sub(&e1).add(&e1.pow(2));
        assert_eq!(a.mul(&b), E::one());
    }

    #[test]
    fn add_and_scale_examples() {
        assert!(e(1).add(&e(1).neg()).is_zero());
        let z = e(1).add(&e(2));
        assert!(z.scale(&Exact::zero()).is_zero());
        let two = e(1).scale(&q(2, 1));
        let three = e(1).scale(&q(3, 1));
        assert_eq!(two.add(&three), e(1).scale(&q(5, 1)));
    }

    fn full_d2() -> E {
        // z = Σ z_ν e^ν over {0,1,2}^2 with distinct coefficients.
        E::from_terms(
            crate::index::all_indices(2)
                .into_iter()
                .enumerate()
                .map(|(k, idx)| (idx, q(k as i64 + 1, 1))),
        )
    }

    #[test]
    fn grade_projection_example() {
        let z = full_d2();
        let g3 = z.grade_project(3);
        // [z]_3 = z21 e1²e2 + z12 e1e2², the 7th and 8th canonical terms.
        assert_eq!(g3, mono(&[2, 1], q(7, 1)).add(&mono(&[1, 2], q(8, 1))));
        assert_eq!(E::one().grade_project(0), E::one());
        assert!(mono(&[1, 2], Exact::one()).grade_project(2).is_zero());
        let rebuilt = (0..=4).fold(E::zero(), |acc, k| acc.add(&z.grade_project(k)));
        assert_eq!(rebuilt, z);
    }

    #[test]
    fn z3_components() {
        let v = mono(&[1, 2], Exact::one());
        assert_eq!(v.z3_component(0), v);
        assert!(e(1).z3_component(0).is_zero());
        let z = full_d2();
        let sum = (0..3).fold(E::zero(), |acc, k| acc.add(&z.z3_component(k)));
        assert_eq!(sum, z);
        let prod = z.z3_component(1).mul(&z.z3_component(2));
        assert_eq!(prod.z3_component(0), prod);
    }

    #[test]
    fn ternary_form_examples() {
        for (i, j, k) in [(1, 1, 2), (1, 2, 3), (2, 2, 2)] {
            assert!(ternary_form::<Exact>(i, j, k).unwrap().is_zero());
        }
        assert!(ternary_form::<Exact>(2, 1, 3).is_err());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(e(1).conj(), e(1).pow(2));
        assert!(e(1).pow(2).conj().is_zero());
        assert_eq!(mono(&[1, 1], Exact::one()).conj(), mono(&[2, 2], w(2)));
        // anti-multiplicative on generators: conj(e1 e2) = conj(e2) conj(e1)
        assert_eq!(e(1).mul(&e(2)).conj(), e(2).conj().mul(&e(1).conj()));
        let i = Exact::imaginary_unit();
        assert_eq!(e(1).scale(&i).conj(), e(1).pow(2).scale(&i.neg()));
    }

    #[test]
    fn body_and_soul() {
        let z = E::scalar(q(3, 1)).add(&e(1));
        assert_eq!(z.body(), q(3, 1));
        assert_eq!(z.soul(), e(1));
        assert!(mono(&[1, 1], Exact::one()).body().is_zero());
        let zz = full_d2();
        assert_eq!(zz.conj().conj(), E::scalar(zz.body()));
    }

    #[test]
    fn projector_examples() {
        let z = full_d2();
        assert_eq!(z.project_pn(2, 2).unwrap(), E::scalar(z.body()));
        assert_eq!(z.project_pn(0, 2).unwrap(), z);
        assert_eq!(z.project_pn(3, 2), Err(Error::InvalidProjector { n: 3, d: 2 }));
        assert!(e(5).project_pn(1, 2).is_err());
        for n in 1..=2 {
            let i_n = projector_element::<Exact>(n, 2).unwrap();
            assert!(i_n.mul(&i_n).is_zero());
            let p = z.project_pn(n, 2).unwrap();
            assert_eq!(z.mul(&i_n), p.mul(&i_n));
            assert_eq!(p.project_pn(n, 2).unwrap(), p);
        }
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(E::scalar(q(5, 1)).add(&e(1)).nilpotency_index(), 3);
        assert_eq!(E::scalar(q(7, 1)).nilpotency_index(), 1);
        // brute force for 1 + e1 + e2
        let z = E::one().add(&e(1)).add(&e(2));
        let soul = z.soul();
        let brute = (1..10).find(|&m| soul.pow(m).is_zero()).unwrap() as usize;
        assert_eq!(z.nilpotency_index(), brute);
        assert_eq!(brute, 3);
    }

    #[test]
    fn inverse_examples() {
        let z = E::scalar(q(2, 1)).add(&e(1));
        let expected = E::scalar(q(1, 2))
            .sub(&e(1).scale(&q(1, 4)))
            .add(&e(1).pow(2).scale(&q(1, 8)));
        assert_eq!(z.inverse().unwrap(), expected);
        assert_eq!(E::one().inverse().unwrap(), E::one());
        assert_eq!(e(1).inverse(), Err(Error::NotInvertible));
        let zz = full_d2();
        let inv = zz.inverse().unwrap();
        assert_eq!(zz.mul(&inv), E::one());
        assert_eq!(inv.mul(&zz), E::one());
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(e(1).l2_inner(&e(1)), Exact::one());
        assert!(e(1).l2_inner(&e(2)).is_zero());
        let i = Exact::imaginary_unit();
        let z = e(1).scale(&q(2, 1)).add(&e(2).scale(&i));
        assert_eq!(z.l2_inner(&e(2)), i);
        assert_eq!(e(2).l2_inner(&z), i.neg());
    }

    #[test]
    fn cube_of_vector_examples() {
        assert!(e(1).add(&e(2)).cube_of_vector().unwrap().is_zero());
        assert!(e(1).scale(&q(2, 1)).cube_of_vector().unwrap().is_zero());
        let v = e(1).add(&e(2).scale(&w(1))).add(&e(3));
        assert!(v.cube_of_vector().unwrap().is_zero());
        assert_eq!(
            E::one().add(&e(1)).cube_of_vector(),
            Err(Error::NotGradeOne { grade: 0 })
        );
    }

    #[test]
    fn decomposition_and_twist() {
        let z = full_d2();
        let (a, b, c) = z.decompose_last(2).unwrap();
        let e2 = e(2);
        assert_eq!(a.add(&b.mul(&e2)).add(&c.mul(&e2.pow(2))), z);
        assert_eq!(a.mul(&e2), e2.mul(&a.omega_grade_twist()));
        // A = 0 forces z³ = 0
        let z0 = b.mul(&e2).add(&c.mul(&e2.pow(2)));
        assert!(z0.pow(3).is_zero());
    }

    #[test]
    fn float_mode_drops_tiny_terms() {
        let z = FloatElement::from_terms([
            (MultiIndex::zero(), Complex64::new(1.0, 0.0)),
            (MultiIndex::generator(1, 1).unwrap(), Complex64::new(1e-15, 0.0)),
        ]);
        assert_eq!(z.len(), 1);
        let e2e1 = FloatElement::generator(2).mul(&FloatElement::generator(1));
        let c = e2e1.terms().next().unwrap().1;
        assert!((c - Cyclotomic::OMEGA_SQUARED.to_complex()).norm() < 1e-15);
    }
}
