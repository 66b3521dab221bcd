//! Multiplication operators `M_ν`, their `ℓ²` adjoints and Berezin integration.

use crate::coeff::Coefficient;
use crate::element::Element;
use crate::index::{all_indices, phase_exponent, MultiIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `M_ν e^μ = σ(ν,μ) e^{ν+μ}`.
    Multiply,
    /// `M*_ν e^μ = conj(σ(ν,μ-ν)) e^{μ-ν}`.
    Adjoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    pub kind: OperatorKind,
    pub index: MultiIndex,
}

impl MonomialOperator {
    pub fn multiply(index: MultiIndex) -> Self {
        MonomialOperator {
            kind: OperatorKind::Multiply,
            index,
        }
    }

    pub fn adjoint(index: MultiIndex) -> Self {
        MonomialOperator {
            kind: OperatorKind::Adjoint,
            index,
        }
    }

    pub fn apply<C: Coefficient>(&self, g: &Element<C>) -> Element<C> {
        match self.kind {
            OperatorKind::Multiply => mul_op(&self.index, g),
            OperatorKind::Adjoint => adjoint_op(&self.index, g),
        }
    }

    /// Single-slot factors whose composition equals this operator, in
    /// application order: `M_ν = M_{ν₁} ⋯ M_{ν_d}` applies the last slot
    /// first, `M*_ν = M*_{ν_d} ⋯ M*_{ν₁}` applies the first slot first.
    pub fn factors(&self) -> Vec<MonomialOperator> {
        let mut out: Vec<MonomialOperator> = self
            .index
            .entries()
            .iter()
            .map(|&(p, e)| MonomialOperator {
                kind: self.kind,
                index: MultiIndex::generator(p, e).expect("stored entries are valid"),
            })
            .collect();
        if self.kind == OperatorKind::Multiply {
            out.reverse();
        }
        out
    }

    /// Dense matrix in the monomial basis of `G_{3,d}` (canonical order),
    /// `matrix[row][col] = ⟨op e^col, e^row⟩`. Size `3^d × 3^d`.
    pub fn matrix<C: Coefficient>(&self, d: usize) -> Vec<Vec<C>> {
        let basis = all_indices(d);
        let mut m = vec![vec![C::zero(); basis.len()]; basis.len()];
        for (col, mu) in basis.iter().enumerate() {
            let image = self.apply(&Element::monomial(mu.clone(), C::one()));
            for (row, eta) in basis.iter().enumerate() {
                if let Some(c) = image.coefficient(eta) {
                    m[row][col] = c.clone();
                }
            }
        }
        m
    }
}

/// `M_ν g`.
pub fn mul_op<C: Coefficient>(nu: &MultiIndex, g: &Element<C>) -> Element<C> {
    Element::from_terms(g.terms().filter_map(|(mu, c)| {
        let k = phase_exponent(nu, mu)?;
        Some((nu.checked_add(mu)?, c.scale_by_omega(k)))
    }))
}

/// `M*_ν g`; terms with `μ - ν` inadmissible are dropped.
pub fn adjoint_op<C: Coefficient>(nu: &MultiIndex, g: &Element<C>) -> Element<C> {
    Element::from_terms(g.terms().filter_map(|(mu, c)| {
        let rest = mu.checked_sub(nu)?;
        let k = phase_exponent(nu, &rest)?;
        Some((rest, c.scale_by_omega((3 - k) % 3)))
    }))
}

/// `∫ d e^ν g := M*_ν g`.
pub fn berezin_integral<C: Coefficient>(nu: &MultiIndex, g: &Element<C>) -> Element<C> {
    adjoint_op(nu, g)
}

/// `M*_f g = Σ conj(f_ν) g_μ conj(σ(ν, μ-ν)) e^{μ-ν}`.
pub fn adjoint_full<C: Coefficient>(f: &Element<C>, g: &Element<C>) -> Element<C> {
    f.terms()
        .map(|(nu, c)| adjoint_op(nu, g).scale(&c.conjugate()))
        .fold(Element::zero(), |acc, t| acc.add(&t))
}

/// Basis terms of `g` that left multiplication by `f` sends to zero.
pub fn annihilated_terms<C: Coefficient>(f: &Element<C>, g: &Element<C>) -> Vec<MultiIndex> {
    g.terms()
        .map(|(mu, _)| mu)
        .filter(|mu| f.mul(&Element::monomial((*mu).clone(), C::one())).is_zero())
        .cloned()
        .collect()
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

    fn idx(dense: &[u8]) -> MultiIndex {
        MultiIndex::from_dense(dense).unwrap()
    }

    #[test]
    fn mul_op_examples() {
        assert_eq!(mul_op(&idx(&[1]), &el("1")), el("e[1]"));
        assert_eq!(mul_op(&idx(&[0, 1]), &el("e[1]")), el("w^2*e[1]*e[2]"));
        assert!(mul_op(&idx(&[2]), &el("e[1]")).is_zero());
        let f = el("2 + e[1] - i*e[2]*e[3]^2");
        let mf1 = f
            .terms()
            .map(|(nu, c)| mul_op(nu, &ExactElement::one()).scale(c))
            .fold(ExactElement::zero(), |a, t| a.add(&t));
        assert_eq!(mf1, f);
    }

    #[test]
    fn adjoint_op_examples() {
        let nu = idx(&[1, 2, 0, 1]);
        assert_eq!(
            adjoint_op(&nu, &ExactElement::monomial(nu.clone(), Exact::one())),
            el("1")
        );
        assert!(adjoint_op(&idx(&[1]), &el("1")).is_zero());
        // σ((1),(1,1)) = ω^0, so the conjugate phase is 1
        assert_eq!(adjoint_op(&idx(&[1]), &el("e[1]^2*e[2]")), el("e[1]*e[2]"));
        // σ((0,1),(1,0)) = ω², conjugated to ω
        assert_eq!(adjoint_op(&idx(&[0, 1]), &el("e[1]*e[2]")), el("w*e[1]"));
    }

    #[test]
    fn berezin_examples() {
        let g = el("(3 - 2*i)*e[1]*e[3]^2 + e[2]");
        let nu = idx(&[1, 0, 2]);
        assert_eq!(berezin_integral(&nu, &g), el("3 - 2*i"));
        assert!(berezin_integral(&nu, &el("1")).is_zero());
    }

    #[test]
    fn adjoint_full_examples() {
        assert_eq!(adjoint_full(&el("e[1]"), &el("e[1]")), el("1"));
        let f = el("(2 + i) + e[1]*e[2]");
        assert_eq!(adjoint_full(&f, &el("1")), el("2 - i"));
    }

    #[test]
    fn composition_order() {
        let g = el("1 + e[1] + e[2]*e[3] + e[1]^2*e[3]");
        for dense in [[1u8, 1, 0], [2, 0, 1], [0, 1, 2]] {
            for op in [
                MonomialOperator::multiply(idx(&dense)),
                MonomialOperator::adjoint(idx(&dense)),
            ] {
                let composed = op.factors().iter().fold(g.clone(), |acc, f| f.apply(&acc));
                assert_eq!(composed, op.apply(&g), "{op:?}");
            }
        }
    }

    #[test]
    fn annihilators() {
        let g = el("e[1] + e[1]^2 + e[2]");
        let dead = annihilated_terms(&el("e[1]^2"), &g);
        assert_eq!(dead, vec![idx(&[1]), idx(&[2])]);
    }

    #[test]
    fn single_slot_support_tables() {
        // M_(k) maps e^μ to a nonzero multiple of e^{μ+k} iff μ_j + k <= 2
        // M*_(k) iff μ_j - k >= 0
        for k in 1..=2u8 {
            for m in 0..=2u8 {
                let g = ExactElement::monomial(idx(&[m]), Exact::one());
                let mul = !mul_op(&idx(&[k]), &g).is_zero();
                let adj = !adjoint_op(&idx(&[k]), &g).is_zero();
                assert_eq!(mul, m + k <= 2);
                assert_eq!(adj, m >= k);
            }
        }
    }
}
