//! The spin Calogero–Moser operator and its relation to the radial Casimir.

use serde::Serialize;

use super::coeff::RationalCoeff;
use super::diffop::{compose, laplacian, DiffOp};
use super::laurent::LaurentPoly;
use super::lie::Side;
use super::radial::RadialEngine;
use crate::error::Result;
use crate::linalg::{fmt_q, q, qf, Q};
use crate::rootsys::{Root, RootSystem, Weight};

/// `-Δ + Σ_{α>0} (-1) π(X_α X_{-α}) / (h^α - 2 + h^{-α})` on `V[0]`-valued
/// functions, with `-Δ = ½ Σ G_ij θ_i θ_j`.
pub fn cm_hamiltonian(engine: &RadialEngine) -> DiffOp {
    let rs = &engine.lie.rs;
    let d0 = engine.zero_dim();
    let mut h = laplacian(&rs.form, d0, &qf(1, 2));
    for index in 0..rs.positive_roots.len() {
        let x = engine.v.root_vector(Root { index, positive: true });
        let y = engine.v.root_vector(Root {
            index,
            positive: false,
        });
        let xy = engine.zero.restrict(&(&x * &y));
        let alpha = &rs.positive_roots[index].weight;
        // 1/(h^α - 2 + h^{-α}) = h^α / (1 - h^α)^2
        let coeff = &RationalCoeff::monomial(alpha.clone(), q(-1)) * &RationalCoeff::one_minus_pow(alpha, -2);
        h = h.add(&DiffOp::scalar_times(&coeff, &xy)).expect("shapes agree");
    }
    h
}

/// Weyl denominator `δ = h^ρ ∏_{α>0} (1 - h^{-α})`.
pub fn weyl_denominator(rs: &RootSystem) -> LaurentPoly {
    rs.positive_roots
        .iter()
        .fold(LaurentPoly::monomial(rs.rho.clone(), q(1)), |acc, r| {
            &acc * &LaurentPoly::one_minus(&-&r.weight)
        })
}

/// `δ^{-1} = h^{-ρ} ∏_{α>0} (1 - h^{-α})^{-1}`.
pub fn weyl_denominator_inverse(rs: &RootSystem) -> RationalCoeff {
    rs.positive_roots
        .iter()
        .fold(RationalCoeff::monomial(-&rs.rho, q(1)), |acc, r| {
            &acc * &RationalCoeff::one_minus_inv(&-&r.weight)
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gauge {
    Plain,
    DeltaTwisted,
}

impl Gauge {
    pub fn as_str(self) -> &'static str {
        match self {
            Gauge::Plain => "plain",
            Gauge::DeltaTwisted => "delta-twisted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Difference {
    Zero,
    Constant(Q),
    /// Order-zero but not a constant multiple of the identity.
    Potential,
    Derivatives(u32),
}

impl Difference {
    pub fn constant(&self) -> Option<Q> {
        match self {
            Difference::Zero => Some(Q::from_integer(0.into())),
            Difference::Constant(c) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Difference::Zero => "zero".into(),
            Difference::Constant(c) => format!("constant {}", fmt_q(c)),
            Difference::Potential => "non-constant potential".into(),
            Difference::Derivatives(k) => format!("derivatives up to order {k}"),
        }
    }
}

pub fn classify(op: &DiffOp) -> Difference {
    if op.is_zero() {
        return Difference::Zero;
    }
    if op.has_derivatives() {
        return Difference::Derivatives(op.order());
    }
    match op.as_constant() {
        Some(c) => Difference::Constant(c),
        None => Difference::Potential,
    }
}

#[derive(Clone, Debug)]
pub struct GaugeReport {
    pub mu: Weight,
    /// `½ radial(c₂) - H_CM`.
    pub plain: Difference,
    /// `δ ∘ ½ radial(c₂) ∘ δ^{-1} - H_CM`.
    pub twisted: Difference,
}

impl GaugeReport {
    /// The first gauge in which the difference is constant, with
    /// `c₀ = -(difference)` so that `H_CM = (gauge) ½ radial(c₂) + c₀`.
    pub fn selected(&self) -> Option<(Gauge, Q)> {
        if let Some(c) = self.plain.constant() {
            return Some((Gauge::Plain, -c));
        }
        self.twisted.constant().map(|c| (Gauge::DeltaTwisted, -c))
    }
}

pub fn gauge_compare(engine: &mut RadialEngine) -> Result<GaugeReport> {
    let half = engine.casimir()?.scale(&qf(1, 2));
    let h = cm_hamiltonian(engine);
    let plain = classify(&half.sub(&h)?);
    let d0 = engine.zero_dim();
    let id = crate::linalg::QMatrix::identity(d0);
    let rs = engine.lie.rs.clone();
    let delta = DiffOp::scalar_times(&RationalCoeff::from_poly(weyl_denominator(&rs)), &id);
    let delta_inv = DiffOp::scalar_times(&weyl_denominator_inverse(&rs), &id);
    let twisted_op = compose(&delta, &compose(&half, &delta_inv)?)?;
    let twisted = classify(&twisted_op.sub(&h)?);
    Ok(GaugeReport {
        mu: engine.v.highest_weight.clone(),
        plain,
        twisted,
    })
}

/// `H^V_k = (tr ⊗ id)(X^{side})^k`.
pub fn integral_hn(engine: &mut RadialEngine, k: u32, side: Side) -> Result<DiffOp> {
    engine.amu_element(&[(side, k)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn trivial_mu_hamiltonian_is_laplacian() {
        let eng = RadialEngine::new(2, &w(&[0])).unwrap();
        let h = cm_hamiltonian(&eng);
        assert!(!h.terms.is_empty());
        assert_eq!(h.terms.len(), 1);
        assert_eq!(h.terms.keys().next().unwrap(), &vec![2]);
    }

    #[test]
    fn delta_times_inverse_is_one() {
        let rs = crate::rootsys::build_root_system(3).unwrap();
        let d = RationalCoeff::from_poly(weyl_denominator(&rs));
        assert_eq!((&d * &weyl_denominator_inverse(&rs)).as_constant(), Some(q(1)));
    }

    #[test]
    fn sl2_gauges() {
        let mut eng = RadialEngine::new(2, &w(&[2])).unwrap();
        let report = gauge_compare(&mut eng).unwrap();
        assert!(report.selected().is_some(), "{report:?}");
    }
}
