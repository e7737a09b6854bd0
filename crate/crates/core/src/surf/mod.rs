//! Numerical invariants of surfaces of general type and nodal surfaces in
//! projective 3-space.

mod catalog;
mod segre;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::singular::SingularityError;

pub use catalog::{weighted_catalog, CatalogQuery, WeightedCatalogEntry};
pub use segre::{build_segre_surface, count_nodes, count_singular_points, NodeCount, SegreSurface, MAX_SEGRE_ATTEMPTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("divisibility obstruction: {order} does not divide 4(g1-1)(g2-1) = {numerator}")]
    DivisibilityObstruction { numerator: i64, order: i64 },
    #[error("no generic choice found after {attempts} attempts; last failure: {reason}")]
    RetriesExhausted { attempts: usize, reason: String },
    #[error("the singular locus has dimension {0} in projective space")]
    PositiveDimensionalSingularLocus(usize),
    #[error("expected a homogeneous polynomial of degree at least 2 in 4 variables")]
    NotProjectiveSurface,
}

pub type Result<T> = std::result::Result<T, SurfaceError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(SurfaceError::InvalidInput(msg.into()))
}

/// `chi` is the holomorphic Euler characteristic, `k2` the canonical degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub k2: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pg: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0_theta: Option<i64>,
}

impl SurfaceInvariants {
    /// Minimal surfaces of general type have `chi >= 1` and `k2 >= 1`.
    pub fn new(chi: i64, k2: i64) -> Result<Self> {
        if chi < 1 || k2 < 1 {
            return invalid(format!("need chi >= 1 and K^2 >= 1, got chi = {chi}, K^2 = {k2}"));
        }
        Ok(SurfaceInvariants { chi, k2, pg: None, q: None, h0_theta: None })
    }

    pub fn with_h0_theta(mut self, h0: i64) -> Result<Self> {
        if h0 < 0 {
            return invalid(format!("h0(Theta) must be non-negative, got {h0}"));
        }
        self.h0_theta = Some(h0);
        Ok(self)
    }
}

/// `h^0(5mK) = chi + (5m-1)5m K^2 / 2` for the 5-canonical model.
pub fn hilbert_polynomial(inv: &SurfaceInvariants, m: i64) -> Result<BigInt> {
    if m < 1 {
        return invalid(format!("m must be at least 1, got {m}"));
    }
    let m = BigInt::from(m);
    let five_m = &m * 5;
    // (5m-1)*5m is a product of consecutive integers, hence even
    let half = (&five_m - 1) * &five_m / 2;
    Ok(BigInt::from(inv.chi) + half * inv.k2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnriquesBound {
    /// `10 chi - 2 K^2 + h0(Theta)`, possibly negative.
    pub raw: i64,
    /// The raw value clamped at 0.
    pub display: i64,
    /// True when the raw value is negative and the bound says nothing.
    pub vacuous: bool,
    /// True when `h0(Theta)` was not given and 0 was used.
    pub h0_theta_defaulted: bool,
}

/// Lower bound for the dimension of the local deformation space.
pub fn enriques_lower_bound(inv: &SurfaceInvariants) -> EnriquesBound {
    let h0 = inv.h0_theta.unwrap_or(0);
    let raw = 10 * inv.chi - 2 * inv.k2 + h0;
    EnriquesBound { raw, display: raw.max(0), vacuous: raw < 0, h0_theta_defaulted: inv.h0_theta.is_none() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodalRecord {
    pub d: u32,
    pub mu_known: Option<u64>,
    pub witness_name: String,
}

const RECORDS: [(u32, u64, &str); 5] = [
    (2, 1, "quadric cone"),
    (3, 4, "Cayley's cubic"),
    (4, 16, "Kummer surfaces"),
    (5, 31, "Togliatti quintics"),
    (6, 65, "Barth's sextic"),
];

/// Known maximal node counts; `None` above degree 6.
pub fn nodal_record(d: u32) -> Option<NodalRecord> {
    RECORDS
        .iter()
        .find(|(deg, _, _)| *deg == d)
        .map(|(d, mu, w)| NodalRecord { d: *d, mu_known: Some(*mu), witness_name: (*w).to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodalBounds {
    pub d: u32,
    /// `(d+3)(d+2)(d+1)/6 - 16`: projective moduli count.
    pub severi: i64,
    /// The moduli count only makes sense when the generic surface has a
    /// finite automorphism group, i.e. `d >= 4`.
    pub severi_caveat: bool,
    /// `d^2 (d-1) / 4` for even `d`.
    pub segre: Option<i64>,
    /// Asymptotic lower bound `(5/12) d^3`.
    #[serde(serialize_with = "ser_rational")]
    pub chmutov_low: Rational,
    /// Asymptotic upper bound `(4/9) d^3`.
    #[serde(serialize_with = "ser_rational")]
    pub miyaoka_high: Rational,
    pub record: Option<NodalRecord>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn severi_bound(d: u32) -> i64 {
    let d = d as i64;
    (d + 3) * (d + 2) * (d + 1) / 6 - 16
}

pub fn segre_count(d: u32) -> Option<i64> {
    let d = d as i64;
    (d % 2 == 0).then(|| d * d * (d - 1) / 4)
}

pub fn nodal_bounds(d: u32) -> Result<NodalBounds> {
    if d < 2 {
        return invalid(format!("degree must be at least 2, got {d}"));
    }
    let cube = Rational::from_integer(BigInt::from(d).pow(3));
    Ok(NodalBounds {
        d,
        severi: severi_bound(d),
        severi_caveat: d < 4,
        segre: segre_count(d),
        chmutov_low: Rational::new(5.into(), 12.into()) * &cube,
        miyaoka_high: Rational::new(4.into(), 9.into()) * &cube,
        record: nodal_record(d),
    })
}

/// Smallest even degree `4 <= d <= limit` where the Segre count beats the
/// Severi bound. Below degree 4 the bound is negative and means nothing.
pub fn first_segre_counterexample(limit: u32) -> Option<u32> {
    (4..=limit).step_by(2).find(|&d| segre_count(d).unwrap() > severi_bound(d))
}

/// Euler number `4 (g1-1)(g2-1) / |G|` of a surface isogenous to a product.
pub fn isogenous_euler(g1: i64, g2: i64, order: i64) -> Result<i64> {
    if g1 < 2 || g2 < 2 {
        return invalid(format!("genera must be at least 2, got ({g1}, {g2})"));
    }
    if order < 1 {
        return invalid(format!("group order must be positive, got {order}"));
    }
    let numerator = 4 * (g1 - 1) * (g2 - 1);
    if numerator % order != 0 {
        return Err(SurfaceError::DivisibilityObstruction { numerator, order });
    }
    Ok(numerator / order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DoubleCover {
    pub invariants: SurfaceInvariants,
    pub moduli_dim: i64,
}

/// Double covers of an abelian surface with polarization type `(d1, d2)`.
pub fn double_cover_invariants(d1: i64, d2: i64) -> Result<DoubleCover> {
    if d1 < 1 || d2 < 1 {
        return invalid(format!("polarization type must be positive, got ({d1}, {d2})"));
    }
    if d2 % d1 != 0 {
        return invalid(format!("d1 must divide d2, got ({d1}, {d2})"));
    }
    let pg = d1 * d2 + 1;
    let q = 2;
    let chi = pg - q + 1;
    let invariants = SurfaceInvariants { chi, k2: 4 * (pg - 1), pg: Some(pg), q: Some(q), h0_theta: None };
    Ok(DoubleCover { invariants, moduli_dim: 4 * d1 * d2 + 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hilbert_values() {
        let inv = SurfaceInvariants::new(1, 1).unwrap();
        assert_eq!(hilbert_polynomial(&inv, 1).unwrap(), BigInt::from(11));
        let inv = SurfaceInvariants::new(4, 4).unwrap();
        assert_eq!(hilbert_polynomial(&inv, 2).unwrap(), BigInt::from(184));
        assert!(hilbert_polynomial(&inv, 0).is_err());
        assert!(SurfaceInvariants::new(0, 1).is_err());
    }

    #[test]
    fn enriques() {
        let b = enriques_lower_bound(&SurfaceInvariants::new(1, 1).unwrap().with_h0_theta(0).unwrap());
        assert_eq!((b.raw, b.vacuous, b.h0_theta_defaulted), (8, false, false));
        let b = enriques_lower_bound(&SurfaceInvariants::new(1, 9).unwrap());
        assert_eq!((b.raw, b.display, b.vacuous, b.h0_theta_defaulted), (-8, 0, true, true));
    }

    #[test]
    fn nodal_table() {
        let b = nodal_bounds(6).unwrap();
        assert_eq!((b.severi, b.segre), (68, Some(45)));
        let r = b.record.unwrap();
        assert_eq!((r.mu_known, r.witness_name.as_str()), (Some(65), "Barth's sextic"));
        let b = nodal_bounds(4).unwrap();
        assert_eq!((b.segre, b.record.unwrap().mu_known), (Some(12), Some(16)));
        assert_eq!(nodal_bounds(5).unwrap().segre, None);
        assert!(nodal_bounds(2).unwrap().severi_caveat);
        assert!(nodal_bounds(7).unwrap().record.is_none());
        assert!(nodal_bounds(1).is_err());
        assert_eq!(first_segre_counterexample(20), Some(16));
        assert_eq!((segre_count(16), severi_bound(16)), (Some(960), 953));
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(isogenous_euler(2, 2, 1).unwrap(), 4);
        assert_eq!(isogenous_euler(6, 6, 25).unwrap(), 4);
        assert!(matches!(isogenous_euler(2, 2, 3), Err(SurfaceError::DivisibilityObstruction { .. })));
        assert!(matches!(isogenous_euler(1, 2, 1), Err(SurfaceError::InvalidInput(_))));
    }

    #[test]
    fn double_covers() {
        let c = double_cover_invariants(1, 1).unwrap();
        assert_eq!((c.invariants.pg, c.invariants.chi, c.invariants.k2, c.moduli_dim), (Some(2), 1, 4, 6));
        let c = double_cover_invariants(1, 2).unwrap();
        assert_eq!((c.invariants.pg, c.invariants.chi, c.invariants.k2, c.moduli_dim), (Some(3), 2, 8, 10));
        assert!(double_cover_invariants(2, 3).is_err());
    }

    proptest! {
        #[test]
        fn p5_identity(chi in 1i64..1000, k2 in 1i64..1000) {
            let inv = SurfaceInvariants::new(chi, k2).unwrap();
            prop_assert_eq!(hilbert_polynomial(&inv, 1).unwrap(), BigInt::from(chi + 10 * k2));
        }

        #[test]
        fn euler_errors_iff_not_divisible(g1 in 2i64..40, g2 in 2i64..40, order in 1i64..200) {
            let divides = (4 * (g1 - 1) * (g2 - 1)) % order == 0;
            prop_assert_eq!(isogenous_euler(g1, g2, order).is_ok(), divides);
        }

        #[test]
        fn double_cover_identities(d1 in 1i64..20, m in 1i64..20) {
            let c = double_cover_invariants(d1, d1 * m).unwrap();
            prop_assert_eq!(c.invariants.k2, 4 * c.invariants.chi);
            prop_assert_eq!(c.moduli_dim, 4 * c.invariants.chi + 2);
        }
    }
}
