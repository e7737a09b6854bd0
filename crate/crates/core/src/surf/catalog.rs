//! Weighted hypersurfaces `X_d ⊂ P(1,1,p,q)` whose deformations keep their
//! rational double points.

use serde::Serialize;

use super::{invalid, Result};
use crate::singular::AdeType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogQuery {
    /// `P(1,1,2,3)`, `d = 1 + 6k`, singularities `A1 + A2`.
    Family1 { k: u64 },
    /// `P(1,1,p,p+1)`, `d = p(k(p+1) - 1)`, one `A_p`.
    Family2 { p: u64, k: u64 },
    /// `P(1,1,p,rp-1)`, `d = (kp-1)(rp-1)` with `r > p-2`, one `A_{p-1}`.
    Family3 { p: u64, r: u64, k: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedCatalogEntry {
    pub family: u8,
    pub weights: [u64; 4],
    pub degree: u64,
    pub singularities: Vec<AdeType>,
    pub parameters: Vec<(String, u64)>,
}

fn check_ambient(weights: [u64; 4], d: u64) -> Result<()> {
    let bound = 2 + weights[2] + weights[3];
    if d <= bound {
        return invalid(format!("degree {d} must exceed 2 + p + q = {bound}"));
    }
    Ok(())
}

/// The catalog entry for one parameter choice; choices violating an
/// inequality are errors.
pub fn weighted_catalog(query: CatalogQuery) -> Result<WeightedCatalogEntry> {
    let entry = match query {
        CatalogQuery::Family1 { k } => {
            if k < 1 {
                return invalid("k must be at least 1");
            }
            WeightedCatalogEntry {
                family: 1,
                weights: [1, 1, 2, 3],
                degree: 1 + 6 * k,
                singularities: vec![AdeType::a(1), AdeType::a(2)],
                parameters: vec![("k".into(), k)],
            }
        }
        CatalogQuery::Family2 { p, k } => {
            if p < 2 || k < 1 {
                return invalid(format!("need p >= 2 and k >= 1, got p = {p}, k = {k}"));
            }
            WeightedCatalogEntry {
                family: 2,
                weights: [1, 1, p, p + 1],
                degree: p * (k * (p + 1) - 1),
                singularities: vec![AdeType::a(p as usize)],
                parameters: vec![("p".into(), p), ("k".into(), k)],
            }
        }
        CatalogQuery::Family3 { p, r, k } => {
            if p < 2 || k < 1 || r < 1 {
                return invalid(format!("need p >= 2, r >= 1, k >= 1, got p = {p}, r = {r}, k = {k}"));
            }
            if r + 2 <= p {
                return invalid(format!("need r > p - 2, got p = {p}, r = {r}"));
            }
            WeightedCatalogEntry {
                family: 3,
                weights: [1, 1, p, r * p - 1],
                degree: (k * p - 1) * (r * p - 1),
                singularities: vec![AdeType::a((p - 1) as usize)],
                parameters: vec![("p".into(), p), ("r".into(), r), ("k".into(), k)],
            }
        }
    };
    check_ambient(entry.weights, entry.degree)?;
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_family() {
        assert!(weighted_catalog(CatalogQuery::Family1 { k: 1 }).is_err());
        let e = weighted_catalog(CatalogQuery::Family1 { k: 2 }).unwrap();
        assert_eq!((e.weights, e.degree), ([1, 1, 2, 3], 13));
        assert_eq!(e.singularities, vec![AdeType::a(1), AdeType::a(2)]);
    }

    #[test]
    fn second_and_third_families() {
        let e = weighted_catalog(CatalogQuery::Family2 { p: 2, k: 2 }).unwrap();
        assert_eq!((e.weights, e.degree, e.singularities.clone()), ([1, 1, 2, 3], 10, vec![AdeType::a(2)]));
        let e = weighted_catalog(CatalogQuery::Family3 { p: 3, r: 2, k: 2 }).unwrap();
        assert_eq!((e.weights, e.degree, e.singularities.clone()), ([1, 1, 3, 5], 25, vec![AdeType::a(2)]));
        assert!(weighted_catalog(CatalogQuery::Family3 { p: 5, r: 3, k: 2 }).is_err());
        assert!(weighted_catalog(CatalogQuery::Family2 { p: 1, k: 3 }).is_err());
    }
}
