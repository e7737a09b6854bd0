//! Colength of local ideals and modules by linear algebra on truncated jets.
//!
//! For a submodule `N` of the free module `O^p` over the local ring at the
//! origin, `dim O^p / (N + m^D O^p)` is computable from the finitely many
//! monomial vectors of degree `< D`. If the value agrees for `D` and `2D` then
//! `m^D O^p ⊆ N + m^{2D} O^p`, hence `m^D O^p ⊆ N` by Nakayama, and the value
//! is the exact colength. This route shares no code with the standard-basis
//! engine, which makes it usable as an independent check.

use std::collections::HashMap;

use super::budget::Budget;
use super::ideal::Ideal;
use super::linalg::{Echelon, SparseRow};
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::ring::{Monomial, RingRef};

const MAX_COLUMNS: usize = 150_000;
/// Column limit for the cheap probe run before local standard bases.
const PROBE_COLUMNS: usize = 4_000;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum JetColength {
    /// The truncated dimension stabilized; the value is exact.
    Stable(usize),
    /// The budget ran out before two successive caps agreed.
    Unstable { history: Vec<(u32, usize)> },
}

impl JetColength {
    pub fn stable(&self) -> Option<usize> {
        match self {
            JetColength::Stable(n) => Some(*n),
            JetColength::Unstable { .. } => None,
        }
    }
}

/// A submodule of `O^p` given by generating vectors.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    pub ring: RingRef,
    pub rank: usize,
    pub generators: Vec<Vec<Polynomial>>,
}

/// Quotient dimension and monomial basis at one truncation degree.
#[derive(Debug, Clone)]
pub struct TruncatedQuotient {
    pub cap: u32,
    pub dimension: usize,
    /// `(component, monomial)` pairs spanning the quotient, low degree first.
    pub basis: Vec<(usize, Monomial)>,
}

/// All monomials of degree `< cap`, highest degree first, degrevlex-descending
/// inside each degree.
pub(crate) fn monomials_below(nvars: usize, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn rec(var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == cur.len() {
            cur[var] = left;
            out.push(Monomial::from_exponents(cur));
            cur[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e;
            rec(var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    if nvars == 0 {
        return vec![Monomial::one(0)];
    }
    let mut cur = vec![0u32; nvars];
    for d in (0..cap).rev() {
        let start = out.len();
        rec(0, d, &mut cur, &mut out);
        let ord = MonomialOrder::DegRevLex;
        out[start..].sort_by(|a, b| ord.cmp(b, a));
    }
    out
}

fn column_count(nvars: usize, cap: u32, rank: usize) -> usize {
    // binomial(nvars + cap - 1, nvars) monomials of degree < cap
    let mut c: u128 = 1;
    for k in 0..nvars as u128 {
        c = c * (cap as u128 + k) / (k + 1);
    }
    (c as usize).saturating_mul(rank)
}

impl ModulePresentation {
    pub fn from_ideal(ideal: &Ideal) -> Self {
        ModulePresentation {
            ring: ideal.ring().clone(),
            rank: 1,
            generators: ideal.generators().iter().map(|g| vec![g.clone()]).collect(),
        }
    }

    /// Exact `dim O^p / (N + m^cap O^p)` with a monomial basis of the quotient.
    pub fn truncated_quotient(&self, cap: u32) -> Option<TruncatedQuotient> {
        self.truncated_quotient_within(cap, MAX_COLUMNS)
    }

    fn truncated_quotient_within(&self, cap: u32, max_columns: usize) -> Option<TruncatedQuotient> {
        let n = self.ring.nvars();
        if column_count(n, cap, self.rank) > max_columns {
            return None;
        }
        let mons = monomials_below(n, cap);
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::with_capacity(mons.len() * self.rank);
        for (k, m) in mons.iter().enumerate() {
            for j in 0..self.rank {
                index.insert((j, m.clone()), k * self.rank + j);
            }
        }
        let mut ech = Echelon::new();
        for g in &self.generators {
            let low = g.iter().filter_map(|p| p.order()).min();
            let Some(low) = low else { continue };
            for m in &mons {
                if m.degree() + low >= cap {
                    continue;
                }
                let mut row: SparseRow = Vec::new();
                for (j, p) in g.iter().enumerate() {
                    for (t, c) in p.terms() {
                        let prod = t.mul(m);
                        if prod.degree() < cap {
                            row.push((index[&(j, prod)], c.clone()));
                        }
                    }
                }
                if row.is_empty() {
                    continue;
                }
                row.sort_by_key(|(k, _)| *k);
                ech.insert(row);
            }
        }
        let mut basis: Vec<(usize, Monomial)> = Vec::new();
        for (k, m) in mons.iter().enumerate() {
            for j in 0..self.rank {
                if !ech.is_pivot(k * self.rank + j) {
                    basis.push((j, m.clone()));
                }
            }
        }
        basis.reverse();
        Some(TruncatedQuotient { cap, dimension: basis.len(), basis })
    }

    /// Doubles the truncation degree from `start_cap` until two successive
    /// dimensions agree.
    pub fn stable_length(&self, start_cap: u32) -> (JetColength, Option<TruncatedQuotient>) {
        let max_cap = Budget::current().jet_degree_cap;
        let mut history = Vec::new();
        let mut cap = start_cap.max(1);
        let mut prev: Option<TruncatedQuotient> = None;
        while cap <= max_cap {
            let Some(q) = self.truncated_quotient(cap) else { break };
            history.push((cap, q.dimension));
            if let Some(p) = &prev {
                if p.dimension == q.dimension {
                    return (JetColength::Stable(q.dimension), Some(p.clone()));
                }
            }
            prev = Some(q);
            cap *= 2;
        }
        (JetColength::Unstable { history }, None)
    }
}

/// Smallest `k` with `m^k ⊆ I` in the local ring, if a small probe finds
/// one. Equal dimensions of `O/(I + m^k)` and `O/(I + m^{k+1})` give
/// `m^k ⊆ I + m^{k+1}`, hence `m^k ⊆ I` by Nakayama.
pub(crate) fn local_power_in(ideal: &Ideal) -> Option<u32> {
    let pres = ModulePresentation::from_ideal(ideal);
    let max_cap = Budget::current().jet_degree_cap;
    let mut prev = pres.truncated_quotient_within(1, PROBE_COLUMNS)?.dimension;
    for k in 1..max_cap {
        let next = pres.truncated_quotient_within(k + 1, PROBE_COLUMNS)?.dimension;
        if next == prev {
            return Some(k);
        }
        prev = next;
    }
    None
}

/// Local colength of `ideal` by truncated linear algebra.
pub fn jet_colength_oracle(ideal: &Ideal, degree_cap: u32) -> JetColength {
    ModulePresentation::from_ideal(ideal).stable_length(degree_cap).0
}
