//! Term-sorted polynomials used inside standard-basis computations.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::ring::{Monomial, Rational, RingRef};

/// Terms sorted strictly descending in the active order, leading term first.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    pub terms: Vec<(Monomial, Rational)>,
    /// Largest total degree of a term.
    pub max_degree: u32,
}

impl SortedPoly {
    pub fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Self::from_sorted(terms)
    }

    fn from_sorted(terms: Vec<(Monomial, Rational)>) -> Self {
        let max_degree = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        SortedPoly { terms, max_degree }
    }

    pub fn to_poly(&self, ring: &RingRef) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    /// Degree difference between the whole polynomial and its leading
    /// monomial; drives Mora's normal form.
    pub fn ecart(&self) -> u32 {
        self.max_degree - self.lm().degree()
    }

    pub fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().recip();
        for (_, c) in &mut self.terms {
            *c *= &inv;
        }
    }

    /// `self - c * m * other`, merged in order.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, other: &SortedPoly, ord: &MonomialOrder) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Monomial, Rational)> = other.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        while i < self.terms.len() && j < shifted.len() {
            match ord.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 - &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(shifted[j..].iter().map(|(t, a)| (t.clone(), -a.clone())));
        SortedPoly::from_sorted(out)
    }

    /// Drops every term of degree `>= corner`.
    pub fn truncated(&self, corner: Option<u32>) -> SortedPoly {
        match corner {
            Some(d) if self.max_degree >= d => {
                SortedPoly::from_sorted(self.terms.iter().filter(|(m, _)| m.degree() < d).cloned().collect())
            }
            _ => self.clone(),
        }
    }

    /// Cancels the leading term of `self` against `g` (whose leading monomial
    /// must divide it).
    pub fn reduce_lead_by(&self, g: &SortedPoly, ord: &MonomialOrder) -> SortedPoly {
        let q = self.lm().div(g.lm()).expect("leading monomial must divide");
        let c = self.lc() / g.lc();
        self.sub_scaled(&c, &q, g, ord)
    }

    pub fn spoly(f: &SortedPoly, g: &SortedPoly, ord: &MonomialOrder) -> SortedPoly {
        let l = f.lm().lcm(g.lm());
        let mf = l.div(f.lm()).unwrap();
        let mg = l.div(g.lm()).unwrap();
        // (l/lm f)/lc f * f - (l/lm g)/lc g * g
        let a: Vec<(Monomial, Rational)> = {
            let inv = f.lc().recip();
            f.terms.iter().map(|(t, c)| (t.mul(&mf), c * &inv)).collect()
        };
        let fa = SortedPoly::from_sorted(a);
        fa.sub_scaled(&g.lc().recip(), &mg, g, ord)
    }
}

/// Full reduction (leading and tail terms) with respect to a global order.
pub(crate) fn reduce_full(f: &SortedPoly, basis: &[&SortedPoly], ord: &MonomialOrder) -> SortedPoly {
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, Rational)> = Vec::new();
    let mut max_deg = 0;
    while !rest.is_zero() {
        let divisor = basis.iter().find(|g| g.lm().divides(rest.lm()));
        match divisor {
            Some(g) => rest = rest.reduce_lead_by(g, ord),
            None => {
                let t = rest.terms.remove(0);
                max_deg = max_deg.max(t.0.degree());
                done.push(t);
            }
        }
    }
    SortedPoly { terms: done, max_degree: max_deg }
}

/// Mora's weak normal form with respect to a local order.
///
/// The set `t` of reducers grows by the intermediate results whenever a
/// reducer with larger ecart has to be used; this is what guarantees
/// termination when 1 is the largest monomial.
///
/// With a known highest corner `m^corner ⊆ I`, terms of degree at least
/// `corner` are dropped as they appear.
pub(crate) fn mora_normal_form(
    f: &SortedPoly,
    basis: &[SortedPoly],
    ord: &MonomialOrder,
    corner: Option<u32>,
) -> SortedPoly {
    let mut h = f.truncated(corner);
    let mut extra: Vec<SortedPoly> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        let best = basis
            .iter()
            .chain(extra.iter())
            .filter(|g| g.lm().divides(&lm))
            .min_by_key(|g| g.ecart());
        let g = match best {
            None => break,
            Some(g) => g.clone(),
        };
        if g.ecart() > h.ecart() {
            extra.push(h.clone());
        }
        h = h.reduce_lead_by(&g, ord).truncated(corner);
    }
    h
}
