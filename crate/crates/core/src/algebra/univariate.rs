//! Dense univariate polynomials over the rationals, coefficient `k` belongs to `x^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::error::{AlgebraError, Result};
use super::poly::Polynomial;
use super::ring::{Monomial, Rational, RingRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    /// Reads a polynomial that only involves variable `var`.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Option<Self> {
        let mut coeffs = vec![Rational::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            let e = m.exponent(var);
            if m.degree() != e {
                return None;
            }
            coeffs[e as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn to_polynomial(&self, ring: &RingRef, var: usize) -> Polynomial {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            self.0.iter().enumerate().map(|(k, c)| {
                let mut m = Monomial::one(n);
                m.exponents_mut()[var] = k as u32;
                (m, c.clone())
            }),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UniPoly::new(vec![]), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let lead_inv = d.lead().unwrap().recip();
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn integer_coefficients(&self) -> Vec<BigInt> {
        let den = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.0.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect()
    }

    /// All distinct rational roots, ascending.
    ///
    /// Real roots are isolated with a Sturm sequence. A rational root of the
    /// primitive integer form `a_n x^n + ... + a_0` has the shape `k / a_n`, so
    /// each isolating interval is shrunk below width `1 / a_n` and its single
    /// candidate is tested exactly.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroIdeal);
        }
        let p = self.squarefree_part();
        let Some(deg) = p.degree() else { return Ok(Vec::new()) };
        if deg == 0 {
            return Ok(Vec::new());
        }
        let ints = p.integer_coefficients();
        let lead = ints.last().unwrap().abs();
        let sturm = p.sturm_sequence();
        let bound = Rational::one()
            + p.0[..deg].iter().map(|c| (c / p.lead().unwrap()).abs()).max().unwrap_or_else(Rational::zero);
        let variations = |x: &Rational| -> usize {
            let signs: Vec<bool> =
                sturm.iter().map(|s| s.eval(x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let mut roots = Vec::new();
        let lo = -bound.clone();
        let mut stack = vec![(lo.clone(), bound.clone(), variations(&lo) - variations(&bound))];
        while let Some((lo, hi, count)) = stack.pop() {
            match count {
                0 => {}
                1 => roots.extend(p.refine_rational(lo, hi, &lead)),
                _ => {
                    let mut mid = (&lo + &hi) / Rational::from_integer(2.into());
                    if p.eval(&mid).is_zero() {
                        roots.push(mid.clone());
                        mid = (&lo * Rational::from_integer(2.into()) + &hi) / Rational::from_integer(3.into());
                    }
                    let vm = variations(&mid);
                    stack.push((lo.clone(), mid.clone(), variations(&lo) - vm));
                    stack.push((mid, hi.clone(), vm - variations(&hi)));
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                return seq;
            }
            seq.push(UniPoly(r.0.iter().map(|c| -c).collect()));
        }
    }

    /// The rational root in `(lo, hi]` if there is one; the interval holds
    /// exactly one simple real root.
    fn refine_rational(&self, mut lo: Rational, mut hi: Rational, lead: &BigInt) -> Option<Rational> {
        let spacing = Rational::new(BigInt::one(), lead.clone());
        if self.eval(&hi).is_zero() {
            return Some(hi);
        }
        let sign_lo = self.eval(&lo).is_positive();
        let two = Rational::from_integer(2.into());
        while &hi - &lo >= spacing {
            let mid = (&lo + &hi) / &two;
            let v = self.eval(&mid);
            if v.is_zero() {
                return Some(mid);
            }
            if v.is_positive() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let k = (&lo * Rational::from_integer(lead.clone())).ceil();
        let candidate = k * &spacing;
        (candidate > lo && candidate <= hi && self.eval(&candidate).is_zero()).then_some(candidate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{int, rat};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn roots_of_split_cubic() {
        // (2x - 1)(x + 3)(x - 2) = 2x^3 + x^2 - 13x + 6
        let p = up(&[6, -13, 1, 2]);
        assert_eq!(p.rational_roots().unwrap(), vec![int(-3), rat(1, 2), int(2)]);
    }

    #[test]
    fn squarefree_removes_repeated_factor() {
        // x^2 (x - 1)
        let p = up(&[0, 0, -1, 1]);
        assert_eq!(p.squarefree_part(), up(&[0, -1, 1]));
        assert_eq!(p.rational_roots().unwrap(), vec![int(0), int(1)]);
    }

    #[test]
    fn large_coefficients() {
        // (12345678901 x - 98765432101)(x^2 - 2)(7x + 3)
        let a = UniPoly::new(vec![int(-98765432101), int(12345678901)]);
        let b = up(&[-2, 0, 1]);
        let c = up(&[3, 7]);
        let p = mul(&mul(&a, &b), &c);
        assert_eq!(p.rational_roots().unwrap(), vec![rat(-3, 7), rat(98765432101, 12345678901)]);
    }

    fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut out = vec![Rational::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::new(out)
    }

    #[test]
    fn clustered_roots() {
        // (1000x - 1)(1001x - 1)(x + 1)
        let p = mul(&mul(&up(&[-1, 1000]), &up(&[-1, 1001])), &up(&[1, 1]));
        assert_eq!(p.rational_roots().unwrap(), vec![int(-1), rat(1, 1001), rat(1, 1000)]);
    }

    #[test]
    fn irrational_roots_are_not_reported() {
        assert!(up(&[-2, 0, 1]).rational_roots().unwrap().is_empty());
    }
}
