use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::error::{AlgebraError, Result};
use super::order::MonomialOrder;
use super::ring::{check_same, Monomial, Rational, RingRef};

/// Sparse polynomial with rational coefficients. Zero coefficients are never
/// stored, so the zero polynomial is the empty term map.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn var(ring: &RingRef, i: usize) -> Result<Self> {
        if i >= ring.nvars() {
            return Err(AlgebraError::VariableOutOfRange { index: i, nvars: ring.nvars() });
        }
        Ok(Self::monomial(ring, Monomial::var(ring.nvars(), i), Rational::one()))
    }

    /// The variable called `name`; panics if the ring has no such variable.
    pub fn var_named(ring: &RingRef, name: &str) -> Self {
        let i = ring.index_of(name).unwrap_or_else(|| panic!("no variable `{name}` in [{ring}]"));
        Self::var(ring, i).unwrap()
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Drops all terms of total degree `>= d`.
    pub fn truncate_below(&self, d: u32) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.degree() < d).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if i >= n {
            return Err(AlgebraError::VariableOutOfRange { index: i, nvars: n });
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents_mut()[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Replaces every variable `x_i` by `images[i]`; all images must live in
    /// one common target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(AlgebraError::ArityMismatch { expected: n, got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        for p in images {
            check_same(&target, &p.ring)?;
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&target)]; n];
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitutes `value` for the single variable `var`, staying in the same ring.
    pub fn substitute_var(&self, var: usize, value: &Polynomial) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if var >= n {
            return Err(AlgebraError::VariableOutOfRange { index: var, nvars: n });
        }
        check_same(&self.ring, &value.ring)?;
        let images: Vec<Polynomial> = (0..n)
            .map(|i| if i == var { value.clone() } else { Polynomial::var(&self.ring, i).unwrap() })
            .collect();
        self.substitute(&images)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(AlgebraError::ArityMismatch { expected: n, got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Fails if a variable in use has no counterpart in `target`.
    pub fn map_to_ring(&self, target: &RingRef) -> Result<Polynomial> {
        let mut idx = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => idx.push(Some(j)),
                None if !self.uses_var(i) => idx.push(None),
                None => {
                    return Err(AlgebraError::RingMismatch {
                        left: self.ring.to_string(),
                        right: target.to_string(),
                    })
                }
            }
        }
        let n = target.nvars();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                if let Some(j) = idx[i] {
                    e[j] = x;
                }
            }
            out.add_term(Monomial::from_exponents(&e), c.clone());
        }
        Ok(out)
    }

    /// Renames the ring while keeping the variable positions.
    pub fn with_ring(&self, ring: &RingRef) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.ring.nvars(), got: ring.nvars() });
        }
        Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() })
    }

    /// Exact division `self / divisor`; errors when the remainder is non-zero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &divisor.ring)?;
        let ord = MonomialOrder::Lex;
        let (lm, lc) = match divisor.leading_term(&ord) {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(AlgebraError::InexactDivision),
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term(&ord).map(|(m, c)| (m.clone(), c.clone())) {
            let q = m.div(&lm).ok_or(AlgebraError::InexactDivision)?;
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&q, &qc);
            quot.add_term(q, qc);
        }
        Ok(quot)
    }

    /// Multiplies by the lcm of the denominators and divides by the content,
    /// so coefficients become coprime integers with positive leading
    /// coefficient under `ord`.
    pub fn primitive(&self, ord: &MonomialOrder) -> Polynomial {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let lead_neg = self.leading_term(ord).map(|(_, c)| c.is_negative()).unwrap_or(false);
        let mut s = Rational::new(den, num);
        if lead_neg {
            s = -s;
        }
        self.scale(&s)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let ord = MonomialOrder::DegRevLex;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| ord.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&m.format(&self.ring))?;
            } else {
                write!(f, "{a}*{}", m.format(&self.ring))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in [{}]", self.ring)
    }
}

// Operator impls assume matching rings; use the `try_*` methods when that is
// not already guaranteed.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
