//! Point counting for zero-dimensional ideals.

use std::collections::HashMap;

use num_traits::Zero;

use super::error::{AlgebraError, Result};
use super::ideal::{Colength, Ideal, StandardBasis};
use super::linalg::{express_in_span, kernel, mat_mul, rank, SparseRow};
use super::poly::Polynomial;
use super::ring::{Monomial, Rational};
use super::smooth::vanishes_at;
use super::univariate::UniPoly;

fn coordinates(p: &Polynomial, index: &HashMap<Monomial, usize>) -> SparseRow {
    let mut row: SparseRow = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
    row.sort_by_key(|(k, _)| *k);
    row
}

/// Monic generator of `I ∩ k[x_var]` for a zero-dimensional ideal, found as
/// the minimal polynomial of multiplication by `x_var` on the quotient.
pub fn univariate_eliminant(gb: &StandardBasis, var: usize) -> Result<UniPoly> {
    let basis = gb.standard_monomials()?;
    let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let ring = gb.ring();
    let x = Polynomial::var(ring, var)?;
    let mut power = gb.normal_form(&Polynomial::one(ring))?;
    let mut rows: Vec<SparseRow> = vec![coordinates(&power, &index)];
    loop {
        power = gb.normal_form(&(&power * &x))?;
        rows.push(coordinates(&power, &index));
        if let Some(c) = express_in_span(&rows) {
            // x^k = sum c_i x^i  =>  x^k - sum c_i x^i
            let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
            coeffs.push(Rational::from_integer(1.into()));
            return Ok(UniPoly::new(coeffs));
        }
        if rows.len() > basis.len() + 1 {
            unreachable!("minimal polynomial degree exceeds the quotient dimension");
        }
    }
}

/// Radical of a zero-dimensional ideal: adjoin the square-free parts of all
/// univariate eliminants (valid in characteristic zero).
pub fn radical(ideal: &Ideal) -> Result<Ideal> {
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(Ideal::unit(ideal.ring()));
    }
    if gb.colength() == Colength::Infinite {
        return Err(AlgebraError::InfiniteColength);
    }
    let n = ideal.ring().nvars();
    let mut extra = Vec::with_capacity(n);
    for v in 0..n {
        let e = univariate_eliminant(&gb, v)?;
        extra.push(e.squarefree_part().to_polynomial(ideal.ring(), v));
    }
    ideal.with_generators(extra)?.reduced()
}

/// Number of points of `V(I)` over the algebraic closure.
pub fn distinct_points(ideal: &Ideal) -> Result<usize> {
    QuotientAlgebra::new(ideal)?.count_points(None)
}

/// All rational points of a zero-dimensional ideal, lexicographically sorted.
pub fn rational_points(ideal: &Ideal) -> Result<Vec<Vec<Rational>>> {
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    points_from_basis(&gb)
}

fn points_from_basis(gb: &StandardBasis) -> Result<Vec<Vec<Rational>>> {
    if gb.colength() == Colength::Infinite {
        return Err(AlgebraError::InfiniteColength);
    }
    let ideal = gb.to_ideal();
    let n = ideal.ring().nvars();
    let mut candidates: Vec<Vec<Rational>> = vec![Vec::new()];
    for v in 0..n {
        let roots = univariate_eliminant(gb, v)?.rational_roots()?;
        let mut next = Vec::new();
        for c in &candidates {
            for r in &roots {
                let mut p = c.clone();
                p.push(r.clone());
                next.push(p);
            }
        }
        candidates = next;
        if candidates.is_empty() {
            return Ok(Vec::new());
        }
    }
    let mut points = Vec::new();
    for p in candidates {
        if vanishes_at(&ideal, &p)? {
            points.push(p);
        }
    }
    points.sort();
    Ok(points)
}

/// Ideal of a single rational point.
pub fn point_ideal(ring: &super::ring::RingRef, point: &[Rational]) -> Result<Ideal> {
    let gens = point
        .iter()
        .enumerate()
        .map(|(i, a)| Ok(&Polynomial::var(ring, i)? - &Polynomial::constant(ring, a.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

pub fn is_origin(point: &[Rational]) -> bool {
    point.iter().all(Zero::is_zero)
}

/// The finite-dimensional algebra `k[x]/I` on the standard monomials of a
/// degrevlex Groebner basis.
pub struct QuotientAlgebra {
    gb: StandardBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl QuotientAlgebra {
    pub fn new(ideal: &Ideal) -> Result<Self> {
        let gb = ideal.groebner()?;
        if gb.colength() == Colength::Infinite {
            return Err(AlgebraError::InfiniteColength);
        }
        let basis = gb.standard_monomials()?;
        let index = basis.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        Ok(QuotientAlgebra { gb, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rational_points(&self) -> Result<Vec<Vec<Rational>>> {
        if self.dim() == 0 {
            return Ok(Vec::new());
        }
        points_from_basis(&self.gb)
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    fn coordinates(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let nf = self.gb.normal_form(p)?;
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    fn basis_poly(&self, k: usize) -> Polynomial {
        Polynomial::monomial(self.gb.ring(), self.basis[k].clone(), Rational::from_integer(1.into()))
    }

    /// Matrix of multiplication by `p`; column `j` is the image of the
    /// `j`-th basis monomial.
    pub fn multiplication_matrix(&self, p: &Polynomial) -> Result<Vec<Vec<Rational>>> {
        let n = self.dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for j in 0..n {
            for (i, c) in self.coordinates(&(p * &self.basis_poly(j)))?.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// The summand of the algebra living at the points where all of `polys`
    /// vanish: the common generalized kernel of their multiplication maps.
    /// Returned as a basis of column vectors.
    pub fn supported_on(&self, polys: &[Polynomial]) -> Result<Vec<Vec<Rational>>> {
        let n = self.dim();
        if polys.is_empty() {
            return Ok((0..n).map(|k| (0..n).map(|i| Rational::from_integer((i == k).into())).collect()).collect());
        }
        let mut stacked = Vec::new();
        for p in polys {
            // M^n kills exactly the local summands where p vanishes
            let m = self.multiplication_matrix(p)?;
            let mut power = m.clone();
            let mut e = 1;
            while e < n {
                power = mat_mul(&power, &power);
                e *= 2;
            }
            stacked.extend(power);
        }
        Ok(kernel(stacked))
    }

    /// Gram matrix of the trace form `(a, b) -> Tr(ab)` on the basis.
    pub fn trace_form(&self) -> Result<Vec<Vec<Rational>>> {
        let n = self.dim();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.coordinates(&(&self.basis_poly(i) * &self.basis_poly(j)))?;
                table[j][i] = v.clone();
                table[i][j] = v;
            }
        }
        let traces: Vec<Rational> = (0..n).map(|k| (0..n).fold(Rational::zero(), |acc, j| acc + &table[k][j][j])).collect();
        Ok(table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().zip(&traces).fold(Rational::zero(), |acc, (a, t)| acc + a * t))
                    .collect()
            })
            .collect())
    }

    /// Number of distinct points carrying the given summand (the whole
    /// algebra when `subspace` is `None`): the rank of the trace form
    /// restricted to it.
    pub fn count_points(&self, subspace: Option<&[Vec<Rational>]>) -> Result<usize> {
        if self.dim() == 0 {
            return Ok(0);
        }
        let q = self.trace_form()?;
        match subspace {
            None => Ok(rank(&q)),
            Some([]) => Ok(0),
            Some(vs) => {
                // V^T Q V with the subspace vectors as columns of V
                let qv: Vec<Vec<Rational>> = q
                    .iter()
                    .map(|row| vs.iter().map(|v| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)).collect())
                    .collect();
                let restricted: Vec<Vec<Rational>> = vs
                    .iter()
                    .map(|v| {
                        (0..vs.len())
                            .map(|c| v.iter().zip(&qv).fold(Rational::zero(), |acc, (a, row)| acc + a * &row[c]))
                            .collect()
                    })
                    .collect();
                Ok(rank(&restricted))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::int;
    use crate::algebra::ring::Ring;
    use crate::parse::parse_polynomial;

    #[test]
    fn points_of_a_conic_and_line() {
        let r = Ring::new(["x", "y"]).unwrap();
        let i = Ideal::new(
            &r,
            ["x^2 + y^2 - 1", "y"].iter().map(|g| parse_polynomial(g, &r).unwrap()),
        )
        .unwrap();
        assert_eq!(rational_points(&i).unwrap(), vec![vec![int(-1), int(0)], vec![int(1), int(0)]]);
        assert_eq!(distinct_points(&i).unwrap(), 2);
    }

    #[test]
    fn radical_of_fat_point() {
        let r = Ring::new(["x", "y"]).unwrap();
        let i = Ideal::new(&r, ["x^2", "y^3", "x*y"].iter().map(|g| parse_polynomial(g, &r).unwrap())).unwrap();
        assert_eq!(distinct_points(&i).unwrap(), 1);
        let sqrt = radical(&i).unwrap();
        assert!(sqrt.same_ideal(&Ideal::maximal(&r)).unwrap());
    }

    #[test]
    fn irrational_points_are_counted_but_not_listed() {
        let r = Ring::new(["x", "y"]).unwrap();
        let i = Ideal::new(&r, ["x^2 - 2", "y - x"].iter().map(|g| parse_polynomial(g, &r).unwrap())).unwrap();
        assert!(rational_points(&i).unwrap().is_empty());
        assert_eq!(distinct_points(&i).unwrap(), 2);
    }

    #[test]
    fn summands_at_a_hyperplane() {
        // a double point at the origin and a simple point at (1, 0)
        let r = Ring::new(["x", "y"]).unwrap();
        let i = Ideal::new(&r, ["x^2*(x - 1)", "y"].iter().map(|g| parse_polynomial(g, &r).unwrap())).unwrap();
        let a = QuotientAlgebra::new(&i).unwrap();
        assert_eq!(a.dim(), 3);
        let x = Polynomial::var(&r, 0).unwrap();
        let at_origin = a.supported_on(&[x]).unwrap();
        assert_eq!(at_origin.len(), 2);
        assert_eq!(a.count_points(Some(&at_origin)).unwrap(), 1);
        assert_eq!(a.count_points(None).unwrap(), 2);
    }
}
