use std::fmt;

use num_traits::One;

use super::budget::Budget;
use super::engine::{reduce_full, SortedPoly};
use super::error::{AlgebraError, Result};
use super::groebner;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::ring::{check_same, Monomial, Rational, Ring, RingRef};

/// Finite generator list in a fixed ring. Zero generators are dropped on
/// construction, so an ideal with no generators is the zero ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
}

/// Vector-space dimension of a quotient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

/// A completed basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ring: RingRef,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    sorted: Vec<SortedPoly>,
    reduced: bool,
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in generators {
            check_same(ring, g.ring())?;
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators: gens })
    }

    /// Ideal generated by a non-empty list, taking the ring from its members.
    pub fn from_polys(generators: Vec<Polynomial>) -> Result<Ideal> {
        let ring = generators.first().ok_or(AlgebraError::ZeroIdeal)?.ring().clone();
        Ideal::new(&ring, generators)
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), generators: vec![Polynomial::one(ring)] }
    }

    /// The ideal of the origin, `(x_1, ..., x_n)`.
    pub fn maximal(ring: &RingRef) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i).unwrap());
        Ideal::new(ring, gens).unwrap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn standard_basis(&self, ord: &MonomialOrder) -> Result<StandardBasis> {
        if let MonomialOrder::Elimination(blocks) = ord {
            if blocks.iter().sum::<usize>() > self.ring.nvars() {
                return Err(AlgebraError::UnsupportedOrder(ord.name(), "blocks exceed variable count"));
            }
        }
        let mut gens: Vec<SortedPoly> = self.generators.iter().map(|g| SortedPoly::from_poly(g, ord)).collect();
        if ord.is_local() && !self.generators.is_empty() && self.ring.nvars() > 0 {
            // with m^k inside I, every computation can work modulo m^k
            if let Some(k) = super::jet::local_power_in(self) {
                let n = self.ring.nvars();
                for i in 0..n {
                    let mut e = vec![0; n];
                    e[i] = k;
                    let p = Polynomial::monomial(&self.ring, Monomial::from_exponents(&e), Rational::one());
                    gens.push(SortedPoly::from_poly(&p, ord));
                }
            }
        }
        let sorted = groebner::complete(gens, ord)?;
        let elements = sorted.iter().map(|s| s.to_poly(&self.ring)).collect();
        Ok(StandardBasis {
            ring: self.ring.clone(),
            order: ord.clone(),
            elements,
            sorted,
            reduced: ord.is_global(),
        })
    }

    /// Reduced Groebner basis in degrevlex.
    pub fn groebner(&self) -> Result<StandardBasis> {
        self.standard_basis(&MonomialOrder::DegRevLex)
    }

    pub fn colength(&self, ord: &MonomialOrder) -> Result<Colength> {
        Ok(self.standard_basis(ord)?.colength())
    }

    pub fn standard_monomials(&self, ord: &MonomialOrder) -> Result<Vec<Monomial>> {
        self.standard_basis(ord)?.standard_monomials()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        check_same(&self.ring, f.ring())?;
        Ok(self.groebner()?.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        check_same(&self.ring, &other.ring)?;
        let gb = self.groebner()?;
        for g in &other.generators {
            if !gb.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    /// Krull dimension of the quotient ring; `None` for the unit ideal.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.groebner()?.dimension())
    }

    /// Equality of ideals, decided by comparing reduced Groebner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        check_same(&self.ring, &other.ring)?;
        let a = self.groebner()?;
        let b = other.groebner()?;
        Ok(a.elements == b.elements)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &other.ring)?;
        Ideal::new(&self.ring, self.generators.iter().chain(other.generators.iter()).cloned())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.ring, self.generators.iter().cloned().chain(extra))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &other.ring)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Image of every generator under the substitution `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Ideal> {
        let target = match images.first() {
            Some(p) => p.ring().clone(),
            None => self.ring.clone(),
        };
        let gens = self.generators.iter().map(|g| g.substitute(images)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&target, gens)
    }

    pub fn map_to_ring(&self, target: &RingRef) -> Result<Ideal> {
        let gens = self.generators.iter().map(|g| g.map_to_ring(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Generators of `I ∩ k[remaining variables]`, returned in the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        for &v in vars {
            if v >= n {
                return Err(AlgebraError::VariableOutOfRange { index: v, nvars: n });
            }
        }
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let mut perm: Vec<usize> = vars.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|i| !vars.contains(i)));
        let names: Vec<String> = perm.iter().map(|&i| self.ring.name(i).to_string()).collect();
        let aux = Ring::new(names)?;
        let moved = self.map_to_ring(&aux)?;
        let gb = moved.standard_basis(&MonomialOrder::Elimination(vec![k, n - k]))?;
        let kept: Vec<Polynomial> = gb
            .elements
            .iter()
            .filter(|p| (0..k).all(|i| !p.uses_var(i)))
            .map(|p| p.map_to_ring(&self.ring))
            .collect::<Result<_>>()?;
        Ideal::new(&self.ring, kept)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &other.ring)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let tname = self.ring.fresh_name("t_elim");
        let mut names = vec![tname.clone()];
        names.extend(self.ring.names().iter().cloned());
        let aux = Ring::new(names)?;
        let t = Polynomial::var(&aux, 0)?;
        let one_minus_t = &Polynomial::one(&aux) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.map_to_ring(&aux)?);
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.map_to_ring(&aux)?);
        }
        let gb = Ideal::new(&aux, gens)?.standard_basis(&MonomialOrder::Elimination(vec![1, self.ring.nvars()]))?;
        let kept: Vec<Polynomial> = gb
            .elements
            .iter()
            .filter(|p| !p.uses_var(0))
            .map(|p| p.map_to_ring(&self.ring))
            .collect::<Result<_>>()?;
        Ideal::new(&self.ring, kept)
    }

    /// `I : (f)`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, [f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet.generators.iter().map(|g| g.exact_div(f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I : J`, the intersection of the quotients by the generators of `J`.
    pub fn quotient(&self, j: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &j.ring)?;
        let mut acc: Option<Ideal> = None;
        for f in &j.generators {
            let q = self.quotient_by(f)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `I : J^∞` by iterated quotients, stopping when the ideal stops growing.
    pub fn saturate(&self, j: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &j.ring)?;
        let limit = Budget::current().max_saturation_iterations;
        let mut current = self.reduced()?;
        for _ in 0..limit {
            let next = current.quotient(j)?.reduced()?;
            if next.generators == current.generators {
                return Ok(current);
            }
            current = next;
        }
        Err(AlgebraError::SaturationDiverged(limit))
    }

    /// The ideal presented by its reduced degrevlex Groebner basis.
    pub fn reduced(&self) -> Result<Ideal> {
        let gb = self.groebner()?;
        Ok(Ideal { ring: self.ring.clone(), generators: gb.elements })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in [{}]", self.ring)
    }
}

impl StandardBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal { ring: self.ring.clone(), generators: self.elements.clone() }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.iter().any(|s| s.lm().is_one())
    }

    fn divisible(&self, m: &Monomial) -> bool {
        self.sorted.iter().any(|s| s.lm().divides(m))
    }

    /// Exponent bound per variable from pure-power leading monomials, if every
    /// variable has one.
    fn box_bounds(&self) -> Option<Vec<u32>> {
        let n = self.ring.nvars();
        let mut bounds: Vec<Option<u32>> = vec![None; n];
        for s in &self.sorted {
            let lm = s.lm();
            if lm.is_one() {
                return Some(vec![0; n]);
            }
            if let Some(v) = lm.pure_power_var() {
                let e = lm.exponent(v);
                bounds[v] = Some(bounds[v].map_or(e, |b| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    fn enumerate_standard(&self, bounds: &[u32], limit: Option<usize>) -> Vec<Monomial> {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        let mut cur = Monomial::one(n);
        self.walk(0, bounds, &mut cur, &mut out, limit);
        out
    }

    fn walk(&self, var: usize, bounds: &[u32], cur: &mut Monomial, out: &mut Vec<Monomial>, limit: Option<usize>) {
        if limit.is_some_and(|l| out.len() > l) {
            return;
        }
        if var == bounds.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..bounds[var] {
            cur.exponents_mut()[var] = e;
            // divisibility is monotone in e, so the first hit ends the loop
            let mut probe = cur.clone();
            for k in var + 1..bounds.len() {
                probe.exponents_mut()[k] = 0;
            }
            if self.divisible(&probe) {
                break;
            }
            self.walk(var + 1, bounds, cur, out, limit);
        }
        cur.exponents_mut()[var] = 0;
    }

    pub fn colength(&self) -> Colength {
        if self.is_unit() {
            return Colength::Finite(0);
        }
        match self.box_bounds() {
            None => Colength::Infinite,
            Some(b) => Colength::Finite(self.enumerate_standard(&b, None).len()),
        }
    }

    /// Monomials outside the leading ideal, ascending in the basis order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let b = self.box_bounds().ok_or(AlgebraError::InfiniteColength)?;
        let mut mons = self.enumerate_standard(&b, None);
        mons.sort_by(|a, b| self.order.cmp(a, b));
        Ok(mons)
    }

    /// Krull dimension read off the leading ideal (global orders only).
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let supports: Vec<u64> = lms
            .iter()
            .map(|m| (0..n).filter(|&i| m.exponent(i) > 0).fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size <= best {
                continue;
            }
            // independent: no leading monomial supported inside the set
            if supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Some(best)
    }

    /// Full normal form; only meaningful for global orders.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, f.ring())?;
        if self.order.is_local() {
            return Err(AlgebraError::UnsupportedOrder(self.order.name(), "normal forms need a global order"));
        }
        let s = SortedPoly::from_poly(f, &self.order);
        let basis: Vec<&SortedPoly> = self.sorted.iter().collect();
        Ok(reduce_full(&s, &basis, &self.order).to_poly(&self.ring))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ideal(ring: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(g, ring).unwrap())).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = Ring::new(["x", "y"]).unwrap();
        let i = ideal(&r, &["x^2", "x*y", "y^2"]);
        let gb = i.groebner().unwrap();
        let mut got = gb.elements().to_vec();
        got.sort_by_key(|a| a.to_string());
        let mut want = i.generators().to_vec();
        want.sort_by_key(|a| a.to_string());
        assert_eq!(got, want);
        assert_eq!(gb.colength(), Colength::Finite(3));
    }

    #[test]
    fn maximal_ideal_local_basis() {
        let r = Ring::new(["u", "v", "w"]).unwrap();
        let i = ideal(&r, &["w", "u", "v"]);
        let sb = i.standard_basis(&MonomialOrder::NegDegRevLex).unwrap();
        let mut names: Vec<String> = sb.elements().iter().map(|p| p.to_string()).collect();
        names.sort();
        assert_eq!(names, ["u", "v", "w"]);
        assert_eq!(sb.standard_monomials().unwrap(), vec![Monomial::one(3)]);
    }

    #[test]
    fn infinite_colength_for_hyperplane() {
        let r = Ring::new(["x", "y"]).unwrap();
        assert_eq!(ideal(&r, &["x"]).colength(&MonomialOrder::NegDegRevLex).unwrap(), Colength::Infinite);
        assert_eq!(
            ideal(&r, &["x"]).standard_monomials(&MonomialOrder::DegRevLex),
            Err(AlgebraError::InfiniteColength)
        );
    }

    #[test]
    fn local_colength_ignores_points_away_from_origin() {
        // x(x-1): two points globally, one at the origin
        let r = Ring::new(["x"]).unwrap();
        let i = ideal(&r, &["x^2 - x"]);
        assert_eq!(i.colength(&MonomialOrder::DegRevLex).unwrap(), Colength::Finite(2));
        assert_eq!(i.colength(&MonomialOrder::NegDegRevLex).unwrap(), Colength::Finite(1));
    }

    #[test]
    fn a3_tjurina_ideal_leading_terms() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let i = ideal(&r, &["x*y - z^3", "y", "x", "3*z^2"]);
        let sb = i.standard_basis(&MonomialOrder::NegDegRevLex).unwrap();
        let lms = sb.leading_monomials();
        for want in [[1, 0, 0], [0, 1, 0], [0, 0, 2]] {
            assert!(lms.iter().any(|m| m.divides(&Monomial::from_exponents(&want))));
        }
        assert_eq!(sb.colength(), Colength::Finite(2));
    }

    #[test]
    fn quotient_and_saturation_basics() {
        let r = Ring::new(["x", "y"]).unwrap();
        let i = ideal(&r, &["x*y"]);
        let j = ideal(&r, &["x"]);
        let sat = i.saturate(&j).unwrap();
        assert!(sat.same_ideal(&ideal(&r, &["y"])).unwrap());
        let unit = Ideal::unit(&r);
        assert!(i.saturate(&unit).unwrap().same_ideal(&i).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = Ring::new(["x", "y"]).unwrap();
        let meet = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(meet.same_ideal(&ideal(&r, &["x*y"])).unwrap());
    }

    #[test]
    fn dimension_counts() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        assert_eq!(ideal(&r, &["x", "y"]).dimension().unwrap(), Some(1));
        assert_eq!(ideal(&r, &["x*y"]).dimension().unwrap(), Some(2));
        assert_eq!(ideal(&r, &["x", "x - 1"]).dimension().unwrap(), None);
        assert_eq!(Ideal::zero(&r).dimension().unwrap(), Some(3));
    }

    #[test]
    fn elimination_of_twisted_cubic() {
        let r = Ring::new(["t", "x", "y", "z"]).unwrap();
        let i = ideal(&r, &["x - t", "y - t^2", "z - t^3"]);
        let e = i.eliminate(&[0]).unwrap();
        let want = ideal(&r, &["y - x^2", "z - x*y", "x*z - y^2"]);
        assert!(e.same_ideal(&want).unwrap());
    }

    #[test]
    fn saturation_budget_is_enforced() {
        let r = Ring::new(["x", "y"]).unwrap();
        let i = ideal(&r, &["x^5*y"]);
        let j = ideal(&r, &["x"]);
        let tight = Budget { max_saturation_iterations: 2, ..Budget::default() };
        assert_eq!(tight.scope(|| i.saturate(&j)), Err(AlgebraError::SaturationDiverged(2)));
        assert!(i.saturate(&j).unwrap().same_ideal(&ideal(&r, &["y"])).unwrap());
    }
}
