//! Invariant rings and quotients for diagonal actions of `(Z/2)^k`.

use std::fmt;

use num_traits::One;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Ideal, Monomial, MonomialOrder, Polynomial, Rational, Ring, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("character entries must be 1 or -1, found {0}")]
    BadCharacter(i64),
    #[error("group generator has {got} entries, the ring has {expected} variables")]
    CharacterLength { expected: usize, got: usize },
    #[error("malformed action `{0}`")]
    Malformed(String),
    #[error("generator `{0}` is not invariant")]
    NotInvariant(String),
    #[error("the identity has no proper fixed locus")]
    IdentityElement,
    #[error("element {0:?} is not in the group")]
    NotInGroup(Vec<i8>),
    #[error("expected {expected} invariant names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("the rewriting of `{0}` did not land in the invariant ring")]
    Rewriting(String),
}

pub type Result<T> = std::result::Result<T, QuotientError>;

/// A group `(Z/2)^k` acting on the variables by signs: generator `g` sends
/// `x_i` to `g[i] * x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAction {
    ring: RingRef,
    generators: Vec<Vec<i8>>,
}

impl DiagonalAction {
    pub fn new(ring: &RingRef, generators: Vec<Vec<i64>>) -> Result<Self> {
        let n = ring.nvars();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != n {
                return Err(QuotientError::CharacterLength { expected: n, got: g.len() });
            }
            let mut signs = Vec::with_capacity(n);
            for c in g {
                match c {
                    1 => signs.push(1i8),
                    -1 => signs.push(-1i8),
                    other => return Err(QuotientError::BadCharacter(other)),
                }
            }
            gens.push(signs);
        }
        Ok(DiagonalAction { ring: ring.clone(), generators: gens })
    }

    /// Parses `"1,1,-1,1; -1,-1,1,1"`: one sign vector per generator.
    pub fn parse(ring: &RingRef, src: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for part in src.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let row = part
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| QuotientError::Malformed(src.to_string())))
                .collect::<Result<Vec<_>>>()?;
            gens.push(row);
        }
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Vec<i8>] {
        &self.generators
    }

    /// All group elements as sign vectors, identity first, without repeats.
    pub fn elements(&self) -> Vec<Vec<i8>> {
        let n = self.ring.nvars();
        let mut out = vec![vec![1i8; n]];
        for g in &self.generators {
            let extra: Vec<Vec<i8>> = out.iter().map(|h| h.iter().zip(g).map(|(a, b)| a * b).collect()).collect();
            for e in extra {
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn fixes_monomial(&self, m: &Monomial) -> bool {
        self.generators.iter().all(|g| {
            let odd: u32 = g.iter().zip(m.exponents()).filter(|(s, _)| **s == -1).map(|(_, e)| *e).sum();
            odd.is_multiple_of(2)
        })
    }

    pub fn fixes(&self, f: &Polynomial) -> bool {
        f.terms().all(|(m, _)| self.fixes_monomial(m))
    }
}

/// Invariant monomials `name ↦ monomial` and the relations among them.
#[derive(Debug, Clone)]
pub struct InvariantRingPresentation {
    /// Ring of the acted-on variables.
    pub source: RingRef,
    /// Ring of the invariant coordinates.
    pub target: RingRef,
    pub generators: Vec<(String, Monomial)>,
    pub relations: Ideal,
}

impl InvariantRingPresentation {
    pub fn generator_polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|(_, m)| Polynomial::monomial(&self.source, m.clone(), Rational::one())).collect()
    }

    /// Substitutes the monomials for the invariant coordinates.
    pub fn pull_back(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(f.substitute(&self.generator_polynomials())?)
    }

    /// Working ring: source variables (renamed) followed by invariant
    /// coordinates (renamed), and the graph ideal `(g_k - m_k)`.
    fn graph(&self) -> Result<(RingRef, Ideal, Vec<Polynomial>)> {
        let n = self.source.nvars();
        let k = self.generators.len();
        let names: Vec<String> = (0..n).map(|i| format!("_v{i}")).chain((0..k).map(|j| format!("_g{j}"))).collect();
        let ring = Ring::new(names)?;
        let src_images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, i)).collect::<std::result::Result<_, _>>()?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(j, (_, m))| {
                let mon = Polynomial::monomial(&self.source, m.clone(), Rational::one()).substitute(&src_images)?;
                Ok(&Polynomial::var(&ring, n + j)? - &mon)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((ring.clone(), Ideal::new(&ring, gens)?, src_images))
    }

    fn to_target(&self, p: &Polynomial, work: &RingRef) -> Result<Polynomial> {
        let n = self.source.nvars();
        if (0..n).any(|i| p.uses_var(i)) {
            return Err(QuotientError::Rewriting(p.to_string()));
        }
        let images: Vec<Polynomial> = (0..work.nvars())
            .map(|i| {
                if i < n {
                    Polynomial::zero(&self.target)
                } else {
                    Polynomial::var(&self.target, i - n).unwrap()
                }
            })
            .collect();
        Ok(p.substitute(&images)?)
    }
}

impl fmt::Display for InvariantRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|(n, m)| format!("{n} = {}", m.format(&self.source))).collect();
        write!(f, "generators: {}\nrelations: {}", gens.join(", "), self.relations)
    }
}

impl Serialize for InvariantRingPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<(String, String)> =
            self.generators.iter().map(|(n, m)| (n.clone(), m.format(&self.source))).collect();
        let mut st = s.serialize_struct("InvariantRingPresentation", 2)?;
        st.serialize_field("generators", &gens)?;
        st.serialize_field("relations", &self.relations.to_strings())?;
        st.end()
    }
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn rec(var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == cur.len() {
            cur[var] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e;
            rec(var + 1, left - e, cur, out);
        }
    }
    if n > 0 {
        rec(0, d, &mut vec![0; n], &mut out);
    }
    out
}

/// Minimal invariant monomials: every invariant monomial of degree at most
/// `|G|` that no smaller invariant monomial divides. Ordered by degree, then
/// lexicographically descending.
pub fn hilbert_basis(act: &DiagonalAction) -> Vec<Monomial> {
    let n = act.ring.nvars();
    let bound = act.order() as u32;
    let mut basis: Vec<Monomial> = Vec::new();
    for d in 1..=bound {
        for m in monomials_of_degree(n, d) {
            if act.fixes_monomial(&m) && !basis.iter().any(|b| b.divides(&m)) {
                basis.push(m);
            }
        }
    }
    basis
}

/// Generators and relations of the invariant ring. `names` labels the
/// generators in the order of [`hilbert_basis`]; by default they are
/// `g1, g2, …`.
pub fn invariant_ring(act: &DiagonalAction, names: Option<&[String]>) -> Result<InvariantRingPresentation> {
    let basis = hilbert_basis(act);
    let names: Vec<String> = match names {
        Some(ns) if ns.len() != basis.len() => {
            return Err(QuotientError::NameCount { expected: basis.len(), got: ns.len() })
        }
        Some(ns) => ns.to_vec(),
        None => (1..=basis.len()).map(|j| format!("g{j}")).collect(),
    };
    let target = Ring::new(names.clone())?;
    let mut pres = InvariantRingPresentation {
        source: act.ring.clone(),
        target: target.clone(),
        generators: names.into_iter().zip(basis).collect(),
        relations: Ideal::zero(&target),
    };
    let (work, graph, _) = pres.graph()?;
    let n = act.ring.nvars();
    let elim = graph.eliminate(&(0..n).collect::<Vec<_>>())?;
    let rels = elim.generators().iter().map(|p| pres.to_target(p, &work)).collect::<Result<Vec<_>>>()?;
    pres.relations = Ideal::new(&target, rels)?.reduced()?;
    Ok(pres)
}

/// Rewrites invariant generators in invariant coordinates and appends the
/// relations of the invariant ring.
pub fn quotient_family(total: &Ideal, act: &DiagonalAction, pres: &InvariantRingPresentation) -> Result<Ideal> {
    for g in total.generators() {
        if !act.fixes(g) {
            return Err(QuotientError::NotInvariant(g.to_string()));
        }
    }
    let (work, graph, src_images) = pres.graph()?;
    let n = act.ring.nvars();
    let k = pres.generators.len();
    let gb = graph.standard_basis(&MonomialOrder::Elimination(vec![n, k]))?;
    let mut gens = Vec::with_capacity(total.generators().len());
    for g in total.generators() {
        let moved = g.substitute(&src_images)?;
        let nf = gb.normal_form(&moved)?;
        gens.push(pres.to_target(&nf, &work)?);
    }
    gens.extend(pres.relations.generators().iter().cloned());
    Ok(Ideal::new(&pres.target, gens)?)
}

/// Fixed locus of a group element on `V(on)` and its image in the quotient.
#[derive(Debug, Clone)]
pub struct FixedLocus {
    pub element: Vec<i8>,
    pub ideal: Ideal,
    pub image: Ideal,
}

impl Serialize for FixedLocus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FixedLocus", 3)?;
        st.serialize_field("element", &self.element)?;
        st.serialize_field("ideal", &self.ideal.to_strings())?;
        st.serialize_field("image", &self.image.to_strings())?;
        st.end()
    }
}

pub fn fixed_locus(
    act: &DiagonalAction,
    element: &[i8],
    on: &Ideal,
    pres: &InvariantRingPresentation,
) -> Result<FixedLocus> {
    if element.iter().all(|&s| s == 1) {
        return Err(QuotientError::IdentityElement);
    }
    if !act.elements().iter().any(|e| e == element) {
        return Err(QuotientError::NotInGroup(element.to_vec()));
    }
    let ring = act.ring();
    let moved: Vec<Polynomial> = element
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == -1)
        .map(|(i, _)| Polynomial::var(ring, i))
        .collect::<std::result::Result<_, _>>()?;
    let ideal = on.with_generators(moved)?.reduced()?;
    let (work, graph, src_images) = pres.graph()?;
    let n = ring.nvars();
    let lifted = ideal.generators().iter().map(|g| g.substitute(&src_images)).collect::<std::result::Result<Vec<_>, _>>()?;
    let elim = graph.with_generators(lifted)?.eliminate(&(0..n).collect::<Vec<_>>())?;
    let image_gens = elim.generators().iter().map(|p| pres.to_target(p, &work)).collect::<Result<Vec<_>>>()?;
    let image = Ideal::new(&pres.target, image_gens)?.reduced()?;
    Ok(FixedLocus { element: element.to_vec(), ideal, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn sign_action_setup() -> (RingRef, DiagonalAction, InvariantRingPresentation) {
        let r = Ring::new(["u", "v", "w", "t"]).unwrap();
        let act = DiagonalAction::parse(&r, "1,1,-1,1; -1,-1,1,1").unwrap();
        let names: Vec<String> = ["t", "x", "z", "y", "s"].map(String::from).to_vec();
        let pres = invariant_ring(&act, Some(&names)).unwrap();
        (r, act, pres)
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap())).unwrap()
    }

    #[test]
    fn invariants_of_the_sign_action() {
        let (_, act, pres) = sign_action_setup();
        assert_eq!(act.order(), 4);
        let gens: Vec<String> = pres.generators.iter().map(|(n, m)| format!("{n}={}", m.format(&pres.source))).collect();
        assert_eq!(gens, ["t=t", "x=u^2", "z=u*v", "y=v^2", "s=w^2"]);
        assert!(pres.relations.same_ideal(&ideal(&pres.target, &["z^2 - x*y"])).unwrap());
    }

    #[test]
    fn quotient_of_node_family() {
        let (r, act, pres) = sign_action_setup();
        let q = quotient_family(&ideal(&r, &["w^2 - u*v - t"]), &act, &pres).unwrap();
        assert!(q.same_ideal(&ideal(&pres.target, &["s - z - t", "z^2 - x*y"])).unwrap());
        assert!(matches!(
            quotient_family(&ideal(&r, &["w - u"]), &act, &pres),
            Err(QuotientError::NotInvariant(_))
        ));
    }

    #[test]
    fn trivial_group() {
        let r = Ring::new(["a", "b"]).unwrap();
        let act = DiagonalAction::new(&r, vec![]).unwrap();
        let pres = invariant_ring(&act, None).unwrap();
        assert_eq!(pres.generators.len(), 2);
        assert!(pres.relations.is_zero_ideal());
    }

    #[test]
    fn single_involution() {
        let r = Ring::new(["u", "v"]).unwrap();
        let act = DiagonalAction::parse(&r, "-1,-1").unwrap();
        let pres = invariant_ring(&act, None).unwrap();
        assert_eq!(pres.generators.len(), 3);
        assert_eq!(pres.relations.generators().len(), 1);
    }

    #[test]
    fn fixed_loci() {
        let (r, act, pres) = sign_action_setup();
        let xt = ideal(&r, &["w^2 - u*v - t"]);
        let f1 = fixed_locus(&act, &[1, 1, -1, 1], &xt, &pres).unwrap();
        assert!(f1.image.same_ideal(&ideal(&pres.target, &["s", "z + t", "z^2 - x*y"])).unwrap());
        let x0 = ideal(&r, &["w^2 - u*v", "t"]);
        let f3 = fixed_locus(&act, &[-1, -1, -1, 1], &x0, &pres).unwrap();
        assert!(f3.ideal.same_ideal(&ideal(&r, &["u", "v", "w", "t"])).unwrap());
        assert_eq!(fixed_locus(&act, &[1, 1, 1, 1], &xt, &pres).unwrap_err(), QuotientError::IdentityElement);
        assert!(matches!(fixed_locus(&act, &[-1, 1, 1, 1], &xt, &pres), Err(QuotientError::NotInGroup(_))));
    }

    #[test]
    fn bad_actions() {
        let r = Ring::new(["u", "v"]).unwrap();
        assert_eq!(DiagonalAction::parse(&r, "1,2").unwrap_err(), QuotientError::BadCharacter(2));
        assert!(matches!(DiagonalAction::parse(&r, "1"), Err(QuotientError::CharacterLength { .. })));
        assert!(matches!(DiagonalAction::parse(&r, "a,b"), Err(QuotientError::Malformed(_))));
    }
}
