//! Segre's nodal surfaces `L_1 ⋯ L_d - M^2` and node counting in P^3.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::{invalid, Result, SurfaceError};
use crate::algebra::univariate::UniPoly;
use crate::algebra::zerodim::QuotientAlgebra;
use crate::algebra::{kernel, rank, AlgebraError, Budget, Ideal, Monomial, Polynomial, Rational, Ring, RingRef};
use crate::singular::{analyze, AdeType};

pub const MAX_SEGRE_ATTEMPTS: usize = 64;
const COEFF_RANGE: i64 = 5;

#[derive(Debug, Clone)]
pub struct SegreSurface {
    pub d: u32,
    pub seed: u64,
    /// Number of random draws until the genericity screen passed.
    pub attempts: usize,
    pub linear_forms: Vec<Polynomial>,
    pub half_form: Polynomial,
    pub equation: Polynomial,
}

impl SegreSurface {
    pub fn ring(&self) -> &RingRef {
        self.equation.ring()
    }

    pub fn expected_nodes(&self) -> usize {
        let d = self.d as usize;
        d * d * (d - 1) / 4
    }
}

impl fmt::Display for SegreSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.linear_forms.iter().map(|l| format!("({l})")).collect();
        write!(f, "{} - ({})^2", ls.join("*"), self.half_form)
    }
}

impl Serialize for SegreSurface {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SegreSurface", 6)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("attempts", &self.attempts)?;
        st.serialize_field("linear_forms", &self.linear_forms.iter().map(|l| l.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("half_form", &self.half_form.to_string())?;
        st.serialize_field("equation", &self.equation.to_string())?;
        st.end()
    }
}

fn projective_ring() -> RingRef {
    Ring::new(["x0", "x1", "x2", "x3"]).expect("fixed names are valid")
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
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
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

fn random_form(ring: &RingRef, degree: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut f = Polynomial::zero(ring);
    for m in monomials_of_degree(ring.nvars(), degree) {
        let c = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        f = &f + &Polynomial::monomial(ring, m, Rational::from_integer(c.into()));
    }
    f
}

fn linear_coefficients(l: &Polynomial) -> Vec<Rational> {
    (0..4).map(|i| l.coefficient(&Monomial::var(4, i))).collect()
}

fn evaluate(f: &Polynomial, point: &[Rational]) -> Rational {
    let images: Vec<Polynomial> = point.iter().map(|c| Polynomial::constant(f.ring(), c.clone())).collect();
    f.substitute(&images).expect("arity matches").constant_term()
}

/// Restriction of `m` to the line spanned by `p` and `q`, as a polynomial
/// in `s` via `s p + q`.
fn restrict_to_line(m: &Polynomial, p: &[Rational], q: &[Rational]) -> UniPoly {
    let line = Ring::new(["s"]).expect("fixed name");
    let s = Polynomial::var(&line, 0).expect("one variable");
    let images: Vec<Polynomial> = p
        .iter()
        .zip(q)
        .map(|(a, b)| &(&s * &Polynomial::constant(&line, a.clone())) + &Polynomial::constant(&line, b.clone()))
        .collect();
    let r = m.substitute(&images).expect("arity matches");
    UniPoly::from_polynomial(&r, 0).expect("univariate")
}

/// Genericity screen: the `L_i` are pairwise independent, no three share a
/// line, `M` cuts every line `L_i = L_j = 0` in `d/2` distinct points, and
/// no point `L_i = L_j = L_k = 0` lies on `M`.
fn screen(ls: &[Polynomial], m: &Polynomial, half: u32) -> std::result::Result<(), String> {
    let coeffs: Vec<Vec<Rational>> = ls.iter().map(linear_coefficients).collect();
    let n = ls.len();
    for i in 0..n {
        for j in i + 1..n {
            let pair = [coeffs[i].clone(), coeffs[j].clone()];
            if rank(&pair) < 2 {
                return Err(format!("L{} and L{} are dependent", i + 1, j + 1));
            }
            let k = kernel(pair.to_vec());
            let g = restrict_to_line(m, &k[0], &k[1]);
            let deg = match g.degree() {
                None => return Err(format!("M vanishes on the line L{} = L{} = 0", i + 1, j + 1)),
                Some(deg) => deg,
            };
            let sqf = g.squarefree_part().degree().unwrap_or(0);
            if deg + 1 < half as usize || sqf != deg {
                return Err(format!("M is tangent to the line L{} = L{} = 0", i + 1, j + 1));
            }
            for l in j + 1..n {
                let triple = [coeffs[i].clone(), coeffs[j].clone(), coeffs[l].clone()];
                if rank(&triple) < 3 {
                    return Err(format!("L{}, L{}, L{} share a line", i + 1, j + 1, l + 1));
                }
                let p = &kernel(triple.to_vec())[0];
                if evaluate(m, p).is_zero() {
                    return Err(format!("M passes through L{} = L{} = L{} = 0", i + 1, j + 1, l + 1));
                }
            }
        }
    }
    Ok(())
}

/// Draws linear forms and `M` with small integer coefficients from a seeded
/// stream until the genericity screen passes.
pub fn build_segre_surface(d: u32, seed: u64) -> Result<SegreSurface> {
    if d < 2 || !d.is_multiple_of(2) {
        return invalid(format!("degree must be even and at least 2, got {d}"));
    }
    let ring = projective_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reason = String::new();
    for attempt in 1..=MAX_SEGRE_ATTEMPTS {
        let ls: Vec<Polynomial> = (0..d).map(|_| random_form(&ring, 1, &mut rng)).collect();
        let m = random_form(&ring, d / 2, &mut rng);
        match screen(&ls, &m, d / 2) {
            Ok(()) => {
                let product = ls.iter().fold(Polynomial::one(&ring), |acc, l| &acc * l);
                let equation = &product - &m.pow(2);
                return Ok(SegreSurface { d, seed, attempts: attempt, linear_forms: ls, half_form: m, equation });
            }
            Err(r) => reason = r,
        }
    }
    Err(SurfaceError::RetriesExhausted { attempts: MAX_SEGRE_ATTEMPTS, reason })
}

#[derive(Debug, Clone)]
pub struct RationalNode {
    /// Homogeneous coordinates, first nonzero entry 1.
    pub coordinates: Vec<Rational>,
    pub tau: usize,
    pub ade: Option<AdeType>,
}

impl Serialize for RationalNode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalNode", 3)?;
        st.serialize_field("coordinates", &self.coordinates.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field("ade", &self.ade)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeCount {
    /// Number of singular points; absent when the singular scheme is not
    /// reduced (then only `raw_colength` is meaningful).
    pub count: Option<usize>,
    /// Length of the singular scheme, i.e. the sum of the Tjurina numbers.
    pub raw_colength: usize,
    pub distinct_points: usize,
    /// Every singular point is an ordinary node.
    pub all_a1: bool,
    pub rational_nodes: Vec<RationalNode>,
}

struct ChartCount {
    length: usize,
    points: usize,
    rational: Vec<RationalNode>,
}

/// Chart `x_i = 1`, restricted to points with `x_j = 0` for `j < i`.
fn chart_count(f: &Polynomial, hom: &[Polynomial], i: usize) -> Result<ChartCount> {
    let ring = f.ring();
    let names: Vec<String> = (0..4).filter(|&j| j != i).map(|j| ring.name(j).to_string()).collect();
    let chart = Ring::new(names)?;
    let images: Vec<Polynomial> = (0..4)
        .map(|j| match j.cmp(&i) {
            std::cmp::Ordering::Equal => Ok(Polynomial::one(&chart)),
            std::cmp::Ordering::Less => Polynomial::var(&chart, j),
            std::cmp::Ordering::Greater => Polynomial::var(&chart, j - 1),
        })
        .collect::<std::result::Result<_, _>>()?;
    let affine = hom.iter().map(|h| h.substitute(&images)).collect::<std::result::Result<Vec<_>, _>>()?;
    let ideal = Ideal::new(&chart, affine)?;
    let prev: Vec<Polynomial> = (0..i).map(|j| Polynomial::var(&chart, j)).collect::<std::result::Result<_, _>>()?;
    let empty = ChartCount { length: 0, points: 0, rational: Vec::new() };
    // points of this chart already seen in an earlier one are skipped cheaply
    // when the chart has nothing on the hyperplanes x_j = 0
    if i > 0 && ideal.with_generators(prev.iter().cloned())?.is_unit()? {
        return Ok(empty);
    }
    let algebra = match QuotientAlgebra::new(&ideal) {
        Ok(a) => a,
        Err(AlgebraError::InfiniteColength) => {
            return Err(SurfaceError::PositiveDimensionalSingularLocus(ideal.dimension()?.unwrap_or(0)))
        }
        Err(e) => return Err(e.into()),
    };
    let summand = algebra.supported_on(&prev)?;
    if summand.is_empty() {
        return Ok(empty);
    }
    let points = algebra.count_points(Some(&summand))?;
    let mut rational = Vec::new();
    for pt in algebra.rational_points()? {
        if pt[..i].iter().any(|c| !c.is_zero()) {
            continue;
        }
        let coordinate = |k: usize, sign: i64| -> std::result::Result<Polynomial, AlgebraError> {
            let a = Polynomial::constant(&chart, &pt[k] * Rational::from_integer(sign.into()));
            Ok(&Polynomial::var(&chart, k)? + &a)
        };
        let maximal = (0..3).map(|k| coordinate(k, -1)).collect::<std::result::Result<Vec<_>, _>>()?;
        // the local length of the singular scheme is the Tjurina number, and
        // only an ordinary node has Tjurina number 1
        let tau = algebra.supported_on(&maximal)?.len();
        let ade = if tau == 1 {
            Some(AdeType::a(1))
        } else {
            let shift = (0..3).map(|k| coordinate(k, 1)).collect::<std::result::Result<Vec<_>, _>>()?;
            analyze(&f.substitute(&images)?.substitute(&shift)?)?.ade
        };
        let mut coordinates = pt.clone();
        coordinates.insert(i, Rational::one());
        rational.push(RationalNode { coordinates, tau, ade });
    }
    Ok(ChartCount { length: summand.len(), points, rational })
}

/// Singular points of the projective surface `V(f) ⊂ P^3`, counted chart by
/// chart over the standard affine cover. Charts run in parallel and are
/// merged in index order.
pub fn count_singular_points(f: &Polynomial) -> Result<NodeCount> {
    let ring = f.ring();
    if ring.nvars() != 4 || !f.is_homogeneous() || f.degree().unwrap_or(0) < 2 {
        return Err(SurfaceError::NotProjectiveSurface);
    }
    let mut hom = vec![f.clone()];
    for i in 0..4 {
        hom.push(f.derivative(i)?);
    }
    let budget = Budget::current();
    let charts: Vec<Result<ChartCount>> = std::thread::scope(|s| {
        let handles: Vec<_> =
            (0..4).map(|i| { let hom = &hom; s.spawn(move || budget.scope(|| chart_count(f, hom, i))) }).collect();
        handles.into_iter().map(|h| h.join().expect("chart worker panicked")).collect()
    });
    let mut raw_colength = 0;
    let mut distinct_points = 0;
    let mut rational_nodes = Vec::new();
    for c in charts {
        let c = c?;
        raw_colength += c.length;
        distinct_points += c.points;
        rational_nodes.extend(c.rational);
    }
    let reduced = raw_colength == distinct_points;
    // a reduced point of the singular scheme has Tjurina number 1
    let all_a1 = reduced && rational_nodes.iter().all(|n| n.ade == Some(AdeType::a(1)));
    Ok(NodeCount {
        count: reduced.then_some(distinct_points),
        raw_colength,
        distinct_points,
        all_a1,
        rational_nodes,
    })
}

pub fn count_nodes(s: &SegreSurface) -> Result<NodeCount> {
    count_singular_points(&s.equation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    #[test]
    fn builder_is_deterministic() {
        let a = build_segre_surface(4, 7).unwrap();
        let b = build_segre_surface(4, 7).unwrap();
        assert_eq!(a.equation, b.equation);
        assert!(a.equation.is_homogeneous());
        assert_eq!(a.equation.degree(), Some(4));
        assert!(build_segre_surface(3, 0).is_err());
    }

    #[test]
    fn quadric_cone_has_one_node() {
        for seed in 0..3 {
            let s = build_segre_surface(2, seed).unwrap();
            let c = count_nodes(&s).unwrap();
            assert_eq!((c.count, c.all_a1), (Some(1), true), "seed {seed}");
        }
    }

    #[test]
    fn rational_node_is_analyzed() {
        let r = projective_ring();
        let f = parse_polynomial("x0*x1 - x2^2", &r).unwrap();
        let c = count_singular_points(&f).unwrap();
        assert_eq!(c.count, Some(1));
        assert_eq!(c.rational_nodes.len(), 1);
        let node = &c.rational_nodes[0];
        assert_eq!(node.coordinates.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["0", "0", "0", "1"]);
        assert_eq!(node.ade, Some(AdeType::a(1)));
    }

    #[test]
    fn rejects_bad_surfaces() {
        let r = projective_ring();
        let line = parse_polynomial("x0*x1", &r).unwrap();
        assert!(matches!(count_singular_points(&line), Err(SurfaceError::PositiveDimensionalSingularLocus(1))));
        let inhom = parse_polynomial("x0^2 - x1", &r).unwrap();
        assert!(matches!(count_singular_points(&inhom), Err(SurfaceError::NotProjectiveSurface)));
    }

    #[test]
    fn screen_catches_triple_points() {
        let r = projective_ring();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let ls = [p("x0"), p("x1"), p("x2"), p("x0 + x1 + x2 + x3")];
        assert!(screen(&ls, &p("x0*x3 + x1^2 + x2*x3 + x0*x1"), 2).unwrap_err().contains("passes through"));
    }
}
