//! Simultaneous resolution of `A_n` after the Weyl base change, the two small
//! resolutions of the threefold node, and the flop between them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    is_smooth, reduce_linear, AlgebraError, Ideal, Polynomial, Rational, Ring, RingRef, SmoothnessCertificate, Verdict,
};
use crate::defo::{semiuniversal_family, DeformationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error("n must be at least 1")]
    ZeroRank,
    #[error("n = {n} exceeds the resolution cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, ResolutionError>;

pub const DEFAULT_CAP: usize = 3;

/// Name of the node family's base parameter.
pub const TAU: &str = "tau_param";

/// One affine chart with its smoothness certificate.
#[derive(Debug, Clone)]
pub struct Chart {
    pub name: String,
    pub ideal: Ideal,
    pub expected_dim: usize,
    pub certificate: SmoothnessCertificate,
}

impl Serialize for Chart {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Chart", 5)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("variables", self.ideal.ring().names())?;
        st.serialize_field("ideal", &self.ideal.to_strings())?;
        st.serialize_field("expected_dim", &self.expected_dim)?;
        st.serialize_field("verdict", &self.certificate.verdict)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartedVariety {
    pub charts: Vec<Chart>,
    pub gluing_note: String,
}

impl ChartedVariety {
    pub fn all_smooth(&self) -> bool {
        self.charts.iter().all(|c| c.certificate.verdict == Verdict::Smooth)
    }

    pub fn chart(&self, name: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ChartedVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.charts {
            writeln!(f, "chart {} in ({}): {}  [{}]", c.name, c.ideal.ring(), c.ideal, c.certificate.verdict)?;
        }
        write!(f, "{}", self.gluing_note)
    }
}

fn chart(name: String, ideal: Ideal, expected_dim: usize) -> Result<Chart> {
    let certificate = is_smooth(&ideal, expected_dim)?;
    Ok(Chart { name, ideal, expected_dim, certificate })
}

/// The base `α_1..α_n` of the Weyl cover, with `α_{n+1} = -(α_1 + … + α_n)`.
#[derive(Debug, Clone)]
pub struct RootBase {
    pub n: usize,
    /// Ring `x, y, z, a1..an`.
    pub ring: RingRef,
    pub root_vars: Vec<String>,
    /// `α_1, …, α_{n+1}` as polynomials; the last one is the eliminated root.
    pub roots: Vec<Polynomial>,
}

impl RootBase {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(ResolutionError::ZeroRank);
        }
        let root_vars: Vec<String> = (1..=n).map(|j| format!("a{j}")).collect();
        let mut names = vec!["x".to_string(), "y".into(), "z".into()];
        names.extend(root_vars.iter().cloned());
        let ring = Ring::new(names)?;
        let mut roots: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(&ring, 3 + j)).collect::<std::result::Result<_, _>>()?;
        let sum = roots.iter().fold(Polynomial::zero(&ring), |acc, a| &acc + a);
        roots.push(-sum);
        Ok(RootBase { n, ring, root_vars, roots })
    }

    fn z(&self) -> Polynomial {
        Polynomial::var(&self.ring, 2).unwrap()
    }

    /// `p_i = ∏_{j ≤ i} (z - α_j)`.
    pub fn partial_product(&self, i: usize) -> Polynomial {
        let z = self.z();
        self.roots[..i].iter().fold(Polynomial::one(&self.ring), |acc, a| &acc * &(&z - a))
    }

    /// `e_k(α_1, …, α_{n+1})`.
    pub fn elementary_symmetric(&self, k: usize) -> Polynomial {
        let mut e = vec![Polynomial::zero(&self.ring); k + 1];
        e[0] = Polynomial::one(&self.ring);
        for a in &self.roots {
            for j in (1..=k).rev() {
                e[j] = &e[j] + &(&e[j - 1] * a);
            }
        }
        e.swap_remove(k)
    }

    /// The sum of all roots, which is zero after elimination.
    pub fn root_sum(&self) -> Polynomial {
        self.roots.iter().fold(Polynomial::zero(&self.ring), |acc, a| &acc + a)
    }

    /// Values of the semiuniversal parameters `t_1..t_n` over the root base:
    /// `t_i = (-1)^{n+1-i} e_{n+2-i}(α)`.
    pub fn parameter_map(&self) -> Vec<Polynomial> {
        let n = self.n;
        (1..=n)
            .map(|i| {
                let e = self.elementary_symmetric(n + 2 - i);
                if (n + 1 - i).is_multiple_of(2) {
                    e
                } else {
                    -e
                }
            })
            .collect()
    }
}

/// `xy - ∏_{j=1}^{n+1} (z - α_j)` over the root base.
pub fn an_base_change(n: usize) -> Result<(RootBase, Ideal)> {
    let base = RootBase::new(n)?;
    let x = Polynomial::var(&base.ring, 0)?;
    let y = Polynomial::var(&base.ring, 1)?;
    let f = &(&x * &y) - &base.partial_product(n + 1);
    let ideal = Ideal::new(&base.ring, [f])?;
    Ok((base, ideal))
}

/// Pulls the semiuniversal family of `xy - z^{n+1}` back along the parameter
/// map and compares it with the base-change equation.
pub fn base_change_identity(n: usize) -> Result<bool> {
    let (base, ideal) = an_base_change(n)?;
    let r = Ring::new(["x", "y", "z"])?;
    let f = &(&Polynomial::var(&r, 0)? * &Polynomial::var(&r, 1)?) - &Polynomial::var(&r, 2)?.pow(n as u32 + 1);
    let fam = semiuniversal_family(&[f])?;
    let mut images: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&base.ring, i)).collect::<std::result::Result<_, _>>()?;
    images.extend(base.parameter_map());
    let pulled = fam.equations[0].substitute(&images)?;
    Ok(pulled == ideal.generators()[0])
}

/// Chart coordinates on the `i`-th `P^1` factor `[x : p_i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// `ξ_i = p_i / x`
    Xi,
    /// `ζ_i = x / p_i`
    Zeta,
}

/// Closure of the graph of `Φ = (φ_1, …, φ_n)`, `φ_i = [x : p_i]`, one chart
/// per choice of affine piece on each factor.
pub fn an_simultaneous_resolution(n: usize, cap: usize) -> Result<ChartedVariety> {
    if n == 0 {
        return Err(ResolutionError::ZeroRank);
    }
    if n > cap {
        return Err(ResolutionError::CapExceeded { n, cap });
    }
    let (base, total) = an_base_change(n)?;
    let mut charts = Vec::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        let sides: Vec<Side> = (0..n).map(|i| if mask >> i & 1 == 0 { Side::Xi } else { Side::Zeta }).collect();
        let (name, ideal) = an_chart(&base, &total, &sides)?;
        charts.push(chart(name, ideal, n + 2)?);
    }
    let gluing_note = format!(
        "Variables x, y, z, a1..a{n} with a{m} = -(a1 + ... + a{n}). Factor i is the closure of [x : p_i], \
         p_i = (z - a1)...(z - ai); chart xi_i uses xi_i = p_i/x, chart zeta_i uses zeta_i = x/p_i, glued by \
         xi_i * zeta_i = 1. Each chart ideal is the incidence ideal saturated by (x, p_i) for every factor.",
        m = n + 1
    );
    Ok(ChartedVariety { charts, gluing_note })
}

fn an_chart(base: &RootBase, total: &Ideal, sides: &[Side]) -> Result<(String, Ideal)> {
    let n = base.n;
    let mut names = base.ring.names().to_vec();
    let mut labels = Vec::with_capacity(n);
    for (i, s) in sides.iter().enumerate() {
        let label = match s {
            Side::Xi => format!("xi{}", i + 1),
            Side::Zeta => format!("zeta{}", i + 1),
        };
        names.push(label.clone());
        labels.push(label);
    }
    let ring = Ring::new(names)?;
    let lift = |p: &Polynomial| p.map_to_ring(&ring);
    let x = Polynomial::var(&ring, 0)?;
    let mut gens = vec![lift(&total.generators()[0])?];
    let mut centers = Vec::with_capacity(n);
    for (i, s) in sides.iter().enumerate() {
        let p = lift(&base.partial_product(i + 1))?;
        let c = Polynomial::var(&ring, 3 + n + i)?;
        gens.push(match s {
            Side::Xi => &(&x * &c) - &p,
            Side::Zeta => &x - &(&p * &c),
        });
        centers.push(Ideal::new(&ring, [x.clone(), p])?);
    }
    let mut ideal = Ideal::new(&ring, gens)?;
    for c in &centers {
        ideal = ideal.saturate(c)?;
    }
    Ok((labels.join(","), ideal.reduced()?))
}

/// A fibre of a chart over a point of the root base.
pub fn chart_fiber(chart: &Chart, alpha: &[Rational]) -> Result<Ideal> {
    let ring = chart.ideal.ring();
    let extra = alpha
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let v = Polynomial::var_named(ring, &format!("a{}", j + 1));
            &v - &Polynomial::constant(ring, a.clone())
        })
        .collect::<Vec<_>>();
    Ok(chart.ideal.with_generators(extra)?)
}

/// `count` base points: the origin first, then seeded pseudo-random small
/// rationals.
pub fn sample_base_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![vec![Rational::zero(); n]];
    while out.len() < count {
        let p: Vec<Rational> = (0..n)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=3))))
            .collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Verdicts of `is_smooth` on every chart fibre over the given base points.
pub fn certify_fibers(var: &ChartedVariety, points: &[Vec<Rational>]) -> Result<Vec<(String, Vec<Rational>, Verdict)>> {
    let mut out = Vec::new();
    for c in &var.charts {
        for p in points {
            let fib = chart_fiber(c, p)?;
            let cert = is_smooth(&fib, 2)?;
            out.push((c.name.clone(), p.clone(), cert.verdict));
        }
    }
    Ok(out)
}

/// The node family `w^2 - τ^2 = uv` in `(u, v, w, τ)`.
pub fn node_family() -> Result<Ideal> {
    let r = Ring::new(["u", "v", "w", TAU])?;
    let [u, v, w, t] = node_vars(&r)?;
    Ok(Ideal::new(&r, [&(&w * &w) - &(&(&t * &t) + &(&u * &v))])?)
}

fn node_vars(r: &RingRef) -> Result<[Polynomial; 4]> {
    Ok([
        Polynomial::var_named(r, "u"),
        Polynomial::var_named(r, "v"),
        Polynomial::var_named(r, "w"),
        Polynomial::var_named(r, TAU),
    ])
}

/// One small resolution, determined by the sign `s` in `[u : w - sτ]`.
fn small_resolution(sign: i64, coord: &str) -> Result<ChartedVariety> {
    let mut charts = Vec::with_capacity(2);
    for (k, cname) in [coord.to_string(), format!("{coord}_inv")].into_iter().enumerate() {
        let r = Ring::new(["u", "v", "w", TAU, cname.as_str()])?;
        let [u, v, w, t] = node_vars(&r)?;
        let c = Polynomial::var(&r, 4)?;
        let st = t.scale(&Rational::from_integer(sign.into()));
        let (minus, plus) = (&w - &st, &w + &st);
        let f = &(&w * &w) - &(&(&t * &t) + &(&u * &v));
        // (w - sτ)/u = v/(w + sτ) = c on the first chart, 1/c on the second
        let (gens, center) = if k == 0 {
            (vec![f, &(&u * &c) - &minus, &(&plus * &c) - &v], vec![u.clone(), plus.clone()])
        } else {
            (vec![f, &(&minus * &c) - &u, &(&v * &c) - &plus], vec![minus.clone(), v.clone()])
        };
        let ideal = Ideal::new(&r, gens)?.saturate(&Ideal::new(&r, center)?)?.reduced()?;
        charts.push(chart(cname, ideal, 3)?);
    }
    let rel = if sign == 1 { ("w - tau_param", "w + tau_param") } else { ("w + tau_param", "w - tau_param") };
    let gluing_note = format!(
        "Closure of {{({0})/u = v/({1}) = {coord}}} inside X x P^1, X: w^2 - tau_param^2 = u*v. \
         Chart {coord} has ({0}) = u*{coord}, v = ({1})*{coord}; chart {coord}_inv is the reciprocal coordinate.",
        rel.0, rel.1
    );
    Ok(ChartedVariety { charts, gluing_note })
}

/// The two small resolutions `S` (coordinate `xi`) and `S'` (coordinate `eta`).
pub fn node_small_resolutions() -> Result<(ChartedVariety, ChartedVariety)> {
    Ok((small_resolution(1, "xi")?, small_resolution(-1, "eta")?))
}

/// Applies `τ ↦ -τ` and renames the chart coordinate.
pub fn flip_tau(ideal: &Ideal, target: &RingRef) -> Result<Ideal> {
    let src = ideal.ring();
    let images: Vec<Polynomial> = (0..src.nvars())
        .map(|i| {
            let p = Polynomial::var(target, i).unwrap();
            if src.name(i) == TAU {
                -p
            } else {
                p
            }
        })
        .collect();
    Ok(ideal.substitute(&images)?)
}

#[derive(Debug, Clone)]
pub struct FlopLocus {
    /// In the chart coordinates `(u, tau_param, xi)` of `S`.
    pub ideal: Ideal,
    pub dimension: Option<usize>,
    pub in_central_fiber: bool,
    /// The locus after inverting `τ`.
    pub off_central_fiber: Ideal,
}

impl Serialize for FlopLocus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FlopLocus", 5)?;
        st.serialize_field("variables", self.ideal.ring().names())?;
        st.serialize_field("ideal", &self.ideal.to_strings())?;
        st.serialize_field("dimension", &self.dimension)?;
        st.serialize_field("in_central_fiber", &self.in_central_fiber)?;
        st.serialize_field("after_inverting_tau", &self.off_central_fiber.to_strings())?;
        st.end()
    }
}

/// Where the birational map `S --> S'` fails to be defined, computed in the
/// `xi` chart of `S`. The second factor of `S'` is `[w + τ : u] = [v : w - τ]`;
/// the map is undefined where both pairs vanish.
pub fn flop_indeterminacy() -> Result<FlopLocus> {
    let (s, _) = node_small_resolutions()?;
    let xi_chart = s.chart("xi").expect("xi chart");
    let red = reduce_linear(&xi_chart.ideal)?;
    let small = red.ideal.ring().clone();
    debug_assert!(red.ideal.is_zero_ideal());
    let full = xi_chart.ideal.ring();
    let images: Vec<Polynomial> = (0..full.nvars())
        .map(|i| {
            let name = full.name(i);
            match red.solved.iter().find(|(n, _)| n == name) {
                Some((_, e)) => e.clone(),
                None => Polynomial::var_named(&small, name),
            }
        })
        .collect();
    let pull = |src: &str| -> Result<Polynomial> {
        let p = crate::parse::parse_polynomial(src, full).expect("fixed expression");
        Ok(p.substitute(&images)?)
    };
    let first = Ideal::new(&small, [pull("w + tau_param")?, pull("u")?])?;
    let second = Ideal::new(&small, [pull("v")?, pull("w - tau_param")?])?;
    let ideal = first.sum(&second)?.reduced()?;
    let tau = Polynomial::var_named(&small, TAU);
    let in_central_fiber = ideal.contains(&tau)?;
    let off_central_fiber = ideal.saturate(&Ideal::new(&small, [tau])?)?.reduced()?;
    let dimension = ideal.dimension()?;
    Ok(FlopLocus { ideal, dimension, in_central_fiber, off_central_fiber })
}

/// Generators of `(u, τ)` written with the ring of a flop locus, for
/// comparisons.
pub fn exceptional_curve_ideal(ring: &RingRef) -> Ideal {
    Ideal::new(ring, [Polynomial::var_named(ring, "u"), Polynomial::var_named(ring, TAU)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn base_change_small_cases() {
        let (_, i) = an_base_change(1).unwrap();
        assert_eq!(i.to_strings(), ["x*y - z^2 + a1^2"]);
        for n in 1..=4 {
            assert!(base_change_identity(n).unwrap(), "n = {n}");
        }
        assert!(an_base_change(0).is_err());
    }

    #[test]
    fn root_sum_vanishes() {
        let b = RootBase::new(3).unwrap();
        assert!(b.root_sum().is_zero());
        assert!(b.elementary_symmetric(1).is_zero());
    }

    #[test]
    fn a1_resolution_charts() {
        let v = an_simultaneous_resolution(1, DEFAULT_CAP).unwrap();
        assert_eq!(v.charts.len(), 2);
        assert!(v.all_smooth());
        let pts = sample_base_points(1, 4, 7);
        assert!(certify_fibers(&v, &pts).unwrap().iter().all(|(_, _, verdict)| *verdict == Verdict::Smooth));
        // exceptional curve over the origin of the central fibre
        for c in &v.charts {
            let r = c.ideal.ring();
            let extra = ["x", "y", "z", "a1"].map(|n| Polynomial::var_named(r, n));
            let e = c.ideal.with_generators(extra).unwrap();
            assert_eq!(e.dimension().unwrap(), Some(1));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            an_simultaneous_resolution(4, 3).unwrap_err(),
            ResolutionError::CapExceeded { n: 4, cap: 3 }
        );
    }

    #[test]
    fn node_resolutions_are_smooth_and_swapped() {
        let (s, sp) = node_small_resolutions().unwrap();
        assert!(s.all_smooth() && sp.all_smooth());
        let xi = &s.chart("xi").unwrap().ideal;
        let r = xi.ring();
        let quoted = Ideal::new(
            r,
            ["u*xi - (w - tau_param)", "(w + tau_param)*xi - v"].map(|g| crate::parse::parse_polynomial(g, r).unwrap()),
        )
        .unwrap();
        assert!(xi.same_ideal(&quoted).unwrap());
        for (a, b) in s.charts.iter().zip(&sp.charts) {
            let flipped = flip_tau(&a.ideal, b.ideal.ring()).unwrap();
            assert!(flipped.same_ideal(&b.ideal).unwrap(), "{} vs {}", a.name, b.name);
        }
        let fib = xi.with_generators([&Polynomial::var_named(r, TAU) - &Polynomial::constant(r, int(1))]).unwrap();
        assert_eq!(is_smooth(&fib, 2).unwrap().verdict, Verdict::Smooth);
    }

    #[test]
    fn flop_locus_is_the_exceptional_curve() {
        let f = flop_indeterminacy().unwrap();
        assert!(f.ideal.same_ideal(&exceptional_curve_ideal(f.ideal.ring())).unwrap());
        assert_eq!(f.dimension, Some(1));
        assert!(f.in_central_fiber);
        assert!(f.off_central_fiber.is_unit().unwrap());
    }
}
