//! Jacobian-criterion smoothness certificates.

use std::fmt;

use num_traits::Zero;

use super::budget::Budget;
use super::error::{AlgebraError, Result};
use super::ideal::Ideal;
use super::poly::Polynomial;
use super::ring::{Ring, RingRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Smooth,
    SingularLocusNonempty,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Smooth => "smooth",
            Verdict::SingularLocusNonempty => "singular-locus-nonempty",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SmoothnessCertificate {
    pub verdict: Verdict,
    /// Singular-locus ideal in the ring of the input; contains 1 exactly when
    /// the verdict is `Smooth`.
    pub witness: Ideal,
    /// Dimension of `V(I)` as computed, `None` if empty.
    pub dimension: Option<usize>,
}

/// Result of solving generators of the form `c*x + (terms without x)` for `x`.
#[derive(Debug, Clone)]
pub struct LinearReduction {
    /// The remaining ideal in the smaller ring.
    pub ideal: Ideal,
    /// Eliminated variables of the input ring with their expressions in the
    /// smaller ring.
    pub solved: Vec<(String, Polynomial)>,
}

fn solvable_var(g: &Polynomial) -> Option<usize> {
    let n = g.ring().nvars();
    (0..n).find(|&v| {
        let mut linear_term = false;
        for (m, _) in g.terms() {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            if e == 1 && m.degree() == 1 && !linear_term {
                linear_term = true;
            } else {
                return false;
            }
        }
        linear_term
    })
}

/// Repeatedly eliminates a variable that some generator determines as a
/// polynomial in the others. `V(I)` is isomorphic to `V(result)`.
pub fn reduce_linear(ideal: &Ideal) -> Result<LinearReduction> {
    let mut ring = ideal.ring().clone();
    let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
    // (name, expression in the current ring)
    let mut solved: Vec<(String, Polynomial)> = Vec::new();
    loop {
        let hit = gens.iter().enumerate().find_map(|(k, g)| solvable_var(g).map(|v| (k, v)));
        let Some((k, v)) = hit else { break };
        let g = gens.remove(k);
        let x = Polynomial::var(&ring, v)?;
        let c = g.coefficient(x.terms().next().unwrap().0);
        // x = -(g - c x) / c
        let expr = (&g - &x.scale(&c)).scale(&(-c.recip()));
        let names: Vec<String> = ring.names().iter().enumerate().filter(|(i, _)| *i != v).map(|(_, n)| n.clone()).collect();
        let smaller = Ring::new(names)?;
        let images: Vec<Polynomial> = (0..ring.nvars())
            .map(|i| if i == v { expr.clone() } else { Polynomial::var(&ring, i).unwrap() })
            .collect();
        let project = |p: &Polynomial| -> Result<Polynomial> { p.substitute(&images)?.map_to_ring(&smaller) };
        gens = gens.iter().map(project).collect::<Result<Vec<_>>>()?;
        gens.retain(|p| !p.is_zero());
        for (_, e) in solved.iter_mut() {
            *e = project(e)?;
        }
        solved.push((ring.name(v).to_string(), project(&expr)?));
        ring = smaller;
    }
    Ok(LinearReduction { ideal: Ideal::new(&ring, gens)?, solved })
}

fn determinant(m: &[Vec<Polynomial>], ring: &RingRef) -> Polynomial {
    let k = m.len();
    match k {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(ring);
            for col in 0..k {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][col] * &determinant(&minor, ring);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// All `size x size` minors of the Jacobian matrix of `gens`.
pub fn jacobian_minors(gens: &[Polynomial], ring: &RingRef, size: usize) -> Result<Vec<Polynomial>> {
    let n = ring.nvars();
    if size == 0 {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let count = binomial(gens.len(), size) * binomial(n, size);
    let limit = Budget::current().max_minors;
    if count > limit as u128 {
        return Err(AlgebraError::BudgetExceeded(format!("{count} Jacobian minors exceed the limit of {limit}")));
    }
    let jac: Vec<Vec<Polynomial>> =
        gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for rows in combinations(gens.len(), size) {
        for cols in combinations(n, size) {
            let m: Vec<Vec<Polynomial>> =
                rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = determinant(&m, ring);
            if !d.is_zero() && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Certifies smoothness of `V(I)` over the algebraic closure, assuming `I` is
/// equidimensional of dimension `expected_dim`.
///
/// Variables that some generator determines linearly are solved first; the
/// Jacobian criterion then runs on the reduced presentation and the witness
/// is pulled back to the input ring.
pub fn is_smooth(ideal: &Ideal, expected_dim: usize) -> Result<SmoothnessCertificate> {
    let red = reduce_linear(ideal)?;
    let small = &red.ideal;
    let ring = small.ring().clone();
    let gb = small.groebner()?;
    let dimension = gb.dimension();
    let pull_back = |w: &Ideal| -> Result<Ideal> {
        let mut gens: Vec<Polynomial> =
            w.generators().iter().map(|g| g.map_to_ring(ideal.ring())).collect::<Result<_>>()?;
        for (name, expr) in &red.solved {
            let x = Polynomial::var_named(ideal.ring(), name);
            gens.push(&x - &expr.map_to_ring(ideal.ring())?);
        }
        Ideal::new(ideal.ring(), gens)
    };
    match dimension {
        None => {
            return Ok(SmoothnessCertificate {
                verdict: Verdict::Smooth,
                witness: Ideal::unit(ideal.ring()),
                dimension: None,
            })
        }
        Some(d) if d != expected_dim => {
            return Ok(SmoothnessCertificate {
                verdict: Verdict::Inconclusive,
                witness: pull_back(small)?,
                dimension: Some(d),
            })
        }
        Some(_) => {}
    }
    let codim = ring.nvars() - expected_dim;
    let minors = jacobian_minors(small.generators(), &ring, codim)?;
    let sing = small.with_generators(minors)?;
    let sing_gb = sing.groebner()?;
    let verdict = if sing_gb.is_unit() { Verdict::Smooth } else { Verdict::SingularLocusNonempty };
    let witness = if sing_gb.is_unit() { Ideal::unit(ideal.ring()) } else { pull_back(&sing_gb.to_ideal())? };
    Ok(SmoothnessCertificate { verdict, witness, dimension })
}

/// True when every generator vanishes at `point`.
pub fn vanishes_at(ideal: &Ideal, point: &[super::ring::Rational]) -> Result<bool> {
    for g in ideal.generators() {
        if !g.eval(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::int;
    use crate::parse::parse_polynomial;

    fn ideal(ring: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(g, ring).unwrap())).unwrap()
    }

    #[test]
    fn smooth_quadric_fiber() {
        let r = Ring::new(["u", "v", "w"]).unwrap();
        let c = is_smooth(&ideal(&r, &["w^2 - u*v - 1"]), 2).unwrap();
        assert_eq!(c.verdict, Verdict::Smooth);
        assert!(c.witness.is_unit().unwrap());
    }

    #[test]
    fn node_is_singular_at_origin() {
        let r = Ring::new(["u", "v", "w"]).unwrap();
        let c = is_smooth(&ideal(&r, &["w^2 - u*v"]), 2).unwrap();
        assert_eq!(c.verdict, Verdict::SingularLocusNonempty);
        assert!(vanishes_at(&c.witness, &[int(0), int(0), int(0)]).unwrap());
        assert!(!c.witness.is_unit().unwrap());
    }

    #[test]
    fn wrong_dimension_is_inconclusive() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let c = is_smooth(&ideal(&r, &["x*y"]), 1).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn linear_reduction_parametrizes_graph() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let red = reduce_linear(&ideal(&r, &["y - x^2", "z - x*y"])).unwrap();
        assert!(red.ideal.is_zero_ideal());
        assert_eq!(red.ideal.ring().names(), ["x"]);
        let c = is_smooth(&ideal(&r, &["y - x^2", "z - x*y"]), 1).unwrap();
        assert_eq!(c.verdict, Verdict::Smooth);
    }

    #[test]
    fn minors_of_a_single_generator_are_partials() {
        let r = Ring::new(["x", "y"]).unwrap();
        let g = parse_polynomial("x^2 + y^3", &r).unwrap();
        let m = jacobian_minors(&[g], &r, 1).unwrap();
        assert_eq!(m.len(), 2);
    }
}
