//! Recognition of rational double points from μ, the Hessian corank and the
//! residual cubic form.

use num_traits::Zero;

use crate::algebra::{kernel, rref, Monomial, Polynomial, Rational, Ring};

use super::{tjurina, AdeFamily, AdeType, Result, SingularityReport};

/// Hessian matrix of `f` at the origin.
pub fn hessian_at_origin(f: &Polynomial) -> Vec<Vec<Rational>> {
    let n = f.ring().nvars();
    let mut h = vec![vec![Rational::zero(); n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let m = Monomial::var(n, i).mul(&Monomial::var(n, j));
            let c = f.coefficient(&m);
            *entry = if i == j { c * Rational::from_integer(2.into()) } else { c };
        }
    }
    h
}

/// `n - rank` of the Hessian at the origin.
pub fn corank(f: &Polynomial) -> usize {
    let mut h = hessian_at_origin(f);
    let n = h.len();
    n - rref(&mut h).len()
}

/// Cubic part of `f` restricted to the kernel of its Hessian (corank 2).
fn residual_cubic(f: &Polynomial) -> Polynomial {
    let ker = kernel(hessian_at_origin(f));
    debug_assert_eq!(ker.len(), 2);
    let plane = Ring::new(["s", "t"]).unwrap();
    let s = Polynomial::var(&plane, 0).unwrap();
    let t = Polynomial::var(&plane, 1).unwrap();
    let images: Vec<Polynomial> =
        (0..f.ring().nvars()).map(|i| &s.scale(&ker[0][i]) + &t.scale(&ker[1][i])).collect();
    f.homogeneous_part(3).substitute(&images).unwrap()
}

/// A binary cubic is a cube of a linear form iff its Hessian covariant
/// `c_ss c_tt - c_st^2` vanishes.
fn is_perfect_cube(c: &Polynomial) -> bool {
    let d = |p: &Polynomial, i: usize| p.derivative(i).unwrap();
    let (cs, ct) = (d(c, 0), d(c, 1));
    let h = &(&d(&cs, 0) * &d(&ct, 1)) - &(&d(&cs, 1) * &d(&cs, 1));
    h.is_zero()
}

pub(super) fn classify_from_report(f: &Polynomial, report: &SingularityReport) -> Result<Option<AdeType>> {
    let mu = report.mu;
    if mu == 0 || mu != report.tau {
        return Ok(None);
    }
    Ok(match report.corank {
        0 | 1 => Some(AdeType::a(mu)),
        2 => {
            let cubic = residual_cubic(f);
            if cubic.is_zero() || is_perfect_cube(&cubic) {
                (6..=8).contains(&mu).then(|| AdeType::e(mu))
            } else {
                (mu >= 4).then(|| AdeType::d(mu))
            }
        }
        _ => None,
    })
}

/// ADE label of an isolated singularity at the origin, or `None` when the
/// germ does not match any ADE pattern.
pub fn classify_ade(f: &Polynomial) -> Result<Option<AdeType>> {
    let report = tjurina(f)?;
    classify_from_report(f, &report)
}

/// Standard equation of `t` in the ring `x, y, z`.
pub fn normal_form(t: AdeType) -> Polynomial {
    let ring = Ring::new(["x", "y", "z"]).expect("fixed names");
    let v = |i| Polynomial::var(&ring, i).expect("three variables");
    let (x, y, z) = (v(0), v(1), v(2));
    let n = t.rank() as u32;
    let tail = match (t.family(), n) {
        (AdeFamily::A, _) => &y.pow(2) + &z.pow(n + 1),
        (AdeFamily::D, _) => &(&y.pow(2) * &z) + &z.pow(n - 1),
        (AdeFamily::E, 6) => &y.pow(3) + &z.pow(4),
        (AdeFamily::E, 7) => &y.pow(3) + &(&y * &z.pow(3)),
        _ => &y.pow(3) + &z.pow(5),
    };
    &x.pow(2) + &tail
}
