//! Shared inputs for the benchmarks.

use defkit::algebra::Monomial;
use defkit::singular::normal_form;
use defkit::{parse_polynomial, AdeType, Polynomial, Rational, Ring};

/// `x*y - z^(n+1)` over `x, y, z`.
pub fn a_n(n: u32) -> Polynomial {
    let r = Ring::new(["x", "y", "z"]).unwrap();
    parse_polynomial(&format!("x*y - z^{}", n + 1), &r).unwrap()
}

/// The normal form of `t` after the substitution `x -> x + y + z`,
/// `y -> y - z`, which hides the type from the monomial support.
pub fn disguised(t: AdeType) -> Polynomial {
    let f = normal_form(t);
    let r = f.ring();
    let lin = |coeffs: [i64; 3]| {
        Polynomial::from_terms(r, (0..3).map(|j| (Monomial::var(3, j), Rational::from_integer(coeffs[j].into()))))
    };
    f.substitute(&[lin([1, 1, 1]), lin([0, 1, -1]), lin([0, 0, 1])]).unwrap()
}
