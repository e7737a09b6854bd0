use defkit::algebra::{jet_colength_oracle, ring_ops, Ideal, Monomial, Polynomial, Rational, Ring, RingRef};
use defkit::singular::{analyze, local_colength, normal_form};
use defkit::{parse_polynomial, AdeType};
use proptest::prelude::*;

fn xyz() -> RingRef {
    Ring::new(["x", "y", "z"]).unwrap()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Up to six terms in `x, y, z` with exponents at most 3.
fn poly_in(ring: RingRef) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((small_rational(), prop::array::uniform3(0u32..=3)), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(&ring, terms.into_iter().map(|(c, e)| (Monomial::from_exponents(&e), c)))
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_operations_commute_with_evaluation(
        f in poly_in(xyz()),
        g in poly_in(xyz()),
        pts in prop::collection::vec(point(), 10),
    ) {
        let ops = ring_ops(&f, &g, 0).unwrap();
        let leibniz = &(&ops.derivative * &g) + &(&f * &g.derivative(0).unwrap());
        for p in &pts {
            let (fv, gv) = (f.eval(p).unwrap(), g.eval(p).unwrap());
            prop_assert_eq!(ops.sum.eval(p).unwrap(), &fv + &gv);
            prop_assert_eq!(ops.product.eval(p).unwrap(), &fv * &gv);
            // substituting g for x is evaluation at (g(p), y, z)
            let moved = [gv.clone(), p[1].clone(), p[2].clone()];
            prop_assert_eq!(ops.substituted.eval(p).unwrap(), f.eval(&moved).unwrap());
            prop_assert_eq!(ops.product.derivative(0).unwrap().eval(p).unwrap(), leibniz.eval(p).unwrap());
        }
    }

    #[test]
    fn printing_then_parsing_is_the_identity(f in poly_in(xyz())) {
        let back = parse_polynomial(&f.to_string(), f.ring()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn saturation_is_idempotent(f in poly_in(xyz()), g in poly_in(xyz())) {
        let ring = xyz();
        let x = Polynomial::var(&ring, 0).unwrap();
        let i = Ideal::new(&ring, [&x * &f, &x.pow(2) * &g]).unwrap();
        let j = Ideal::new(&ring, [x]).unwrap();
        let once = i.saturate(&j).unwrap();
        let twice = once.saturate(&j).unwrap();
        prop_assert!(once.same_ideal(&twice).unwrap());
        prop_assert!(once.contains_ideal(&i).unwrap());
    }
}

/// `(x^a + h1, y^b + h2, extra)` with `h1, h2` of order above the pure powers,
/// which keeps the ideal primary to the maximal ideal.
fn m_primary() -> impl Strategy<Value = Ideal> {
    let ring = Ring::new(["x", "y"]).unwrap();
    let r2 = ring.clone();
    let tail = move |min: u32| {
        let r = r2.clone();
        prop::collection::vec((small_rational(), 0u32..=4, 0u32..=4), 0..3).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .filter(|(_, i, j)| i + j >= min)
                    .map(|(c, i, j)| (Monomial::from_exponents(&[i, j]), c)),
            )
        })
    };
    (1u32..=4, 1u32..=4, tail(5), tail(5), tail(2)).prop_map(move |(a, b, h1, h2, extra)| {
        let x = Polynomial::var(&ring, 0).unwrap();
        let y = Polynomial::var(&ring, 1).unwrap();
        Ideal::new(&ring, [&x.pow(a) + &h1, &y.pow(b) + &h2, extra]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn standard_basis_colength_matches_jet_oracle(i in m_primary()) {
        let mora = local_colength(&i).unwrap();
        prop_assert!(mora.is_some());
        prop_assert_eq!(jet_colength_oracle(&i, 4).stable(), mora);
    }
}

/// An invertible integer matrix: lower unitriangular times upper unitriangular.
fn invertible() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform6(-2i64..=2).prop_map(|e| {
        let l = [[1, 0, 0], [e[0], 1, 0], [e[1], e[2], 1]];
        let u = [[1, e[3], e[4]], [0, 1, e[5]], [0, 0, 1]];
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| l[i][k] * u[k][j]).sum();
            }
        }
        m
    })
}

fn linear_change(f: &Polynomial, m: &[[i64; 3]; 3]) -> Polynomial {
    let ring = f.ring();
    let images: Vec<Polynomial> = m
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                ring,
                row.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, c)| (Monomial::var(3, j), Rational::from_integer((*c).into()))),
            )
        })
        .collect();
    f.substitute(&images).unwrap()
}

fn all_ade() -> Vec<AdeType> {
    (1..=8).map(AdeType::a).chain((4..=6).map(AdeType::d)).chain((6..=8).map(AdeType::e)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn ade_type_survives_linear_coordinate_changes(m in invertible()) {
        for t in all_ade() {
            let g = linear_change(&normal_form(t), &m);
            let report = analyze(&g).unwrap();
            prop_assert_eq!(report.ade, Some(t));
            prop_assert_eq!(report.mu, t.rank());
        }
    }
}
