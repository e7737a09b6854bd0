use defkit::surf::{build_segre_surface, count_nodes, count_singular_points, nodal_bounds, segre_count, severi_bound};
use defkit::{parse_polynomial, AdeType, Rational, Ring};

#[test]
fn segre_conic_has_one_node() {
    for seed in 0..3 {
        let s = build_segre_surface(2, seed).unwrap();
        let c = count_nodes(&s).unwrap();
        assert_eq!(c.count, Some(1), "seed {seed}");
        assert!(c.all_a1);
    }
}

#[test]
fn segre_quartic_has_twelve_nodes() {
    let s = build_segre_surface(4, 1).unwrap();
    assert_eq!(s.expected_nodes(), 12);
    let c = count_nodes(&s).unwrap();
    assert_eq!(c.count, Some(12));
    assert_eq!(c.distinct_points, 12);
    assert!(c.all_a1);
}

#[test]
fn non_reduced_singular_scheme_reports_worse_points() {
    let r = Ring::new(["x0", "x1", "x2", "x3"]).unwrap();
    let f = parse_polynomial(
        "x0*x1*x2*(x0 + 2*x1 - x2 + x3) - (x0*x3 + x1^2 + 3*x2*x3 - x0*x1 + 2*x1*x2 - x2^2)^2",
        &r,
    )
    .unwrap();
    let c = count_singular_points(&f).unwrap();
    assert_eq!(c.count, None);
    assert!(!c.all_a1);
    assert_eq!((c.raw_colength, c.distinct_points), (14, 9));
    let d6 = c
        .rational_nodes
        .iter()
        .find(|n| n.coordinates == [0, 0, 0, 1].map(|v: i64| Rational::from_integer(v.into())))
        .expect("a rational point at (0:0:0:1)");
    assert_eq!((d6.tau, d6.ade), (6, Some(AdeType::d(6))));
}

#[test]
fn nodal_table_is_consistent() {
    for d in 3..=6 {
        let b = nodal_bounds(d).unwrap();
        let mu = b.record.and_then(|r| r.mu_known).expect("records known up to degree 6");
        assert!(mu as i64 <= severi_bound(d));
    }
    assert_eq!(segre_count(6), Some(45));
    assert_eq!(segre_count(5), None);
}
