use defkit::algebra::{int, Verdict};
use defkit::bidouble::{invariant_ring, quotient_family, DiagonalAction};
use defkit::defo::{fiber_singularity_scan, semiuniversal_family};
use defkit::resolve::{an_simultaneous_resolution, certify_fibers, flop_indeterminacy, sample_base_points};
use defkit::singular::analyze;
use defkit::{parse_polynomial, AdeType, Ideal, Ring};

#[test]
fn a2_from_parsing_to_fibres() {
    let r = Ring::new(["x", "y", "z"]).unwrap();
    let f = parse_polynomial("x*y - z^3", &r).unwrap();
    let report = analyze(&f).unwrap();
    assert_eq!((report.mu, report.tau, report.ade), (2, 2, Some(AdeType::a(2))));
    assert_eq!(report.t1_basis_strings(), ["1", "z"]);

    let fam = semiuniversal_family(&[f]).unwrap();
    assert_eq!(fam.parameter_count(), 2);
    // xy = z^3 - 3z + 2 = (z - 1)^2 (z + 2): one node
    let scan = fiber_singularity_scan(&fam, &[int(-2), int(3)]).unwrap();
    assert_eq!(scan.points.len(), 1);
    assert_eq!(scan.points[0].tau, 1);
    assert!(scan.irrational.is_none());

    let generic = fiber_singularity_scan(&fam, &[int(1), int(1)]).unwrap();
    assert!(generic.points.is_empty());
}

#[test]
fn a1_resolution_and_fibres_are_smooth() {
    let var = an_simultaneous_resolution(1, 3).unwrap();
    assert!(var.all_smooth());
    let pts = sample_base_points(1, 4, 7);
    for (_, _, v) in certify_fibers(&var, &pts).unwrap() {
        assert_eq!(v, Verdict::Smooth);
    }
}

#[test]
fn flop_locus_lies_over_the_origin() {
    let locus = flop_indeterminacy().unwrap();
    assert_eq!(locus.dimension, Some(1));
    assert!(locus.in_central_fiber);
    assert!(locus.off_central_fiber.is_unit().unwrap());
}

#[test]
fn bidouble_quotient_of_the_smoothed_node() {
    let r = Ring::new(["u", "v", "w", "t"]).unwrap();
    let act = DiagonalAction::parse(&r, "1,1,-1,1; -1,-1,1,1").unwrap();
    let names: Vec<String> = ["t", "x", "z", "y", "s"].iter().map(|s| s.to_string()).collect();
    let pres = invariant_ring(&act, Some(&names)).unwrap();
    let total = Ideal::new(&r, [parse_polynomial("w^2 - u*v - t", &r).unwrap()]).unwrap();
    let q = quotient_family(&total, &act, &pres).unwrap();
    let expected = Ideal::new(
        &pres.target,
        ["s - z - t", "z^2 - x*y"].map(|s| parse_polynomial(s, &pres.target).unwrap()),
    )
    .unwrap();
    assert!(q.same_ideal(&expected).unwrap());
}
