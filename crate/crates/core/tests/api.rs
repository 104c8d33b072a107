use moment_core::rational::{frac, int};
use moment_core::{
    classify, minimal_stieltjes_extension, stieltjes_classify, sufficient_check, verify_certificate, AtomicMeasure,
    GridSpec, MomentVector, Verdict,
};

#[test]
fn boundary_vector_recovers_its_measure() {
    let m = MomentVector::from_ratios(&[(3, 2), (5, 2)]);
    let Verdict::BRealizable(c) = classify(&m, &GridSpec::Nn0).unwrap() else { panic!("expected B") };
    assert_eq!(c.measure, AtomicMeasure::uniform(&[int(1), int(2)]).unwrap());
    assert_eq!(c.index, 2);
}

#[test]
fn verdict_json_round_trip() {
    let grid = GridSpec::Nn0;
    for m in [&[(3, 2), (12, 5)][..], &[(4, 3), (10, 3), (28, 3), (82, 3)], &[(5, 2), (8, 1), (29, 1)]] {
        let m = MomentVector::from_ratios(m);
        let v = classify(&m, &grid).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert!(verify_certificate(&m, &back, &grid));
    }
}

#[test]
fn explicit_grid_matches_integers_scaled() {
    // mean 3/4 between 1/2 and 1 on the half-integer grid; threshold m2 = 5/8
    let grid = GridSpec::lattice(&frac(1, 2), 20).unwrap();
    let at = |m2| MomentVector::new(vec![frac(3, 4), m2]);
    assert_eq!(classify(&at(frac(5, 8)), &grid).unwrap().label(), "B");
    assert_eq!(classify(&at(frac(3, 4)), &grid).unwrap().label(), "I");
    assert_eq!(classify(&at(frac(9, 16)), &grid).unwrap().label(), "Not");
}

#[test]
fn half_line_is_weaker_than_the_grid() {
    // variance 1/8 is fine on the half-line but below 1/4 on the integers
    let m = MomentVector::new(vec![frac(3, 2), frac(19, 8)]);
    assert!(stieltjes_classify(&m).is_realizable());
    assert!(!classify(&m, &GridSpec::Nn0).unwrap().is_realizable());
    let (next, nu) = minimal_stieltjes_extension(&m).unwrap();
    assert_eq!(nu.moments(3), m.extended(next));
}

#[test]
fn sufficient_implies_interior() {
    let m = MomentVector::from_ratios(&[(1, 2), (3, 4)]);
    assert!(sufficient_check(&m));
    assert_eq!(classify(&m, &GridSpec::Nn0).unwrap().label(), "I");
}
