use super::*;
use crate::grid::polynomial_pattern_check;
use crate::rational::frac;
use proptest::prelude::*;
use super::Strategy;
use proptest::strategy::Strategy as _;

fn mv(v: &[(i64, i64)]) -> MomentVector {
    MomentVector::from_ratios(v)
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn roots_of(p: &RationalPolynomial) -> Vec<Rational> {
    p.roots().expect("roots").to_vec()
}

#[test]
fn classify_examples() {
    let g = GridSpec::Nn0;
    match classify(&mv(&[(3, 2), (5, 2)]), &g).unwrap() {
        Verdict::BRealizable(c) => {
            assert_eq!(c.measure, AtomicMeasure::uniform(&ints(&[1, 2])).unwrap());
            assert_eq!(roots_of(&c.polynomial), ints(&[1, 2]));
            assert_eq!(c.index, 2);
        }
        other => panic!("unexpected {other:?}"),
    }
    match classify(&mv(&[(3, 2), (12, 5)]), &g).unwrap() {
        Verdict::NotRealizable(NegativityWitness::Negative { index, polynomial, value }) => {
            assert_eq!(index, 2);
            assert_eq!(polynomial.coeffs(), &ints(&[2, -3, 1])[..]);
            assert_eq!(value, frac(-1, 10));
        }
        other => panic!("unexpected {other:?}"),
    }
    match classify(&mv(&[(3, 2), (9, 2), (27, 2), (81, 2)]), &g).unwrap() {
        Verdict::BRealizable(c) => {
            assert_eq!(c.index, 3);
            assert_eq!(c.measure, AtomicMeasure::uniform(&ints(&[0, 3])).unwrap());
        }
        other => panic!("unexpected {other:?}"),
    }
    match classify(&mv(&[(3, 2), (9, 2), (27, 2), (40, 1)]), &g).unwrap() {
        Verdict::NotRealizable(NegativityWitness::ForcedMismatch { index, shift, forced, polynomial, .. }) => {
            assert_eq!((index, shift), (4, 1));
            assert_eq!(forced, frac(81, 2));
            assert_eq!(roots_of(&polynomial), ints(&[0, 3, 4]));
        }
        other => panic!("unexpected {other:?}"),
    }
    match classify(&mv(&[(0, 1)]), &g).unwrap() {
        Verdict::BRealizable(c) => assert_eq!(c.measure, AtomicMeasure::dirac(int(0))),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(classify(&mv(&[(-1, 3)]), &g).unwrap(), Verdict::NotRealizable(_)));
    assert!(matches!(classify(&mv(&[(1, 2), (3, 4)]), &g).unwrap(), Verdict::IRealizable(_)));
}

#[test]
fn classify_rejects_bad_requests() {
    assert!(matches!(classify(&MomentVector::new(vec![]), &GridSpec::Nn0), Err(Error::Domain(_))));
    assert!(matches!(classify(&mv(&[(1, 1)]), &GridSpec::Nn { n: 4 }), Err(Error::Domain(_))));
    let config = SolverConfig { n_max: 2, ..SolverConfig::default() };
    assert!(matches!(
        classify_with(&mv(&[(1, 1), (2, 1), (3, 1)]), &GridSpec::Nn0, &config),
        Err(Error::LimitExceeded { n: 3, limit: 2 })
    ));
}

#[test]
fn min_poly_examples() {
    let g = GridSpec::Nn0;
    let p = min_poly(&mv(&[(3, 2)]), 2, &g, Strategy::Explicit).unwrap();
    assert_eq!(roots_of(&p), ints(&[1, 2]));
    let p = min_poly(&mv(&[(3, 2), (5, 2)]), 3, &g, Strategy::Explicit).unwrap();
    assert_eq!(roots_of(&p), ints(&[0, 1, 2]));
    for strategy in [Strategy::Explicit, Strategy::Recursive] {
        let p = min_poly(&mv(&[(4, 3), (10, 3), (28, 3)]), 4, &g, strategy).unwrap();
        assert_eq!(roots_of(&p), ints(&[0, 1, 3, 4]));
    }
}

#[test]
fn extension_examples() {
    let g = GridSpec::Nn0;
    let (next, mu) = minimal_extension(&mv(&[(3, 2)]), &g, Strategy::Explicit).unwrap();
    assert_eq!(next, frac(5, 2));
    assert_eq!(mu, AtomicMeasure::uniform(&ints(&[1, 2])).unwrap());
    let (next, _) = minimal_extension(&mv(&[(3, 2), (5, 2)]), &g, Strategy::Explicit).unwrap();
    assert_eq!(next, frac(9, 2));
    let (next, mu) = minimal_extension(&mv(&[(4, 3), (10, 3), (28, 3)]), &g, Strategy::Explicit).unwrap();
    assert_eq!(next, frac(82, 3));
    assert_eq!(mu, AtomicMeasure::uniform(&ints(&[0, 1, 3])).unwrap());

    let p = RationalPolynomial::from_roots(&ints(&[0, 3, 4]), int(1));
    assert_eq!(forced_extension(&mv(&[(3, 2), (9, 2), (27, 2)]), &p, 1).unwrap(), frac(81, 2));
    let p = RationalPolynomial::from_roots(&ints(&[2]), int(1));
    assert_eq!(forced_extension(&mv(&[(2, 1), (4, 1)]), &p, 2).unwrap(), int(8));
    // the n = 3 boundary case: m_3 = (2k+1) m_2 - k(k+1) m_1 with k = 1
    let m2 = frac(9, 4) + frac(1, 4);
    let p = RationalPolynomial::from_roots(&ints(&[1, 2]), int(1));
    let forced = forced_extension(&MomentVector::new(vec![frac(3, 2), m2.clone()]), &p, 1).unwrap();
    assert_eq!(forced, int(3) * m2 - int(2) * frac(3, 2));
    assert_eq!(forced, frac(9, 2));
}

#[test]
fn verdict_json_shape() {
    let v = classify(&mv(&[(3, 2), (5, 2)]), &GridSpec::Nn0).unwrap();
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["status"], "B");
    assert_eq!(json["certificate"]["measure"]["atoms"], serde_json::json!(["1", "2"]));
    assert_eq!(json["certificate"]["measure"]["weights"], serde_json::json!(["1/2", "1/2"]));
    let back: Verdict = serde_json::from_value(json).unwrap();
    assert_eq!(back, v);
}

fn measure_on(max_atom: i64, max_atoms: usize) -> impl proptest::strategy::Strategy<Value = AtomicMeasure> {
    prop::collection::btree_map(0..=max_atom, 1i64..10, 1..=max_atoms).prop_map(|pairs| {
        let total: i64 = pairs.values().sum();
        AtomicMeasure::from_unsorted(pairs.iter().map(|(&x, &w)| (int(x), frac(w, total))).collect()).unwrap()
    })
}

/// All admissible patterns with entries `<= top`, as root lists.
fn patterns(n: usize, top: i64) -> Vec<Vec<i64>> {
    fn pairs(k: usize, from: i64, top: i64) -> Vec<Vec<i64>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for a in from..top {
            for mut rest in pairs(k - 1, a + 2, top) {
                let mut v = vec![a, a + 1];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }
    if n.is_multiple_of(2) {
        pairs(n / 2, 0, top)
    } else {
        pairs(n / 2, 1, top)
            .into_iter()
            .map(|mut v| {
                v.insert(0, 0);
                v
            })
            .collect()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measures_are_realizable(mu in measure_on(10, 3), n in 1usize..7) {
        let m = mu.moments(n);
        let v = classify(&m, &GridSpec::Nn0).unwrap();
        prop_assert!(v.is_realizable());
        if mu.len() <= n / 2 || (n % 2 == 1 && mu.len() <= n / 2 + 1 && mu.atoms()[0].is_zero()) {
            match v {
                Verdict::BRealizable(c) => prop_assert_eq!(c.measure, mu),
                other => prop_assert!(false, "expected B, got {:?}", other),
            }
        }
    }

    #[test]
    fn certificates_are_sound(
        mu in measure_on(8, 3),
        n in 2usize..6,
        tweak in -20i64..20,
        den in 1i64..9,
    ) {
        let mut v = mu.moments(n).as_slice().to_vec();
        let k = (tweak.unsigned_abs() as usize) % n;
        v[k] += frac(tweak, den);
        let m = MomentVector::new(v);
        match classify(&m, &GridSpec::Nn0).unwrap() {
            Verdict::NotRealizable(NegativityWitness::Negative { index, polynomial, value }) => {
                prop_assert!(polynomial_pattern_check(&polynomial, &GridSpec::Nn0));
                prop_assert_eq!(lform_eval(&polynomial, &m.prefix(index).unwrap()).unwrap(), value.clone());
                prop_assert!(value < int(0));
            }
            Verdict::NotRealizable(NegativityWitness::ForcedMismatch { index, forced, actual, .. }) => {
                prop_assert_eq!(actual, m.at(index));
                prop_assert!(forced != m.at(index));
            }
            Verdict::BRealizable(c) => {
                for j in 1..=n {
                    prop_assert_eq!(c.measure.moment(j), m.at(j));
                }
                prop_assert_eq!(lform_eval(&c.polynomial, &m).unwrap(), int(0));
                prop_assert!(polynomial_pattern_check(&c.polynomial, &GridSpec::Nn0));
            }
            Verdict::IRealizable(c) => prop_assert!(c.value > int(0)),
        }
    }

    #[test]
    fn interior_prefix_extends_monotonically(mu in measure_on(9, 4), n in 2usize..6, delta in 1i64..30) {
        let prefix = mu.moments(n - 1);
        prop_assume!(matches!(classify(&prefix, &GridSpec::Nn0).unwrap(), Verdict::IRealizable(_)));
        let (next, _) = minimal_extension(&prefix, &GridSpec::Nn0, Strategy::Explicit).unwrap();
        let at_boundary = classify(&prefix.extended(next.clone()), &GridSpec::Nn0).unwrap();
        prop_assert!(matches!(at_boundary, Verdict::BRealizable(_)));
        let above = classify(&prefix.extended(&next + frac(1, delta)), &GridSpec::Nn0).unwrap();
        prop_assert!(matches!(above, Verdict::IRealizable(_)));
        let below = classify(&prefix.extended(&next - frac(1, delta)), &GridSpec::Nn0).unwrap();
        prop_assert!(!below.is_realizable());
    }

    #[test]
    fn minimizer_beats_every_small_pattern(mu in measure_on(9, 4), n in 2usize..6, extra in 0i64..20) {
        let prefix = mu.moments(n - 1);
        prop_assume!(matches!(classify(&prefix, &GridSpec::Nn0).unwrap(), Verdict::IRealizable(_)));
        let m = prefix.extended(mu.moment(n) + frac(extra, 7));
        let p = min_poly(&m, n, &GridSpec::Nn0, Strategy::Explicit).unwrap();
        let best = lform_eval(&p, &m).unwrap();
        for alpha in patterns(n, 30) {
            let q = RationalPolynomial::from_roots(&ints(&alpha), int(1));
            prop_assert!(best <= lform_eval(&q, &m).unwrap(), "pattern {:?} beats {}", alpha, p);
        }
    }
}
