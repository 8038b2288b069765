use num_bigint::BigInt;
use perfmatch::exact::count_kasteleyn;
use perfmatch::regions::{build_aztec_window, RegionSpec};
use perfmatch::transfer::{
    count_sequence, detect_polynomial, finite_differences, least_vanishing_degree, transfer_count,
    transfer_dimension,
};
use perfmatch::Count;
use proptest::prelude::*;

#[test]
fn transfer_matches_kasteleyn_on_small_windows() {
    for x in 1..=3 {
        for w in 1..=3 {
            let t = transfer_count(&RegionSpec::AztecWindow { x, w }).unwrap();
            let k = count_kasteleyn(&build_aztec_window(x, w).unwrap()).unwrap();
            assert_eq!(t, k, "x={x} w={w}");
        }
    }
}

#[test]
fn transfer_matches_kasteleyn_on_diamonds() {
    for n in 1..=5 {
        let spec = RegionSpec::AztecDiamond { n };
        assert_eq!(transfer_count(&spec).unwrap(), count_kasteleyn(&spec.build().unwrap()).unwrap());
    }
}

#[test]
fn dimension_does_not_depend_on_x() {
    for w in 1..=4 {
        let d = transfer_dimension(1, w).unwrap();
        for x in 2..=8 {
            assert_eq!(transfer_dimension(x, w).unwrap(), d);
        }
    }
}

#[test]
fn width_two_sequence() {
    let counts = count_sequence(2, 1, 8).unwrap();
    assert_eq!(counts.len(), 8);
    let report = detect_polynomial(&counts).unwrap().with_x_range(1, 8);
    let d = report.detected_degree.expect("finite degree");
    assert!(report.differences[d + 1].iter().all(|v| *v == BigInt::from(0)));
    assert_eq!(report.x_range, Some((1, 8)));
}

#[test]
fn width_one_agrees_case_by_case() {
    for (x, c) in (1..=2).zip(count_sequence(1, 1, 2).unwrap()) {
        assert_eq!(c, count_kasteleyn(&build_aztec_window(x, 1).unwrap()).unwrap());
    }
}

proptest! {
    #[test]
    fn polynomial_degree_is_recovered(
        coeffs in prop::collection::vec(-50i64..=50, 1..=5),
        start in -10i64..=10,
        extra in 0usize..=4,
    ) {
        let mut coeffs = coeffs;
        if *coeffs.last().unwrap() == 0 {
            *coeffs.last_mut().unwrap() = 1;
        }
        let degree = coeffs.len() - 1;
        let samples = (degree + 2 + extra).max(3);
        let values: Vec<BigInt> = (0..samples as i64)
            .map(|k| {
                let x = BigInt::from(start + k);
                coeffs.iter().rev().fold(BigInt::from(0), |acc, &c| acc * &x + c)
            })
            .collect();
        let table = finite_differences(&values);
        prop_assert_eq!(least_vanishing_degree(&table), Some(degree));
    }

    #[test]
    fn shifted_nonnegative_polynomials_through_counts(a in 0u64..100, b in 0u64..100, c in 1u64..100) {
        let counts: Vec<Count> = (0..6u64).map(|x| Count::from(a + b * x + c * x * x)).collect();
        prop_assert_eq!(detect_polynomial(&counts).unwrap().detected_degree, Some(2));
    }
}
