//! Values computed independently with sympy/mpmath and frozen here.

use gapscan::factor::factor;
use gapscan::family::GapFamily;
use gapscan::heights::{mahler_measure, n1_bound, THETA};
use gapscan::pipeline::{analyze, exclude_noncyclotomic_r_factors, oracle_verify, AnalyzeOptions};
use gapscan::poly::poly;

#[test]
fn lehmer_constant() {
    assert!((THETA - 1.176_280_818_259_917_5).abs() < 1e-15);
}

#[test]
fn n1_values() {
    assert!((n1_bound(&poly(&[1]), &poly(&[1, 0, -7])) - 98.868_279_450_597_75).abs() < 1e-9);
    assert!((n1_bound(&poly(&[1]), &poly(&[1, 1])) - 14.533_240_296_928_593).abs() < 1e-9);
}

#[test]
fn exclusion_window_for_golden_quadratics() {
    // 2 + 2 log 51 / log M(x^2 - 3x + 1) = 10.17...
    let f = GapFamily::from_i64s(&[1], &[1, 0, -7]).unwrap();
    let ex = exclude_noncyclotomic_r_factors(&f).unwrap();
    assert!(ex.iter().all(|e| e.window == 10));
    let m = mahler_measure(&poly(&[1, -3, 1]), 1e-12).unwrap().measure;
    assert!((m - 2.618_033_988_749_895).abs() < 1e-12);
}

#[test]
fn smyth_constant_measure() {
    let m = mahler_measure(&poly(&[-1, -1, 0, 1]), 1e-12).unwrap().measure;
    assert!((m - 1.324_717_957_244_746).abs() < 1e-12);
}

#[test]
fn linear_pair_without_exceptions() {
    let f = GapFamily::from_i64s(&[1, 2], &[1, 3]).unwrap();
    let r = analyze(&f, &AnalyzeOptions::default()).unwrap();
    assert_eq!(r.m0, Some(1));
    assert!(r.exceptional.is_empty());
    assert!(oracle_verify(&f, &r, 30).unwrap().ok());
}

#[test]
fn factor_shapes() {
    let shape = |c: &[i64]| -> Vec<(usize, usize)> {
        factor(&poly(c)).unwrap().factors.iter().map(|f| (f.poly.deg0(), f.multiplicity)).collect()
    };
    let mut t = vec![0i64; 61];
    (t[0], t[1], t[60]) = (1, 1, 1);
    assert_eq!(shape(&t), vec![(60, 1)]);
    let mut t = vec![0i64; 60];
    (t[0], t[1], t[59]) = (1, 1, 1);
    assert_eq!(shape(&t), vec![(2, 1), (57, 1)]);
    let d = [5i64, 6, 0, 3, 8, 0, 9, 6, 8, 3];
    for (n, want) in [(24usize, vec![(4, 1), (20, 1)]), (25, vec![(1, 1), (24, 1)]), (36, vec![(4, 1), (32, 1)])] {
        let mut c = vec![0i64; n + 1];
        c[..10].copy_from_slice(&d);
        c[n] = 12;
        assert_eq!(shape(&c), want, "N = {n}");
    }
}
