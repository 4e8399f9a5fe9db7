mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sdea_core::poly::Polynomial;
use sdea_core::rational::RationalFunction;
use sdea_core::stability::{
    axis_analysis, imaginary_axis_pole, positive_real, quartic_hurwitz, residue_at, residues_positive_real,
    CubicCofactor, Quartic,
};
use sdea_core::tol::Tolerances;
use sdea_core::Error;

use common::roots;

fn quartic_roots(q: &Quartic) -> Vec<Complex64> {
    roots(&q.to_poly())
}

#[test]
fn documented_quartics() {
    let q = Quartic::new(1.0, 2.0, 3.0, 2.0, 1.0);
    let v = quartic_hurwitz(&q, 1e-9).unwrap();
    assert_eq!(v.margin, 4.0);
    assert!(v.stable);
    assert!(quartic_roots(&q).iter().all(|z| (z.re + 0.5).abs() < 1e-6));
    assert_eq!(imaginary_axis_pole(&q, 1e-9), None);

    let q = Quartic::new(1.0, 1.0, 1.0, 1.0, 1.0);
    let v = quartic_hurwitz(&q, 1e-9).unwrap();
    assert_eq!(v.margin, -1.0);
    assert!(!v.stable);
    assert!(quartic_roots(&q).iter().any(|z| z.re > 0.0));
    assert_eq!(imaginary_axis_pole(&q, 1e-9), None);

    let q = Quartic::new(1.0, 2.0, 2.0, 2.0, 1.0);
    let v = quartic_hurwitz(&q, 1e-9).unwrap();
    assert_eq!(v.margin, 0.0);
    assert!(v.marginal);
    assert_eq!(imaginary_axis_pole(&q, 1e-9), Some(1.0));
    let rs = quartic_roots(&q);
    assert!(rs.iter().any(|z| (z - Complex64::new(0.0, 1.0)).norm() < 1e-6));
}

#[test]
fn non_positive_coefficient_rejected() {
    let q = Quartic::new(1.0, 2.0, -1.0, 2.0, 1.0);
    assert!(matches!(quartic_hurwitz(&q, 1e-9), Err(Error::NonPositiveCoefficient { index: 2, .. })));
}

#[test]
fn hurwitz_agrees_with_root_oracle_on_random_quartics() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut unstable = 0;
    for _ in 0..1000 {
        let c: Vec<f64> = (0..5).map(|_| 10f64.powf(rng.gen_range(-2.0..2.0))).collect();
        let q = Quartic::new(c[4], c[3], c[2], c[1], c[0]);
        let v = quartic_hurwitz(&q, 1e-9).unwrap();
        let rs = quartic_roots(&q);
        let norm = rs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let oracle = rs.iter().all(|z| z.re < 1e-9 * norm);
        assert_eq!(v.stable, oracle, "{q:?} margin {} roots {rs:?}", v.margin);
        unstable += usize::from(!oracle);
    }
    assert!(unstable > 100 && unstable < 900);
}

/// (s² + p²)(s² + a·s + b) with a, b > 0.
fn marginal_quartic(p: f64, a: f64, b: f64) -> Quartic {
    let d = &Polynomial::new(vec![p * p, 0.0, 1.0]) * &Polynomial::new(vec![b, a, 1.0]);
    Quartic::from_poly(&d).unwrap()
}

#[test]
fn axis_pole_matches_root_oracle() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..300 {
        let p = 10f64.powf(rng.gen_range(-1.0..1.0));
        let q = marginal_quartic(p, 10f64.powf(rng.gen_range(-1.0..1.0)), 10f64.powf(rng.gen_range(-1.0..1.0)));
        let w = imaginary_axis_pole(&q, 1e-9).expect("constructed on the boundary");
        assert!((w - p).abs() <= 1e-6 * p, "{w} vs {p}");
        let rs = quartic_roots(&q);
        let near: Vec<_> = rs.iter().filter(|z| (*z - Complex64::new(0.0, w)).norm() <= 1e-6 * w.max(1.0)).collect();
        assert_eq!(near.len(), 1, "simple root at jp");
    }
}

#[test]
fn residue_test_agrees_with_numeric_residue() {
    let mut rng = StdRng::seed_from_u64(13);
    let mut positive = 0;
    for i in 0..500 {
        let p = 10f64.powf(rng.gen_range(-0.5..0.5));
        let den = marginal_quartic(p, rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
        let dp = den.to_poly();
        let s0 = Complex64::new(0.0, p);
        let (b3, b2) = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        // half the cases have a real residue by construction, with either sign
        let target = if i % 2 == 0 {
            let c = if rng.gen_bool(0.5) { 1.0 } else { -1.0 } * rng.gen_range(0.1..3.0);
            c * dp.derivative().eval_complex(s0) / s0
        } else {
            Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        };
        let b0 = target.re + b2 * p * p;
        let b1 = target.im / p + b3 * p * p;
        let num = CubicCofactor::new(b3, b2, b1, b0);
        let r = residue_at(&num.numerator(), &dp, s0);
        let verdict = residues_positive_real(&num, &den, 1e-9).unwrap();
        let oracle = r.re > 0.0 && r.im.abs() <= 1e-6 * r.norm();
        assert_eq!(verdict, oracle, "case {i}: residue {r}");
        positive += usize::from(verdict);
    }
    assert!(positive > 50);
}

#[test]
fn lossless_oscillator_residue() {
    // s/(s² + 1) written over (s² + 1)(s² + 2s + 1): num = s(s² + 2s + 1)
    let den = Quartic::new(1.0, 2.0, 2.0, 2.0, 1.0);
    let num = CubicCofactor::new(0.0, 1.0, 2.0, 1.0);
    assert!(residues_positive_real(&num, &den, 1e-9).unwrap());
    let r = residue_at(&num.numerator(), &den.to_poly(), Complex64::new(0.0, 1.0));
    assert!((r - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    // a1b3 − a3b1 = +1 gives a negative residue
    let num = CubicCofactor::new(1.5, 0.0, 1.0, 0.0);
    assert_eq!(2.0 * 1.5 - 2.0 * 1.0, 1.0);
    assert!(!residues_positive_real(&num, &den, 1e-9).unwrap());
    let r = residue_at(&num.numerator(), &den.to_poly(), Complex64::new(0.0, 1.0));
    assert!(r.re <= 0.0 || r.im.abs() > 1e-6 * r.norm());
    assert_eq!(
        residues_positive_real(&num, &Quartic::new(1.0, 2.0, 3.0, 2.0, 1.0), 1e-9),
        Err(Error::NoImaginaryPole)
    );
}

fn rf(n: &[f64], d: &[f64]) -> RationalFunction {
    RationalFunction::new(Polynomial::new(n.to_vec()), Polynomial::new(d.to_vec())).unwrap()
}

#[test]
fn positive_real_examples() {
    let tol = Tolerances::default();
    assert!(positive_real(&rf(&[0.0, 1.0], &[1.0]), &tol).unwrap().passive());
    let v = positive_real(&rf(&[1.0], &[-1.0, 1.0]), &tol).unwrap();
    assert!(!v.stable && !v.passive());
    let v = positive_real(&rf(&[-1.0, 1.0], &[1.0, 1.0]), &tol).unwrap();
    assert!(!v.passive());
    assert_eq!(v.witness_frequency, Some(0.0));
    assert!((rf(&[-1.0, 1.0], &[1.0, 1.0]).eval_jw(0.0).unwrap().re + 1.0).abs() < 1e-15);
}

#[test]
fn degree_five_denominator_uses_generic_route() {
    // (s + 1)(s² + 1)(s² + s + 1): lossless pair at ω = 1
    let d = &Polynomial::from_roots(&[-1.0]) * &(&Polynomial::new(vec![1.0, 0.0, 1.0]) * &Polynomial::new(vec![1.0, 1.0, 1.0]));
    let a = axis_analysis(&sdea_core::poly::to_exact(&d).unwrap()).unwrap();
    assert!(a.rhp_free && a.axis_simple);
    assert_eq!(a.axis_poles.len(), 1);
    assert!((a.axis_poles[0] - 1.0).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn positive_real_is_scale_invariant(
        n in prop::collection::vec(-5.0f64..5.0, 1..4),
        d in prop::collection::vec(0.1f64..5.0, 2..5),
        c in 0.01f64..100.0,
    ) {
        let tol = Tolerances::default();
        let z = rf(&n, &d);
        prop_assume!(!z.num().is_zero());
        let scaled = RationalFunction::new(z.num().scale(&c), z.den().clone()).unwrap();
        let a = positive_real(&z, &tol).unwrap();
        let b = positive_real(&scaled, &tol).unwrap();
        prop_assert_eq!(a.passive(), b.passive());
        prop_assert_eq!(a.stable, b.stable);
        prop_assert_eq!(a.real_part_nonneg, b.real_part_nonneg);
    }

    #[test]
    fn real_part_verdict_matches_sampling(
        n in prop::collection::vec(-5.0f64..5.0, 1..4),
        d in prop::collection::vec(0.1f64..5.0, 2..5),
    ) {
        let tol = Tolerances::default();
        let z = rf(&n, &d);
        prop_assume!(!z.num().is_zero());
        let v = positive_real(&z, &tol).unwrap();
        let mut min = f64::INFINITY;
        for i in 0..2000 {
            let w = 10f64.powf(-3.0 + 6.0 * i as f64 / 1999.0);
            if let Ok(h) = z.eval_jw(w) {
                min = min.min(h.re / h.norm().max(1e-300));
            }
        }
        if min < -1e-6 {
            prop_assert!(!v.real_part_nonneg);
        }
        if let Some(w) = v.witness_frequency {
            let h = z.eval_jw(w).unwrap();
            prop_assert!(h.re <= 1e-9 * h.norm());
        }
    }
}
