mod common;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sdea_core::model::{hybrid_matrix, HybridMatrix, SystemParams, VirtualCoupler};
use sdea_core::passivity::check_two_port_passivity;
use sdea_core::perf::{
    frequency_response, spring_reference, transmitted_impedance, transparency_limits, voigt_reference, z_min,
    z_width, EnvironmentModel,
};
use sdea_core::stability::positive_real;
use sdea_core::tol::Tolerances;

fn h(k22: f64, b22: f64) -> HybridMatrix {
    hybrid_matrix(&SystemParams::nominal(), &VirtualCoupler::new(k22, b22)).unwrap()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64)).collect()
}

/// The expanded width over s·D(s), coefficient by coefficient.
fn printed_width(p: &SystemParams, k22: f64, b22: f64, s: Complex64) -> Complex64 {
    let pp = p.p_m * p.p_f;
    let mu = p.i_m / p.p_m;
    let nu = p.i_f / p.p_f;
    let c = sdea_core::model::plant_coefficients(p).unwrap();
    let u = p.b_f * (mu + nu) + p.k_f;
    let v = p.k_f * pp * (mu + nu) + p.b_f * p.i_m * p.i_f;
    let a0 = p.k_f * p.i_m * p.i_f;
    let num = [
        k22 * a0,
        k22 * v + b22 * a0,
        k22 * pp * u + b22 * v,
        b22 * pp * u + k22 * p.b_f * pp,
        b22 * p.b_f * pp,
    ];
    let den = [0.0, c.a0, c.a1, c.a2, c.a3, c.a4];
    let ev = |cs: &[f64]| cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * s + a);
    ev(&num) / ev(&den)
}

#[test]
fn width_matches_printed_expansion() {
    let p = SystemParams::nominal();
    for (k22, b22) in [(408.0, 0.17), (100.0, 0.05), (0.0, 0.1)] {
        let zw = z_width(&h(k22, b22)).unwrap();
        for w in log_grid(-3.0, 6.0, 50) {
            let got = zw.eval_jw(w).unwrap();
            let want = printed_width(&p, k22, b22, Complex64::new(0.0, w));
            assert!((got - want).norm() <= 1e-9 * want.norm(), "({k22}, {b22}) at {w}: {got} vs {want}");
        }
    }
}

#[test]
fn minimum_impedance_limits() {
    let zm = z_min(&h(408.0, 0.17));
    assert!(zm.eval_jw(1e-6).unwrap().norm() < 1e-6);
    assert!((zm.eval_jw(1e7).unwrap() - 0.05).norm() / 0.05 < 1e-3);
    let zw = z_width(&h(408.0, 0.17)).unwrap();
    assert!(zw.eval_jw(1e7).unwrap().norm() < 1e-3);
}

#[test]
fn width_stiffness_is_coupler_stiffness() {
    for k22 in [50.0, 200.0, 408.0] {
        let zw = z_width(&h(k22, 0.17)).unwrap();
        let w = 1e-4;
        let k = (zw.eval_jw(w).unwrap() * Complex64::new(0.0, w)).norm();
        assert!((k - k22).abs() / k22 < 1e-3, "{k} vs {k22}");
    }
}

#[test]
fn null_environment_gives_minimum_impedance() {
    let hm = h(300.0, 0.1);
    let z = transmitted_impedance(&hm, &EnvironmentModel::Null).unwrap();
    for w in log_grid(-3.0, 6.0, 40) {
        let a = z.eval_jw(w).unwrap();
        let b = z_min(&hm).eval_jw(w).unwrap();
        assert!((a - b).norm() <= 1e-9 * b.norm().max(1e-12));
    }
}

#[test]
fn transmitted_impedance_matches_direct_composition() {
    let hm = h(300.0, 0.1);
    let env = EnvironmentModel::Voigt { ke: 1500.0, be: 2.0 };
    let z = transmitted_impedance(&hm, &env).unwrap();
    for w in log_grid(-2.0, 5.0, 30) {
        let s = Complex64::new(0.0, w);
        let ze = 1500.0 / s + 2.0;
        let [h11, h12, h21, h22] =
            [&hm.h11, &hm.h12, &hm.h21, &hm.h22].map(|r| r.eval_jw(w).unwrap());
        let want = (h11 + (h11 * h22 - h12 * h21) * ze) / (1.0 + h22 * ze);
        let got = z.eval_jw(w).unwrap();
        assert!((got - want).norm() <= 1e-8 * want.norm(), "{w}");
    }
}

#[test]
fn rendered_spring_within_two_percent() {
    for kd in [50.0, 150.0, 300.0] {
        let ke = spring_reference(408.0, kd).unwrap();
        let z = transmitted_impedance(&h(408.0, 0.17), &EnvironmentModel::Spring { ke }).unwrap();
        let w = 1e-3;
        let k = (z.eval_jw(w).unwrap() * Complex64::new(0.0, w)).norm();
        assert!((k - kd).abs() / kd < 0.02, "{k} vs {kd}");
    }
    let be = voigt_reference(0.17, 0.05).unwrap();
    assert!((0.17 * be / (0.17 + be) - 0.05).abs() < 1e-12);
}

#[test]
fn passive_two_port_with_passive_environment_is_positive_real() {
    let p = SystemParams::nominal();
    let tol = Tolerances::default();
    let mut rng = StdRng::seed_from_u64(51);
    let mut checked = 0;
    while checked < 12 {
        let vc = VirtualCoupler::new(rng.gen_range(10.0..400.0), rng.gen_range(0.05..0.19));
        if !check_two_port_passivity(&p, &vc, &tol).unwrap().overall {
            continue;
        }
        let env = match checked % 3 {
            0 => EnvironmentModel::Spring { ke: rng.gen_range(1.0..5000.0) },
            1 => EnvironmentModel::Damper { be: rng.gen_range(0.01..10.0) },
            _ => EnvironmentModel::Voigt { ke: rng.gen_range(1.0..5000.0), be: rng.gen_range(0.01..10.0) },
        };
        let z = transmitted_impedance(&hybrid_matrix(&p, &vc).unwrap(), &env).unwrap();
        let v = positive_real(&z, &tol).unwrap();
        assert!(v.passive(), "{vc:?} {env:?}: {v:?}");
        checked += 1;
    }
}

#[test]
fn band_edge_limits() {
    let l = transparency_limits(&h(408.0, 0.17), 0.05, 0.17).unwrap();
    assert!(l.low_converged && l.high_converged);
    assert_eq!((l.omega_low, l.omega_high), (1e-4, 1e7));
}

#[test]
fn bode_of_transmitted_impedance_is_finite() {
    let z = transmitted_impedance(&h(408.0, 0.17), &EnvironmentModel::Spring { ke: 1000.0 }).unwrap();
    let b = frequency_response(&z, &log_grid(-3.0, 6.0, 400)).unwrap();
    assert!(b.iter().all(|p| p.magnitude_db.is_finite() && p.phase_deg.is_finite()));
    // spring-like at low frequency: −20 dB/decade
    let slope = b[10].magnitude_db - b[0].magnitude_db;
    let decades = (b[10].omega / b[0].omega).log10();
    assert!((slope / decades + 20.0).abs() < 0.5, "{}", slope / decades);
}
