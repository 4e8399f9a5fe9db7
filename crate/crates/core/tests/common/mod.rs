#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use sdea_core::model::SystemParams;
use sdea_core::poly::Polynomial;

/// Roots from the eigenvalues of the companion matrix.
pub fn roots(p: &Polynomial) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let c = p.coeffs();
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().map(|z| Complex64::new(z.re, z.im)).collect()
}

/// Dense evaluation of p on a log grid over (0, ∞) plus x = 0.
pub fn sampled_min(p: &Polynomial, points: usize, lo: f64, hi: f64) -> (f64, f64) {
    let mut worst = (p.eval(&0.0), 0.0);
    for i in 0..points {
        let x = 10f64.powf(lo + (hi - lo) * i as f64 / (points - 1) as f64);
        let v = p.eval(&x);
        if v < worst.0 {
            worst = (v, x);
        }
    }
    worst
}

pub fn log_uniform<R: Rng>(rng: &mut R, centre: f64, decades: f64) -> f64 {
    centre * 10f64.powf(rng.gen_range(-decades..decades))
}

/// A plant around the nominal bench values, each parameter perturbed log-uniformly.
pub fn random_plant<R: Rng>(rng: &mut R) -> SystemParams {
    let t = SystemParams::nominal();
    SystemParams {
        k_f: log_uniform(rng, t.k_f, 0.5),
        b_f: log_uniform(rng, t.b_f, 0.5),
        m: log_uniform(rng, t.m, 0.5),
        b: log_uniform(rng, t.b, 0.5),
        p_m: log_uniform(rng, t.p_m, 0.5),
        i_m: log_uniform(rng, t.i_m, 0.5),
        p_f: log_uniform(rng, t.p_f, 0.5),
        i_f: log_uniform(rng, t.i_f, 0.5),
        alpha: rng.gen_range(0.0..=1.0),
    }
}
