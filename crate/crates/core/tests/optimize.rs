use sdea_core::model::{SystemParams, VirtualCoupler};
use sdea_core::optimize::{maximize_k22, maximize_k22_over_alpha, Criterion};
use sdea_core::passivity::{absolute_stability_exact, check_condition_c_ii, k22_upper_bound_or_zero};

#[test]
fn passivity_optimum_beats_every_sampled_damping() {
    let p = SystemParams::nominal();
    let r = maximize_k22(&p, Criterion::TwoPortPassivity).unwrap();
    assert!(r.guard_ok);
    for i in 1..=40 {
        let b22 = 0.2 * i as f64 / 40.0;
        assert!(k22_upper_bound_or_zero(&p, b22).unwrap() <= r.k22_max + 1e-3, "b22 {b22}");
    }
    assert!(check_condition_c_ii(&p, &VirtualCoupler::new(r.k22_max, r.b22_opt)).unwrap().pass);
    assert!(r.trace.iter().all(|t| t.2 <= r.k22_max));
}

#[test]
fn joint_optimum_dominates_fixed_feed_forward() {
    let p = SystemParams::nominal();
    let joint = maximize_k22_over_alpha(&p, Criterion::TwoPortPassivity).unwrap();
    let alpha = joint.alpha_opt.unwrap();
    assert!((0.0..=1.0).contains(&alpha));
    for a in [0.0, 0.5, 1.0] {
        let r = maximize_k22(&p.with_alpha(a), Criterion::TwoPortPassivity).unwrap();
        assert!(joint.k22_max >= r.k22_max - 1e-3, "alpha {a}: {} > {}", r.k22_max, joint.k22_max);
    }
}

#[test]
fn absolute_optimum_is_exactly_verified_and_above_passivity() {
    let p = SystemParams::nominal();
    let pass = maximize_k22(&p, Criterion::TwoPortPassivity).unwrap();
    let abs = maximize_k22(&p, Criterion::AbsoluteStability).unwrap();
    assert!(abs.k22_max >= pass.k22_max - 1e-3, "{} < {}", abs.k22_max, pass.k22_max);
    assert!(absolute_stability_exact(&p, &VirtualCoupler::new(abs.k22_max, abs.b22_opt)).unwrap());
    assert!(!absolute_stability_exact(&p, &VirtualCoupler::new(abs.k22_max + 0.01, abs.b22_opt)).unwrap());
}
