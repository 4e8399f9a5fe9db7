use std::time::Instant;

use sdea_core::model::SystemParams;
use sdea_core::optimize::{maximize_k22, maximize_k22_over_alpha, Criterion};

fn main() {
    let p = SystemParams::nominal();
    for (name, alpha) in [("alpha = 1", 1.0), ("alpha = 0", 0.0)] {
        let t = Instant::now();
        let r = maximize_k22(&p.with_alpha(alpha), Criterion::TwoPortPassivity).unwrap();
        println!("{name}: k22 = {:.1} at b22 = {:.3} ({:.2?})", r.k22_max, r.b22_opt, t.elapsed());
    }
    let t = Instant::now();
    let r = maximize_k22_over_alpha(&p, Criterion::TwoPortPassivity).unwrap();
    println!(
        "best alpha: k22 = {:.1} at b22 = {:.3}, alpha = {:.3} ({:.2?})",
        r.k22_max,
        r.b22_opt,
        r.alpha_opt.unwrap(),
        t.elapsed()
    );
    let t = Instant::now();
    let r = maximize_k22(&p, Criterion::AbsoluteStability).unwrap();
    println!("absolute stability: k22 = {:.1} at b22 = {:.3} ({:.2?})", r.k22_max, r.b22_opt, t.elapsed());
}
