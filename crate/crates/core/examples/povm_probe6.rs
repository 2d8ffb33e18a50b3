//! Scratch probe: Δ(γ) with the codespace scan restricted to the real
//! (φ = 0) state family. Run with `cargo run --example povm_probe6`.

use petzrec::channels::amplitude_damping;
use petzrec::codes::leung_code;
use petzrec::petz::{construct_code_petz, CodespaceFidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted, quadratic_fit};

fn min_theta_only(eval: &CodespaceFidelity) -> f64 {
    let pi = std::f64::consts::PI;
    let mut best = (f64::INFINITY, 0.0f64);
    for i in 0..1024 {
        let t = pi * i as f64 / 1023.0;
        let v = eval.eval(t, 0.0);
        if v < best.0 {
            best = (v, t);
        }
    }
    // golden-section style refinement
    let (mut f2, mut theta) = best;
    let mut step = pi / 1023.0;
    for _ in 0..200 {
        let mut improved = false;
        for dt in [step, -step] {
            let t = (theta + dt).clamp(0.0, pi);
            let v = eval.eval(t, 0.0);
            if v < f2 {
                f2 = v;
                theta = t;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    f2
}

fn main() {
    let code = leung_code();
    let groups: Vec<Vec<usize>> = (0..=4usize)
        .map(|w| (0..16usize).filter(|i| i.count_ones() as usize == w).collect())
        .collect();
    let orders: Vec<(&str, Vec<usize>)> = vec![
        (
            "w1,w2,w3,w0 | w4 (phi=0 scan)",
            [&groups[1][..], &groups[2][..], &groups[3][..], &groups[0][..], &groups[4][..]]
                .concat(),
        ),
        ("enum 0..15 (phi=0 scan)", (0..16).collect()),
        (
            "w4,w3,w2,w1 | w0 (phi=0 scan)",
            [&groups[4][..], &groups[3][..], &groups[2][..], &groups[1][..], &groups[0][..]]
                .concat(),
        ),
    ];
    for (name, order) in orders {
        let mut curve = Vec::new();
        for i in 0..=15 {
            let gamma = 0.02 * i as f64;
            let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
            let petz = construct_code_petz(&code, &noise).unwrap();
            let exact = petz.composite_with_noise();
            let eval_e = CodespaceFidelity::new(&code, &exact).unwrap();
            let completed = petz.tp_completed_channel().unwrap();
            let seq = build_povm_sequence_permuted(&completed, &order).unwrap();
            let approx = approx_channel(&seq).unwrap().compose(&noise).unwrap();
            let eval_a = CodespaceFidelity::new(&code, &approx).unwrap();
            curve.push((gamma, (min_theta_only(&eval_a) - min_theta_only(&eval_e)).abs()));
        }
        let fit = quadratic_fit(&curve).unwrap();
        print!("{name}:\n  ");
        for (_, d) in curve.iter() {
            print!("{d:.5} ");
        }
        println!(
            "\n  fit a={:.4} b={:.2e} c={:.2e} R2={:.4}",
            fit.a, fit.b, fit.c, fit.r_squared
        );
    }
}
