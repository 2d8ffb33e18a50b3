//! Scratch probe: residual-branch sweep, checking every POVM-related gate
//! at once. Run with `cargo run --example povm_probe8`.

use petzrec::channels::amplitude_damping;
use petzrec::codes::{encode, leung_code};
use petzrec::linalg::{basis_vector, op_distance, projector};
use petzrec::petz::{construct_code_petz, CodespaceFidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted, execute_povm, quadratic_fit};

fn phi0_min(eval: &CodespaceFidelity) -> f64 {
    let pi = std::f64::consts::PI;
    let mut best = f64::INFINITY;
    for i in 0..1024 {
        let t = pi * i as f64 / 1023.0;
        best = best.min(eval.eval(t, 0.0));
    }
    best
}

fn main() {
    let code = leung_code();
    for residual in 0..16usize {
        let order: Vec<usize> = (0..16).filter(|&i| i != residual).chain([residual]).collect();
        let mut curve = Vec::new();
        let mut ok = true;
        let mut deficit_at_one_02 = 0.0;
        let mut env_ratio_02 = 0.0;
        for i in 0..=15 {
            let gamma = 0.02 * i as f64;
            let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
            let petz = construct_code_petz(&code, &noise).unwrap();
            let completed = petz.tp_completed_channel().unwrap();
            let full_order: Vec<usize> = if completed.kraus.len() > 16 {
                order.iter().copied().chain([16]).collect()
            } else {
                order.clone()
            };
            let seq = match build_povm_sequence_permuted(&completed, &full_order) {
                Ok(s) => s,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            let exact_ch = petz.composite_with_noise();
            let approx_ch = approx_channel(&seq).unwrap().compose(&noise).unwrap();
            let ev_e = CodespaceFidelity::new(&code, &exact_ch).unwrap();
            let ev_a = CodespaceFidelity::new(&code, &approx_ch).unwrap();
            curve.push((gamma, (phi0_min(&ev_a) - phi0_min(&ev_e)).abs()));
            if (gamma - 0.2).abs() < 1e-9 {
                let pi = std::f64::consts::PI;
                deficit_at_one_02 = ev_e.eval(pi, 0.0) - ev_a.eval(pi, 0.0);
                let psi_en = encode(&code, &basis_vector(2, 1)).unwrap();
                let rho_noisy = noise.apply(&projector(&psi_en)).unwrap();
                let d = op_distance(
                    &petz.apply(&rho_noisy).unwrap(),
                    &execute_povm(&seq, &rho_noisy).unwrap(),
                );
                env_ratio_02 = d / (0.05 * gamma * gamma + 0.01 * gamma);
            }
        }
        if !ok {
            println!("residual {residual}: build failed");
            continue;
        }
        let monotone = curve.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-6);
        let fit = quadratic_fit(&curve).unwrap();
        println!(
            "residual {residual:2}: a={:+.4} R2={:.4} mono={} Δ(0.3)={:.5} deficit@|1>(0.2)={:+.5} env_ratio={:.2}",
            fit.a, fit.r_squared, monotone, curve.last().unwrap().1, deficit_at_one_02, env_ratio_02
        );
    }
}
