//! Scratch probe: enum-order POVM — operator-norm envelope at ψ=|1⟩ and
//! pointwise deficit vs Δ. Run with `cargo run --example povm_probe7`.

use petzrec::channels::amplitude_damping;
use petzrec::codes::{encode, leung_code};
use petzrec::linalg::{basis_vector, op_distance, projector};
use petzrec::petz::{construct_code_petz, CodespaceFidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted, execute_povm};

fn main() {
    let code = leung_code();
    for gamma in [0.1f64, 0.2, 0.3] {
        let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
        let petz = construct_code_petz(&code, &noise).unwrap();
        let completed = petz.tp_completed_channel().unwrap();
        let order: Vec<usize> = (0..completed.kraus.len()).collect();
        let seq = build_povm_sequence_permuted(&completed, &order).unwrap();

        let psi_en = encode(&code, &basis_vector(2, 1)).unwrap();
        let rho_noisy = noise.apply(&projector(&psi_en)).unwrap();
        let exact_out = petz.apply(&rho_noisy).unwrap();
        let approx_out = execute_povm(&seq, &rho_noisy).unwrap();
        let dist = op_distance(&exact_out, &approx_out);
        let envelope = 0.05 * gamma * gamma + 0.01 * gamma;

        // Pointwise fidelity deficit on the φ=0 θ-grid vs Δ.
        let exact_ch = petz.composite_with_noise();
        let approx_ch = approx_channel(&seq).unwrap().compose(&noise).unwrap();
        let ev_e = CodespaceFidelity::new(&code, &exact_ch).unwrap();
        let ev_a = CodespaceFidelity::new(&code, &approx_ch).unwrap();
        let pi = std::f64::consts::PI;
        let mut max_deficit: f64 = 0.0;
        let mut min_e = f64::INFINITY;
        let mut min_a = f64::INFINITY;
        for i in 0..512 {
            let t = pi * i as f64 / 511.0;
            let fe = ev_e.eval(t, 0.0);
            let fa = ev_a.eval(t, 0.0);
            max_deficit = max_deficit.max(fe - fa);
            min_e = min_e.min(fe);
            min_a = min_a.min(fa);
        }
        let delta = (min_a - min_e).abs();
        let deficit_at_one = ev_e.eval(pi, 0.0) - ev_a.eval(pi, 0.0);
        println!(
            "g={gamma}: |exact-approx|_op={dist:.5} (envelope {envelope:.5}) max_deficit={max_deficit:.5} deficit@|1>={deficit_at_one:.6} Δ={delta:.5}"
        );
    }
}
