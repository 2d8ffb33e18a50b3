//! Scratch probe: validate the worst-case minimizer on the approximate map
//! against a dense grid. Run with `cargo run --example povm_probe4`.

use petzrec::channels::amplitude_damping;
use petzrec::codes::leung_code;
use petzrec::petz::{construct_code_petz, worst_case_fidelity, CodespaceFidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted};

fn main() {
    let code = leung_code();
    let order: Vec<usize> = (0..16).collect();
    for gamma in [0.2f64, 0.24, 0.28, 0.30] {
        let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
        let petz = construct_code_petz(&code, &noise).unwrap();
        let exact = petz.composite_with_noise();
        let completed = petz.tp_completed_channel().unwrap();
        let seq = build_povm_sequence_permuted(&completed, &order).unwrap();
        let approx = approx_channel(&seq).unwrap().compose(&noise).unwrap();

        let (f2_a, _) = worst_case_fidelity(&code, &approx).unwrap();
        let (f2_e, _) = worst_case_fidelity(&code, &exact).unwrap();
        let eval_a = CodespaceFidelity::new(&code, &approx).unwrap();
        let eval_e = CodespaceFidelity::new(&code, &exact).unwrap();
        let pi = std::f64::consts::PI;
        let mut brute_a = (f64::INFINITY, 0.0, 0.0);
        let mut brute_e = f64::INFINITY;
        for i in 0..512 {
            let t = pi * i as f64 / 511.0;
            for j in 0..512 {
                let p = 2.0 * pi * j as f64 / 512.0;
                let v = eval_a.eval(t, p);
                if v < brute_a.0 {
                    brute_a = (v, t, p);
                }
                brute_e = brute_e.min(eval_e.eval(t, p));
            }
        }
        println!(
            "g={gamma}: approx min={f2_a:.8} brute={:.8} (θ={:.3},φ={:.3}) | exact min={f2_e:.8} brute={brute_e:.8}",
            brute_a.0, brute_a.1, brute_a.2
        );
    }
}
