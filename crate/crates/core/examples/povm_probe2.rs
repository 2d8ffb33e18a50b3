//! Scratch probe: argmin location of worst-case fidelity for the POVM
//! approximation. Run with `cargo run --example povm_probe2`.

use petzrec::channels::amplitude_damping;
use petzrec::codes::leung_code;
use petzrec::petz::{construct_code_petz, worst_case_fidelity, CodespaceFidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted};

fn main() {
    let code = leung_code();
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..15).collect();
        idx.sort_by_key(|&i| ((i as u32).count_ones(), i));
        let mut v = idx;
        v.push(15);
        v
    };
    println!("order = {order:?}");
    for i in 0..=12 {
        let gamma = 0.18 + 0.01 * i as f64;
        let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
        let petz = construct_code_petz(&code, &noise).unwrap();
        let exact = petz.composite_with_noise();
        let (f2_exact, arg_e) = worst_case_fidelity(&code, &exact).unwrap();
        let completed = petz.tp_completed_channel().unwrap();
        let seq = build_povm_sequence_permuted(&completed, &order).unwrap();
        let approx = approx_channel(&seq).unwrap().compose(&noise).unwrap();
        let (f2_approx, arg_a) = worst_case_fidelity(&code, &approx).unwrap();

        // Rough argmin angles from the encoded states: overlap with |1_L>.
        let w1 = &code.codewords[1];
        let t_e = 2.0 * (arg_e.dotc(w1).norm()).asin();
        let t_a = 2.0 * (arg_a.dotc(w1).norm()).asin();
        // Fidelity of approx at the EXACT argmin, for comparison.
        let eval_a = CodespaceFidelity::new(&code, &approx).unwrap();
        let theta_e_angle = t_e;
        let f2_a_at_e = eval_a.eval(theta_e_angle, 0.0);
        println!(
            "g={gamma:.2} exact={f2_exact:.6} (θ≈{t_e:.3}) approx={f2_approx:.6} (θ≈{t_a:.3}) approx@θE(φ0)={f2_a_at_e:.6} Δ={:.6}",
            (f2_approx - f2_exact).abs()
        );
    }
}
