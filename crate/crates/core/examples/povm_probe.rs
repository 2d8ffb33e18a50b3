//! Scratch probe: POVM branch orderings vs the Δ(γ) fit. Not part of the
//! deliverable surface; run with `cargo run --example povm_probe`.

use petzrec::channels::{amplitude_damping, KrausChannel};
use petzrec::codes::leung_code;
use petzrec::petz::{construct_code_petz, worst_case_fidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted, quadratic_fit};

fn order_by_weight_desc() -> Vec<usize> {
    // weight-4, weight-3, weight-2, weight-1 measured; dominant residual.
    let mut idx: Vec<usize> = (1..16).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse((i as u32).count_ones() as usize * 100 - i));
    let mut v: Vec<usize> = idx
        .iter()
        .map(|&i| i)
        .collect();
    v.push(0);
    v
}

fn order_by_weight_asc() -> Vec<usize> {
    let mut idx: Vec<usize> = (1..16).collect();
    idx.sort_by_key(|&i| ((i as u32).count_ones(), i));
    let mut v = idx;
    v.push(0);
    v
}

fn order_plain_desc() -> Vec<usize> {
    let mut v: Vec<usize> = (1..16).rev().collect();
    v.push(0);
    v
}

fn order_plain_asc() -> Vec<usize> {
    let mut v: Vec<usize> = (1..16).collect();
    v.push(0);
    v
}

fn main() {
    let code = leung_code();
    let dom_first_weight_asc: Vec<usize> = {
        let mut idx: Vec<usize> = (0..15).collect();
        idx.sort_by_key(|&i| ((i as u32).count_ones(), i));
        let mut v = idx;
        v.push(15);
        v
    };
    let dom_first_weight_desc: Vec<usize> = {
        let mut idx: Vec<usize> = (1..15).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(((i as u32).count_ones(), std::cmp::Reverse(i))));
        let mut v = vec![0usize];
        v.extend(idx);
        v.push(15);
        v
    };
    let cases: Vec<(&str, Vec<usize>)> = vec![
        ("weight-desc (4,3,2,1|0)", order_by_weight_desc()),
        ("weight-asc (1,2,3,4|0)", order_by_weight_asc()),
        ("index-desc (15..1|0)", order_plain_desc()),
        ("index-asc (1..15|0)", order_plain_asc()),
        ("dom-first weight-asc (0,1,2,3|15)", dom_first_weight_asc),
        ("dom-first weight-desc (0,3,2,1|15)", dom_first_weight_desc),
    ];
    for (name, order) in cases {
        let mut curve = Vec::new();
        for i in 0..=15 {
            let gamma = 0.02 * i as f64;
            let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
            let petz = construct_code_petz(&code, &noise).unwrap();
            let exact = petz.composite_with_noise();
            let (f2_exact, _) = worst_case_fidelity(&code, &exact).unwrap();
            let completed = petz.tp_completed_channel().unwrap();
            let full_order: Vec<usize> = if completed.kraus.len() > 16 {
                // completion Kraus measured first (it annihilates code states)
                std::iter::once(16)
                    .chain(order.iter().copied())
                    .collect()
            } else {
                order.clone()
            };
            let seq = build_povm_sequence_permuted(&completed, &full_order).unwrap();
            let approx: KrausChannel = approx_channel(&seq).unwrap().compose(&noise).unwrap();
            let (f2_approx, _) = worst_case_fidelity(&code, &approx).unwrap();
            curve.push((gamma, (f2_approx - f2_exact).abs()));
        }
        let fit = quadratic_fit(&curve).unwrap();
        print!("{name}: ");
        for (_, d) in curve.iter().step_by(3) {
            print!("{d:.5} ");
        }
        println!(
            "| a={:.4} b={:.2e} c={:.2e} R2={:.4}",
            fit.a, fit.b, fit.c, fit.r_squared
        );
    }
}
