//! Scratch probe: full Δ(γ) curves for candidate measured orders with the
//! weight-4 residual. Run with `cargo run --example povm_probe5`.

use petzrec::channels::amplitude_damping;
use petzrec::codes::leung_code;
use petzrec::petz::{construct_code_petz, worst_case_fidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted, quadratic_fit};

fn groups() -> Vec<Vec<usize>> {
    (0..=4usize)
        .map(|w| (0..16usize).filter(|i| i.count_ones() as usize == w).collect())
        .collect()
}

fn main() {
    let code = leung_code();
    let g = groups();
    let cases: Vec<(&str, Vec<usize>)> = vec![
        (
            "w1,w3,w2,w0 | w4",
            [&g[1][..], &g[3][..], &g[2][..], &g[0][..], &g[4][..]].concat(),
        ),
        (
            "w1,w2,w3,w0 | w4",
            [&g[1][..], &g[2][..], &g[3][..], &g[0][..], &g[4][..]].concat(),
        ),
        (
            "w3,w2,w1,w0 | w4",
            [&g[3][..], &g[2][..], &g[1][..], &g[0][..], &g[4][..]].concat(),
        ),
        (
            "w2,w1,w0,w3 | w4",
            [&g[2][..], &g[1][..], &g[0][..], &g[3][..], &g[4][..]].concat(),
        ),
        (
            "w4first: w4,w3,w2,w1 | w0-residual-last? no: measured w4..w1,0res",
            [&g[4][..], &g[3][..], &g[2][..], &g[1][..], &g[0][..]].concat(),
        ),
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
            let seq = build_povm_sequence_permuted(&completed, &order).unwrap();
            let approx = approx_channel(&seq).unwrap().compose(&noise).unwrap();
            let (f2_approx, _) = worst_case_fidelity(&code, &approx).unwrap();
            curve.push((gamma, (f2_approx - f2_exact).abs()));
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
