//! Scratch probe: exhaustive group-order search for the POVM branch
//! sequence. Run with `cargo run --example povm_probe3`.

use petzrec::channels::amplitude_damping;
use petzrec::codes::leung_code;
use petzrec::petz::{construct_code_petz, worst_case_fidelity};
use petzrec::povm_synth::{approx_channel, build_povm_sequence_permuted, quadratic_fit};

fn weight_groups() -> Vec<Vec<usize>> {
    // group g = indices with g one-bits (error weight), ascending index
    (0..=4usize)
        .map(|w| (0..16usize).filter(|i| i.count_ones() as usize == w).collect())
        .collect()
}

fn delta_for_order(code: &petzrec::codes::QuantumCode, order: &[usize], gamma: f64) -> f64 {
    let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
    let petz = construct_code_petz(code, &noise).unwrap();
    let exact = petz.composite_with_noise();
    let (f2_exact, _) = worst_case_fidelity(code, &exact).unwrap();
    let completed = petz.tp_completed_channel().unwrap();
    let seq = build_povm_sequence_permuted(&completed, order).unwrap();
    let approx = approx_channel(&seq).unwrap().compose(&noise).unwrap();
    let (f2_approx, _) = worst_case_fidelity(code, &approx).unwrap();
    (f2_approx - f2_exact).abs()
}

fn main() {
    let code = leung_code();
    let groups = weight_groups();
    let paper = [0.001375, 0.003026, 0.005926]; // fit at γ = 0.1, 0.2, 0.3

    // All permutations of the five weight groups; residual = last element.
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut idxs = [0usize, 1, 2, 3, 4];
    permute(&mut idxs, 0, &mut perms);

    let mut scored: Vec<(f64, Vec<usize>, [f64; 3])> = Vec::new();
    for perm in &perms {
        let order: Vec<usize> = perm.iter().flat_map(|&g| groups[g].clone()).collect();
        let d: Vec<f64> = [0.1, 0.2, 0.3]
            .iter()
            .map(|&g| delta_for_order(&code, &order, g))
            .collect();
        let score: f64 = d
            .iter()
            .zip(&paper)
            .map(|(&m, &p)| ((m.max(1e-9) / p).ln()).abs())
            .sum();
        scored.push((score, perm.to_vec(), [d[0], d[1], d[2]]));
    }
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    println!("paper targets: {paper:?}");
    for (score, perm, d) in scored.iter().take(10) {
        println!("groups {perm:?}: Δ = {d:?}  score {score:.3}");
    }

    // Full curve + fit for the best three.
    for (_, perm, _) in scored.iter().take(3) {
        let order: Vec<usize> = perm.iter().flat_map(|&g| groups[g].clone()).collect();
        let curve: Vec<(f64, f64)> = (0..=15)
            .map(|i| {
                let g = 0.02 * i as f64;
                (g, delta_for_order(&code, &order, g))
            })
            .collect();
        let fit = quadratic_fit(&curve).unwrap();
        print!("groups {perm:?}: ");
        for (_, d) in curve.iter() {
            print!("{d:.5} ");
        }
        println!(
            "\n  fit a={:.4} b={:.2e} c={:.2e} R2={:.4}",
            fit.a, fit.b, fit.c, fit.r_squared
        );
    }
}

fn permute(arr: &mut [usize; 5], k: usize, out: &mut Vec<Vec<usize>>) {
    if k == arr.len() {
        out.push(arr.to_vec());
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, out);
        arr.swap(k, i);
    }
}
