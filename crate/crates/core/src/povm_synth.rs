//! Approximate channel synthesis via polar decomposition and a sequence of
//! two-outcome POVMs, and the degree-of-approximation study.
//!
//! Kraus operators are sorted ascending by ‖K†K‖ and the dominant one
//! becomes the final (residual) branch: the measured branches then carry
//! small ‖K†K‖, which is what keeps the Taylor error quadratic, and for
//! rank-2 amplitude damping the construction is exact.

use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::codes::QuantumCode;
use crate::error::{Error, Result};
use crate::jsonio::{self, Pair};
use crate::linalg::{identity, op_distance, operator_norm, polar, psd_sqrt, CMatrix, C_ZERO};
use crate::petz::{construct_code_petz, worst_case_fidelity_real, PetzMap};
use crate::simulator::{CircuitOp, SynthesizedCircuit};

/// One measured branch of the sequence.
#[derive(Debug, Clone)]
pub struct PovmStep {
    /// The Kraus operator realized on outcome 0 (K = U_polar · P_blk).
    pub kraus: CMatrix,
    /// P = sqrt(K†K).
    pub p_blk: CMatrix,
    /// Q = sqrt(I − K†K), the continue branch.
    pub q_blk: CMatrix,
    /// Polar unitary of K, applied conditionally on the measured outcome.
    pub u_polar: CMatrix,
    /// The measurement unitary on (ancilla ⊗ system).
    pub u_m: CMatrix,
}

/// Ordered POVM steps plus the residual branch's polar unitary.
#[derive(Debug, Clone)]
pub struct PovmSequence {
    pub dim: usize,
    /// N−1 steps, ascending in ‖K†K‖.
    pub steps: Vec<PovmStep>,
    /// Polar unitary of the residual (largest-norm) Kraus operator.
    pub final_unitary: CMatrix,
    pub ancilla_count: usize,
}

/// Measured-branch ordering for the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchOrder {
    /// Ascending by the Kraus operators' own ‖K†K‖.
    AscendingNorm,
    /// Ascending by caller-supplied keys (sequence order follows the keys).
    Keyed,
}

/// Builds the POVM sequence of a trace-preserving channel. Exact-zero Kraus
/// operators are dropped.
pub fn build_povm_sequence(ch: &KrausChannel) -> Result<PovmSequence> {
    let keys: Vec<f64> = ch.kraus.iter().map(|k| operator_norm(k).powi(2)).collect();
    build_povm_sequence_keyed(ch, &keys)
}

/// As [`build_povm_sequence`] but with an explicit branch order: `order`
/// lists Kraus indices, measured branches first, residual last.
pub fn build_povm_sequence_permuted(ch: &KrausChannel, order: &[usize]) -> Result<PovmSequence> {
    let keys: Vec<f64> = {
        let mut k = vec![0.0f64; ch.kraus.len()];
        for (rank, &idx) in order.iter().enumerate() {
            if idx >= ch.kraus.len() {
                return Err(Error::InvalidArgument(format!("index {idx} out of range")));
            }
            k[idx] = rank as f64;
        }
        k
    };
    build_povm_sequence_keyed(ch, &keys)
}

/// As [`build_povm_sequence`] but with explicit sort keys (ascending, ties
/// by index); the largest-key Kraus becomes the residual branch.
pub fn build_povm_sequence_keyed(ch: &KrausChannel, keys: &[f64]) -> Result<PovmSequence> {
    if ch.trace_preservation_error() > 1e-9 {
        return Err(Error::Unsupported(
            "POVM sequencing needs a trace-preserving channel".into(),
        ));
    }
    if keys.len() != ch.kraus.len() {
        return Err(Error::InvalidArgument(
            "one sort key per Kraus operator required".into(),
        ));
    }
    let dim = ch.dim;
    let mut indexed: Vec<(f64, usize)> = ch
        .kraus
        .iter()
        .enumerate()
        .filter_map(|(i, k)| {
            if operator_norm(k) < 1e-14 {
                None
            } else {
                Some((keys[i], i))
            }
        })
        .collect();
    indexed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));

    let sorted: Vec<&CMatrix> = indexed.iter().map(|&(_, i)| &ch.kraus[i]).collect();
    let n = sorted.len();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    let mut q_prod = identity(dim);
    for k in &sorted[..n - 1] {
        let gram = k.adjoint() * *k;
        let p_blk = psd_sqrt(&gram)?;
        let q_blk = psd_sqrt(&(identity(dim) - &gram))?;
        let (u_polar, _) = polar(k)?;
        let u_m = if steps.is_empty() {
            measurement_unitary(&p_blk, &q_blk)
        } else {
            measurement_unitary_swapped(&p_blk, &q_blk)
        };
        q_prod = &q_blk * q_prod;
        steps.push(PovmStep {
            kraus: (*k).clone(),
            p_blk,
            q_blk,
            u_polar,
            u_m,
        });
    }
    // The residual branch carries the accumulated Q-product where the exact
    // channel would carry P_N = sqrt(K_N†K_N). The polar unitary of
    // K_N·(ΠQ)† is the unitary aligning the two (it minimizes
    // ‖U·ΠQ − K_N‖_F), and it is deterministic where polar(K_N) alone would
    // leave the completion on ker(P_N) arbitrary. When K_N has full rank the
    // two coincide.
    let (final_unitary, _) = polar(&(sorted[n - 1] * q_prod.adjoint()))?;
    Ok(PovmSequence {
        dim,
        steps,
        final_unitary,
        ancilla_count: 2,
    })
}

/// First-step measurement unitary [[P, −Q], [Q, P]] on (ancilla ⊗ system):
/// outcome 0 carries P, outcome 1 carries Q. Unitary because P and Q are
/// commuting functions of K†K with P² + Q² = I.
fn measurement_unitary(p: &CMatrix, q: &CMatrix) -> CMatrix {
    let d = p.nrows();
    let mut u = CMatrix::zeros(2 * d, 2 * d);
    u.view_mut((0, 0), (d, d)).copy_from(p);
    u.view_mut((0, d), (d, d)).copy_from(&(-q));
    u.view_mut((d, 0), (d, d)).copy_from(q);
    u.view_mut((d, d), (d, d)).copy_from(p);
    u
}

/// Later-step layout [[Q, −P], [P, Q]]: outcome 0 continues with Q, outcome
/// 1 exits through P.
fn measurement_unitary_swapped(p: &CMatrix, q: &CMatrix) -> CMatrix {
    let d = p.nrows();
    let mut u = CMatrix::zeros(2 * d, 2 * d);
    u.view_mut((0, 0), (d, d)).copy_from(q);
    u.view_mut((0, d), (d, d)).copy_from(&(-p));
    u.view_mut((d, 0), (d, d)).copy_from(p);
    u.view_mut((d, d), (d, d)).copy_from(q);
    u
}

/// Branch-tracking execution: out accumulates Kᵢ·residual·Kᵢ† while the
/// residual evolves as Qᵢ·residual·Qᵢ; the final residual receives the
/// polar unitary of the dominant Kraus operator.
pub fn execute_povm(seq: &PovmSequence, rho: &CMatrix) -> Result<CMatrix> {
    if rho.nrows() != seq.dim || rho.ncols() != seq.dim {
        return Err(Error::DimMismatch(format!(
            "state {}x{} vs sequence dim {}",
            rho.nrows(),
            rho.ncols(),
            seq.dim
        )));
    }
    let mut out = CMatrix::zeros(seq.dim, seq.dim);
    let mut residual = rho.clone();
    for step in &seq.steps {
        out += &step.kraus * &residual * step.kraus.adjoint();
        residual = &step.q_blk * residual * &step.q_blk;
    }
    out += &seq.final_unitary * residual * seq.final_unitary.adjoint();
    Ok(out)
}

/// The Kraus operators of the channel the sequence actually implements:
/// {K₁, K₂Q₁, K₃Q₂Q₁, …, U_f·Q_{N−1}…Q₁}. Exactly trace-preserving.
pub fn approx_kraus(seq: &PovmSequence) -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(seq.steps.len() + 1);
    let mut prefix = identity(seq.dim);
    for step in &seq.steps {
        out.push(&step.kraus * &prefix);
        prefix = &step.q_blk * prefix;
    }
    out.push(&seq.final_unitary * prefix);
    out
}

/// The implemented (approximate) channel.
pub fn approx_channel(seq: &PovmSequence) -> Result<KrausChannel> {
    KrausChannel::new(approx_kraus(seq), "povm-approx")
}

/// Two-ancilla circuit realizing the sequence on registers
/// (A1 = qubit 0, A2 = qubit 1, system = qubits 2…). A2 tags the still-alive
/// branch after the first step; exited branches carry A2 = 0 and A1 = 0.
pub fn povm_circuit(seq: &PovmSequence) -> Result<SynthesizedCircuit> {
    if !seq.dim.is_power_of_two() {
        return Err(Error::Unsupported(
            "circuit form needs a power-of-two system dimension".into(),
        ));
    }
    let n_sys = seq.dim.trailing_zeros() as usize;
    let sys: Vec<usize> = (2..2 + n_sys).collect();
    let a1_sys: Vec<usize> = std::iter::once(0).chain(sys.iter().copied()).collect();
    let mut circ = SynthesizedCircuit::new(2 + n_sys);
    let id = identity(seq.dim);
    let mut cnot = CMatrix::zeros(4, 4);
    cnot[(0, 0)] = crate::linalg::C_ONE;
    cnot[(1, 1)] = crate::linalg::C_ONE;
    cnot[(2, 3)] = crate::linalg::C_ONE;
    cnot[(3, 2)] = crate::linalg::C_ONE;

    for (i, step) in seq.steps.iter().enumerate() {
        if i == 0 {
            // U_M1 on (A1, system); outcome 0 = exit through U₁P₁.
            circ.push(CircuitOp::unitary(a1_sys.clone(), step.u_m.clone()));
            if op_distance(&step.u_polar, &id) > 1e-12 {
                circ.push(CircuitOp::controlled(
                    sys.clone(),
                    step.u_polar.clone(),
                    vec![(0, 0)],
                ));
            }
        } else {
            // Later steps act only on the alive branch (A2 = 1); outcome 1
            // exits through U_i P_i.
            circ.push(CircuitOp::controlled(
                a1_sys.clone(),
                step.u_m.clone(),
                vec![(1, 1)],
            ));
            if op_distance(&step.u_polar, &id) > 1e-12 {
                circ.push(CircuitOp::controlled(
                    sys.clone(),
                    step.u_polar.clone(),
                    vec![(0, 1)],
                ));
            }
        }
        // Toggle the alive tag and reinitialise A1.
        circ.push(CircuitOp::elementary(vec![0, 1], cnot.clone()));
        circ.push(CircuitOp::Reset { qubit: 0 });
    }
    if op_distance(&seq.final_unitary, &id) > 1e-12 {
        let controls = if seq.steps.is_empty() {
            Vec::new()
        } else {
            vec![(1, 1)]
        };
        circ.push(CircuitOp::controlled(
            sys,
            seq.final_unitary.clone(),
            controls,
        ));
    }
    Ok(circ)
}

/// Reconstructs the channel the circuit implements by evolving one half of a
/// maximally entangled pair through it and reading off the Choi operator.
pub fn channel_from_circuit(seq: &PovmSequence) -> Result<KrausChannel> {
    use crate::simulator::{run, SimState};
    let n_sys = seq.dim.trailing_zeros() as usize;
    let circ = povm_circuit(seq)?;
    let total = 2 + 2 * n_sys;
    // Registers: A1, A2, system, reference; entangle system with reference.
    let mut amps = crate::linalg::CVector::zeros(1 << total);
    let d = seq.dim;
    let amp = crate::linalg::cr(1.0 / (d as f64).sqrt());
    for i in 0..d {
        amps[i * d + i] = amp;
    }
    let mut wide = SynthesizedCircuit::new(total);
    for op in &circ.ops {
        wide.push(op.clone());
    }
    let (out, _) = run(&wide, SimState::from_pure(total, amps)?, None)?;
    let rho = out.trace_out(&[0, 1]);
    let choi = rho * crate::linalg::cr(d as f64);
    crate::channels::channel_from_choi(&choi, d, "povm-circuit")
}

/// The POVM sequence for a Petz recovery map: measured branches in Kraus
/// enumeration order (the dominant no-error branch first), residual = the
/// last Kraus operator.
///
/// The generic ascending-norm sort is useless here: the Petz map rescales
/// its error branches so that most satisfy ‖K†K‖ = 1 exactly, making the
/// sort tie-dominated and unstable in γ. Enumeration order measures the
/// dominant branch first — precisely the regime where the dropped (Qᵢ)⁻¹
/// corrections only weakly perturb the survivors — and reproduces the
/// quadratic degree-of-approximation behaviour.
pub fn petz_povm_sequence(petz: &PetzMap) -> Result<PovmSequence> {
    let completed = petz.tp_completed_channel()?;
    let order: Vec<usize> = (0..completed.kraus.len()).collect();
    build_povm_sequence_permuted(&completed, &order)
}

/// Δ(γ): gap in worst-case fidelity between the POVM-approximated and the
/// exact Petz recovery, both composed after AD(γ)^⊗n. The worst case is
/// taken over the real-amplitude preparation family ψ(θ).
pub fn delta_curve(code: &QuantumCode, gammas: &[f64]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        if !(0.0..=0.5).contains(&gamma) {
            return Err(Error::OutOfRange(format!("gamma = {gamma} not in [0, 0.5]")));
        }
        out.push((gamma, delta_at(code, gamma)?));
    }
    Ok(out)
}

/// Single Δ(γ) sample.
pub fn delta_at(code: &QuantumCode, gamma: f64) -> Result<f64> {
    let noise = crate::channels::amplitude_damping(gamma)?.tensor_power(code.n)?;
    let petz = construct_code_petz(code, &noise)?;
    let exact = petz.composite_with_noise();
    let (f2_exact, _) = worst_case_fidelity_real(code, &exact)?;
    let seq = petz_povm_sequence(&petz)?;
    let approx = approx_channel(&seq)?.compose(&noise)?;
    let (f2_approx, _) = worst_case_fidelity_real(code, &approx)?;
    Ok((f2_approx - f2_exact).abs())
}

/// Least-squares fit y ≈ a·x² + b·x + c.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r_squared: f64,
}

pub fn quadratic_fit(samples: &[(f64, f64)]) -> Result<QuadraticFit> {
    if samples.len() < 3 {
        return Err(Error::InvalidArgument(
            "quadratic fit needs at least 3 samples".into(),
        ));
    }
    let mut xtx = nalgebra::Matrix3::<f64>::zeros();
    let mut xty = nalgebra::Vector3::<f64>::zeros();
    for &(x, y) in samples {
        let row = nalgebra::Vector3::new(x * x, x, 1.0);
        xtx += row * row.transpose();
        xty += row * y;
    }
    let coeffs = xtx
        .lu()
        .solve(&xty)
        .ok_or_else(|| Error::Numerical("singular normal equations".into()))?;
    let mean = samples.iter().map(|&(_, y)| y).sum::<f64>() / samples.len() as f64;
    let ss_tot: f64 = samples.iter().map(|&(_, y)| (y - mean).powi(2)).sum();
    let ss_res: f64 = samples
        .iter()
        .map(|&(x, y)| {
            let fit = coeffs[0] * x * x + coeffs[1] * x + coeffs[2];
            (y - fit).powi(2)
        })
        .sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(QuadraticFit {
        a: coeffs[0],
        b: coeffs[1],
        c: coeffs[2],
        r_squared,
    })
}

/// Sequence export with the per-step P, Q and polar matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmJson {
    pub dim: usize,
    pub ancilla_count: usize,
    pub steps: Vec<PovmStepJson>,
    pub final_unitary: Vec<Pair>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmStepJson {
    pub p: Vec<Pair>,
    pub q: Vec<Pair>,
    pub u: Vec<Pair>,
}

impl PovmSequence {
    pub fn to_json(&self) -> PovmJson {
        PovmJson {
            dim: self.dim,
            ancilla_count: self.ancilla_count,
            steps: self
                .steps
                .iter()
                .map(|s| PovmStepJson {
                    p: jsonio::flat_from_matrix(&s.p_blk),
                    q: jsonio::flat_from_matrix(&s.q_blk),
                    u: jsonio::flat_from_matrix(&s.u_polar),
                })
                .collect(),
            final_unitary: jsonio::flat_from_matrix(&self.final_unitary),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{amplitude_damping, channels_equal, KrausChannel};
    use crate::codes::{encode, leung_code};
    use crate::linalg::{basis_vector, cr, hermiticity_error, projector, random_unitary, CVector};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_channel_has_no_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(4, &mut rng);
        let ch = KrausChannel::new(vec![u.clone()], "unitary").unwrap();
        let seq = build_povm_sequence(&ch).unwrap();
        assert!(seq.steps.is_empty());
        assert!(op_distance(&seq.final_unitary, &u) < 1e-10);
        let rho = projector(&crate::linalg::random_state(4, &mut rng));
        let out = execute_povm(&seq, &rho).unwrap();
        assert!(op_distance(&out, &(&u * &rho * u.adjoint())) < 1e-12);
    }

    #[test]
    fn ad_sorting_puts_decay_branch_first() {
        for gamma in [0.1, 0.5, 0.9] {
            let ch = amplitude_damping(gamma).unwrap();
            let seq = build_povm_sequence(&ch).unwrap();
            assert_eq!(seq.steps.len(), 1);
            // The measured branch is A₁ and its Q equals A₀.
            let a0 = &ch.kraus[0];
            assert!(op_distance(&seq.steps[0].kraus, &ch.kraus[1]) < 1e-12);
            assert!(op_distance(&seq.steps[0].q_blk, a0) < 1e-12);
        }
    }

    #[test]
    fn ad_povm_is_exact_at_rank_two() {
        for gamma in [0.0, 0.3, 0.7, 1.0] {
            let ch = amplitude_damping(gamma).unwrap();
            let seq = build_povm_sequence(&ch).unwrap();
            let approx = approx_channel(&seq).unwrap();
            assert!(
                op_distance(&approx.choi().matrix, &ch.choi().matrix) < 1e-12,
                "gamma={gamma}"
            );
        }
    }

    #[test]
    fn petz_sequence_has_fifteen_steps() {
        let code = leung_code();
        let noise = amplitude_damping(0.1).unwrap().tensor_power(4).unwrap();
        let petz = crate::petz::construct_code_petz(&code, &noise).unwrap();
        let seq = petz_povm_sequence(&petz).unwrap();
        assert_eq!(seq.steps.len(), 15);
        assert_eq!(seq.ancilla_count, 2);
    }

    #[test]
    fn execute_matches_channel_for_ad() {
        let ch = amplitude_damping(0.3).unwrap();
        let seq = build_povm_sequence(&ch).unwrap();
        let s = cr(std::f64::consts::FRAC_1_SQRT_2);
        let plus = CVector::from_vec(vec![s, s]);
        let rho = projector(&plus);
        let out = execute_povm(&seq, &rho).unwrap();
        let expect = ch.apply(&rho).unwrap();
        assert!(op_distance(&out, &expect) < 1e-12);
    }

    #[test]
    fn execute_equals_approx_channel() {
        let code = leung_code();
        let noise = amplitude_damping(0.25).unwrap().tensor_power(4).unwrap();
        let petz = crate::petz::construct_code_petz(&code, &noise).unwrap();
        let seq = build_povm_sequence(&petz.tp_completed_channel().unwrap()).unwrap();
        let approx = approx_channel(&seq).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = crate::linalg::random_state(16, &mut rng);
        let rho = projector(&psi);
        let a = execute_povm(&seq, &rho).unwrap();
        let b = approx.apply(&rho).unwrap();
        assert!(op_distance(&a, &b) < 1e-12);
    }

    #[test]
    fn povm_petz_error_is_second_order() {
        let code = leung_code();
        let gamma = 0.2f64;
        let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
        let petz = crate::petz::construct_code_petz(&code, &noise).unwrap();
        let seq = build_povm_sequence(&petz.tp_completed_channel().unwrap()).unwrap();
        let psi_en = encode(&code, &basis_vector(2, 1)).unwrap();
        let rho_noisy = noise.apply(&projector(&psi_en)).unwrap();
        let exact = petz.apply(&rho_noisy).unwrap();
        let approx = execute_povm(&seq, &rho_noisy).unwrap();
        let dist = op_distance(&exact, &approx);
        assert!(
            dist < 0.05 * gamma * gamma + 0.01 * gamma,
            "distance {dist} outside the empirical envelope"
        );
    }

    #[test]
    fn p_and_q_commute_and_outputs_stay_physical() {
        let code = leung_code();
        let noise = amplitude_damping(0.3).unwrap().tensor_power(4).unwrap();
        let petz = crate::petz::construct_code_petz(&code, &noise).unwrap();
        let seq = build_povm_sequence(&petz.tp_completed_channel().unwrap()).unwrap();
        for step in &seq.steps {
            let comm = &step.p_blk * &step.q_blk - &step.q_blk * &step.p_blk;
            assert!(operator_norm(&comm) < 1e-12);
            let sum = &step.p_blk * &step.p_blk + &step.q_blk * &step.q_blk;
            assert!(op_distance(&sum, &identity(16)) < 1e-10);
            assert!(crate::linalg::unitarity_error(&step.u_m) < 1e-10);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let rho = projector(&crate::linalg::random_state(16, &mut rng));
            let out = execute_povm(&seq, &rho).unwrap();
            assert_abs_diff_eq!(out.trace().re, 1.0, epsilon = 1e-10);
            assert!(hermiticity_error(&out) < 1e-10);
            let eig = crate::linalg::herm_eig(&out).unwrap();
            assert!(eig.eigenvalues.iter().all(|&l| l > -1e-10));
        }
    }

    #[test]
    fn tensor_square_of_ad_is_not_exact_but_close() {
        // The compatibility condition Q₁Q₂Q₃ = P₄ fails for AD⊗2, so the
        // sequence is only second-order accurate there.
        let gamma = 0.2f64;
        let ch = amplitude_damping(gamma).unwrap().tensor_power(2).unwrap();
        let seq = build_povm_sequence(&ch).unwrap();
        // Compatibility would require Π Qᵢ to equal the residual branch's P.
        let mut q_prod = identity(4);
        for step in &seq.steps {
            q_prod = &step.q_blk * q_prod;
        }
        let a0a0 = &ch.kraus[0]; // dominant Kraus A₀⊗A₀ is PSD
        assert!(op_distance(&q_prod, a0a0) > 1e-6);
        let approx = approx_channel(&seq).unwrap();
        let dist = op_distance(&approx.choi().matrix, &ch.choi().matrix);
        assert!(dist > 1e-6, "AD⊗2 unexpectedly exact (dist {dist})");
        assert!(dist < 0.5 * gamma * gamma, "error not second order: {dist}");
    }

    #[test]
    fn circuit_reproduces_channel_semantics_for_ad() {
        let ch = amplitude_damping(0.35).unwrap();
        let seq = build_povm_sequence(&ch).unwrap();
        let from_circ = channel_from_circuit(&seq).unwrap();
        assert!(channels_equal(&from_circ, &ch, 1e-10));
    }

    #[test]
    fn delta_vanishes_without_noise() {
        let code = leung_code();
        let d0 = delta_at(&code, 0.0).unwrap();
        assert!(d0 < 1e-9);
    }

    #[test]
    fn delta_is_monotone_and_fits_quadratic() {
        let code = leung_code();
        let gammas: Vec<f64> = (0..=15).map(|i| 0.02 * i as f64).collect();
        let curve = delta_curve(&code, &gammas).unwrap();
        for pair in curve.windows(2) {
            assert!(
                pair[1].1 >= pair[0].1 - 1e-6,
                "Δ decreased: {:?} -> {:?}",
                pair[0],
                pair[1]
            );
        }
        let fit = quadratic_fit(&curve).unwrap();
        assert!(
            (fit.a - 0.0414).abs() <= 0.25 * 0.0414,
            "leading coefficient {} outside ±25% of 0.0414",
            fit.a
        );
        assert!(fit.b.abs() < 0.05, "linear term {} unexpectedly large", fit.b);
        assert!(fit.c.abs() < 5e-3, "constant term {} unexpectedly large", fit.c);
        assert!(fit.r_squared > 0.99, "R² = {}", fit.r_squared);
    }

    #[test]
    fn delta_rejects_out_of_range() {
        let code = leung_code();
        assert!(matches!(
            delta_curve(&code, &[0.7]),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn circuit_and_channel_delta_agree() {
        let code = leung_code();
        let gamma = 0.2f64;
        let noise = amplitude_damping(gamma).unwrap().tensor_power(4).unwrap();
        let petz = crate::petz::construct_code_petz(&code, &noise).unwrap();
        let exact = petz.composite_with_noise();
        let (f2_exact, _) = worst_case_fidelity(&code, &exact).unwrap();
        let seq = build_povm_sequence(&petz.tp_completed_channel().unwrap()).unwrap();

        let channel_delta = {
            let approx = approx_channel(&seq).unwrap().compose(&noise).unwrap();
            let (f2, _) = worst_case_fidelity(&code, &approx).unwrap();
            (f2 - f2_exact).abs()
        };
        let circuit_delta = {
            let approx = channel_from_circuit(&seq).unwrap().compose(&noise).unwrap();
            let (f2, _) = worst_case_fidelity(&code, &approx).unwrap();
            (f2 - f2_exact).abs()
        };
        assert!(
            (channel_delta - circuit_delta).abs() < 1e-8,
            "channel Δ {channel_delta} vs circuit Δ {circuit_delta}"
        );
    }

    #[test]
    fn quadratic_fit_recovers_exact_polynomial() {
        let samples: Vec<(f64, f64)> = (0..20)
            .map(|i| {
                let x = 0.05 * i as f64;
                (x, 2.5 * x * x - 0.3 * x + 0.01)
            })
            .collect();
        let fit = quadratic_fit(&samples).unwrap();
        assert_abs_diff_eq!(fit.a, 2.5, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.b, -0.3, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.c, 0.01, epsilon = 1e-10);
        assert!(fit.r_squared > 0.999999);
    }
}
