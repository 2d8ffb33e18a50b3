//! Dense circuit execution on pure states and density matrices, with the
//! two amplitude-damping injection mechanisms and per-gate depolarizing
//! noise.
//!
//! Registers are qubit arrays; basis labels read |q0 q1 … q(n−1)⟩ with
//! qubit 0 the most significant bit. Gate noise follows each unitary op as a
//! depolarizing channel on the op's support with effective strength
//! 1 − (1 − μ)^cost, where `cost` counts the op's elementary content: 1 for
//! one- and two-qubit gates and for two-level unitaries, and the full
//! two-level count 2^k(2^k−1)/2 for a generic k-qubit unitary.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jsonio::{self, Pair};
use crate::linalg::{cr, identity, CMatrix, CVector, C_ONE, C_ZERO};

/// Pure amplitude vector or density matrix over a qubit register.
#[derive(Debug, Clone)]
pub enum SimState {
    Pure { qubits: usize, amps: CVector },
    Mixed { qubits: usize, rho: CMatrix },
}

/// Default memory guard: density matrices above this register size are
/// rejected (4096² complex entries at 12 qubits).
pub const MAX_MIXED_QUBITS: usize = 12;

impl SimState {
    pub fn zero_state(qubits: usize) -> Self {
        let mut amps = CVector::zeros(1 << qubits);
        amps[0] = C_ONE;
        SimState::Pure { qubits, amps }
    }

    pub fn from_pure(qubits: usize, amps: CVector) -> Result<Self> {
        if amps.len() != 1 << qubits {
            return Err(Error::DimMismatch(format!(
                "amplitude vector of len {} for {qubits} qubits",
                amps.len()
            )));
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(SimState::Pure { qubits, amps })
    }

    pub fn from_density(qubits: usize, rho: CMatrix) -> Result<Self> {
        if rho.nrows() != 1 << qubits || rho.ncols() != 1 << qubits {
            return Err(Error::DimMismatch(format!(
                "density matrix {}x{} for {qubits} qubits",
                rho.nrows(),
                rho.ncols()
            )));
        }
        if qubits > MAX_MIXED_QUBITS {
            return Err(Error::Unsupported(format!(
                "mixed-state simulation capped at {MAX_MIXED_QUBITS} qubits"
            )));
        }
        Ok(SimState::Mixed { qubits, rho })
    }

    pub fn qubits(&self) -> usize {
        match self {
            SimState::Pure { qubits, .. } | SimState::Mixed { qubits, .. } => *qubits,
        }
    }

    /// Density-matrix view of the state (copies the pure projector).
    pub fn density(&self) -> CMatrix {
        match self {
            SimState::Pure { amps, .. } => amps * amps.adjoint(),
            SimState::Mixed { rho, .. } => rho.clone(),
        }
    }

    fn into_mixed(self) -> Result<Self> {
        match self {
            SimState::Pure { qubits, amps } => {
                if qubits > MAX_MIXED_QUBITS {
                    return Err(Error::Unsupported(format!(
                        "mixed-state simulation capped at {MAX_MIXED_QUBITS} qubits"
                    )));
                }
                let rho = &amps * amps.adjoint();
                Ok(SimState::Mixed { qubits, rho })
            }
            mixed => Ok(mixed),
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            SimState::Pure { amps, .. } => amps.norm_squared(),
            SimState::Mixed { rho, .. } => rho.trace().re,
        }
    }

    /// Traces out the listed qubits, returning the reduced density matrix
    /// over the remaining ones (in their original order).
    pub fn trace_out(&self, qubits_out: &[usize]) -> CMatrix {
        let n = self.qubits();
        let rho = self.density();
        let dims = vec![2usize; n];
        crate::linalg::partial_trace(&rho, &dims, qubits_out)
    }
}

/// One instruction of a synthesized program.
#[derive(Debug, Clone)]
pub enum CircuitOp {
    /// Unitary on a qubit subset (subset order = significance order of the
    /// matrix), optionally conditioned on control qubits holding exact bit
    /// values. `cost` is its elementary-gate content for noise charging.
    Unitary {
        qubits: Vec<usize>,
        matrix: CMatrix,
        controls: Vec<(usize, u8)>,
        cost: u64,
    },
    /// Two-level unitary between global basis indices i < j.
    TwoLevel {
        i: usize,
        j: usize,
        block: [[Complex64; 2]; 2],
    },
    /// Kraus channel on a qubit subset.
    Channel {
        qubits: Vec<usize>,
        kraus: Vec<CMatrix>,
    },
    /// Trace out one qubit and re-adjoin |0⟩⟨0|.
    Reset { qubit: usize },
    /// Project onto a computational outcome of the listed qubits and
    /// renormalize; the probability is logged.
    PostSelect { qubits: Vec<usize>, outcome: Vec<u8> },
}

/// Elementary-gate content of a generic k-qubit unitary: every d×d unitary
/// factors into at most d(d−1)/2 two-level unitaries.
pub fn two_level_content(k_qubits: usize) -> u64 {
    let d = 1u64 << k_qubits;
    if k_qubits <= 2 {
        1
    } else {
        d * (d - 1) / 2
    }
}

impl CircuitOp {
    pub fn unitary(qubits: Vec<usize>, matrix: CMatrix) -> Self {
        let cost = two_level_content(qubits.len());
        CircuitOp::Unitary {
            qubits,
            matrix,
            controls: Vec::new(),
            cost,
        }
    }

    /// A 1q/2q hardware gate (cost 1).
    pub fn elementary(qubits: Vec<usize>, matrix: CMatrix) -> Self {
        CircuitOp::Unitary {
            qubits,
            matrix,
            controls: Vec::new(),
            cost: 1,
        }
    }

    pub fn controlled(qubits: Vec<usize>, matrix: CMatrix, controls: Vec<(usize, u8)>) -> Self {
        let cost = two_level_content(qubits.len() + controls.len());
        CircuitOp::Unitary {
            qubits,
            matrix,
            controls,
            cost,
        }
    }
}

/// Ordered gate/channel/measurement program on a fixed register.
#[derive(Debug, Clone)]
pub struct SynthesizedCircuit {
    pub qubits: usize,
    pub ops: Vec<CircuitOp>,
}

impl SynthesizedCircuit {
    pub fn new(qubits: usize) -> Self {
        Self {
            qubits,
            ops: Vec::new(),
        }
    }

    pub fn push(&mut self, op: CircuitOp) {
        self.ops.push(op);
    }

    /// Total elementary-gate content of the program's unitaries.
    pub fn gate_cost(&self) -> u64 {
        self.ops
            .iter()
            .map(|op| match op {
                CircuitOp::Unitary { cost, .. } => *cost,
                CircuitOp::TwoLevel { .. } => 1,
                _ => 0,
            })
            .sum()
    }

    pub fn to_json(&self) -> CircuitJson {
        CircuitJson {
            qubits: self.qubits,
            ops: self.ops.iter().map(OpJson::from_op).collect(),
        }
    }
}

/// T1/T2 idle noise plus per-gate depolarizing strengths. Only the
/// amplitude-damping regime T2 = 2·T1 is representable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseModel {
    pub t1: f64,
    pub t2: f64,
    /// Duration of one identity gate in seconds.
    pub gate_time_id: f64,
    pub mu_1q: f64,
    pub mu_2q: f64,
}

impl NoiseModel {
    pub fn new(t1: f64, mu_1q: f64, mu_2q: f64) -> Result<Self> {
        if t1 < 0.0 || mu_1q < 0.0 || mu_2q < 0.0 || mu_1q > 1.0 || mu_2q > 1.0 {
            return Err(Error::OutOfRange("noise parameters must be physical".into()));
        }
        Ok(Self {
            t1,
            t2: 2.0 * t1,
            gate_time_id: 35e-9,
            mu_1q,
            mu_2q,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if (self.t2 - 2.0 * self.t1).abs() > 1e-12 * self.t1.max(1.0) {
            return Err(Error::Unsupported(
                "only the T2 = 2·T1 amplitude-damping regime is supported".into(),
            ));
        }
        Ok(())
    }

    pub fn ideal() -> Self {
        Self {
            t1: f64::INFINITY,
            t2: f64::INFINITY,
            gate_time_id: 35e-9,
            mu_1q: 0.0,
            mu_2q: 0.0,
        }
    }
}

/// γ = 1 − exp(−N·t/T1): damping accumulated by N idle gates of duration t.
pub fn idle_gamma(n_gates: usize, t: f64, t1: f64) -> f64 {
    if t1 == f64::INFINITY {
        return 0.0;
    }
    1.0 - (-(n_gates as f64) * t / t1).exp()
}

/// Post-selection probabilities recorded during a run.
#[derive(Debug, Clone, Default)]
pub struct RunLog {
    pub postselect_probs: Vec<f64>,
}

/// Executes the program. With a noise model attached, every unitary op is
/// followed by depolarizing noise on its support (strength derived from
/// `mu_1q`/`mu_2q` and the op cost).
pub fn run(
    circ: &SynthesizedCircuit,
    init: SimState,
    noise: Option<&NoiseModel>,
) -> Result<(SimState, RunLog)> {
    if let Some(nm) = noise {
        nm.validate()?;
    }
    let noisy = noise.map(|nm| nm.mu_1q > 0.0 || nm.mu_2q > 0.0).unwrap_or(false);
    let mut state = if noisy { init.into_mixed()? } else { init };
    if state.qubits() != circ.qubits {
        return Err(Error::DimMismatch(format!(
            "initial state has {} qubits, circuit has {}",
            state.qubits(),
            circ.qubits
        )));
    }
    let mut log = RunLog::default();
    for op in &circ.ops {
        state = apply_op(state, op, circ.qubits, &mut log)?;
        if noisy {
            if let Some(nm) = noise {
                if let Some((support, mu_eff)) = gate_noise(op, nm) {
                    state = depolarize_subset(state, &support, mu_eff)?;
                }
            }
        }
    }
    Ok((state, log))
}

fn gate_noise(op: &CircuitOp, nm: &NoiseModel) -> Option<(Vec<usize>, f64)> {
    match op {
        CircuitOp::Unitary {
            qubits,
            controls,
            cost,
            ..
        } => {
            let mut support: Vec<usize> = qubits.clone();
            support.extend(controls.iter().map(|(q, _)| *q));
            let mu = if support.len() == 1 { nm.mu_1q } else { nm.mu_2q };
            Some((support, 1.0 - (1.0 - mu).powf(*cost as f64)))
        }
        CircuitOp::TwoLevel { i, j, .. } => {
            // A two-level unitary touches every qubit where the two basis
            // labels differ or where they agree (controls), so its support
            // is the full register; charged as one elementary unit.
            let _ = (i, j);
            Some((Vec::new(), 1.0 - (1.0 - nm.mu_2q)))
        }
        _ => None,
    }
}

fn apply_op(
    state: SimState,
    op: &CircuitOp,
    n: usize,
    log: &mut RunLog,
) -> Result<SimState> {
    match op {
        CircuitOp::Unitary {
            qubits,
            matrix,
            controls,
            ..
        } => {
            check_subset(n, qubits, controls)?;
            if matrix.nrows() != 1 << qubits.len() {
                return Err(Error::DimMismatch(format!(
                    "matrix {}x{} on {} qubits",
                    matrix.nrows(),
                    matrix.ncols(),
                    qubits.len()
                )));
            }
            match state {
                SimState::Pure { qubits: nq, mut amps } => {
                    apply_unitary_vec(&mut amps, n, qubits, controls, matrix);
                    Ok(SimState::Pure { qubits: nq, amps })
                }
                SimState::Mixed { qubits: nq, mut rho } => {
                    apply_unitary_mat(&mut rho, n, qubits, controls, matrix);
                    Ok(SimState::Mixed { qubits: nq, rho })
                }
            }
        }
        CircuitOp::TwoLevel { i, j, block } => {
            match state {
                SimState::Pure { qubits: nq, mut amps } => {
                    let (a, b) = (amps[*i], amps[*j]);
                    amps[*i] = block[0][0] * a + block[0][1] * b;
                    amps[*j] = block[1][0] * a + block[1][1] * b;
                    Ok(SimState::Pure { qubits: nq, amps })
                }
                SimState::Mixed { qubits: nq, mut rho } => {
                    apply_two_level_mat(&mut rho, *i, *j, block);
                    Ok(SimState::Mixed { qubits: nq, rho })
                }
            }
        }
        CircuitOp::Channel { qubits, kraus } => {
            check_subset(n, qubits, &[])?;
            let state = state.into_mixed()?;
            if let SimState::Mixed { qubits: nq, rho } = state {
                let mut out = CMatrix::zeros(rho.nrows(), rho.ncols());
                for k in kraus {
                    let mut term = rho.clone();
                    apply_kraus_mat(&mut term, n, qubits, k);
                    out += term;
                }
                Ok(SimState::Mixed { qubits: nq, rho: out })
            } else {
                unreachable!()
            }
        }
        CircuitOp::Reset { qubit } => {
            // reset = Kraus {|0⟩⟨0|, |0⟩⟨1|} on that qubit.
            let mut k0 = CMatrix::zeros(2, 2);
            k0[(0, 0)] = C_ONE;
            let mut k1 = CMatrix::zeros(2, 2);
            k1[(0, 1)] = C_ONE;
            let op = CircuitOp::Channel {
                qubits: vec![*qubit],
                kraus: vec![k0, k1],
            };
            apply_op(state, &op, n, log)
        }
        CircuitOp::PostSelect { qubits, outcome } => {
            check_subset(n, qubits, &[])?;
            if outcome.len() != qubits.len() {
                return Err(Error::DimMismatch(
                    "post-selection outcome length mismatch".into(),
                ));
            }
            match state {
                SimState::Pure { qubits: nq, mut amps } => {
                    let mut prob = 0.0;
                    for idx in 0..amps.len() {
                        if matches_outcome(idx, nq, qubits, outcome) {
                            prob += amps[idx].norm_sqr();
                        } else {
                            amps[idx] = C_ZERO;
                        }
                    }
                    if prob < 1e-14 {
                        return Err(Error::ZeroProbability);
                    }
                    amps /= cr(prob.sqrt());
                    log.postselect_probs.push(prob);
                    Ok(SimState::Pure { qubits: nq, amps })
                }
                SimState::Mixed { qubits: nq, mut rho } => {
                    let dim = rho.nrows();
                    let mut prob = 0.0;
                    for idx in 0..dim {
                        if matches_outcome(idx, nq, qubits, outcome) {
                            prob += rho[(idx, idx)].re;
                        }
                    }
                    if prob < 1e-14 {
                        return Err(Error::ZeroProbability);
                    }
                    for r in 0..dim {
                        let keep_r = matches_outcome(r, nq, qubits, outcome);
                        for c in 0..dim {
                            if !(keep_r && matches_outcome(c, nq, qubits, outcome)) {
                                rho[(r, c)] = C_ZERO;
                            }
                        }
                    }
                    rho /= cr(prob);
                    log.postselect_probs.push(prob);
                    Ok(SimState::Mixed { qubits: nq, rho })
                }
            }
        }
    }
}

fn check_subset(n: usize, qubits: &[usize], controls: &[(usize, u8)]) -> Result<()> {
    let mut seen = vec![false; n];
    for &q in qubits.iter().chain(controls.iter().map(|(q, _)| q)) {
        if q >= n {
            return Err(Error::DimMismatch(format!(
                "qubit {q} outside register of size {n}"
            )));
        }
        if seen[q] {
            return Err(Error::InvalidArgument(format!("duplicate qubit {q}")));
        }
        seen[q] = true;
    }
    Ok(())
}

#[inline]
fn bit_of(idx: usize, n: usize, qubit: usize) -> usize {
    (idx >> (n - 1 - qubit)) & 1
}

fn matches_outcome(idx: usize, n: usize, qubits: &[usize], outcome: &[u8]) -> bool {
    qubits
        .iter()
        .zip(outcome)
        .all(|(&q, &b)| bit_of(idx, n, q) == b as usize)
}

/// Applies U on the qubit subset (optionally controlled) to an amplitude
/// vector in place.
pub fn apply_unitary_vec(
    amps: &mut CVector,
    n: usize,
    qubits: &[usize],
    controls: &[(usize, u8)],
    u: &CMatrix,
) {
    let k = qubits.len();
    let d = 1usize << k;
    let positions: Vec<usize> = qubits.iter().map(|&q| n - 1 - q).collect();
    let mut rest_mask = (1usize << n) - 1;
    for &p in &positions {
        rest_mask &= !(1usize << p);
    }
    let ctrl_mask: usize = controls.iter().map(|(q, _)| 1usize << (n - 1 - q)).sum();
    let ctrl_val: usize = controls
        .iter()
        .filter(|(_, b)| *b == 1)
        .map(|(q, _)| 1usize << (n - 1 - q))
        .sum();

    let mut gathered = vec![C_ZERO; d];
    let mut base = 0usize;
    loop {
        if base & ctrl_mask == ctrl_val {
            for sub in 0..d {
                let mut idx = base;
                for (bit, &p) in positions.iter().enumerate() {
                    if (sub >> (k - 1 - bit)) & 1 == 1 {
                        idx |= 1 << p;
                    }
                }
                gathered[sub] = amps[idx];
            }
            for row in 0..d {
                let mut acc = C_ZERO;
                for col in 0..d {
                    acc += u[(row, col)] * gathered[col];
                }
                let mut idx = base;
                for (bit, &p) in positions.iter().enumerate() {
                    if (row >> (k - 1 - bit)) & 1 == 1 {
                        idx |= 1 << p;
                    }
                }
                amps[idx] = acc;
            }
        }
        // Advance `base` over the rest-mask bits (including control bits).
        base = ((base | !rest_mask).wrapping_add(1)) & rest_mask;
        if base == 0 {
            break;
        }
    }
}

/// ρ → UρU† on a subset, for density matrices.
fn apply_unitary_mat(
    rho: &mut CMatrix,
    n: usize,
    qubits: &[usize],
    controls: &[(usize, u8)],
    u: &CMatrix,
) {
    let dim = rho.nrows();
    // Left multiply: U ρ (column by column).
    for c in 0..dim {
        let mut col = rho.column(c).clone_owned();
        apply_unitary_vec(&mut col, n, qubits, controls, u);
        rho.set_column(c, &col);
    }
    // Right multiply by U†: conjugate rows via (U ρ†)† trick.
    let udag_conj = u.conjugate();
    for r in 0..dim {
        let mut row = rho.row(r).transpose();
        apply_unitary_vec(&mut row, n, qubits, controls, &udag_conj);
        rho.row_mut(r).copy_from(&row.transpose());
    }
}

/// ρ → KρK† on a subset (K not necessarily unitary).
fn apply_kraus_mat(rho: &mut CMatrix, n: usize, qubits: &[usize], k: &CMatrix) {
    apply_unitary_mat(rho, n, qubits, &[], k)
}

fn apply_two_level_mat(rho: &mut CMatrix, i: usize, j: usize, block: &[[Complex64; 2]; 2]) {
    let dim = rho.nrows();
    for c in 0..dim {
        let (a, b) = (rho[(i, c)], rho[(j, c)]);
        rho[(i, c)] = block[0][0] * a + block[0][1] * b;
        rho[(j, c)] = block[1][0] * a + block[1][1] * b;
    }
    for r in 0..dim {
        let (a, b) = (rho[(r, i)], rho[(r, j)]);
        rho[(r, i)] = block[0][0].conj() * a + block[0][1].conj() * b;
        rho[(r, j)] = block[1][0].conj() * a + block[1][1].conj() * b;
    }
}

/// ρ → (1−μ)ρ + μ·(I/d_S ⊗ Tr_S ρ) on the listed qubits (empty list = the
/// whole register).
pub fn depolarize_subset(state: SimState, qubits: &[usize], mu: f64) -> Result<SimState> {
    if mu == 0.0 {
        return Ok(state);
    }
    let n = state.qubits();
    let state = state.into_mixed()?;
    let SimState::Mixed { qubits: nq, rho } = state else {
        unreachable!()
    };
    let support: Vec<usize> = if qubits.is_empty() {
        (0..n).collect()
    } else {
        qubits.to_vec()
    };
    let d_s = 1usize << support.len();
    let dim = rho.nrows();
    let mut out = &rho * cr(1.0 - mu);
    // Add μ · (uniform on support) ⊗ (reduced state on the rest).
    // Entry (r, c) receives μ/d_S · δ on support bits · σ[rest(r), rest(c)],
    // computed by summing rho over matching support-diagonal pairs.
    let support_mask: usize = support.iter().map(|&q| 1usize << (n - 1 - q)).sum();
    for r in 0..dim {
        for c in 0..dim {
            if r & support_mask == c & support_mask {
                // σ[rest(r), rest(c)] = Σ_s rho[rest(r)+s, rest(c)+s]
                let rest_r = r & !support_mask;
                let rest_c = c & !support_mask;
                let mut acc = C_ZERO;
                let mut s = 0usize;
                loop {
                    acc += rho[(rest_r | s, rest_c | s)];
                    s = ((s | !support_mask).wrapping_add(1)) & support_mask;
                    if s == 0 {
                        break;
                    }
                }
                out[(r, c)] += acc * cr(mu / d_s as f64);
            }
        }
    }
    Ok(SimState::Mixed { qubits: nq, rho: out })
}

/// Applies amplitude damping of strength `idle_gamma(n_gates, t, T1)` to each
/// listed qubit, modelling an idling register.
pub fn idle_noise(
    state: SimState,
    qubits: &[usize],
    n_gates: usize,
    noise: &NoiseModel,
) -> Result<SimState> {
    noise.validate()?;
    let gamma = idle_gamma(n_gates, noise.gate_time_id, noise.t1);
    apply_amplitude_damping(state, qubits, gamma)
}

/// Applies AD(γ) to each listed qubit.
pub fn apply_amplitude_damping(state: SimState, qubits: &[usize], gamma: f64) -> Result<SimState> {
    let ch = crate::channels::amplitude_damping(gamma)?;
    let n = state.qubits();
    let mut state = state;
    for &q in qubits {
        let op = CircuitOp::Channel {
            qubits: vec![q],
            kraus: ch.kraus.clone(),
        };
        let mut log = RunLog::default();
        state = apply_op(state, &op, n, &mut log)?;
    }
    Ok(state)
}

/// Traces out one qubit and re-adjoins |0⟩⟨0| in place.
pub fn reset(state: SimState, qubit: usize) -> Result<SimState> {
    let n = state.qubits();
    let mut log = RunLog::default();
    apply_op(state, &CircuitOp::Reset { qubit }, n, &mut log)
}

// --- circuit JSON -----------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OpJson {
    Unitary {
        qubits: Vec<usize>,
        matrix: Vec<Pair>,
        #[serde(default)]
        controls: Vec<(usize, u8)>,
        cost: u64,
    },
    TwoLevel {
        i: usize,
        j: usize,
        block: Vec<Vec<Pair>>,
    },
    Channel {
        qubits: Vec<usize>,
        kraus: Vec<Vec<Pair>>,
    },
    Reset {
        qubit: usize,
    },
    PostSelect {
        qubits: Vec<usize>,
        outcome: Vec<u8>,
    },
}

impl OpJson {
    fn from_op(op: &CircuitOp) -> Self {
        match op {
            CircuitOp::Unitary {
                qubits,
                matrix,
                controls,
                cost,
            } => OpJson::Unitary {
                qubits: qubits.clone(),
                matrix: jsonio::flat_from_matrix(matrix),
                controls: controls.clone(),
                cost: *cost,
            },
            CircuitOp::TwoLevel { i, j, block } => OpJson::TwoLevel {
                i: *i,
                j: *j,
                block: vec![
                    vec![[block[0][0].re, block[0][0].im], [block[0][1].re, block[0][1].im]],
                    vec![[block[1][0].re, block[1][0].im], [block[1][1].re, block[1][1].im]],
                ],
            },
            CircuitOp::Channel { qubits, kraus } => OpJson::Channel {
                qubits: qubits.clone(),
                kraus: kraus.iter().map(jsonio::flat_from_matrix).collect(),
            },
            CircuitOp::Reset { qubit } => OpJson::Reset { qubit: *qubit },
            CircuitOp::PostSelect { qubits, outcome } => OpJson::PostSelect {
                qubits: qubits.clone(),
                outcome: outcome.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitJson {
    pub qubits: usize,
    pub ops: Vec<OpJson>,
}
