//! CPTP maps as Kraus-operator lists, the noise channels used throughout,
//! and conversions between channel, Choi and isometric-extension forms.
//!
//! Kraus ordering is stable and documented: constructor order is preserved,
//! tensor powers enumerate factor indices lexicographically with the first
//! factor most significant. The isometric extension pads the ancilla to the
//! next power of two with zero Kraus blocks so registers stay qubit-shaped.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jsonio::{self, Pair};
use crate::linalg::{
    self, basis_vector, complete_to_unitary, cr, identity, kron, op_distance, operator_norm,
    partial_trace, CMatrix, CVector,
};

/// A completely positive map given by its Kraus operators.
///
/// Trace preservation (ΣK†K = I within 1e-9) is checked at construction for
/// channels built with [`KrausChannel::new`]; maps built with
/// [`KrausChannel::cp`] may be trace non-increasing (the Petz map before
/// normalization, for instance).
#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub dim: usize,
    pub kraus: Vec<CMatrix>,
    pub label: String,
    trace_preserving: bool,
}

/// Choi operator (ch ⊗ id)(|Ω⟩⟨Ω|), unnormalized.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    pub matrix: CMatrix,
    pub dim: usize,
}

impl KrausChannel {
    /// Builds a trace-preserving channel; fails if ΣK†K deviates from the
    /// identity by more than 1e-9.
    pub fn new(kraus: Vec<CMatrix>, label: impl Into<String>) -> Result<Self> {
        let ch = Self::cp(kraus, label)?;
        let dev = ch.trace_preservation_error();
        if dev > 1e-9 {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self {
            trace_preserving: true,
            ..ch
        })
    }

    /// Builds a CP (possibly trace non-increasing) map without the TP check.
    pub fn cp(kraus: Vec<CMatrix>, label: impl Into<String>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidArgument("empty Kraus list".into()));
        }
        let dim = kraus[0].nrows();
        for k in &kraus {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::DimMismatch(format!(
                    "Kraus operators must all be {dim}x{dim}"
                )));
            }
            if k.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidArgument("non-finite Kraus entry".into()));
            }
        }
        Ok(Self {
            dim,
            kraus,
            label: label.into(),
            trace_preserving: false,
        })
    }

    pub fn identity_channel(dim: usize) -> Self {
        Self {
            dim,
            kraus: vec![identity(dim)],
            label: "identity".into(),
            trace_preserving: true,
        }
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    /// ‖ΣK†K − I‖.
    pub fn trace_preservation_error(&self) -> f64 {
        op_distance(&self.kraus_gram(), &identity(self.dim))
    }

    /// ΣK†K.
    pub fn kraus_gram(&self) -> CMatrix {
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            sum += k.adjoint() * k;
        }
        sum
    }

    /// Applies the map to a density matrix. Warns (but still computes) when
    /// the input is visibly not a state.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.nrows() != self.dim || rho.ncols() != self.dim {
            return Err(Error::DimMismatch(format!(
                "state is {}x{}, channel dim is {}",
                rho.nrows(),
                rho.ncols(),
                self.dim
            )));
        }
        let herm_dev = linalg::hermiticity_error(rho);
        let trace_dev = (rho.trace().re - 1.0).abs();
        if herm_dev > 1e-9 || trace_dev > 1e-9 {
            log::warn!(
                "channel '{}' applied to a non-state (hermiticity {herm_dev:.2e}, trace dev {trace_dev:.2e})",
                self.label
            );
        }
        Ok(self.apply_to_operator(rho))
    }

    /// ΣKXK† without any state checks; works on arbitrary operators such as
    /// the codespace projector.
    pub fn apply_to_operator(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out += k * x * k.adjoint();
        }
        out
    }

    /// The adjoint map {K†}. Trace-preserving only when the original map is
    /// unital, which is checked numerically.
    pub fn adjoint(&self) -> Self {
        let kraus: Vec<CMatrix> = self.kraus.iter().map(|k| k.adjoint()).collect();
        let mut adj = Self {
            dim: self.dim,
            kraus,
            label: format!("{}^dag", self.label),
            trace_preserving: false,
        };
        adj.trace_preserving = adj.trace_preservation_error() <= 1e-9;
        adj
    }

    /// Composition self ∘ other (other acts first); Kraus products in
    /// lexicographic (self-major) order.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(format!(
                "compose: {} vs {}",
                self.dim, other.dim
            )));
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for a in &self.kraus {
            for b in &other.kraus {
                kraus.push(a * b);
            }
        }
        Ok(Self {
            dim: self.dim,
            kraus,
            label: format!("{}∘{}", self.label, other.label),
            trace_preserving: self.trace_preserving && other.trace_preserving,
        })
    }

    /// Tensor product of two channels (self is the most significant factor).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for a in &self.kraus {
            for b in &other.kraus {
                kraus.push(kron(a, b));
            }
        }
        Self {
            dim: self.dim * other.dim,
            kraus,
            label: format!("{}⊗{}", self.label, other.label),
            trace_preserving: self.trace_preserving && other.trace_preserving,
        }
    }

    /// n-fold tensor power; Kraus index order is lexicographic in the factor
    /// indices with the first factor most significant.
    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("tensor power needs n >= 1".into()));
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self);
        }
        out.label = format!("{}^⊗{}", self.label, n);
        Ok(out)
    }

    /// Unnormalized Choi operator Σ vec(K)vec(K)† with row-major vec.
    pub fn choi(&self) -> ChoiMatrix {
        let d2 = self.dim * self.dim;
        let mut matrix = CMatrix::zeros(d2, d2);
        for k in &self.kraus {
            let w = CVector::from_iterator(
                d2,
                (0..self.dim).flat_map(|r| (0..self.dim).map(move |c| (r, c))).map(|(r, c)| k[(r, c)]),
            );
            matrix += &w * w.adjoint();
        }
        ChoiMatrix {
            matrix,
            dim: self.dim,
        }
    }

    /// Isometric extension: a unitary V on (ancilla ⊗ system) with the Kraus
    /// operators stacked as the first block-column, so that
    /// Tr_E[V(|0⟩⟨0| ⊗ ρ)V†] reproduces the channel. The ancilla dimension is
    /// the Kraus count padded to the next power of two.
    pub fn isometric_extension(&self) -> Result<CMatrix> {
        if !self.trace_preserving {
            return Err(Error::Unsupported(
                "isometric extension needs a trace-preserving channel".into(),
            ));
        }
        let anc = self.kraus.len().next_power_of_two();
        let d = self.dim;
        let mut stack = CMatrix::zeros(anc * d, d);
        for (i, k) in self.kraus.iter().enumerate() {
            stack.view_mut((i * d, 0), (d, d)).copy_from(k);
        }
        complete_to_unitary(&stack)
    }

    /// Ancilla qubits used by [`Self::isometric_extension`].
    pub fn ancilla_qubits(&self) -> usize {
        let anc = self.kraus.len().next_power_of_two();
        anc.trailing_zeros() as usize
    }

    /// Serializes to the channel interchange format.
    pub fn to_json(&self) -> ChannelJson {
        ChannelJson {
            dim: self.dim,
            label: self.label.clone(),
            kraus: self.kraus.iter().map(jsonio::flat_from_matrix).collect(),
        }
    }

    pub fn from_json(json: &ChannelJson) -> Result<Self> {
        let kraus = json
            .kraus
            .iter()
            .map(|flat| jsonio::matrix_from_flat(json.dim, json.dim, flat))
            .collect::<Result<Vec<_>>>()?;
        let ch = Self::cp(kraus, json.label.clone())?;
        if ch.trace_preservation_error() <= 1e-9 {
            Ok(Self {
                trace_preserving: true,
                ..ch
            })
        } else {
            Ok(ch)
        }
    }
}

/// Channel interchange format: row-major Kraus matrices as [re, im] pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelJson {
    pub dim: usize,
    pub label: String,
    pub kraus: Vec<Vec<Pair>>,
}

/// Extracts the Kraus operators {(⟨i|⊗I) V (|0⟩⊗I)} of the channel realized
/// by an isometric-extension unitary on (ancilla ⊗ system).
pub fn kraus_from_isometry(v: &CMatrix, dim: usize) -> Result<Vec<CMatrix>> {
    if v.nrows() % dim != 0 {
        return Err(Error::DimMismatch(format!(
            "isometry of size {} is not a multiple of system dim {}",
            v.nrows(),
            dim
        )));
    }
    let anc = v.nrows() / dim;
    let mut kraus = Vec::with_capacity(anc);
    for i in 0..anc {
        kraus.push(v.view((i * dim, 0), (dim, dim)).clone_owned());
    }
    Ok(kraus)
}

/// Round-trips an isometric extension back into a channel.
pub fn channel_from_isometry(v: &CMatrix, dim: usize, label: impl Into<String>) -> Result<KrausChannel> {
    KrausChannel::new(kraus_from_isometry(v, dim)?, label)
}

/// Reconstructs a Kraus representation from a Choi operator by
/// eigendecomposition: Kraus_k = √λ_k · unvec(v_k), row-major unvec.
pub fn channel_from_choi(choi: &CMatrix, dim: usize, label: impl Into<String>) -> Result<KrausChannel> {
    if choi.nrows() != dim * dim {
        return Err(Error::DimMismatch(format!(
            "Choi matrix {}x{} for dim {}",
            choi.nrows(),
            choi.ncols(),
            dim
        )));
    }
    let eig = crate::linalg::herm_eig(choi)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let mut kraus = Vec::new();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -1e-9 * scale.max(1.0) {
            return Err(Error::NotPsd(lambda));
        }
        if lambda > 1e-12 * scale.max(1.0) {
            let v = eig.eigenvectors.column(i);
            let root = lambda.sqrt();
            kraus.push(CMatrix::from_fn(dim, dim, |r, c| v[r * dim + c] * root));
        }
    }
    KrausChannel::cp(kraus, label)
}

/// Choi-distance equality test.
pub fn channels_equal(a: &KrausChannel, b: &KrausChannel, tol: f64) -> bool {
    if a.dim != b.dim {
        return false;
    }
    op_distance(&a.choi().matrix, &b.choi().matrix) <= tol
}

/// Single-qubit amplitude damping: A₀ = diag(1, √(1−γ)), A₁ = √γ·|0⟩⟨1|.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::OutOfRange(format!("gamma = {gamma} not in [0, 1]")));
    }
    let mut a0 = CMatrix::zeros(2, 2);
    a0[(0, 0)] = cr(1.0);
    a0[(1, 1)] = cr((1.0 - gamma).sqrt());
    let mut a1 = CMatrix::zeros(2, 2);
    a1[(0, 1)] = cr(gamma.sqrt());
    KrausChannel::new(vec![a0, a1], format!("AD({gamma})"))
}

fn pauli(idx: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    match idx {
        0 => {
            m[(0, 0)] = cr(1.0);
            m[(1, 1)] = cr(1.0);
        }
        1 => {
            m[(0, 1)] = cr(1.0);
            m[(1, 0)] = cr(1.0);
        }
        2 => {
            m[(0, 1)] = Complex64::new(0.0, -1.0);
            m[(1, 0)] = Complex64::new(0.0, 1.0);
        }
        _ => {
            m[(0, 0)] = cr(1.0);
            m[(1, 1)] = cr(-1.0);
        }
    }
    m
}

/// Depolarizing channel ρ ↦ (1−μ)ρ + μ·I/d on one or two qubits, realized by
/// the Pauli Kraus set {√(1−μ+μ/d²)·I} ∪ {√μ/d · P}.
pub fn depolarizing(mu: f64, nqubits: usize) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::OutOfRange(format!("mu = {mu} not in [0, 1]")));
    }
    if nqubits != 1 && nqubits != 2 {
        return Err(Error::InvalidArgument(
            "depolarizing supports 1 or 2 qubits".into(),
        ));
    }
    let d = 1usize << nqubits;
    let d2 = (d * d) as f64;
    let mut kraus = vec![identity(d) * cr((1.0 - mu + mu / d2).sqrt())];
    let coeff = cr(mu.sqrt() / d as f64);
    if nqubits == 1 {
        for p in 1..4 {
            kraus.push(pauli(p) * coeff);
        }
    } else {
        for p in 1..16 {
            let (hi, lo) = (p / 4, p % 4);
            kraus.push(kron(&pauli(hi), &pauli(lo)) * coeff);
        }
    }
    KrausChannel::new(kraus, format!("Dep({mu},{nqubits}q)"))
}

/// The 2-qubit circuit form of amplitude damping (controlled rotation on the
/// ancilla followed by a CNOT back), on (ancilla ⊗ system) ordering with the
/// ancilla starting in |0⟩.
pub fn amplitude_damping_circuit_unitary(gamma: f64) -> Result<CMatrix> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::OutOfRange(format!("gamma = {gamma} not in [0, 1]")));
    }
    let c = (1.0 - gamma).sqrt();
    let s = gamma.sqrt();
    // Basis order |anc, sys⟩: 00, 01, 10, 11.
    let mut cry = identity(4);
    cry[(1, 1)] = cr(c);
    cry[(1, 3)] = cr(-s);
    cry[(3, 1)] = cr(s);
    cry[(3, 3)] = cr(c);
    let mut cnot = CMatrix::zeros(4, 4);
    cnot[(0, 0)] = cr(1.0);
    cnot[(1, 1)] = cr(1.0);
    cnot[(2, 3)] = cr(1.0);
    cnot[(3, 2)] = cr(1.0);
    Ok(cnot * cry)
}

/// Maximally entangled state Σᵢ|ii⟩/√d on dim² levels.
pub fn maximally_entangled(dim: usize) -> CVector {
    let mut v = CVector::zeros(dim * dim);
    let amp = cr(1.0 / (dim as f64).sqrt());
    for i in 0..dim {
        v[i * dim + i] = amp;
    }
    v
}

/// Verifies the channel ↔ isometric-extension round trip on a density input.
pub fn channel_from_isometry_action(v: &CMatrix, dim: usize, rho: &CMatrix) -> CMatrix {
    let anc = v.nrows() / dim;
    let mut input = CMatrix::zeros(v.nrows(), v.nrows());
    input.view_mut((0, 0), (dim, dim)).copy_from(rho);
    let evolved = v * input * v.adjoint();
    partial_trace(&evolved, &[anc, dim], &[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{projector, random_unitary};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ket(bits: &[u8]) -> CVector {
        let dim = 1 << bits.len();
        let mut idx = 0usize;
        for &b in bits {
            idx = (idx << 1) | b as usize;
        }
        basis_vector(dim, idx)
    }

    #[test]
    fn ad_zero_is_identity() {
        let ch = amplitude_damping(0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = linalg::random_state(2, &mut rng);
        let rho = projector(&psi);
        assert!(op_distance(&ch.apply(&rho).unwrap(), &rho) < 1e-12);
    }

    #[test]
    fn ad_one_decays_excited_state() {
        let ch = amplitude_damping(1.0).unwrap();
        let rho = projector(&ket(&[1]));
        let out = ch.apply(&rho).unwrap();
        assert!(op_distance(&out, &projector(&ket(&[0]))) < 1e-12);
    }

    #[test]
    fn ad_half_gives_maximally_mixed() {
        let ch = amplitude_damping(0.5).unwrap();
        let out = ch.apply(&projector(&ket(&[1]))).unwrap();
        assert!(op_distance(&out, &(identity(2) * cr(0.5))) < 1e-12);
    }

    #[test]
    fn ad_rejects_out_of_range() {
        assert!(matches!(amplitude_damping(1.5), Err(Error::OutOfRange(_))));
        assert!(matches!(amplitude_damping(-0.1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn ad_on_excited_state() {
        let ch = amplitude_damping(0.2).unwrap();
        let out = ch.apply(&projector(&ket(&[1]))).unwrap();
        let expect = CMatrix::from_diagonal(&CVector::from_vec(vec![cr(0.2), cr(0.8)]));
        assert!(op_distance(&out, &expect) < 1e-12);
    }

    #[test]
    fn ad_scales_coherences() {
        let gamma = 0.37;
        let ch = amplitude_damping(gamma).unwrap();
        let plus = (ket(&[0]) + ket(&[1])) * cr(std::f64::consts::FRAC_1_SQRT_2);
        let out = ch.apply(&projector(&plus)).unwrap();
        assert_abs_diff_eq!(out[(0, 1)].re, 0.5 * (1.0 - gamma).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(out[(1, 0)].re, 0.5 * (1.0 - gamma).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn depolarizing_limits() {
        let id = depolarizing(0.0, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = projector(&linalg::random_state(2, &mut rng));
        assert!(op_distance(&id.apply(&rho).unwrap(), &rho) < 1e-12);

        let full = depolarizing(1.0, 2).unwrap();
        let rho4 = projector(&linalg::random_state(4, &mut rng));
        assert!(op_distance(&full.apply(&rho4).unwrap(), &(identity(4) * cr(0.25))) < 1e-12);
    }

    #[test]
    fn depolarizing_half_on_ground_state() {
        let ch = depolarizing(0.5, 1).unwrap();
        let out = ch.apply(&projector(&ket(&[0]))).unwrap();
        let expect = CMatrix::from_diagonal(&CVector::from_vec(vec![cr(0.75), cr(0.25)]));
        assert!(op_distance(&out, &expect) < 1e-12);
    }

    #[test]
    fn tensor_power_of_identity() {
        let ch = KrausChannel::identity_channel(2).tensor_power(4).unwrap();
        assert_eq!(ch.kraus.len(), 1);
        assert!(op_distance(&ch.kraus[0], &identity(16)) < 1e-15);
    }

    #[test]
    fn tensor_power_ad_is_trace_preserving() {
        let ch = amplitude_damping(0.3).unwrap().tensor_power(4).unwrap();
        assert_eq!(ch.kraus.len(), 16);
        assert!(ch.trace_preservation_error() < 1e-12);
    }

    #[test]
    fn tensor_power_of_ad_zero_is_identity() {
        let ch = amplitude_damping(0.0).unwrap().tensor_power(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = projector(&linalg::random_state(4, &mut rng));
        assert!(op_distance(&ch.apply(&rho).unwrap(), &rho) < 1e-12);
    }

    #[test]
    fn adjoint_is_involution_and_unital() {
        let ch = amplitude_damping(0.4).unwrap();
        let adj = ch.adjoint();
        // adjoint of a TP channel is unital: adj(I) = I.
        assert!(op_distance(&adj.apply_to_operator(&identity(2)), &identity(2)) < 1e-12);
        let back = adj.adjoint();
        for (a, b) in back.kraus.iter().zip(&ch.kraus) {
            assert!(op_distance(a, b) < 1e-15);
        }
    }

    #[test]
    fn choi_of_identity_is_rank_one() {
        let ch = KrausChannel::identity_channel(2);
        let choi = ch.choi();
        let omega = maximally_entangled(2) * cr(2.0f64.sqrt());
        assert!(op_distance(&choi.matrix, &projector(&omega)) < 1e-12);
    }

    #[test]
    fn choi_is_psd_for_ad() {
        for gamma in [0.0, 0.3, 1.0] {
            let choi = amplitude_damping(gamma).unwrap().choi();
            let eig = linalg::herm_eig(&choi.matrix).unwrap();
            assert!(eig.eigenvalues.iter().all(|&l| l > -1e-9));
        }
    }

    #[test]
    fn kraus_mixing_preserves_channel() {
        // Two Kraus representations related by an isometric mixing are the
        // same channel.
        let ch = amplitude_damping(0.25).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = random_unitary(2, &mut rng);
        let mixed: Vec<CMatrix> = (0..2)
            .map(|j| {
                let mut k = CMatrix::zeros(2, 2);
                for (i, orig) in ch.kraus.iter().enumerate() {
                    k += orig * w[(j, i)];
                }
                k
            })
            .collect();
        let ch2 = KrausChannel::new(mixed, "mixed").unwrap();
        assert!(channels_equal(&ch, &ch2, 1e-10));
    }

    #[test]
    fn isometric_extension_of_identity() {
        let ch = KrausChannel::identity_channel(4);
        let v = ch.isometric_extension().unwrap();
        assert!(op_distance(&v, &identity(4)) < 1e-12);
    }

    #[test]
    fn isometric_extension_round_trip() {
        let ch = amplitude_damping(0.2).unwrap();
        let v = ch.isometric_extension().unwrap();
        let back = channel_from_isometry(&v, 2, "roundtrip").unwrap();
        assert!(channels_equal(&ch, &back, 1e-10));
    }

    #[test]
    fn circuit_form_matches_stacked_extension() {
        let gamma = 0.2;
        let u = amplitude_damping_circuit_unitary(gamma).unwrap();
        let back = channel_from_isometry(&u, 2, "circuit").unwrap();
        let ch = amplitude_damping(gamma).unwrap();
        assert!(channels_equal(&ch, &back, 1e-10));
    }

    #[test]
    fn isometry_action_round_trip() {
        let ch = amplitude_damping(0.35).unwrap();
        let v = ch.isometric_extension().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = projector(&linalg::random_state(2, &mut rng));
        let via_iso = channel_from_isometry_action(&v, 2, &rho);
        assert!(op_distance(&via_iso, &ch.apply(&rho).unwrap()) < 1e-10);
    }

    #[test]
    fn tensor_power_choi_matches_permuted_kron() {
        let ch = amplitude_damping(0.3).unwrap();
        let squared = ch.tensor_power(2).unwrap();
        let choi2 = squared.choi().matrix;
        let c1 = ch.choi().matrix;
        // Permute kron(C, C) on (out1 in1 out2 in2) into (out1 out2 in1 in2).
        let kk = kron(&c1, &c1);
        let dims = [2usize, 2, 2, 2];
        let mut perm = CMatrix::zeros(16, 16);
        for o1 in 0..2 {
            for i1 in 0..2 {
                for o2 in 0..2 {
                    for i2 in 0..2 {
                        let src = ((o1 * dims[1] + i1) * dims[2] + o2) * dims[3] + i2;
                        let dst = ((o1 * 2 + o2) * 2 + i1) * 2 + i2;
                        perm[(dst, src)] = cr(1.0);
                    }
                }
            }
        }
        let permuted = &perm * kk * perm.adjoint();
        assert!(op_distance(&choi2, &permuted) < 1e-10);
    }

    #[test]
    fn json_round_trip() {
        let ch = amplitude_damping(0.42).unwrap();
        let json = ch.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: ChannelJson = serde_json::from_str(&text).unwrap();
        let back = KrausChannel::from_json(&parsed).unwrap();
        assert!(back.is_trace_preserving());
        assert!(channels_equal(&ch, &back, 1e-12));
    }
}
