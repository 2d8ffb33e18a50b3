//! Quantum code data model and the 4-qubit amplitude-damping code.
//!
//! Basis-state labels read |q1 q2 … qn⟩ with q1 the most significant bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jsonio::{self, Pair};
use crate::linalg::{
    basis_vector, cr, identity, kron, op_distance, projector, unitarity_error, CMatrix, CVector,
    C_ONE, C_ZERO,
};

/// An [n, k] code: 2^k orthonormal codewords in the 2^n-dimensional space,
/// the codespace projector P and an encoding unitary.
///
/// `logical_input` is the physical qubit of `u_en` that carries the logical
/// state; the remaining input qubits start in |0⟩.
#[derive(Debug, Clone)]
pub struct QuantumCode {
    pub n: usize,
    pub k: usize,
    pub codewords: Vec<CVector>,
    pub projector: CMatrix,
    pub u_en: CMatrix,
    pub logical_input: usize,
}

/// Encoder variant Ũ_en with Ũ_en|0…0⟩ = |ψ_en⟩ for a fixed logical target.
#[derive(Debug, Clone)]
pub struct PreparedEncoder {
    pub u_tilde: CMatrix,
    pub target_state: CVector,
}

impl QuantumCode {
    pub fn new(
        n: usize,
        codewords: Vec<CVector>,
        u_en: CMatrix,
        logical_input: usize,
    ) -> Result<Self> {
        let dim = 1usize << n;
        let k_dim = codewords.len();
        if !k_dim.is_power_of_two() {
            return Err(Error::InvalidArgument(
                "number of codewords must be a power of two".into(),
            ));
        }
        let k = k_dim.trailing_zeros() as usize;
        for w in &codewords {
            if w.len() != dim {
                return Err(Error::DimMismatch(format!(
                    "codeword length {} does not match 2^{n}",
                    w.len()
                )));
            }
        }
        for (i, a) in codewords.iter().enumerate() {
            for (j, b) in codewords.iter().enumerate() {
                let overlap = a.dotc(b);
                let expect = if i == j { C_ONE } else { C_ZERO };
                if (overlap - expect).norm() > 1e-12 {
                    return Err(Error::NotIsometry((overlap - expect).norm()));
                }
            }
        }
        let mut projector = CMatrix::zeros(dim, dim);
        for w in &codewords {
            projector += crate::linalg::projector(w);
        }
        if unitarity_error(&u_en) > 1e-12 {
            return Err(Error::NotUnitary(unitarity_error(&u_en)));
        }
        Ok(Self {
            n,
            k,
            codewords,
            projector,
            u_en,
            logical_input,
        })
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Embeds a logical state into the encoder's input layout: the logical
    /// qubit amplitudes go to the `logical_input` wire, all other wires |0⟩.
    pub fn embed_logical(&self, psi: &CVector) -> Result<CVector> {
        if self.k != 1 || psi.len() != 2 {
            return Err(Error::Unsupported(
                "embedding is defined for k = 1 logical qubits".into(),
            ));
        }
        let mut v = CVector::zeros(self.dim());
        let bit = 1usize << (self.n - 1 - self.logical_input);
        v[0] = psi[0];
        v[bit] = psi[1];
        Ok(v)
    }
}

/// Codeword-basis encoding: |ψ⟩ ↦ Σᵢ ψᵢ |i_L⟩.
pub fn encode(code: &QuantumCode, psi: &CVector) -> Result<CVector> {
    if psi.len() != 1 << code.k {
        return Err(Error::DimMismatch(format!(
            "logical state has dim {}, expected {}",
            psi.len(),
            1 << code.k
        )));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    let mut out = CVector::zeros(code.dim());
    for (i, w) in code.codewords.iter().enumerate() {
        out += w * psi[i];
    }
    Ok(out)
}

/// The 4-qubit amplitude-damping code with codewords
/// (|0000⟩+|1111⟩)/√2 and (|0011⟩+|1100⟩)/√2.
///
/// The encoding unitary is the gate sequence
/// CNOT(1→4)·CNOT(1→3)·CNOT(3→4)·CNOT(1→2)·H(1) with the logical input on
/// q3; it maps α|0⟩+β|1⟩ on q3 (others |0⟩) to α|0_L⟩+β|1_L⟩.
pub fn leung_code() -> QuantumCode {
    let dim = 16usize;
    let s = cr(std::f64::consts::FRAC_1_SQRT_2);
    let zero_l = (basis_vector(dim, 0b0000) + basis_vector(dim, 0b1111)) * s;
    let one_l = (basis_vector(dim, 0b0011) + basis_vector(dim, 0b1100)) * s;

    let u_en = cnot4(0, 3) * cnot4(0, 2) * cnot4(2, 3) * cnot4(0, 1) * hadamard4(0);
    QuantumCode::new(4, vec![zero_l, one_l], u_en, 2).expect("static code data is consistent")
}

/// Single-wire trivial code (n = k = 1): both basis states are codewords.
pub fn trivial_code() -> QuantumCode {
    QuantumCode::new(
        1,
        vec![basis_vector(2, 0), basis_vector(2, 1)],
        identity(2),
        0,
    )
    .expect("static code data is consistent")
}

/// Builds Ũ_en = U_en · (U₁ on the logical input wire) where U₁|0⟩ = psi.
pub fn tilde_encoder(code: &QuantumCode, psi: &CVector) -> Result<PreparedEncoder> {
    if code.k != 1 {
        return Err(Error::Unsupported("tilde encoder needs k = 1".into()));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    let u1 = crate::linalg::complete_to_unitary(&CMatrix::from_columns(&[psi.clone()]))?;
    let mut factors: Vec<CMatrix> = Vec::with_capacity(code.n);
    for q in 0..code.n {
        factors.push(if q == code.logical_input {
            u1.clone()
        } else {
            identity(2)
        });
    }
    let mut prep = factors[0].clone();
    for f in &factors[1..] {
        prep = kron(&prep, f);
    }
    let u_tilde = &code.u_en * prep;
    let target_state = encode(code, psi)?;
    Ok(PreparedEncoder {
        u_tilde,
        target_state,
    })
}

/// 4-qubit CNOT with the given control/target wires (0-indexed, q1 = wire 0).
fn cnot4(control: usize, target: usize) -> CMatrix {
    let mut m = CMatrix::zeros(16, 16);
    for b in 0..16usize {
        let cbit = (b >> (3 - control)) & 1;
        let out = if cbit == 1 { b ^ (1 << (3 - target)) } else { b };
        m[(out, b)] = C_ONE;
    }
    m
}

/// Hadamard on one wire of the 4-qubit register.
fn hadamard4(wire: usize) -> CMatrix {
    let h = {
        let mut m = CMatrix::zeros(2, 2);
        let s = cr(std::f64::consts::FRAC_1_SQRT_2);
        m[(0, 0)] = s;
        m[(0, 1)] = s;
        m[(1, 0)] = s;
        m[(1, 1)] = -s;
        m
    };
    let id = identity(2);
    let mut out = identity(1);
    for q in 0..4 {
        out = kron(&out, if q == wire { &h } else { &id });
    }
    out
}

/// Code interchange format: codewords as complex vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub k: usize,
    pub codewords: Vec<Vec<Pair>>,
}

impl QuantumCode {
    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            n: self.n,
            k: self.k,
            codewords: self.codewords.iter().map(jsonio::pairs_from_vector).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::op_distance;
    use approx::assert_abs_diff_eq;

    #[test]
    fn codewords_are_orthonormal() {
        let code = leung_code();
        let overlap = code.codewords[0].dotc(&code.codewords[1]);
        assert!(overlap.norm() < 1e-15);
        assert_abs_diff_eq!(code.codewords[0].norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn projector_has_rank_two() {
        let code = leung_code();
        let p = &code.projector;
        assert_abs_diff_eq!(p.trace().re, 2.0, epsilon = 1e-12);
        assert!(op_distance(&(p * p), p) < 1e-12);
        assert!(crate::linalg::hermiticity_error(p) < 1e-14);
    }

    #[test]
    fn encoding_unitary_maps_basis_states() {
        let code = leung_code();
        let cases = [
            CVector::from_vec(vec![C_ONE, C_ZERO]),
            CVector::from_vec(vec![C_ZERO, C_ONE]),
            CVector::from_vec(vec![
                cr(std::f64::consts::FRAC_1_SQRT_2),
                cr(std::f64::consts::FRAC_1_SQRT_2),
            ]),
        ];
        for psi in cases {
            let input = code.embed_logical(&psi).unwrap();
            let encoded = &code.u_en * input;
            let expect = encode(&code, &psi).unwrap();
            assert!((encoded - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn encode_is_linear() {
        let code = leung_code();
        let zero = encode(&code, &CVector::from_vec(vec![C_ONE, C_ZERO])).unwrap();
        let one = encode(&code, &CVector::from_vec(vec![C_ZERO, C_ONE])).unwrap();
        assert!((zero - code.codewords[0].clone()).norm() < 1e-15);
        assert!((one - code.codewords[1].clone()).norm() < 1e-15);
        let s = cr(std::f64::consts::FRAC_1_SQRT_2);
        let plus = encode(&code, &CVector::from_vec(vec![s, s])).unwrap();
        let expect = (code.codewords[0].clone() + code.codewords[1].clone()) * s;
        assert!((plus - expect).norm() < 1e-15);
    }

    #[test]
    fn encode_rejects_unnormalized() {
        let code = leung_code();
        let bad = CVector::from_vec(vec![cr(2.0), C_ZERO]);
        assert!(matches!(encode(&code, &bad), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn tilde_encoder_prepares_from_all_zero() {
        let code = leung_code();
        let theta = std::f64::consts::PI / 3.0;
        let cases = [
            CVector::from_vec(vec![C_ONE, C_ZERO]),
            CVector::from_vec(vec![C_ZERO, C_ONE]),
            CVector::from_vec(vec![cr((theta / 2.0).cos()), cr((theta / 2.0).sin())]),
        ];
        for psi in cases {
            let enc = tilde_encoder(&code, &psi).unwrap();
            let from_zero = &enc.u_tilde * basis_vector(16, 0);
            assert!((from_zero - enc.target_state.clone()).norm() < 1e-12);
            assert!(unitarity_error(&enc.u_tilde) < 1e-12);
        }
    }

    #[test]
    fn codespace_is_invariant_under_projector() {
        let code = leung_code();
        for i in 0..16 {
            let theta = std::f64::consts::PI * (i as f64) / 15.0;
            let phi = 2.0 * std::f64::consts::PI * (i as f64) / 16.0;
            let psi = CVector::from_vec(vec![
                cr((theta / 2.0).cos()),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ]);
            let encoded = encode(&code, &psi).unwrap();
            let projected = &code.projector * &encoded;
            assert!((projected - encoded).norm() < 1e-12);
        }
    }

    use num_complex::Complex64;
}
