//! State-specific and code-specific Petz recovery maps, fidelity, and
//! worst-case fidelity over a codespace.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::codes::{encode, QuantumCode};
use crate::error::{Error, Result};
use crate::jsonio::{self, Pair};
use crate::linalg::{
    self, cr, hermiticity_error, operator_norm, pinv_sqrt, psd_sqrt, support_projector, CMatrix,
    CVector,
};

/// The Petz recovery map R(.) = S E†(E(S)^(−1/2) (.) E(S)^(−1/2)) S for
/// S = √σ (state-specific) or S = P (code-specific).
///
/// Kraus operators are kept exactly as Rᵢ = S·Eᵢ†·E(S)^(−1/2) without a
/// trace-preserving completion: the map is TP on the support of E(S), which
/// contains every noisy code state.
#[derive(Debug, Clone)]
pub struct PetzMap {
    /// The noise channel the map is adapted to.
    pub noise: KrausChannel,
    /// √σ or the codespace projector P.
    pub sigma_or_p: CMatrix,
    /// E(σ) or E(P).
    pub ep: CMatrix,
    /// Pseudo-inverse square root E(P)^(−1/2).
    pub ep_inv_sqrt: CMatrix,
    /// Kraus operators {Rᵢ}.
    pub kraus: Vec<CMatrix>,
    /// ‖E(P)^(−1/2)‖.
    pub scale: f64,
    /// Projector onto the support of E(P).
    pub support_projector: CMatrix,
}

impl PetzMap {
    /// ΣRᵢ ρ Rᵢ†.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.nrows() != self.noise.dim {
            return Err(Error::DimMismatch(format!(
                "state dim {} vs map dim {}",
                rho.nrows(),
                self.noise.dim
            )));
        }
        let mut out = CMatrix::zeros(rho.nrows(), rho.ncols());
        for r in &self.kraus {
            out += r * rho * r.adjoint();
        }
        Ok(out)
    }

    /// The recovery as a CP Kraus channel (trace-preserving on supp E(P)).
    pub fn as_channel(&self) -> KrausChannel {
        KrausChannel::cp(self.kraus.clone(), "petz").expect("kraus list is non-empty")
    }

    /// Recovery composed after the noise: R ∘ E.
    pub fn composite_with_noise(&self) -> KrausChannel {
        self.as_channel()
            .compose(&self.noise)
            .expect("dims match by construction")
    }

    /// The recovery as an exactly trace-preserving channel. When the support
    /// of E(P) is deficient (γ = 0, for instance) one extra Kraus operator
    /// I − Π_supp is appended; it annihilates every state supported inside
    /// supp E(P), so the completed channel acts identically to the Petz map
    /// on all noisy code states while admitting a unitary dilation.
    pub fn tp_completed_channel(&self) -> Result<KrausChannel> {
        let dim = self.noise.dim;
        let deficiency = crate::linalg::identity(dim) - &self.support_projector;
        let mut kraus = self.kraus.clone();
        if operator_norm(&deficiency) > 1e-9 {
            kraus.push(deficiency);
        }
        KrausChannel::new(kraus, "petz-tp")
    }

    pub fn to_json(&self) -> PetzJson {
        PetzJson {
            dim: self.noise.dim,
            scale: self.scale,
            kraus: self.kraus.iter().map(jsonio::flat_from_matrix).collect(),
        }
    }
}

/// Export format for the recovery Kraus list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PetzJson {
    pub dim: usize,
    pub scale: f64,
    pub kraus: Vec<Vec<Pair>>,
}

/// Code-specific Petz map: Rᵢ = P·Eᵢ†·E(P)^(−1/2).
pub fn construct_code_petz(code: &QuantumCode, noise: &KrausChannel) -> Result<PetzMap> {
    if noise.dim != code.dim() {
        return Err(Error::DimMismatch(format!(
            "noise acts on dim {}, code lives in dim {}",
            noise.dim,
            code.dim()
        )));
    }
    let p = code.projector.clone();
    let ep = noise.apply_to_operator(&p);
    let ep_inv_sqrt = pinv_sqrt(&ep, None)?;
    let support = support_projector(&ep, None)?;
    let kraus: Vec<CMatrix> = noise
        .kraus
        .iter()
        .map(|e| &p * e.adjoint() * &ep_inv_sqrt)
        .collect();
    Ok(PetzMap {
        noise: noise.clone(),
        sigma_or_p: p,
        scale: operator_norm(&ep_inv_sqrt),
        ep,
        ep_inv_sqrt,
        kraus,
        support_projector: support,
    })
}

/// State-specific Petz map: Rᵢ = √σ·Eᵢ†·E(σ)^(−1/2).
pub fn construct_state_petz(sigma: &CMatrix, noise: &KrausChannel) -> Result<PetzMap> {
    if noise.dim != sigma.nrows() {
        return Err(Error::DimMismatch(format!(
            "noise acts on dim {}, sigma is {}x{}",
            noise.dim,
            sigma.nrows(),
            sigma.ncols()
        )));
    }
    if hermiticity_error(sigma) > 1e-9 {
        return Err(Error::NotDensity("sigma is not Hermitian".into()));
    }
    if (sigma.trace().re - 1.0).abs() > 1e-9 {
        return Err(Error::NotDensity(format!(
            "sigma has trace {}",
            sigma.trace().re
        )));
    }
    let sqrt_sigma = psd_sqrt(sigma).map_err(|_| Error::NotDensity("sigma is not PSD".into()))?;
    let ep = noise.apply_to_operator(sigma);
    let ep_inv_sqrt = pinv_sqrt(&ep, None)?;
    let support = support_projector(&ep, None)?;
    let kraus: Vec<CMatrix> = noise
        .kraus
        .iter()
        .map(|e| &sqrt_sigma * e.adjoint() * &ep_inv_sqrt)
        .collect();
    Ok(PetzMap {
        noise: noise.clone(),
        sigma_or_p: sqrt_sigma,
        scale: operator_norm(&ep_inv_sqrt),
        ep,
        ep_inv_sqrt,
        kraus,
        support_projector: support,
    })
}

/// F²(|ψ⟩, ρ) = ⟨ψ|ρ|ψ⟩.
pub fn fidelity(psi: &CVector, rho: &CMatrix) -> Result<f64> {
    if rho.nrows() != psi.len() || rho.ncols() != psi.len() {
        return Err(Error::DimMismatch(format!(
            "state dim {} vs matrix {}x{}",
            psi.len(),
            rho.nrows(),
            rho.ncols()
        )));
    }
    let val: Complex64 = (psi.adjoint() * rho * psi)[(0, 0)];
    assert!(
        val.im.abs() < 1e-12,
        "fidelity has imaginary part {:.3e}",
        val.im
    );
    Ok(val.re)
}

/// Codespace fidelity evaluator specialized to k = 1: precomputes the 2×2
/// logical blocks ⟨a_L|K|b_L⟩ of every Kraus operator, after which each
/// evaluation of F²(θ, φ) costs a handful of flops per Kraus operator.
pub struct CodespaceFidelity {
    blocks: Vec<[[Complex64; 2]; 2]>,
}

impl CodespaceFidelity {
    pub fn new(code: &QuantumCode, composite: &KrausChannel) -> Result<Self> {
        if code.k != 1 {
            return Err(Error::Unsupported(
                "worst-case fidelity is implemented for k = 1 codes".into(),
            ));
        }
        if composite.dim != code.dim() {
            return Err(Error::DimMismatch(format!(
                "channel dim {} vs code dim {}",
                composite.dim,
                code.dim()
            )));
        }
        let blocks = composite
            .kraus
            .iter()
            .map(|k| {
                let mut b = [[Complex64::new(0.0, 0.0); 2]; 2];
                for (a, wa) in code.codewords.iter().enumerate() {
                    let kw_b: Vec<CVector> =
                        code.codewords.iter().map(|wb| k * wb).collect();
                    for (bidx, kwb) in kw_b.iter().enumerate() {
                        b[a][bidx] = wa.dotc(kwb);
                    }
                }
                b
            })
            .collect();
        Ok(Self { blocks })
    }

    /// F² for the codespace state cos(θ/2)|0_L⟩ + e^(iφ) sin(θ/2)|1_L⟩.
    pub fn eval(&self, theta: f64, phi: f64) -> f64 {
        let c = Complex64::new((theta * 0.5).cos(), 0.0);
        let s = Complex64::from_polar((theta * 0.5).sin(), phi);
        let mut total = 0.0;
        for m in &self.blocks {
            let amp = c.conj() * (m[0][0] * c + m[0][1] * s) + s.conj() * (m[1][0] * c + m[1][1] * s);
            total += amp.norm_sqr();
        }
        total
    }
}

/// Worst-case fidelity min over pure codespace states of
/// ⟨ψ|composite(|ψ⟩⟨ψ|)|ψ⟩, via a 64×64 (θ, φ) grid followed by pattern
/// search refinement to 1e-8 in F².
pub fn worst_case_fidelity(
    code: &QuantumCode,
    composite: &KrausChannel,
) -> Result<(f64, CVector)> {
    let eval = CodespaceFidelity::new(code, composite)?;
    let pi = std::f64::consts::PI;
    let (n_theta, n_phi) = (64usize, 64usize);
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = pi * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * pi * j as f64 / n_phi as f64;
            grid.push((eval.eval(theta, phi), theta, phi));
        }
    }
    grid.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // The surface can have several shallow basins; refine the best grid
    // candidates independently and keep the deepest result.
    let mut best = grid[0];
    for &(f2_start, t_start, p_start) in grid.iter().take(16) {
        let refined = pattern_search(&eval, f2_start, t_start, p_start);
        if refined.0 < best.0 {
            best = refined;
        }
    }
    let (f2, theta, phi) = best;
    let psi = CVector::from_vec(vec![
        cr((theta * 0.5).cos()),
        Complex64::from_polar((theta * 0.5).sin(), phi),
    ]);
    let argmin = encode(code, &psi)?;
    Ok((f2, argmin))
}

/// Worst-case fidelity over the real-amplitude state family
/// cos(θ/2)|0_L⟩ + sin(θ/2)|1_L⟩ — the family the sweep experiments
/// prepare. 1024-point θ grid plus local refinement.
pub fn worst_case_fidelity_real(
    code: &QuantumCode,
    composite: &KrausChannel,
) -> Result<(f64, CVector)> {
    let eval = CodespaceFidelity::new(code, composite)?;
    let pi = std::f64::consts::PI;
    let n_theta = 1024usize;
    let mut best = (f64::INFINITY, 0.0f64);
    for i in 0..n_theta {
        let theta = pi * i as f64 / (n_theta - 1) as f64;
        let f2 = eval.eval(theta, 0.0);
        if f2 < best.0 {
            best = (f2, theta);
        }
    }
    let (mut f2, mut theta) = best;
    let mut step = pi / (n_theta - 1) as f64;
    for _ in 0..200 {
        let mut improved = false;
        for dt in [step, -step] {
            let t = (theta + dt).clamp(0.0, pi);
            let cand = eval.eval(t, 0.0);
            if cand < f2 {
                f2 = cand;
                theta = t;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    let psi = CVector::from_vec(vec![cr((theta * 0.5).cos()), cr((theta * 0.5).sin())]);
    let argmin = encode(code, &psi)?;
    Ok((f2, argmin))
}

fn pattern_search(
    eval: &CodespaceFidelity,
    f2_start: f64,
    theta_start: f64,
    phi_start: f64,
) -> (f64, f64, f64) {
    let pi = std::f64::consts::PI;
    let (mut f2, mut theta, mut phi) = (f2_start, theta_start, phi_start);
    let mut step_t = pi / 63.0;
    let mut step_p = 2.0 * pi / 64.0;
    for _ in 0..400 {
        let mut improved = false;
        for (dt, dp) in [
            (step_t, 0.0),
            (-step_t, 0.0),
            (0.0, step_p),
            (0.0, -step_p),
            (step_t, step_p),
            (step_t, -step_p),
            (-step_t, step_p),
            (-step_t, -step_p),
        ] {
            let t = (theta + dt).clamp(0.0, pi);
            let p = phi + dp;
            let cand = eval.eval(t, p);
            if cand < f2 {
                f2 = cand;
                theta = t;
                phi = p;
                improved = true;
            }
        }
        if !improved {
            step_t *= 0.5;
            step_p *= 0.5;
            if step_t < 1e-9 * pi {
                break;
            }
        }
    }
    (f2, theta, phi)
}
