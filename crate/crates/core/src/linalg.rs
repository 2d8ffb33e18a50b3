//! Dense complex linear algebra: decompositions, matrix functions and
//! unitary completion.
//!
//! All distances are measured in the operator norm (largest singular value).
//! Decompositions are backed by `nalgebra` and re-sorted into the fixed
//! orders used throughout the crate: eigenvalues ascending, singular values
//! descending. Unitary completion is a deterministic Gram-Schmidt sweep over
//! the canonical basis, so identical inputs yield bit-identical outputs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Dense complex matrix, the substrate for all operators, states and gates.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex vector (pure states, matrix columns).
pub type CVector = DVector<Complex64>;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Computational basis vector |idx⟩ in the given dimension.
pub fn basis_vector(dim: usize, idx: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[idx] = C_ONE;
    v
}

/// Rank-one projector |v⟩⟨v|.
pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Hermitian eigendecomposition, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermEigResult {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, matching `eigenvalues`.
    pub eigenvectors: CMatrix,
}

/// Singular value decomposition A = U · diag(σ) · V†, σ descending.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: CMatrix,
    /// Singular values in descending order, non-negative.
    pub singular_values: Vec<f64>,
    pub v: CMatrix,
}

/// Operator norm ‖A‖ (largest singular value).
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Operator-norm distance between two matrices.
pub fn op_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    operator_norm(&(a - b))
}

/// Deviation of A from its own adjoint, in operator norm.
pub fn hermiticity_error(a: &CMatrix) -> f64 {
    operator_norm(&(a - a.adjoint()))
}

/// Deviation of A from unitarity, ‖A†A − I‖.
pub fn unitarity_error(a: &CMatrix) -> f64 {
    let n = a.ncols();
    operator_norm(&(a.adjoint() * a - identity(n)))
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when ‖A − A†‖ > 1e-9.
pub fn herm_eig(a: &CMatrix) -> Result<HermEigResult> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimMismatch(format!(
            "herm_eig needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let dev = hermiticity_error(a);
    if dev > 1e-9 {
        return Err(Error::NotHermitian(dev));
    }
    let se = a.clone().symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        eigenvectors.set_column(col, &se.eigenvectors.column(src));
    }
    Ok(HermEigResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Singular value decomposition with singular values sorted descending.
pub fn svd(a: &CMatrix) -> SvdResult {
    let decomp = a.clone().svd(true, true);
    let u_raw = decomp.u.expect("svd computed with u");
    let v_t = decomp.v_t.expect("svd computed with v_t");
    let r = decomp.singular_values.len();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| {
        decomp.singular_values[j]
            .partial_cmp(&decomp.singular_values[i])
            .unwrap()
    });
    let singular_values: Vec<f64> = order.iter().map(|&i| decomp.singular_values[i]).collect();
    let mut u = CMatrix::zeros(u_raw.nrows(), r);
    let mut v = CMatrix::zeros(v_t.ncols(), r);
    for (col, &src) in order.iter().enumerate() {
        u.set_column(col, &u_raw.column(src));
        v.set_column(col, &v_t.row(src).adjoint().column(0));
    }
    SvdResult {
        u,
        singular_values,
        v,
    }
}

/// Σ λᵢ^(−1/2) |vᵢ⟩⟨vᵢ| over eigenvalues above the cutoff.
///
/// `tol` defaults to 1e-10·‖A‖. A retained eigenvalue below −tol means the
/// input was not PSD and produces [`Error::NotPsd`].
pub fn pinv_sqrt(a: &CMatrix, tol: Option<f64>) -> Result<CMatrix> {
    let eig = herm_eig(a)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let cutoff = tol.unwrap_or(1e-10 * scale);
    let n = a.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -cutoff {
            return Err(Error::NotPsd(lambda));
        }
        if lambda > cutoff {
            let v = eig.eigenvectors.column(i).clone_owned();
            out += projector(&v) * cr(1.0 / lambda.sqrt());
        }
    }
    Ok(out)
}

/// Projector onto the eigenspace of A with eigenvalues above the cutoff.
pub fn support_projector(a: &CMatrix, tol: Option<f64>) -> Result<CMatrix> {
    let eig = herm_eig(a)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let cutoff = tol.unwrap_or(1e-10 * scale);
    let n = a.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > cutoff {
            let v = eig.eigenvectors.column(i).clone_owned();
            out += projector(&v);
        }
    }
    Ok(out)
}

/// Square root of a Hermitian PSD matrix (eigenvalues below the cutoff are
/// clamped to zero).
pub fn psd_sqrt(a: &CMatrix) -> Result<CMatrix> {
    let eig = herm_eig(a)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let cutoff = 1e-12 * scale.max(1.0);
    let n = a.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -1e-9 * scale.max(1.0) {
            return Err(Error::NotPsd(lambda));
        }
        if lambda > cutoff {
            let v = eig.eigenvectors.column(i).clone_owned();
            out += projector(&v) * cr(lambda.sqrt());
        }
    }
    Ok(out)
}

/// Polar decomposition K = U·P with U unitary and P = sqrt(K†K) PSD.
///
/// Singular pairs are matched in descending-σ order. On the null space —
/// where the SVD leaves the factors arbitrary — both singular bases are
/// completed by the canonical Gram-Schmidt sweep, so the unitary factor is
/// deterministic and varies smoothly with the input away from rank changes.
/// A zero input returns (I, 0) by convention.
pub fn polar(k: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    if k.nrows() != k.ncols() {
        return Err(Error::DimMismatch(format!(
            "polar needs a square matrix, got {}x{}",
            k.nrows(),
            k.ncols()
        )));
    }
    let n = k.nrows();
    if k.iter().all(|z| z.norm_sqr() == 0.0) {
        return Ok((identity(n), CMatrix::zeros(n, n)));
    }
    let dec = svd(k);
    let sigma = CMatrix::from_diagonal(&CVector::from_iterator(
        n,
        dec.singular_values.iter().map(|&s| cr(s)),
    ));
    let p = &dec.v * sigma * dec.v.adjoint();
    let rank = dec
        .singular_values
        .iter()
        .take_while(|&&s| s > 1e-12 * dec.singular_values[0])
        .count();
    let u = if rank == n {
        &dec.u * dec.v.adjoint()
    } else {
        let w_ext = complete_to_unitary(&dec.u.columns(0, rank).clone_owned())?;
        let v_ext = complete_to_unitary(&dec.v.columns(0, rank).clone_owned())?;
        w_ext * v_ext.adjoint()
    };
    Ok((u, p))
}

/// Extends `cols` (orthonormal columns of height D) to a D×D unitary.
///
/// The first columns equal the input exactly; the remainder comes from a
/// twice-iterated Gram-Schmidt sweep over canonical basis vectors in index
/// order, skipping the dependent ones. Deterministic.
pub fn complete_to_unitary(cols: &CMatrix) -> Result<CMatrix> {
    let d = cols.nrows();
    let c = cols.ncols();
    if c > d {
        return Err(Error::DimMismatch(format!(
            "more columns ({c}) than rows ({d})"
        )));
    }
    let gram = cols.adjoint() * cols;
    let dev = operator_norm(&(gram - identity(c)));
    if dev > 1e-9 {
        return Err(Error::NotIsometry(dev));
    }
    let mut out = CMatrix::zeros(d, d);
    for j in 0..c {
        out.set_column(j, &cols.column(j));
    }
    let mut count = c;
    for j in 0..d {
        if count == d {
            break;
        }
        let mut v = basis_vector(d, j);
        // Two passes of classical Gram-Schmidt keep orthogonality near
        // machine precision even when the candidate is almost dependent.
        for _ in 0..2 {
            for k in 0..count {
                let col = out.column(k);
                let overlap: Complex64 = col.dotc(&v);
                v -= col * overlap;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            v /= cr(norm);
            out.set_column(count, &v);
            count += 1;
        }
    }
    if count < d {
        return Err(Error::Numerical(format!(
            "unitary completion found only {count} of {d} columns"
        )));
    }
    Ok(out)
}

/// Partial trace over the listed subsystems.
///
/// `dims` are the subsystem dimensions with index 0 the most significant
/// factor; `traced` lists the subsystem indices to trace out.
pub fn partial_trace(rho: &CMatrix, dims: &[usize], traced: &[usize]) -> CMatrix {
    let total: usize = dims.iter().product();
    assert_eq!(rho.nrows(), total, "partial_trace dimension mismatch");
    assert_eq!(rho.ncols(), total, "partial_trace dimension mismatch");
    let is_traced: Vec<bool> = (0..dims.len()).map(|i| traced.contains(&i)).collect();
    let kept_dim: usize = dims
        .iter()
        .zip(&is_traced)
        .filter(|(_, &t)| !t)
        .map(|(&d, _)| d)
        .product();

    // Strides of each subsystem in the flattened index (most significant first).
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let kept: Vec<usize> = (0..dims.len()).filter(|i| !is_traced[*i]).collect();
    let traced_list: Vec<usize> = (0..dims.len()).filter(|i| is_traced[*i]).collect();
    let traced_dim: usize = traced_list.iter().map(|&i| dims[i]).product();

    let mut out = CMatrix::zeros(kept_dim, kept_dim);
    // Enumerate kept row/col indices and sum over the traced diagonal.
    for row_k in 0..kept_dim {
        let row_base = compose_index(row_k, &kept, dims, &strides);
        for col_k in 0..kept_dim {
            let col_base = compose_index(col_k, &kept, dims, &strides);
            let mut acc = C_ZERO;
            for t in 0..traced_dim {
                let off = compose_index(t, &traced_list, dims, &strides);
                acc += rho[(row_base + off, col_base + off)];
            }
            out[(row_k, col_k)] = acc;
        }
    }
    out
}

/// Maps a packed index over the `subset` subsystems to its contribution in
/// the full flattened index.
fn compose_index(packed: usize, subset: &[usize], dims: &[usize], strides: &[usize]) -> usize {
    let mut rest = packed;
    let mut out = 0usize;
    for &sub in subset.iter().rev() {
        let d = dims[sub];
        out += (rest % d) * strides[sub];
        rest /= d;
    }
    out
}

/// Standard-normal complex entries (Box-Muller), for randomized tests.
pub fn random_complex_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let u1: f64 = rng.random::<f64>().max(1e-12);
        let u2: f64 = rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        cx(
            r * (2.0 * std::f64::consts::PI * u2).cos(),
            r * (2.0 * std::f64::consts::PI * u2).sin(),
        ) * cr(std::f64::consts::FRAC_1_SQRT_2)
    })
}

/// Haar-distributed random unitary via QR with phase fixing.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    let a = random_complex_matrix(dim, dim, rng);
    let qr = a.qr();
    let r_diag: Vec<Complex64> = (0..dim).map(|i| qr.r()[(i, i)]).collect();
    let mut q = qr.q();
    for (i, d) in r_diag.iter().enumerate() {
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C_ONE };
        let col = q.column(i) * phase;
        q.set_column(i, &col);
    }
    q
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    let a = random_complex_matrix(dim, dim, rng);
    (&a + a.adjoint()) * cr(0.5)
}

/// Haar-random pure state.
pub fn random_state<R: Rng>(dim: usize, rng: &mut R) -> CVector {
    let m = random_complex_matrix(dim, 1, rng);
    let v = m.column(0).clone_owned();
    let n = v.norm();
    v / cr(n)
}
