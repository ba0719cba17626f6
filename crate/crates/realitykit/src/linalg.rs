//! Dense complex matrix helpers shared by the whole crate.
//!
//! Everything operates on [`CMatrix`] (`nalgebra::DMatrix<Complex64>`).
//! Hermitian eigendecompositions are the workhorse: spectral functions,
//! partial traces, support projectors, and operator norms all route through
//! [`eig_hermitian`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest entrywise deviation from `M = M†` tolerated before an input is
/// rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Eigenvalues in `[-PSD_CLIP, 0)` are treated as floating-point noise and
/// clipped to zero; anything more negative fails positivity checks.
pub const PSD_CLIP: f64 = 1e-10;

/// Relative spectral cutoff: eigenvalues below `SUPPORT_CUTOFF * lambda_max`
/// count as zero when building support projectors and matrix powers.
pub const SUPPORT_CUTOFF: f64 = 1e-10;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn trace_re(m: &CMatrix) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// Largest entrywise modulus, used as an absolute scale for tolerances.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `M - M†`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows().min(m.ncols());
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::LayoutMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows())
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues, largest first.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, same order as `values`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// `V diag(f(lambda)) V†`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (k, &v) in self.values.iter().enumerate() {
            let fv = f(v);
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= fv);
        }
        let m = scaled * self.vectors.adjoint();
        symmetrize(&m)
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|x| x)
    }

    /// Absolute cutoff below which eigenvalues count as zero for this matrix.
    pub fn support_cutoff(&self) -> f64 {
        let scale = self
            .values
            .iter()
            .map(|v| v.abs())
            .fold(0.0_f64, f64::max);
        SUPPORT_CUTOFF * scale
    }
}

/// `(M + M†)/2`, removing floating-point asymmetry.
pub fn symmetrize(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Rejects inputs whose asymmetry exceeds [`HERMITICITY_TOL`]; the
/// decomposition itself runs on the symmetrized matrix so the reconstruction
/// `V diag(lambda) V†` matches the input to the same tolerance.
///
/// Uses cyclic Jacobi rotations rather than the QR-based solver, which keeps
/// the eigenvectors exactly unitary and stays accurate on the clustered and
/// exactly degenerate spectra produced by tensor powers and dephasing.
pub fn eig_hermitian(m: &CMatrix) -> Result<HermitianEigen> {
    let defect = hermiticity_defect(m);
    if defect > HERMITICITY_TOL * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    let n = check_square(m)?;
    let mut a = symmetrize(m);
    let mut vectors = CMatrix::identity(n, n);
    let scale = max_abs(&a);
    if scale > 0.0 {
        let stop = n as f64 * f64::EPSILON * scale;
        let skip = 0.01 * f64::EPSILON * scale;
        for _sweep in 0..60 {
            let mut off: f64 = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= stop {
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut vectors, p, q, skip);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].re.total_cmp(&a[(x, x)].re));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut sorted = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sorted.set_column(dst, &vectors.column(src));
    }
    Ok(HermitianEigen {
        values,
        vectors: sorted,
    })
}

/// One Jacobi step: a unitary rotation in the `(p, q)` plane that zeroes
/// `a[(p, q)]`, applied as `A <- G† A G` and accumulated into `V <- V G`.
fn jacobi_rotate(a: &mut CMatrix, vectors: &mut CMatrix, p: usize, q: usize, skip: f64) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= skip {
        return;
    }
    let phase = apq / r;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = -sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.nrows();
    // Column update A <- A G with G = [[c, -s], [s e^{-i phi}, c e^{-i phi}]]
    // in the (p, q) plane, then the matching row update A <- G† A.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)] * phase.conj();
        a[(i, p)] = aip * c + aiq * s;
        a[(i, q)] = -aip * s + aiq * c;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)] * phase;
        a[(p, j)] = apj * c + aqj * s;
        a[(q, j)] = -apj * s + aqj * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for i in 0..vectors.nrows() {
        let vip = vectors[(i, p)];
        let viq = vectors[(i, q)] * phase.conj();
        vectors[(i, p)] = vip * c + viq * s;
        vectors[(i, q)] = -vip * s + viq * c;
    }
}

/// Spectral application of a scalar function to a Hermitian matrix.
///
/// Eigenvalues within the support cutoff of zero are replaced by exact zero
/// before `f` is applied; the conventions `0 ln 0 = 0` and `0^a = 0` are the
/// caller's responsibility inside `f`. A non-finite `f(lambda)` is an error.
pub fn matrix_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let eig = eig_hermitian(m)?;
    let cutoff = eig.support_cutoff();
    let mut out = Vec::with_capacity(eig.values.len());
    for &v in &eig.values {
        let x = if v.abs() <= cutoff { 0.0 } else { v };
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::Domain { eigenvalue: x });
        }
        out.push(y);
    }
    let mut k = 0;
    Ok(eig.apply(|_| {
        let y = out[k];
        k += 1;
        y
    }))
}

/// `M^p` on the support of a positive semidefinite `M`; kernel directions map
/// to zero for every exponent, which is the pseudo-inverse convention when
/// `p < 0`.
pub fn spectral_power(m: &CMatrix, p: f64) -> Result<CMatrix> {
    let eig = eig_hermitian(m)?;
    psd_check(&eig)?;
    Ok(power_from_eig(&eig, p))
}

pub(crate) fn power_from_eig(eig: &HermitianEigen, p: f64) -> CMatrix {
    let cutoff = eig.support_cutoff();
    eig.apply(|v| if v <= cutoff { 0.0 } else { v.powf(p) })
}

pub(crate) fn psd_check(eig: &HermitianEigen) -> Result<()> {
    let scale = eig.values.first().map(|v| v.abs()).unwrap_or(0.0).max(1.0);
    if let Some(&min) = eig.values.last() {
        if min < -PSD_CLIP * scale {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
    }
    Ok(())
}

/// Projector onto the span of eigenvectors with eigenvalue above the support
/// cutoff.
pub fn support_projector(m: &CMatrix) -> Result<CMatrix> {
    let eig = eig_hermitian(m)?;
    psd_check(&eig)?;
    let cutoff = eig.support_cutoff();
    Ok(eig.apply(|v| if v > cutoff { 1.0 } else { 0.0 }))
}

/// Spectral norm of a Hermitian matrix: the largest eigenvalue modulus.
pub fn operator_norm(m: &CMatrix) -> Result<f64> {
    let eig = eig_hermitian(m)?;
    Ok(eig
        .values
        .iter()
        .map(|v| v.abs())
        .fold(0.0_f64, f64::max))
}

fn validate_dims(m: &CMatrix, dims: &[usize]) -> Result<()> {
    let total: usize = dims.iter().product();
    let n = check_square(m)?;
    if total != n || dims.is_empty() {
        return Err(Error::LayoutMismatch(format!(
            "matrix dimension {n} does not match subsystem dims {dims:?}"
        )));
    }
    Ok(())
}

fn validate_slots(dims: &[usize], slots: &[usize]) -> Result<()> {
    if slots.is_empty() || slots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::LayoutMismatch(format!(
            "subsystem indices must be non-empty and strictly increasing, got {slots:?}"
        )));
    }
    if *slots.last().unwrap() >= dims.len() {
        return Err(Error::LayoutMismatch(format!(
            "subsystem index {} out of range for {} subsystems",
            slots.last().unwrap(),
            dims.len()
        )));
    }
    Ok(())
}

/// Offsets into the flattened index space for every multi-index over `slots`.
///
/// The tensor convention is row-major with the first subsystem most
/// significant, matching [`kron`].
fn slot_offsets(dims: &[usize], slots: &[usize]) -> Vec<usize> {
    let mut stride = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * dims[k + 1];
    }
    let local: usize = slots.iter().map(|&s| dims[s]).product();
    let mut offsets = Vec::with_capacity(local);
    for mut idx in 0..local {
        let mut off = 0;
        for pos in (0..slots.len()).rev() {
            let s = slots[pos];
            off += (idx % dims[s]) * stride[s];
            idx /= dims[s];
        }
        offsets.push(off);
    }
    offsets
}

fn complement(dims: &[usize], slots: &[usize]) -> Vec<usize> {
    (0..dims.len()).filter(|k| !slots.contains(k)).collect()
}

/// Partial trace over every subsystem not listed in `keep`.
///
/// `dims` gives the dimension of each subsystem in tensor order; the result
/// lives on the kept subsystems in their original order.
pub fn partial_trace(m: &CMatrix, dims: &[usize], keep: &[usize]) -> Result<CMatrix> {
    validate_dims(m, dims)?;
    validate_slots(dims, keep)?;
    let traced = complement(dims, keep);
    let keep_offsets = slot_offsets(dims, keep);
    let dk = keep_offsets.len();
    if traced.is_empty() {
        return Ok(m.clone());
    }
    let traced_offsets = slot_offsets(dims, &traced);
    let mut out = CMatrix::zeros(dk, dk);
    for (r, &ro) in keep_offsets.iter().enumerate() {
        for (c, &co) in keep_offsets.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &to in &traced_offsets {
                acc += m[(ro + to, co + to)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Tensor product of `x` (living on `slots`) with `y` (living on the
/// remaining subsystems), laid out in the interleaved order given by `dims`.
pub fn interleave(dims: &[usize], slots: &[usize], x: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
    validate_slots(dims, slots)?;
    let rest = complement(dims, slots);
    let xo = slot_offsets(dims, slots);
    let yo = if rest.is_empty() {
        vec![0usize]
    } else {
        slot_offsets(dims, &rest)
    };
    let total: usize = dims.iter().product();
    if x.nrows() != xo.len() || y.nrows() != yo.len() {
        return Err(Error::LayoutMismatch(format!(
            "factor dimensions {}x{} do not match slots {slots:?} of {dims:?}",
            x.nrows(),
            y.nrows()
        )));
    }
    let mut out = CMatrix::zeros(total, total);
    for (rx, &rxo) in xo.iter().enumerate() {
        for (cx, &cxo) in xo.iter().enumerate() {
            let xe = x[(rx, cx)];
            if xe.norm_sqr() == 0.0 {
                continue;
            }
            for (ry, &ryo) in yo.iter().enumerate() {
                for (cy, &cyo) in yo.iter().enumerate() {
                    out[(rxo + ryo, cxo + cyo)] = xe * y[(ry, cy)];
                }
            }
        }
    }
    Ok(out)
}

/// Embed an operator acting on one subsystem into the full space, with the
/// identity on every other subsystem.
pub fn embed_at(dims: &[usize], slot: usize, op: &CMatrix) -> Result<CMatrix> {
    let rest: usize = complement(dims, &[slot]).iter().map(|&k| dims[k]).product();
    interleave(dims, &[slot], op, &identity(rest))
}
