//! Density operators over explicit tensor-product layouts, projective
//! observables, ensembles, and seeded random state generation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, hermiticity_defect, identity, kron, max_abs, partial_trace, symmetrize,
    trace_re, CMatrix, CVector, HERMITICITY_TOL, PSD_CLIP,
};

/// Tensor-product structure of a multipartite Hilbert space.
///
/// Subsystem 0 is the most significant tensor factor, matching the index
/// convention of [`kron`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::LayoutMismatch(format!(
                "subsystem dimensions must be non-empty and positive, got {dims:?}"
            )));
        }
        Ok(Self { dims })
    }

    pub fn single(d: usize) -> Self {
        Self { dims: vec![d] }
    }

    pub fn qubit_pair() -> Self {
        Self { dims: vec![2, 2] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn dim_of(&self, slot: usize) -> Result<usize> {
        self.dims.get(slot).copied().ok_or_else(|| {
            Error::LayoutMismatch(format!(
                "subsystem {slot} out of range for {} subsystems",
                self.dims.len()
            ))
        })
    }

    /// Product of the dimensions of every subsystem except `slot`.
    pub fn rest_dim(&self, slot: usize) -> Result<usize> {
        Ok(self.total_dim() / self.dim_of(slot)?)
    }

    pub fn appended(&self, d: usize) -> Self {
        let mut dims = self.dims.clone();
        dims.push(d);
        Self { dims }
    }

    pub fn keeping(&self, keep: &[usize]) -> Result<Self> {
        let dims: Result<Vec<usize>> = keep.iter().map(|&k| self.dim_of(k)).collect();
        Self::new(dims?)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims }
    }
}

/// A positive semidefinite, unit-trace operator with an attached layout.
///
/// Construction symmetrizes the matrix, rejects inputs that are not
/// Hermitian, unit-trace, and positive within tolerance, clips eigenvalues in
/// `[-1e-10, 0)` to zero, and renormalizes the trace.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: CMatrix,
    layout: SubsystemLayout,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix, layout: SubsystemLayout) -> Result<Self> {
        if matrix.nrows() != layout.total_dim() || matrix.ncols() != layout.total_dim() {
            return Err(Error::LayoutMismatch(format!(
                "matrix is {}x{} but layout {:?} has total dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                layout.dims(),
                layout.total_dim()
            )));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let matrix = symmetrize(&matrix);
        let trace = trace_re(&matrix);
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = eig_hermitian(&matrix)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -PSD_CLIP {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        let mut matrix = if min < 0.0 {
            eig.apply(|v| v.max(0.0))
        } else {
            matrix
        };
        let trace = trace_re(&matrix);
        matrix.iter_mut().for_each(|z| *z /= trace);
        Ok(Self { matrix, layout })
    }

    /// Skip revalidation for matrices that are positive and unit-trace by
    /// construction (channel outputs, convex mixtures of valid states).
    pub(crate) fn from_trusted(matrix: CMatrix, layout: SubsystemLayout) -> Self {
        Self {
            matrix: symmetrize(&matrix),
            layout,
        }
    }

    pub fn from_pure(vector: &CVector, layout: SubsystemLayout) -> Result<Self> {
        if vector.len() != layout.total_dim() {
            return Err(Error::LayoutMismatch(format!(
                "vector length {} does not match layout dimension {}",
                vector.len(),
                layout.total_dim()
            )));
        }
        let norm = vector.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm });
        }
        let matrix = vector * vector.adjoint();
        Ok(Self::from_trusted(matrix, layout))
    }

    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let d = layout.total_dim();
        let matrix = identity(d).map(|z| z / d as f64);
        Self { matrix, layout }
    }

    /// Convex mixture of states sharing one layout.
    pub fn mixture(parts: &[(f64, &DensityOperator)]) -> Result<Self> {
        let ens: Vec<(f64, DensityOperator)> =
            parts.iter().map(|(w, s)| (*w, (*s).clone())).collect();
        let (weights, members): (Vec<f64>, Vec<DensityOperator>) = ens.into_iter().unzip();
        Ensemble::new(weights, members).map(|e| e.average())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.total_dim()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig_hermitian(&self.matrix)
            .expect("density operators stay Hermitian")
            .values
    }

    pub fn purity(&self) -> f64 {
        trace_re(&(&self.matrix * &self.matrix))
    }

    /// Partial trace down to the listed subsystems (in increasing order).
    pub fn reduced(&self, keep: &[usize]) -> Result<Self> {
        let matrix = partial_trace(&self.matrix, self.layout.dims(), keep)?;
        Ok(Self::from_trusted(matrix, self.layout.keeping(keep)?))
    }

    /// Tensor product; the layouts concatenate.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_trusted(
            kron(&self.matrix, &other.matrix),
            self.layout.concat(&other.layout),
        )
    }

    pub fn distance_to(&self, other: &Self) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            c(0.0),
        ],
    )
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Rank-one spin projectors along the unit vector
/// `u = (cos(theta) sin(phi), sin(theta) sin(phi), cos(phi))`:
/// `P_± = (1 ± u·sigma)/2`.
pub fn spin_projectors(theta: f64, phi: f64) -> (CMatrix, CMatrix) {
    let u = [
        theta.cos() * phi.sin(),
        theta.sin() * phi.sin(),
        phi.cos(),
    ];
    let n = pauli_x().map(|z| z * u[0]) + pauli_y().map(|z| z * u[1]) + pauli_z().map(|z| z * u[2]);
    let plus = (identity(2) + &n).map(|z| z * 0.5);
    let minus = (identity(2) - &n).map(|z| z * 0.5);
    (plus, minus)
}

/// A nondegenerate projective observable acting on one subsystem: a complete
/// family of rank-one orthogonal projectors.
#[derive(Debug, Clone)]
pub struct ProjectiveObservable {
    subsystem: usize,
    projectors: Vec<CMatrix>,
    outcomes: Option<Vec<f64>>,
}

impl ProjectiveObservable {
    pub fn new(
        subsystem: usize,
        projectors: Vec<CMatrix>,
        outcomes: Option<Vec<f64>>,
    ) -> Result<Self> {
        if projectors.len() < 2 {
            return Err(Error::InvalidObservable(
                "need at least two projectors".into(),
            ));
        }
        let d = projectors[0].nrows();
        if projectors.len() != d {
            return Err(Error::InvalidObservable(format!(
                "a nondegenerate observable on dimension {d} needs exactly {d} rank-one projectors, got {}",
                projectors.len()
            )));
        }
        for p in &projectors {
            if p.nrows() != d || p.ncols() != d {
                return Err(Error::InvalidObservable(
                    "projectors must share one square dimension".into(),
                ));
            }
            if hermiticity_defect(p) > HERMITICITY_TOL {
                return Err(Error::InvalidObservable("projector not Hermitian".into()));
            }
            if (trace_re(p) - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidObservable(
                    "projector is not rank one (degenerate observables are rejected)".into(),
                ));
            }
        }
        let mut sum = CMatrix::zeros(d, d);
        for (i, p) in projectors.iter().enumerate() {
            for (j, q) in projectors.iter().enumerate() {
                let prod = p * q;
                let expect = if i == j { p.clone() } else { CMatrix::zeros(d, d) };
                if max_abs(&(prod - expect)) > 1e-10 {
                    return Err(Error::InvalidObservable(format!(
                        "projectors {i} and {j} are not orthogonal idempotents"
                    )));
                }
            }
            sum += p;
        }
        if max_abs(&(sum - identity(d))) > 1e-10 {
            return Err(Error::InvalidObservable(
                "projectors do not resolve the identity".into(),
            ));
        }
        if let Some(o) = &outcomes {
            if o.len() != projectors.len() {
                return Err(Error::InvalidObservable(
                    "outcome list length does not match projector count".into(),
                ));
            }
        }
        Ok(Self {
            subsystem,
            projectors,
            outcomes,
        })
    }

    /// Build from an orthonormal basis, one projector per basis vector.
    pub fn from_basis(subsystem: usize, basis: &[CVector]) -> Result<Self> {
        let projectors = basis.iter().map(|v| v * v.adjoint()).collect();
        Self::new(subsystem, projectors, None)
    }

    /// The computational basis observable on a `d`-dimensional subsystem.
    pub fn computational(subsystem: usize, d: usize) -> Self {
        let projectors = (0..d)
            .map(|k| {
                let mut v = CVector::zeros(d);
                v[k] = Complex64::new(1.0, 0.0);
                &v * v.adjoint()
            })
            .collect();
        Self::new(subsystem, projectors, None).expect("computational basis is valid")
    }

    /// Qubit spin observable along `(theta, phi)`; see [`spin_projectors`].
    pub fn spin(subsystem: usize, theta: f64, phi: f64) -> Self {
        let (plus, minus) = spin_projectors(theta, phi);
        Self::new(subsystem, vec![plus, minus], Some(vec![1.0, -1.0]))
            .expect("spin projectors are valid")
    }

    pub fn subsystem(&self) -> usize {
        self.subsystem
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].nrows()
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    pub fn outcomes(&self) -> Option<&[f64]> {
        self.outcomes.as_deref()
    }

    /// Same projectors re-attached to a different subsystem index.
    pub fn on_subsystem(&self, subsystem: usize) -> Self {
        Self {
            subsystem,
            projectors: self.projectors.clone(),
            outcomes: self.outcomes.clone(),
        }
    }
}

/// A finite ensemble `{(p_i, rho_i)}` over one layout.
#[derive(Debug, Clone)]
pub struct Ensemble {
    weights: Vec<f64>,
    members: Vec<DensityOperator>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, members: Vec<DensityOperator>) -> Result<Self> {
        if weights.is_empty() || weights.len() != members.len() {
            return Err(Error::InvalidEnsemble(format!(
                "got {} weights for {} members",
                weights.len(),
                members.len()
            )));
        }
        if weights.iter().any(|&w| w < -1e-12) {
            return Err(Error::InvalidEnsemble("negative weight".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidEnsemble(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        let layout = members[0].layout().clone();
        if members.iter().any(|m| m.layout() != &layout) {
            return Err(Error::InvalidEnsemble(
                "members must share one layout".into(),
            ));
        }
        let weights = weights.iter().map(|w| w.max(0.0) / sum).collect();
        Ok(Self { weights, members })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[DensityOperator] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The barycenter `sum_i p_i rho_i`.
    pub fn average(&self) -> DensityOperator {
        let d = self.members[0].dim();
        let mut acc = CMatrix::zeros(d, d);
        for (w, m) in self.weights.iter().zip(&self.members) {
            acc += m.matrix().map(|z| z * *w);
        }
        DensityOperator::from_trusted(acc, self.members[0].layout().clone())
    }
}

/// Deterministic, seedable stream used everywhere randomness is needed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Ginibre matrix: independent standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random density operator `G G† / tr(G G†)` with `G` a `d x rank` Ginibre
/// matrix; `rank` controls the rank of the output almost surely.
pub fn random_density<R: Rng + ?Sized>(
    layout: SubsystemLayout,
    rank: usize,
    rng: &mut R,
) -> Result<DensityOperator> {
    let d = layout.total_dim();
    if rank == 0 || rank > d {
        return Err(Error::BadRank { rank, dim: d });
    }
    let g = ginibre(d, rank, rng);
    let m = &g * g.adjoint();
    let tr = trace_re(&m);
    Ok(DensityOperator::from_trusted(
        m.map(|z| z / tr),
        layout,
    ))
}

/// Same sampler, owning its stream: identical `(seed, layout, rank)` inputs
/// produce bit-identical states.
pub fn random_density_seeded(
    layout: SubsystemLayout,
    rank: usize,
    seed: u64,
) -> Result<DensityOperator> {
    random_density(layout, rank, &mut seeded_rng(seed))
}

/// Haar-random pure state.
pub fn haar_pure<R: Rng + ?Sized>(layout: SubsystemLayout, rng: &mut R) -> DensityOperator {
    let d = layout.total_dim();
    let mut v = CVector::from_fn(d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    v.iter_mut().for_each(|z| *z /= norm);
    DensityOperator::from_pure(&v, layout).expect("normalized by construction")
}

/// Haar-random unitary: QR of a Ginibre matrix with the R diagonal phases
/// absorbed into Q.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(d, d, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 {
            rkk / rkk.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        q.column_mut(k).iter_mut().for_each(|z| *z *= phase);
    }
    q
}

/// Random nondegenerate observable from the columns of a Haar unitary.
pub fn random_observable<R: Rng + ?Sized>(
    subsystem: usize,
    d: usize,
    rng: &mut R,
) -> ProjectiveObservable {
    let u = haar_unitary(d, rng);
    let basis: Vec<CVector> = (0..d).map(|k| u.column(k).into_owned()).collect();
    ProjectiveObservable::from_basis(subsystem, &basis).expect("unitary columns are orthonormal")
}

/// The two-qubit singlet `(|01> - |10>)/sqrt(2)`.
pub fn singlet() -> DensityOperator {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = CVector::from_vec(vec![c(0.0), c(s), c(-s), c(0.0)]);
    DensityOperator::from_pure(&v, SubsystemLayout::qubit_pair()).unwrap()
}

/// Singlet fraction `eps` mixed into white noise:
/// `rho = (1 - eps) 1/4 + eps |psi_s><psi_s|`.
pub fn werner(eps: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::EpsilonOutOfRange(eps));
    }
    let mixed = DensityOperator::maximally_mixed(SubsystemLayout::qubit_pair());
    let s = singlet();
    DensityOperator::mixture(&[(1.0 - eps, &mixed), (eps, &s)])
}

/// One-parameter two-qubit family interpolating between the even-parity Bell
/// state (`mu = 1`) and the classical odd-parity mixture (`mu = 0`):
/// `rho = [1 + mu (sx ox sx - sy ox sy) + (2 mu - 1) sz ox sz] / 4`.
pub fn parity_family(mu: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::LayoutMismatch(format!(
            "family parameter must lie in [0, 1], got {mu}"
        )));
    }
    let xx = kron(&pauli_x(), &pauli_x());
    let yy = kron(&pauli_y(), &pauli_y());
    let zz = kron(&pauli_z(), &pauli_z());
    let m = (identity(4) + (xx - yy).map(|z| z * mu) + zz.map(|z| z * (2.0 * mu - 1.0)))
        .map(|z| z * 0.25);
    DensityOperator::new(m, SubsystemLayout::qubit_pair())
}
