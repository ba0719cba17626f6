//! Measurement-induced quantum operations: the unrevealed projective
//! measurement, its noisy monitoring interpolation, an explicit unitary
//! dilation with a cyclic-shift environment, outcome flagging, and
//! attach/discard maps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{embed_at, identity, kron, max_abs, partial_trace, CMatrix};
use crate::state::{DensityOperator, Ensemble, ProjectiveObservable, SubsystemLayout};

/// Unrevealed measurement of `obs` on a raw matrix over `dims`:
/// `sum_i E_i m E_i` with `E_i` the projector embedded at the observable's
/// slot. Works for any Hermitian input, not just density operators.
pub fn phi_a_matrix(
    matrix: &CMatrix,
    dims: &[usize],
    obs: &ProjectiveObservable,
) -> Result<CMatrix> {
    let slot = obs.subsystem();
    let d_total: usize = dims.iter().product();
    if matrix.nrows() != d_total || matrix.ncols() != d_total {
        return Err(Error::LayoutMismatch(format!(
            "matrix is {}x{} but dims {dims:?} give dimension {d_total}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let mut out = CMatrix::zeros(d_total, d_total);
    for p in obs.projectors() {
        let e = embed_at(dims, slot, p)?;
        out += &e * matrix * &e;
    }
    Ok(out)
}

/// The unrevealed measurement channel: projects out all coherences between
/// distinct outcomes of `obs` while revealing none of them.
pub fn phi_a(state: &DensityOperator, obs: &ProjectiveObservable) -> Result<DensityOperator> {
    let matrix = phi_a_matrix(state.matrix(), state.layout().dims(), obs)?;
    Ok(DensityOperator::from_trusted(matrix, state.layout().clone()))
}

/// Monitoring of intensity `epsilon`: the convex interpolation
/// `(1 - epsilon) rho + epsilon phi_a(rho)`.
pub fn monitoring(
    state: &DensityOperator,
    obs: &ProjectiveObservable,
    epsilon: f64,
) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    let dephased = phi_a(state, obs)?;
    let matrix =
        state.matrix().map(|z| z * (1.0 - epsilon)) + dephased.matrix().map(|z| z * epsilon);
    Ok(DensityOperator::from_trusted(
        matrix,
        state.layout().clone(),
    ))
}

/// Cyclic shift on `d` levels: maps basis vector `|j>` to `|j+1 mod d>`.
pub fn cyclic_shift(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| {
        if i == (j + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Unitary realizing the unrevealed measurement as a closed-system
/// interaction with an environment of dimension equal to the measured
/// subsystem, appended as the last layout slot.
#[derive(Debug, Clone)]
pub struct DilationUnitary {
    matrix: CMatrix,
    observable: ProjectiveObservable,
    system_layout: SubsystemLayout,
    env_dim: usize,
}

impl DilationUnitary {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn observable(&self) -> &ProjectiveObservable {
        &self.observable
    }

    pub fn system_layout(&self) -> &SubsystemLayout {
        &self.system_layout
    }

    pub fn env_dim(&self) -> usize {
        self.env_dim
    }

    /// System layout with the environment slot appended.
    pub fn total_layout(&self) -> SubsystemLayout {
        self.system_layout.appended(self.env_dim)
    }

    /// Index of the environment slot in [`Self::total_layout`].
    pub fn env_slot(&self) -> usize {
        self.system_layout.n_subsystems()
    }
}

/// Builds the dilation `U = sum_k (A_k embedded in the system) (x) C^k` with
/// `C` the cyclic shift on the environment.
pub fn stinespring_unitary(
    obs: &ProjectiveObservable,
    layout: &SubsystemLayout,
) -> Result<DilationUnitary> {
    let slot = obs.subsystem();
    let d_a = layout.dim_of(slot)?;
    if obs.dim() != d_a {
        return Err(Error::LayoutMismatch(format!(
            "observable acts on dimension {} but subsystem {slot} has dimension {d_a}",
            obs.dim()
        )));
    }
    let env_dim = d_a;
    let d_total = layout.total_dim() * env_dim;
    let shift = cyclic_shift(env_dim);
    let mut matrix = CMatrix::zeros(d_total, d_total);
    let mut power = identity(env_dim);
    for p in obs.projectors() {
        let system_part = embed_at(layout.dims(), slot, p)?;
        matrix += kron(&system_part, &power);
        power = &shift * power;
    }
    let defect = max_abs(&(matrix.adjoint() * &matrix - identity(d_total)));
    if defect > 1e-10 {
        return Err(Error::NotUnitary { defect });
    }
    Ok(DilationUnitary {
        matrix,
        observable: obs.clone(),
        system_layout: layout.clone(),
        env_dim,
    })
}

/// The environment reference state: the first computational basis vector of
/// a `d`-dimensional space, as a projector.
pub fn environment_ground(d: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    m
}

/// Couples `state` to the environment ground state and applies the dilation:
/// `U (rho (x) |e0><e0|) U†` over the extended layout.
pub fn dilate(state: &DensityOperator, unitary: &DilationUnitary) -> Result<DensityOperator> {
    if state.layout() != unitary.system_layout() {
        return Err(Error::LayoutMismatch(format!(
            "state layout {:?} does not match dilation system layout {:?}",
            state.layout().dims(),
            unitary.system_layout().dims()
        )));
    }
    let joint = kron(state.matrix(), &environment_ground(unitary.env_dim()));
    let out = unitary.matrix() * joint * unitary.matrix().adjoint();
    Ok(DensityOperator::from_trusted(out, unitary.total_layout()))
}

/// Records which ensemble member occurred in an orthogonal flag register:
/// `sum_i p_i rho_i (x) |i><i|`, with the flag appended as the last slot.
pub fn flag(ensemble: &Ensemble) -> DensityOperator {
    let n = ensemble.len();
    let d = ensemble.members()[0].dim();
    let mut out = CMatrix::zeros(d * n, d * n);
    for (i, (w, member)) in ensemble
        .weights()
        .iter()
        .zip(ensemble.members())
        .enumerate()
    {
        let mut marker = CMatrix::zeros(n, n);
        marker[(i, i)] = Complex64::new(*w, 0.0);
        out += kron(member.matrix(), &marker);
    }
    DensityOperator::from_trusted(out, ensemble.members()[0].layout().appended(n))
}

/// Appends an uncorrelated system: `rho (x) omega`.
pub fn attach(state: &DensityOperator, omega: &DensityOperator) -> DensityOperator {
    state.tensor(omega)
}

/// Traces out one subsystem. The observable is passed so its slot cannot be
/// discarded; slots above the removed one shift down by one in the result.
pub fn discard(
    state: &DensityOperator,
    subsystem: usize,
    obs: &ProjectiveObservable,
) -> Result<DensityOperator> {
    if subsystem == obs.subsystem() {
        return Err(Error::CannotDiscardObservableSubsystem);
    }
    let n = state.layout().n_subsystems();
    if subsystem >= n {
        return Err(Error::LayoutMismatch(format!(
            "subsystem {subsystem} out of range for {n} subsystems"
        )));
    }
    let keep: Vec<usize> = (0..n).filter(|&k| k != subsystem).collect();
    state.reduced(&keep)
}

/// Sanity check used by tests and the property harness: verifies that a
/// matrix is Hermitian and unitary within `tol`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let d = u.nrows();
    max_abs(&(u.adjoint() * u - identity(d)))
}

/// Partial trace over the environment slot of a dilated state.
pub fn trace_out_environment(
    dilated: &DensityOperator,
    unitary: &DilationUnitary,
) -> Result<DensityOperator> {
    let keep: Vec<usize> = (0..unitary.system_layout().n_subsystems()).collect();
    let matrix = partial_trace(dilated.matrix(), dilated.layout().dims(), &keep)?;
    Ok(DensityOperator::from_trusted(
        matrix,
        unitary.system_layout().clone(),
    ))
}
