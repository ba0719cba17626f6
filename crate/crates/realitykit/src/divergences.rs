//! Entropies, relative-entropy families, and conditional-information
//! functionals for positive semidefinite operators, with parameter-range
//! bookkeeping for the properties each family satisfies.
//!
//! Every divergence is normalized by the trace of the first argument, so all
//! families are invariant under a common rescaling of both operands and can
//! be evaluated on unnormalized positive operators.

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, interleave, operator_norm, partial_trace, spectral_power, symmetrize, trace_re,
    CMatrix,
};
use crate::optim::{
    chol_param_count, chol_params_from_density, density_from_chol_params, nelder_mead_multistart,
    SimplexOptions,
};
use crate::state::{DensityOperator, ProjectiveObservable};

/// Parameters this close to 1 are evaluated with the von Neumann formula,
/// which is the analytic limit; the direct formulas lose all precision to
/// cancellation in `1/(alpha - 1)` there.
pub const PARAM_ONE_WINDOW: f64 = 1e-6;

/// Relative weight of the first operand allowed on the kernel of the second
/// before the divergence is declared infinite.
pub const KERNEL_TOL: f64 = 1e-9;

/// A relative-entropy family together with its order parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DivergenceFamily {
    VonNeumann,
    Renyi(f64),
    Sandwiched(f64),
    MinRelative,
    MaxRelative,
    Collision,
    Tsallis(f64),
}

#[derive(Debug, Clone, Copy)]
enum Routed {
    VonNeumann,
    Renyi(f64),
    Sandwiched(f64),
    MinRelative,
    MaxRelative,
    Tsallis(f64),
}

impl DivergenceFamily {
    /// Validates the order parameter and resolves limit cases: orders within
    /// [`PARAM_ONE_WINDOW`] of 1 route to the von Neumann formula, and the
    /// collision entropy routes to the sandwiched family at order 2.
    fn route(&self) -> Result<Routed> {
        match *self {
            Self::VonNeumann => Ok(Routed::VonNeumann),
            Self::MinRelative => Ok(Routed::MinRelative),
            Self::MaxRelative => Ok(Routed::MaxRelative),
            Self::Collision => Ok(Routed::Sandwiched(2.0)),
            Self::Renyi(a) => {
                check_order(a, "Renyi divergence order")?;
                Ok(if (a - 1.0).abs() < PARAM_ONE_WINDOW {
                    Routed::VonNeumann
                } else {
                    Routed::Renyi(a)
                })
            }
            Self::Sandwiched(a) => {
                check_order(a, "sandwiched divergence order")?;
                Ok(if (a - 1.0).abs() < PARAM_ONE_WINDOW {
                    Routed::VonNeumann
                } else {
                    Routed::Sandwiched(a)
                })
            }
            Self::Tsallis(q) => {
                check_q(q, "Tsallis divergence order")?;
                Ok(if (q - 1.0).abs() < PARAM_ONE_WINDOW {
                    Routed::VonNeumann
                } else {
                    Routed::Tsallis(q)
                })
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::VonNeumann => "vn".into(),
            Self::Renyi(a) => format!("renyi({a})"),
            Self::Sandwiched(a) => format!("sandwiched({a})"),
            Self::MinRelative => "min".into(),
            Self::MaxRelative => "max".into(),
            Self::Collision => "collision".into(),
            Self::Tsallis(q) => format!("tsallis({q})"),
        }
    }
}

fn check_order(a: f64, what: &'static str) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange {
            alpha: a,
            range: "(0, 1) or (1, inf)",
            what,
        })
    }
}

fn check_q(q: f64, what: &'static str) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::QOutOfRange {
            q,
            range: "(0, 1) or (1, inf)",
            what,
        })
    }
}

/// Joint spectral data for an operand pair: eigenvalues of each operator and
/// the squared overlaps `w[(i, j)] = |<u_i|v_j>|^2` between their eigenbases.
struct SpectralPair {
    r: Vec<f64>,
    s: Vec<f64>,
    w: nalgebra::DMatrix<f64>,
    tr_rho: f64,
    cut_r: f64,
    cut_s: f64,
}

impl SpectralPair {
    fn new(rho: &CMatrix, sigma: &CMatrix) -> Result<Self> {
        let er = eig_hermitian(rho)?;
        let es = eig_hermitian(sigma)?;
        check_positive(&er.values)?;
        check_positive(&es.values)?;
        let overlap = er.vectors.adjoint() * &es.vectors;
        let w = nalgebra::DMatrix::from_fn(overlap.nrows(), overlap.ncols(), |i, j| {
            overlap[(i, j)].norm_sqr()
        });
        let tr_rho: f64 = er.values.iter().sum();
        if tr_rho <= 0.0 {
            return Err(Error::NotPositive {
                min_eigenvalue: tr_rho,
            });
        }
        let cut_r = er.support_cutoff();
        let cut_s = es.support_cutoff();
        Ok(Self {
            r: er.values,
            s: es.values,
            w,
            tr_rho,
            cut_r,
            cut_s,
        })
    }

    /// Weight of the first operand supported on the kernel of the second,
    /// relative to the first operand's trace.
    fn kernel_mass(&self) -> f64 {
        let mut mass = 0.0;
        for (j, &sj) in self.s.iter().enumerate() {
            if sj > self.cut_s {
                continue;
            }
            for (i, &ri) in self.r.iter().enumerate() {
                if ri > self.cut_r {
                    mass += self.w[(i, j)] * ri;
                }
            }
        }
        mass / self.tr_rho
    }

    /// `sum_ij r_i^a s_j^b w_ij` with zero eigenvalues contributing zero.
    fn cross_power(&self, a: f64, b: f64) -> f64 {
        let mut total = 0.0;
        for (i, &ri) in self.r.iter().enumerate() {
            if ri <= self.cut_r {
                continue;
            }
            let rp = ri.powf(a);
            for (j, &sj) in self.s.iter().enumerate() {
                if sj <= self.cut_s {
                    continue;
                }
                total += rp * sj.powf(b) * self.w[(i, j)];
            }
        }
        total
    }
}

fn check_positive(values: &[f64]) -> Result<()> {
    let scale = values.first().map(|v| v.abs()).unwrap_or(0.0).max(1e-300);
    if let Some(&min) = values.last() {
        if min < -crate::linalg::PSD_CLIP * scale.max(1.0) {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
    }
    Ok(())
}

enum Value {
    Finite(f64),
    Infinite { kernel_weight: f64 },
}

fn compute(rho: &CMatrix, sigma: &CMatrix, family: DivergenceFamily) -> Result<Value> {
    let routed = family.route()?;
    if rho.nrows() != sigma.nrows() || rho.ncols() != sigma.ncols() {
        return Err(Error::LayoutMismatch(format!(
            "operand shapes {}x{} vs {}x{}",
            rho.nrows(),
            rho.ncols(),
            sigma.nrows(),
            sigma.ncols()
        )));
    }
    match routed {
        Routed::VonNeumann => von_neumann(rho, sigma),
        Routed::Renyi(a) => renyi(rho, sigma, a),
        Routed::Sandwiched(a) => sandwiched(rho, sigma, a),
        Routed::MinRelative => min_relative(rho, sigma),
        Routed::MaxRelative => max_relative(rho, sigma),
        Routed::Tsallis(q) => tsallis(rho, sigma, q),
    }
}

fn von_neumann(rho: &CMatrix, sigma: &CMatrix) -> Result<Value> {
    let pair = SpectralPair::new(rho, sigma)?;
    let kernel_weight = pair.kernel_mass();
    if kernel_weight > KERNEL_TOL {
        return Ok(Value::Infinite { kernel_weight });
    }
    let mut tr_rho_ln_rho = 0.0;
    for &ri in &pair.r {
        if ri > pair.cut_r {
            tr_rho_ln_rho += ri * ri.ln();
        }
    }
    let mut tr_rho_ln_sigma = 0.0;
    for (i, &ri) in pair.r.iter().enumerate() {
        if ri <= pair.cut_r {
            continue;
        }
        for (j, &sj) in pair.s.iter().enumerate() {
            if sj <= pair.cut_s {
                continue;
            }
            tr_rho_ln_sigma += ri * sj.ln() * pair.w[(i, j)];
        }
    }
    Ok(Value::Finite(
        (tr_rho_ln_rho - tr_rho_ln_sigma) / pair.tr_rho,
    ))
}

fn renyi(rho: &CMatrix, sigma: &CMatrix, alpha: f64) -> Result<Value> {
    let pair = SpectralPair::new(rho, sigma)?;
    if alpha > 1.0 {
        let kernel_weight = pair.kernel_mass();
        if kernel_weight > KERNEL_TOL {
            return Ok(Value::Infinite { kernel_weight });
        }
    }
    let overlap = pair.cross_power(alpha, 1.0 - alpha);
    if overlap <= 0.0 {
        return Ok(Value::Infinite { kernel_weight: 1.0 });
    }
    Ok(Value::Finite((overlap / pair.tr_rho).ln() / (alpha - 1.0)))
}

fn sandwiched(rho: &CMatrix, sigma: &CMatrix, alpha: f64) -> Result<Value> {
    let pair = SpectralPair::new(rho, sigma)?;
    if alpha > 1.0 {
        let kernel_weight = pair.kernel_mass();
        if kernel_weight > KERNEL_TOL {
            return Ok(Value::Infinite { kernel_weight });
        }
    }
    let exponent = (1.0 - alpha) / (2.0 * alpha);
    let half = spectral_power(sigma, exponent)?;
    let inner = symmetrize(&(&half * rho * &half));
    let eig = eig_hermitian(&inner)?;
    let cutoff = eig.support_cutoff();
    let tr_alpha: f64 = eig
        .values
        .iter()
        .filter(|&&v| v > cutoff)
        .map(|&v| v.powf(alpha))
        .sum();
    if tr_alpha <= 0.0 {
        return Ok(Value::Infinite { kernel_weight: 1.0 });
    }
    Ok(Value::Finite((tr_alpha / pair.tr_rho).ln() / (alpha - 1.0)))
}

fn min_relative(rho: &CMatrix, sigma: &CMatrix) -> Result<Value> {
    let pair = SpectralPair::new(rho, sigma)?;
    let mut projected = 0.0;
    for (i, &ri) in pair.r.iter().enumerate() {
        if ri <= pair.cut_r {
            continue;
        }
        for (j, &sj) in pair.s.iter().enumerate() {
            projected += pair.w[(i, j)] * sj.max(0.0);
        }
    }
    if projected <= 0.0 {
        return Ok(Value::Infinite { kernel_weight: 1.0 });
    }
    Ok(Value::Finite(-(projected / pair.tr_rho).ln()))
}

fn max_relative(rho: &CMatrix, sigma: &CMatrix) -> Result<Value> {
    let pair = SpectralPair::new(rho, sigma)?;
    let kernel_weight = pair.kernel_mass();
    if kernel_weight > KERNEL_TOL {
        return Ok(Value::Infinite { kernel_weight });
    }
    let inv_half = spectral_power(sigma, -0.5)?;
    let inner = symmetrize(&(&inv_half * rho * &inv_half));
    Ok(Value::Finite(operator_norm(&inner)?.ln()))
}

fn tsallis(rho: &CMatrix, sigma: &CMatrix, q: f64) -> Result<Value> {
    let pair = SpectralPair::new(rho, sigma)?;
    if q > 1.0 {
        let kernel_weight = pair.kernel_mass();
        if kernel_weight > KERNEL_TOL {
            return Ok(Value::Infinite { kernel_weight });
        }
    }
    let cross = pair.cross_power(q, 1.0 - q);
    Ok(Value::Finite(
        (pair.tr_rho - cross) / ((1.0 - q) * pair.tr_rho),
    ))
}

/// Relative entropy of `rho` with respect to `sigma` in nats. Errors with
/// [`Error::KernelViolation`] when the value is infinite; use
/// [`divergence_extended`] to receive `f64::INFINITY` instead.
pub fn divergence(rho: &CMatrix, sigma: &CMatrix, family: DivergenceFamily) -> Result<f64> {
    match compute(rho, sigma, family)? {
        Value::Finite(v) => Ok(v),
        Value::Infinite { kernel_weight } => Err(Error::KernelViolation {
            weight: kernel_weight,
        }),
    }
}

/// Extended-real variant of [`divergence`]: kernel violations yield
/// `f64::INFINITY` rather than an error.
pub fn divergence_extended(
    rho: &CMatrix,
    sigma: &CMatrix,
    family: DivergenceFamily,
) -> Result<f64> {
    match compute(rho, sigma, family)? {
        Value::Finite(v) => Ok(v),
        Value::Infinite { .. } => Ok(f64::INFINITY),
    }
}

/// Convenience wrapper for state arguments.
pub fn state_divergence(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    family: DivergenceFamily,
) -> Result<f64> {
    divergence(rho.matrix(), sigma.matrix(), family)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyKind {
    VonNeumann,
    Renyi(f64),
    Tsallis(f64),
}

/// Entropy of a state in nats, computed from its spectrum.
pub fn entropy(state: &DensityOperator, kind: EntropyKind) -> Result<f64> {
    let eig = eig_hermitian(state.matrix())?;
    let cutoff = eig.support_cutoff();
    let tr: f64 = eig.values.iter().sum();
    let live = || eig.values.iter().copied().filter(|&v| v > cutoff);
    match kind {
        EntropyKind::VonNeumann => Ok(-live().map(|v| v * v.ln()).sum::<f64>() / tr),
        EntropyKind::Renyi(a) => {
            check_order(a, "Renyi entropy order")?;
            if (a - 1.0).abs() < PARAM_ONE_WINDOW {
                return entropy(state, EntropyKind::VonNeumann);
            }
            let power: f64 = live().map(|v| v.powf(a)).sum();
            Ok((power / tr).ln() / (1.0 - a))
        }
        EntropyKind::Tsallis(q) => {
            check_q(q, "Tsallis entropy order")?;
            if (q - 1.0).abs() < PARAM_ONE_WINDOW {
                return entropy(state, EntropyKind::VonNeumann);
            }
            let power: f64 = live().map(|v| v.powf(q)).sum();
            Ok((power - tr) / ((1.0 - q) * tr))
        }
    }
}

/// `ln_q(x) = (x^{1-q} - 1)/(1 - q)`, the deformed logarithm that plays the
/// role of `ln` in the Tsallis family.
pub fn ln_q(q: f64, x: f64) -> f64 {
    if (q - 1.0).abs() < PARAM_ONE_WINDOW {
        x.ln()
    } else {
        (x.powf(1.0 - q) - 1.0) / (1.0 - q)
    }
}

/// The reference state `1_A/d_A (x) rho_B` over the full layout, with the
/// measured subsystem at `slot`.
pub fn uniform_on_slot_reference(state: &DensityOperator, slot: usize) -> Result<CMatrix> {
    let dims = state.layout().dims();
    let d_a = state.layout().dim_of(slot)?;
    let keep: Vec<usize> = (0..dims.len()).filter(|&k| k != slot).collect();
    let rho_b = partial_trace(state.matrix(), dims, &keep)?;
    let uniform = crate::linalg::identity(d_a).map(|z| z / d_a as f64);
    interleave(dims, &[slot], &uniform, &rho_b)
}

/// Conditional information of the subsystem at `slot` given the rest:
/// the divergence from `1_A/d_A (x) rho_B`. The Tsallis family carries its
/// `d_A^{1-q}` scaling so that the maximally mixed marginal still maps to
/// zero information.
pub fn conditional_information(
    state: &DensityOperator,
    slot: usize,
    family: DivergenceFamily,
) -> Result<f64> {
    let reference = uniform_on_slot_reference(state, slot)?;
    let raw = divergence(state.matrix(), &reference, family)?;
    match family.route()? {
        Routed::Tsallis(q) => {
            let d_a = state.layout().dim_of(slot)? as f64;
            Ok(d_a.powf(1.0 - q) * raw)
        }
        _ => Ok(raw),
    }
}

/// Closed-form value of `inf over sigma_B` of the Renyi divergence from
/// `1_A (x) sigma_B`, for order in (0, 1):
/// `(alpha/(alpha - 1)) ln tr_B [ (tr_A rho^alpha)^{1/alpha} ]`.
pub fn sibson_optimized_conditional(
    state: &DensityOperator,
    slot: usize,
    alpha: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange {
            alpha,
            range: "(0, 1)",
            what: "Sibson-identity order",
        });
    }
    let dims = state.layout().dims();
    let keep: Vec<usize> = (0..dims.len()).filter(|&k| k != slot).collect();
    let rho_alpha = spectral_power(state.matrix(), alpha)?;
    let reduced = partial_trace(&rho_alpha, dims, &keep)?;
    let root = spectral_power(&symmetrize(&reduced), 1.0 / alpha)?;
    let tr = trace_re(&root);
    Ok((alpha / (alpha - 1.0)) * tr.ln())
}

/// The optimized Renyi conditional information
/// `ln d_A + inf over sigma_B of D_alpha(rho || 1_A (x) sigma_B)`, which
/// never exceeds [`conditional_information`] at the same order.
pub fn conditional_information_optimized(
    state: &DensityOperator,
    slot: usize,
    alpha: f64,
) -> Result<f64> {
    let d_a = state.layout().dim_of(slot)? as f64;
    Ok(d_a.ln() + sibson_optimized_conditional(state, slot, alpha)?)
}

/// Direct numerical minimization of `D_alpha(rho || 1_A (x) sigma_B)` over
/// states `sigma_B`, used to cross-check the closed form above.
pub fn optimized_conditional_numeric(
    state: &DensityOperator,
    slot: usize,
    family: DivergenceFamily,
    seed: u64,
) -> Result<f64> {
    let dims = state.layout().dims();
    let d_a = state.layout().dim_of(slot)?;
    let d_b = state.layout().rest_dim(slot)?;
    let keep: Vec<usize> = (0..dims.len()).filter(|&k| k != slot).collect();
    let rho_b = partial_trace(state.matrix(), dims, &keep)?;
    let identity_a = crate::linalg::identity(d_a);
    let dims_owned = dims.to_vec();
    let state_matrix = state.matrix().clone();
    let objective = move |params: &[f64]| -> f64 {
        let sigma_b = density_from_chol_params(params, d_b);
        let reference = match interleave(&dims_owned, &[slot], &identity_a, &sigma_b) {
            Ok(m) => m,
            Err(_) => return f64::INFINITY,
        };
        divergence_extended(&state_matrix, &reference, family).unwrap_or(f64::INFINITY)
    };
    let informed = chol_params_from_density(&rho_b, d_b);
    let mut rng = crate::state::seeded_rng(seed);
    let n_params = chol_param_count(d_b);
    let starts = move |k: usize| -> Vec<f64> {
        if k == 0 {
            informed.clone()
        } else {
            use rand::Rng;
            (0..n_params).map(|_| rng.gen_range(-1.0..1.0)).collect()
        }
    };
    let opts = SimplexOptions {
        max_iter: 6000,
        ..Default::default()
    };
    let (_, best) = nelder_mead_multistart(objective, starts, 12, 4, &opts);
    Ok(best)
}

/// Experimental probe: numerically minimized Tsallis conditional
/// information. No properties are asserted for this quantity; it exists so
/// its behavior can be explored.
pub fn optimized_tsallis_conditional_probe(
    state: &DensityOperator,
    slot: usize,
    q: f64,
    seed: u64,
) -> Result<f64> {
    check_q(q, "Tsallis probe order")?;
    let d_a = state.layout().dim_of(slot)? as f64;
    let inf = optimized_conditional_numeric(state, slot, DivergenceFamily::Tsallis(q), seed)?;
    Ok(d_a.powf(1.0 - q) * inf)
}

/// Mutual information `D(rho || rho_A (x) rho_B)` of a bipartite state.
pub fn mutual_information(state: &DensityOperator) -> Result<f64> {
    if state.layout().n_subsystems() != 2 {
        return Err(Error::LayoutMismatch(format!(
            "mutual information needs a bipartite layout, got {:?}",
            state.layout().dims()
        )));
    }
    let rho_a = state.reduced(&[0])?;
    let rho_b = state.reduced(&[1])?;
    let product = rho_a.tensor(&rho_b);
    divergence(state.matrix(), product.matrix(), DivergenceFamily::VonNeumann)
}

/// Mutual information lost under the unrevealed measurement of `obs`:
/// `I(rho) - I(phi_A(rho))`. Vanishes exactly on states already diagonal in
/// the measured basis.
pub fn discord(state: &DensityOperator, obs: &ProjectiveObservable) -> Result<f64> {
    let dephased = crate::channels::phi_a(state, obs)?;
    Ok(mutual_information(state)? - mutual_information(&dephased)?)
}

/// Properties a divergence family may satisfy, with parameter ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceProperty {
    Continuity,
    PositiveDefiniteness,
    UnitaryInvariance,
    Additivity,
    JointConvexity,
    DataProcessing,
}

impl DivergenceProperty {
    pub const ALL: [Self; 6] = [
        Self::Continuity,
        Self::PositiveDefiniteness,
        Self::UnitaryInvariance,
        Self::Additivity,
        Self::JointConvexity,
        Self::DataProcessing,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Continuity => "continuity",
            Self::PositiveDefiniteness => "positive definiteness",
            Self::UnitaryInvariance => "unitary invariance",
            Self::Additivity => "additivity",
            Self::JointConvexity => "joint convexity",
            Self::DataProcessing => "data processing",
        }
    }
}

/// Whether `family` (at its parameter, if any) satisfies `property`.
///
/// The collision entropy is judged as the sandwiched family at order 2; the
/// near-1 limit window is judged as von Neumann, mirroring [`divergence`]'s
/// routing.
pub fn property_holds(family: DivergenceFamily, property: DivergenceProperty) -> Result<bool> {
    use DivergenceProperty as P;
    let routed = family.route()?;
    Ok(match routed {
        Routed::VonNeumann => true,
        Routed::Renyi(a) => match property {
            P::Continuity | P::PositiveDefiniteness | P::UnitaryInvariance | P::Additivity => true,
            P::JointConvexity => a < 1.0,
            P::DataProcessing => a <= 2.0,
        },
        Routed::MinRelative => !matches!(property, P::Continuity | P::PositiveDefiniteness),
        Routed::Sandwiched(a) => match property {
            P::Continuity | P::PositiveDefiniteness | P::UnitaryInvariance | P::Additivity => true,
            P::JointConvexity => (0.5..1.0).contains(&a),
            P::DataProcessing => a >= 0.5,
        },
        Routed::MaxRelative => !matches!(property, P::Continuity | P::JointConvexity),
        Routed::Tsallis(q) => match property {
            P::Continuity | P::PositiveDefiniteness | P::UnitaryInvariance => true,
            P::Additivity => false,
            P::JointConvexity | P::DataProcessing => q <= 2.0,
        },
    })
}

/// One row of the property table: a family column, a property, and the
/// parameter range on which it holds.
#[derive(Debug, Clone, Copy)]
pub struct PropertyRange {
    pub family: &'static str,
    pub property: DivergenceProperty,
    pub holds_on: &'static str,
}

/// The full property-by-family table. Parameter-free families report
/// "always" or "never"; parametrized ones report their order interval.
pub fn property_table() -> Vec<PropertyRange> {
    use DivergenceProperty as P;
    let row = |family, property, holds_on| PropertyRange {
        family,
        property,
        holds_on,
    };
    vec![
        row("vn", P::Continuity, "always"),
        row("vn", P::PositiveDefiniteness, "always"),
        row("vn", P::UnitaryInvariance, "always"),
        row("vn", P::Additivity, "always"),
        row("vn", P::JointConvexity, "always"),
        row("vn", P::DataProcessing, "always"),
        row("renyi", P::Continuity, "(0,1) u (1,inf)"),
        row("renyi", P::PositiveDefiniteness, "(0,1) u (1,inf)"),
        row("renyi", P::UnitaryInvariance, "(0,1) u (1,inf)"),
        row("renyi", P::Additivity, "(0,1) u (1,inf)"),
        row("renyi", P::JointConvexity, "(0,1)"),
        row("renyi", P::DataProcessing, "(0,1) u (1,2]"),
        row("min", P::Continuity, "never"),
        row("min", P::PositiveDefiniteness, "never"),
        row("min", P::UnitaryInvariance, "always"),
        row("min", P::Additivity, "always"),
        row("min", P::JointConvexity, "always"),
        row("min", P::DataProcessing, "always"),
        row("sandwiched", P::Continuity, "(0,1) u (1,inf)"),
        row("sandwiched", P::PositiveDefiniteness, "(0,1) u (1,inf)"),
        row("sandwiched", P::UnitaryInvariance, "(0,1) u (1,inf)"),
        row("sandwiched", P::Additivity, "(0,1) u (1,inf)"),
        row("sandwiched", P::JointConvexity, "[1/2,1)"),
        row("sandwiched", P::DataProcessing, "[1/2,1) u (1,inf)"),
        row("max", P::Continuity, "never"),
        row("max", P::PositiveDefiniteness, "always"),
        row("max", P::UnitaryInvariance, "always"),
        row("max", P::Additivity, "always"),
        row("max", P::JointConvexity, "never"),
        row("max", P::DataProcessing, "always"),
        row("tsallis", P::Continuity, "(0,1) u (1,inf)"),
        row("tsallis", P::PositiveDefiniteness, "(0,1) u (1,inf)"),
        row("tsallis", P::UnitaryInvariance, "(0,1) u (1,inf)"),
        row("tsallis", P::Additivity, "never"),
        row("tsallis", P::JointConvexity, "(0,1) u (1,2]"),
        row("tsallis", P::DataProcessing, "(0,1) u (1,2]"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;
    use crate::state::{
        haar_pure, random_density_seeded, seeded_rng, singlet, DensityOperator, SubsystemLayout,
    };
    use approx::assert_relative_eq;

    const LN_2: f64 = std::f64::consts::LN_2;

    fn pure_vs_mixed_families() -> Vec<DivergenceFamily> {
        use DivergenceFamily as F;
        vec![
            F::VonNeumann,
            F::Renyi(0.5),
            F::Renyi(1.7),
            F::Sandwiched(0.6),
            F::MinRelative,
            F::MaxRelative,
            F::Collision,
        ]
    }

    #[test]
    fn pure_state_against_maximally_mixed_gives_log_dimension() {
        for d in [2usize, 3, 5] {
            let psi = haar_pure(SubsystemLayout::single(d), &mut seeded_rng(d as u64));
            let mixed = DensityOperator::maximally_mixed(SubsystemLayout::single(d));
            for family in pure_vs_mixed_families() {
                let v = state_divergence(&psi, &mixed, family).unwrap();
                assert_relative_eq!(v, (d as f64).ln(), epsilon = 1e-10);
            }
            let q = 1.6;
            let v = state_divergence(&psi, &mixed, DivergenceFamily::Tsallis(q)).unwrap();
            let expected = (d as f64).powf(q - 1.0) * ln_q(q, d as f64);
            assert_relative_eq!(v, expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn self_divergence_vanishes_for_full_rank_states() {
        let rho = random_density_seeded(SubsystemLayout::single(3), 3, 77).unwrap();
        use DivergenceFamily as F;
        for family in [
            F::VonNeumann,
            F::Renyi(0.3),
            F::Renyi(2.0),
            F::Sandwiched(0.8),
            F::Sandwiched(3.0),
            F::MinRelative,
            F::MaxRelative,
            F::Collision,
            F::Tsallis(0.5),
            F::Tsallis(1.9),
        ] {
            let v = state_divergence(&rho, &rho, family).unwrap();
            assert!(v.abs() < 1e-9, "{family:?} gave {v}");
        }
    }

    #[test]
    fn min_relative_misses_positive_definiteness() {
        let mixed = DensityOperator::maximally_mixed(SubsystemLayout::single(2));
        let pure = DensityOperator::from_pure(
            &crate::linalg::CVector::from_vec(vec![1.0.into(), 0.0.into()]),
            SubsystemLayout::single(2),
        )
        .unwrap();
        let v = state_divergence(&mixed, &pure, DivergenceFamily::MinRelative).unwrap();
        assert!(v.abs() < 1e-12);
        assert!(mixed.distance_to(&pure) > 0.4);
    }

    #[test]
    fn commuting_pairs_collapse_sandwiched_onto_renyi() {
        let diag = |v: &[f64]| {
            CMatrix::from_diagonal(&crate::linalg::CVector::from_iterator(
                v.len(),
                v.iter().map(|&x| num_complex::Complex64::new(x, 0.0)),
            ))
        };
        let rho = diag(&[0.6, 0.3, 0.1]);
        let sigma = diag(&[0.2, 0.5, 0.3]);
        for alpha in [0.3, 0.55, 0.9, 1.4, 2.5] {
            let plain = divergence(&rho, &sigma, DivergenceFamily::Renyi(alpha)).unwrap();
            let sandw = divergence(&rho, &sigma, DivergenceFamily::Sandwiched(alpha)).unwrap();
            assert_relative_eq!(plain, sandw, epsilon = 1e-10);
        }
    }

    #[test]
    fn sandwiched_never_exceeds_renyi() {
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let rho = crate::state::random_density(SubsystemLayout::single(3), 3, &mut rng)
                .unwrap();
            let sigma = crate::state::random_density(SubsystemLayout::single(3), 3, &mut rng)
                .unwrap();
            for alpha in [0.5, 0.8, 1.5, 2.0] {
                let plain = state_divergence(&rho, &sigma, DivergenceFamily::Renyi(alpha)).unwrap();
                let sandw =
                    state_divergence(&rho, &sigma, DivergenceFamily::Sandwiched(alpha)).unwrap();
                assert!(sandw <= plain + 1e-10, "alpha {alpha}: {sandw} > {plain}");
            }
        }
    }

    #[test]
    fn scale_invariance_holds_on_unnormalized_operators() {
        let rho = random_density_seeded(SubsystemLayout::single(3), 3, 8).unwrap();
        let sigma = random_density_seeded(SubsystemLayout::single(3), 3, 9).unwrap();
        let lambda = 0.37;
        use DivergenceFamily as F;
        for family in [
            F::VonNeumann,
            F::Renyi(0.5),
            F::Sandwiched(1.5),
            F::MinRelative,
            F::MaxRelative,
            F::Tsallis(0.7),
            F::Tsallis(1.8),
        ] {
            let base = divergence(rho.matrix(), sigma.matrix(), family).unwrap();
            let scaled = divergence(
                &rho.matrix().map(|z| z * lambda),
                &sigma.matrix().map(|z| z * lambda),
                family,
            )
            .unwrap();
            assert_relative_eq!(base, scaled, epsilon = 1e-10);
        }
    }

    #[test]
    fn kernel_violations_split_strict_and_extended_modes() {
        let full = random_density_seeded(SubsystemLayout::single(3), 3, 10).unwrap();
        let low = random_density_seeded(SubsystemLayout::single(3), 2, 11).unwrap();
        use DivergenceFamily as F;
        for family in [
            F::VonNeumann,
            F::Renyi(1.5),
            F::Sandwiched(2.0),
            F::MaxRelative,
            F::Tsallis(1.5),
        ] {
            assert!(matches!(
                state_divergence(&full, &low, family),
                Err(Error::KernelViolation { .. })
            ));
            assert!(divergence_extended(full.matrix(), low.matrix(), family)
                .unwrap()
                .is_infinite());
        }
        for family in [F::Renyi(0.5), F::Tsallis(0.5), F::MinRelative] {
            assert!(state_divergence(&full, &low, family).unwrap().is_finite());
        }
    }

    #[test]
    fn renyi_entropy_matches_scalar_formula() {
        let diag = CMatrix::from_diagonal(&crate::linalg::CVector::from_vec(vec![
            0.75.into(),
            0.25.into(),
        ]));
        let rho = DensityOperator::new(diag, SubsystemLayout::single(2)).unwrap();
        let s2 = entropy(&rho, EntropyKind::Renyi(2.0)).unwrap();
        assert_relative_eq!(s2, 0.4700036292457356, epsilon = 1e-12);
        assert_relative_eq!(s2, -(0.75f64.powi(2) + 0.25f64.powi(2)).ln(), epsilon = 1e-12);
        let pure = haar_pure(SubsystemLayout::single(2), &mut seeded_rng(2));
        for kind in [
            EntropyKind::VonNeumann,
            EntropyKind::Renyi(0.5),
            EntropyKind::Tsallis(1.5),
        ] {
            assert!(entropy(&pure, kind).unwrap().abs() < 1e-10);
        }
        let mixed = DensityOperator::maximally_mixed(SubsystemLayout::single(4));
        assert_relative_eq!(
            entropy(&mixed, EntropyKind::VonNeumann).unwrap(),
            4.0f64.ln(),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            entropy(&mixed, EntropyKind::Tsallis(0.5)).unwrap(),
            ln_q(0.5, 4.0),
            epsilon = 1e-12
        );
    }

    #[test]
    fn tsallis_is_pseudo_additive_on_products() {
        let rho_a = random_density_seeded(SubsystemLayout::single(2), 2, 21).unwrap();
        let sigma_a = random_density_seeded(SubsystemLayout::single(2), 2, 22).unwrap();
        let rho_b = random_density_seeded(SubsystemLayout::single(3), 3, 23).unwrap();
        let sigma_b = random_density_seeded(SubsystemLayout::single(3), 3, 24).unwrap();
        let q = 1.7;
        let fam = DivergenceFamily::Tsallis(q);
        let da = state_divergence(&rho_a, &sigma_a, fam).unwrap();
        let db = state_divergence(&rho_b, &sigma_b, fam).unwrap();
        let joint = state_divergence(&rho_a.tensor(&rho_b), &sigma_a.tensor(&sigma_b), fam)
            .unwrap();
        assert_relative_eq!(joint, da + db + (q - 1.0) * da * db, epsilon = 1e-10);
    }

    #[test]
    fn singlet_conditional_information_doubles_log_two() {
        let s = singlet();
        let v = conditional_information(&s, 0, DivergenceFamily::VonNeumann).unwrap();
        assert_relative_eq!(v, 2.0 * LN_2, epsilon = 1e-10);
        let product_reference = conditional_information(
            &DensityOperator::maximally_mixed(SubsystemLayout::qubit_pair()),
            0,
            DivergenceFamily::VonNeumann,
        )
        .unwrap();
        assert!(product_reference.abs() < 1e-12);
    }

    #[test]
    fn conditional_information_of_uncorrelated_reference_vanishes_for_all_families() {
        let rho_b = random_density_seeded(SubsystemLayout::single(3), 3, 30).unwrap();
        let uniform = DensityOperator::maximally_mixed(SubsystemLayout::single(2));
        let state = uniform.tensor(&rho_b);
        use DivergenceFamily as F;
        for family in [
            F::VonNeumann,
            F::Renyi(0.5),
            F::Sandwiched(0.7),
            F::MinRelative,
            F::MaxRelative,
            F::Tsallis(1.5),
        ] {
            let v = conditional_information(&state, 0, family).unwrap();
            assert!(v.abs() < 1e-9, "{family:?} gave {v}");
        }
    }

    #[test]
    fn sibson_closed_form_matches_direct_minimization() {
        let mixed = DensityOperator::maximally_mixed(SubsystemLayout::qubit_pair());
        let closed = sibson_optimized_conditional(&mixed, 0, 0.5).unwrap();
        assert_relative_eq!(closed, -LN_2, epsilon = 1e-12);
        let s = singlet();
        for alpha in [0.3, 0.5, 0.8] {
            let closed = sibson_optimized_conditional(&s, 0, alpha).unwrap();
            let numeric =
                optimized_conditional_numeric(&s, 0, DivergenceFamily::Renyi(alpha), 7).unwrap();
            assert_relative_eq!(closed, numeric, epsilon = 1e-6);
        }
        assert!(matches!(
            sibson_optimized_conditional(&s, 0, 1.5),
            Err(Error::AlphaOutOfRange { .. })
        ));
    }

    #[test]
    fn optimized_conditional_stays_below_plain_conditional() {
        let mut rng = seeded_rng(41);
        for _ in 0..5 {
            let rho =
                crate::state::random_density(SubsystemLayout::qubit_pair(), 4, &mut rng).unwrap();
            for alpha in [0.25, 0.5, 0.75] {
                let up = conditional_information(&rho, 0, DivergenceFamily::Renyi(alpha)).unwrap();
                let down = conditional_information_optimized(&rho, 0, alpha).unwrap();
                assert!(down <= up + 1e-9, "alpha {alpha}: {down} > {up}");
            }
        }
    }

    #[test]
    fn singlet_mutual_information_and_measured_loss() {
        let s = singlet();
        assert_relative_eq!(mutual_information(&s).unwrap(), 2.0 * LN_2, epsilon = 1e-10);
        let obs = crate::state::ProjectiveObservable::computational(0, 2);
        assert_relative_eq!(discord(&s, &obs).unwrap(), LN_2, epsilon = 1e-10);
        let dephased = crate::channels::phi_a(&s, &obs).unwrap();
        assert!(discord(&dephased, &obs).unwrap().abs() < 1e-10);
    }

    #[test]
    fn tsallis_scaling_keeps_product_states_consistent() {
        let rho_a = random_density_seeded(SubsystemLayout::single(2), 2, 51).unwrap();
        let rho_b = random_density_seeded(SubsystemLayout::single(3), 3, 52).unwrap();
        let product = rho_a.tensor(&rho_b);
        let q = 1.4;
        let lhs = conditional_information(&product, 0, DivergenceFamily::Tsallis(q)).unwrap();
        let mixed_a = DensityOperator::maximally_mixed(SubsystemLayout::single(2));
        let rhs = 2.0f64.powf(1.0 - q)
            * state_divergence(&rho_a, &mixed_a, DivergenceFamily::Tsallis(q)).unwrap();
        assert_relative_eq!(lhs, rhs, epsilon = 1e-10);
    }

    #[test]
    fn property_table_matches_the_predicate() {
        use DivergenceFamily as F;
        use DivergenceProperty as P;
        assert!(property_holds(F::VonNeumann, P::JointConvexity).unwrap());
        assert!(!property_holds(F::MinRelative, P::Continuity).unwrap());
        assert!(!property_holds(F::MinRelative, P::PositiveDefiniteness).unwrap());
        assert!(property_holds(F::MinRelative, P::DataProcessing).unwrap());
        assert!(!property_holds(F::MaxRelative, P::JointConvexity).unwrap());
        assert!(property_holds(F::MaxRelative, P::DataProcessing).unwrap());
        assert!(property_holds(F::Renyi(0.5), P::JointConvexity).unwrap());
        assert!(!property_holds(F::Renyi(1.5), P::JointConvexity).unwrap());
        assert!(property_holds(F::Renyi(2.0), P::DataProcessing).unwrap());
        assert!(!property_holds(F::Renyi(2.5), P::DataProcessing).unwrap());
        assert!(property_holds(F::Sandwiched(0.5), P::JointConvexity).unwrap());
        assert!(!property_holds(F::Sandwiched(0.4), P::JointConvexity).unwrap());
        assert!(!property_holds(F::Sandwiched(0.4), P::DataProcessing).unwrap());
        assert!(property_holds(F::Sandwiched(7.0), P::DataProcessing).unwrap());
        assert!(property_holds(F::Collision, P::DataProcessing).unwrap());
        assert!(!property_holds(F::Collision, P::JointConvexity).unwrap());
        assert!(!property_holds(F::Tsallis(0.5), P::Additivity).unwrap());
        assert!(property_holds(F::Tsallis(2.0), P::DataProcessing).unwrap());
        assert!(!property_holds(F::Tsallis(2.1), P::DataProcessing).unwrap());
        assert_eq!(property_table().len(), 36);
    }

    #[test]
    fn near_one_orders_route_to_von_neumann() {
        let rho = random_density_seeded(SubsystemLayout::single(3), 3, 60).unwrap();
        let sigma = random_density_seeded(SubsystemLayout::single(3), 3, 61).unwrap();
        let vn = state_divergence(&rho, &sigma, DivergenceFamily::VonNeumann).unwrap();
        for family in [
            DivergenceFamily::Renyi(1.0 + 1e-9),
            DivergenceFamily::Sandwiched(1.0 - 1e-9),
            DivergenceFamily::Tsallis(1.0 + 1e-9),
        ] {
            assert_relative_eq!(
                state_divergence(&rho, &sigma, family).unwrap(),
                vn,
                epsilon = 1e-14
            );
        }
        assert!(matches!(
            state_divergence(&rho, &sigma, DivergenceFamily::Renyi(-0.5)),
            Err(Error::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            state_divergence(&rho, &sigma, DivergenceFamily::Tsallis(0.0)),
            Err(Error::QOutOfRange { .. })
        ));
    }

    #[test]
    fn divergence_rejects_shape_mismatch() {
        let rho = identity(2).map(|z| z * 0.5);
        let sigma = identity(3).map(|z| z / 3.0);
        assert!(matches!(
            divergence(&rho, &sigma, DivergenceFamily::VonNeumann),
            Err(Error::LayoutMismatch(_))
        ));
    }
}
