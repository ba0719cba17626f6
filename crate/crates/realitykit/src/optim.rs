//! Derivative-free simplex minimization plus parametrizations that keep
//! optimization variables inside the density-operator set.

use num_complex::Complex64;

use crate::linalg::{trace_re, CMatrix};

#[derive(Debug, Clone)]
pub struct SimplexOptions {
    /// Stop when the spread of simplex values drops below this, relative to
    /// the best value.
    pub ftol: f64,
    pub max_iter: usize,
    /// Relative size of the initial simplex around the start point.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            ftol: 1e-9,
            max_iter: 4000,
            initial_step: 0.1,
        }
    }
}

/// Nelder-Mead simplex minimization. Returns the best point found and its
/// value; with a bounded iteration budget this is a heuristic, so callers
/// that need certainty compare against closed forms or restart.
pub fn nelder_mead<F>(mut f: F, start: &[f64], opts: &SimplexOptions) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64]) -> f64,
{
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += opts.initial_step * (p[i].abs().max(1.0));
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    for _ in 0..opts.max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];
        if (values[worst] - values[best]).abs() <= opts.ftol * (1.0 + values[best].abs()) {
            break;
        }

        let mut centroid = vec![0.0; n];
        for &idx in order.iter().take(n) {
            for (c, x) in centroid.iter_mut().zip(&simplex[idx]) {
                *c += x / n as f64;
            }
        }
        let worst_point = simplex[worst].clone();
        let point_at = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst_point)
                .map(|(&c, &w)| c + t * (c - w))
                .collect()
        };

        let reflected = point_at(1.0);
        let f_reflected = f(&reflected);
        if f_reflected < values[best] {
            let expanded = point_at(2.0);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }
        let contracted = if f_reflected < values[worst] {
            point_at(0.5)
        } else {
            point_at(-0.5)
        };
        let f_contracted = f(&contracted);
        if f_contracted < values[worst].min(f_reflected) {
            simplex[worst] = contracted;
            values[worst] = f_contracted;
            continue;
        }
        for &idx in order.iter().skip(1) {
            let shrunk: Vec<f64> = simplex[idx]
                .iter()
                .zip(&simplex[best])
                .map(|(&x, &b)| b + 0.5 * (x - b))
                .collect();
            values[idx] = f(&shrunk);
            simplex[idx] = shrunk;
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best].clone(), values[best])
}

/// Runs the simplex from several start points and keeps the overall best.
/// Stops early once `patience` consecutive restarts fail to improve the
/// incumbent by more than `opts.ftol`.
pub fn nelder_mead_multistart<F, G>(
    mut f: F,
    mut start_for: G,
    n_starts: usize,
    patience: usize,
    opts: &SimplexOptions,
) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64]) -> f64,
    G: FnMut(usize) -> Vec<f64>,
{
    let mut best_point = Vec::new();
    let mut best_value = f64::INFINITY;
    let mut stale = 0usize;
    for k in 0..n_starts {
        let start = start_for(k);
        let (point, value) = nelder_mead(&mut f, &start, opts);
        if value < best_value - opts.ftol {
            best_value = value;
            best_point = point;
            stale = 0;
        } else {
            stale += 1;
            if best_value.is_finite() && stale >= patience {
                break;
            }
        }
    }
    (best_point, best_value)
}

/// Number of real parameters that encode a `d x d` density operator through
/// its Cholesky factor.
pub fn chol_param_count(d: usize) -> usize {
    d * d
}

/// Maps `d^2` unconstrained real parameters to a density operator via a
/// lower-triangular factor: `rho = L L† / tr(L L†)`. Every parameter vector
/// yields a valid state, so optimizers can roam freely.
pub fn density_from_chol_params(params: &[f64], d: usize) -> CMatrix {
    assert_eq!(params.len(), chol_param_count(d), "parameter count mismatch");
    let mut l = CMatrix::zeros(d, d);
    for k in 0..d {
        l[(k, k)] = Complex64::new(params[k], 0.0);
    }
    let mut idx = d;
    for i in 1..d {
        for j in 0..i {
            l[(i, j)] = Complex64::new(params[idx], params[idx + 1]);
            idx += 2;
        }
    }
    let m = &l * l.adjoint();
    let tr = trace_re(&m);
    if tr <= 1e-300 {
        return CMatrix::identity(d, d).map(|z| z / d as f64);
    }
    m.map(|z| z / tr)
}

/// Inverse of [`density_from_chol_params`] up to normalization: Cholesky
/// parameters whose reconstruction is `matrix` (plus a small ridge that keeps
/// the factorization defined for singular inputs).
pub fn chol_params_from_density(matrix: &CMatrix, d: usize) -> Vec<f64> {
    let mut ridge = 1e-12;
    for _ in 0..8 {
        let shifted = matrix + CMatrix::identity(d, d).map(|z| z * ridge);
        if let Some(chol) = shifted.clone().cholesky() {
            let l = chol.l();
            let mut params = vec![0.0; chol_param_count(d)];
            for k in 0..d {
                params[k] = l[(k, k)].re;
            }
            let mut idx = d;
            for i in 1..d {
                for j in 0..i {
                    params[idx] = l[(i, j)].re;
                    params[idx + 1] = l[(i, j)].im;
                    idx += 2;
                }
            }
            return params;
        }
        ridge *= 100.0;
    }
    let mut params = vec![0.0; chol_param_count(d)];
    for (k, p) in params.iter_mut().take(d).enumerate() {
        *p = (matrix[(k, k)].re.max(0.0) + 1e-9).sqrt();
    }
    params
}

/// Softmax map from unconstrained reals to a probability vector.
pub fn simplex_weights(params: &[f64]) -> Vec<f64> {
    let top = params.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = params.iter().map(|&x| (x - top).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}
