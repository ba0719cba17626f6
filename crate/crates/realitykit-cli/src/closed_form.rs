//! Scalar reference formulas for the two-qubit families shipped with the
//! command-line sweeps. Everything here works on plain floats so sweep output
//! can be cross-checked against the matrix pipeline.

pub const LN_2: f64 = std::f64::consts::LN_2;

/// Orders this close to 1 evaluate through the von Neumann limit instead of
/// the raw formula, whose leading difference quotient loses precision there.
pub const ONE_WINDOW: f64 = 1e-5;

pub fn near_one(order: f64) -> bool {
    (order - 1.0).abs() <= ONE_WINDOW
}

/// `ln_q(x) = (x^{1-q} - 1)/(1 - q)`, the deformed logarithm.
pub fn ln_q(q: f64, x: f64) -> f64 {
    if near_one(q) {
        x.ln()
    } else {
        (x.powf(1.0 - q) - 1.0) / (1.0 - q)
    }
}

fn entropy_of(weights: &[f64]) -> f64 {
    weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * w.ln())
        .sum()
}

/// Von Neumann reality of a spin observable on one qubit of the Werner state
/// with purity `eps`, from the joint and dephased spectra.
pub fn werner_vn(eps: f64) -> f64 {
    let joint = [
        (1.0 + 3.0 * eps) / 4.0,
        (1.0 - eps) / 4.0,
        (1.0 - eps) / 4.0,
        (1.0 - eps) / 4.0,
    ];
    let dephased = [
        (1.0 - eps) / 4.0,
        (1.0 - eps) / 4.0,
        (1.0 + eps) / 4.0,
        (1.0 + eps) / 4.0,
    ];
    LN_2 - (entropy_of(&dephased) - entropy_of(&joint))
}

/// Renyi reality of order `alpha` for the Werner state.
pub fn werner_down(alpha: f64, eps: f64) -> f64 {
    if near_one(alpha) {
        return werner_vn(eps);
    }
    let cross = ((1.0 - eps).powf(alpha) + (1.0 + 3.0 * eps).powf(alpha))
        / (4.0 * (1.0 + eps).powf(alpha - 1.0))
        + (1.0 - eps) / 2.0;
    LN_2 - cross.ln() / (alpha - 1.0)
}

/// Which first power term enters the averaged quantity `chi` behind the
/// optimized Renyi reality. The two variants agree at `eps = 0` and drift
/// apart as the state purifies; only `MinusEps` matches the matrix pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiVariant {
    MinusEps,
    PlusEps,
}

/// Optimized Renyi reality of order `alpha` for the Werner state, through
/// `chi = (1-eps)/2 + [ ((1∓eps)^alpha + (1+3 eps)^alpha) / 2^{alpha+1} ]^{1/alpha}`.
pub fn werner_up(alpha: f64, eps: f64, variant: ChiVariant) -> f64 {
    let first = match variant {
        ChiVariant::MinusEps => (1.0 - eps).powf(alpha),
        ChiVariant::PlusEps => (1.0 + eps).powf(alpha),
    };
    let chi = (1.0 - eps) / 2.0
        + ((first + (1.0 + 3.0 * eps).powf(alpha)) / 2f64.powf(alpha + 1.0)).powf(1.0 / alpha);
    LN_2 - alpha / (alpha - 1.0) * chi.ln()
}

/// Tsallis reality of order `q` for the Werner state, on the `ln_q 2` scale.
pub fn werner_tsallis(q: f64, eps: f64) -> f64 {
    if near_one(q) {
        return werner_vn(eps);
    }
    let numerator =
        (1.0 - eps).powf(q) - 2.0 * (1.0 + eps).powf(q) + (1.0 + 3.0 * eps).powf(q);
    ln_q(q, 2.0) - numerator / (4.0 * (q - 1.0) * (2.0 * (1.0 + eps)).powf(q - 1.0))
}

/// `alpha -> 0` limit of the Werner Renyi reality: full scale while the state
/// has full rank, then the min-relative value at the pure endpoint.
pub fn werner_alpha_zero_limit(eps: f64) -> f64 {
    if eps < 1.0 {
        LN_2
    } else {
        0.0
    }
}

/// `alpha -> infinity` limit of the Werner Renyi reality:
/// `ln 2 - ln[(1+3 eps)/(1+eps)]`.
pub fn werner_alpha_infinity_limit(eps: f64) -> f64 {
    LN_2 - ((1.0 + 3.0 * eps) / (1.0 + eps)).ln()
}
