//! Checks for the divergence zoo: the shared-property table, the conditional
//! information variants, and the closed-form optimized conditional.

use rand::Rng;

use super::support::{batch_run, full_rank, ranked, side_dim};
use super::{CheckData, CheckDef};
use crate::channels::{monitoring, phi_a};
use crate::divergences::{
    conditional_information, conditional_information_optimized, divergence,
    optimized_conditional_numeric, sibson_optimized_conditional, DivergenceFamily as F,
};
use crate::linalg::{kron, CMatrix};
use crate::state::{haar_unitary, random_observable, DensityOperator};

pub(super) fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef::new("divergence.unitary-invariance", 500, unitary_invariance),
        CheckDef::new("divergence.additivity", 500, additivity),
        CheckDef::new("divergence.pseudo-additivity.tsallis", 500, pseudo_additivity),
        CheckDef::new("divergence.joint-convexity", 500, joint_convexity_in_range),
        CheckDef::new(
            "divergence.joint-convexity.out-of-range.probe",
            400,
            joint_convexity_probe,
        ),
        CheckDef::new("divergence.dpi.partial-trace", 500, dpi_partial_trace),
        CheckDef::new("divergence.dpi.dephase", 500, dpi_dephase),
        CheckDef::new("divergence.dpi.monitoring", 500, dpi_monitoring),
        CheckDef::new("divergence.dpi.out-of-range.probe", 500, dpi_probe),
        CheckDef::new("divergence.renyi.alpha-monotone", 500, alpha_monotone),
        CheckDef::new("divergence.sandwiched-vs-renyi", 500, sandwiched_vs_renyi),
        CheckDef::new("divergence.limits", 500, limits_at_one),
        CheckDef::new("divergence.min-max-order", 500, min_max_order),
        CheckDef::new("divergence.scale-invariance", 500, scale_invariance),
        CheckDef::new("conditional.bounds", 500, conditional_bounds),
        CheckDef::new("conditional.renyi-order", 500, conditional_renyi_order),
        CheckDef::new("conditional.dpi", 500, conditional_dpi),
        CheckDef::new("sibson.identity", 10, sibson_identity),
    ]
}

const INVARIANCE_FAMILIES: [F; 10] = [
    F::VonNeumann,
    F::Renyi(0.5),
    F::Renyi(1.7),
    F::Sandwiched(0.6),
    F::Sandwiched(2.5),
    F::MinRelative,
    F::MaxRelative,
    F::Tsallis(0.5),
    F::Tsallis(1.8),
    F::Collision,
];

const ADDITIVE_FAMILIES: [F; 8] = [
    F::VonNeumann,
    F::Renyi(0.4),
    F::Renyi(1.6),
    F::Sandwiched(0.7),
    F::Sandwiched(1.8),
    F::MinRelative,
    F::MaxRelative,
    F::Collision,
];

const CONVEX_FAMILIES: [F; 6] = [
    F::VonNeumann,
    F::Renyi(0.5),
    F::MinRelative,
    F::Sandwiched(0.7),
    F::Tsallis(0.5),
    F::Tsallis(1.8),
];

const CONVEX_PROBE_FAMILIES: [F; 4] =
    [F::Renyi(1.8), F::MaxRelative, F::Tsallis(2.6), F::Sandwiched(0.3)];

const DPI_FAMILIES: [F; 10] = [
    F::VonNeumann,
    F::Renyi(0.5),
    F::Renyi(2.0),
    F::MinRelative,
    F::MaxRelative,
    F::Sandwiched(0.6),
    F::Sandwiched(1.5),
    F::Sandwiched(5.0),
    F::Tsallis(0.5),
    F::Tsallis(2.0),
];

const DPI_PROBE_FAMILIES: [F; 3] = [F::Renyi(2.6), F::Tsallis(2.6), F::Sandwiched(0.35)];

fn mix_matrices(p: f64, a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.map(|z| z * p) + b.map(|z| z * (1.0 - p))
}

fn unitary_invariance(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let d = [2usize, 3, 4][k % 3];
        let rank = if k % 4 == 0 { d - 1 } else { d };
        let rho = ranked(rng, &[d], rank);
        let sigma = full_rank(rng, &[d]);
        let family = INVARIANCE_FAMILIES[k % INVARIANCE_FAMILIES.len()];
        let u = haar_unitary(d, rng);
        let rho_u = &u * rho.matrix() * u.adjoint();
        let sigma_u = &u * sigma.matrix() * u.adjoint();
        let before = divergence(rho.matrix(), sigma.matrix(), family).expect("full-rank target");
        let after = divergence(&rho_u, &sigma_u, family).expect("full-rank target");
        (after - before).abs()
    })
}

fn additivity(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let family = ADDITIVE_FAMILIES[k % ADDITIVE_FAMILIES.len()];
        let rank1 = if k % 3 == 0 { 1 } else { 2 };
        let rank2 = if k % 3 == 0 { 2 } else { 3 };
        let rho1 = ranked(rng, &[2], rank1);
        let rho2 = ranked(rng, &[3], rank2);
        let sigma1 = full_rank(rng, &[2]);
        let sigma2 = full_rank(rng, &[3]);
        let d1 = divergence(rho1.matrix(), sigma1.matrix(), family).expect("full-rank target");
        let d2 = divergence(rho2.matrix(), sigma2.matrix(), family).expect("full-rank target");
        let joint = divergence(
            &kron(rho1.matrix(), rho2.matrix()),
            &kron(sigma1.matrix(), sigma2.matrix()),
            family,
        )
        .expect("full-rank target");
        (joint - d1 - d2).abs()
    })
}

fn pseudo_additivity(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let q = [0.5, 1.3, 1.8][k % 3];
        let family = F::Tsallis(q);
        let rho1 = full_rank(rng, &[2]);
        let rho2 = full_rank(rng, &[3]);
        let sigma1 = full_rank(rng, &[2]);
        let sigma2 = full_rank(rng, &[3]);
        let d1 = divergence(rho1.matrix(), sigma1.matrix(), family).expect("full-rank target");
        let d2 = divergence(rho2.matrix(), sigma2.matrix(), family).expect("full-rank target");
        let joint = divergence(
            &kron(rho1.matrix(), rho2.matrix()),
            &kron(sigma1.matrix(), sigma2.matrix()),
            family,
        )
        .expect("full-rank target");
        (joint - (d1 + d2 + (q - 1.0) * d1 * d2)).abs()
    })
}

fn joint_convexity_body(rng: &mut rand_chacha::ChaCha8Rng, family: F) -> f64 {
    let rho1 = ranked(rng, &[3], 2);
    let rho2 = ranked(rng, &[3], 2);
    let sigma1 = full_rank(rng, &[3]);
    let sigma2 = full_rank(rng, &[3]);
    let p: f64 = rng.gen();
    let d1 = divergence(rho1.matrix(), sigma1.matrix(), family).expect("full-rank target");
    let d2 = divergence(rho2.matrix(), sigma2.matrix(), family).expect("full-rank target");
    let mixed = divergence(
        &mix_matrices(p, rho1.matrix(), rho2.matrix()),
        &mix_matrices(p, sigma1.matrix(), sigma2.matrix()),
        family,
    )
    .expect("full-rank target");
    mixed - (p * d1 + (1.0 - p) * d2)
}

fn joint_convexity_in_range(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        joint_convexity_body(rng, CONVEX_FAMILIES[k % CONVEX_FAMILIES.len()])
    })
}

fn joint_convexity_probe(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        joint_convexity_body(rng, CONVEX_PROBE_FAMILIES[k % CONVEX_PROBE_FAMILIES.len()])
    })
}

enum Coarse {
    TraceOut,
    Dephase,
    Monitor,
}

fn dpi_body(rng: &mut rand_chacha::ChaCha8Rng, k: usize, family: F, map: Coarse) -> f64 {
    let d_b = side_dim(k);
    let rank = if k.is_multiple_of(3) { d_b } else { 2 * d_b };
    let rho = ranked(rng, &[2, d_b], rank);
    let sigma = full_rank(rng, &[2, d_b]);
    let before = divergence(rho.matrix(), sigma.matrix(), family).expect("full-rank target");
    let (rho_after, sigma_after) = match map {
        Coarse::TraceOut => (
            rho.reduced(&[0]).expect("slot exists"),
            sigma.reduced(&[0]).expect("slot exists"),
        ),
        Coarse::Dephase => {
            let obs = random_observable(0, 2, rng);
            (
                phi_a(&rho, &obs).expect("dimension agrees"),
                phi_a(&sigma, &obs).expect("dimension agrees"),
            )
        }
        Coarse::Monitor => {
            let obs = random_observable(0, 2, rng);
            let eps: f64 = rng.gen();
            (
                monitoring(&rho, &obs, eps).expect("strength in range"),
                monitoring(&sigma, &obs, eps).expect("strength in range"),
            )
        }
    };
    let after = divergence(rho_after.matrix(), sigma_after.matrix(), family)
        .expect("coarse-graining keeps the target full rank");
    after - before
}

fn dpi_partial_trace(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        dpi_body(rng, k, DPI_FAMILIES[k % DPI_FAMILIES.len()], Coarse::TraceOut)
    })
}

fn dpi_dephase(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        dpi_body(rng, k, DPI_FAMILIES[k % DPI_FAMILIES.len()], Coarse::Dephase)
    })
}

fn dpi_monitoring(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        dpi_body(rng, k, DPI_FAMILIES[k % DPI_FAMILIES.len()], Coarse::Monitor)
    })
}

fn dpi_probe(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let family = DPI_PROBE_FAMILIES[k % DPI_PROBE_FAMILIES.len()];
        let map = match k % 3 {
            0 => Coarse::TraceOut,
            1 => Coarse::Dephase,
            _ => Coarse::Monitor,
        };
        dpi_body(rng, k, family, map)
    })
}

const ALPHA_GRID: [F; 10] = [
    F::Renyi(0.1),
    F::Renyi(0.3),
    F::Renyi(0.5),
    F::Renyi(0.7),
    F::Renyi(0.9),
    F::VonNeumann,
    F::Renyi(1.1),
    F::Renyi(1.5),
    F::Renyi(2.0),
    F::Renyi(2.5),
];

fn alpha_monotone(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, _, _| {
        let rho = full_rank(rng, &[3]);
        let sigma = full_rank(rng, &[3]);
        let values: Vec<f64> = ALPHA_GRID
            .iter()
            .map(|&f| divergence(rho.matrix(), sigma.matrix(), f).expect("full-rank target"))
            .collect();
        values
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

fn sandwiched_vs_renyi(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let alpha = [0.4, 0.6, 1.5, 2.2][k % 4];
        let rho = full_rank(rng, &[3]);
        let sigma = full_rank(rng, &[3]);
        let plain = divergence(rho.matrix(), sigma.matrix(), F::Renyi(alpha))
            .expect("full-rank target");
        let sandwiched = divergence(rho.matrix(), sigma.matrix(), F::Sandwiched(alpha))
            .expect("full-rank target");
        let order_violation = sandwiched - plain;

        let u = haar_unitary(3, rng);
        let spectrum = |rng: &mut rand_chacha::ChaCha8Rng| -> CMatrix {
            let w = super::support::simplex_point(rng, 3);
            let diag = CMatrix::from_fn(3, 3, |i, j| {
                if i == j {
                    nalgebra::Complex::new(w[i], 0.0)
                } else {
                    nalgebra::Complex::new(0.0, 0.0)
                }
            });
            &u * diag * u.adjoint()
        };
        let rho_c = spectrum(rng);
        let sigma_c = spectrum(rng);
        let plain_c =
            divergence(&rho_c, &sigma_c, F::Renyi(alpha)).expect("full-rank target");
        let sandwiched_c =
            divergence(&rho_c, &sigma_c, F::Sandwiched(alpha)).expect("full-rank target");
        order_violation.max((sandwiched_c - plain_c).abs())
    })
}

fn limits_at_one(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-4, |rng, _, _| {
        // Keep spectra away from zero: the finite-difference error at
        // 1 +/- 1e-5 grows with the divergence variance, which is set by the
        // log-eigenvalue spread.
        let floor = DensityOperator::maximally_mixed(
            crate::state::SubsystemLayout::single(3),
        );
        let soften = |raw: &DensityOperator| {
            DensityOperator::mixture(&[(0.75, raw), (0.25, &floor)])
                .expect("weights sum to one")
        };
        let rho = soften(&full_rank(rng, &[3]));
        let sigma = soften(&full_rank(rng, &[3]));
        let vn = divergence(rho.matrix(), sigma.matrix(), F::VonNeumann)
            .expect("full-rank target");
        [
            F::Renyi(1.0 - 1e-5),
            F::Renyi(1.0 + 1e-5),
            F::Sandwiched(1.0 - 1e-5),
            F::Sandwiched(1.0 + 1e-5),
            F::Tsallis(1.0 - 1e-5),
            F::Tsallis(1.0 + 1e-5),
        ]
        .iter()
        .map(|&f| {
            (divergence(rho.matrix(), sigma.matrix(), f).expect("full-rank target") - vn).abs()
        })
        .fold(f64::NEG_INFINITY, f64::max)
    })
}

fn min_max_order(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let d = [2usize, 3][k % 2];
        let rank = if k % 3 == 0 { d - 1 } else { d };
        let rho = ranked(rng, &[d], rank.max(1));
        let sigma = full_rank(rng, &[d]);
        let low = divergence(rho.matrix(), sigma.matrix(), F::MinRelative)
            .expect("full-rank target");
        let mid = divergence(rho.matrix(), sigma.matrix(), F::VonNeumann)
            .expect("full-rank target");
        let high = divergence(rho.matrix(), sigma.matrix(), F::MaxRelative)
            .expect("full-rank target");
        (low - mid).max(mid - high)
    })
}

fn scale_invariance(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let family = INVARIANCE_FAMILIES[k % INVARIANCE_FAMILIES.len()];
        let rho = full_rank(rng, &[3]);
        let sigma = full_rank(rng, &[3]);
        let scale = (rng.gen_range(-2.0..2.0f64)).exp();
        let before = divergence(rho.matrix(), sigma.matrix(), family).expect("full-rank target");
        let after = divergence(
            &rho.matrix().map(|z| z * scale),
            &sigma.matrix().map(|z| z * scale),
            family,
        )
        .expect("full-rank target");
        (after - before).abs()
    })
}

fn conditional_bounds(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let dims = [2, side_dim(k)];
        let state = full_rank(rng, &dims);
        let slot = k % 2;
        let info = conditional_information(&state, slot, F::VonNeumann).expect("valid slot");
        let total: usize = dims.iter().product();
        (-info).max(info - (total as f64).ln())
    })
}

fn conditional_renyi_order(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let alpha = [0.2, 0.5, 0.8][k % 3];
        let state = full_rank(rng, &[2, side_dim(k)]);
        let slot = k % 2;
        let up = conditional_information(&state, slot, F::Renyi(alpha)).expect("valid slot");
        let down = conditional_information_optimized(&state, slot, alpha).expect("valid order");
        down - up
    })
}

fn conditional_dpi(seed: u64, batch: usize) -> CheckData {
    #[derive(Clone, Copy)]
    enum Variant {
        Vn,
        Up(f64),
        Down(f64),
    }
    let variants = [
        Variant::Vn,
        Variant::Up(0.3),
        Variant::Up(0.7),
        Variant::Up(1.8),
        Variant::Down(0.6),
        Variant::Down(0.9),
    ];
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let d_b = side_dim(k);
        let state = full_rank(rng, &[2, d_b]);
        let obs = random_observable(1, d_b, rng);
        let eps: f64 = rng.gen();
        let coarser = monitoring(&state, &obs, eps).expect("strength in range");
        let info = |s: &DensityOperator| -> f64 {
            match variants[k % variants.len()] {
                Variant::Vn => conditional_information(s, 0, F::VonNeumann),
                Variant::Up(a) => conditional_information(s, 0, F::Renyi(a)),
                Variant::Down(a) => conditional_information_optimized(s, 0, a),
            }
            .expect("valid slot and order")
        };
        info(&coarser) - info(&state)
    })
}

fn sibson_identity(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-6, |rng, k, sample_seed| {
        let alpha = [0.2, 0.5, 0.8][k % 3];
        let state = full_rank(rng, &[2, side_dim(k)]);
        let closed = sibson_optimized_conditional(&state, 0, alpha).expect("order in range");
        let numeric = optimized_conditional_numeric(&state, 0, F::Renyi(alpha), sample_seed)
            .expect("order in range");
        (closed - numeric).abs()
    })
}
