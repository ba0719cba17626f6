//! Checks for the supporting lemmas and for identities specific to the
//! reality quantifiers themselves.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use rand::Rng;

use super::support::{batch_run, bipartite, eval_reality, full_rank, side_dim};
use super::{CheckData, CheckDef};
use crate::channels::{monitoring, phi_a};
use crate::divergences::{
    discord, entropy, state_divergence, DivergenceFamily as F, EntropyKind,
};
use crate::linalg::{matrix_function, trace_re, CMatrix, CVector};
use crate::reality::{
    irreality, reality_renyi_bar, reality_renyi_down, reality_renyi_up,
    reality_renyi_up_via_dilation, reality_vn, Mode, RealityKind as K,
};
use crate::state::{
    haar_unitary, random_observable, werner, DensityOperator, ProjectiveObservable,
    SubsystemLayout,
};

pub(super) fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef::new("lemma1.trace-function", 500, trace_function),
        CheckDef::new("lemma2.entropy-gap", 500, entropy_gap),
        CheckDef::new("lemma2.schmidt-equality", 500, schmidt_equality),
        CheckDef::new("lemma3.saturation", 500, saturation),
        CheckDef::new("lemma4.mub-monitoring", 500, mub_monitoring),
        CheckDef::new("lemma4.non-mub.probe", 500, non_mub_probe),
        CheckDef::new("reality.complementarity", 500, complementarity),
        CheckDef::new("reality.monitoring-gain", 500, monitoring_gain),
        CheckDef::new("reality.zero-characterization", 500, zero_characterization),
        CheckDef::new("reality.updown-order", 10, updown_order),
        CheckDef::new("reality.up-equivalence", 150, up_equivalence),
        CheckDef::new("reality.alpha-ordering", 500, alpha_ordering),
        CheckDef::new("reality.tsallis-q-ordering.werner", 500, tsallis_q_ordering),
        CheckDef::new("reality.bar-gap.probe", 8, bar_gap_probe),
    ]
}

fn trace_function(seed: u64, batch: usize) -> CheckData {
    let shapes: [fn(f64) -> f64; 3] = [|x| x * x, |x| (1.0 + x).ln(), |x| x.powf(0.3)];
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let dephased = phi_a(&state, &obs).expect("dimension agrees");
        let image = matrix_function(dephased.matrix(), shapes[k % shapes.len()])
            .expect("dephased state is Hermitian");
        (trace_re(&(state.matrix() * &image)) - trace_re(&(dephased.matrix() * &image))).abs()
    })
}

fn entropy_gap(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let dephased = phi_a(&state, &obs).expect("dimension agrees");
        let gap = entropy(&dephased, EntropyKind::VonNeumann).expect("valid state")
            - entropy(&state, EntropyKind::VonNeumann).expect("valid state");
        let total = irreality(&state, &obs).expect("dimension agrees");
        let local = irreality(&state.reduced(&[0]).expect("slot exists"), &obs)
            .expect("dimension agrees");
        let measured_share = discord(&state, &obs).expect("bipartite state");
        let identity_drift = (total - gap).abs();
        let split_drift = (total - local - measured_share).abs();
        identity_drift.max(split_drift).max(-measured_share)
    })
}

/// Unit vector spanning the range of a rank-one projector.
fn projector_axis(p: &CMatrix) -> CVector {
    let mut best = 0usize;
    let mut best_norm = -1.0;
    for j in 0..p.ncols() {
        let n = p.column(j).norm();
        if n > best_norm {
            best_norm = n;
            best = j;
        }
    }
    p.column(best).into_owned().map(|z| z / best_norm)
}

fn schmidt_equality(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let d_b = side_dim(k);
        let layout = SubsystemLayout::new(vec![2, d_b]).expect("two slots");
        let obs = random_observable(0, 2, rng);
        let raw = super::support::simplex_point(rng, 2);
        let weights: Vec<f64> = raw.iter().map(|w| 0.9 * w + 0.05).collect();
        let side = haar_unitary(d_b, rng);
        let mut psi = CVector::zeros(2 * d_b);
        for (i, p) in obs.projectors().iter().enumerate() {
            let a = projector_axis(p);
            let b = side.column(i);
            let amp = weights[i].sqrt();
            for r in 0..2 {
                for s in 0..d_b {
                    psi[r * d_b + s] += Complex64::new(amp, 0.0) * a[r] * b[s];
                }
            }
        }
        let state = DensityOperator::from_pure(&psi, layout).expect("unit Schmidt vector");
        let label_entropy: f64 = weights.iter().map(|&w| -w * w.ln()).sum();
        (irreality(&state, &obs).expect("dimension agrees") - label_entropy).abs()
    })
}

fn saturation(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let d_b = side_dim(k);
        let x = random_observable(0, 2, rng);
        let y = random_observable(0, 2, rng);

        let uniform = DensityOperator::maximally_mixed(SubsystemLayout::single(2));
        let spectator = full_rank(rng, &[d_b]);
        let fixed = uniform.tensor(&spectator);
        let sum_fixed = reality_vn(&fixed, &x).expect("dimension agrees").value
            + reality_vn(&fixed, &y).expect("dimension agrees").value;
        let fixed_drift = (sum_fixed - 2.0 * LN_2).abs();

        let state = full_rank(rng, &[2, d_b]);
        let moved = state.distance_to(&phi_a(&state, &x).expect("dimension agrees"));
        let generic_deficit = if moved > 1e-2 {
            let sum = reality_vn(&state, &x).expect("dimension agrees").value
                + reality_vn(&state, &y).expect("dimension agrees").value;
            1e-6 - (2.0 * LN_2 - sum)
        } else {
            f64::NEG_INFINITY
        };
        fixed_drift.max(generic_deficit)
    })
}

/// Basis unbiased to `obs`: the balanced superpositions of its axes with a
/// random relative phase.
fn unbiased_partner(
    obs: &ProjectiveObservable,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> ProjectiveObservable {
    let a0 = projector_axis(&obs.projectors()[0]);
    let a1 = projector_axis(&obs.projectors()[1]);
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    let scale = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let y0 = (&a0 + a1.map(|z| z * phase)).map(|z| z * scale);
    let y1 = (&a0 - a1.map(|z| z * phase)).map(|z| z * scale);
    ProjectiveObservable::from_basis(obs.subsystem(), &[y0, y1])
        .expect("balanced superpositions are orthonormal")
}

fn mub_monitoring(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, x) = bipartite(rng, k);
        let y = unbiased_partner(&x, rng);
        let eps: f64 = rng.gen();
        let monitored = monitoring(&state, &y, eps).expect("strength in range");
        reality_vn(&state, &x).expect("dimension agrees").value
            - reality_vn(&monitored, &x).expect("dimension agrees").value
    })
}

fn non_mub_probe(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, x) = bipartite(rng, k);
        let y = random_observable(0, 2, rng);
        let eps: f64 = rng.gen();
        let monitored = monitoring(&state, &y, eps).expect("strength in range");
        reality_vn(&state, &x).expect("dimension agrees").value
            - reality_vn(&monitored, &x).expect("dimension agrees").value
    })
}

fn complementarity(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-12, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let r = reality_vn(&state, &obs).expect("dimension agrees");
        (r.value + irreality(&state, &obs).expect("dimension agrees") - r.max_value).abs()
    })
}

fn monitoring_gain(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let eps: f64 = rng.gen();
        let monitored = monitoring(&state, &obs, eps).expect("strength in range");
        let gain = reality_vn(&monitored, &obs).expect("dimension agrees").value
            - reality_vn(&state, &obs).expect("dimension agrees").value;
        eps * irreality(&state, &obs).expect("dimension agrees") - gain
    })
}

fn zero_characterization(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let family = [F::VonNeumann, F::Renyi(0.5)][k % 2];
        let already_real = phi_a(&state, &obs).expect("dimension agrees");
        let fixed_residue = state_divergence(
            &already_real,
            &phi_a(&already_real, &obs).expect("dimension agrees"),
            family,
        )
        .expect("dephased target is compatible");
        let moved = state.distance_to(&already_real);
        let far_floor = if moved > 1e-2 {
            1e-6
                - state_divergence(&state, &already_real, family)
                    .expect("dephased target is compatible")
        } else {
            f64::NEG_INFINITY
        };
        fixed_residue.max(far_floor)
    })
}

fn updown_order(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-6, |rng, k, sample_seed| {
        let alpha = [0.3, 0.5, 0.8][k % 3];
        let (state, obs) = bipartite(rng, k);
        let down = reality_renyi_down(&state, &obs, alpha, Mode::Monotone)
            .expect("order in range")
            .value;
        let bar = reality_renyi_bar(&state, &obs, alpha, sample_seed)
            .expect("optimizer converges from the informed start")
            .value;
        let up = reality_renyi_up(&state, &obs, alpha).expect("order in range").value;
        (down - bar).max(bar - up)
    })
}

fn up_equivalence(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let dims: &[usize] = [&[2usize, 2][..], &[2, 3][..], &[3, 2][..]][k % 3];
        let alpha = [0.3, 0.6, 0.9][k % 3];
        let state = full_rank(rng, dims);
        let obs = random_observable(0, dims[0], rng);
        let fast = reality_renyi_up(&state, &obs, alpha).expect("order in range");
        let literal =
            reality_renyi_up_via_dilation(&state, &obs, alpha).expect("order in range");
        (fast.value - literal.value).abs()
    })
}

const ORDER_LADDER: [K; 7] = [
    K::RenyiDown(0.1),
    K::RenyiDown(0.3),
    K::RenyiDown(0.5),
    K::RenyiDown(0.9),
    K::VonNeumann,
    K::RenyiDown(1.5),
    K::RenyiDown(2.0),
];

fn alpha_ordering(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let values: Vec<f64> = ORDER_LADDER
            .iter()
            .map(|&kind| eval_reality(&state, &obs, kind))
            .collect();
        values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

fn tsallis_q_ordering(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, _, _| {
        let state = werner(rng.gen()).expect("fraction in range");
        let obs = ProjectiveObservable::computational(0, 2);
        let values: Vec<f64> = [0.3, 0.7, 1.3, 1.7, 2.0]
            .iter()
            .map(|&q| eval_reality(&state, &obs, K::Tsallis(q)))
            .collect();
        values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

fn bar_gap_probe(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, f64::INFINITY, |rng, k, sample_seed| {
        let alpha = [0.3, 0.6][k % 2];
        let (state, obs) = bipartite(rng, k);
        let down = reality_renyi_down(&state, &obs, alpha, Mode::Monotone)
            .expect("order in range")
            .value;
        let bar = reality_renyi_bar(&state, &obs, alpha, sample_seed)
            .expect("optimizer converges from the informed start")
            .value;
        bar - down
    })
}
