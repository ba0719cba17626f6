//! Checks for the unrevealed-measurement channel and its dilation circuit.

use rand::Rng;

use super::support::{batch_run, bipartite, full_rank, sample_ensemble, side_dim};
use super::{CheckData, CheckDef, Tracker};
use crate::channels::{
    cyclic_shift, dilate, flag, monitoring, phi_a, stinespring_unitary, trace_out_environment,
};
use crate::divergences::{entropy, EntropyKind};
use crate::linalg::{identity, max_abs, trace_re};
use crate::state::random_observable;

pub(super) fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef::new("stinespring.marginal", 500, marginal),
        CheckDef::new("stinespring.theorem1.fixed-point", 500, theorem1_fixed_point),
        CheckDef::new("stinespring.shift-algebra", 1, shift_algebra),
        CheckDef::new("channel.idempotence", 500, idempotence),
        CheckDef::new("channel.monitoring-composition", 500, monitoring_composition),
        CheckDef::new("channel.cptp", 500, cptp),
        CheckDef::new("channel.flag-average", 500, flag_average),
        CheckDef::new("channel.flag-entropy", 500, flag_entropy),
    ]
}

/// System shapes the dilation checks rotate through: the measured dimension
/// runs over 2 and 3, the spectator over absent, 2, and 3.
const DILATION_SHAPES: [(usize, usize); 6] = [(2, 0), (2, 2), (2, 3), (3, 0), (3, 2), (3, 3)];

fn dilation_dims(k: usize) -> Vec<usize> {
    let (d_a, d_b) = DILATION_SHAPES[k % DILATION_SHAPES.len()];
    if d_b == 0 {
        vec![d_a]
    } else {
        vec![d_a, d_b]
    }
}

fn marginal(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let dims = dilation_dims(k);
        let state = full_rank(rng, &dims);
        let obs = random_observable(0, dims[0], rng);
        let unitary = stinespring_unitary(&obs, state.layout()).expect("dimension agrees");
        let joint = dilate(&state, &unitary).expect("layout agrees");
        let traced = trace_out_environment(&joint, &unitary).expect("environment is last");
        let expected = phi_a(&state, &obs).expect("dimension agrees");
        let purity_drift = (joint.purity() - state.purity()).abs();
        traced.distance_to(&expected).max(purity_drift)
    })
}

fn theorem1_fixed_point(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let dims = dilation_dims(k);
        let state = full_rank(rng, &dims);
        let obs = random_observable(0, dims[0], rng);
        let unitary = stinespring_unitary(&obs, state.layout()).expect("dimension agrees");
        let d_e = unitary.env_dim();
        let dephased = phi_a(&state, &obs).expect("dimension agrees");
        let env = identity(d_e).map(|z| z / d_e as f64);
        let fixed = crate::linalg::kron(dephased.matrix(), &env);
        let evolved = unitary.matrix() * &fixed * unitary.matrix().adjoint();
        max_abs(&(evolved - fixed))
    })
}

fn shift_algebra(seed: u64, _batch: usize) -> CheckData {
    let mut tracker = Tracker::new();
    for d in [2usize, 3, 5] {
        let shift = cyclic_shift(d);
        let mut powers = vec![identity(d)];
        for _ in 1..d {
            powers.push(&shift * powers.last().unwrap());
        }
        for i in 0..d {
            for j in 0..d {
                let product = &powers[i] * &powers[j];
                let violation = max_abs(&(product - &powers[(i + j) % d]));
                tracker.sample(seed ^ ((d * d * i + d * j) as u64), violation);
            }
        }
    }
    tracker.into_data(0.0)
}

fn idempotence(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-12, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let once = phi_a(&state, &obs).expect("dimension agrees");
        let twice = phi_a(&once, &obs).expect("dimension agrees");
        twice.distance_to(&once)
    })
}

fn monitoring_composition(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-12, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let e1: f64 = rng.gen();
        let e2: f64 = rng.gen();
        let chained = monitoring(
            &monitoring(&state, &obs, e2).expect("strength in range"),
            &obs,
            e1,
        )
        .expect("strength in range");
        let fused = monitoring(&state, &obs, e1 + e2 - e1 * e2).expect("strength in range");
        chained.distance_to(&fused)
    })
}

fn cptp(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let state = full_rank(rng, &[2, side_dim(k), 2]);
        let obs = random_observable(0, 2, rng);
        let out = phi_a(&state, &obs).expect("dimension agrees");
        let trace_drift = (trace_re(out.matrix()) - 1.0).abs();
        let min_eig = out
            .eigenvalues()
            .last()
            .copied()
            .expect("nonempty spectrum");
        trace_drift.max(-min_eig)
    })
}

fn flag_average(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-12, |rng, k, _| {
        let n = 2 + k % 2;
        let ensemble = sample_ensemble(rng, &[2, side_dim(k)], n);
        let flagged = flag(&ensemble);
        let averaged = flagged.reduced(&[0, 1]).expect("flag slot is last");
        averaged.distance_to(&ensemble.average())
    })
}

fn flag_entropy(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let n = 2 + k % 2;
        let ensemble = sample_ensemble(rng, &[2, side_dim(k)], n);
        let flagged = flag(&ensemble);
        let joint = entropy(&flagged, EntropyKind::VonNeumann).expect("valid state");
        let label_entropy: f64 = ensemble.weights().iter().map(|&w| -w * w.ln()).sum();
        let member_average: f64 = ensemble
            .weights()
            .iter()
            .zip(ensemble.members())
            .map(|(w, member)| {
                w * entropy(member, EntropyKind::VonNeumann).expect("valid state")
            })
            .sum();
        (joint - label_entropy - member_average).abs()
    })
}
