//! Axiom checks for the reality quantifiers, one registry entry per
//! `(axiom, quantifier)` cell, plus the stored witnesses for the cells where
//! a quantifier provably fails and the probes outside the proven ranges.

use std::f64::consts::{FRAC_PI_2, LN_2};

use num_complex::Complex64;
use rand::Rng;

use super::support::{
    batch_run, bipartite, eval_reality, eval_reality_with_max, full_rank, sample_ensemble,
    side_dim,
};
use super::{CheckData, CheckDef, Tracker};
use crate::channels::{attach, dilate, discard, flag, monitoring, phi_a, stinespring_unitary};
use crate::divergences::{
    conditional_information, divergence, ln_q, state_divergence, DivergenceFamily as F,
};
use crate::linalg::{identity, kron, CVector};
use crate::reality::{uncertainty_bound, RealityKind as K};
use crate::state::{
    random_observable, singlet, spin_projectors, werner, DensityOperator, Ensemble,
    ProjectiveObservable, SubsystemLayout,
};

pub(super) fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef::new("axiom1.flow.vn", 500, flow_vn),
        CheckDef::new("axiom1.flow.renyi", 500, flow_renyi),
        CheckDef::new("axiom1.flow.tsallis", 500, flow_tsallis),
        CheckDef::new("axiom2.order.vn", 500, |s, b| order(s, b, &[K::VonNeumann])),
        CheckDef::new("axiom2.order.renyi", 500, |s, b| {
            order(s, b, &[K::RenyiDown(0.3), K::RenyiDown(0.7), K::RenyiDown(1.8)])
        }),
        CheckDef::new("axiom2.order.sandwiched", 500, |s, b| {
            order(s, b, &[K::Sandwiched(0.5), K::Sandwiched(0.8), K::Sandwiched(1.5)])
        }),
        CheckDef::new("axiom2.order.tsallis", 500, |s, b| {
            order(s, b, &[K::Tsallis(0.5), K::Tsallis(1.5), K::Tsallis(2.0)])
        }),
        CheckDef::new("axiom2.order.max-rel", 500, |s, b| order(s, b, &[K::MaxRelative])),
        CheckDef::new("axiom2.saturation.min-rel.witness", 1, min_rel_saturation_witness),
        CheckDef::new("axiom3a.discard.vn", 500, |s, b| discard_check(s, b, &[K::VonNeumann])),
        CheckDef::new("axiom3a.discard.renyi", 500, |s, b| {
            discard_check(s, b, &[K::RenyiDown(0.4), K::RenyiDown(1.8)])
        }),
        CheckDef::new("axiom3a.discard.min-rel", 500, |s, b| {
            discard_check(s, b, &[K::MinRelative])
        }),
        CheckDef::new("axiom3a.discard.sandwiched", 500, |s, b| {
            discard_check(s, b, &[K::Sandwiched(0.6), K::Sandwiched(1.5), K::Sandwiched(4.0)])
        }),
        CheckDef::new("axiom3a.discard.max-rel", 500, |s, b| {
            discard_check(s, b, &[K::MaxRelative])
        }),
        CheckDef::new("axiom3a.discard.tsallis", 500, |s, b| {
            discard_check(s, b, &[K::Tsallis(0.5), K::Tsallis(1.7)])
        }),
        CheckDef::new("axiom3a.out-of-range.probe", 500, |s, b| {
            discard_check(s, b, &[K::RenyiDown(2.6), K::Tsallis(2.6)])
        }),
        CheckDef::new("axiom3b.attach.vn", 500, |s, b| attach_check(s, b, &[K::VonNeumann])),
        CheckDef::new("axiom3b.attach.renyi", 500, |s, b| {
            attach_check(s, b, &[K::RenyiDown(0.4), K::RenyiDown(1.8)])
        }),
        CheckDef::new("axiom3b.attach.min-rel", 500, |s, b| {
            attach_check(s, b, &[K::MinRelative])
        }),
        CheckDef::new("axiom3b.attach.sandwiched", 500, |s, b| {
            attach_check(s, b, &[K::Sandwiched(0.6), K::Sandwiched(1.5)])
        }),
        CheckDef::new("axiom3b.attach.max-rel", 500, |s, b| {
            attach_check(s, b, &[K::MaxRelative])
        }),
        CheckDef::new("axiom3b.attach.tsallis", 500, |s, b| {
            attach_check(s, b, &[K::Tsallis(0.5), K::Tsallis(1.7)])
        }),
        CheckDef::new("axiom4.sum-bound.vn", 500, |s, b| sum_bound(s, b, &[K::VonNeumann])),
        CheckDef::new("axiom4.sum-bound.renyi", 500, |s, b| {
            sum_bound(s, b, &[K::RenyiDown(0.3), K::RenyiDown(0.7), K::RenyiDown(1.5)])
        }),
        CheckDef::new("axiom4.sum-bound.sandwiched", 500, |s, b| {
            sum_bound(s, b, &[K::Sandwiched(0.6), K::Sandwiched(2.0)])
        }),
        CheckDef::new("axiom4.sum-bound.max-rel", 500, |s, b| {
            sum_bound(s, b, &[K::MaxRelative])
        }),
        CheckDef::new("axiom4.sum-bound.tsallis", 500, |s, b| {
            sum_bound(s, b, &[K::Tsallis(0.5), K::Tsallis(1.5)])
        }),
        CheckDef::new("axiom4.min-rel.witness", 1, simultaneous_min_rel_witness),
        CheckDef::new("axiom4.discord-bound.vn", 20, discord_bound),
        CheckDef::new("axiom5.mixing.vn", 500, |s, b| mixing(s, b, &[K::VonNeumann])),
        CheckDef::new("axiom5.mixing.renyi", 500, |s, b| {
            mixing(s, b, &[K::RenyiDown(0.3), K::RenyiDown(0.7)])
        }),
        CheckDef::new("axiom5.mixing.min-rel", 500, |s, b| mixing(s, b, &[K::MinRelative])),
        CheckDef::new("axiom5.mixing.sandwiched", 500, |s, b| {
            mixing(s, b, &[K::Sandwiched(0.5), K::Sandwiched(0.8)])
        }),
        CheckDef::new("axiom5.mixing.tsallis", 500, |s, b| {
            mixing(s, b, &[K::Tsallis(0.5), K::Tsallis(1.5), K::Tsallis(2.0)])
        }),
        CheckDef::new("axiom5.mixing.max-rel.witness", 1, mixing_max_rel_witness),
        CheckDef::new("axiom5.mixing.out-of-range.probe", 500, |s, b| {
            mixing(s, b, &[K::RenyiDown(1.5), K::Sandwiched(2.0), K::Tsallis(2.5)])
        }),
        CheckDef::new("axiom6.additivity.vn", 500, |s, b| {
            pair_additivity(s, b, &[K::VonNeumann])
        }),
        CheckDef::new("axiom6.additivity.renyi", 500, |s, b| {
            pair_additivity(s, b, &[K::RenyiDown(0.5), K::RenyiDown(1.6)])
        }),
        CheckDef::new("axiom6.additivity.min-rel", 500, |s, b| {
            pair_additivity(s, b, &[K::MinRelative])
        }),
        CheckDef::new("axiom6.additivity.sandwiched", 500, |s, b| {
            pair_additivity(s, b, &[K::Sandwiched(0.7), K::Sandwiched(2.0)])
        }),
        CheckDef::new("axiom6.additivity.max-rel", 500, |s, b| {
            pair_additivity(s, b, &[K::MaxRelative])
        }),
        CheckDef::new("axiom6.tsallis.witness", 1, tsallis_additivity_witness),
        CheckDef::new("axiom7.flag.vn", 500, |s, b| flag_check(s, b, K::VonNeumann)),
        CheckDef::new("axiom7.flag.renyi.probe", 500, |s, b| {
            flag_check(s, b, K::RenyiDown(0.5))
        }),
        CheckDef::new("axiom7.flag.sandwiched.probe", 500, |s, b| {
            flag_check(s, b, K::Sandwiched(0.7))
        }),
        CheckDef::new("axiom7.flag.min-rel.probe", 500, |s, b| {
            flag_check(s, b, K::MinRelative)
        }),
        CheckDef::new("axiom7.flag.tsallis.probe", 500, |s, b| {
            flag_check(s, b, K::Tsallis(1.5))
        }),
        CheckDef::new("axiom7.flag.max-rel.witness", 1, flag_max_rel_witness),
    ]
}

fn max3(a: f64, b: f64, c: f64) -> f64 {
    a.max(b).max(c)
}

/// The dilated pair `(rho (x) |e0><e0|, U (rho (x) |e0><e0|) U†)` for a
/// sampled bipartite state, together with the environment slot index.
fn flow_states(
    rng: &mut rand_chacha::ChaCha8Rng,
    k: usize,
) -> (DensityOperator, DensityOperator, DensityOperator, ProjectiveObservable, usize) {
    let (state, obs) = bipartite(rng, k);
    let unitary = stinespring_unitary(&obs, state.layout()).expect("dimension agrees");
    let d_e = unitary.env_dim();
    let mut e0 = CVector::zeros(d_e);
    e0[0] = Complex64::new(1.0, 0.0);
    let env = DensityOperator::from_pure(&e0, SubsystemLayout::single(d_e))
        .expect("basis vector is normalized");
    let initial = state.tensor(&env);
    let evolved = dilate(&state, &unitary).expect("layout agrees");
    (state, initial, evolved, obs, unitary.env_slot())
}

fn flow_vn(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, initial, evolved, obs, env_slot) = flow_states(rng, k);
        let gain = state_divergence(&state, &phi_a(&state, &obs).expect("dimension agrees"), F::VonNeumann)
            .expect("dephased target is compatible");
        let i0 = conditional_information(&initial, env_slot, F::VonNeumann).expect("valid slot");
        let i1 = conditional_information(&evolved, env_slot, F::VonNeumann).expect("valid slot");
        (i0 - LN_2).abs().max((i1 - i0 - gain).abs())
    })
}

fn flow_renyi(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let alpha = [0.3, 0.7][k % 2];
        let (state, initial, evolved, obs, env_slot) = flow_states(rng, k);
        let gain = state_divergence(
            &state,
            &phi_a(&state, &obs).expect("dimension agrees"),
            F::Renyi(alpha),
        )
        .expect("dephased target is compatible");
        let i0 = conditional_information(&initial, env_slot, F::Renyi(alpha)).expect("valid slot");
        let i1 = conditional_information(&evolved, env_slot, F::Renyi(alpha)).expect("valid slot");
        (i0 - LN_2).abs().max((i1 - i0 - gain).abs())
    })
}

fn flow_tsallis(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let q = [0.5, 1.5][k % 2];
        let (state, initial, evolved, obs, env_slot) = flow_states(rng, k);
        let dephased = phi_a(&state, &obs).expect("dimension agrees");
        let gain = state_divergence(&state, &dephased, F::Tsallis(q))
            .expect("dephased target is compatible");
        let i0 = conditional_information(&initial, env_slot, F::Tsallis(q)).expect("valid slot");
        let i1 = conditional_information(&evolved, env_slot, F::Tsallis(q)).expect("valid slot");
        let reality_gain = eval_reality(&dephased, &obs, K::Tsallis(q))
            - eval_reality(&state, &obs, K::Tsallis(q));
        let d_a = obs.dim() as f64;
        max3(
            (i0 - ln_q(q, 2.0)).abs(),
            (i1 - i0 - gain).abs(),
            (reality_gain - d_a.powf(1.0 - q) * (i1 - i0)).abs(),
        )
    })
}

fn order(seed: u64, batch: usize, kinds: &'static [K]) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let kind = kinds[k % kinds.len()];
        let eps: f64 = rng.gen();
        let monitored = monitoring(&state, &obs, eps).expect("strength in range");
        let dephased = phi_a(&state, &obs).expect("dimension agrees");
        let (r0, max) = eval_reality_with_max(&state, &obs, kind);
        let r1 = eval_reality(&monitored, &obs, kind);
        let r2 = eval_reality(&dephased, &obs, kind);
        max3(r0 - r1, r1 - r2, (r2 - max).abs())
    })
}

fn min_rel_saturation_witness(seed: u64, _batch: usize) -> CheckData {
    let mut tracker = Tracker::new();
    let (plus, minus) = spin_projectors(0.0, FRAC_PI_2);
    let block = plus.map(|z| z * 0.75) + minus.map(|z| z * 0.25);
    let matrix = kron(&block, &identity(2).map(|z| z * 0.5));
    let state = DensityOperator::new(matrix, SubsystemLayout::qubit_pair())
        .expect("witness state is a valid density operator");
    let obs = ProjectiveObservable::computational(0, 2);
    let (r, max) = eval_reality_with_max(&state, &obs, K::MinRelative);
    let moved = state.distance_to(&phi_a(&state, &obs).expect("dimension agrees"));
    tracker.sample(seed, (r - max).abs().max(1e-2 - moved));
    tracker.into_data(1e-10)
}

fn discard_check(seed: u64, batch: usize, kinds: &'static [K]) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let state = full_rank(rng, &[2, side_dim(k), side_dim(k / 2)]);
        let obs = random_observable(0, 2, rng);
        let kind = kinds[k % kinds.len()];
        let reduced = discard(&state, 2, &obs).expect("slot 2 is not the observable");
        eval_reality(&state, &obs, kind) - eval_reality(&reduced, &obs, kind)
    })
}

fn attach_check(seed: u64, batch: usize, kinds: &'static [K]) -> CheckData {
    batch_run(seed, batch, 1e-10, |rng, k, _| {
        let (state, obs) = bipartite(rng, k);
        let omega = full_rank(rng, &[side_dim(k / 2)]);
        let kind = kinds[k % kinds.len()];
        let joined = attach(&state, &omega);
        (eval_reality(&joined, &obs, kind) - eval_reality(&state, &obs, kind)).abs()
    })
}

fn sum_bound(seed: u64, batch: usize, kinds: &'static [K]) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, _) = bipartite(rng, k);
        let x = random_observable(0, 2, rng);
        let y = random_observable(0, 2, rng);
        let kind = kinds[k % kinds.len()];
        let (rx, max) = eval_reality_with_max(&state, &x, kind);
        let ry = eval_reality(&state, &y, kind);
        rx + ry - 2.0 * max
    })
}

fn simultaneous_min_rel_witness(seed: u64, _batch: usize) -> CheckData {
    let mut tracker = Tracker::new();
    let x_obs = ProjectiveObservable::spin(0, 0.0, FRAC_PI_2);
    let z_obs = ProjectiveObservable::computational(0, 2);
    for (i, eps) in [0.25, 0.5, 0.75].into_iter().enumerate() {
        let state = werner(eps).expect("fraction in range");
        let (rx, max) = eval_reality_with_max(&state, &x_obs, K::MinRelative);
        let rz = eval_reality(&state, &z_obs, K::MinRelative);
        let moved_x = state.distance_to(&phi_a(&state, &x_obs).expect("dimension agrees"));
        let moved_z = state.distance_to(&phi_a(&state, &z_obs).expect("dimension agrees"));
        let violation = max3(
            (rx - max).abs(),
            (rz - max).abs(),
            (1e-2 - moved_x).max(1e-2 - moved_z),
        );
        tracker.sample(seed ^ i as u64, violation);
    }
    tracker.into_data(1e-10)
}

fn discord_bound(seed: u64, batch: usize) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let (state, _) = bipartite(rng, k);
        let x = random_observable(0, 2, rng);
        let y = random_observable(0, 2, rng);
        let report = uncertainty_bound(&state, &x, &y).expect("shared qubit subsystem");
        max3(
            report.lhs - report.bound,
            report.lhs - report.discord_bound,
            report.discord_bound - report.bound,
        )
    })
}

fn mixing(seed: u64, batch: usize, kinds: &'static [K]) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let dims = [2, side_dim(k)];
        let rho1 = full_rank(rng, &dims);
        let rho2 = full_rank(rng, &dims);
        let p: f64 = rng.gen();
        let mixed = DensityOperator::mixture(&[(p, &rho1), (1.0 - p, &rho2)])
            .expect("weights sum to one");
        let obs = random_observable(0, 2, rng);
        let kind = kinds[k % kinds.len()];
        p * eval_reality(&rho1, &obs, kind) + (1.0 - p) * eval_reality(&rho2, &obs, kind)
            - eval_reality(&mixed, &obs, kind)
    })
}

const WERNER_HALF_MAX_REL_REALITY: f64 = 0.18232155679395456;

fn mixing_max_rel_witness(seed: u64, _batch: usize) -> CheckData {
    let mut tracker = Tracker::new();
    let uniform = DensityOperator::maximally_mixed(SubsystemLayout::qubit_pair());
    let pure = singlet();
    let mixed = DensityOperator::mixture(&[(0.5, &uniform), (0.5, &pure)])
        .expect("weights sum to one");
    let obs = ProjectiveObservable::computational(0, 2);
    let r_mixed = eval_reality(&mixed, &obs, K::MaxRelative);
    let average = 0.5 * eval_reality(&uniform, &obs, K::MaxRelative)
        + 0.5 * eval_reality(&pure, &obs, K::MaxRelative);
    let violation = max3(
        (r_mixed - WERNER_HALF_MAX_REL_REALITY).abs(),
        (average - 0.5 * LN_2).abs(),
        1e-3 - (average - r_mixed),
    );
    tracker.sample(seed, violation);
    tracker.into_data(1e-10)
}

fn pair_family(kind: K) -> F {
    match kind {
        K::VonNeumann => F::VonNeumann,
        K::RenyiDown(a) => F::Renyi(a),
        K::MinRelative => F::MinRelative,
        K::MaxRelative => F::MaxRelative,
        K::Sandwiched(a) => F::Sandwiched(a),
        K::Tsallis(q) => F::Tsallis(q),
        other => unreachable!("pair additivity is not checked for {other:?}"),
    }
}

/// Divergence of `rho (x) rho` from its copywise-dephased image, with the
/// observable applied independently on each copy's measured slot.
fn pair_divergence(state: &DensityOperator, obs: &ProjectiveObservable, family: F) -> f64 {
    let pair = state.tensor(state);
    let second = obs.on_subsystem(obs.subsystem() + state.layout().n_subsystems());
    let dephased = phi_a(&phi_a(&pair, obs).expect("dimension agrees"), &second)
        .expect("dimension agrees");
    divergence(pair.matrix(), dephased.matrix(), family)
        .expect("dephased target is compatible")
}

fn pair_additivity(seed: u64, batch: usize, kinds: &'static [K]) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        // Doubling squares every eigenvalue, so the spectrum needs a floor to
        // keep the support of the pair state unambiguous at machine scale.
        let raw = full_rank(rng, &[2, 2]);
        let floor = DensityOperator::maximally_mixed(raw.layout().clone());
        let state = DensityOperator::mixture(&[(1.0 - 1e-3, &raw), (1e-3, &floor)])
            .expect("weights sum to one");
        let obs = random_observable(0, 2, rng);
        let kind = kinds[k % kinds.len()];
        let joint = pair_divergence(&state, &obs, pair_family(kind));
        let r_pair = 2.0 * LN_2 - joint;
        (r_pair - 2.0 * eval_reality(&state, &obs, kind)).abs()
    })
}

fn tsallis_additivity_witness(seed: u64, _batch: usize) -> CheckData {
    let mut tracker = Tracker::new();
    let q = 1.5;
    let state = werner(0.5).expect("fraction in range");
    let obs = ProjectiveObservable::computational(0, 2);
    let single = state_divergence(
        &state,
        &phi_a(&state, &obs).expect("dimension agrees"),
        F::Tsallis(q),
    )
    .expect("dephased target is compatible");
    let joint = pair_divergence(&state, &obs, F::Tsallis(q));
    let pseudo_drift = (joint - (2.0 * single + (q - 1.0) * single * single)).abs();
    let r_pair = ln_q(q, 4.0) - 4.0f64.powf(1.0 - q) * joint;
    let r_single = ln_q(q, 2.0) - 2.0f64.powf(1.0 - q) * single;
    let gap = (r_pair - 2.0 * r_single).abs();
    tracker.sample(seed, pseudo_drift.max(1e-6 - gap));
    tracker.into_data(1e-9)
}

fn flag_value_split(ensemble: &Ensemble, obs: &ProjectiveObservable, kind: K) -> (f64, f64) {
    let flagged = flag(ensemble);
    let r_flag = eval_reality(&flagged, obs, kind);
    let averaged: f64 = ensemble
        .weights()
        .iter()
        .zip(ensemble.members())
        .map(|(w, member)| w * eval_reality(member, obs, kind))
        .sum();
    (r_flag, averaged)
}

fn flag_check(seed: u64, batch: usize, kind: K) -> CheckData {
    batch_run(seed, batch, 1e-9, |rng, k, _| {
        let n = 2 + k % 2;
        let ensemble = sample_ensemble(rng, &[2, side_dim(k)], n);
        let obs = random_observable(0, 2, rng);
        let (r_flag, averaged) = flag_value_split(&ensemble, &obs, kind);
        (r_flag - averaged).abs()
    })
}

fn flag_max_rel_witness(seed: u64, _batch: usize) -> CheckData {
    let mut tracker = Tracker::new();
    let uniform = DensityOperator::maximally_mixed(SubsystemLayout::qubit_pair());
    let ensemble = Ensemble::new(vec![0.5, 0.5], vec![uniform, singlet()])
        .expect("weights sum to one");
    let obs = ProjectiveObservable::computational(0, 2);
    let (r_flag, averaged) = flag_value_split(&ensemble, &obs, K::MaxRelative);
    let violation = max3(
        r_flag.abs(),
        (averaged - 0.5 * LN_2).abs(),
        1e-3 - (averaged - r_flag),
    );
    tracker.sample(seed, violation);
    tracker.into_data(1e-10)
}
