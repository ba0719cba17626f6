//! Shared samplers and the batch-execution loop used by every check.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{next_sample_seed, stream_for, CheckData, Tracker};
use crate::reality::{reality, Mode, RealityKind};
use crate::state::{
    random_density, random_observable, seeded_rng, DensityOperator, Ensemble,
    ProjectiveObservable, SubsystemLayout,
};

/// Runs `body` once per sample with a fresh per-sample PRNG, tracking the
/// worst violation and the seed that produced it.  The body receives the
/// sample index so checks can rotate through dimension and parameter tables.
pub(super) fn batch_run(
    stream_seed: u64,
    batch: usize,
    tolerance: f64,
    mut body: impl FnMut(&mut ChaCha8Rng, usize, u64) -> f64,
) -> CheckData {
    let mut stream = stream_for(stream_seed);
    let mut tracker = Tracker::new();
    for k in 0..batch {
        let sample_seed = next_sample_seed(&mut stream);
        let mut rng = seeded_rng(sample_seed);
        let violation = body(&mut rng, k, sample_seed);
        tracker.sample(sample_seed, violation);
    }
    tracker.into_data(tolerance)
}

/// Alternates the spectator dimension between 2 and 3.
pub(super) fn side_dim(k: usize) -> usize {
    [2, 3][k % 2]
}

/// Full-rank random state on the given subsystem dimensions.
pub(super) fn full_rank(rng: &mut ChaCha8Rng, dims: &[usize]) -> DensityOperator {
    let layout = SubsystemLayout::new(dims.to_vec()).expect("sampler dims are nonempty");
    let d = layout.total_dim();
    random_density(layout, d, rng).expect("full rank is always a valid rank")
}

/// Random state of the given rank on the given dimensions.
pub(super) fn ranked(rng: &mut ChaCha8Rng, dims: &[usize], rank: usize) -> DensityOperator {
    let layout = SubsystemLayout::new(dims.to_vec()).expect("sampler dims are nonempty");
    random_density(layout, rank, rng).expect("sampler ranks stay within the dimension")
}

/// Random bipartite instance: a qubit carrying the observable at slot 0 and
/// a spectator whose dimension rotates with the sample index.
pub(super) fn bipartite(
    rng: &mut ChaCha8Rng,
    k: usize,
) -> (DensityOperator, ProjectiveObservable) {
    let state = full_rank(rng, &[2, side_dim(k)]);
    let obs = random_observable(0, 2, rng);
    (state, obs)
}

/// Uniform random point on the probability simplex.
pub(super) fn simplex_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| -(rng.gen::<f64>().max(1e-12)).ln())
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Random ensemble of two or three full-rank states on a shared layout.
pub(super) fn sample_ensemble(rng: &mut ChaCha8Rng, dims: &[usize], n: usize) -> Ensemble {
    let weights = simplex_point(rng, n);
    let members: Vec<DensityOperator> = (0..n).map(|_| full_rank(rng, dims)).collect();
    Ensemble::new(weights, members).expect("simplex weights and shared layouts")
}

/// Evaluates a reality kind in exploratory mode; check parameters are chosen
/// so the evaluation is always in-domain.
pub(super) fn eval_reality(
    state: &DensityOperator,
    obs: &ProjectiveObservable,
    kind: RealityKind,
) -> f64 {
    reality(state, obs, kind, Mode::Exploratory)
        .expect("check parameters are in-domain")
        .value
}

/// Same as [`eval_reality`] but also returns the quantifier's top value.
pub(super) fn eval_reality_with_max(
    state: &DensityOperator,
    obs: &ProjectiveObservable,
    kind: RealityKind,
) -> (f64, f64) {
    let r = reality(state, obs, kind, Mode::Exploratory).expect("check parameters are in-domain");
    (r.value, r.max_value)
}
