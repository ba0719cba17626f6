//! Reality quantifiers against independently computed reference values,
//! plus their structural identities on random states.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use realitykit::channels::{monitoring, phi_a};
use realitykit::divergences::{discord, ln_q};
use realitykit::reality::{
    irreality, min_discord, reality, reality_renyi_bar, reality_renyi_up,
    reality_renyi_up_via_dilation, reality_vn, uncertainty_bound, Mode, RealityKind as K,
};
use realitykit::state::{
    parity_family, random_density_seeded, random_observable, seeded_rng, singlet, werner,
    ProjectiveObservable, SubsystemLayout,
};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};

fn z_obs() -> ProjectiveObservable {
    ProjectiveObservable::computational(0, 2)
}

fn werner_reality(kind: K, eps: f64) -> f64 {
    reality(&werner(eps).unwrap(), &z_obs(), kind, Mode::Exploratory)
        .unwrap()
        .value
}

#[test]
fn werner_von_neumann_reality_reference_value() {
    assert_abs_diff_eq!(werner_reality(K::VonNeumann, 0.5), 0.5112077017897151, epsilon = 1e-12);
}

#[test]
fn werner_renyi_reality_reference_values() {
    let cases = [
        (0.5, 0.3, 0.6555777980653335),
        (0.5, 0.7, 0.4878581545044969),
        (0.125, 0.5, 0.6660958783900822),
        (0.25, 0.9, 0.4585033274812623),
    ];
    for (alpha, eps, expected) in cases {
        assert_abs_diff_eq!(werner_reality(K::RenyiDown(alpha), eps), expected, epsilon = 1e-11);
    }
}

#[test]
fn werner_optimized_renyi_reality_reference_values() {
    assert_abs_diff_eq!(werner_reality(K::RenyiUp(0.5), 0.5), 0.5927836007167083, epsilon = 1e-10);
    assert_abs_diff_eq!(werner_reality(K::RenyiUp(0.2), 0.8), 0.5665282357378516, epsilon = 1e-10);
}

#[test]
fn werner_tsallis_reality_reference_values() {
    let cases = [
        (0.5, 0.5, 0.6887856106452577),
        (1.5, 0.3, 0.5113112770355921),
        (2.0, 0.5, 1.0 / 3.0),
    ];
    for (q, eps, expected) in cases {
        assert_abs_diff_eq!(werner_reality(K::Tsallis(q), eps), expected, epsilon = 1e-11);
    }
}

#[test]
fn werner_min_and_max_relative_reality_reference_values() {
    assert_abs_diff_eq!(werner_reality(K::MinRelative, 0.5), LN_2, epsilon = 1e-12);
    assert_abs_diff_eq!(
        werner_reality(K::MaxRelative, 0.5),
        0.18232155679395456,
        epsilon = 1e-11
    );
}

#[test]
fn werner_reality_near_order_one_tracks_the_von_neumann_value() {
    let vn = werner_reality(K::VonNeumann, 0.5);
    assert_abs_diff_eq!(werner_reality(K::RenyiDown(1.0 - 1e-5), 0.5), vn, epsilon = 1e-4);
    assert_abs_diff_eq!(werner_reality(K::Tsallis(1.0 - 1e-5), 0.5), vn, epsilon = 1e-4);
}

#[test]
fn restricted_optimization_reality_sits_between_the_renyi_variants() {
    let state = werner(0.5).unwrap();
    let bar = reality_renyi_bar(&state, &z_obs(), 0.5, 99).unwrap().value;
    assert_abs_diff_eq!(bar, 0.5927836007167097, epsilon = 1e-6);
    let down = werner_reality(K::RenyiDown(0.5), 0.5);
    let up = werner_reality(K::RenyiUp(0.5), 0.5);
    assert!(down - 1e-9 <= bar && bar <= up + 1e-9);
}

#[test]
fn parity_family_reality_reference_values() {
    let cases = [
        (0.5, 0.7, 0.0, 0.2342573209093447),
        (0.5, 0.7, FRAC_PI_2, 0.49127155201909234),
        (0.25, 0.4, FRAC_PI_4, 0.4880498139597379),
    ];
    for (alpha, mu, polar, expected) in cases {
        let state = parity_family(mu).unwrap();
        let obs = ProjectiveObservable::spin(0, 0.0, polar);
        let value = reality(&state, &obs, K::RenyiDown(alpha), Mode::Monotone)
            .unwrap()
            .value;
        assert_abs_diff_eq!(value, expected, epsilon = 1e-11);
    }
}

#[test]
fn parity_family_reality_ignores_the_azimuthal_angle() {
    let state = parity_family(0.7).unwrap();
    let reference = reality(
        &state,
        &ProjectiveObservable::spin(0, 0.0, FRAC_PI_4),
        K::RenyiDown(0.5),
        Mode::Monotone,
    )
    .unwrap()
    .value;
    for azimuth in [0.4, 1.3, 2.9] {
        let rotated = reality(
            &state,
            &ProjectiveObservable::spin(0, azimuth, FRAC_PI_4),
            K::RenyiDown(0.5),
            Mode::Monotone,
        )
        .unwrap()
        .value;
        assert_abs_diff_eq!(rotated, reference, epsilon = 1e-9);
    }
}

#[test]
fn singlet_has_zero_reality_for_every_spin_direction() {
    for (theta, polar) in [(0.0, 0.0), (0.3, 1.1), (2.1, FRAC_PI_2)] {
        let obs = ProjectiveObservable::spin(0, theta, polar);
        let r = reality_vn(&singlet(), &obs).unwrap();
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(irreality(&singlet(), &obs).unwrap(), LN_2, epsilon = 1e-12);
    }
}

#[test]
fn reality_and_irreality_split_the_log_dimension() {
    for seed in 0..50 {
        let state = random_density_seeded(SubsystemLayout::new(vec![2, 3]).unwrap(), 6, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0xc0ffee);
        let obs = random_observable(0, 2, &mut rng);
        let r = reality_vn(&state, &obs).unwrap();
        let i = irreality(&state, &obs).unwrap();
        assert_abs_diff_eq!(r.value + i, LN_2, epsilon = 1e-12);
    }
}

#[test]
fn irreality_decomposes_into_local_coherence_and_discord() {
    for seed in 0..50 {
        let state = random_density_seeded(SubsystemLayout::qubit_pair(), 4, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0xd15c);
        let obs = random_observable(0, 2, &mut rng);
        let local = state.reduced(&[0]).unwrap();
        let total = irreality(&state, &obs).unwrap();
        let local_part = irreality(&local, &obs).unwrap();
        let discord_part = discord(&state, &obs).unwrap();
        assert_abs_diff_eq!(total, local_part + discord_part, epsilon = 1e-10);
    }
}

#[test]
fn optimized_renyi_reality_matches_its_dilation_construction() {
    for seed in 0..20 {
        let state = random_density_seeded(SubsystemLayout::new(vec![2, 3]).unwrap(), 6, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0xd11a);
        let obs = random_observable(0, 2, &mut rng);
        for alpha in [0.3, 0.6, 0.9] {
            let direct = reality_renyi_up(&state, &obs, alpha).unwrap().value;
            let literal = reality_renyi_up_via_dilation(&state, &obs, alpha).unwrap().value;
            assert_abs_diff_eq!(direct, literal, epsilon = 1e-10);
        }
    }
}

#[test]
fn reality_is_nonincreasing_in_the_renyi_order() {
    let orders = [0.125, 0.25, 0.5, 1.0 - 1e-9];
    for eps in [0.2, 0.5, 0.8] {
        let values: Vec<f64> = orders
            .iter()
            .map(|&a| werner_reality(K::RenyiDown(a), eps))
            .collect();
        for pair in values.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9, "eps {eps}: {values:?}");
        }
    }
}

#[test]
fn tsallis_reality_is_nonincreasing_in_q_and_capped_by_ln_q_of_the_dimension() {
    for eps in [0.3, 0.7] {
        let state = werner(eps).unwrap();
        let qs = [0.5, 1.0 - 1e-9, 1.5, 2.0];
        let values: Vec<f64> = qs
            .iter()
            .map(|&q| {
                let r = reality(&state, &z_obs(), K::Tsallis(q), Mode::Monotone).unwrap();
                assert_abs_diff_eq!(r.max_value, ln_q(q, 2.0), epsilon = 1e-12);
                r.value
            })
            .collect();
        for pair in values.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9, "eps {eps}: {values:?}");
        }
    }
}

#[test]
fn monotone_mode_rejects_orders_without_guarantees() {
    let state = werner(0.5).unwrap();
    assert!(reality(&state, &z_obs(), K::RenyiDown(1.5), Mode::Monotone).is_err());
    assert!(reality(&state, &z_obs(), K::Sandwiched(0.3), Mode::Monotone).is_err());
    assert!(reality(&state, &z_obs(), K::Tsallis(2.5), Mode::Monotone).is_err());
    assert!(reality(&state, &z_obs(), K::MinRelative, Mode::Monotone).is_err());

    let relaxed = reality(&state, &z_obs(), K::RenyiDown(1.5), Mode::Exploratory).unwrap();
    assert!(!relaxed.guaranteed_monotone);
    let guarded = reality(&state, &z_obs(), K::RenyiDown(0.5), Mode::Monotone).unwrap();
    assert!(guarded.guaranteed_monotone);
}

#[test]
fn monitoring_cannot_raise_reality_away_from_its_own_observable() {
    for seed in 0..30 {
        let state = random_density_seeded(SubsystemLayout::qubit_pair(), 4, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0xfade);
        let obs = random_observable(0, 2, &mut rng);
        let eps = 0.1 + 0.8 * (seed as f64) / 30.0;
        let monitored = monitoring(&state, &obs, eps).unwrap();
        let before = reality_vn(&state, &obs).unwrap().value;
        let after = reality_vn(&monitored, &obs).unwrap().value;
        assert!(after >= before - 1e-10, "seed {seed}");
    }
}

#[test]
fn singlet_saturates_the_discord_strengthened_uncertainty_bound() {
    let x = ProjectiveObservable::spin(0, 0.0, FRAC_PI_2);
    let z = z_obs();
    let report = uncertainty_bound(&singlet(), &x, &z).unwrap();
    assert_abs_diff_eq!(report.lhs, 0.0, epsilon = 1e-10);
    assert_abs_diff_eq!(report.bound, 2.0 * LN_2, epsilon = 1e-12);
    assert_abs_diff_eq!(report.discord_bound, 0.0, epsilon = 1e-8);
    assert_abs_diff_eq!(min_discord(&singlet(), 0, &[&x, &z]).unwrap(), LN_2, epsilon = 1e-9);
}

#[test]
fn dephased_states_have_full_reality_and_none_is_left_after_projection() {
    let mut rng = seeded_rng(31);
    let state = random_density_seeded(SubsystemLayout::qubit_pair(), 4, 31).unwrap();
    let obs = random_observable(0, 2, &mut rng);
    let dephased = phi_a(&state, &obs).unwrap();
    assert_abs_diff_eq!(reality_vn(&dephased, &obs).unwrap().value, LN_2, epsilon = 1e-12);
    assert_abs_diff_eq!(irreality(&dephased, &obs).unwrap(), 0.0, epsilon = 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reality_values_stay_on_their_declared_scale(
        seed in 0u64..1u64 << 48,
        pick in 0usize..6,
    ) {
        let state = random_density_seeded(SubsystemLayout::qubit_pair(), 4, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0xbeef);
        let obs = random_observable(0, 2, &mut rng);
        let kind = [
            K::VonNeumann,
            K::RenyiDown(0.5),
            K::RenyiUp(0.5),
            K::Tsallis(1.5),
            K::Sandwiched(0.7),
            K::MinRelative,
        ][pick];
        let r = reality(&state, &obs, kind, Mode::Exploratory).unwrap();
        prop_assert!(r.value >= -1e-10);
        prop_assert!(r.value <= r.max_value + 1e-10);
    }

    #[test]
    fn optimized_reality_dominates_the_plain_renyi_value(
        seed in 0u64..1u64 << 48,
        alpha in 0.1f64..0.95,
    ) {
        let state = random_density_seeded(SubsystemLayout::qubit_pair(), 4, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0xabba);
        let obs = random_observable(0, 2, &mut rng);
        let down = reality(&state, &obs, K::RenyiDown(alpha), Mode::Monotone).unwrap().value;
        let up = reality(&state, &obs, K::RenyiUp(alpha), Mode::Monotone).unwrap().value;
        prop_assert!(up >= down - 1e-10);
    }
}
