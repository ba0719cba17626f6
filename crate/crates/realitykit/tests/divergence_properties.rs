//! Cross-family divergence identities, limit consistency, and the recorded
//! property ranges.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use realitykit::channels::phi_a;
use realitykit::divergences::{
    conditional_information, conditional_information_optimized, discord, divergence,
    divergence_extended, entropy, mutual_information, property_holds, property_table,
    state_divergence, DivergenceFamily as F, DivergenceProperty as P, EntropyKind,
};
use realitykit::error::Error;
use realitykit::state::{
    random_density, random_density_seeded, random_observable, seeded_rng, singlet, werner,
    DensityOperator, ProjectiveObservable, SubsystemLayout,
};
use std::f64::consts::LN_2;

fn diag(values: &[f64]) -> DensityOperator {
    let n = values.len();
    let mut m = realitykit::CMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = num_complex::Complex64::new(v, 0.0);
    }
    DensityOperator::new(m, SubsystemLayout::single(n)).unwrap()
}

#[test]
fn renyi_two_entropy_of_a_three_quarters_mixture() {
    let state = diag(&[0.75, 0.25]);
    let s2 = entropy(&state, EntropyKind::Renyi(2.0)).unwrap();
    assert_abs_diff_eq!(s2, 0.4700036292457356, epsilon = 1e-12);
}

#[test]
fn singlet_conditional_information_is_two_bits() {
    let i = conditional_information(&singlet(), 0, F::VonNeumann).unwrap();
    assert_abs_diff_eq!(i, 2.0 * LN_2, epsilon = 1e-12);
}

#[test]
fn singlet_discord_under_a_spin_observable_is_one_bit() {
    let obs = ProjectiveObservable::computational(0, 2);
    let d = discord(&singlet(), &obs).unwrap();
    assert_abs_diff_eq!(d, LN_2, epsilon = 1e-12);
    assert_abs_diff_eq!(mutual_information(&singlet()).unwrap(), 2.0 * LN_2, epsilon = 1e-12);
}

#[test]
fn renyi_orders_near_one_collapse_onto_the_von_neumann_value() {
    for seed in 0..50 {
        let state = random_density_seeded(SubsystemLayout::qubit_pair(), 4, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0x51);
        let obs = random_observable(0, 2, &mut rng);
        let dephased = phi_a(&state, &obs).unwrap();
        let vn = state_divergence(&state, &dephased, F::VonNeumann).unwrap();
        for a in [1.0 - 1e-5, 1.0 + 1e-5] {
            let near = state_divergence(&state, &dephased, F::Renyi(a)).unwrap();
            assert!((near - vn).abs() <= 1e-4, "seed {seed} alpha {a}");
        }
        for q in [1.0 - 1e-5, 1.0 + 1e-5] {
            let near = state_divergence(&state, &dephased, F::Tsallis(q)).unwrap();
            assert!((near - vn).abs() <= 1e-4, "seed {seed} q {q}");
        }
    }
}

#[test]
fn collision_divergence_is_the_sandwiched_order_two() {
    let state = werner(0.4).unwrap();
    let obs = ProjectiveObservable::computational(0, 2);
    let dephased = phi_a(&state, &obs).unwrap();
    let collision = state_divergence(&state, &dephased, F::Collision).unwrap();
    let sandwiched = state_divergence(&state, &dephased, F::Sandwiched(2.0)).unwrap();
    assert_abs_diff_eq!(collision, sandwiched, epsilon = 1e-14);
}

#[test]
fn kernel_violations_error_or_report_infinity() {
    let pure = diag(&[1.0, 0.0]);
    let other = diag(&[0.0, 1.0]);
    let err = divergence(pure.matrix(), other.matrix(), F::VonNeumann).unwrap_err();
    assert!(matches!(err, Error::KernelViolation { .. }));
    let ext = divergence_extended(pure.matrix(), other.matrix(), F::Renyi(1.5)).unwrap();
    assert!(ext.is_infinite());
    let below_one = divergence_extended(pure.matrix(), other.matrix(), F::Renyi(0.5)).unwrap();
    assert!(below_one.is_infinite(), "orthogonal supports leave no finite value");
}

#[test]
fn von_neumann_and_renyi_divergences_add_over_tensor_products() {
    let mut rng = seeded_rng(77);
    for _ in 0..20 {
        let a1 = random_density(SubsystemLayout::single(2), 2, &mut rng).unwrap();
        let b1 = random_density(SubsystemLayout::single(3), 3, &mut rng).unwrap();
        let a2 = random_density(SubsystemLayout::single(2), 2, &mut rng).unwrap();
        let b2 = random_density(SubsystemLayout::single(3), 3, &mut rng).unwrap();
        let joint_rho = a1.tensor(&b1);
        let joint_sigma = a2.tensor(&b2);
        for family in [F::VonNeumann, F::Renyi(0.5), F::Renyi(1.6), F::Sandwiched(0.7)] {
            let joint = state_divergence(&joint_rho, &joint_sigma, family).unwrap();
            let parts = state_divergence(&a1, &a2, family).unwrap()
                + state_divergence(&b1, &b2, family).unwrap();
            assert_abs_diff_eq!(joint, parts, epsilon = 1e-10);
        }
    }
}

#[test]
fn tsallis_divergence_is_pseudo_additive_over_tensor_products() {
    let mut rng = seeded_rng(78);
    let q = 1.5;
    for _ in 0..20 {
        let a1 = random_density(SubsystemLayout::single(2), 2, &mut rng).unwrap();
        let b1 = random_density(SubsystemLayout::single(2), 2, &mut rng).unwrap();
        let a2 = random_density(SubsystemLayout::single(2), 2, &mut rng).unwrap();
        let b2 = random_density(SubsystemLayout::single(2), 2, &mut rng).unwrap();
        let joint = state_divergence(&a1.tensor(&b1), &a2.tensor(&b2), F::Tsallis(q)).unwrap();
        let d1 = state_divergence(&a1, &a2, F::Tsallis(q)).unwrap();
        let d2 = state_divergence(&b1, &b2, F::Tsallis(q)).unwrap();
        assert_abs_diff_eq!(joint, d1 + d2 + (q - 1.0) * d1 * d2, epsilon = 1e-10);
    }
}

#[test]
fn optimized_conditional_information_vanishes_on_the_maximally_mixed_state() {
    let state = DensityOperator::maximally_mixed(SubsystemLayout::qubit_pair());
    for alpha in [0.2, 0.5, 0.8] {
        let i = conditional_information_optimized(&state, 0, alpha).unwrap();
        assert_abs_diff_eq!(i, 0.0, epsilon = 1e-12);
    }
}

#[test]
fn optimized_conditional_information_of_a_product_state_drops_the_second_party() {
    let mut rng = seeded_rng(5);
    let a = random_density(SubsystemLayout::single(2), 2, &mut rng).unwrap();
    let b = random_density(SubsystemLayout::single(3), 3, &mut rng).unwrap();
    let product = a.tensor(&b);
    for alpha in [0.3, 0.6, 0.9] {
        let i = conditional_information_optimized(&product, 0, alpha).unwrap();
        let local = LN_2 - entropy(&a, EntropyKind::Renyi(alpha)).unwrap();
        assert_abs_diff_eq!(i, local, epsilon = 1e-9);
    }
}

#[test]
fn property_table_covers_every_family_and_property() {
    let table = property_table();
    assert_eq!(table.len(), 36);
    let families: std::collections::BTreeSet<&str> =
        table.iter().map(|row| row.family).collect();
    assert_eq!(families.len(), 6);
    for property in P::ALL {
        assert_eq!(table.iter().filter(|row| row.property == property).count(), 6);
    }
}

#[test]
fn property_ranges_match_the_recorded_claims() {
    assert!(property_holds(F::VonNeumann, P::JointConvexity).unwrap());
    assert!(property_holds(F::Renyi(0.5), P::JointConvexity).unwrap());
    assert!(!property_holds(F::Renyi(1.5), P::JointConvexity).unwrap());
    assert!(!property_holds(F::MaxRelative, P::JointConvexity).unwrap());
    assert!(property_holds(F::MaxRelative, P::DataProcessing).unwrap());
    assert!(property_holds(F::Sandwiched(5.0), P::DataProcessing).unwrap());
    assert!(!property_holds(F::Sandwiched(0.3), P::DataProcessing).unwrap());
    assert!(property_holds(F::Tsallis(2.0), P::DataProcessing).unwrap());
    assert!(!property_holds(F::Tsallis(2.5), P::DataProcessing).unwrap());
    assert!(property_holds(F::MinRelative, P::Additivity).unwrap());
    assert!(!property_holds(F::Tsallis(0.5), P::Additivity).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn divergences_from_the_dephased_state_are_nonnegative(
        seed in 0u64..1u64 << 48,
        pick in 0usize..5,
    ) {
        let layout = SubsystemLayout::qubit_pair();
        let state = random_density_seeded(layout, 4, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0x1234);
        let obs = random_observable(0, 2, &mut rng);
        let dephased = phi_a(&state, &obs).unwrap();
        let family = [F::VonNeumann, F::Renyi(0.5), F::Sandwiched(0.7), F::MinRelative, F::Tsallis(1.5)][pick];
        let d = state_divergence(&state, &dephased, family).unwrap();
        prop_assert!(d >= -1e-12);
    }

    #[test]
    fn dephasing_never_increases_the_divergence_between_two_states(
        seed in 0u64..1u64 << 48,
    ) {
        let layout = SubsystemLayout::qubit_pair();
        let rho = random_density_seeded(layout.clone(), 4, seed).unwrap();
        let sigma = random_density_seeded(layout, 4, seed ^ 0x9e37).unwrap();
        let mut rng = seeded_rng(seed ^ 0x55);
        let obs = random_observable(0, 2, &mut rng);
        let before = state_divergence(&rho, &sigma, F::VonNeumann).unwrap();
        let after = state_divergence(
            &phi_a(&rho, &obs).unwrap(),
            &phi_a(&sigma, &obs).unwrap(),
            F::VonNeumann,
        ).unwrap();
        prop_assert!(after <= before + 1e-9);
    }

    #[test]
    fn renyi_divergence_is_nondecreasing_in_the_order(
        seed in 0u64..1u64 << 48,
    ) {
        let layout = SubsystemLayout::qubit_pair();
        let state = random_density_seeded(layout, 4, seed).unwrap();
        let mut rng = seeded_rng(seed ^ 0x31);
        let obs = random_observable(0, 2, &mut rng);
        let dephased = phi_a(&state, &obs).unwrap();
        let orders = [0.2, 0.5, 0.8, 1.0, 1.4, 2.0];
        let values: Vec<f64> = orders
            .iter()
            .map(|&a| state_divergence(&state, &dephased, F::Renyi(a)).unwrap())
            .collect();
        for pair in values.windows(2) {
            prop_assert!(pair[1] >= pair[0] - 1e-9);
        }
    }
}
