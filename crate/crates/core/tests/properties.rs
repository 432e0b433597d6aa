use proptest::prelude::*;

use tavis_core::dynamics::{evolve, Family, WStateSpec};
use tavis_core::entanglement::{
    concurrence_series, concurrence_wootters, concurrence_xstate, reduced_density, scan_esd,
    ConcurrenceSeries,
};
use tavis_core::grid;
use tavis_core::kernels::ModelParams;
use tavis_core::oracle::{build_hamiltonian, oracle_u};
use tavis_core::Complex64;

fn arb_spec() -> impl Strategy<Value = WStateSpec> {
    (
        prop_oneof![Just(Family::Family1), Just(Family::Family2)],
        proptest::array::uniform3((-1.0f64..1.0, -1.0f64..1.0)),
    )
        .prop_filter_map("zero vector", |(family, raw)| {
            let z = raw.map(|(re, im)| Complex64::new(re, im));
            let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| {
                let [a, b, c] = z.map(|c| c / norm);
                WStateSpec::new(family, a, b, c).unwrap()
            })
        })
}

proptest! {
    #[test]
    fn closed_form_concurrence_matches_wootters(spec in arb_spec(), alpha in 0.0f64..8.0, gt in 0.0f64..30.0) {
        let x = evolve(&spec, ModelParams::new(alpha, gt).unwrap()).unwrap();
        let rho = reduced_density(&x).unwrap();
        let closed = concurrence_xstate(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&closed));
        prop_assert!((closed - concurrence_wootters(&rho)).abs() < 1e-10);
        if spec.family() == Family::Family1 {
            for k in 0..4 {
                prop_assert_eq!(rho.get(0, k), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn analytic_evolution_matches_oracle(spec in arb_spec(), alpha in 0.0f64..8.0, gt in 0.0f64..30.0) {
        let x = evolve(&spec, ModelParams::new(alpha, gt).unwrap()).unwrap();
        let h = build_hamiltonian(spec.family(), alpha).unwrap();
        let want = oracle_u(&h, gt).unwrap() * spec.initial_vector();
        for (a, b) in x.amps().iter().zip(want.iter()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn positive_series_has_no_windows(values in proptest::collection::vec(1e-6f64..1.0, 1..200)) {
        let gts: Vec<f64> = (0..values.len()).map(|i| i as f64 * 0.1).collect();
        let s = ConcurrenceSeries::new(gts, values).unwrap();
        prop_assert_eq!(scan_esd(&s, 1e-9, 0.1).unwrap().count(), 0);
    }

    #[test]
    fn windows_are_ordered_disjoint_and_dark(spec in arb_spec(), alpha in 0.0f64..6.0) {
        let g = grid::uniform(0.0, 25.0, 1001).unwrap();
        let s = concurrence_series(&spec, alpha, &g).unwrap();
        let r = scan_esd(&s, 1e-9, 0.05).unwrap();
        for w in r.windows.windows(2) {
            prop_assert!(w[0].1 < w[1].0);
        }
        for &(a, b) in &r.windows {
            prop_assert!(b - a >= 0.05);
            for (t, c) in s.gts().iter().zip(s.values()) {
                if *t >= a && *t <= b {
                    prop_assert!(*c <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn concurrence_is_lipschitz_on_the_grid() {
    // Refining the grid 2x must not reveal jumps larger than the coarse-grid
    // slope bound allows.
    for family in [Family::Family1, Family::Family2] {
        let spec = WStateSpec::equal_weights(family);
        for alpha in [0.0, 1.0, 6.0] {
            let coarse =
                concurrence_series(&spec, alpha, &grid::uniform(0.0, 25.0, 2001).unwrap()).unwrap();
            let fine =
                concurrence_series(&spec, alpha, &grid::uniform(0.0, 25.0, 4001).unwrap()).unwrap();
            let dt = coarse.gts()[1];
            let slope = coarse
                .values()
                .windows(2)
                .map(|w| (w[1] - w[0]).abs() / dt)
                .fold(0.0, f64::max);
            let fine_jump = fine
                .values()
                .windows(2)
                .map(|w| (w[1] - w[0]).abs())
                .fold(0.0, f64::max);
            assert!(
                fine_jump <= 2.0 * slope * (dt / 2.0) + 1e-12,
                "family {family:?} alpha {alpha}"
            );
            for (i, c) in coarse.values().iter().enumerate() {
                assert_eq!(*c, fine.values()[2 * i]);
            }
        }
    }
}
