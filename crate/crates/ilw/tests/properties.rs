//! Randomized invariants of transforms, multipliers, ratio reports and configuration.

use proptest::prelude::*;

use ilw::inequality::{check_gns, check_interpolation, check_leibniz};
use ilw::runner::{parse_config, ExperimentConfig, GridConfig, InitialConfig, TimeConfig};
use ilw::spectral::operators::{dispersion, omega_prime, p_operator, q_operator, t_delta};
use ilw::spectral::{symbol_omega, symbol_omega_prime, symbol_p, symbol_q};
use ilw::{Grid, ModelParams, RealField};

fn grid() -> Grid {
    Grid::new(256, 60.0).unwrap()
}

/// Sum of three Gaussian bumps, well inside the box.
fn bumps() -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    prop::collection::vec((-2.0f64..2.0, -10.0f64..10.0, 0.8f64..3.0), 3)
}

fn field(grid: &Grid, spec: &[(f64, f64, f64)]) -> RealField {
    RealField::from_fn(grid, |x| spec.iter().map(|(a, c, w)| a * (-((x - c) / w).powi(2)).exp()).sum())
}

fn close(a: &RealField, b: &RealField, tol: f64) -> bool {
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    a.samples().iter().zip(b.samples()).all(|(x, y)| (x - y).abs() <= tol * scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parseval_and_round_trip(spec in bumps()) {
        let g = grid();
        let u = field(&g, &spec);
        let c = u.transform();
        prop_assert!((c.l2_norm() - u.l2_norm()).abs() <= 1e-12 * u.l2_norm().max(1.0));
        prop_assert!(c.hermitian_defect() < 1e-13 * u.max_abs().max(1.0));
        prop_assert!(close(&c.inverse_transform(), &u, 1e-13));
    }

    #[test]
    fn model_multipliers_are_linear(spec_u in bumps(), spec_v in bumps(), a in -3.0f64..3.0, b in -3.0f64..3.0, delta in 0.2f64..20.0) {
        let g = grid();
        let params = ModelParams::new(delta).unwrap();
        let u = field(&g, &spec_u);
        let v = field(&g, &spec_v);
        let mix = u.zip_with(&v, |x, y| a * x + b * y).unwrap();
        for m in [t_delta(&params, &g), dispersion(&params, &g), omega_prime(&params, &g), q_operator(&params, &g), p_operator(&params, &g)] {
            prop_assert!(m.preserves_real());
            let lhs = m.apply(&mix).unwrap();
            let rhs = m.apply(&u).unwrap().zip_with(&m.apply(&v).unwrap(), |x, y| a * x + b * y).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-10), "{} is not linear", m.name());
        }
    }

    #[test]
    fn odd_multipliers_anticommute_with_reflection(spec in bumps(), delta in 0.2f64..20.0) {
        let g = grid();
        let params = ModelParams::new(delta).unwrap();
        let u = field(&g, &spec);
        for m in [t_delta(&params, &g), dispersion(&params, &g), p_operator(&params, &g)] {
            let lhs = m.apply(&u.reflected()).unwrap();
            let rhs = m.apply(&u).unwrap().reflected().scaled(-1.0);
            prop_assert!(close(&lhs, &rhs, 1e-11), "{}", m.name());
        }
    }

    #[test]
    fn symbol_parity_and_square_roots(k in 1e-4f64..60.0, delta in 0.05f64..50.0) {
        let p = ModelParams::new(delta).unwrap();
        prop_assert_eq!(symbol_omega(&p, -k), -symbol_omega(&p, k));
        prop_assert_eq!(symbol_omega_prime(&p, -k), symbol_omega_prime(&p, k));
        let om = symbol_omega_prime(&p, k);
        prop_assert!(om >= 0.0);
        prop_assert!((symbol_q(&p, k).powi(2) - om).abs() <= 1e-13 * om.max(1e-300) + 1e-300);
        prop_assert!((symbol_p(&p, k).powi(2) - om).abs() <= 1e-13 * om.max(1e-300) + 1e-300);
        prop_assert_eq!(symbol_p(&p, -k), -symbol_p(&p, k));
    }

    #[test]
    fn ratios_are_amplitude_invariant(spec in bumps(), scale in 0.01f64..100.0) {
        let g = grid();
        let u = field(&g, &spec);
        prop_assume!(u.l2_norm() > 1e-3);
        let v = u.scaled(scale);
        let pairs = [
            (check_gns(&u).unwrap(), check_gns(&v).unwrap()),
            (check_interpolation(&u, 1.0, 1.0, 0.4).unwrap(), check_interpolation(&v, 1.0, 1.0, 0.4).unwrap()),
        ];
        for (a, b) in pairs {
            let (ra, rb) = (a.ratio().unwrap(), b.ratio().unwrap());
            prop_assert!((ra - rb).abs() <= 1e-10 * ra, "{}: {} vs {}", a.lemma, ra, rb);
        }
        let one = check_leibniz(&u, &u, 1.0).unwrap().ratio().unwrap();
        let scaled = check_leibniz(&v, &v, 1.0).unwrap().ratio().unwrap();
        prop_assert!((one - scaled).abs() <= 1e-10 * one);
    }

    #[test]
    fn config_round_trips_through_toml(
        seed in any::<u32>(),
        delta in 0.01f64..100.0,
        exp in 5u32..12,
        length in 10.0f64..1000.0,
        dt in 1e-5f64..1e-1,
        steps in 1u32..100_000,
        stride in 1usize..10_000,
        amplitude in -5.0f64..5.0,
        width in 0.1f64..10.0,
        dealias in any::<bool>(),
    ) {
        let d = ExperimentConfig::default();
        let c = ExperimentConfig {
            seed: seed as u64,
            model: ModelParams::new(delta).unwrap(),
            grid: GridConfig { n_points: 1 << exp, length },
            time: TimeConfig { dt, t_end: dt * steps as f64, checkpoint_stride: stride, dealias, ..d.time },
            initial: InitialConfig { amplitude, width, ..d.initial.clone() },
            ..d
        };
        let text = c.emit();
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.content_hash(), c.content_hash());
    }
}
