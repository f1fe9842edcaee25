mod common;

use common::ring;
use noether::algebra::{Complex64, Monomial};
use noether::dual::DualConfig;
use noether::groebner::Ideal;
use noether::noetherian::specialized_noetherian_operators;
use noether::numerical::{numerical_noetherian_operators, residual_ok, sample_points, NumericalConfig, SamplerConfig, SAMPLE_RESIDUAL};
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Interpolated coefficients agree with fresh specialized operators at
/// points never used for fitting.
#[test]
fn interpolation_agrees_at_held_out_points() {
    let cases: [(&[&str], &[&str], &[usize], [[f64; 4]; 3]); 2] = [
        (
            &["x1", "x2", "x3", "x4"],
            &["x1^2", "x1*x2", "x2^2", "x3*x1 - x4*x2"],
            &[0, 1],
            [[0.0, 0.0, 1.5, -2.0], [0.0, 0.0, -0.7, 3.1], [0.0, 0.0, 4.25, 0.5]],
        ),
        (
            &["x1", "x2", "x3", "x4"],
            &["x1^2", "x2^2", "x1 - x2*x3*x4"],
            &[0, 1],
            [[0.0, 0.0, 2.0, 3.0], [0.0, 0.0, -1.25, 0.5], [0.0, 0.0, 0.3, -6.0]],
        ),
    ];
    for (vars, gens, dependent, fresh) in cases {
        let r = ring(vars);
        let i = Ideal::parse(&r, gens).unwrap();
        let ops = numerical_noetherian_operators(&i, dependent, &NumericalConfig::default()).unwrap();
        for pt in fresh {
            let pt: Vec<Complex64> = pt.iter().map(|&x| c(x)).collect();
            let special = specialized_noetherian_operators(&i, &pt, dependent, &DualConfig::default()).unwrap();
            assert_eq!(special.len(), ops.len());
            for (a, s) in ops.iter().zip(&special) {
                for (alpha, coeff) in a.terms() {
                    let f = coeff.constant_value().unwrap();
                    let predicted = f.evaluate(&pt).unwrap();
                    let actual = s.scalar(alpha);
                    assert!(
                        (predicted - actual).norm() <= 1e-6 * actual.norm().max(1.0),
                        "{} at {pt:?}: {predicted} vs {actual}",
                        f.to_text(r.names())
                    );
                }
            }
        }
        assert!(ops.iter().all(|a| a.coeff(&Monomial::one()).len() <= 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn sampled_points_lie_on_the_variety(seed in 0u64..1_000_000, which in 0usize..3) {
        let systems: [(&[&str], &[&str]); 3] = [
            (&["x1", "x2"], &["x1^2 + x2^2 - 1"]),
            (&["x1", "x2", "x3"], &["x1 - x3^2", "x2*x3 - 1"]),
            (&["x1", "x2", "x3"], &["x1^2", "x2^2", "x1 - x2*x3"]),
        ];
        let (vars, gens) = systems[which];
        let r = ring(vars);
        let i = Ideal::parse(&r, gens).unwrap();
        let cfg = SamplerConfig { seed, ..Default::default() };
        let pts = sample_points(&i, 3, &cfg).unwrap();
        prop_assert_eq!(pts.len(), 3);
        for p in &pts {
            prop_assert!(residual_ok(i.gens(), p, SAMPLE_RESIDUAL), "{:?}", p);
        }
    }
}
