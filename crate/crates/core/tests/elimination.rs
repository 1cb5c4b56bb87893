//! Every two-bridge knot inside the elimination envelope, checked against
//! numeric representations and the structural invariants.

use apoly_core::knots::{
    eliminate_two_bridge, membership_residuals, sample_representation_points, torus_a,
    validate_two_bridge,
};
use apoly_core::structure::{symmetry_check, theorem1_verdict, Verdict};
use apoly_core::BivarPoly;
use num_complex::Complex64;

fn two_bridge_pairs(max_p: u64) -> Vec<(u64, u64)> {
    (3..=max_p)
        .step_by(2)
        .flat_map(|p| (1..p).map(move |q| (p, q)))
        .filter(|&(p, q)| validate_two_bridge(p, q).is_ok())
        .collect()
}

fn sample_ms() -> Vec<Complex64> {
    (0..6)
        .map(|k| Complex64::from_polar(1.0 + 0.15 * k as f64, 0.4 + 0.7 * k as f64))
        .collect()
}

#[test]
fn small_two_bridge_knots_pass_every_check() {
    let lm1 = BivarPoly::from_terms([(1i64, 0u32, 1u32), (-1, 0, 0)]);
    for (p, q) in two_bridge_pairs(9) {
        let a = eliminate_two_bridge(p, q).unwrap();
        assert!(a.is_a_normal(), "K({p}/{q})");
        assert!(a.deg_m().unwrap() > 0, "K({p}/{q})");
        assert_eq!(theorem1_verdict(&a, true).unwrap(), Verdict::Pass, "K({p}/{q}): {a}");
        assert!(symmetry_check(&a).unwrap().is_some(), "K({p}/{q}) not symmetric");
        let once = a.div_exact(&lm1).expect("L - 1 divides");
        assert!(once.div_exact(&lm1).is_none(), "K({p}/{q}): (L - 1)^2 divides");

        let pts = sample_representation_points(p, q, &sample_ms()).unwrap();
        assert!(!pts.is_empty());
        let worst = membership_residuals(&a, &pts).into_iter().fold(0.0, f64::max);
        assert!(worst < 1e-8, "K({p}/{q}) residual {worst:e}");
    }
}

#[test]
fn mirror_pairs_agree_up_to_m_inversion() {
    // K(p/q) and K(p/(p-q)) are mirror images
    for (p, q) in two_bridge_pairs(9) {
        let a = eliminate_two_bridge(p, q).unwrap();
        let b = eliminate_two_bridge(p, p - q).unwrap();
        assert!(
            a == b || a == b.invert_m().normalized().unwrap(),
            "K({p}/{q}) vs K({p}/{})",
            p - q
        );
    }
}

#[test]
fn two_strand_torus_knots_match_closed_form() {
    for p in [3u64, 5, 7, 9, 11] {
        assert_eq!(eliminate_two_bridge(p, 1).unwrap(), torus_a(2, p as i64).unwrap(), "T(2,{p})");
    }
}

#[test]
fn torus_knots_pass() {
    for p in 2..=7i64 {
        for q in p + 1..=9 {
            if let Ok(a) = torus_a(p, q) {
                assert_eq!(theorem1_verdict(&a, true).unwrap(), Verdict::Pass, "T({p},{q})");
                let mirror = torus_a(p, -q).unwrap();
                assert_eq!(mirror, a.invert_m().normalized().unwrap());
            }
        }
    }
}
