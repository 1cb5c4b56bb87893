use apoly_core::db::{parse_table, verify_all, VerifyOptions};
use apoly_core::poly::{gcd_bivar, resultant_t, squarefree_bivar, TriPolyInT};
use apoly_core::BivarPoly;
use proptest::prelude::*;

fn bivar() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((-5i64..=5, 0u32..=3, 0u32..=3), 1..5)
        .prop_map(|t| BivarPoly::from_terms(t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn tri() -> impl Strategy<Value = Vec<BivarPoly>> {
    prop::collection::vec(bivar(), 2..4)
}

fn mul_t(a: &[BivarPoly], b: &[BivarPoly]) -> Vec<BivarPoly> {
    let mut out = vec![BivarPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_divides_both(f in bivar(), g in bivar(), h in bivar()) {
        let fh = &f * &h;
        let gh = &g * &h;
        let d = gcd_bivar(&fh, &gh).unwrap();
        prop_assert!(fh.div_exact(&d).is_some());
        prop_assert!(gh.div_exact(&d).is_some());
        // the common factor survives up to content and sign
        let hp = h.normalize().map(|n| n.poly).unwrap();
        let dn = d.normalize().map(|n| n.poly).unwrap();
        prop_assert!(dn.div_exact(&hp).is_some(), "{} does not contain {}", dn, hp);
    }

    #[test]
    fn squarefree_removes_squares(f in bivar(), g in bivar()) {
        let sq = &(&f * &f) * &g;
        let s = squarefree_bivar(&sq).unwrap();
        prop_assert!(sq.div_exact(&s).is_some());
        prop_assert_eq!(squarefree_bivar(&s).unwrap(), s.clone());
        let fp = f.normalize().map(|n| n.poly).unwrap();
        if !fp.is_constant() {
            prop_assert!(s.div_exact(&fp).is_some());
            prop_assert!(s.div_exact(&(&fp * &fp)).is_none());
        }
    }

    #[test]
    fn common_factor_kills_resultant(f in tri(), g in tri(), h in tri()) {
        let fh = TriPolyInT::from_polynomial(mul_t(&f, &h));
        let gh = TriPolyInT::from_polynomial(mul_t(&g, &h));
        prop_assert!(resultant_t(&fh, &gh).unwrap().is_zero());
    }

    #[test]
    fn batch_ignores_record_order(seed in any::<u64>()) {
        let lines = [
            "unknot ; L - 1",
            "3_1 ; L^2*M^6 - L*M^6 + L - 1",
            "fake ; (L-1)*(L+1)",
            "odd ; L^2*M + L*M^2 + 1",
            "seg ; M + L",
            "r ; L^2 - 1 ; refined",
        ];
        let mut order: Vec<usize> = (0..lines.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let base = verify_all(&parse_table(&lines.join("\n")).records, VerifyOptions::default());
        let text: Vec<&str> = order.iter().map(|&i| lines[i]).collect();
        let shuffled = verify_all(&parse_table(&text.join("\n")).records, VerifyOptions { jobs: Some(3) });
        prop_assert_eq!(base.status, shuffled.status);
        prop_assert_eq!(base.failed_names(), shuffled.failed_names());
        prop_assert_eq!(base.anomaly_names(), shuffled.anomaly_names());
    }
}
