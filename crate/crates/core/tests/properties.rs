use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;
use proptest::prelude::*;

use cpap_core::analytic::hp;
use cpap_core::asymptotics::{approximant_root, neville_diagonal, ApproximantShape, RatioSequence};
use cpap_core::cluster::{gj_invert, OverlapFamily};
use cpap_core::dp::count_series;
use cpap_core::perm::{brute_count, symmetry, Pattern, Symmetry};
use cpap_core::series::{CountSeries, TruncatedSeries};

const ORDER: usize = 8;

fn series(unit: bool) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-6i64..=6, ORDER + 1).prop_map(move |mut v| {
        if unit && v[0] == 0 {
            v[0] = 1;
        }
        TruncatedSeries::from_ints(v, ORDER)
    })
}

fn inner_series() -> impl Strategy<Value = TruncatedSeries> {
    series(false).prop_map(|s| {
        let mut s = s;
        s.set_coeff(0, RBig::ZERO);
        s
    })
}

fn pattern(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Pattern> {
    len.prop_flat_map(|m| Just((1..=m as u8).collect::<Vec<u8>>()).prop_shuffle())
        .prop_map(|v| Pattern::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_axioms(a in series(false), b in series(false), c in series(false)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn reciprocal_is_inverse(a in series(true)) {
        let r = a.reciprocal().unwrap();
        prop_assert_eq!(a.mul(&r), TruncatedSeries::one(ORDER));
    }

    #[test]
    fn composition_is_associative(f in series(false), g in inner_series(), h in inner_series()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn egf_and_ogf_are_inverse(a in series(false)) {
        prop_assert_eq!(a.ogf_to_egf().egf_to_ogf(), a);
    }

    #[test]
    fn symmetries_preserve_counts(p in pattern(3..=5)) {
        let base = count_series(&p, 12).unwrap();
        for s in [Symmetry::Reverse, Symmetry::Complement] {
            let image = count_series(&symmetry(&p, s), 12).unwrap();
            prop_assert_eq!(image.counts(), base.counts());
        }
    }

    #[test]
    fn enumerator_matches_brute_force(p in pattern(3..=5)) {
        let dp = count_series(&p, 7).unwrap();
        for n in 0..=7 {
            prop_assert_eq!(&dp.counts()[n], &UBig::from(brute_count(&p, n).unwrap()));
        }
    }

    #[test]
    fn normalized_counts_never_increase(p in pattern(3..=6)) {
        let c = count_series(&p, 18).unwrap();
        prop_assert!(RatioSequence::from_counts(&c, 64).is_ok());
    }

    #[test]
    fn count_json_round_trip(p in pattern(3..=5)) {
        let c = count_series(&p, 10).unwrap();
        prop_assert_eq!(CountSeries::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn cluster_inversion_matches_enumeration(m in 4usize..=6, c in 1usize..=2, kind in 0u8..3) {
        let fam = match kind {
            0 => OverlapFamily::OneM { m },
            1 => OverlapFamily::Tree { m },
            _ => OverlapFamily::General { m, c },
        };
        if let Some(pat) = fam.representative().filter(|_| fam.validate().is_ok()) {
            let t = fam.table(16).unwrap().signed_sum();
            let inverted = gj_invert(&t, 16).unwrap();
            let direct = count_series(&pat, 16).unwrap();
            prop_assert_eq!(inverted.counts(), direct.counts());
        }
    }

    #[test]
    fn neville_is_exact_on_polynomials_in_one_over_n(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let bits = 192;
        let ns: Vec<usize> = (20..=24).collect();
        let ys: Vec<_> = ns
            .iter()
            .map(|&n| {
                let v = RBig::from(IBig::from(a))
                    + RBig::from_parts(IBig::from(b), UBig::from(n))
                    + RBig::from_parts(IBig::from(c), UBig::from(n * n));
                hp::real_rational(&v, bits)
            })
            .collect();
        let est = neville_diagonal(&ns, &ys);
        let err = hp::to_f64(&hp::abs(&(&est[2] - &hp::real_int(a, bits))));
        prop_assert!(err < 1e-40, "{err}");
    }

    #[test]
    fn approximant_locates_a_square_root_singularity(k in 1u32..27) {
        // f = (1 - x/r)^(-1/2) with r = 1 + k/100 satisfies 2(r - x) f' = f,
        // an approximant with Q degree 1 and no inhomogeneous part beyond p_0.
        let r = RBig::from_parts(IBig::from(100 + k), UBig::from(100u8));
        let mut b = vec![RBig::ONE];
        for n in 1..40usize {
            let step = RBig::from_parts(IBig::from(2 * n - 1), UBig::from(2 * n)) / &r;
            let next = &b[n - 1] * step;
            b.push(next);
        }
        let rs = RatioSequence::from_values(b, 256).unwrap();
        let root = approximant_root(&rs, ApproximantShape { order: 1, q_degree: 1, p_degree: 0 }).unwrap();
        let want = hp::real_rational(&r, 256);
        prop_assert!(hp::agreement_digits(&root.root, &want, 70.0) > 60.0);
    }
}
