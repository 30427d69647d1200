use leecodes::analyzer;
use leecodes::hadamard::{self, sylvester};
use leecodes::intlat::text;
use leecodes::metric;
use leecodes::xform::{self, TransformSpec};
use leecodes::{IntMatrix, Lattice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn square(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-bound..=bound, n), n))
}

fn nonsingular(max_n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    square(max_n, bound)
        .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
        .prop_filter("nonsingular", |m| !m.det().unwrap().is_zero())
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.row_iter().map(|r| r.to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_spans_the_same_lattice(m in nonsingular(4, 6)) {
        let h = m.hnf().unwrap();
        let a = Lattice::new(m.clone()).unwrap();
        let b = Lattice::new(h.clone()).unwrap();
        for r in rows_of(&m) {
            prop_assert!(b.contains(&r).unwrap());
        }
        for r in rows_of(&h) {
            prop_assert!(a.contains(&r).unwrap());
        }
        prop_assert_eq!(h.det().unwrap().abs(), m.det().unwrap().abs());
    }

    #[test]
    fn hnf_shape_and_idempotence(m in nonsingular(4, 6)) {
        let h = m.hnf().unwrap();
        let n = h.rows();
        for r in 0..n {
            prop_assert!(h[(r, r)].is_positive());
            for c in 0..r {
                prop_assert!(h[(r, c)].is_zero());
            }
            for above in 0..r {
                prop_assert!(!h[(above, r)].is_negative() && h[(above, r)] < h[(r, r)]);
            }
        }
        prop_assert_eq!(h.hnf().unwrap(), h);
    }

    #[test]
    fn snf_divisor_chain(m in nonsingular(4, 6)) {
        let s = m.snf().unwrap();
        let prod: BigInt = s.iter().product();
        prop_assert_eq!(prod, m.det().unwrap().abs());
        for w in s.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn kronecker_determinant(a in nonsingular(3, 4), b in nonsingular(3, 4)) {
        let k = a.kronecker(&b);
        let expect = num_traits::pow(a.det().unwrap(), b.rows()) * num_traits::pow(b.det().unwrap(), a.rows());
        prop_assert_eq!(k.det().unwrap(), expect);
    }

    #[test]
    fn period_vectors_lie_in_the_lattice(m in nonsingular(4, 6)) {
        let lat = Lattice::new(m).unwrap();
        let p = lat.period().unwrap();
        let n = lat.dim();
        for (i, mi) in p.per_axis.iter().enumerate() {
            let mut e = vec![BigInt::zero(); n];
            e[i] = mi.clone();
            prop_assert!(lat.contains(&e).unwrap());
            // no proper divisor works
            for k in 1..mi.to_u64().unwrap().min(200) {
                let mut f = vec![BigInt::zero(); n];
                f[i] = BigInt::from(k);
                prop_assert!(!lat.contains(&f).unwrap());
            }
        }
    }

    #[test]
    fn matrix_text_round_trip(m in nonsingular(4, 50), p in 1i64..5, q in 1i64..5) {
        let lat = Lattice::with_scale(m, BigRational::new(BigInt::from(p), BigInt::from(q))).unwrap();
        let back = text::parse_lattice(&text::write_lattice(&lat)).unwrap();
        prop_assert_eq!(back.volume(), lat.volume());
        prop_assert_eq!(back.generator(), lat.generator());
    }

    #[test]
    fn metric_axioms(
        x in prop::collection::vec(-20i64..20, 5),
        y in prop::collection::vec(-20i64..20, 5),
        z in prop::collection::vec(-20i64..20, 5),
    ) {
        let dxy = metric::manhattan_dist(&x, &y).unwrap();
        prop_assert_eq!(dxy, metric::manhattan_dist(&y, &x).unwrap());
        prop_assert!(dxy <= metric::manhattan_dist(&x, &z).unwrap() + metric::manhattan_dist(&z, &y).unwrap());
        prop_assert_eq!(dxy == 0, x == y);
    }

    #[test]
    fn lee_is_manhattan_for_small_differences(
        x in prop::collection::vec(0i64..10, 4),
        y in prop::collection::vec(0i64..10, 4),
        m in 20u64..40,
    ) {
        prop_assert_eq!(metric::lee_dist(&x, &y, m).unwrap(), metric::manhattan_dist(&x, &y).unwrap());
        prop_assert!(metric::lee_dist(&x, &y, 7).unwrap() <= metric::manhattan_dist(&x, &y).unwrap());
        prop_assert_eq!(metric::lee_dist(&x, &y, 7).unwrap(), metric::lee_dist(&y, &x, 7).unwrap());
    }

    #[test]
    fn min_distance_scales_linearly(m in nonsingular(3, 4), k in 1u64..4) {
        let lat = Lattice::new(m).unwrap();
        let base = analyzer::min_distance(&lat, 40).unwrap();
        let scaled = lat.scaled(&BigRational::from_integer(BigInt::from(k))).unwrap();
        let d = analyzer::min_distance(&scaled, 40 * k).unwrap();
        prop_assert_eq!(d.d, k * base.d);
        prop_assert!(lat.contains_i64(&base.witness).unwrap());
        prop_assert_eq!(metric::weight(&base.witness), base.d);
    }

    #[test]
    fn coset_leaders_are_lightest(m in nonsingular(3, 4), x in prop::collection::vec(-15i64..15, 3)) {
        let lat = Lattice::new(m).unwrap();
        prop_assume!(lat.dim() == 3);
        let table = analyzer::coset_table(&lat, 100_000).unwrap();
        let (c, s) = table.decompose(&x);
        prop_assert!(lat.contains_i64(&c).unwrap());
        prop_assert_eq!(c.iter().zip(&s).map(|(a, b)| a + b).collect::<Vec<_>>(), x.clone());
        prop_assert!(metric::weight(&s) <= metric::weight(&x));
        prop_assert!(metric::weight(&s) <= table.rho());
    }

    #[test]
    fn continuous_transform_is_an_involution(x in prop::collection::vec(-100i64..100, 16)) {
        let h = sylvester(4);
        let rep = xform::check_involution_continuous(&h, std::slice::from_ref(&x)).unwrap();
        prop_assert!(rep.passed());
        let y = xform::t_apply(&h, &x).unwrap();
        let max = metric::weight(&x);
        for v in y.numerators() {
            prop_assert!(v.abs() <= BigInt::from(max));
        }
    }

    #[test]
    fn discrete_transform_is_an_involution(p in prop::collection::vec(-50i64..50, 4)) {
        let spec = TransformSpec::new(sylvester(2)).unwrap();
        let once = xform::discrete_transform(&spec, &p).unwrap();
        prop_assert_eq!(xform::discrete_transform(&spec, &once).unwrap(), p);
    }

    #[test]
    fn sylvester_codes_have_hadamard_parameters(k in 1u32..4) {
        let h = sylvester(k);
        let n = h.order() as u64;
        let lat = hadamard::hadamard_code(&h);
        prop_assert_eq!(lat.index().unwrap(), num_traits::pow(BigInt::from(n), (n / 2) as usize));
        prop_assert_eq!(analyzer::min_distance(&lat, n).unwrap().d, n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discrete_transform_order16_round_trip(p in prop::collection::vec(-30i64..30, 16)) {
        let spec = TransformSpec::new(sylvester(4)).unwrap();
        prop_assert_eq!(xform::check_involution_discrete(&spec, &[p]).unwrap(), 1);
    }
}
