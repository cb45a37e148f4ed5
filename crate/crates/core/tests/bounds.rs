use num_rational::BigRational;
use proptest::prelude::*;
use repdim::auslander::hecke_root_of_unity;
use repdim::bounds::*;
use repdim::{Error, FieldDescriptor, Scalar};

#[path = "support/cyclotomic_oracle.rs"]
mod oracle;

fn q_of(l: usize) -> Scalar {
    hecke_root_of_unity(l).unwrap().1
}

fn field_of(l: usize) -> FieldDescriptor {
    hecke_root_of_unity(l).unwrap().0
}

/// `−q^i` as a field element.
fn neg_q_power(l: usize, i: i64) -> Scalar {
    let q = q_of(l);
    let f = q.field();
    &f.zero() - &q.pow(i).unwrap()
}

#[test]
fn oracle_cyclotomic_polynomials() {
    assert_eq!(oracle::cyclotomic(1), vec![-1, 1]);
    assert_eq!(oracle::cyclotomic(4), vec![1, 0, 1]);
    assert_eq!(oracle::cyclotomic(6), vec![1, -1, 1]);
    assert_eq!(oracle::cyclotomic(8), vec![1, 0, 0, 0, 1]);
}

#[test]
fn type_a_table() {
    for n in 2..=12 {
        for l in 2..=5 {
            let r = bounds_type_a(n, Some(l)).unwrap();
            let m = n / l;
            if m == 0 {
                assert_eq!((r.lower, r.upper, r.class), (Some(0), Some(0), Some(RepType::Semisimple)));
            } else {
                assert_eq!((r.lower, r.upper), (Some(m + 1), Some(2 * m)), "n={n} ℓ={l}");
                assert!(!r.citations.is_empty());
            }
        }
    }
    let r = bounds_type_a(7, Some(3)).unwrap();
    assert_eq!((r.lower, r.upper, r.class), (Some(3), Some(4), Some(RepType::Wild)));
    let r = bounds_type_a(4, Some(2)).unwrap();
    assert_eq!((r.lower, r.upper, r.known_exact), (Some(3), Some(4), Some(3)));
    let r = bounds_type_a(2, Some(2)).unwrap();
    assert_eq!((r.lower, r.upper, r.known_exact), (Some(2), Some(2), Some(2)));
    assert_eq!(bounds_type_a(6, None).unwrap().upper, Some(0));
}

#[test]
fn group_table() {
    for p in [2usize, 3, 5, 7] {
        for n in p..p * p {
            let r = bounds_group(n, p).unwrap();
            assert_eq!((r.lower, r.upper), (Some(n / p + 1), Some(2 * (n / p))));
        }
        assert!(matches!(bounds_group(p * p, p), Err(Error::RankTooLarge { .. })));
    }
    assert_eq!(bounds_group(5, 3).unwrap().upper, Some(2));
    assert_eq!((bounds_group(8, 3).unwrap().lower, bounds_group(8, 3).unwrap().upper), (Some(3), Some(4)));
    let r = bounds_group(2, 3).unwrap();
    assert_eq!((r.lower, r.upper, r.class), (Some(0), Some(0), Some(RepType::Semisimple)));
    assert!(matches!(bounds_group(5, 4), Err(Error::NonPrimeModulus(4))));
}

#[test]
fn classification_table() {
    for n in 1..=12 {
        for l in 2..=6 {
            let expect = match n / l {
                0 => RepType::Semisimple,
                1 => RepType::Finite,
                _ if l == 2 && (n == 4 || n == 5) => RepType::Tame,
                _ => RepType::Wild,
            };
            assert_eq!(classify_type_a(n, Some(l)), expect);
        }
        assert_eq!(classify_type_a(n, None), RepType::Semisimple);
    }
    assert_eq!(classify_type_a(4, Some(2)), RepType::Tame);
    assert_eq!(classify_type_a(5, Some(2)), RepType::Tame);
    assert_eq!(classify_type_a(6, Some(2)), RepType::Wild);
    assert_eq!(classify_type_a(3, Some(3)), RepType::Finite);
}

#[test]
fn type_b_reports() {
    let f = FieldDescriptor::Rationals;
    let r = bounds_type_b(2, 2, &f.from_int(2)).unwrap();
    assert!(r.conditions.contains(&("f_n(Q,q)".to_string(), "3".to_string())));
    assert_eq!((r.lower, r.upper), (Some(2), Some(2)));
    let r = bounds_type_b(2, 2, &f.one()).unwrap();
    assert_eq!((r.lower, r.upper), (Some(2), None));
    assert_eq!(r.upper_absent_reason.as_deref(), Some("f_n(Q,q) = 0"));
    let z3 = field_of(3);
    let r = bounds_type_b(5, 3, &z3.one()).unwrap();
    let fv = f_poly(5, &z3.one(), &q_of(3)).unwrap();
    assert_eq!(r.upper.is_some(), !fv.is_zero());
    assert_eq!(r.lower, Some(2));
    assert!(r.class.is_none());
}

#[test]
fn type_d_reports() {
    let r = bounds_type_d(5, 3).unwrap();
    assert_eq!((r.lower, r.upper), (Some(2), Some(2)));
    let four = BigRational::from_integer(4.into());
    let expect = Scalar::from_zeta_coeffs(3, &[four.clone(), four]);
    assert_eq!(g_poly(5, &q_of(3)).unwrap(), expect);
    let r = bounds_type_d(6, 3).unwrap();
    assert_eq!((r.lower, r.upper, r.upper_absent_reason.as_deref()), (Some(3), None, Some("n even")));
    let r = bounds_type_d(5, 2).unwrap();
    assert_eq!((r.lower, r.upper, r.upper_absent_reason.as_deref()), (Some(3), None, Some("g_n(q) = 0")));
}

#[test]
fn ariki_koike_lower_only() {
    let f = field_of(3);
    let r = bounds_ariki_koike(7, 3, &[f.one(), f.from_int(2)]).unwrap();
    assert_eq!((r.lower, r.upper), (Some(3), None));
    // one parameter: the type A lower bound
    let r = bounds_ariki_koike(7, 3, &[f.one()]).unwrap();
    assert_eq!(r.lower, bounds_type_a(7, Some(3)).unwrap().lower);
    // parameters (−1, Q): the type B lower bound
    let r = bounds_ariki_koike(5, 3, &[f.from_int(-1), f.one()]).unwrap();
    assert_eq!(r.lower, bounds_type_b(5, 3, &f.one()).unwrap().lower);
}

#[test]
fn morita_and_rouquier() {
    assert_eq!(morita_factors(MoritaType::B, 2).unwrap(), vec![(0, 2), (1, 1), (2, 0)]);
    assert_eq!(morita_factors(MoritaType::D, 5).unwrap(), vec![(3, 2), (4, 1), (5, 0)]);
    assert!(matches!(morita_factors(MoritaType::D, 4), Err(Error::EvenRankUnsupported(4))));
    assert_eq!(rouquier_chain(7, 3).unwrap(), (1, 3));
    assert_eq!(rouquier_chain(2, 2).unwrap(), (0, 2));
    assert_eq!(rouquier_chain(9, 2).unwrap(), (3, 5));
    assert!(rouquier_chain(2, 3).is_err());
}

#[test]
fn polynomial_examples() {
    let f = FieldDescriptor::Rationals;
    let q = q_of(2);
    assert_eq!(f_poly(2, &f.from_int(2), &q).unwrap(), f.from_int(3));
    assert_eq!(g_poly(1, &q).unwrap(), f.from_int(2));
    assert!(g_poly(2, &q).unwrap().is_zero());
}

#[test]
fn zero_loci_match_oracle() {
    for l in 2..=8 {
        for n in 1..=8 {
            let q = q_of(l);
            let g = g_poly(n, &q).unwrap();
            let predicted = l % 2 == 0 && l / 2 < n;
            assert_eq!(g.is_zero(), predicted, "g_{n} at ℓ={l}");
            assert_eq!(oracle::is_zero(l, &oracle::g(l, n)), predicted, "oracle g_{n} at ℓ={l}");
            for i in (1 - n as i64)..n as i64 {
                assert!(f_poly(n, &neg_q_power(l, i), &q).unwrap().is_zero());
                let neg = oracle::power(l, i).iter().map(|c| -c).collect();
                assert!(oracle::is_zero(l, &oracle::f(l, n, &neg)));
            }
            // integer Q: zero exactly when the oracle says so
            let fld = field_of(l);
            for big_q in -3..=3i64 {
                let lib = f_poly(n, &fld.from_int(big_q), &q).unwrap().is_zero();
                assert_eq!(lib, oracle::is_zero(l, &oracle::f(l, n, &vec![big_q as i128])), "f_{n}({big_q}) at ℓ={l}");
            }
        }
    }
}

proptest! {
    #[test]
    fn type_a_gap_is_m_minus_one(n in 2usize..40, l in 2usize..9) {
        let r = bounds_type_a(n, Some(l)).unwrap();
        prop_assert!(r.consistent());
        if n / l >= 1 {
            prop_assert_eq!(r.upper.unwrap() - r.lower.unwrap(), n / l - 1);
        }
    }

    #[test]
    fn group_reports_consistent(p in prop::sample::select(vec![2usize, 3, 5, 7, 11]), k in 0usize..200) {
        let n = 1 + k % (p * p - 1);
        let r = bounds_group(n, p).unwrap();
        prop_assert!(r.consistent());
    }
}
