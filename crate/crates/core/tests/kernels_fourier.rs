use proptest::prelude::*;
use sphdet_core::kernels::{
    abel_summation_oracle, alpha_seq_detl, alpha_seq_s3_f, eventual_polynomial, green_l, green_s3_delta,
    green_s3_deltabar, pk_coeffs,
};
use sphdet_core::{ExactScalar, Sign};

#[test]
fn s3_weights_positive_with_cubic_asymptotics() {
    let seq = alpha_seq_s3_f();
    let terms = seq.terms(1000);
    for (k, a) in terms.iter().enumerate() {
        assert_eq!(a.sign(), Sign::Positive, "k={k}");
        if k >= 10 {
            let dev = (a - &seq.asymptotic_value(k as u64)).to_f64().abs();
            assert!(dev * (k as f64) <= 10.0, "k={k}: {dev}");
        }
    }
}

#[test]
fn detl_weights_positive_for_all_small_dimensions() {
    for n in (3..=17).step_by(2) {
        for p in pk_coeffs(n, 200).unwrap() {
            assert!(p > num_rational::BigRational::from_integer(0.into()));
        }
        let q = eventual_polynomial(n).unwrap();
        for (i, c) in q.coeffs().iter().enumerate() {
            if i % 2 == 0 {
                assert!(num_traits::Zero::is_zero(c));
            } else {
                assert!(*c > num_rational::BigRational::from_integer(0.into()));
            }
        }
        let seq = alpha_seq_detl(n).unwrap();
        assert!(seq.terms(200).iter().all(|t| t.sign() == Sign::Positive), "n={n}");
    }
}

#[test]
fn abel_means_reproduce_partial_sums() {
    let r = [0.3, std::f64::consts::FRAC_PI_2, 2.5];
    assert!(abel_summation_oracle(&alpha_seq_s3_f(), &r, 0.9).unwrap() < 1e-6);
    assert!(abel_summation_oracle(&alpha_seq_detl(3).unwrap(), &r, 0.9).unwrap() < 1e-6);
    assert!(abel_summation_oracle(&alpha_seq_detl(5).unwrap(), &r, 0.8).unwrap() < 1e-6);
}

#[test]
fn kernel_domain_errors() {
    assert!(green_s3_delta().eval(-0.1).is_err());
    assert!(green_s3_deltabar().regular(std::f64::consts::PI).is_err());
    assert!(green_l(3).unwrap().eval(4.0).is_err());
    assert_eq!(
        green_s3_delta().taylor_regular_part(0).unwrap()[0],
        ExactScalar::from_rational(sphdet_core::scalar::rat(-3, 4))
    );
}

proptest! {
    #[test]
    fn regular_plus_singular_is_the_kernel(r in 0.01f64..3.13) {
        for k in [green_s3_delta(), green_s3_deltabar()] {
            let total = k.eval(r).unwrap();
            let split = k.regular(r).unwrap() + k.singular(r).unwrap();
            prop_assert!((total - split).abs() < 1e-12 * total.abs().max(1.0) * (1.0 + 1.0 / (std::f64::consts::PI - r)));
        }
    }

    #[test]
    fn s3_exact_and_float_terms_agree(k in 0u64..400) {
        let seq = alpha_seq_s3_f();
        let exact = seq.term(k).to_f64();
        let approx = seq.terms_f64(k)[k as usize];
        prop_assert!((exact - approx).abs() <= 1e-12 * exact.abs());
    }
}
