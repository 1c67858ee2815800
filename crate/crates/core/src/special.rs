//! Harmonic numbers, the parity sums `I(k)`, `E(k)`, Bernoulli numbers and
//! the special values of ζ that live in ℚ[π²].

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::scalar::{int, rat, ExactScalar, Rational};

/// Number of Bernoulli numbers kept in the cached table (`B_0 ..= B_{MAX}`).
pub const BERNOULLI_MAX: usize = 160;

/// Default cap on [`e_asymptotic`] orders.
pub const DEFAULT_E_ASYMPTOTIC_MAX: usize = 8;

/// `H_m = Σ_{j=1}^{m} 1/j`.
pub fn harmonic_number(m: u64) -> Result<Rational> {
    if m == 0 {
        return Err(Error::EmptyHarmonicSum);
    }
    let mut acc = Rational::zero();
    for j in 1..=m {
        acc += Rational::new(BigInt::one(), BigInt::from(j));
    }
    Ok(acc)
}

/// `I(k)`: 1 for even `k`, 0 for odd `k`.
pub fn parity_indicator(k: u64) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `E(k) = Σ_{j=1}^{k} I(k−j)/j² + π² I(k)/12`.
pub fn e_value(k: u64) -> ExactScalar {
    let mut rational = Rational::zero();
    let mut j = if k.is_multiple_of(2) { 2 } else { 1 };
    while j <= k {
        rational += Rational::new(BigInt::one(), BigInt::from(j) * BigInt::from(j));
        j += 2;
    }
    let mut out = ExactScalar::from_rational(rational);
    if k.is_multiple_of(2) {
        out += ExactScalar::term(1, rat(1, 12));
    }
    out
}

/// `E(0), …, E(kmax)` via `E(k) = E(k−2) + 1/k²`.
pub fn e_sequence(kmax: u64) -> Vec<ExactScalar> {
    let mut out: Vec<ExactScalar> = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        let v = match k {
            0 => ExactScalar::term(1, rat(1, 12)),
            1 => ExactScalar::one(),
            _ => {
                let kk = BigInt::from(k);
                let inc = Rational::new(BigInt::one(), &kk * &kk);
                &out[k as usize - 2] + &ExactScalar::from_rational(inc)
            }
        };
        out.push(v);
    }
    out
}

/// `E(0), …, E(kmax)` rounded to `f64`.
///
/// Each rational part is accumulated as an integer numerator over the single
/// denominator `lcm(1², …, kmax²)` and rounded once, which avoids the gcd
/// reductions of [`e_sequence`] on long ranges.
pub fn e_sequence_f64(kmax: u64) -> Vec<f64> {
    let l = {
        let m = lcm_up_to(kmax);
        &m * &m
    };
    let pi2 = crate::scalar::pi_squared_approx(128);
    let pi2_12 = crate::scalar::rational_to_f64(&(pi2 / int(12)));
    let mut nums = [BigInt::zero(), BigInt::zero()];
    let mut out = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        let parity = (k % 2) as usize;
        if k > 0 {
            nums[parity] += &l / BigInt::from(k * k);
        }
        let r = Rational::new_raw(nums[parity].clone(), l.clone());
        let mut v = crate::scalar::rational_to_f64(&r);
        if parity == 0 {
            v += pi2_12;
        }
        out.push(v);
    }
    out
}

/// `lcm(1, …, m)` as a product of maximal prime powers.
fn lcm_up_to(m: u64) -> BigInt {
    let m = m as usize;
    let mut composite = alloc::vec![false; m + 1];
    let mut acc = BigInt::one();
    for q in 2..=m {
        if composite[q] {
            continue;
        }
        let mut j = q * q;
        while j <= m {
            composite[j] = true;
            j += q;
        }
        let mut pw = q;
        while pw <= m / q {
            pw *= q;
        }
        acc *= BigInt::from(pw);
    }
    acc
}

/// Coefficients `[c_0, …, c_order]` with `E(k−2) = Σ c_j k^{-j} + O(k^{-order-1})`.
///
/// `E(k−2) = π²/8 − ψ′(k/2)/4`, so the coefficients come from the
/// Stirling-type expansion of the trigamma function.
pub fn e_asymptotic(order: usize) -> Result<Vec<ExactScalar>> {
    e_asymptotic_with_limit(order, DEFAULT_E_ASYMPTOTIC_MAX)
}

pub fn e_asymptotic_with_limit(order: usize, max_order: usize) -> Result<Vec<ExactScalar>> {
    if order > max_order {
        return Err(Error::OrderTooLarge { requested: order, max: max_order });
    }
    let mut out = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let c = match j {
            0 => ExactScalar::term(1, rat(1, 8)),
            1 | 2 => ExactScalar::from_rational(rat(-1, 2)),
            _ if j % 2 == 0 => ExactScalar::zero(),
            _ => {
                // c_{2i+1} = −B_{2i} 2^{2i−1}
                let i = (j - 1) / 2;
                let b = bernoulli(2 * i)?;
                let pow = Rational::from_integer(BigInt::one() << (2 * i - 1));
                ExactScalar::from_rational(-(b * pow))
            }
        };
        out.push(c);
    }
    Ok(out)
}

fn bernoulli_table() -> &'static Vec<Rational> {
    static TABLE: OnceBox<Vec<Rational>> = OnceBox::new();
    TABLE.get_or_init(|| Box::new(akiyama_tanigawa(BERNOULLI_MAX)))
}

/// Akiyama–Tanigawa; yields `B_1 = +1/2`, fixed up by the caller.
fn akiyama_tanigawa(nmax: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(nmax + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(nmax + 1);
    for m in 0..=nmax {
        a.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * int(j as i64);
        }
        out.push(a[0].clone());
    }
    if nmax >= 1 {
        out[1] = rat(-1, 2);
    }
    out
}

/// Bernoulli number `B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> Result<Rational> {
    bernoulli_table()
        .get(n)
        .cloned()
        .ok_or(Error::BernoulliOutOfRange { requested: n, max: BERNOULLI_MAX })
}

/// ζ(s) for `s ≤ 0` or `s` positive even.
pub fn zeta_special(s: i64) -> Result<ExactScalar> {
    if s == 0 {
        return Ok(ExactScalar::from_rational(rat(-1, 2)));
    }
    if s < 0 {
        // ζ(−m) = −B_{m+1}/(m+1) for m ≥ 1
        let m = (-s) as usize;
        let b = bernoulli(m + 1)?;
        return Ok(ExactScalar::from_rational(-b / int(m as i64 + 1)));
    }
    if s % 2 == 1 {
        return Err(Error::NotRepresentable(s));
    }
    // ζ(2k) = (−1)^{k+1} B_{2k} 2^{2k−1} / (2k)! · (π²)^k
    let k = (s / 2) as usize;
    let b = bernoulli(2 * k)?;
    let mut fact = BigInt::one();
    for i in 2..=(2 * k) {
        fact *= BigInt::from(i);
    }
    let mut c = b * Rational::new(BigInt::one() << (2 * k - 1), fact);
    if k.is_multiple_of(2) {
        c = -c;
    }
    Ok(ExactScalar::term(k as u32, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::pi_squared_approx;

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_number(1).unwrap(), rat(1, 1));
        assert_eq!(harmonic_number(2).unwrap(), rat(3, 2));
        assert_eq!(harmonic_number(4).unwrap(), rat(25, 12));
        assert_eq!(harmonic_number(0), Err(Error::EmptyHarmonicSum));
    }

    #[test]
    fn parity_and_e() {
        assert_eq!(parity_indicator(4), rat(1, 1));
        assert_eq!(parity_indicator(5), rat(0, 1));
        assert_eq!(e_value(0), ExactScalar::term(1, rat(1, 12)));
        assert_eq!(e_value(1), ExactScalar::one());
        assert_eq!(
            e_value(2),
            ExactScalar::from_terms([(1, rat(1, 12)), (0, rat(1, 4))])
        );
        let seq = e_sequence(30);
        for (k, v) in seq.iter().enumerate() {
            assert_eq!(v, &e_value(k as u64));
        }
    }

    #[test]
    fn e_tends_to_pi2_over_8() {
        let target = core::f64::consts::PI * core::f64::consts::PI / 8.0;
        let seq = e_sequence_f64(10_000);
        for (k, v) in seq.iter().enumerate().skip(10) {
            assert!((v - target).abs() < 1.0 / k as f64, "k={k}");
        }
        for k in [0u64, 1, 10, 11, 777, 2000] {
            let exact = e_value(k).to_f64();
            assert!((exact - seq[k as usize]).abs() <= 4.0 * f64::EPSILON * exact.abs(), "k={k}");
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), rat(1, 1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(3).unwrap(), rat(0, 1));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert!(bernoulli(BERNOULLI_MAX + 1).is_err());
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_special(0).unwrap(), ExactScalar::from_rational(rat(-1, 2)));
        assert!(zeta_special(-2).unwrap().is_zero());
        assert_eq!(zeta_special(-1).unwrap(), ExactScalar::from_rational(rat(-1, 12)));
        assert_eq!(zeta_special(-3).unwrap(), ExactScalar::from_rational(rat(1, 120)));
        assert_eq!(zeta_special(2).unwrap(), ExactScalar::term(1, rat(1, 6)));
        assert_eq!(zeta_special(4).unwrap(), ExactScalar::term(2, rat(1, 90)));
        assert_eq!(zeta_special(6).unwrap(), ExactScalar::term(3, rat(1, 945)));
        assert_eq!(zeta_special(3), Err(Error::NotRepresentable(3)));
    }

    #[test]
    fn zeta_even_matches_direct_sum() {
        for s in [2i64, 4, 8, 12] {
            let exact = zeta_special(s).unwrap().to_f64();
            let direct: f64 = (1..200_000).map(|i| (i as f64).powi(-(s as i32))).sum();
            assert!((exact - direct).abs() < 1e-5, "s={s}");
        }
    }

    #[test]
    fn e_asymptotic_coefficients() {
        let c = e_asymptotic(8).unwrap();
        assert_eq!(c[0], ExactScalar::term(1, rat(1, 8)));
        assert_eq!(c[1], ExactScalar::from_rational(rat(-1, 2)));
        assert_eq!(c[2], ExactScalar::from_rational(rat(-1, 2)));
        assert_eq!(c[3], ExactScalar::from_rational(rat(-1, 3)));
        assert!(c[4].is_zero());
        assert_eq!(c[5], ExactScalar::from_rational(rat(4, 15)));
        assert!(e_asymptotic(9).is_err());
        assert!(e_asymptotic_with_limit(9, 12).is_ok());
    }

    #[test]
    fn e_asymptotic_accuracy() {
        let c = e_asymptotic(8).unwrap();
        let pi2 = pi_squared_approx(128);
        let seq = e_sequence(400);
        for k in [50u64, 100, 400] {
            let mut approx = ExactScalar::zero();
            for (j, cj) in c.iter().enumerate() {
                let kpow = Rational::from_integer(BigInt::from(k).pow(j as u32));
                approx += cj.scale(&(Rational::one() / kpow));
            }
            let diff = (&seq[k as usize - 2] - &approx).eval_at(&pi2);
            let bound = crate::scalar::rational_to_f64(&diff).abs();
            assert!(bound < 10.0 / (k as f64).powi(9), "k={k} diff={bound}");
        }
    }
}
