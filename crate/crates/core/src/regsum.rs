//! Zeta-regularized mode sums `Σ_i R(i) i^{−z} |_{z=0}` for rational `R`
//! whose poles sit at integers `±ℓ` of order at most two.
//!
//! Every sum is first normalized to "all `i ≥ 1` except the pole indices",
//! where each piece has a closed form; the requested range is then reached
//! by subtracting finitely many exact terms.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{hurwitz_tail, richardson_series, Accumulator};
use crate::poly::{Coeff, Parity, PoleRational, Polynomial};
use crate::scalar::{int, rat, ExactScalar, Rational};
use crate::special::zeta_special;
use crate::sphere::SphereSpec;

/// `Σ_{i ≥ 1} H(i) i^{−z} |_{z=0} = Σ_e h_e ζ(−e)`; equals `−H(0)/2` for even `H`.
pub fn regsum_even_poly<C: Coeff>(h: &Polynomial<C>) -> Result<ExactScalar> {
    let mut acc = ExactScalar::zero();
    for (e, c) in h.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let z = zeta_special(-(e as i64))?;
        acc += &z * &c.to_exact();
    }
    Ok(acc)
}

/// `Σ_{i ≥ 1, i ≠ ℓ} G(i)/(i² − ℓ²) |_{z=0} = G(0)/(2ℓ²) + G(ℓ)/(4ℓ²) − G′(ℓ)/(2ℓ)` for even `G`.
pub fn regsum_simple_pole<C: Coeff>(g: &Polynomial<C>, ell: u64) -> Result<ExactScalar> {
    if ell == 0 {
        return Err(Error::InvalidArgument("simple-pole rule needs l >= 1".into()));
    }
    if g.parity() != Parity::Even {
        return Err(Error::ParityViolation("numerator of a simple pole must be even"));
    }
    let l = int(ell as i64);
    let l2 = &l * &l;
    let g0 = g.eval(&Rational::zero()).to_exact();
    let gl = g.eval(&l).to_exact();
    let gpl = g.derivative().eval(&l).to_exact();
    let mut out = g0.scale(&(Rational::one() / (int(2) * &l2)));
    out += gl.scale(&(Rational::one() / (int(4) * &l2)));
    out -= gpl.scale(&(Rational::one() / (int(2) * &l)));
    Ok(out)
}

/// `Σ_{i ≥ 1, i ≠ ℓ} 1/(i² − ℓ²) = 3/(4ℓ²)`.
pub fn simple_pole_constant(ell: u64) -> Rational {
    let l2 = int((ell * ell) as i64);
    rat(3, 4) / l2
}

/// `Σ_{i ≥ 1, i ≠ ℓ} 1/(i² − ℓ²)² = π²/(12ℓ²) − 11/(16ℓ⁴)`.
///
/// Obtained from `1/(i² − ℓ²) = (1/2ℓ)(1/(i − ℓ) − 1/(i + ℓ))` squared.
pub fn double_pole_constant(ell: u64) -> ExactScalar {
    let l2 = int((ell * ell) as i64);
    let l4 = &l2 * &l2;
    ExactScalar::from_terms([(1, rat(1, 12) / &l2), (0, rat(-11, 16) / l4)])
}

/// A regularized sum over `i ≥ start_index`, `i ∉ excluded`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegSumProblem {
    summand: PoleRational<ExactScalar>,
    start_index: u64,
    excluded: BTreeSet<u64>,
}

impl RegSumProblem {
    /// Fails if a pole lies in the summation range without being excluded.
    pub fn new(summand: PoleRational<ExactScalar>, start_index: u64, excluded: BTreeSet<u64>) -> Result<Self> {
        if start_index == 0 {
            return Err(Error::InvalidArgument("sums start at index 1 or later".into()));
        }
        for t in &summand.pole_terms {
            if t.order == 0 || t.order > 2 {
                return Err(Error::UnsupportedPole { ell: t.ell, order: t.order });
            }
            if t.ell >= start_index && !excluded.contains(&t.ell) {
                return Err(Error::PoleInRange(t.ell));
            }
        }
        Ok(RegSumProblem { summand, start_index, excluded })
    }

    pub fn summand(&self) -> &PoleRational<ExactScalar> {
        &self.summand
    }

    pub fn start_index(&self) -> u64 {
        self.start_index
    }

    pub fn excluded(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    /// Indices in `[1, start)` ∪ `excluded` that are not poles.
    fn finite_corrections(&self, poles: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = (1..self.start_index).collect();
        out.extend(self.excluded.iter().copied().filter(|&i| i >= self.start_index));
        out.retain(|i| !poles.contains(i));
        out
    }
}

fn inv_pow(x: &Rational, e: u32) -> Rational {
    let mut d = Rational::one();
    for _ in 0..e {
        d *= x;
    }
    Rational::one() / d
}

/// Closed-form value of a [`RegSumProblem`].
pub fn regsum_rational(problem: &RegSumProblem) -> Result<ExactScalar> {
    let s = &problem.summand;
    let poles = s.positive_poles();
    let sq = |l: u64| int(l as i64) * int(l as i64);

    // Polynomial part over i ≥ 1 minus its values at the pole indices.
    let mut total = regsum_even_poly(&s.poly_part)?;
    for &l in &poles {
        total -= s.poly_part.eval(&int(l as i64));
    }

    for t in &s.pole_terms {
        let mut piece = if t.ell == 0 {
            zeta_special(2 * t.order as i64)?
        } else {
            match t.order {
                1 => ExactScalar::from_rational(simple_pole_constant(t.ell)),
                2 => double_pole_constant(t.ell),
                o => return Err(Error::UnsupportedPole { ell: t.ell, order: o }),
            }
        };
        for &other in &poles {
            if other == t.ell {
                continue;
            }
            let base = sq(other) - sq(t.ell);
            piece -= ExactScalar::from_rational(inv_pow(&base, t.order));
        }
        total += &piece * &t.numerator;
    }

    for i in problem.finite_corrections(&poles) {
        let v = s.eval(&int(i as i64)).ok_or(Error::PoleInRange(i))?;
        total -= v;
    }
    Ok(total)
}

/// Independent numeric value of a [`RegSumProblem`]: the polynomial part via
/// ζ at non-positive integers, every pole term by direct summation with
/// Richardson extrapolation.
pub fn regsum_numeric_oracle(problem: &RegSumProblem, tolerance: f64) -> Result<f64> {
    let s = &problem.summand;
    let mut poly_value = regsum_even_poly(&s.poly_part)?;
    for i in 1..problem.start_index {
        poly_value -= s.poly_part.eval(&int(i as i64));
    }
    for &i in problem.excluded.iter().filter(|&&i| i >= problem.start_index) {
        poly_value -= s.poly_part.eval(&int(i as i64));
    }
    let poles_only = PoleRational { poly_part: Polynomial::zero(), pole_terms: s.pole_terms.clone() };
    let tail = richardson_series(
        |i| poles_only.eval_f64(i as f64),
        problem.start_index,
        |i| problem.excluded.contains(&i),
        tolerance,
    )?;
    Ok(poly_value.to_f64() + tail)
}

/// Numeric value of `Σ_{i ≥ start, i ∉ excluded} N(i)/D(i) i^{−z} |_{z=0}`
/// without any partial fractions: exact division `N = Q·D + R`, the
/// polynomial `Q` through ζ at non-positive integers, `R/D` summed directly.
pub fn regsum_numeric_oracle_rational(
    num: &Polynomial<Rational>,
    den: &Polynomial<Rational>,
    start: u64,
    excluded: &BTreeSet<u64>,
    tolerance: f64,
) -> Result<f64> {
    let (q, r) = num.div_rem(den)?;
    let mut poly_value = regsum_even_poly(&q)?;
    for i in (1..start).chain(excluded.iter().copied().filter(|&i| i >= start)) {
        poly_value -= ExactScalar::from_rational(q.eval(&int(i as i64)));
    }
    for i in start..start + 64 {
        if !excluded.contains(&i) && den.eval(&int(i as i64)).is_zero() {
            return Err(Error::PoleInRange(i));
        }
    }
    // Evaluate R/D in the reciprocal variable to stay well scaled for large i.
    let dr = den.degree().unwrap_or(0);
    let rev = |p: &Polynomial<Rational>| -> Vec<f64> {
        let mut v: Vec<f64> = (0..=dr).map(|e| p.coeff(e).to_f64()).collect();
        v.reverse();
        v
    };
    let rc = rev(&r);
    let dc = rev(den);
    let horner = |cs: &[f64], x: f64| cs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let tail = richardson_series(
        |i| {
            let x = 1.0 / i as f64;
            horner(&rc, x) / horner(&dc, x)
        },
        start,
        |i| excluded.contains(&i),
        tolerance,
    )?;
    Ok(poly_value.to_f64() + tail)
}

/// Numeric `Z(1) = Σ_{k ≥ 1} d_k λ_k^{−s} |_{s=1}` by expanding
/// `λ_k^{−s} = i^{−2s} (1 − p²/i²)^{−s}` in Hurwitz zeta values.
pub fn spectral_zeta_at_one_numeric(spec: &SphereSpec) -> Result<f64> {
    let p = spec.p() as u64;
    let a = p + 1;
    let g = spec.dim_polynomial_shifted();
    let p2 = (p * p) as f64;
    let mut acc = Accumulator::default();
    for (e2, ge) in g.coeffs().iter().enumerate() {
        if ge.is_zero() {
            continue;
        }
        let e = (e2 / 2) as i64;
        let gef = ge.to_f64();
        let mut rpow = 1.0;
        let mut r = 0i64;
        loop {
            let w = 2 + 2 * r - 2 * e;
            let h = if w <= 0 {
                // Σ_{i ≥ a} i^{−w} = ζ(w) − Σ_{i < a} i^{−w}
                let mut v = zeta_special(w)?;
                for i in 1..a {
                    v -= ExactScalar::from_rational(Rational::from_integer(BigInt::from(i).pow((-w) as u32)));
                }
                v.to_f64()
            } else {
                hurwitz_tail(w as u32, a)
            };
            let term = gef * rpow * h;
            acc.add(term);
            if w > 2 && term.abs() < 1e-18 * acc.value().abs().max(1e-300) {
                break;
            }
            if r > 2000 {
                return Err(Error::NonConvergence("spectral zeta expansion".into()));
            }
            rpow *= p2;
            r += 1;
        }
    }
    Ok(acc.value())
}

/// `Z(1)` through the regularization engine: `d_k/λ_k` as a pole-rational
/// function of `i = k + p`, summed from `i = p + 1`.
pub fn z1_via_regsum(spec: &SphereSpec) -> Result<ExactScalar> {
    let g = spec.dim_polynomial_shifted().to_exact();
    let pr = crate::poly::partial_fractions(&g, &[(spec.p() as u64, 1)])?;
    let problem = RegSumProblem::new(pr, spec.p() as u64 + 1, BTreeSet::new())?;
    regsum_rational(&problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{partial_fractions, PoleTerm};
    use alloc::vec;
    use proptest::prelude::*;

    fn rp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_rationals(cs.iter().map(|&c| int(c)))
    }

    fn sc(r: Rational) -> ExactScalar {
        ExactScalar::from_rational(r)
    }

    #[test]
    fn even_poly_rule() {
        assert_eq!(regsum_even_poly(&rp(&[1])).unwrap(), sc(rat(-1, 2)));
        assert!(regsum_even_poly(&rp(&[0, 0, 1])).unwrap().is_zero());
        assert_eq!(regsum_even_poly(&rp(&[4, 0, 1])).unwrap(), sc(int(-2)));
        // odd powers go through ζ(−1) = −1/12
        assert_eq!(regsum_even_poly(&rp(&[0, 1])).unwrap(), sc(rat(-1, 12)));
    }

    #[test]
    fn simple_pole_rule() {
        assert_eq!(regsum_simple_pole(&rp(&[1]), 2).unwrap(), sc(rat(3, 16)));
        assert_eq!(regsum_simple_pole(&rp(&[0, 0, 1]), 1).unwrap(), sc(rat(-3, 4)));
        assert!(regsum_simple_pole(&rp(&[0, 1]), 1).is_err());
        assert!(regsum_simple_pole(&rp(&[1]), 0).is_err());
    }

    #[test]
    fn simple_pole_rule_agrees_with_decomposition_route() {
        for (cs, ell) in [(vec![1i64], 2u64), (vec![0, 0, 1], 1), (vec![3, 0, -2, 0, 5], 3), (vec![0, 0, 0, 0, 0, 0, 1], 4)] {
            let g = rp(&cs);
            let pr = partial_fractions(&g.to_exact(), &[(ell, 1)]).unwrap();
            let problem = RegSumProblem::new(pr, 1, [ell].into_iter().collect()).unwrap();
            assert_eq!(regsum_rational(&problem).unwrap(), regsum_simple_pole(&g, ell).unwrap());
        }
    }

    #[test]
    fn z1_routes() {
        for n in (3..=17u32).step_by(2) {
            let spec = SphereSpec::new(n).unwrap();
            assert_eq!(z1_via_regsum(&spec).unwrap(), sc(spec.z1()), "n={n}");
        }
        for n in [3u32, 5, 7] {
            let spec = SphereSpec::new(n).unwrap();
            let v = spectral_zeta_at_one_numeric(&spec).unwrap();
            assert!((v - crate::scalar::rational_to_f64(&spec.z1())).abs() < 1e-10, "n={n} v={v}");
        }
    }

    #[test]
    fn z1_via_rational_oracle() {
        for n in [3u32, 5, 7] {
            let spec = SphereSpec::new(n).unwrap();
            let v = regsum_numeric_oracle_rational(
                &spec.dim_polynomial_shifted(),
                &spec.eigenvalue_polynomial_shifted(),
                spec.p() as u64 + 1,
                &BTreeSet::new(),
                1e-11,
            )
            .unwrap();
            assert!((v - crate::scalar::rational_to_f64(&spec.z1())).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn double_pole_constant_numeric() {
        for ell in 1..5u64 {
            let l2 = (ell * ell) as f64;
            let v = richardson_series(|i| 1.0 / ((i * i) as f64 - l2).powi(2), 1, |i| i == ell, 1e-13).unwrap();
            assert!((v - double_pole_constant(ell).to_f64()).abs() < 1e-11, "l={ell}");
        }
        assert!((double_pole_constant(1).to_f64() - 0.134_967_033_424_112_2).abs() < 1e-12);
    }

    #[test]
    fn pole_at_zero_and_exclusions() {
        // Σ_{i≥3, i≠5} [1/i² + 2/(i²−25)]
        let pr = PoleRational {
            poly_part: Polynomial::zero(),
            pole_terms: vec![
                PoleTerm { ell: 0, order: 1, numerator: ExactScalar::one() },
                PoleTerm { ell: 5, order: 1, numerator: ExactScalar::from_int(2) },
            ],
        };
        assert_eq!(
            RegSumProblem::new(pr.clone(), 3, BTreeSet::new()),
            Err(Error::PoleInRange(5))
        );
        let problem = RegSumProblem::new(pr, 3, [5u64].into_iter().collect()).unwrap();
        let exact = regsum_rational(&problem).unwrap().to_f64();
        let oracle = regsum_numeric_oracle(&problem, 1e-12).unwrap();
        assert!((exact - oracle).abs() < 1e-10);
    }

    #[test]
    fn order_three_rejected() {
        let pr = PoleRational {
            poly_part: Polynomial::zero(),
            pole_terms: vec![PoleTerm { ell: 2, order: 3, numerator: ExactScalar::one() }],
        };
        assert_eq!(
            RegSumProblem::new(pr, 3, BTreeSet::new()),
            Err(Error::UnsupportedPole { ell: 2, order: 3 })
        );
    }

    fn even_poly() -> impl Strategy<Value = Polynomial<Rational>> {
        proptest::collection::vec(-20i64..20, 1..4)
            .prop_map(|cs| Polynomial::from_rationals(cs.into_iter().map(int)).square_variable_to_even())
    }

    fn problem() -> impl Strategy<Value = (Polynomial<Rational>, Vec<(u64, u32)>, u64)> {
        (
            even_poly(),
            proptest::collection::btree_map(0u64..5, 1u32..3, 1..3).prop_map(|m| m.into_iter().collect::<Vec<_>>()),
            1u64..4,
        )
    }

    fn build(num: &Polynomial<Rational>, poles: &[(u64, u32)], start_extra: u64) -> RegSumProblem {
        let pr = partial_fractions(&num.to_exact(), poles).unwrap();
        let start = poles.iter().map(|p| p.0).max().unwrap() + start_extra;
        RegSumProblem::new(pr, start, BTreeSet::new()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn linearity((num1, poles, extra) in problem(), num2 in even_poly(), a in -9i64..9, b in 1i64..9) {
            let p1 = build(&num1, &poles, extra);
            let p2 = build(&num2, &poles, extra);
            let (ra, rb) = (rat(a, 7), rat(b, 3));
            let combo = p1.summand().scale(&ra).add(&p2.summand().scale(&rb));
            let pc = RegSumProblem::new(combo, p1.start_index(), BTreeSet::new()).unwrap();
            let lhs = regsum_rational(&pc).unwrap();
            let rhs = regsum_rational(&p1).unwrap().scale(&ra) + regsum_rational(&p2).unwrap().scale(&rb);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn shift_consistency((num, poles, extra) in problem(), bump in 0u64..4) {
            let p = build(&num, &poles, extra);
            let i0 = p.start_index() + bump;
            let mut ex = BTreeSet::new();
            ex.insert(i0);
            let q = RegSumProblem::new(p.summand().clone(), p.start_index(), ex).unwrap();
            let back = p.summand().eval(&int(i0 as i64)).unwrap();
            prop_assert_eq!(regsum_rational(&q).unwrap() + back, regsum_rational(&p).unwrap());
        }

        #[test]
        fn simple_pole_rule_matches_oracle(num in proptest::collection::vec(-5i64..5, 1..4), ell in 1u64..6) {
            let g = Polynomial::<Rational>::from_rationals(num.into_iter().map(int)).square_variable_to_even();
            let exact = regsum_simple_pole(&g, ell).unwrap().to_f64();
            let pr = partial_fractions(&g.to_exact(), &[(ell, 1)]).unwrap();
            let problem = RegSumProblem::new(pr, 1, [ell].into_iter().collect()).unwrap();
            let oracle = regsum_numeric_oracle(&problem, 1e-9).unwrap();
            prop_assert!((exact - oracle).abs() < 1e-6, "exact {} oracle {}", exact, oracle);
        }

        #[test]
        fn convergent_case_matches_plain_sum((num, poles, extra) in problem()) {
            // Force O(i^{-2}): drop the polynomial part.
            let p = build(&num, &poles, extra);
            let mut s = p.summand().clone();
            s.poly_part = Polynomial::zero();
            let q = RegSumProblem::new(s.clone(), p.start_index(), BTreeSet::new()).unwrap();
            let exact = regsum_rational(&q).unwrap().to_f64();
            let plain = richardson_series(|i| s.eval_f64(i as f64), q.start_index(), |_| false, 1e-12).unwrap();
            prop_assert!((exact - plain).abs() < 1e-8);
        }
    }
}
