//! Second variation of `F = log det′Δ − (2/n) log V` at the round sphere
//! along conformal directions `2φ g₀`, `φ ∈ H_k`, and the related sign
//! statements for `log det L`.
//!
//! With `φ = P_k(x·x₀)/λ_k` the Hessian is
//! `(n+2)(n−2)/2 · d_k/λ_k² − (n−2)²/4 · TR(φ_ii Δ̄⁻¹ φ_jj Δ̄⁻¹)`.
//! The trace is a double mode sum over `(j, j+m)`; each band `±m` is turned
//! into one even rational function of `i = j + p` and regularized with the
//! weight `i^{−z}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernels::{alpha_seq_detl, alpha_seq_s3_f, green_s3_delta};
use crate::poly::{interpolate_verified, partial_fractions, Parity, PoleRational, Polynomial};
use crate::regsum::{regsum_numeric_oracle_rational, regsum_rational, spectral_zeta_at_one_numeric, RegSumProblem};
use crate::scalar::{int, rat, rational_to_f64, ExactScalar, Rational, Sign};
use crate::special::harmonic_number;
use crate::sphere::{GegenbauerTable, SphereSpec};

/// Extra interpolation nodes beyond the degree bound.
pub const EXTRA_CHECKS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct HessianCell {
    pub n: u32,
    pub k: u64,
    /// Hessian for `φ = P_k(x·x₀)/λ_k`.
    pub value: ExactScalar,
    /// `value / ∫ φ̄²`.
    pub per_phi2: ExactScalar,
    pub sign: Sign,
}

/// One paired band `{+m, −m}` of the trace sum.
#[derive(Debug, Clone, PartialEq)]
pub struct BandPlan {
    pub m: u64,
    /// First `j` handled by the regularized tail.
    pub tail_start: u64,
    /// `(j, signed m, C(j,m,k)/(λ_j λ_{j+m}))` for the exactly summed head.
    pub initial_terms: Vec<(u64, i64, Rational)>,
    /// `C(j, m, k)` as a polynomial in `i = j + p`.
    pub cpoly_plus: Polynomial<Rational>,
    /// `C(j, −m, k)` as a polynomial in `i`; zero for `m = 0`.
    pub cpoly_minus: Polynomial<Rational>,
    /// Paired numerator over `Π (i² − ℓ²)^o`.
    pub numerator: Polynomial<Rational>,
    pub poles: Vec<(u64, u32)>,
    pub summand: PoleRational<ExactScalar>,
    pub problem: RegSumProblem,
    pub tail_value: ExactScalar,
}

impl BandPlan {
    pub fn initial_sum(&self) -> Rational {
        self.initial_terms.iter().fold(Rational::zero(), |acc, t| acc + &t.2)
    }

    /// Denominator `Π (i² − ℓ²)^o` of the tail summand.
    pub fn denominator(&self) -> Polynomial<Rational> {
        let mut d = Polynomial::constant(Rational::one());
        for &(ell, order) in &self.poles {
            let f = Polynomial::from_rationals([int(-((ell * ell) as i64)), int(0), int(1)]);
            for _ in 0..order {
                d = &d * &f;
            }
        }
        d
    }

    pub fn value(&self) -> ExactScalar {
        &self.tail_value + &ExactScalar::from_rational(self.initial_sum())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceTermPlan {
    pub n: u32,
    pub k: u64,
    /// `−2 Z(1) d_k/λ_k`, the contributions with one index on the constants.
    pub mode_zero: ExactScalar,
    pub bands: Vec<BandPlan>,
    pub value: ExactScalar,
}

/// Largest table index [`TraceTermPlan::build`] touches.
pub fn table_size_for(n: u32, k: u64) -> u64 {
    2 * k + n as u64 + 2 * EXTRA_CHECKS as u64 + 6
}

fn m_range(k: u64) -> impl Iterator<Item = u64> {
    (k % 2..=k).step_by(2)
}

impl TraceTermPlan {
    pub fn build(table: &GegenbauerTable, k: u64) -> Result<Self> {
        let spec = table.spec();
        let n = spec.n();
        if k == 0 {
            return Ok(TraceTermPlan { n, k, mode_zero: ExactScalar::zero(), bands: Vec::new(), value: ExactScalar::zero() });
        }
        if table.kmax() < table_size_for(n, k) {
            return Err(Error::InvalidArgument(alloc::format!(
                "table too small: need {}, have {}",
                table_size_for(n, k),
                table.kmax()
            )));
        }
        let p = spec.p() as u64;
        let pi = p as i64;
        let lam = |j: u64| spec.laplace_eigenvalue(j);
        let w = table.weighted(k);
        let mode_zero = ExactScalar::from_rational(
            -int(2) * spec.z1() * spec.dim_harmonics(k) / lam(k),
        );
        let mut value = mode_zero.clone();
        let mut bands = Vec::new();
        for m in m_range(k) {
            let mi = m as i64;
            let (tail_start, degree_bound) = if m == 0 {
                ((k / 2).max(1), n as usize - 1)
            } else {
                ((m + 1).max((k + m) / 2), n as usize - 1)
            };
            let mut initial_terms = Vec::new();
            for j in 1..tail_start {
                let c = w.triple(j, j + m);
                if !c.is_zero() {
                    initial_terms.push((j, mi, c / (lam(j) * lam(j + m))));
                }
            }
            if m > 0 {
                for j in (m + 1)..tail_start {
                    let c = w.triple(j, j - m);
                    if !c.is_zero() {
                        initial_terms.push((j, -mi, c / (lam(j) * lam(j - m))));
                    }
                }
            }
            let nodes = degree_bound + 1 + EXTRA_CHECKS;
            let js: Vec<u64> = (tail_start..tail_start + nodes as u64).collect();
            let at = |j: u64| int((j + p) as i64);
            let plus: Vec<(Rational, Rational)> = js.iter().map(|&j| (at(j), w.triple(j, j + m))).collect();
            let cpoly_plus = interpolate_verified(&plus, degree_bound, EXTRA_CHECKS)?;
            let shifted_lambda = |shift: i64| {
                // (i + shift)² − p²
                Polynomial::from_rationals([int(shift * shift - pi * pi), int(2 * shift), int(1)])
            };
            let (cpoly_minus, numerator, poles) = if m == 0 {
                (Polynomial::zero(), cpoly_plus.clone(), alloc::vec![(p, 2u32)])
            } else {
                let minus: Vec<(Rational, Rational)> = js.iter().map(|&j| (at(j), w.triple(j, j - m))).collect();
                let cpoly_minus = interpolate_verified(&minus, degree_bound, EXTRA_CHECKS)?;
                if cpoly_minus != cpoly_plus.reflect() {
                    return Err(Error::ParityViolation("C(j,-m,k) is not the reflection of C(j,m,k)"));
                }
                let num = &(&cpoly_plus * &shifted_lambda(-mi)) + &(&cpoly_minus * &shifted_lambda(mi));
                let poles = alloc::vec![(p, 1u32), (p + m, 1), ((pi - mi).unsigned_abs(), 1)];
                (cpoly_minus, num, poles)
            };
            if numerator.parity() != Parity::Even {
                return Err(Error::ParityViolation("paired band numerator is not even"));
            }
            let summand = partial_fractions(&numerator.to_exact(), &poles)?;
            let problem = RegSumProblem::new(summand.clone(), tail_start + p, BTreeSet::new())?;
            let tail_value = regsum_rational(&problem)?;
            let band = BandPlan {
                m,
                tail_start,
                initial_terms,
                cpoly_plus,
                cpoly_minus,
                numerator,
                poles,
                summand,
                problem,
                tail_value,
            };
            value += band.value();
            bands.push(band);
        }
        Ok(TraceTermPlan { n, k, mode_zero, bands, value })
    }

    /// `Σ_{±m} C(j,m,k)/(λ_j λ_{j+m})` at a tail index `j`, read off the plan.
    pub fn band_summand_at(&self, band: usize, j: u64) -> Option<ExactScalar> {
        let b = self.bands.get(band)?;
        let p = (self.n as u64 - 1) / 2;
        b.summand.eval(&int((j + p) as i64))
    }
}

/// `TR(φ_ii Δ̄⁻¹ φ_jj Δ̄⁻¹)` for `φ = P_k(x·x₀)/λ_k`; zero for `k = 0`.
pub fn trace_term(n: u32, k: u64) -> Result<ExactScalar> {
    let spec = SphereSpec::new(n)?;
    let table = GegenbauerTable::new(spec, table_size_for(n, k));
    Ok(TraceTermPlan::build(&table, k)?.value)
}

/// Numeric trace term with no partial fractions and no closed pole rules:
/// `Z(1)` from the spectral expansion, each band tail by direct summation.
pub fn trace_term_numeric_oracle(n: u32, k: u64, tolerance: f64) -> Result<f64> {
    let spec = SphereSpec::new(n)?;
    let table = GegenbauerTable::new(spec, table_size_for(n, k));
    let plan = TraceTermPlan::build(&table, k)?;
    if k == 0 {
        return Ok(0.0);
    }
    let z1 = spectral_zeta_at_one_numeric(&spec)?;
    let mut total = -2.0 * z1 * rational_to_f64(&(spec.dim_harmonics(k) / spec.laplace_eigenvalue(k)));
    for b in &plan.bands {
        total += rational_to_f64(&b.initial_sum());
        total += regsum_numeric_oracle_rational(
            &b.numerator,
            &b.denominator(),
            b.tail_start + spec.p() as u64,
            &BTreeSet::new(),
            tolerance,
        )?;
    }
    Ok(total)
}

/// `(n+3)(n² + n − 4 − 4(n+1) Σ_{j=2}^{n−1} 1/j) / (4(n−3)(n+1)²)`, the `k = 2` trace for `n > 3`.
pub fn closed_form_trace_k2(n: u32) -> Result<Rational> {
    SphereSpec::new(n)?;
    if n == 3 {
        return Err(Error::Unsupported("k = 2 trace closed form needs n > 3"));
    }
    let ni = n as i64;
    let s = harmonic_number(n as u64 - 1)? - int(1);
    let inner = int(ni * ni + ni - 4) - int(4 * (ni + 1)) * s;
    Ok(int(ni + 3) * inner / int(4 * (ni - 3) * (ni + 1) * (ni + 1)))
}

/// `∫ φ̄² = d_k/λ_k²` for `k ≥ 1`.
pub fn phi_norm_squared(spec: &SphereSpec, k: u64) -> Rational {
    let l = spec.laplace_eigenvalue(k);
    spec.dim_harmonics(k) / (&l * &l)
}

pub fn hess_f_conformal_with_table(table: &GegenbauerTable, k: u64) -> Result<HessianCell> {
    let spec = table.spec();
    let n = spec.n();
    if k == 0 {
        return Ok(HessianCell { n, k, value: ExactScalar::zero(), per_phi2: ExactScalar::zero(), sign: Sign::Zero });
    }
    let ni = n as i64;
    let norm = phi_norm_squared(&spec, k);
    let trace = TraceTermPlan::build(table, k)?.value;
    let value = ExactScalar::from_rational(rat((ni + 2) * (ni - 2), 2) * &norm) - trace.scale(&rat((ni - 2) * (ni - 2), 4));
    let per_phi2 = value.scale(&(Rational::one() / norm));
    let sign = value.sign();
    Ok(HessianCell { n, k, value, per_phi2, sign })
}

/// Hessian of `F` on `2φ g₀` with `φ = P_k(x·x₀)/λ_k`.
pub fn hess_f_conformal(n: u32, k: u64) -> Result<HessianCell> {
    let spec = SphereSpec::new(n)?;
    let table = GegenbauerTable::new(spec, table_size_for(n, k));
    hess_f_conformal_with_table(&table, k)
}

/// `2(n−2)(−2 + (n−2)(n+1) Σ_{j=2}^{n−1} 1/j) / ((n−3) n)`, the `H_2` Hessian per `∫φ²`.
pub fn hess_f_h2_closed(n: u32) -> Result<Rational> {
    SphereSpec::new(n)?;
    if n == 3 {
        return Err(Error::Unsupported("H_2 closed form needs n > 3"));
    }
    let ni = n as i64;
    let s = harmonic_number(n as u64 - 1)? - int(1);
    let inner = int(-2) + int((ni - 2) * (ni + 1)) * s;
    Ok(int(2 * (ni - 2)) * inner / int((ni - 3) * ni))
}

/// Conjectured sign on `H_k`, `k ≥ 2`.
///
/// For `1 < k < n − 1`: negative iff `k ≡ 1 (mod 4)`.
/// For `k ≥ n − 1`: negative iff `n ≡ 3 (mod 4)`.
pub fn conjecture_prediction(n: u32, k: u64) -> Option<Sign> {
    if k <= 1 || n < 3 || n.is_multiple_of(2) {
        return None;
    }
    let negative = if k < n as u64 - 1 { k % 4 == 1 } else { n % 4 == 3 };
    Some(if negative { Sign::Negative } else { Sign::Positive })
}

/// Cells for odd `3 ≤ n ≤ n_max` and `2 ≤ k ≤ k_max`, ordered by `(n, k)`.
pub fn conjecture_table(n_max: u32, k_max: u64) -> Result<Vec<HessianCell>> {
    let mut out = Vec::new();
    for n in (3..=n_max).step_by(2) {
        let spec = SphereSpec::new(n)?;
        let table = GegenbauerTable::new(spec, table_size_for(n, k_max));
        for k in 2..=k_max {
            out.push(hess_f_conformal_with_table(&table, k)?);
        }
    }
    Ok(out)
}

/// Number of coefficients checked by [`hess_detl_sign`].
pub const DETL_POSITIVITY_RANGE: u64 = 200;

/// Definite sign of `Hess log det L` on trace-free divergence-free directions.
///
/// `Hess = −TR(…)` and the trace equals `(−1)^{(n+1)/2}` times a form with
/// positive Fourier weights, so the sign is `(−1)^{(n−1)/2}` once those
/// weights are confirmed positive.
pub fn hess_detl_sign(n: u32) -> Result<Sign> {
    let seq = alpha_seq_detl(n)?;
    for (k, t) in seq.terms(DETL_POSITIVITY_RANGE).iter().enumerate() {
        if t.sign() != Sign::Positive {
            return Err(Error::SignViolation(alloc::format!("det L weight {k} for n = {n} is {t}")));
        }
    }
    Ok(if n % 4 == 3 { Sign::Negative } else { Sign::Positive })
}

/// Sign data supporting the strict local maximum of `F` at `S³`.
#[derive(Debug, Clone, PartialEq)]
pub struct S3Report {
    pub alphas: Vec<ExactScalar>,
    pub conformal: Vec<HessianCell>,
    /// The mixed conformal/trace-free term, identically zero.
    pub cross_term: ExactScalar,
}

pub fn hess_f_s3_report(k_max: u64) -> Result<S3Report> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    let alphas = alpha_seq_s3_f().terms(k_max);
    for (k, a) in alphas.iter().enumerate() {
        if a.sign() != Sign::Positive {
            return Err(Error::SignViolation(alloc::format!("alpha_{k} = {a}")));
        }
    }
    let spec = SphereSpec::new(3)?;
    let table = GegenbauerTable::new(spec, table_size_for(3, k_max));
    let mut conformal = Vec::new();
    for k in 2..=k_max {
        let cell = hess_f_conformal_with_table(&table, k)?;
        if cell.sign != Sign::Negative {
            return Err(Error::SignViolation(alloc::format!("Hess F on H_{k} of S^3 is {}", cell.value)));
        }
        conformal.push(cell);
    }
    Ok(S3Report { alphas, conformal, cross_term: ExactScalar::zero() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceRoute {
    /// Regular part of the Green kernel on the diagonal.
    Kernel,
    /// Continued spectral zeta function at `s = 1`.
    Spectral,
}

/// `TR Δ⁻¹` on `S³` by the chosen route: exact for the kernel route, `f64`
/// for the spectral route.
pub fn tr_inv_laplacian_s3(route: TraceRoute) -> Result<(Option<ExactScalar>, f64)> {
    match route {
        TraceRoute::Kernel => {
            let a = green_s3_delta().taylor_regular_part(0)?;
            let v = a[0].clone();
            let f = v.to_f64();
            Ok((Some(v), f))
        }
        TraceRoute::Spectral => Ok((None, spectral_zeta_at_one_numeric(&SphereSpec::new(3)?)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(r: Rational) -> ExactScalar {
        ExactScalar::from_rational(r)
    }

    #[test]
    fn k2_trace_examples() {
        assert!(trace_term(5, 2).unwrap().is_zero());
        assert_eq!(trace_term(7, 2).unwrap(), sc(rat(7, 128)));
        assert!(closed_form_trace_k2(5).unwrap().is_zero());
        assert_eq!(closed_form_trace_k2(7).unwrap(), rat(7, 128));
        assert!(closed_form_trace_k2(3).is_err());
    }

    #[test]
    fn k2_hessians() {
        assert_eq!(hess_f_conformal(5, 2).unwrap().value, sc(rat(35, 24)));
        assert_eq!(hess_f_conformal(7, 2).unwrap().value, sc(rat(175, 64)));
        assert_eq!(hess_f_h2_closed(5).unwrap(), rat(21, 2));
        assert_eq!(hess_f_h2_closed(7).unwrap(), int(20));
        assert_eq!(hess_f_conformal(5, 2).unwrap().per_phi2, sc(rat(21, 2)));
        assert!(hess_f_h2_closed(3).is_err());
    }

    #[test]
    fn low_modes_vanish() {
        for n in [3u32, 5, 7] {
            for k in [0u64, 1] {
                let c = hess_f_conformal(n, k).unwrap();
                assert!(c.value.is_zero(), "n={n} k={k}: {}", c.value);
                assert_eq!(c.sign, Sign::Zero);
            }
        }
    }

    #[test]
    fn frozen_values() {
        // independent rational-function evaluation of the same sums
        let s3_2 = ExactScalar::from_terms([(1, rat(-1, 8)), (0, rat(-15, 64))]);
        assert_eq!(hess_f_conformal(3, 2).unwrap().value, s3_2);
        assert_eq!(hess_f_conformal(3, 3).unwrap().value, sc(rat(-512, 225)));
        assert_eq!(hess_f_conformal(5, 3).unwrap().value, sc(rat(2560, 147)));
        assert_eq!(
            hess_f_conformal(5, 4).unwrap().value,
            ExactScalar::from_terms([(1, rat(135, 32)), (0, rat(22365, 1024))])
        );
        assert_eq!(hess_f_conformal(7, 4).unwrap().value, sc(rat(539, 160)));
        assert_eq!(hess_f_conformal(7, 5).unwrap().value, sc(rat(-462848, 1815)));
        assert_eq!(hess_f_conformal(9, 5).unwrap().value, sc(rat(-25088, 169)));
        assert_eq!(hess_f_conformal(9, 6).unwrap().value, sc(rat(3575, 224)));
    }

    #[test]
    fn plan_reproduces_band_sums() {
        let spec = SphereSpec::new(7).unwrap();
        let table = GegenbauerTable::new(spec, table_size_for(7, 5));
        let plan = TraceTermPlan::build(&table, 5).unwrap();
        let w = table.weighted(5);
        let lam = |j: u64| spec.laplace_eigenvalue(j);
        for (bi, b) in plan.bands.iter().enumerate() {
            for j in b.tail_start..b.tail_start + 6 {
                let m = b.m;
                let mut direct = w.triple(j, j + m) / (lam(j) * lam(j + m));
                if m > 0 {
                    direct += w.triple(j, j - m) / (lam(j) * lam(j - m));
                }
                assert_eq!(plan.band_summand_at(bi, j).unwrap(), sc(direct));
            }
        }
    }

    #[test]
    fn oracle_agreement() {
        for (n, k) in [(5u32, 3u64), (7, 4), (9, 5)] {
            let exact = trace_term(n, k).unwrap().to_f64();
            let oracle = trace_term_numeric_oracle(n, k, 1e-10).unwrap();
            assert!((exact - oracle).abs() < 1e-6 * exact.abs().max(1.0), "n={n} k={k}: {exact} vs {oracle}");
        }
    }

    #[test]
    fn predictions() {
        assert_eq!(conjecture_prediction(7, 5), Some(Sign::Negative));
        assert_eq!(conjecture_prediction(7, 10), Some(Sign::Negative));
        assert_eq!(conjecture_prediction(5, 4), Some(Sign::Positive));
        assert_eq!(conjecture_prediction(7, 2), Some(Sign::Positive));
        assert_eq!(conjecture_prediction(7, 1), None);
    }

    #[test]
    fn small_table_matches_pattern() {
        for c in conjecture_table(9, 8).unwrap() {
            assert_eq!(Some(c.sign), conjecture_prediction(c.n, c.k), "n={} k={}", c.n, c.k);
        }
    }

    #[test]
    fn example_routes() {
        let (exact, _) = tr_inv_laplacian_s3(TraceRoute::Kernel).unwrap();
        assert_eq!(exact.unwrap(), sc(rat(-3, 4)));
        let (_, v) = tr_inv_laplacian_s3(TraceRoute::Spectral).unwrap();
        assert!((v + 0.75).abs() < 1e-8);
    }

    #[test]
    fn detl_signs() {
        assert_eq!(hess_detl_sign(3).unwrap(), Sign::Negative);
        assert_eq!(hess_detl_sign(5).unwrap(), Sign::Positive);
        assert_eq!(hess_detl_sign(7).unwrap(), Sign::Negative);
    }

    #[test]
    fn s3_report() {
        let r = hess_f_s3_report(4).unwrap();
        assert_eq!(r.alphas[1], ExactScalar::from_int(5));
        assert!(r.cross_term.is_zero());
        assert_eq!(r.conformal.len(), 3);
    }
}
