//! Radial Green kernels, the operator `T f = f″ − cot r · f′`, and the
//! Fourier weight sequences of the singular product kernels.
//!
//! Kernels of `L₀⁻¹` on `Sⁿ` carry the positive constant
//! `C_n = 1/((n−2)V_{n−1})` as an unevaluated factor; every value returned for
//! them is in units of `C_n` (or `C_n²` for products).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{dilog, polylog_neg};
use crate::poly::{Parity, Polynomial};
use crate::scalar::{int, rat, rational_to_f64, ExactScalar, Rational};
use crate::special::{bernoulli, e_sequence, e_sequence_f64, e_value};
use crate::sphere::{factorial, SphereSpec};

const PI: f64 = core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    /// `Δ⁻¹` on `S³`: `(π−r)cos r/(2 sin r) − 1/4`.
    S3GreenDelta,
    /// `Δ̄₀⁻¹` on `S³`: `(π−r)cos r/(2 sin r) + 1/2`.
    S3GreenDeltaBar,
    /// `L₀⁻¹` on `Sⁿ`: `C_n / sin^{n−2}(r/2)`.
    SnGreenL { n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadialKernel {
    family: KernelFamily,
}

pub fn green_s3_delta() -> RadialKernel {
    RadialKernel { family: KernelFamily::S3GreenDelta }
}

pub fn green_s3_deltabar() -> RadialKernel {
    RadialKernel { family: KernelFamily::S3GreenDeltaBar }
}

pub fn green_l(n: u32) -> Result<RadialKernel> {
    SphereSpec::new(n)?;
    Ok(RadialKernel { family: KernelFamily::SnGreenL { n } })
}

fn check_domain(r: f64) -> Result<()> {
    if r > 0.0 && r <= PI {
        Ok(())
    } else {
        Err(Error::OutOfDomain(r))
    }
}

fn check_open_domain(r: f64) -> Result<()> {
    if r > 0.0 && r < PI {
        Ok(())
    } else {
        Err(Error::OutOfDomain(r))
    }
}

/// `t / sin t`, finite at `t = 0`.
fn t_over_sin(t: f64) -> f64 {
    if libm::fabs(t) < 1e-4 {
        1.0 + t * t / 6.0
    } else {
        t / libm::sin(t)
    }
}

fn powu(x: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl RadialKernel {
    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn dimension(&self) -> u32 {
        match self.family {
            KernelFamily::S3GreenDelta | KernelFamily::S3GreenDeltaBar => 3,
            KernelFamily::SnGreenL { n } => n,
        }
    }

    /// Constant added to `−r cot r / 2` in the regular part.
    fn regular_constant(&self) -> Option<Rational> {
        match self.family {
            KernelFamily::S3GreenDelta => Some(rat(-1, 4)),
            KernelFamily::S3GreenDeltaBar => Some(rat(1, 2)),
            KernelFamily::SnGreenL { .. } => None,
        }
    }

    pub fn has_regular_part(&self) -> bool {
        self.regular_constant().is_some()
    }

    /// Kernel value at geodesic distance `r ∈ (0, π]`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        check_domain(r)?;
        match self.regular_constant() {
            Some(c) => {
                let t = PI - r;
                Ok(t_over_sin(t) * libm::cos(r) / 2.0 + rational_to_f64(&c))
            }
            None => self.singular_extended(r),
        }
    }

    /// Regular part on `(0, π)`; both parts blow up at `r = π`.
    pub fn regular(&self, r: f64) -> Result<f64> {
        check_open_domain(r)?;
        self.regular_extended(r)
    }

    pub fn singular(&self, r: f64) -> Result<f64> {
        check_open_domain(r)?;
        self.singular_extended(r)
    }

    /// Regular part as an analytic expression on `0 < |r| < π`; even in `r`.
    pub fn regular_extended(&self, r: f64) -> Result<f64> {
        if r == 0.0 || r.is_nan() || libm::fabs(r) >= PI {
            return Err(Error::OutOfDomain(r));
        }
        let c = self.regular_constant().ok_or(Error::NoRegularPart)?;
        Ok(-r * libm::cos(r) / (2.0 * libm::sin(r)) + rational_to_f64(&c))
    }

    /// Singular part as an analytic expression on `0 < |r| < π`; odd in `r`.
    pub fn singular_extended(&self, r: f64) -> Result<f64> {
        if r == 0.0 || r.is_nan() || libm::fabs(r) > PI || r == -PI {
            return Err(Error::OutOfDomain(r));
        }
        match self.family {
            KernelFamily::S3GreenDelta | KernelFamily::S3GreenDeltaBar => {
                if libm::fabs(r) == PI {
                    return Err(Error::OutOfDomain(r));
                }
                Ok(PI * libm::cos(r) / (2.0 * libm::sin(r)))
            }
            KernelFamily::SnGreenL { n } => Ok(1.0 / powu(libm::sin(r / 2.0), n - 2)),
        }
    }

    /// Parity of the singular part in `r`: odd for every supported family.
    pub fn singular_parity(&self) -> Parity {
        Parity::Odd
    }

    /// Exact Taylor coefficients `a_0, …, a_order` of the regular part in `r`.
    /// Odd positions are zero.
    pub fn taylor_regular_part(&self, order: usize) -> Result<Vec<ExactScalar>> {
        let c = self.regular_constant().ok_or(Error::NoRegularPart)?;
        let rcot = r_cot_r_series(order);
        Ok(rcot
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut v = -a / int(2);
                if i == 0 {
                    v += &c;
                }
                ExactScalar::from_rational(v)
            })
            .collect())
    }

    /// `2 a₂`, the diagonal Hessian of the regular part at the pole.
    pub fn regular_hessian_constant(&self) -> Result<Rational> {
        let a = self.taylor_regular_part(2)?;
        a[2].as_rational()
            .map(|x| x * int(2))
            .ok_or(Error::Unsupported("non-rational Taylor coefficient"))
    }

    /// `(T G)(r)` in closed form on `(0, π]`.
    pub fn apply_t(&self, r: f64) -> Result<f64> {
        check_domain(r)?;
        match self.family {
            KernelFamily::S3GreenDelta | KernelFamily::S3GreenDeltaBar => {
                // −3(r−π)cos r/(2 sin³ r) + 3/(2 sin² r) − 1/2 = 3(sin t − t cos t)/(2 sin³ t) − 1/2, t = π − r
                let t = PI - r;
                let num_over_t3 = if t < 1e-3 {
                    let t2 = t * t;
                    1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0
                } else {
                    (libm::sin(t) - t * libm::cos(t)) / (t * t * t)
                };
                let ts = t_over_sin(t);
                Ok(1.5 * num_over_t3 * ts * ts * ts - 0.5)
            }
            KernelFamily::SnGreenL { n } => {
                let cp = rational_to_f64(&l_t_constant(n));
                let c = libm::cos(r / 2.0);
                Ok(cp * c * c / powu(libm::sin(r / 2.0), n))
            }
        }
    }
}

/// `C′_n / C_n = n(n−2)/4`, where `T G_L = C′_n cos²(r/2)/sin^n(r/2)`.
pub fn l_t_constant(n: u32) -> Rational {
    let n = n as i64;
    rat(n * (n - 2), 4)
}

/// `C″_n / C_n² = 2^{n−1} (C′_n/C_n)²`.
pub fn l_product_constant(n: u32) -> Rational {
    let c = l_t_constant(n);
    Rational::from_integer(BigInt::one() << (n - 1) as usize) * &c * &c
}

/// Central-difference evaluation of `T f` at `r`.
pub fn apply_t_fd<F: Fn(f64) -> f64>(f: F, r: f64, h: f64) -> f64 {
    let fp = f(r + h);
    let fm = f(r - h);
    let f0 = f(r);
    let d2 = (fp - 2.0 * f0 + fm) / (h * h);
    let d1 = (fp - fm) / (2.0 * h);
    d2 - libm::cos(r) / libm::sin(r) * d1
}

/// `f(r) = TΦ(r) TΨ(r) sin^{n−1} r`.
pub fn f_product(phi: &RadialKernel, psi: &RadialKernel, r: f64) -> Result<f64> {
    let n = phi.dimension();
    if psi.dimension() != n {
        return Err(Error::InvalidArgument("kernels live on different spheres".into()));
    }
    Ok(phi.apply_t(r)? * psi.apply_t(r)? * powu(libm::sin(r), n - 1))
}

/// `C″_n cos²(r/2) cot^{n+1}(r/2)` in units of `C_n²`.
pub fn f_detl_closed(n: u32, r: f64) -> f64 {
    let c = libm::cos(r / 2.0);
    let cot = c / libm::sin(r / 2.0);
    rational_to_f64(&l_product_constant(n)) * c * c * powu(cot, n + 1)
}

fn cos_series(len: usize) -> Vec<Rational> {
    (0..len)
        .map(|i| {
            if i % 2 == 1 {
                Rational::zero()
            } else {
                let s = if (i / 2) % 2 == 0 { 1 } else { -1 };
                Rational::new(BigInt::from(s), factorial(i as u64))
            }
        })
        .collect()
}

/// Coefficients of `sin r / r`.
fn sinc_series(len: usize) -> Vec<Rational> {
    (0..len)
        .map(|i| {
            if i % 2 == 1 {
                Rational::zero()
            } else {
                let s = if (i / 2) % 2 == 0 { 1 } else { -1 };
                Rational::new(BigInt::from(s), factorial(i as u64 + 1))
            }
        })
        .collect()
}

/// Quotient of two power series; `den[0] ≠ 0`.
fn series_div(num: &[Rational], den: &[Rational], len: usize) -> Vec<Rational> {
    let inv = Rational::one() / &den[0];
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = num.get(i).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=i.min(den.len().saturating_sub(1)) {
            acc -= &den[j] * &out[i - j];
        }
        out.push(acc * &inv);
    }
    out
}

/// Exact coefficients of `r cot r` up to `r^order`.
pub fn r_cot_r_series(order: usize) -> Vec<Rational> {
    let len = order + 1;
    series_div(&cos_series(len), &sinc_series(len), len)
}

/// Same series from `r cot r = Σ (−4)^k B_{2k}/(2k)! r^{2k}`.
pub fn r_cot_r_bernoulli(order: usize) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(order + 1);
    for i in 0..=order {
        if i % 2 == 1 {
            out.push(Rational::zero());
            continue;
        }
        let k = i / 2;
        let b = bernoulli(i)?;
        let p = Rational::from_integer(BigInt::from(-4i64).pow(k as u32));
        out.push(p * b / Rational::from_integer(factorial(i as u64)));
    }
    Ok(out)
}

/// Which closed form a [`CoeffSeq`] follows.
#[derive(Debug, Clone, PartialEq)]
pub enum SeqKind {
    /// Weights of `(T G)² sin² r` for the `Δ̄₀⁻¹` kernel on `S³`.
    S3F,
    /// Weights of `(−1)^{(n+1)/2} cos²(r/2) cot^{n+1}(r/2)`.
    DetL {
        n: u32,
        /// `p(k)` for `k ≤ n + 1`.
        p_head: Vec<Rational>,
        /// `(q(k) + q(k−1))/4` with `q` the eventual polynomial.
        c_poly: Polynomial<Rational>,
        /// `−(even part of c_poly)`.
        e_poly: Polynomial<Rational>,
    },
    Zero,
}

/// Fourier weight sequence `α_k`, `k ≥ 0`, with its odd-power asymptotics.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    kind: SeqKind,
    initial: Vec<(u64, ExactScalar)>,
    asymptotic: Vec<(u32, ExactScalar)>,
}

pub fn alpha_seq_s3_f() -> CoeffSeq {
    let pi2 = ExactScalar::pi_squared();
    CoeffSeq {
        kind: SeqKind::S3F,
        initial: alloc::vec![
            (0, ExactScalar::from_rational(rat(5, 8))),
            (1, ExactScalar::from_int(5)),
            (2, ExactScalar::from_terms([(1, rat(3, 2)), (0, rat(115, 16))])),
        ],
        asymptotic: alloc::vec![(3, pi2.scale(&rat(3, 16))), (1, pi2.scale(&rat(3, 8)))],
    }
}

/// `α_k − γ_k`, the polynomial by which the displayed weights differ from
/// the pre-adjustment Fourier data `γ_k`.
pub fn s3_gamma(k: u64) -> ExactScalar {
    match k {
        0 => ExactScalar::from_rational(rat(-11, 8)),
        1 => ExactScalar::from_rational(rat(9, 4)),
        2 => ExactScalar::from_terms([(1, rat(3, 2)), (0, rat(9, 4) - rat(1, 16))]),
        _ => {
            let kr = int(k as i64);
            let cubic = rat(3, 2) * (&kr * &kr * &kr + int(2) * &kr);
            e_value(k - 2).scale(&cubic) + ExactScalar::from_rational(rat(3, 4) * &kr + rat(3, 2) / &kr)
        }
    }
}

fn s3_term(k: u64, e_km2: &ExactScalar) -> ExactScalar {
    let kr = int(k as i64);
    let cubic = rat(3, 2) * (&kr * &kr * &kr + int(2) * &kr);
    let rest = rat(3, 4) * (&kr * &kr + &kr + int(2) / &kr) + int(2);
    e_km2.scale(&cubic) + ExactScalar::from_rational(rest)
}

/// `p(k)`, the coefficients of `((1+z)/(1−z))^{n+1}`, for `k ≤ kmax`.
pub fn pk_coeffs(n: u32, kmax: u64) -> Result<Vec<Rational>> {
    SphereSpec::new(n)?;
    let m = n as u64 + 1;
    // (1−z)^{−m} has coefficients C(k+m−1, m−1)
    let mut inv = Vec::with_capacity(kmax as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=kmax {
        if k > 0 {
            c = c * BigInt::from(k + m - 1) / BigInt::from(k);
        }
        inv.push(c.clone());
    }
    let mut binom = Vec::with_capacity(m as usize + 1);
    let mut b = BigInt::one();
    for l in 0..=m {
        if l > 0 {
            b = b * BigInt::from(m - l + 1) / BigInt::from(l);
        }
        binom.push(b.clone());
    }
    Ok((0..=kmax)
        .map(|k| {
            let mut acc = BigInt::zero();
            for l in 0..=m.min(k) {
                acc += &binom[l as usize] * &inv[(k - l) as usize];
            }
            Rational::from_integer(acc)
        })
        .collect())
}

/// `q(k) = (1/n!) Σ_ℓ C(n+1, ℓ) Π_{j=1}^{n} (k + j − ℓ)`, equal to `p(k)` for `k ≥ 1`.
pub fn eventual_polynomial(n: u32) -> Result<Polynomial<Rational>> {
    SphereSpec::new(n)?;
    let m = n as i64 + 1;
    let mut total = Polynomial::<Rational>::zero();
    let mut b = BigInt::one();
    for l in 0..=m {
        if l > 0 {
            b = b * BigInt::from(m - l + 1) / BigInt::from(l);
        }
        let roots: Vec<Rational> = (1..=n as i64).map(|j| int(l - j)).collect();
        let prod = Polynomial::from_roots(roots.iter());
        total = &total + &prod.scale(&Rational::from_integer(b.clone()));
    }
    Ok(total.scale(&Rational::new(BigInt::one(), factorial(n as u64))))
}

pub fn alpha_seq_detl(n: u32) -> Result<CoeffSeq> {
    let q = eventual_polynomial(n)?;
    let p_head = pk_coeffs(n, n as u64 + 1)?;
    let c_poly = (&q + &q.shift(&int(-1))).scale(&rat(1, 4));
    let (even, odd) = c_poly.split_parity();
    let e_poly = -&even;
    let asymptotic = odd
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .rev()
        .map(|(i, c)| (i as u32, ExactScalar::from_rational(c.clone())))
        .collect();
    let mut seq = CoeffSeq {
        kind: SeqKind::DetL { n, p_head, c_poly, e_poly },
        initial: Vec::new(),
        asymptotic,
    };
    // record where the full term departs from its odd polynomial form
    for k in 0..=n as u64 + 1 {
        let t = seq.term(k);
        if t != seq.asymptotic_value(k) {
            seq.initial.push((k, t));
        }
    }
    Ok(seq)
}

pub fn zero_seq() -> CoeffSeq {
    CoeffSeq { kind: SeqKind::Zero, initial: Vec::new(), asymptotic: Vec::new() }
}

impl CoeffSeq {
    pub fn kind(&self) -> &SeqKind {
        &self.kind
    }

    pub fn initial_exceptions(&self) -> &[(u64, ExactScalar)] {
        &self.initial
    }

    /// `(odd power, coefficient)` pairs, highest power first.
    pub fn asymptotic(&self) -> &[(u32, ExactScalar)] {
        &self.asymptotic
    }

    pub fn asymptotic_value(&self, k: u64) -> ExactScalar {
        let kr = int(k as i64);
        let mut acc = ExactScalar::zero();
        for (p, c) in &self.asymptotic {
            let mut kp = Rational::one();
            for _ in 0..*p {
                kp *= &kr;
            }
            acc += c.scale(&kp);
        }
        acc
    }

    pub fn term(&self, k: u64) -> ExactScalar {
        match &self.kind {
            SeqKind::S3F => {
                if let Some((_, v)) = self.initial.iter().find(|(i, _)| *i == k) {
                    return v.clone();
                }
                s3_term(k, &e_value(k - 2))
            }
            SeqKind::DetL { n, p_head, c_poly, e_poly } => {
                let kr = int(k as i64);
                let p = |j: u64| {
                    if j as usize <= *n as usize + 1 {
                        p_head[j as usize].clone()
                    } else {
                        Rational::zero()
                    }
                };
                let c = if k == 0 {
                    p(0) / int(2)
                } else if k <= *n as u64 + 1 {
                    (p(k) + p(k - 1)) / int(4)
                } else {
                    c_poly.eval(&kr)
                };
                ExactScalar::from_rational(c + e_poly.eval(&kr))
            }
            SeqKind::Zero => ExactScalar::zero(),
        }
    }

    pub fn terms(&self, kmax: u64) -> Vec<ExactScalar> {
        match &self.kind {
            SeqKind::S3F => {
                let e = e_sequence(kmax.max(2));
                (0..=kmax)
                    .map(|k| if k <= 2 { self.term(k) } else { s3_term(k, &e[(k - 2) as usize]) })
                    .collect()
            }
            _ => (0..=kmax).map(|k| self.term(k)).collect(),
        }
    }

    pub fn terms_f64(&self, kmax: u64) -> Vec<f64> {
        match &self.kind {
            SeqKind::S3F => {
                let e = e_sequence_f64(kmax.max(2));
                (0..=kmax)
                    .map(|k| {
                        if k <= 2 {
                            self.term(k).to_f64()
                        } else {
                            let kf = k as f64;
                            1.5 * (kf * kf * kf + 2.0 * kf) * e[(k - 2) as usize]
                                + 0.75 * (kf * kf + kf + 2.0 / kf)
                                + 2.0
                        }
                    })
                    .collect()
            }
            _ => self.terms(kmax).iter().map(ExactScalar::to_f64).collect(),
        }
    }

    /// Harmonic extension `α₀ + Σ α_k (z^k + z̄^k)` in closed form, `|z| ≤ 1`.
    pub fn extension_closed(&self, z: Complex64) -> Result<f64> {
        if z.norm().is_nan() || z.norm() > 1.0 {
            return Err(Error::OutOfDomain(z.norm()));
        }
        match &self.kind {
            SeqKind::S3F => s3_extension_closed(z),
            SeqKind::DetL { n, e_poly, .. } => Ok(detl_extension_closed(*n, e_poly, z)),
            SeqKind::Zero => Ok(0.0),
        }
    }

    /// Radial limit of the extension at `e^{ir}`, `r ∈ (0, π)`.
    pub fn boundary_function(&self, r: f64) -> Result<f64> {
        check_open_domain(r)?;
        match &self.kind {
            SeqKind::S3F => {
                let g = green_s3_deltabar();
                f_product(&g, &g, r)
            }
            SeqKind::DetL { n, .. } => {
                let s = if n.div_ceil(2).is_multiple_of(2) { 1.0 } else { -1.0 };
                let c = libm::cos(r / 2.0);
                Ok(s * c * c * powu(c / libm::sin(r / 2.0), n + 1))
            }
            SeqKind::Zero => Ok(0.0),
        }
    }
}

fn s3_extension_closed(z: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let w = z * z;
    let omw = one - w;
    let g = one / omw;
    // θ = z d/dz; θw = 2w
    let g1 = 2.0 * w / (omw * omw);
    let g2 = 4.0 * w * (one + w) / (omw * omw * omw);
    let g3 = 8.0 * w * (one + 4.0 * w + w * w) / (omw * omw * omw * omw);
    let p0 = -i * (2.0 * g - one);
    let (p1, p2, p3) = (-2.0 * i * g1, -2.0 * i * g2, -2.0 * i * g3);
    let omz = one - z;
    let h0 = Complex64::new(PI * PI / 6.0, 0.0) + 2.0 * dilog(z)?;
    let h1 = -2.0 * omz.ln();
    let h2 = 2.0 * z / omz;
    let h3 = 2.0 * z / (omz * omz);
    let q1 = p1 * h0 + p0 * h1;
    let q3 = p3 * h0 + 3.0 * p2 * h1 + 3.0 * p1 * h2 + p0 * h3;
    // D = iθ: Dq = i θq, D³q = −i θ³q
    let gh = -0.375 * (-i * q3 - 2.0 * i * q1) - one * (11.0 / 16.0) - w / 16.0;
    let poly = 0.75 * z * (one + z) / (omz * omz * omz) + 2.0 * z / omz + one;
    Ok(2.0 * (gh + poly).re)
}

fn detl_extension_closed(n: u32, e_poly: &Polynomial<Rational>, z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let ratio = (one + z) / (one - z);
    let mut pz = one;
    for _ in 0..=n {
        pz *= ratio;
    }
    let e0 = rational_to_f64(&e_poly.coeff(0));
    let mut acc = 0.25 * (one + z) * pz + e0 / 2.0;
    for (j, c) in e_poly.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += polylog_neg(j, z) * rational_to_f64(c);
        }
    }
    2.0 * acc.re
}

/// Largest number of terms [`abel_summation_oracle`] will sum.
pub const ABEL_MAX_TERMS: u64 = 20_000;

/// Max deviation over `r_samples` between the Abel partial sums
/// `α₀ + 2 Σ α_k ρ^k cos kr` and the closed-form harmonic extension at `ρe^{ir}`.
pub fn abel_summation_oracle(seq: &CoeffSeq, r_samples: &[f64], rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::OutOfDomain(rho));
    }
    // grow the term count until the last block is negligible
    let mut kmax = 64u64;
    let alphas = loop {
        let a = seq.terms_f64(kmax);
        let tail = a[a.len() - 8..]
            .iter()
            .enumerate()
            .map(|(i, x)| libm::fabs(*x) * libm::pow(rho, (kmax as usize - 7 + i) as f64))
            .fold(0.0, f64::max);
        if tail < 1e-18 {
            break a;
        }
        if kmax >= ABEL_MAX_TERMS {
            return Err(Error::NonConvergence(alloc::format!("Abel partial sums at rho = {rho}")));
        }
        kmax = (kmax * 2).min(ABEL_MAX_TERMS);
    };
    let mut worst = 0.0f64;
    for &r in r_samples {
        if libm::fabs(libm::remainder(r, 2.0 * PI)) < 1e-9 {
            return Err(Error::OutOfDomain(r));
        }
        let mut acc = alphas[0];
        let mut rk = 1.0;
        for (k, a) in alphas.iter().enumerate().skip(1) {
            rk *= rho;
            acc += 2.0 * a * rk * libm::cos(k as f64 * r);
        }
        let closed = seq.extension_closed(Complex64::from_polar(rho, r))?;
        worst = worst.max(libm::fabs(acc - closed));
    }
    Ok(worst)
}
