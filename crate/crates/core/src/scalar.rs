//! Rationals and the scalar ring ℚ[π²].
//!
//! `ExactScalar` stores a finite combination `Σ c_m (π²)^m` with rational
//! coefficients. π² is treated as a free transcendental generator, so the
//! ring is plain polynomial arithmetic in one variable. Numeric values are
//! produced by substituting a rational approximation of π² and rounding the
//! exact result once.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds `num/den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// π² to 163 decimal places.
const PI2_DIGITS: &str = "98696044010893586188344909998761511353136994072407906264133493762200448224192052430017734037185522318240259137740231440777723481220300467276106176779851976609903998";
const PI2_SCALE: u32 = PI2_DIGITS.len() as u32 - 1;

/// Binary precision used by [`ExactScalar::to_f64`].
pub const DEFAULT_PRECISION_BITS: u32 = 128;
/// Largest precision the embedded π² digits support.
pub const MAX_PRECISION_BITS: u32 = 512;

/// Rational approximation `a` of π² with `|a − π²| < 2^-bits`.
pub fn pi_squared_approx(bits: u32) -> Rational {
    let bits = bits.min(MAX_PRECISION_BITS);
    let digits: BigInt = PI2_DIGITS.parse().expect("static digits");
    let scale = BigInt::from(10u32).pow(PI2_SCALE);
    let two_bits = BigInt::one() << bits as usize;
    let numer = (digits * &two_bits).div_floor(&scale);
    Rational::new(numer, two_bits)
}

/// Interval `[lo, hi]` guaranteed to contain π².
pub fn pi_squared_bounds(bits: u32) -> (Rational, Rational) {
    let bits = bits.min(MAX_PRECISION_BITS);
    let a = pi_squared_approx(bits);
    let eps = Rational::new(BigInt::from(2), BigInt::one() << bits as usize);
    (&a - &eps, &a + &eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn of_rational(x: &Rational) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Sign> {
        match s {
            "-" => Some(Sign::Negative),
            "0" => Some(Sign::Zero),
            "+" => Some(Sign::Positive),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An element of ℚ[π²].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    // power of π² -> nonzero coefficient
    coeffs: BTreeMap<u32, Rational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(0, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `c · (π²)^power`.
    pub fn term(power: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        ExactScalar { coeffs }
    }

    pub fn pi_squared() -> Self {
        Self::term(1, Rational::one())
    }

    /// Builds a scalar from `(power, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut out = ExactScalar::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, power: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `(π²)^power`.
    pub fn coeff(&self, power: u32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing power of π².
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    /// Highest power of π² present; `None` for zero.
    pub fn pi2_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.pi2_degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    /// Exact value after substituting `pi2` for π².
    pub fn eval_at(&self, pi2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        // Horner over the (sparse) powers, highest first.
        let mut last = match self.pi2_degree() {
            Some(d) => d,
            None => return acc,
        };
        for (m, c) in self.coeffs.iter().rev() {
            for _ in *m..last {
                acc *= pi2;
            }
            acc += c;
            last = *m;
        }
        for _ in 0..last {
            acc *= pi2;
        }
        acc
    }

    /// Rational approximation accurate to roughly `bits` bits of π².
    pub fn approx_rational(&self, bits: u32) -> Rational {
        if let Some(r) = self.as_rational() {
            return r;
        }
        self.eval_at(&pi_squared_approx(bits))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_with_precision(DEFAULT_PRECISION_BITS)
    }

    pub fn to_f64_with_precision(&self, bits: u32) -> f64 {
        rational_to_f64(&self.approx_rational(bits))
    }

    /// Exact sign, decided by interval evaluation with increasing precision.
    pub fn sign(&self) -> Sign {
        if let Some(r) = self.as_rational() {
            return Sign::of_rational(&r);
        }
        let mut bits = 128;
        loop {
            let (lo, hi) = pi_squared_bounds(bits);
            let mut low = Rational::zero();
            let mut high = Rational::zero();
            for (m, c) in self.terms() {
                let a = c * pow(&lo, m);
                let b = c * pow(&hi, m);
                if c.is_positive() {
                    low += a;
                    high += b;
                } else {
                    low += b;
                    high += a;
                }
            }
            if low.is_positive() {
                return Sign::Positive;
            }
            if high.is_negative() {
                return Sign::Negative;
            }
            if bits >= MAX_PRECISION_BITS {
                // A nonzero element of Q[pi^2] this close to zero never shows
                // up in practice; fall back to the rounded value.
                return Sign::of_f64(self.to_f64_with_precision(bits));
            }
            bits *= 2;
        }
    }

    /// Fixed-point decimal string with `frac_digits` digits after the point,
    /// rounded half away from zero.
    pub fn to_decimal_string(&self, frac_digits: usize) -> String {
        let bits = (frac_digits as u32 * 4 + 96).min(MAX_PRECISION_BITS);
        decimal_string(&self.approx_rational(bits), frac_digits)
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Correctly scaled conversion that survives huge numerators and denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // Shift both parts down to 64 significant bits first.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let ns = (n >> shift_n as usize).to_f64().unwrap_or(0.0);
    let ds = (d >> shift_d as usize).to_f64().unwrap_or(1.0);
    ns / ds * libm::exp2((shift_n - shift_d) as f64)
}

pub fn decimal_string(r: &Rational, frac_digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(frac_digits as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    let abs = scaled.abs();
    let (q, rem) = abs.numer().div_rem(abs.denom());
    let twice = rem * 2u32;
    let rounded = if &twice >= abs.denom() { q + 1u32 } else { q };
    let negative = scaled.is_negative() && !rounded.is_zero();
    let mut digits = rounded.to_string();
    if frac_digits > 0 {
        if digits.len() <= frac_digits {
            let pad = frac_digits + 1 - digits.len();
            let mut s = String::with_capacity(frac_digits + 1);
            for _ in 0..pad {
                s.push('0');
            }
            s.push_str(&digits);
            digits = s;
        }
        digits.insert(digits.len() - frac_digits, '.');
    }
    if negative {
        digits.insert(0, '-');
    }
    digits
}

fn fmt_term(f: &mut fmt::Formatter<'_>, power: u32, c: &Rational, leading: bool) -> fmt::Result {
    let negative = c.is_negative();
    if leading {
        if negative {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if negative { " - " } else { " + " })?;
    }
    let num = c.numer().abs();
    let den = c.denom();
    if power == 0 {
        write!(f, "{}", num)?;
    } else {
        if !num.is_one() {
            write!(f, "{}*", num)?;
        }
        if power == 1 {
            f.write_str("pi^2")?;
        } else {
            write!(f, "pi^{}", 2 * power)?;
        }
    }
    if !den.is_one() {
        write!(f, "/{}", den)?;
    }
    Ok(())
}

impl fmt::Display for ExactScalar {
    /// Highest power of π² first, e.g. `3*pi^2/2 + 115/16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.coeffs.iter().rev().enumerate() {
            fmt_term(f, *m, c, i == 0)?;
        }
        Ok(())
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::from_rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &'a ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &'a ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(mut self) -> ExactScalar {
        for c in self.coeffs.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (m, c) in &rhs.coeffs {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for (m, c) in &rhs.coeffs {
            self.add_term(*m, -c);
        }
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident $assign:ident $amethod:ident),*) => {$(
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl $assign<ExactScalar> for ExactScalar {
            fn $amethod(&mut self, rhs: ExactScalar) {
                self.$amethod(&rhs);
            }
        }
    )*};
}

forward_owned!(
    Add add AddAssign add_assign,
    Sub sub SubAssign sub_assign,
    Mul mul MulAssign mul_assign
);

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::one()
    }
}

impl core::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        let mut acc = ExactScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

/// Parses `"a"` or `"a/b"` with optional leading minus.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Rational from an integer numerator/denominator string pair.
pub fn rational_from_parts(num: &str, den: &str) -> Option<Rational> {
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.sign() != BigSign::Plus {
        return None;
    }
    Some(Rational::new(n, d))
}
