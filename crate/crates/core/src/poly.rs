//! Dense univariate polynomials, verified interpolation and partial
//! fractions over even denominators `Π (j² − ℓ²)^o`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, ExactScalar, Rational};

/// Coefficient ring for [`Polynomial`]. Implemented for `Rational` and `ExactScalar`.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn to_exact(&self) -> ExactScalar;
}

impl Coeff for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn to_exact(&self) -> ExactScalar {
        ExactScalar::from_rational(self.clone())
    }
}

impl Coeff for ExactScalar {
    fn from_rational(r: Rational) -> Self {
        ExactScalar::from_rational(r)
    }
    fn scale(&self, r: &Rational) -> Self {
        ExactScalar::scale(self, r)
    }
    fn to_f64(&self) -> f64 {
        ExactScalar::to_f64(self)
    }
    fn to_exact(&self) -> ExactScalar {
        self.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

/// Polynomial with `coeffs[i]` the coefficient of `x^i`; no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<C = ExactScalar> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^power`.
    pub fn monomial(c: C, power: usize) -> Self {
        let mut coeffs = vec![C::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(it: I) -> Self {
        Self::new(it.into_iter().map(C::from_rational).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(x) + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn parity(&self) -> Parity {
        let odd_zero = self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero());
        let even_zero = self.coeffs.iter().step_by(2).all(|c| c.is_zero());
        match (odd_zero, even_zero) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Neither,
        }
    }

    /// `P(−x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Even and odd parts.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Vec::with_capacity(self.coeffs.len());
        let mut odd = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                even.push(c.clone());
                odd.push(C::zero());
            } else {
                even.push(C::zero());
                odd.push(c.clone());
            }
        }
        (Self::new(even), Self::new(odd))
    }

    /// For even `P(x) = Q(x²)` returns `Q`.
    pub fn even_to_square_variable(&self) -> Result<Self> {
        if self.parity() != Parity::Even && !self.is_zero() {
            return Err(Error::ParityViolation("expected an even polynomial"));
        }
        Ok(Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// `Q(x) ↦ Q(x²)`.
    pub fn square_variable_to_even(&self) -> Self {
        let mut coeffs = Vec::with_capacity(2 * self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone());
            coeffs.push(C::zero());
        }
        Self::new(coeffs)
    }

    /// `P(x + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        // Horner with the linear polynomial x + a.
        let lin = Polynomial::<C>::new(vec![C::from_rational(a.clone()), C::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// Division by a polynomial with rational coefficients: `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial<Rational>) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead_inv = Rational::one() / d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i].scale(&lead_inv);
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = q.scale(dc);
                rem[i - dd + j] = rem[i - dd + j].clone() - t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn to_exact(&self) -> Polynomial<ExactScalar> {
        Polynomial::new(self.coeffs.iter().map(|c| c.to_exact()).collect())
    }
}

impl Polynomial<Rational> {
    /// `Π (x − r)` over the given roots.
    pub fn from_roots<'a, I: IntoIterator<Item = &'a Rational>>(roots: I) -> Self {
        let mut acc = Self::constant(Rational::one());
        for r in roots {
            acc = &acc * &Self::new(vec![-r.clone(), Rational::one()]);
        }
        acc
    }
}

impl<'a, C: Coeff> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, C: Coeff> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, C: Coeff> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Newton interpolation through the first `degree_bound + 1` samples, then
/// exact agreement at every remaining sample.
pub fn interpolate_verified<C: Coeff>(
    samples: &[(Rational, C)],
    degree_bound: usize,
    extra_checks: usize,
) -> Result<Polynomial<C>> {
    let needed = degree_bound + 1 + extra_checks;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len() });
    }
    for i in 0..samples.len() {
        for j in 0..i {
            if samples[i].0 == samples[j].0 {
                return Err(Error::DuplicateNode);
            }
        }
    }
    let m = degree_bound + 1;
    let xs: Vec<&Rational> = samples[..m].iter().map(|s| &s.0).collect();
    // divided differences, in place
    let mut dd: Vec<C> = samples[..m].iter().map(|s| s.1.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            let denom = Rational::one() / (xs[i] - xs[i - level]);
            dd[i] = (dd[i].clone() - dd[i - 1].clone()).scale(&denom);
        }
    }
    let mut poly = Polynomial::constant(dd[m - 1].clone());
    for i in (0..m - 1).rev() {
        let lin = Polynomial::<C>::new(vec![C::from_rational(-xs[i].clone()), C::one()]);
        poly = &(&poly * &lin) + &Polynomial::constant(dd[i].clone());
    }
    for (idx, (x, y)) in samples.iter().enumerate().skip(m) {
        if &poly.eval(x) != y {
            return Err(Error::DegreeBoundViolated { index: idx });
        }
    }
    Ok(poly)
}

/// `num / den` with rational-coefficient denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<C = ExactScalar> {
    pub num: Polynomial<C>,
    pub den: Polynomial<Rational>,
}

impl<C: Coeff> RationalFunction<C> {
    pub fn eval(&self, x: &Rational) -> Option<C> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).scale(&(Rational::one() / d)))
    }
}

/// `numerator / (j² − ℓ²)^order`; for `ℓ = 0` this reads `numerator / j^{2·order}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleTerm<C = ExactScalar> {
    pub ell: u64,
    pub order: u32,
    pub numerator: C,
}

/// Polynomial part plus simple and double poles at `j = ±ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleRational<C = ExactScalar> {
    pub poly_part: Polynomial<C>,
    pub pole_terms: Vec<PoleTerm<C>>,
}

impl<C: Coeff> PoleRational<C> {
    pub fn polynomial(p: Polynomial<C>) -> Self {
        PoleRational { poly_part: p, pole_terms: Vec::new() }
    }

    /// Pole locations `ℓ ≥ 1`, sorted and deduplicated.
    pub fn positive_poles(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.pole_terms.iter().map(|t| t.ell).filter(|&l| l > 0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_pole(&self, j: &Rational) -> bool {
        let j2 = j * j;
        self.pole_terms.iter().any(|t| {
            let l = Rational::from_integer(BigInt::from(t.ell));
            j2 == &l * &l
        })
    }

    /// Exact value at a non-pole point.
    pub fn eval(&self, j: &Rational) -> Option<C> {
        let mut acc = self.poly_part.eval(j);
        let j2 = j * j;
        for t in &self.pole_terms {
            let l = Rational::from_integer(BigInt::from(t.ell));
            let base = &j2 - &l * &l;
            if base.is_zero() {
                return None;
            }
            let mut d = base.clone();
            for _ in 1..t.order {
                d *= &base;
            }
            acc = acc + t.numerator.scale(&(Rational::one() / d));
        }
        Some(acc)
    }

    pub fn eval_f64(&self, j: f64) -> f64 {
        let mut acc = self.poly_part.eval_f64(j);
        for t in &self.pole_terms {
            let l = t.ell as f64;
            let base = (j - l) * (j + l);
            let mut d = base;
            for _ in 1..t.order {
                d *= base;
            }
            acc += t.numerator.to_f64() / d;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        PoleRational {
            poly_part: self.poly_part.scale(r),
            pole_terms: self
                .pole_terms
                .iter()
                .map(|t| PoleTerm { ell: t.ell, order: t.order, numerator: t.numerator.scale(r) })
                .collect(),
        }
    }

    /// Sum, merging pole terms with equal `(ℓ, order)`.
    pub fn add(&self, other: &Self) -> Self {
        let mut map: BTreeMap<(u64, u32), C> = BTreeMap::new();
        for t in self.pole_terms.iter().chain(other.pole_terms.iter()) {
            let slot = map.entry((t.ell, t.order)).or_insert_with(C::zero);
            *slot = slot.clone() + t.numerator.clone();
        }
        PoleRational {
            poly_part: &self.poly_part + &other.poly_part,
            pole_terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((ell, order), numerator)| PoleTerm { ell, order, numerator })
                .collect(),
        }
    }
}

/// Decomposes `numerator(j) / Π (j² − ℓ²)^{order}` with an even numerator.
///
/// Repeated entries in `poles` add their orders; a combined order above 2
/// is rejected.
pub fn partial_fractions<C: Coeff>(
    numerator: &Polynomial<C>,
    poles: &[(u64, u32)],
) -> Result<PoleRational<C>> {
    let mut merged: BTreeMap<u64, u32> = BTreeMap::new();
    for &(ell, order) in poles {
        if order == 0 {
            continue;
        }
        *merged.entry(ell).or_insert(0) += order;
    }
    for (&ell, &order) in &merged {
        if order > 2 {
            return Err(Error::UnsupportedPole { ell, order });
        }
    }
    // Work in u = j².
    let num_u = numerator.even_to_square_variable()?;
    let roots: Vec<Rational> = merged
        .iter()
        .flat_map(|(&ell, &order)| {
            let a = Rational::from_integer(BigInt::from(ell) * BigInt::from(ell));
            core::iter::repeat_n(a, order as usize)
        })
        .collect();
    let den_u = Polynomial::<Rational>::from_roots(roots.iter());
    let (quot, rem) = num_u.div_rem(&den_u)?;

    let mut pole_terms = Vec::new();
    for (&ell, &order) in &merged {
        let a = Rational::from_integer(BigInt::from(ell) * BigInt::from(ell));
        // Other factors O(u) = den_u / (u − a)^order.
        let others: Vec<Rational> = merged
            .iter()
            .filter(|(&l, _)| l != ell)
            .flat_map(|(&l, &o)| {
                let b = Rational::from_integer(BigInt::from(l) * BigInt::from(l));
                core::iter::repeat_n(b, o as usize)
            })
            .collect();
        let o_poly = Polynomial::<Rational>::from_roots(others.iter());
        let o_a = o_poly.eval(&a);
        let r_a = rem.eval(&a);
        let top = r_a.scale(&(Rational::one() / o_a.clone()));
        if order == 1 {
            pole_terms.push(PoleTerm { ell, order: 1, numerator: top });
        } else {
            // d/du [R/O] at a = (R'(a) O(a) − R(a) O'(a)) / O(a)²
            let rp_a = rem.derivative().eval(&a);
            let op_a = o_poly.derivative().eval(&a);
            let lower = (rp_a.scale(&o_a) - r_a.scale(&op_a)).scale(&(Rational::one() / (&o_a * &o_a)));
            pole_terms.push(PoleTerm { ell, order: 2, numerator: top });
            pole_terms.push(PoleTerm { ell, order: 1, numerator: lower });
        }
    }
    pole_terms.retain(|t| !t.numerator.is_zero());
    Ok(PoleRational { poly_part: quot.square_variable_to_even(), pole_terms })
}
