//! Spectral data of the round odd-dimensional sphere and the orthogonal
//! polynomials of the zonal measure `dν_n ∝ (1 − t²)^{n/2 − 1} dt`.
//!
//! Indices are shifted by `p = (n − 1)/2` where convenient: with `i = k + p`
//! the Laplace eigenvalue is `λ_k = i² − p²`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{int, rat, Rational};
use crate::special::harmonic_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SphereSpec {
    n: u32,
    p: u32,
}

/// Per-mode data on `H_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeData {
    pub k: u64,
    pub d_k: Rational,
    pub lambda_k: Rational,
    pub lambda_l_k: Rational,
}

impl SphereSpec {
    /// `n` must be odd and at least 3.
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidDimension(n));
        }
        Ok(SphereSpec { n, p: (n - 1) / 2 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `d_k = (k+1)⋯(k+n−2)(2k+n−1)/(n−1)!`.
    pub fn dim_harmonics(&self, k: u64) -> Rational {
        let n = self.n as u64;
        let mut num = BigInt::from(2 * k + n - 1);
        for a in 1..=(n - 2) {
            num *= BigInt::from(k + a);
        }
        Rational::new(num, factorial(n - 1))
    }

    /// `λ_k = k(k+n−1)`.
    pub fn laplace_eigenvalue(&self, k: u64) -> Rational {
        Rational::from_integer(BigInt::from(k) * BigInt::from(k + self.n as u64 - 1))
    }

    /// `λ^L_k = λ_k + n(n−2)/4`.
    pub fn conformal_laplace_eigenvalue(&self, k: u64) -> Rational {
        let n = self.n as i64;
        self.laplace_eigenvalue(k) + rat(n * (n - 2), 4)
    }

    pub fn mode(&self, k: u64) -> ModeData {
        ModeData {
            k,
            d_k: self.dim_harmonics(k),
            lambda_k: self.laplace_eigenvalue(k),
            lambda_l_k: self.conformal_laplace_eigenvalue(k),
        }
    }

    /// `Z(1) = −H_{n−1}/(n−1)`.
    pub fn z1(&self) -> Rational {
        let h = harmonic_number(self.n as u64 - 1).expect("n >= 3");
        -h / int(self.n as i64 - 1)
    }

    /// `d_k` as an even polynomial in `i = k + p`: `2/(n−1)! · Π_{b=0}^{p−1} (i² − b²)`.
    pub fn dim_polynomial_shifted(&self) -> Polynomial<Rational> {
        let mut acc = Polynomial::constant(Rational::new(BigInt::from(2), factorial(self.n as u64 - 1)));
        for b in 0..self.p as i64 {
            acc = &acc * &Polynomial::from_rationals([int(-b * b), int(0), int(1)]);
        }
        acc
    }

    /// `λ_k` as a polynomial in `i = k + p`: `i² − p²`.
    pub fn eigenvalue_polynomial_shifted(&self) -> Polynomial<Rational> {
        let p = self.p as i64;
        Polynomial::from_rationals([int(-p * p), int(0), int(1)])
    }

    /// Moment `∫ t^m dν_n`; zero for odd `m`.
    pub fn nu_moment(&self, m: u64) -> Rational {
        if m % 2 == 1 {
            return Rational::zero();
        }
        let mut acc = Rational::one();
        for i in 1..=(m / 2) {
            acc *= Rational::new(BigInt::from(2 * i - 1), BigInt::from(self.n as u64 + 2 * i - 1));
        }
        acc
    }

    /// `P_k` normalized by `∫ P_k² dν_n = d_k`.
    pub fn gegenbauer_p(&self, k: u64) -> Polynomial<Rational> {
        gegenbauer_sequence(self, k).pop().expect("nonempty")
    }

    /// `∫ P_a P_b P_c dν_n`.
    pub fn triple_product_direct(&self, a: u64, b: u64, c: u64) -> Rational {
        GegenbauerTable::new(*self, a.max(b).max(c)).triple(a, b, c)
    }

    /// Closed forms for `C(j, m, 2) = ∫ P_j P_{j+m} P_2 dν_n`, `m ∈ {0, 2, −2}`.
    ///
    /// Valid for `j ≥ 0` (`m = 0, 2`) and `j ≥ 2` (`m = −2`). At `n = 3` the
    /// `m = 0` product only holds from `j = 1`.
    pub fn triple_product_closed_k2(&self, j: i64, m: i64) -> Result<Rational> {
        let n = self.n as i64;
        let p = self.p as i64;
        let prod = |lo: i64, hi: i64| -> BigInt {
            let mut acc = BigInt::one();
            for a in lo..=hi {
                acc *= BigInt::from(j + a);
            }
            acc
        };
        match m {
            0 => {
                if j < 0 || (n == 3 && j == 0) {
                    return Err(Error::OutOfValidityRange { what: "C(j,0,2)", index: j });
                }
                let jp = BigInt::from(j + p);
                let num = prod(0, p - 2) * &jp * &jp * prod(p + 2, n - 1);
                Ok(Rational::new(BigInt::from(n + 3) * num, BigInt::from(2) * factorial(n as u64 - 2)))
            }
            2 => {
                if j < 0 {
                    return Err(Error::OutOfValidityRange { what: "C(j,2,2)", index: j });
                }
                let num = prod(1, p) * prod(p + 2, n);
                Ok(Rational::new(
                    BigInt::from((n + 1) * (n + 3)) * num,
                    BigInt::from(4) * factorial(n as u64 - 1),
                ))
            }
            -2 => {
                if j < 2 {
                    return Err(Error::OutOfValidityRange { what: "C(j,-2,2)", index: j });
                }
                let num = prod(-1, p - 2) * prod(p, n - 2);
                Ok(Rational::new(
                    BigInt::from((n + 1) * (n + 3)) * num,
                    BigInt::from(4) * factorial(n as u64 - 1),
                ))
            }
            _ => Err(Error::InvalidArgument(alloc::format!("closed form only for m in {{0, 2, -2}}, got {m}"))),
        }
    }
}

pub(crate) fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

fn gegenbauer_sequence(spec: &SphereSpec, kmax: u64) -> Vec<Polynomial<Rational>> {
    let n = spec.n as i64;
    let mut out: Vec<Polynomial<Rational>> = Vec::with_capacity(kmax as usize + 1);
    out.push(Polynomial::constant(Rational::one()));
    let t = Polynomial::<Rational>::x();
    for k in 0..kmax as i64 {
        // P_{k+1} = (t P_k − (k+n−2)/(2k+n−3) P_{k−1}) (2k+n+1)/(k+1)
        let mut next = &t * &out[k as usize];
        if k > 0 {
            let c = rat(k + n - 2, 2 * k + n - 3);
            next = &next - &out[k as usize - 1].scale(&c);
        }
        out.push(next.scale(&rat(2 * k + n + 1, k + 1)));
    }
    out
}

/// Cached `P_0 … P_kmax` with integer coefficients over a common denominator
/// per polynomial, plus all moments needed for triple products.
#[derive(Debug, Clone)]
pub struct GegenbauerTable {
    spec: SphereSpec,
    kmax: u64,
    polys: Vec<Polynomial<Rational>>,
    // P_k = int_polys[k] / int_denoms[k]
    int_polys: Vec<Vec<BigInt>>,
    int_denoms: Vec<BigInt>,
    // ∫ t^{2j} dν = moment_nums[j] / moment_den
    moment_nums: Vec<BigInt>,
    moment_den: BigInt,
}

/// `w[e] = ∫ t^e P_c dν` for a fixed `c`, scaled to integers.
#[derive(Debug, Clone)]
pub struct WeightedMoments<'a> {
    table: &'a GegenbauerTable,
    c: u64,
    w: Vec<BigInt>,
}

impl GegenbauerTable {
    pub fn new(spec: SphereSpec, kmax: u64) -> Self {
        let polys = gegenbauer_sequence(&spec, kmax);
        let mut int_polys = Vec::with_capacity(polys.len());
        let mut int_denoms = Vec::with_capacity(polys.len());
        for p in &polys {
            let mut l = BigInt::one();
            for c in p.coeffs() {
                l = l.lcm(c.denom());
            }
            int_polys.push(p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect());
            int_denoms.push(l);
        }
        // moments up to t^{3 kmax}
        let jmax = (3 * kmax / 2 + 1) as usize;
        let n = spec.n as u64;
        let mut moment_den = BigInt::one();
        for i in 1..=jmax as u64 {
            moment_den *= BigInt::from(n + 2 * i - 1);
        }
        let mut moment_nums = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax as u64 {
            let mut num = BigInt::one();
            for i in 1..=j {
                num *= BigInt::from(2 * i - 1);
            }
            for i in (j + 1)..=jmax as u64 {
                num *= BigInt::from(n + 2 * i - 1);
            }
            moment_nums.push(num);
        }
        GegenbauerTable { spec, kmax, polys, int_polys, int_denoms, moment_nums, moment_den }
    }

    pub fn spec(&self) -> SphereSpec {
        self.spec
    }

    pub fn kmax(&self) -> u64 {
        self.kmax
    }

    pub fn poly(&self, k: u64) -> &Polynomial<Rational> {
        &self.polys[k as usize]
    }

    pub fn weighted(&self, c: u64) -> WeightedMoments<'_> {
        let pc = &self.int_polys[c as usize];
        let len = 2 * self.kmax as usize + 1;
        let mut w = vec![BigInt::zero(); len];
        for (e, slot) in w.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (g, cg) in pc.iter().enumerate() {
                if (e + g) % 2 == 0 && !cg.is_zero() {
                    acc += cg * &self.moment_nums[(e + g) / 2];
                }
            }
            *slot = acc;
        }
        WeightedMoments { table: self, c, w }
    }

    pub fn triple(&self, a: u64, b: u64, c: u64) -> Rational {
        if (a + b + c) % 2 == 1 || a > b + c || b > a + c || c > a + b {
            return Rational::zero();
        }
        self.weighted(c).triple(a, b)
    }

    /// `∫ P_a P_b dν`.
    pub fn inner(&self, a: u64, b: u64) -> Rational {
        self.triple(a, b, 0)
    }
}

impl WeightedMoments<'_> {
    pub fn c(&self) -> u64 {
        self.c
    }

    /// `∫ P_a P_b P_c dν`.
    pub fn triple(&self, a: u64, b: u64) -> Rational {
        let c = self.c;
        if (a + b + c) % 2 == 1 || a > b + c || b > a + c || c > a + b {
            return Rational::zero();
        }
        let t = self.table;
        let pa = &t.int_polys[a as usize];
        let pb = &t.int_polys[b as usize];
        let mut acc = BigInt::zero();
        // Parity: P_a has only powers ≡ a, P_b only ≡ b (mod 2).
        for e in (a as usize % 2..pa.len()).step_by(2) {
            let ca = &pa[e];
            if ca.is_zero() {
                continue;
            }
            let mut inner = BigInt::zero();
            for f in (b as usize % 2..pb.len()).step_by(2) {
                let cb = &pb[f];
                if !cb.is_zero() {
                    inner += cb * &self.w[e + f];
                }
            }
            acc += ca * inner;
        }
        let den = &t.int_denoms[a as usize] * &t.int_denoms[b as usize] * &t.int_denoms[c as usize] * &t.moment_den;
        Rational::new(acc, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u32) -> SphereSpec {
        SphereSpec::new(n).unwrap()
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert_eq!(SphereSpec::new(4), Err(Error::InvalidDimension(4)));
        assert_eq!(SphereSpec::new(1), Err(Error::InvalidDimension(1)));
    }

    #[test]
    fn dimensions_and_eigenvalues() {
        for k in 0..20u64 {
            assert_eq!(s(3).dim_harmonics(k), int(((k + 1) * (k + 1)) as i64));
        }
        assert_eq!(s(5).dim_harmonics(2), int(20));
        assert_eq!(s(9).dim_harmonics(0), int(1));
        assert_eq!(s(3).laplace_eigenvalue(1), int(3));
        assert_eq!(s(5).laplace_eigenvalue(2), int(12));
        assert_eq!(s(3).conformal_laplace_eigenvalue(0), rat(3, 4));
        for n in [3u32, 5, 7, 17] {
            let sp = s(n);
            let d2 = sp.dim_harmonics(2);
            assert_eq!(d2, int((n * (n + 3) / 2) as i64));
            for k in 0..=100u64 {
                let lhs = sp.conformal_laplace_eigenvalue(k);
                let rhs = (int(k as i64) + rat(n as i64 - 2, 2)) * (int(k as i64) + rat(n as i64, 2));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shifted_polynomials() {
        for n in [3u32, 5, 7, 11] {
            let sp = s(n);
            let g = sp.dim_polynomial_shifted();
            let lam = sp.eigenvalue_polynomial_shifted();
            for k in 0..15u64 {
                let i = int((k + sp.p() as u64) as i64);
                assert_eq!(g.eval(&i), sp.dim_harmonics(k));
                assert_eq!(lam.eval(&i), sp.laplace_eigenvalue(k));
            }
            // G(p) = 1 and G'(p) = H_{n−1} + 1/(n−1)
            let p = int(sp.p() as i64);
            assert_eq!(g.eval(&p), int(1));
            let h = harmonic_number(n as u64 - 1).unwrap();
            assert_eq!(g.derivative().eval(&p) / g.eval(&p), h + rat(1, n as i64 - 1));
        }
    }

    #[test]
    fn z1_values() {
        assert_eq!(s(3).z1(), rat(-3, 4));
        assert_eq!(s(5).z1(), rat(-25, 48));
        assert_eq!(s(7).z1(), rat(-49, 120));
    }

    #[test]
    fn moments() {
        assert_eq!(s(7).nu_moment(0), int(1));
        assert_eq!(s(3).nu_moment(2), rat(1, 4));
        assert_eq!(s(3).nu_moment(4), rat(1, 8));
        assert_eq!(s(3).nu_moment(5), int(0));
    }

    #[test]
    fn low_polynomials() {
        for n in [3u32, 5, 9] {
            let sp = s(n);
            let ni = n as i64;
            assert_eq!(sp.gegenbauer_p(0), Polynomial::constant(int(1)));
            assert_eq!(sp.gegenbauer_p(1), Polynomial::from_rationals([int(0), int(ni + 1)]));
            let half = rat(ni + 3, 2);
            let p2 = Polynomial::from_rationals([-half.clone(), int(0), half * int(ni + 1)]);
            assert_eq!(sp.gegenbauer_p(2), p2);
        }
    }

    #[test]
    fn normalization_and_orthogonality() {
        for n in (3..=17u32).step_by(2) {
            let sp = s(n);
            let t = GegenbauerTable::new(sp, 20);
            for a in 0..=20u64 {
                assert_eq!(t.inner(a, a), sp.dim_harmonics(a), "n={n} k={a}");
                for b in 0..a {
                    assert!(t.inner(a, b).is_zero());
                }
            }
        }
    }

    #[test]
    fn triple_products() {
        let sp = s(3);
        assert_eq!(sp.triple_product_direct(0, 2, 2), int(9));
        assert!(sp.triple_product_direct(1, 2, 2).is_zero());
        assert!(sp.triple_product_direct(1, 1, 5).is_zero());
        for n in [5u32, 7] {
            let sp = s(n);
            for k in 0..8 {
                assert_eq!(sp.triple_product_direct(k, k, 0), sp.dim_harmonics(k));
            }
        }
        // Symmetric in all three arguments.
        let t = GegenbauerTable::new(s(7), 9);
        assert_eq!(t.triple(3, 5, 4), t.triple(4, 3, 5));
        assert_eq!(t.triple(9, 5, 4), t.triple(5, 4, 9));
    }

    #[test]
    fn closed_forms_k2() {
        assert_eq!(s(3).triple_product_closed_k2(0, 2).unwrap(), int(9));
        for n in [5u32, 7, 9] {
            assert!(s(n).triple_product_closed_k2(0, 0).unwrap().is_zero());
        }
        assert_eq!(
            s(5).triple_product_closed_k2(3, -2).unwrap(),
            s(5).triple_product_direct(3, 1, 2)
        );
        assert!(s(3).triple_product_closed_k2(0, 0).is_err());
        assert!(s(5).triple_product_closed_k2(1, -2).is_err());
        assert!(s(5).triple_product_closed_k2(-1, 2).is_err());
        for n in (3..=17u32).step_by(2) {
            let sp = s(n);
            let t = GegenbauerTable::new(sp, 14);
            let w = t.weighted(2);
            for j in 0..=12i64 {
                for m in [0i64, 2, -2] {
                    if let Ok(v) = sp.triple_product_closed_k2(j, m) {
                        assert_eq!(v, w.triple(j as u64, (j + m) as u64), "n={n} j={j} m={m}");
                    }
                }
            }
        }
    }
}
