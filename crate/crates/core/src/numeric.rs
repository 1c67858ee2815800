//! Floating-point helpers for the independent numeric oracles.

use num_complex::Complex64;

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::One;
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Compensated (Neumaier) running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

// B_{2k}/(2k)! for k = 1..=8
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
];

/// `Σ_{i ≥ a} i^{−w}` for integer `w ≥ 2`, `a ≥ 1`, by Euler–Maclaurin.
pub(crate) fn hurwitz_tail(w: u32, a: u64) -> f64 {
    debug_assert!(w >= 2 && a >= 1);
    let cut = a + 24;
    let wf = w as f64;
    let mut acc = Accumulator::default();
    for i in a..cut {
        acc.add(libm::pow(i as f64, -wf));
    }
    let n = cut as f64;
    let nw = libm::pow(n, -wf);
    acc.add(n * nw / (wf - 1.0));
    acc.add(nw / 2.0);
    // rising factorial w (w+1) … (w+2k−2) times N^{−w−2k+1}
    let mut rising = wf;
    let mut npow = nw / n;
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let m = 2.0 * k as f64;
            rising *= (wf + m - 1.0) * (wf + m);
            npow /= n * n;
        }
        acc.add(c * rising * npow);
    }
    acc.value()
}

/// Limit of a convergent series `Σ_{i ≥ start, i ∉ skip} f(i)` by Richardson
/// extrapolation of partial sums at `N_0 2^k`, assuming the tail admits an
/// expansion in powers of `1/N`. `tol` is relative to `max(1, |sum|)`.
pub(crate) fn richardson_series<F, S>(f: F, start: u64, skip: S, tol: f64) -> Result<f64>
where
    F: Fn(u64) -> f64,
    S: Fn(u64) -> bool,
{
    const LEVELS: usize = 12;
    let mut n = start.max(1) * 2 + 256;
    let mut acc = Accumulator::default();
    let mut i = start;
    let mut table: [[f64; LEVELS]; LEVELS] = [[0.0; LEVELS]; LEVELS];
    let mut last = f64::NAN;
    for k in 0..LEVELS {
        while i <= n {
            if !skip(i) {
                acc.add(f(i));
            }
            i += 1;
        }
        table[k][0] = acc.value();
        let mut factor = 1.0;
        for j in 1..=k {
            factor *= 2.0;
            table[k][j] = (factor * table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1.0);
        }
        // Use a moderate extrapolation depth; deeper columns amplify rounding.
        let depth = k.min(6);
        let est = table[k][depth];
        if k >= 3 && (est - last).abs() <= tol * 0.1 * est.abs().max(1.0) {
            return Ok(est);
        }
        last = est;
        n *= 2;
    }
    Err(Error::NonConvergence(alloc::format!(
        "series from {start} still moving by more than {tol:e}"
    )))
}

/// `ζ(2 − k)/k!` for `k = 2..` as used in the logarithmic expansion of `Li₂`.
fn dilog_log_coeffs() -> &'static [f64] {
    static TABLE: OnceBox<Vec<f64>> = OnceBox::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(DILOG_LOG_TERMS);
        let mut fact = Rational::one();
        for k in 2..DILOG_LOG_TERMS + 2 {
            fact *= crate::scalar::int(k as i64);
            let m = k - 2;
            // ζ(−m) = −B_{m+1}/(m+1) for m ≥ 1, ζ(0) = −1/2
            let z = if m == 0 {
                crate::scalar::rat(-1, 2)
            } else {
                -crate::special::bernoulli(m + 1).expect("table covers the expansion")
                    / crate::scalar::int(m as i64 + 1)
            };
            out.push(crate::scalar::rational_to_f64(&(z / &fact)));
        }
        Box::new(out)
    })
}

const DILOG_LOG_TERMS: usize = 64;

/// `Li₂(z)` for `|z| ≤ 1`, `z ≠ 1`.
///
/// Small `|z|` uses the defining series; otherwise the expansion in
/// `μ = log z`, convergent for `|μ| < 2π`.
pub(crate) fn dilog(z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r.is_nan() || r > 1.0 || (z - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::NonConvergence(alloc::format!("dilog outside the closed disc at {z}")));
    }
    if r < 0.5 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zk = z;
        let mut k = 1.0f64;
        loop {
            let term = zk / (k * k);
            acc += term;
            if term.norm() < 1e-19 {
                return Ok(acc);
            }
            zk *= z;
            k += 1.0;
        }
    }
    let mu = z.ln();
    let pi = core::f64::consts::PI;
    let mut acc = Complex64::new(pi * pi / 6.0, 0.0) + mu * (Complex64::new(1.0, 0.0) - (-mu).ln());
    let mut mk = mu;
    for c in dilog_log_coeffs() {
        mk *= mu;
        acc += mk * *c;
    }
    Ok(acc)
}

/// Eulerian numbers `A(j, m)`, `0 ≤ m < j` (row `j = 0` is `[1]`).
pub(crate) fn eulerian_row(j: usize) -> alloc::vec::Vec<f64> {
    let mut row = alloc::vec![1.0f64];
    for jj in 1..=j {
        let mut next = alloc::vec![0.0f64; jj];
        for (m, slot) in next.iter_mut().enumerate() {
            let a = if m < row.len() { (m as f64 + 1.0) * row[m] } else { 0.0 };
            let b = if m >= 1 && m - 1 < row.len() { (jj - m) as f64 * row[m - 1] } else { 0.0 };
            *slot = a + b;
        }
        row = next;
    }
    row
}

/// `Li_{−j}(z) = Σ_{k ≥ 1} k^j z^k = z A_j(z) / (1 − z)^{j+1}`.
pub(crate) fn polylog_neg(j: usize, z: Complex64) -> Complex64 {
    let row = eulerian_row(j);
    let mut a = Complex64::new(0.0, 0.0);
    for c in row.iter().rev() {
        a = a * z + c;
    }
    z * a / (Complex64::new(1.0, 0.0) - z).powi(j as i32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hurwitz_matches_zeta() {
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        assert!((hurwitz_tail(2, 1) - pi2 / 6.0).abs() < 1e-15);
        assert!((hurwitz_tail(4, 1) - pi2 * pi2 / 90.0).abs() < 1e-15);
        assert!((hurwitz_tail(2, 2) - (pi2 / 6.0 - 1.0)).abs() < 1e-15);
        let direct: f64 = (5..2000u64).map(|i| (i as f64).powi(-9)).sum();
        assert!((hurwitz_tail(9, 5) - direct).abs() < 1e-18);
    }

    #[test]
    fn richardson_basel() {
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        let v = richardson_series(|i| 1.0 / (i * i) as f64, 1, |_| false, 1e-12).unwrap();
        assert!((v - pi2 / 6.0).abs() < 1e-11);
        // Σ_{i≠2} 1/(i²−4) = 3/16
        let v = richardson_series(|i| 1.0 / ((i * i) as f64 - 4.0), 1, |i| i == 2, 1e-12).unwrap();
        assert!((v - 0.1875).abs() < 1e-11);
    }

    #[test]
    fn dilog_and_polylog() {
        let z = Complex64::new(0.5, 0.0);
        let li2_half = core::f64::consts::PI.powi(2) / 12.0 - core::f64::consts::LN_2.powi(2) / 2.0;
        assert!((dilog(z).unwrap().re - li2_half).abs() < 1e-15);
        assert!(dilog(Complex64::new(1.01, 0.0)).is_err());
        assert!(dilog(Complex64::new(1.0, 0.0)).is_err());
        let pi2 = core::f64::consts::PI.powi(2);
        assert!((dilog(Complex64::new(-1.0, 0.0)).unwrap() + pi2 / 12.0).norm() < 1e-15);
        let catalan = 0.915_965_594_177_219_f64;
        let li2_i = dilog(Complex64::new(0.0, 1.0)).unwrap();
        assert!((li2_i - Complex64::new(-pi2 / 48.0, catalan)).norm() < 1e-15);
        // both branches agree where they overlap
        let z = Complex64::from_polar(0.45, 2.0);
        let mut direct = Complex64::new(0.0, 0.0);
        let mut zk = z;
        for k in 1..200 {
            direct += zk / (k * k) as f64;
            zk *= z;
        }
        let z2 = Complex64::from_polar(0.55, 2.0);
        let mut direct2 = Complex64::new(0.0, 0.0);
        let mut zk = z2;
        for k in 1..400 {
            direct2 += zk / (k * k) as f64;
            zk *= z2;
        }
        assert!((dilog(z).unwrap() - direct).norm() < 1e-15);
        assert!((dilog(z2).unwrap() - direct2).norm() < 1e-15);
        let z = Complex64::from_polar(0.7, 1.1);
        for j in 0..6usize {
            let mut direct = Complex64::new(0.0, 0.0);
            let mut zk = z;
            for k in 1..400 {
                direct += zk * (k as f64).powi(j as i32);
                zk *= z;
            }
            assert!((polylog_neg(j, z) - direct).norm() < 1e-10, "j={j}");
        }
    }
}
