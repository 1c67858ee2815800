//! Acceptance criteria with their tolerances and time budgets.
//!
//! Each check returns a short detail line on success and a reason on failure.
//! A check that passes but overruns its budget is reported as a failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphdet_core::hessians::{
    closed_form_trace_k2, hess_detl_sign, hess_f_conformal, hess_f_h2_closed, phi_norm_squared, trace_term,
    tr_inv_laplacian_s3, TraceRoute,
};
use sphdet_core::kernels::{
    abel_summation_oracle, alpha_seq_detl, alpha_seq_s3_f, eventual_polynomial, green_s3_delta, pk_coeffs,
};
use sphdet_core::poly::{partial_fractions, Parity};
use sphdet_core::regsum::{
    regsum_numeric_oracle, regsum_rational, regsum_simple_pole, spectral_zeta_at_one_numeric, z1_via_regsum,
    RegSumProblem,
};
use sphdet_core::scalar::{int, rat};
use sphdet_core::special::harmonic_number;
use sphdet_core::sphere::GegenbauerTable;
use sphdet_core::{ExactScalar, Polynomial, Rational, Sign, SphereSpec};

use crate::format::mismatches;
use crate::table::conjecture_table_parallel;

type Check = fn(usize) -> Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Duration,
    check: Check,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub budget: Duration,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.3}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn odd_dims(from: u32, to: u32) -> impl Iterator<Item = u32> {
    (from..=to).step_by(2)
}

fn spec(n: u32) -> Result<SphereSpec, String> {
    SphereSpec::new(n).map_err(|e| e.to_string())
}

fn ex(r: Rational) -> ExactScalar {
    ExactScalar::from_rational(r)
}

fn trace_routes(_: usize) -> Result<String, String> {
    let (kernel, _) = tr_inv_laplacian_s3(TraceRoute::Kernel).map_err(|e| e.to_string())?;
    let kernel = kernel.ok_or("kernel route gave no exact value")?;
    ensure(kernel == ex(rat(-3, 4)), || format!("kernel route gave {kernel}"))?;
    let (_, spectral) = tr_inv_laplacian_s3(TraceRoute::Spectral).map_err(|e| e.to_string())?;
    let dev = (spectral + 0.75).abs();
    ensure(dev < 1e-8, || format!("spectral route off by {dev:e}"))?;
    Ok(format!("kernel {kernel}, spectral deviation {dev:.1e}"))
}

fn z1_values(_: usize) -> Result<String, String> {
    for n in odd_dims(3, 17) {
        let sp = spec(n)?;
        let h = harmonic_number(n as u64 - 1).map_err(|e| e.to_string())?;
        let expected = -h / int(n as i64 - 1);
        ensure(sp.z1() == expected, || format!("n={n}: z1 = {}", sp.z1()))?;
        let via = z1_via_regsum(&sp).map_err(|e| e.to_string())?;
        ensure(via == ex(expected.clone()), || format!("n={n}: regularized route gave {via}"))?;
    }
    let mut worst = 0.0f64;
    for n in [3, 5, 7] {
        let sp = spec(n)?;
        let v = spectral_zeta_at_one_numeric(&sp).map_err(|e| e.to_string())?;
        let exact = ex(sp.z1()).to_f64();
        worst = worst.max((v - exact).abs());
    }
    ensure(worst < 1e-8, || format!("numeric spectral oracle off by {worst:e}"))?;
    Ok(format!("exact for odd n <= 17, numeric deviation {worst:.1e}"))
}

fn criticality(_: usize) -> Result<String, String> {
    let g = green_s3_delta();
    let a = g.taylor_regular_part(4).map_err(|e| e.to_string())?;
    ensure(a[0] == ex(rat(-3, 4)), || format!("G_reg(0) = {}", a[0]))?;
    let c = g.regular_hessian_constant().map_err(|e| e.to_string())?;
    ensure(c == rat(1, 3), || format!("2 a_2 = {c}"))?;
    Ok(format!("G_reg(0) = {}, 2 a_2 = {c} = 1/n", a[0]))
}

fn s3_alpha(_: usize) -> Result<String, String> {
    let seq = alpha_seq_s3_f();
    ensure(seq.term(0) == ex(rat(5, 8)), || format!("alpha_0 = {}", seq.term(0)))?;
    ensure(seq.term(1) == ExactScalar::from_int(5), || format!("alpha_1 = {}", seq.term(1)))?;
    let a2 = ExactScalar::from_terms([(1, rat(3, 2)), (0, int(7) + rat(3, 16))]);
    ensure(seq.term(2) == a2, || format!("alpha_2 = {}", seq.term(2)))?;
    let terms = seq.terms(1000);
    let mut worst_scaled = 0.0f64;
    for (k, a) in terms.iter().enumerate() {
        ensure(a.sign() == Sign::Positive, || format!("alpha_{k} = {a}"))?;
        if k >= 10 {
            let dev = (a - &seq.asymptotic_value(k as u64)).to_f64().abs() * k as f64;
            worst_scaled = worst_scaled.max(dev);
        }
    }
    ensure(worst_scaled <= 10.0, || format!("k |alpha_k - asymptotic| reaches {worst_scaled}"))?;
    let samples: Vec<f64> = (1..=12).map(|i| i as f64 * std::f64::consts::PI / 12.5).collect();
    let abel = abel_summation_oracle(&seq, &samples, 0.9).map_err(|e| e.to_string())?;
    ensure(abel < 1e-6, || format!("Abel deviation {abel:e}"))?;
    Ok(format!("max k|remainder| = {worst_scaled:.4}, Abel deviation {abel:.1e}"))
}

fn detl(_: usize) -> Result<String, String> {
    let zero = Rational::zero();
    for n in odd_dims(3, 17) {
        let p = pk_coeffs(n, 200).map_err(|e| e.to_string())?;
        ensure(p.iter().all(|x| *x > zero), || format!("n={n}: some p(k) <= 0"))?;
        let q = eventual_polynomial(n).map_err(|e| e.to_string())?;
        ensure(q.parity() == Parity::Odd, || format!("n={n}: eventual polynomial not odd"))?;
        ensure(q.coeffs().iter().skip(1).step_by(2).all(|c| *c > zero), || {
            format!("n={n}: eventual polynomial has a nonpositive odd coefficient")
        })?;
        let seq = alpha_seq_detl(n).map_err(|e| e.to_string())?;
        ensure(seq.terms(200).iter().all(|t| t.sign() == Sign::Positive), || format!("n={n}: c(k)+e(k) <= 0"))?;
        let expected = if n % 4 == 3 { Sign::Negative } else { Sign::Positive };
        let got = hess_detl_sign(n).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("n={n}: sign {got}"))?;
    }
    let d3 = alpha_seq_detl(3).map_err(|e| e.to_string())?;
    let abel = abel_summation_oracle(&d3, &[0.5, 1.5, 2.5], 0.9).map_err(|e| e.to_string())?;
    ensure(abel < 1e-6, || format!("n=3 Abel deviation {abel:e}"))?;
    Ok(format!("odd n <= 17 positive to k = 200, n=3 Abel deviation {abel:.1e}"))
}

fn k2_trace(_: usize) -> Result<String, String> {
    for n in odd_dims(5, 17) {
        let t = trace_term(n, 2).map_err(|e| e.to_string())?;
        let c = closed_form_trace_k2(n).map_err(|e| e.to_string())?;
        ensure(t == ex(c.clone()), || format!("n={n}: pipeline {t}, closed form {c}"))?;
        if n == 5 {
            ensure(t.is_zero(), || format!("n=5 gave {t}"))?;
        }
        if n == 7 {
            ensure(t == ex(rat(7, 128)), || format!("n=7 gave {t}"))?;
        }
    }
    Ok("exact for odd 5 <= n <= 17".into())
}

fn h2_hessian(_: usize) -> Result<String, String> {
    for n in odd_dims(5, 17) {
        let sp = spec(n)?;
        let closed = hess_f_h2_closed(n).map_err(|e| e.to_string())?;
        ensure(closed.is_positive(), || format!("n={n}: closed form {closed} not positive"))?;
        let cell = hess_f_conformal(n, 2).map_err(|e| e.to_string())?;
        let expected = closed * phi_norm_squared(&sp, 2);
        ensure(cell.value == ex(expected.clone()), || format!("n={n}: {} vs {expected}", cell.value))?;
    }
    ensure(hess_f_conformal(5, 2).map_err(|e| e.to_string())?.value == ex(rat(35, 24)), || "n=5".into())?;
    ensure(hess_f_conformal(7, 2).map_err(|e| e.to_string())?.value == ex(rat(175, 64)), || "n=7".into())?;
    Ok("exact for odd 5 <= n <= 17; 35/24 and 175/64 reproduced".into())
}

fn zero_directions(_: usize) -> Result<String, String> {
    for n in odd_dims(3, 17) {
        for k in [0, 1] {
            let v = hess_f_conformal(n, k).map_err(|e| e.to_string())?.value;
            ensure(v.is_zero(), || format!("n={n} k={k}: {v}"))?;
        }
    }
    Ok("exactly zero for k in {0, 1}, odd n <= 17".into())
}

fn conjecture_grid(threads: usize) -> Result<String, String> {
    let cells = conjecture_table_parallel(17, 20, threads).map_err(|e| e.to_string())?;
    ensure(cells.len() == 8 * 19, || format!("{} cells", cells.len()))?;
    for c in &cells {
        ensure(Sign::of_f64(c.value.to_f64()) == c.sign || c.value.to_f64() == 0.0, || {
            format!("n={} k={}: stored sign disagrees with value", c.n, c.k)
        })?;
    }
    let bad = mismatches(&cells);
    ensure(bad.is_empty(), || {
        let list: Vec<String> = bad.iter().map(|c| format!("(n={}, k={}) {}", c.n, c.k, c.sign)).collect();
        format!("{} mismatches: {}", bad.len(), list.join(", "))
    })?;
    Ok(format!("{} cells, 0 mismatches", cells.len()))
}

fn orthogonal_polys(_: usize) -> Result<String, String> {
    for n in odd_dims(3, 17) {
        let sp = spec(n)?;
        let t = GegenbauerTable::new(sp, 20);
        for k in 0..=20 {
            ensure(t.inner(k, k) == sp.dim_harmonics(k), || format!("n={n} k={k}: norm"))?;
        }
        let w = t.weighted(2);
        let mut checked = 0;
        for j in 0..=12i64 {
            for m in [-2i64, 0, 2] {
                if let Ok(v) = sp.triple_product_closed_k2(j, m) {
                    let direct = sp.triple_product_direct(j as u64, (j + m) as u64, 2);
                    ensure(v == direct, || format!("n={n} j={j} m={m}: closed {v}, direct {direct}"))?;
                    ensure(v == w.triple(j as u64, (j + m) as u64), || format!("n={n} j={j} m={m}: table"))?;
                    checked += 1;
                }
            }
        }
        ensure(checked >= 30, || format!("n={n}: only {checked} closed forms checked"))?;
    }
    Ok("norms for k <= 20 and closed forms for j <= 12, odd n <= 17".into())
}

fn random_even_poly(rng: &mut ChaCha8Rng) -> Polynomial<Rational> {
    let len = rng.gen_range(1..=3);
    let cs: Vec<Rational> = (0..len).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
    Polynomial::from_rationals(cs).square_variable_to_even()
}

fn regsum_properties(_: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = random_even_poly(&mut rng);
        let ell = rng.gen_range(1..=6u64);
        let exact = regsum_simple_pole(&g, ell).map_err(|e| e.to_string())?.to_f64();
        let summand = partial_fractions(&g.to_exact(), &[(ell, 1)]).map_err(|e| e.to_string())?;
        let problem = RegSumProblem::new(summand, 1, BTreeSet::from([ell])).map_err(|e| e.to_string())?;
        let oracle = regsum_numeric_oracle(&problem, 1e-9).map_err(|e| e.to_string())?;
        worst = worst.max((exact - oracle).abs());
    }
    ensure(worst < 1e-6, || format!("simple-pole closed form vs oracle deviation {worst:e}"))?;
    for _ in 0..20 {
        let poles: Vec<(u64, u32)> = {
            let mut ps = BTreeSet::new();
            for _ in 0..rng.gen_range(1..=2) {
                ps.insert(rng.gen_range(0..=4u64));
            }
            ps.into_iter().map(|l| (l, rng.gen_range(1..=2u32))).collect()
        };
        let start = poles.iter().map(|p| p.0).max().unwrap_or(0) + rng.gen_range(1..=3);
        let build = |num: &Polynomial<Rational>| -> Result<RegSumProblem, String> {
            let pr = partial_fractions(&num.to_exact(), &poles).map_err(|e| e.to_string())?;
            RegSumProblem::new(pr, start, BTreeSet::new()).map_err(|e| e.to_string())
        };
        let p1 = build(&random_even_poly(&mut rng))?;
        let p2 = build(&random_even_poly(&mut rng))?;
        let (a, b) = (rat(rng.gen_range(-9..=9), 7), rat(rng.gen_range(1..=9), 4));
        let combo = p1.summand().scale(&a).add(&p2.summand().scale(&b));
        let pc = RegSumProblem::new(combo, start, BTreeSet::new()).map_err(|e| e.to_string())?;
        let lhs = regsum_rational(&pc).map_err(|e| e.to_string())?;
        let rhs = regsum_rational(&p1).map_err(|e| e.to_string())?.scale(&a)
            + regsum_rational(&p2).map_err(|e| e.to_string())?.scale(&b);
        ensure(lhs == rhs, || "linearity violated".into())?;
        let shifted = RegSumProblem::new(p1.summand().clone(), start + 1, BTreeSet::new()).map_err(|e| e.to_string())?;
        let head = p1.summand().eval(&int(start as i64)).ok_or("pole at start index")?;
        ensure(
            regsum_rational(&shifted).map_err(|e| e.to_string())? + head == regsum_rational(&p1).map_err(|e| e.to_string())?,
            || "index shift violated".into(),
        )?;
    }
    Ok(format!("20 simple-pole instances within {worst:.1e}; linearity and shift exact on 20 problems"))
}

pub fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "TR inverse Laplacian on S^3 by kernel and spectral routes", budget: s(1), check: trace_routes },
        Criterion { id: 2, name: "Z(1) exact and numeric", budget: s(10), check: z1_values },
        Criterion { id: 3, name: "S^3 criticality from regular-part Taylor data", budget: s(1), check: criticality },
        Criterion { id: 4, name: "S^3 Fourier weights alpha_k", budget: s(30), check: s3_alpha },
        Criterion { id: 5, name: "det L weights and Hessian sign", budget: s(30), check: detl },
        Criterion { id: 6, name: "k = 2 trace term closed form", budget: s(60), check: k2_trace },
        Criterion { id: 7, name: "H_2 Hessian closed form", budget: s(60), check: h2_hessian },
        Criterion { id: 8, name: "zero directions k = 0, 1", budget: s(60), check: zero_directions },
        Criterion { id: 9, name: "Hessian sign grid n <= 17, k <= 20", budget: s(300), check: conjecture_grid },
        Criterion { id: 10, name: "orthogonal polynomial layer", budget: s(60), check: orthogonal_polys },
        Criterion { id: 11, name: "regularization engine properties", budget: s(30), check: regsum_properties },
    ]
}

pub fn run_one(c: &Criterion, threads: usize) -> Outcome {
    let t0 = Instant::now();
    let result = std::panic::catch_unwind(|| (c.check)(threads))
        .unwrap_or_else(|_| Err("panicked".to_string()));
    let elapsed = t0.elapsed();
    let (passed, detail) = match result {
        Ok(d) if elapsed <= c.budget => (true, d),
        Ok(d) => (false, format!("over budget; {d}")),
        Err(e) => (false, e),
    };
    Outcome { id: c.id, name: c.name, passed, elapsed, budget: c.budget, detail }
}

/// Runs every criterion in order, calling `report` as each finishes.
pub fn run_all(threads: usize, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    criteria()
        .iter()
        .map(|c| {
            let o = run_one(c, threads);
            report(&o);
            o
        })
        .collect()
}
