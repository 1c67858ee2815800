//! Parallel evaluation of the Hessian sign grid.

use rayon::prelude::*;
use sphdet_core::hessians::{hess_f_conformal_with_table, table_size_for, HessianCell};
use sphdet_core::sphere::GegenbauerTable;
use sphdet_core::{Error, SphereSpec};

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "SPHDET_THREADS";

/// Worker count: explicit value, else `SPHDET_THREADS`, else rayon's default (0).
pub fn thread_count(explicit: Option<usize>) -> Result<usize, String> {
    if let Some(t) = explicit {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{THREADS_ENV}={v:?} is not a thread count")),
        Err(_) => Ok(0),
    }
}

/// Cells for odd `3 ≤ n ≤ n_max`, `2 ≤ k ≤ k_max`, ordered by `(n, k)`.
pub fn conjecture_table_parallel(n_max: u32, k_max: u64, threads: usize) -> Result<Vec<HessianCell>, Error> {
    if n_max < 3 {
        return Err(Error::InvalidDimension(n_max));
    }
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| {
        let tables: Vec<GegenbauerTable> = (3..=n_max)
            .step_by(2)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| {
                let spec = SphereSpec::new(n).expect("odd n >= 3");
                GegenbauerTable::new(spec, table_size_for(n, k_max))
            })
            .collect();
        let jobs: Vec<(usize, u64)> =
            (0..tables.len()).flat_map(|t| (2..=k_max).map(move |k| (t, k))).collect();
        jobs.into_par_iter().map(|(t, k)| hess_f_conformal_with_table(&tables[t], k)).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let par = conjecture_table_parallel(9, 7, 3).unwrap();
        let seq = sphdet_core::hessians::conjecture_table(9, 7).unwrap();
        assert_eq!(par, seq);
        assert!(conjecture_table_parallel(1, 5, 1).is_err());
        assert!(conjecture_table_parallel(5, 1, 1).is_err());
    }

    #[test]
    fn explicit_threads_win() {
        assert_eq!(thread_count(Some(4)).unwrap(), 4);
    }
}
