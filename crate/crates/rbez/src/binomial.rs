//! Cached binomial coefficient rows.
//!
//! Bernstein products and degree elevation consume ratios of binomial
//! coefficients at degrees that double with every derivative order, so rows
//! are computed once per degree with the multiplicative recurrence
//! `C(n, k+1) = C(n, k) * (n - k) / (k + 1)` and cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

/// Row `n` of Pascal's triangle as exact integers. Rows are cached process
/// wide and shared via `Arc`.
pub fn pascal_row(n: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(row) = cache.lock().unwrap().get(&n) {
        return Arc::clone(row);
    }
    let mut row: Vec<BigInt> = Vec::with_capacity(n + 1);
    row.push(BigInt::one());
    for k in 0..n {
        // Exact: C(n, k) * (n - k) is always divisible by k + 1.
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    let row = Arc::new(row);
    cache.lock().unwrap().insert(n, Arc::clone(&row));
    row
}

/// Row `n` as doubles; finite for `n <= ~1029`, callers guard the range.
pub(crate) fn float_row(n: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(1.0f64);
    for k in 0..n {
        row.push(row[k] * (n - k) as f64 / (k + 1) as f64);
    }
    row
}

/// Row of `ln C(n, k)`, usable at any degree.
pub(crate) fn ln_binom_row(n: usize) -> Vec<f64> {
    let mut ln_fact = Vec::with_capacity(n + 1);
    ln_fact.push(0.0f64);
    for i in 1..=n {
        ln_fact.push(ln_fact[i - 1] + (i as f64).ln());
    }
    (0..=n)
        .map(|k| ln_fact[n] - ln_fact[k] - ln_fact[n - k])
        .collect()
}
