//! Small numeric utilities shared across the crate.

use crate::error::{Error, Result};

/// Ceiling of `p / q` for positive `q`, exact for negative `p`.
///
/// `div_euclid` floors toward negative infinity, so `-((-p).div_euclid(q))`
/// is an exact ceiling with no floating-point round trip.
#[inline]
pub fn ceil_div(p: i64, q: i64) -> i64 {
    debug_assert!(q > 0);
    -((-p).div_euclid(q))
}

/// Exact binomial coefficient in `i64`.
///
/// Multiplies in increasing `k` with interleaved exact division, so the
/// intermediate never exceeds `C(n, k) * n`. Overflow is reported, not wrapped.
pub fn binomial(n: u32, k: u32) -> Result<i64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k as i64 {
        let num = n as i64 - i;
        acc = acc
            .checked_mul(num)
            .ok_or_else(|| Error::Precision(format!("binomial({n}, {k}) overflows i64")))?;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Compensated running sum (Kahan-Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Pairwise summation of a slice; error grows like `O(log n)` instead of `O(n)`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        let mut k = KahanSum::new();
        for &x in xs {
            k.add(x);
        }
        return k.total();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Table of `ln(k!)` built by compensated accumulation of `ln k`.
///
/// Accurate to a few ulps over the table range, which keeps Fock amplitudes
/// assembled in log space good to ~1e-14 relative.
#[derive(Debug, Clone)]
pub struct LnFactorial {
    table: Vec<f64>,
}

impl LnFactorial {
    /// Table covering `0! ..= max!`.
    pub fn up_to(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let mut acc = KahanSum::new();
        table.push(0.0);
        for k in 1..=max {
            acc.add((k as f64).ln());
            table.push(acc.total());
        }
        Self { table }
    }

    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.table[k]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Maps `0..n` through `f`, in parallel when the `parallel` feature is on.
///
/// Results are collected in index order either way, so output bytes do not
/// depend on thread count.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
