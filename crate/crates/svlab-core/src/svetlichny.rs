//! Measurement-agnostic Svetlichny combinatorics.
//!
//! Conventions: party j's setting is bit j-1 of the table index (first party
//! in the lowest bit), and the functional is normalized so that every
//! deterministic local assignment reaches at most 1. Genuine n-partite
//! nonlocality is witnessed by values above 1; quantum states reach at most
//! `quantum_bound(n)`.

use crate::error::{Error, Result};
use crate::math::{binomial, ceil_div};

/// Slack on the |correlator| <= 1 validation.
const CORRELATOR_SLACK: f64 = 1e-9;

/// Correlators of a permutation-invariant n-party scenario: `e[m]` is the
/// expectation with m parties on setting 1 and n-m on setting 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricCorrelations {
    n: usize,
    e: Vec<f64>,
}

impl SymmetricCorrelations {
    pub fn new(n: usize, e: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(
                "n",
                format!("need at least 2 parties, got {n}"),
            ));
        }
        if e.len() != n + 1 {
            return Err(Error::Dimension(format!(
                "expected {} symmetric correlators for n={n}, got {}",
                n + 1,
                e.len()
            )));
        }
        for (m, &v) in e.iter().enumerate() {
            if !(v.abs() <= 1.0 + CORRELATOR_SLACK) {
                return Err(Error::domain(
                    "E",
                    format!("correlator E[{m}] = {v} outside [-1, 1]"),
                ));
            }
        }
        Ok(Self { n, e })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.e
    }
}

/// Full 2^n correlator table indexed by the setting bit-string.
#[derive(Debug, Clone, PartialEq)]
pub struct FullCorrelationTable {
    n: usize,
    values: Vec<f64>,
}

impl FullCorrelationTable {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(
                "n",
                format!("need at least 2 parties, got {n}"),
            ));
        }
        if values.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "expected {} correlators for n={n}, got {}",
                1usize << n,
                values.len()
            )));
        }
        for (x, &v) in values.iter().enumerate() {
            if !(v.abs() <= 1.0 + CORRELATOR_SLACK) {
                return Err(Error::domain(
                    "values",
                    format!("correlator at setting {x:#b} is {v}, outside [-1, 1]"),
                ));
            }
        }
        Ok(Self { n, values })
    }

    /// Expands permutation-invariant correlators to the full table:
    /// the entry at bit-string x is `E[popcount(x)]`.
    pub fn from_symmetric(corr: &SymmetricCorrelations) -> Self {
        let n = corr.n();
        let values = (0..1usize << n)
            .map(|x| corr.values()[x.count_ones() as usize])
            .collect();
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Signed coefficient of `E[m]` in the symmetric n-party Svetlichny form:
/// `(-1)^ceil((n - 2(m+1)) / 4) * C(n, m)`.
///
/// The ceiling is taken in exact integer arithmetic; only the parity of the
/// exponent matters, so a negative exponent is fine.
pub fn coefficient(n: usize, m: usize) -> Result<i64> {
    if m > n {
        return Err(Error::domain(
            "m",
            format!("setting count m={m} outside [0, {n}]"),
        ));
    }
    let magnitude = binomial(n as u32, m as u32)?;
    let exponent = ceil_div(n as i64 - 2 * (m as i64 + 1), 4);
    Ok(if exponent.rem_euclid(2) == 0 {
        magnitude
    } else {
        -magnitude
    })
}

/// Symmetric-form Svetlichny value `2^(-ceil(n/2)) * sum_m coefficient(n,m) * E[m]`.
pub fn svetlichny_symmetric(corr: &SymmetricCorrelations) -> f64 {
    let n = corr.n();
    let scale = (2.0f64).powi(-(ceil_div(n as i64, 2) as i32));
    let mut acc = 0.0;
    for (m, &e) in corr.values().iter().enumerate() {
        acc += coefficient(n, m).expect("m <= n by construction") as f64 * e;
    }
    scale * acc
}

/// Coefficient vectors of the Mermin-Klyshko pair (M_n, Mbar_n) over the
/// 2^n setting bit-strings; Mbar is M with every setting label swapped.
fn mk_pair(n: usize) -> (Vec<f64>, Vec<f64>) {
    mk_pair_split(n, 1)
}

/// Same pair built with the hybrid split n = (n-k) + k at the top level.
///
/// The value is split-independent; production code uses k = 1 and the tests
/// check agreement for every admissible k.
fn mk_pair_split(n: usize, k: usize) -> (Vec<f64>, Vec<f64>) {
    debug_assert!(n >= 1 && (n == 1 || (1..n).contains(&k)));
    if n == 1 {
        return (vec![1.0, 0.0], vec![0.0, 1.0]);
    }
    let (lo, lo_bar) = mk_pair(n - k);
    let (hi, hi_bar) = mk_pair(k);
    let mut m = vec![0.0; 1 << n];
    for (xh, (&h, &hb)) in hi.iter().zip(&hi_bar).enumerate() {
        for (xl, (&l, &lb)) in lo.iter().zip(&lo_bar).enumerate() {
            m[xl | (xh << (n - k))] = 0.5 * (l * (h + hb) + lb * (h - hb));
        }
    }
    let mask = (1 << n) - 1;
    let m_bar = (0..m.len()).map(|x| m[x ^ mask]).collect();
    (m, m_bar)
}

fn dot(coeffs: &[f64], values: &[f64]) -> f64 {
    coeffs.iter().zip(values).map(|(c, v)| c * v).sum()
}

/// Svetlichny value of a full correlator table via the Mermin-Klyshko
/// recursion: `M_n` for even n, `(M_n + Mbar_n) / 2` for odd n.
pub fn svetlichny_general(table: &FullCorrelationTable) -> f64 {
    let (m, m_bar) = mk_pair(table.n());
    let v = table.values();
    if table.n().is_multiple_of(2) {
        dot(&m, v)
    } else {
        0.5 * (dot(&m, v) + dot(&m_bar, v))
    }
}

/// Largest Svetlichny value any n-party quantum state can reach:
/// `2^((n - 1 - (n mod 2)) / 2)`.
pub fn quantum_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(
            "n",
            format!("need at least 2 parties, got {n}"),
        ));
    }
    Ok((2.0f64).powf((n as f64 - 1.0 - (n % 2) as f64) / 2.0))
}
