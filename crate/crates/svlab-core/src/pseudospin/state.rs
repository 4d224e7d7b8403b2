//! Truncated representation of the three-mode squeezed states.

use crate::error::{Error, Result};
use crate::math::{KahanSum, LnFactorial};

/// Largest tail probability a truncated state may discard.
pub const TAIL_TOLERANCE: f64 = 1e-8;

/// Cap on the dense amplitude store. Deeper truncations (needed from about
/// r = 1.8 on) keep amplitudes as a formula and carry streamed pair
/// correlators instead; only the operator-application route needs the dense
/// store.
pub(crate) const MAX_DENSE_CUTOFF: usize = 300;

/// Row-major indexing of the simplex k1 + k2 + k3 <= n_max.
#[derive(Debug, Clone)]
pub(crate) struct SimplexIndex {
    n_max: usize,
    /// offsets[k1] = first linear index of the k1 plane.
    offsets: Vec<usize>,
    len: usize,
}

impl SimplexIndex {
    pub(crate) fn new(n_max: usize) -> Self {
        let mut offsets = Vec::with_capacity(n_max + 2);
        let mut acc = 0usize;
        for k1 in 0..=n_max {
            offsets.push(acc);
            let m = n_max - k1;
            acc += (m + 1) * (m + 2) / 2;
        }
        offsets.push(acc);
        Self {
            n_max,
            offsets,
            len: acc,
        }
    }

    #[inline]
    pub(crate) fn index(&self, k1: usize, k2: usize, k3: usize) -> usize {
        debug_assert!(k1 + k2 + k3 <= self.n_max);
        let m = self.n_max - k1;
        // Within the k1 plane, rows of decreasing length (m+1-k2).
        self.offsets[k1] + k2 * (m + 1) - k2 * (k2.wrapping_sub(1)) / 2 + k3
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub(crate) fn n_max(&self) -> usize {
        self.n_max
    }
}

#[derive(Debug, Clone)]
enum Amplitudes {
    Dense {
        idx: SimplexIndex,
        amps: Vec<f64>,
    },
    /// Amplitudes reproduced on demand from the closed form; used past the
    /// dense cap where the simplex would not fit in memory.
    Formula,
}

/// Even-parity real symmetric state truncated at a total photon number.
#[derive(Debug, Clone)]
pub struct TruncatedTripartiteState {
    r: f64,
    cutoff: usize,
    norm_deficit: f64,
    norm_sq: f64,
    /// Normalized same-shell pair correlator (one raising, one lowering).
    u: f64,
    /// Normalized cross-shell pair correlator (both raising).
    v: f64,
    repr: Amplitudes,
}

impl TruncatedTripartiteState {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn squeezing(&self) -> f64 {
        self.r
    }

    /// Probability mass discarded by the truncation.
    pub fn norm_deficit(&self) -> f64 {
        self.norm_deficit
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// Amplitude at a Fock triple; zero outside the truncation.
    pub fn amplitude(&self, k1: usize, k2: usize, k3: usize) -> f64 {
        let total = k1 + k2 + k3;
        if total > self.cutoff {
            return 0.0;
        }
        match &self.repr {
            Amplitudes::Dense { idx, amps } => amps[idx.index(k1, k2, k3)],
            Amplitudes::Formula => {
                if total % 2 == 1 {
                    return 0.0;
                }
                let t = self.r.tanh();
                if t == 0.0 {
                    return if total == 0 { 1.0 } else { 0.0 };
                }
                let n = total / 2;
                let lf = LnFactorial::up_to(total.max(1));
                let ln_a = -0.5 * self.r.cosh().ln() + n as f64 * (t / 6.0).ln() + lf.get(total)
                    - lf.get(n);
                (ln_a - 0.5 * (lf.get(k1) + lf.get(k2) + lf.get(k3))).exp()
            }
        }
    }

    /// Dense amplitude view, absent past the dense-representation cap.
    pub(crate) fn dense(&self) -> Option<(&SimplexIndex, &[f64])> {
        match &self.repr {
            Amplitudes::Dense { idx, amps } => Some((idx, amps)),
            Amplitudes::Formula => None,
        }
    }

    /// Normalized elementary pair correlators (u, v) of this state.
    pub fn elementary(&self) -> (f64, f64) {
        (self.u, self.v)
    }

    /// Largest amplitude magnitude on odd-total-photon components.
    pub(crate) fn odd_sector_max(&self) -> f64 {
        match &self.repr {
            Amplitudes::Dense { idx, amps } => {
                let n = self.cutoff;
                let mut worst = 0.0f64;
                for k1 in 0..=n {
                    for k2 in 0..=n - k1 {
                        for k3 in 0..=n - k1 - k2 {
                            if (k1 + k2 + k3) % 2 == 1 {
                                worst = worst.max(amps[idx.index(k1, k2, k3)].abs());
                            }
                        }
                    }
                }
                worst
            }
            // The closed form populates even shells only.
            Amplitudes::Formula => 0.0,
        }
    }
}

fn validate_inputs(r: f64, cutoff: usize) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::domain(
            "r",
            format!("squeezing parameter must be a finite nonnegative real, got {r}"),
        ));
    }
    if !cutoff.is_multiple_of(2) {
        return Err(Error::domain(
            "cutoff",
            format!("total photon cutoff must be even, got {cutoff}"),
        ));
    }
    Ok(())
}

/// Fock expansion of the three-mode squeezed state: on the shell
/// k1 + k2 + k3 = 2n the amplitude is
/// `(cosh r)^(-1/2) (tanh r / 6)^n (2n)! / (n! sqrt(k1! k2! k3!))`,
/// zero on odd shells. Factorial ratios are assembled in log space.
pub fn ghz_state_fock(r: f64, cutoff: usize) -> Result<TruncatedTripartiteState> {
    validate_inputs(r, cutoff)?;
    if cutoff > MAX_DENSE_CUTOFF {
        // Amplitudes stay virtual; the pair correlators that every
        // correlation-function consumer reads are streamed shell by shell.
        let el = super::shells::elementary_from_squeezing(r, cutoff)?;
        return Ok(TruncatedTripartiteState {
            r,
            cutoff,
            norm_deficit: el.deficit,
            norm_sq: el.norm_sq,
            u: el.u,
            v: el.v,
            repr: Amplitudes::Formula,
        });
    }

    let idx = SimplexIndex::new(cutoff);
    let mut amps = vec![0.0; idx.len()];
    let t = r.tanh();
    let lf = LnFactorial::up_to(cutoff.max(1));
    let ln_norm = -0.5 * r.cosh().ln();

    let mut mass = KahanSum::new();
    if t == 0.0 {
        amps[idx.index(0, 0, 0)] = 1.0;
        mass.add(1.0);
    } else {
        let ln_t6 = (t / 6.0).ln();
        for n in 0..=cutoff / 2 {
            // ln of the shell prefactor A_n = N (t/6)^n (2n)!/n!.
            let ln_a = ln_norm + n as f64 * ln_t6 + lf.get(2 * n) - lf.get(n);
            let total = 2 * n;
            for k1 in 0..=total {
                for k2 in 0..=total - k1 {
                    let k3 = total - k1 - k2;
                    let c = (ln_a - 0.5 * (lf.get(k1) + lf.get(k2) + lf.get(k3))).exp();
                    amps[idx.index(k1, k2, k3)] = c;
                    mass.add(c * c);
                }
            }
        }
    }
    let norm_sq = mass.total();
    let norm_deficit = (1.0 - norm_sq).max(0.0);
    if norm_deficit > TAIL_TOLERANCE {
        return Err(Error::TailTolerance {
            cutoff,
            deficit: norm_deficit,
            tolerance: TAIL_TOLERANCE,
        });
    }

    // Elementary pair correlators, exact on the truncated amplitudes:
    // u pairs (k1, k2, k3) with (k1, k2-1, k3+1) inside one shell,
    // v pairs (k1, k2, k3) with (k1, k2-1, k3-1) across adjacent shells.
    let mut u_num = KahanSum::new();
    let mut v_num = KahanSum::new();
    for k1 in 0..=cutoff {
        for k2 in 1..=cutoff - k1 {
            if k2 % 2 == 0 {
                continue;
            }
            for k3 in 0..=cutoff - k1 - k2 {
                let c = amps[idx.index(k1, k2, k3)];
                if c == 0.0 {
                    continue;
                }
                if k3 % 2 == 0 {
                    u_num.add(c * amps[idx.index(k1, k2 - 1, k3 + 1)]);
                } else {
                    v_num.add(c * amps[idx.index(k1, k2 - 1, k3 - 1)]);
                }
            }
        }
    }

    Ok(TruncatedTripartiteState {
        r,
        cutoff,
        norm_deficit,
        norm_sq,
        u: u_num.total() / norm_sq,
        v: v_num.total() / norm_sq,
        repr: Amplitudes::Dense { idx, amps },
    })
}

/// Exact probability mass beyond an even total-photon cutoff; shell masses
/// follow the squeezed-vacuum pair distribution recurrence.
pub fn tail_deficit(r: f64, cutoff: usize) -> Result<f64> {
    validate_inputs(r, cutoff)?;
    let t2 = r.tanh().powi(2);
    let mut mass = 1.0 / r.cosh();
    let mut captured = KahanSum::new();
    for n in 0..=cutoff / 2 {
        captured.add(mass);
        // m_{n+1}/m_n = t^2 (2n+1)/(2n+2).
        mass *= t2 * (2 * n + 1) as f64 / (2 * n + 2) as f64;
    }
    Ok((1.0 - captured.total()).max(0.0))
}

/// Smallest even cutoff whose tail mass is certified below `tol`.
///
/// The shell-mass ratio is below tanh^2 r, so the tail from shell n on is
/// bounded by that shell's mass times cosh^2 r; the scan stops at the first
/// shell where the bound clears the tolerance.
pub fn cutoff_for_tail(r: f64, tol: f64) -> Result<usize> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::domain(
            "r",
            format!("squeezing parameter must be a finite nonnegative real, got {r}"),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(
            "tol",
            format!("tail tolerance must be positive, got {tol}"),
        ));
    }
    const MAX_SHELLS: usize = 2_000_000;
    let t2 = r.tanh().powi(2);
    let geometric = 1.0 / (1.0 - t2); // cosh^2 r
    let mut mass = 1.0 / r.cosh();
    for n in 0..=MAX_SHELLS {
        // mass is the shell-n mass; shells >= n are still uncaptured.
        if mass * geometric < tol {
            return Ok(if n == 0 { 0 } else { 2 * (n - 1) });
        }
        mass *= t2 * (2 * n + 1) as f64 / (2 * n + 2) as f64;
    }
    Err(Error::Precision(format!(
        "tail tolerance {tol:.1e} needs more than {MAX_SHELLS} shells at r = {r}"
    )))
}
