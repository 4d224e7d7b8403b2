//! Pseudospin measurement settings and three-mode correlation functions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use super::state::TruncatedTripartiteState;
use super::tensor::{FockTensor, Mode};
use crate::error::{Error, Result};
use crate::svetlichny::{svetlichny_general, FullCorrelationTable};

/// Unreliability threshold on accumulated cutoff leakage (amplitude norm).
const LEAKAGE_LIMIT: f64 = 1e-8;
/// Correlators of real-amplitude states are real; anything above this is a
/// bug, not noise.
const IMAG_LIMIT: f64 = 1e-10;
/// Largest tolerated odd-parity amplitude for the even-sector formulas.
const ODD_PARITY_LIMIT: f64 = 1e-10;

/// Measurement direction (theta, phi), canonicalized to theta in [0, pi]
/// and phi in (-pi, pi] via (-theta, phi) = (theta, phi + pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudospinSetting {
    theta: f64,
    phi: f64,
}

impl PseudospinSetting {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::domain(
                "setting",
                format!("angles must be finite, got ({theta}, {phi})"),
            ));
        }
        let mut th = theta.rem_euclid(TAU);
        let mut ph = phi;
        if th > PI {
            th = TAU - th;
            ph += PI;
        }
        let mut ph = ph.rem_euclid(TAU);
        if ph > PI {
            ph -= TAU;
        }
        Ok(Self { theta: th, phi: ph })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Two measurement choices per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudospinSettingSet {
    /// Indexed [mode][choice] with modes ordered a, b, c.
    choices: [[PseudospinSetting; 2]; 3],
}

fn mode_row(mode: Mode) -> usize {
    match mode {
        Mode::A => 0,
        Mode::B => 1,
        Mode::C => 2,
    }
}

impl PseudospinSettingSet {
    pub fn new(choices: [[PseudospinSetting; 2]; 3]) -> Self {
        Self { choices }
    }

    /// The settings behind the closed-form evaluation: chosen so that six of
    /// the eight correlators collapse onto the same pair correlator and the
    /// Svetlichny combination takes its simple one-parameter form.
    pub fn fixed() -> Self {
        let s = |theta: f64, phi: f64| PseudospinSetting::new(theta, phi).unwrap();
        Self::new([
            [s(0.0, FRAC_PI_2), s(FRAC_PI_2, FRAC_PI_2)],
            [s(FRAC_PI_4, FRAC_PI_2), s(3.0 * FRAC_PI_4, FRAC_PI_2)],
            [s(0.0, -FRAC_PI_2), s(-FRAC_PI_2, -FRAC_PI_2)],
        ])
    }

    pub fn setting(&self, mode: Mode, choice: usize) -> &PseudospinSetting {
        &self.choices[mode_row(mode)][choice]
    }

    /// Flattened (theta, phi) pairs in mode-major order; the optimizer's
    /// coordinate layout.
    pub fn angles(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        for (m, row) in self.choices.iter().enumerate() {
            for (x, s) in row.iter().enumerate() {
                out[4 * m + 2 * x] = s.theta;
                out[4 * m + 2 * x + 1] = s.phi;
            }
        }
        out
    }

    pub(crate) fn from_angles(angles: &[f64; 12]) -> Result<Self> {
        let mut rows = Vec::with_capacity(3);
        for m in 0..3 {
            rows.push([
                PseudospinSetting::new(angles[4 * m], angles[4 * m + 1])?,
                PseudospinSetting::new(angles[4 * m + 2], angles[4 * m + 3])?,
            ]);
        }
        Ok(Self::new([rows[0], rows[1], rows[2]]))
    }
}

/// Correlator from the two normalized pair correlators of an even-parity
/// symmetric real state: parity selection kills every term except the
/// all-diagonal one and the six with one diagonal and two ladder factors.
pub(crate) fn correlation_from_elementary(u: f64, v: f64, s: &[PseudospinSetting; 3]) -> f64 {
    let (ca, sa, fa) = (s[0].theta.cos(), s[0].theta.sin(), s[0].phi);
    let (cb, sb, fb) = (s[1].theta.cos(), s[1].theta.sin(), s[1].phi);
    let (cc, sc, fc) = (s[2].theta.cos(), s[2].theta.sin(), s[2].phi);
    -ca * cb * cc
        + 2.0
            * u
            * (ca * sb * sc * (fb - fc).cos()
                + sa * cb * sc * (fa - fc).cos()
                + sa * sb * cc * (fa - fb).cos())
        - 2.0
            * v
            * (ca * sb * sc * (fb + fc).cos()
                + sa * cb * sc * (fa + fc).cos()
                + sa * sb * cc * (fa + fb).cos())
}

/// Expectation of the three-mode pseudospin product in the normalized
/// truncated state. Exact: the closed form sums the same pairings the full
/// operator product would produce, with no cutoff loss.
pub fn correlation(state: &TruncatedTripartiteState, settings: &[PseudospinSetting; 3]) -> f64 {
    let (u, v) = state.elementary();
    correlation_from_elementary(u, v, settings)
}

/// Same expectation through explicit operator application. Kept as an
/// independent route for cross-checks; fails when cutoff leakage makes the
/// result unreliable or a nonzero imaginary residue betrays a bug.
pub fn correlation_via_operators(
    state: &TruncatedTripartiteState,
    settings: &[PseudospinSetting; 3],
) -> Result<f64> {
    let bra = FockTensor::from_state(state)?;
    let ket = bra
        .apply(Mode::C, &settings[2])
        .apply(Mode::B, &settings[1])
        .apply(Mode::A, &settings[0]);
    let leak = ket.leakage_norm();
    if leak > LEAKAGE_LIMIT {
        return Err(Error::Precision(format!(
            "cutoff leakage {leak:.2e} exceeds {LEAKAGE_LIMIT:.0e}; \
             raise the cutoff for the operator route"
        )));
    }
    let val = bra.inner(&ket) / state.norm_sq();
    if val.im.abs() > IMAG_LIMIT {
        return Err(Error::ImaginaryResidue {
            residue: val.im.abs(),
            limit: IMAG_LIMIT,
        });
    }
    Ok(val.re)
}

/// Svetlichny parameter for three modes: the eight correlators at the given
/// settings fed through the general bitstring frame (mode a on bit 0).
pub fn svetlichny_pseudospin(
    state: &TruncatedTripartiteState,
    settings: &PseudospinSettingSet,
) -> f64 {
    let values: Vec<f64> = (0..8usize)
        .map(|x| {
            let s = [
                *settings.setting(Mode::A, x & 1),
                *settings.setting(Mode::B, (x >> 1) & 1),
                *settings.setting(Mode::C, (x >> 2) & 1),
            ];
            correlation(state, &s)
        })
        .collect();
    let table = FullCorrelationTable::new(3, values)
        .expect("pseudospin correlators stay within the unit interval");
    svetlichny_general(&table)
}

/// Svetlichny parameter at the fixed settings, via the closed form
/// sqrt(2)/4 (1 + 6(u + v)): the pair correlator expectation collapses the
/// whole eight-term combination. Equals `svetlichny_pseudospin` at
/// `PseudospinSettingSet::fixed()` up to rounding.
pub fn svetlichny_fixed_settings(state: &TruncatedTripartiteState) -> Result<f64> {
    let odd = state.odd_sector_max();
    if odd > ODD_PARITY_LIMIT {
        return Err(Error::domain(
            "state",
            format!(
                "odd-parity amplitude {odd:.2e} exceeds {ODD_PARITY_LIMIT:.0e}; \
                 the fixed-settings form assumes the even sector"
            ),
        ));
    }
    let (u, v) = state.elementary();
    Ok(2.0f64.sqrt() / 4.0 * (1.0 + 6.0 * (u + v)))
}
