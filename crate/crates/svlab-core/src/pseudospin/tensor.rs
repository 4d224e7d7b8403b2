//! Complex Fock tensors and single-mode pseudospin application.

use num_complex::Complex64;

use super::correlator::PseudospinSetting;
use super::state::{SimplexIndex, TruncatedTripartiteState};
use crate::error::{Error, Result};
use crate::math::KahanSum;

/// Mode label of the tripartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
    C,
}

impl Mode {
    fn split(self, k1: usize, k2: usize, k3: usize) -> (usize, [usize; 2]) {
        match self {
            Mode::A => (k1, [k2, k3]),
            Mode::B => (k2, [k1, k3]),
            Mode::C => (k3, [k1, k2]),
        }
    }

    fn join(self, k: usize, rest: [usize; 2]) -> (usize, usize, usize) {
        match self {
            Mode::A => (k, rest[0], rest[1]),
            Mode::B => (rest[0], k, rest[1]),
            Mode::C => (rest[0], rest[1], k),
        }
    }
}

/// Complex amplitude tensor on the truncation simplex, tracking the weight
/// that raising operators pushed past the cutoff.
#[derive(Debug, Clone)]
pub struct FockTensor {
    amps: Vec<Complex64>,
    leakage_norm: f64,
    idx: SimplexIndex,
}

impl FockTensor {
    /// Copies a dense state into complex storage. States past the dense cap
    /// have no amplitude store to copy; use the closed-form correlation
    /// route for those.
    pub fn from_state(state: &TruncatedTripartiteState) -> Result<Self> {
        let (idx, amps) = state.dense().ok_or_else(|| {
            Error::domain(
                "state",
                format!(
                    "cutoff {} has no dense amplitude representation; \
                     operator application needs one",
                    state.cutoff()
                ),
            )
        })?;
        Ok(Self {
            amps: amps.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
            leakage_norm: 0.0,
            idx: idx.clone(),
        })
    }

    #[cfg(test)]
    pub(crate) fn from_parts(cutoff: usize, amps: Vec<Complex64>) -> Self {
        let idx = SimplexIndex::new(cutoff);
        assert_eq!(idx.len(), amps.len());
        Self {
            amps,
            leakage_norm: 0.0,
            idx,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.idx.n_max()
    }

    /// Accumulated amplitude norm dropped at the cutoff boundary across all
    /// operator applications that produced this tensor.
    pub fn leakage_norm(&self) -> f64 {
        self.leakage_norm
    }

    pub fn amplitude(&self, k1: usize, k2: usize, k3: usize) -> Complex64 {
        if k1 + k2 + k3 > self.cutoff() {
            Complex64::ZERO
        } else {
            self.amps[self.idx.index(k1, k2, k3)]
        }
    }

    pub fn norm_sq(&self) -> f64 {
        let mut acc = KahanSum::new();
        for a in &self.amps {
            acc.add(a.norm_sqr());
        }
        acc.total()
    }

    /// Hermitian inner product, this tensor on the bra side.
    pub fn inner(&self, other: &FockTensor) -> Complex64 {
        assert_eq!(self.cutoff(), other.cutoff());
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        for (a, b) in self.amps.iter().zip(&other.amps) {
            let p = a.conj() * b;
            re.add(p.re);
            im.add(p.im);
        }
        Complex64::new(re.total(), im.total())
    }

    /// Applies `cos(theta) Zz + sin(theta) (e^{-i phi} Zp + e^{i phi} Zm)`
    /// on one mode: Zz negates even occupation numbers, Zp raises even to
    /// odd, Zm lowers odd to even. Raising off the top shell is dropped and
    /// the dropped amplitude norm is added to the leakage figure.
    pub fn apply(&self, mode: Mode, setting: &PseudospinSetting) -> FockTensor {
        let n = self.cutoff();
        let cos_t = setting.theta().cos();
        let sin_t = setting.theta().sin();
        let raise = Complex64::from_polar(sin_t, -setting.phi());
        let lower = Complex64::from_polar(sin_t, setting.phi());

        let mut out = vec![Complex64::ZERO; self.amps.len()];
        let mut leak_sq = KahanSum::new();
        for k1 in 0..=n {
            for k2 in 0..=n - k1 {
                for k3 in 0..=n - k1 - k2 {
                    let c = self.amps[self.idx.index(k1, k2, k3)];
                    if c == Complex64::ZERO {
                        continue;
                    }
                    let total = k1 + k2 + k3;
                    let (k, rest) = mode.split(k1, k2, k3);
                    let i = self.idx.index(k1, k2, k3);
                    if k % 2 == 0 {
                        out[i] -= cos_t * c;
                        if total < n {
                            let (j1, j2, j3) = mode.join(k + 1, rest);
                            out[self.idx.index(j1, j2, j3)] += raise * c;
                        } else {
                            leak_sq.add(sin_t * sin_t * c.norm_sqr());
                        }
                    } else {
                        out[i] += cos_t * c;
                        let (j1, j2, j3) = mode.join(k - 1, rest);
                        out[self.idx.index(j1, j2, j3)] += lower * c;
                    }
                }
            }
        }
        FockTensor {
            amps: out,
            leakage_norm: self.leakage_norm + leak_sq.total().sqrt(),
            idx: self.idx.clone(),
        }
    }
}

/// One pseudospin measurement applied to a mode of the state.
pub fn apply_pseudospin(
    state: &TruncatedTripartiteState,
    mode: Mode,
    setting: &PseudospinSetting,
) -> Result<FockTensor> {
    Ok(FockTensor::from_state(state)?.apply(mode, setting))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudospin::state::ghz_state_fock;

    fn setting(theta: f64, phi: f64) -> PseudospinSetting {
        PseudospinSetting::new(theta, phi).unwrap()
    }

    #[test]
    fn z_axis_flips_even_occupations() {
        let st = ghz_state_fock(0.5, 24).unwrap();
        let out = apply_pseudospin(&st, Mode::B, &setting(0.0, 0.0)).unwrap();
        assert_eq!(out.leakage_norm(), 0.0);
        // k2 even picks up a sign, k2 odd does not.
        assert_eq!(out.amplitude(0, 0, 0).re, -st.amplitude(0, 0, 0));
        assert_eq!(out.amplitude(0, 2, 0).re, -st.amplitude(0, 2, 0));
        assert_eq!(out.amplitude(1, 1, 0).re, st.amplitude(1, 1, 0));
        assert_eq!(out.amplitude(1, 3, 2).re, st.amplitude(1, 3, 2));
    }

    #[test]
    fn ladder_terms_move_parity_sectors() {
        let st = ghz_state_fock(0.5, 24).unwrap();
        // Pure ladder setting: even-parity input maps into the odd sector.
        let out =
            apply_pseudospin(&st, Mode::A, &setting(std::f64::consts::FRAC_PI_2, 0.3)).unwrap();
        for k1 in 0..=6usize {
            for k2 in 0..=6usize {
                for k3 in 0..=6usize {
                    let a = out.amplitude(k1, k2, k3);
                    if (k1 + k2 + k3) % 2 == 0 {
                        // cos(pi/2) rounds to 6.1e-17, so the parity branch
                        // leaves a residue at that scale rather than zero.
                        assert!(a.norm() < 1e-15, "even residue at ({k1},{k2},{k3}): {a}");
                    }
                }
            }
        }
        // Raising is the only path into odd k1: |1,0,0> comes from |0,0,0>
        // and |3,0,0> from |2,0,0>, each with phase e^{-i phi}.
        let phase = Complex64::from_polar(1.0, -0.3);
        let expect1 = phase * st.amplitude(0, 0, 0);
        assert!((out.amplitude(1, 0, 0) - expect1).norm() < 1e-15);
        let expect3 = phase * st.amplitude(2, 0, 0);
        assert!((out.amplitude(3, 0, 0) - expect3).norm() < 1e-15);
    }

    #[test]
    fn squares_to_identity_inside_the_cutoff() {
        let st = ghz_state_fock(0.5, 28).unwrap();
        let base = FockTensor::from_state(&st).unwrap();
        for (theta, phi) in [(0.7, -1.1), (2.3, 0.4), (std::f64::consts::FRAC_PI_2, 2.0)] {
            let s = setting(theta, phi);
            let twice = base.apply(Mode::B, &s).apply(Mode::B, &s);
            for k1 in 0..=26usize {
                for k2 in 0..=(26 - k1) {
                    for k3 in 0..=(26 - k1 - k2) {
                        let d = (twice.amplitude(k1, k2, k3) - base.amplitude(k1, k2, k3)).norm();
                        assert!(
                            d < 1e-12,
                            "Z^2 deviates by {d} at ({k1},{k2},{k3}), theta={theta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn application_is_self_adjoint() {
        let left = FockTensor::from_state(&ghz_state_fock(0.4, 48).unwrap()).unwrap();
        let right = FockTensor::from_state(&ghz_state_fock(0.8, 48).unwrap()).unwrap();
        // Complex bra via a prior application on another mode.
        let bra = left.apply(Mode::C, &setting(1.2, 0.7));
        let s = setting(0.9, -2.1);
        let lhs = bra.apply(Mode::A, &s).inner(&right);
        let rhs = bra.inner(&right.apply(Mode::A, &s));
        assert!((lhs - rhs).norm() < 1e-13, "{lhs} vs {rhs}");
    }

    #[test]
    fn boundary_raising_is_counted_as_leakage() {
        let st = ghz_state_fock(1.0, 60).unwrap();
        let zero_leak = apply_pseudospin(&st, Mode::C, &setting(0.0, 0.0)).unwrap();
        assert_eq!(zero_leak.leakage_norm(), 0.0);

        let leaked =
            apply_pseudospin(&st, Mode::C, &setting(std::f64::consts::FRAC_PI_2, 0.0)).unwrap();
        let leak = leaked.leakage_norm();
        assert!(leak > 0.0);
        // Bounded by the amplitude norm of the top shell.
        let mut top_sq = 0.0;
        for k1 in 0..=60usize {
            for k2 in 0..=(60 - k1) {
                let k3 = 60 - k1 - k2;
                top_sq += st.amplitude(k1, k2, k3).powi(2);
            }
        }
        assert!(leak <= top_sq.sqrt() + 1e-15, "leak={leak}");
        assert!(leak > 0.1 * top_sq.sqrt(), "leak={leak}");
    }

    #[test]
    fn deep_states_refuse_operator_application() {
        let deep = ghz_state_fock(2.0, 460).unwrap();
        assert!(matches!(
            apply_pseudospin(&deep, Mode::A, &setting(0.3, 0.3)),
            Err(Error::Domain { .. })
        ));
    }
}
