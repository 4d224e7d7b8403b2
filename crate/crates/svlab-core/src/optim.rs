//! Deterministic derivative-free optimizers.
//!
//! Hand-rolled on purpose: the scans must produce bit-identical output across
//! runs and thread counts, so every tie-break below is explicit and no RNG is
//! involved unless the caller seeds extra starts itself.

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
///
/// Returns `(x, f(x))` with `x` located to within `xtol`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Find where a monotone predicate flips from false to true on `[lo, hi]`.
///
/// Requires `pred(lo) == false` and `pred(hi) == true`; the returned value is
/// the midpoint of the final bracket, accurate to `xtol`.
pub fn bisect_rising<F: FnMut(f64) -> bool>(
    mut pred: F,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<f64, (f64, f64)> {
    if pred(lo) || !pred(hi) {
        return Err((lo, hi));
    }
    let (mut a, mut b) = (lo, hi);
    while (b - a) > xtol {
        let mid = 0.5 * (a + b);
        if pred(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Outcome of a Nelder-Mead run.
#[derive(Debug, Clone)]
pub struct NmResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub converged: bool,
    pub evaluations: usize,
}

/// Nelder-Mead simplex minimizer with deterministic tie-breaking.
#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    /// Simplex diameter below which the run counts as converged.
    pub xtol: f64,
    /// Spread of function values below which the run counts as converged.
    pub ftol: f64,
    pub max_evaluations: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            xtol: 1e-10,
            ftol: 1e-14,
            max_evaluations: 20_000,
        }
    }
}

impl NelderMead {
    /// Minimize `f` starting from `x0` with an initial simplex of edge `step`.
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64], step: f64) -> NmResult {
        let dim = x0.len();
        assert!(dim >= 1, "Nelder-Mead needs at least one variable");
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            // NaN must never win a comparison; treat it as +inf.
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
        simplex.push(x0.to_vec());
        for i in 0..dim {
            let mut p = x0.to_vec();
            p[i] += if step != 0.0 { step } else { 1e-3 };
            simplex.push(p);
        }
        let mut values: Vec<f64> = simplex.iter().map(|p| eval(p, &mut evals)).collect();

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut order: Vec<usize> = (0..=dim).collect();

        loop {
            // Stable sort on (value, index) keeps vertex handling deterministic
            // even when two vertices evaluate exactly equal.
            order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap().then(i.cmp(&j)));
            let best = order[0];
            let worst = order[dim];
            let second_worst = order[dim - 1];

            let diam = simplex
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&simplex[best])
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0f64, f64::max)
                })
                .fold(0.0f64, f64::max);
            let spread = values[worst] - values[best];
            if diam <= self.xtol && spread.abs() <= self.ftol {
                return NmResult {
                    x: simplex[best].clone(),
                    fx: values[best],
                    converged: true,
                    evaluations: evals,
                };
            }
            if evals >= self.max_evaluations {
                return NmResult {
                    x: simplex[best].clone(),
                    fx: values[best],
                    converged: false,
                    evaluations: evals,
                };
            }

            let mut centroid = vec![0.0; dim];
            for &i in order.iter().take(dim) {
                for (c, &xi) in centroid.iter_mut().zip(&simplex[i]) {
                    *c += xi;
                }
            }
            for c in centroid.iter_mut() {
                *c /= dim as f64;
            }

            let lerp = |from: &[f64], coef: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(&c, &x)| c + coef * (c - x))
                    .collect()
            };

            let reflected = lerp(&simplex[worst], alpha);
            let fr = eval(&reflected, &mut evals);
            if fr < values[best] {
                let expanded = lerp(&simplex[worst], gamma);
                let fe = eval(&expanded, &mut evals);
                if fe < fr {
                    simplex[worst] = expanded;
                    values[worst] = fe;
                } else {
                    simplex[worst] = reflected;
                    values[worst] = fr;
                }
                continue;
            }
            if fr < values[second_worst] {
                simplex[worst] = reflected;
                values[worst] = fr;
                continue;
            }
            let contracted = if fr < values[worst] {
                lerp(&simplex[worst], rho)
            } else {
                lerp(&simplex[worst], -rho)
            };
            let fc = eval(&contracted, &mut evals);
            if fc < values[worst].min(fr) {
                simplex[worst] = contracted;
                values[worst] = fc;
                continue;
            }
            // Shrink toward the best vertex.
            for &i in order.iter().skip(1) {
                let shrunk: Vec<f64> = simplex[best]
                    .iter()
                    .zip(&simplex[i])
                    .map(|(&b, &x)| b + sigma * (x - b))
                    .collect();
                simplex[i] = shrunk;
                values[i] = eval(&simplex[i], &mut evals);
            }
        }
    }
}
