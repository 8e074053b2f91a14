//! Brute-force minimization of `S̃_a(ρ|σ)` over the fixed points of a map.
//!
//! Free states are reached as `σ = E(G G† / Tr G G†)` for an unconstrained complex
//! `d x d` factor `G`, and the search over `G` is a derivative-free simplex method. None
//! of this touches the closed-form code path except to report the gap at the end.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channels::ResourceDestroyingMap;
use crate::error::{Error, Result};
use crate::linalg::{eig_symmetrized, hermitize, identity, trace, ComplexMatrix, DensityMatrix};
use crate::measures::{closed_form_measure, DivergenceFrom, TsallisOrder};
use num_complex::Complex64;

/// Restarts whose best value lies within this of the overall best count as agreeing.
pub const AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub restarts: usize,
    /// Simplex iterations allowed per restart.
    pub max_iterations: usize,
    /// Stop once the objective spread over the simplex falls below this.
    pub tolerance: f64,
    pub seed: u64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            restarts: 20,
            max_iterations: 2000,
            tolerance: 1e-10,
            seed: 0,
            initial_step: 0.5,
        }
    }
}

impl OracleConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::BadDimension("oracle needs at least one restart and iteration".into()));
        }
        if !(self.tolerance > 0.0 && self.initial_step > 0.0) {
            return Err(Error::BadDimension("oracle tolerances must be positive".into()));
        }
        Ok(())
    }

    fn simplex_options(&self) -> SimplexOptions {
        SimplexOptions {
            max_iterations: self.max_iterations,
            tolerance: self.tolerance,
            initial_step: self.initial_step,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        OracleConfig::default().simplex_options()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Objective spread dropped below tolerance before the iteration cap.
    pub converged: bool,
}

/// Nelder–Mead with dimension-adaptive coefficients.
///
/// Reflection 1, expansion `1 + 2/n`, contraction `3/4 - 1/(2n)`, shrink `1 - 1/n`
/// (the standard 1, 2, 1/2, 1/2 when `n = 2`). `NaN` is treated as `+∞`, so an infinite
/// region acts as a barrier as long as the start is finite.
pub fn simplex_minimize<F>(mut f: F, x0: &[f64], options: &SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    if n == 0 {
        let value = eval(x0);
        return SimplexResult {
            x: Vec::new(),
            value,
            iterations: 0,
            evaluations: 1,
            converged: true,
        };
    }
    let nf = n as f64;
    let (alpha, beta) = (1.0, 1.0 + 2.0 / nf);
    let gamma = (0.75 - 0.5 / nf).max(0.5);
    let delta = (1.0 - 1.0 / nf).max(0.5);

    let mut points: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    points.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += options.initial_step;
        points.push(p);
    }
    let mut values: Vec<f64> = points.iter().map(|p| eval(p)).collect();

    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    let along = |out: &mut Vec<f64>, c: &[f64], towards: &[f64], t: f64| {
        for ((o, &ci), &wi) in out.iter_mut().zip(c).zip(towards) {
            *o = ci + t * (wi - ci);
        }
    };

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
        points = order.iter().map(|&i| std::mem::take(&mut points[i])).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        if values[0].is_finite() && spread.is_finite() && spread < options.tolerance {
            converged = true;
            break;
        }
        if iterations >= options.max_iterations {
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for p in &points[..n] {
            for (c, &x) in centroid.iter_mut().zip(p) {
                *c += x / nf;
            }
        }

        along(&mut trial, &centroid, &points[n], -alpha);
        let reflected = trial.clone();
        let f_reflected = eval(&reflected);

        if f_reflected < values[0] {
            along(&mut trial, &centroid, &reflected, beta);
            let f_expanded = eval(&trial);
            if f_expanded < f_reflected {
                points[n] = trial.clone();
                values[n] = f_expanded;
            } else {
                points[n] = reflected;
                values[n] = f_reflected;
            }
            continue;
        }
        if f_reflected < values[n - 1] {
            points[n] = reflected;
            values[n] = f_reflected;
            continue;
        }
        let (target, bound) = if f_reflected < values[n] {
            (&reflected, f_reflected)
        } else {
            (&points[n].clone(), values[n])
        };
        along(&mut trial, &centroid, target, gamma);
        let f_contracted = eval(&trial);
        if f_contracted < bound || (f_contracted == bound && f_contracted.is_finite()) {
            points[n] = trial.clone();
            values[n] = f_contracted;
            continue;
        }
        let best = points[0].clone();
        for i in 1..=n {
            for (x, &b) in points[i].iter_mut().zip(&best) {
                *x = b + delta * (*x - b);
            }
            values[i] = eval(&points[i]);
        }
    }

    SimplexResult {
        x: points.swap_remove(0),
        value: values[0],
        iterations,
        evaluations,
        converged,
    }
}

/// Number of real parameters used to reach `Fix(E)` in dimension `d`.
pub fn parameter_count(d: usize) -> usize {
    2 * d * d
}

fn free_state_matrix(x: &[f64], map: &ResourceDestroyingMap) -> ComplexMatrix {
    let d = map.dim();
    let dd = d * d;
    let g = ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(x[i * d + j], x[dd + i * d + j]));
    let w = &g * g.adjoint();
    let t = trace(&w).re;
    let tau = if t.is_finite() && t >= 1e-14 {
        w.unscale(t)
    } else {
        identity(d).unscale(d as f64)
    };
    hermitize(&map.apply_unchecked(&tau))
}

/// `E(G G† / Tr G G†)` where `x` holds the real parts of `G` (row-major) followed by the
/// imaginary parts. Falls back to `E(I/d)` when `G` is numerically zero.
pub fn parameterize_free_state(x: &[f64], map: &ResourceDestroyingMap) -> Result<DensityMatrix> {
    let expected = parameter_count(map.dim());
    if x.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(DensityMatrix::from_trusted(free_state_matrix(x, map)))
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: f64,
    pub sigma_min: DensityMatrix,
    /// Closed-form value the oracle was compared against.
    pub closed_form: f64,
    /// `value - closed_form`; never meaningfully negative if the closed form is the minimum.
    pub gap_to_closed_form: f64,
    pub restarts_agreeing: usize,
    /// Best value reached by each restart, in restart order.
    pub restart_values: Vec<f64>,
    pub evaluations: usize,
}

/// Searches `Fix(E)` for the minimum of `S̃_a(ρ|σ)` from `config.restarts` seeded starts.
///
/// Each restart re-seeds its simplex at its own best point while that still improves the
/// objective by more than the tolerance and iterations remain.
pub fn minimize_over_free_states(
    rho: &DensityMatrix,
    map: &ResourceDestroyingMap,
    a: TsallisOrder,
    config: &OracleConfig,
) -> Result<OracleResult> {
    config.validate()?;
    if rho.dim() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            found: rho.dim(),
        });
    }
    let d = map.dim();
    let n = parameter_count(d);
    let target = DivergenceFrom::new(rho, a);
    let mut evaluations = 0;
    let mut objective = |x: &[f64]| target.evaluate_eig(&eig_symmetrized(&free_state_matrix(x, map)));

    let mut restart_values = Vec::with_capacity(config.restarts);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for restart in 0..config.restarts {
        let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64);
        let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let mut value = f64::INFINITY;
        let mut budget = config.max_iterations;
        let mut options = config.simplex_options();
        while budget > 0 {
            options.max_iterations = budget;
            let run = simplex_minimize(&mut objective, &x, &options);
            evaluations += run.evaluations;
            budget -= run.iterations.min(budget);
            let improved = value - run.value;
            if run.value <= value {
                value = run.value;
                x = run.x;
            }
            if !run.converged || improved.partial_cmp(&config.tolerance) != Some(std::cmp::Ordering::Greater) || run.iterations == 0 {
                break;
            }
            options.initial_step = (options.initial_step * 0.5).max(1e-4);
        }
        restart_values.push(value);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, x));
        }
    }

    let (value, x) = best.expect("at least one restart");
    if !value.is_finite() {
        return Err(Error::NoFiniteObjective);
    }
    let closed_form = closed_form_measure(rho, map, a)?.value;
    let restarts_agreeing = restart_values.iter().filter(|&&v| v - value <= AGREEMENT_TOL).count();
    Ok(OracleResult {
        value,
        sigma_min: parameterize_free_state(&x, map)?,
        closed_form,
        gap_to_closed_form: value - closed_form,
        restarts_agreeing,
        restart_values,
        evaluations,
    })
}
