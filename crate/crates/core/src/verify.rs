//! Seeded property suites for the closed-form measure.
//!
//! Every suite draws trial `t` from its own generator seeded with `seed + t`, records one
//! [`TrialRecord`] per check, and aggregates them into a [`SuiteReport`]. A check passes when
//! its `violation` is at most its `tolerance`; checks with `counted = false` are kept as data.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::channels::{
    cyclic_group, dephasing, lueders_map, mixing_map, modified_coarse_map, twirling_map, MeasurementPartition,
    QuantumChannel, ResourceDestroyingMap,
};
use crate::error::{Error, Result};
use crate::io::{format_sci, Sci};
use crate::linalg::{
    matrix_power, random_density_matrix_with, random_hermitian_with, random_unitary_with,
    trace_product_re, validate_density, ComplexMatrix, DensityMatrix,
};
use crate::measures::{
    closed_form_measure, decomposition_terms, tsallis_relative_entropy, TsallisOrder, DEFAULT_A_GRID, MINIMIZER_TOL,
};
use crate::oracle::{minimize_over_free_states, OracleConfig};
use num_complex::Complex64;

/// `|closed form - oracle|` allowed in the agreement suite.
pub const ORACLE_GAP_TOL: f64 = 1e-5;
/// How far the oracle may undercut the closed form.
pub const ORACLE_UNDERCUT_TOL: f64 = 1e-7;
/// Values at free states, for closed form and oracle alike.
pub const FIXED_POINT_VALUE_TOL: f64 = 1e-8;
/// Distance between oracle and closed-form minimizers when both are well determined.
pub const MINIMIZER_DISTANCE_TOL: f64 = 1e-3;
/// Inequalities and invariances of the measure.
pub const PROPERTY_TOL: f64 = 1e-9;
/// Lower bound on any measure value.
pub const NONNEGATIVITY_TOL: f64 = 1e-10;
/// Superoperator identities between measurement maps.
pub const SUPEROPERATOR_TOL: f64 = 1e-10;
/// Offset of the orders compared against the entropy branch.
pub const CONTINUITY_STEP: f64 = 1e-4;
pub const CONTINUITY_TOL: f64 = 1e-3;
/// Trace-pairing residual, relative to `||X|| ||Y||`.
pub const PAIRING_TOL: f64 = 1e-9;
/// Fixed-point residuals of adjoint images and matrix functions.
pub const DUALITY_TOL: f64 = 1e-8;

pub const SUITE_NAMES: [&str; 6] = ["theorem1", "axioms", "theorem2", "piani", "continuity", "adjoint"];

/// Inputs shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub a_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Oracle settings; the oracle seed of a trial is the trial seed.
    pub oracle: OracleConfig,
    /// Every `k`-th trial (`t % k == k - 1`) uses a free state instead of a random one.
    pub fixed_point_stride: Option<usize>,
    /// Replaces the tolerance of the suite's headline check.
    pub tolerance: Option<f64>,
}

impl SuiteConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        SuiteConfig {
            dims: vec![2, 3, 4],
            a_grid: DEFAULT_A_GRID.to_vec(),
            trials,
            seed,
            oracle: OracleConfig::default(),
            fixed_point_stride: Some(10),
            tolerance: None,
        }
    }

    pub fn dims(mut self, dims: &[usize]) -> Self {
        self.dims = dims.to_vec();
        self
    }

    pub fn a_grid(mut self, grid: &[f64]) -> Self {
        self.a_grid = grid.to_vec();
        self
    }

    pub fn oracle(mut self, oracle: OracleConfig) -> Self {
        self.oracle = oracle;
        self
    }

    fn orders(&self) -> Result<Vec<TsallisOrder>> {
        self.a_grid.iter().map(|&a| TsallisOrder::new(a)).collect()
    }

    fn check_dims(&self, allowed: std::ops::RangeInclusive<usize>) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::BadDimension("no dimensions given".into()));
        }
        match self.dims.iter().find(|d| !allowed.contains(d)) {
            Some(d) => Err(Error::BadDimension(format!(
                "dimension {d} outside {}..={} for this suite",
                allowed.start(),
                allowed.end()
            ))),
            None => Ok(()),
        }
    }

    fn trial_rng(&self, trial: usize) -> (u64, ChaCha20Rng) {
        let seed = self.seed.wrapping_add(trial as u64);
        (seed, ChaCha20Rng::seed_from_u64(seed))
    }

    fn is_fixed_point_trial(&self, trial: usize) -> bool {
        self.fixed_point_stride.is_some_and(|k| k > 0 && trial % k == k - 1)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

/// One check within one trial.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub dim: usize,
    #[serde(serialize_with = "serialize_opt_sci")]
    pub a: Option<f64>,
    pub map: String,
    pub check: String,
    #[serde(serialize_with = "serialize_named")]
    pub values: Vec<(String, f64)>,
    #[serde(serialize_with = "serialize_sci")]
    pub violation: f64,
    #[serde(serialize_with = "serialize_sci")]
    pub tolerance: f64,
    /// Whether the check counts toward failures.
    pub counted: bool,
}

impl TrialRecord {
    pub fn failed(&self) -> bool {
        self.counted && (self.violation.is_nan() || self.violation > self.tolerance)
    }
}

fn serialize_sci<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    Sci(*x).serialize(s)
}

fn serialize_opt_sci<S: serde::Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.map(Sci).serialize(s)
}

fn serialize_named<S: serde::Serializer>(values: &[(String, f64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(values.len()))?;
    for (k, v) in values {
        map.serialize_entry(k, &Sci(*v))?;
    }
    map.end()
}

/// Aggregate of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    /// Trials with at least one failing counted check.
    pub failures: usize,
    pub failed_checks: usize,
    /// `max(violation - tolerance)` over counted checks; positive exactly when something failed.
    #[serde(serialize_with = "serialize_sci")]
    pub worst_violation: f64,
    /// Suite-level observations (minimum gaps, uncounted violation tallies).
    #[serde(serialize_with = "serialize_named")]
    pub summary: Vec<(String, f64)>,
    pub records: Vec<TrialRecord>,
    /// Not serialized, so reports are byte-stable for fixed inputs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    fn from_records(suite: &str, trials: usize, mut records: Vec<TrialRecord>, summary: Vec<(String, f64)>, started: Instant) -> Self {
        records.sort_by_key(|r| r.trial);
        let failing: Vec<&TrialRecord> = records.iter().filter(|r| r.failed()).collect();
        let failures = failing.iter().map(|r| r.trial).collect::<BTreeSet<_>>().len();
        let worst_violation = records
            .iter()
            .filter(|r| r.counted)
            .map(|r| if r.violation.is_nan() { f64::INFINITY } else { r.violation - r.tolerance })
            .fold(f64::NEG_INFINITY, f64::max);
        SuiteReport {
            suite: suite.to_string(),
            trials,
            failures,
            failed_checks: failing.len(),
            worst_violation,
            summary,
            records,
            wall_time: started.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed_checks == 0
    }

    /// Records of one check kind.
    pub fn records_for<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a TrialRecord> + 'a {
        self.records.iter().filter(move |r| r.check == check)
    }

    /// Largest violation among records of one check kind.
    pub fn max_violation(&self, check: &str) -> f64 {
        self.records_for(check).map(|r| r.violation).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Per-record CSV: `trial,seed,dim,a,map,check,violation,tolerance,counted,failed,values`.
    pub fn records_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["trial", "seed", "dim", "a", "map", "check", "violation", "tolerance", "counted", "failed", "values"])
            .expect("in-memory csv");
        for r in &self.records {
            let values = r
                .values
                .iter()
                .map(|(k, v)| format!("{k}={}", format_sci(*v)))
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                r.trial.to_string(),
                r.seed.to_string(),
                r.dim.to_string(),
                r.a.map(format_sci).unwrap_or_default(),
                r.map.clone(),
                r.check.clone(),
                format_sci(r.violation),
                format_sci(r.tolerance),
                r.counted.to_string(),
                r.failed().to_string(),
                values,
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}

struct Recorder {
    records: Vec<TrialRecord>,
    trial: usize,
    seed: u64,
}

impl Recorder {
    fn new() -> Self {
        Recorder { records: Vec::new(), trial: 0, seed: 0 }
    }

    fn start(&mut self, trial: usize, seed: u64) {
        self.trial = trial;
        self.seed = seed;
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, dim: usize, a: Option<TsallisOrder>, map: &str, check: &str, values: &[(&str, f64)], violation: f64, tolerance: f64, counted: bool) {
        self.records.push(TrialRecord {
            trial: self.trial,
            seed: self.seed,
            dim,
            a: a.map(TsallisOrder::value),
            map: map.to_string(),
            check: check.to_string(),
            values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            violation,
            tolerance,
            counted,
        });
    }
}

/// The built-in map families, with the data needed to build their free operations.
#[derive(Debug, Clone)]
pub enum Family {
    Dephasing,
    Lueders(MeasurementPartition),
    Modified(MeasurementPartition),
    CyclicTwirl(Vec<ComplexMatrix>),
    Mixing,
}

/// A built-in map together with its family.
#[derive(Debug, Clone)]
pub struct FamilyMap {
    pub family: Family,
    pub map: ResourceDestroyingMap,
}

impl FamilyMap {
    pub fn label(&self) -> &str {
        self.map.label()
    }
}

/// Dephasing, a random coarse Lüders/modified pair, the cyclic twirl and complete mixing.
pub fn built_in_maps<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Vec<FamilyMap>> {
    let partition = MeasurementPartition::random(d, true, rng);
    let group = cyclic_group(d);
    Ok(vec![
        FamilyMap { family: Family::Dephasing, map: dephasing(d)? },
        FamilyMap { map: lueders_map(&partition)?, family: Family::Lueders(partition.clone()) },
        FamilyMap { map: modified_coarse_map(&partition)?, family: Family::Modified(partition) },
        FamilyMap { map: twirling_map(&group)?.with_label(format!("cyclic_twirl(d={d})")), family: Family::CyclicTwirl(group) },
        FamilyMap { family: Family::Mixing, map: mixing_map(d)? },
    ])
}

fn diagonal_phases<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn random_permutation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    crate::linalg::permutation_matrix(&perm)
}

fn block_unitary<R: Rng + ?Sized>(partition: &MeasurementPartition, rng: &mut R) -> ComplexMatrix {
    let d = partition.dim();
    let mut u = ComplexMatrix::zeros(d, d);
    for block in partition.blocks() {
        let local = random_unitary_with(block.len(), rng);
        for (a, &i) in block.iter().enumerate() {
            for (b, &j) in block.iter().enumerate() {
                u[(i, j)] = local[(a, b)];
            }
        }
    }
    u
}

impl Family {
    /// A random unitary that maps the free set onto itself and commutes with the map.
    pub fn free_unitary<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> ComplexMatrix {
        match self {
            Family::Dephasing => random_permutation(d, rng) * diagonal_phases(d, rng),
            Family::Lueders(p) | Family::Modified(p) => block_unitary(p, rng),
            Family::CyclicTwirl(group) => group[rng.gen_range(0..group.len())].clone(),
            Family::Mixing => random_unitary_with(d, rng),
        }
    }

    /// Kraus operators of a random free instrument with `outcomes` outcomes.
    ///
    /// Dephasing: `P_π D` with diagonal `D` (incoherent permutation instruments). Lüders and
    /// modified: block unitaries times block-scalar weights. Twirl and mixing: random
    /// mixtures of free unitaries.
    pub fn free_instrument<R: Rng + ?Sized>(&self, d: usize, outcomes: usize, rng: &mut R) -> Vec<ComplexMatrix> {
        let weights = |groups: usize, rng: &mut R| -> Vec<Vec<Complex64>> {
            let mut w: Vec<Vec<Complex64>> = (0..outcomes)
                .map(|_| (0..groups).map(|_| crate::linalg::complex_gaussian(rng)).collect())
                .collect();
            for g in 0..groups {
                let norm = (0..outcomes).map(|i| w[i][g].norm_sqr()).sum::<f64>().sqrt();
                for row in w.iter_mut() {
                    row[g] /= norm;
                }
            }
            w
        };
        match self {
            Family::Dephasing => weights(d, rng)
                .into_iter()
                .map(|c| {
                    let diag = ComplexMatrix::from_fn(d, d, |i, j| if i == j { c[i] } else { Complex64::new(0.0, 0.0) });
                    random_permutation(d, rng) * diag
                })
                .collect(),
            Family::Lueders(p) | Family::Modified(p) => {
                let projectors = p.block_projectors();
                weights(projectors.len(), rng)
                    .into_iter()
                    .map(|c| {
                        let scalar = projectors
                            .iter()
                            .zip(&c)
                            .fold(ComplexMatrix::zeros(d, d), |acc, (l, &cj)| acc + l * cj);
                        block_unitary(p, rng) * scalar
                    })
                    .collect()
            }
            Family::CyclicTwirl(_) | Family::Mixing => {
                let probs = weights(1, rng);
                probs.into_iter().map(|c| self.free_unitary(d, rng) * Complex64::new(c[0].norm(), 0.0)).collect()
            }
        }
    }
}

fn measure(rho: &DensityMatrix, map: &ResourceDestroyingMap, a: TsallisOrder) -> Result<f64> {
    Ok(closed_form_measure(rho, map, a)?.value)
}

fn random_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    random_density_matrix_with(d, d, rng)
}

/// Closed form against the brute-force oracle, plus minimizer admissibility.
pub fn suite_theorem1(config: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    config.check_dims(2..=4)?;
    let orders = config.orders()?;
    let mut rec = Recorder::new();
    for trial in 0..config.trials {
        let (seed, mut rng) = config.trial_rng(trial);
        rec.start(trial, seed);
        let oracle = config.oracle.clone().with_seed(seed);
        for &d in &config.dims {
            let random = random_state(d, &mut rng)?;
            for fm in built_in_maps(d, &mut rng)? {
                let fixed = config.is_fixed_point_trial(trial);
                let rho = if fixed { fm.map.apply(&random)? } else { random.clone() };
                for &a in &orders {
                    let report = closed_form_measure(&rho, &fm.map, a)?;
                    let found = minimize_over_free_states(&rho, &fm.map, a, &oracle)?;
                    let values = [("closed_form", report.value), ("oracle", found.value), ("restarts_agreeing", found.restarts_agreeing as f64)];
                    let label = fm.label();
                    rec.push(d, Some(a), label, "oracle_gap", &values, found.gap_to_closed_form.abs(), config.tol(ORACLE_GAP_TOL), true);
                    rec.push(d, Some(a), label, "oracle_lower_bound", &values, -found.gap_to_closed_form, ORACLE_UNDERCUT_TOL, true);
                    let admissible = validate_density(report.sigma_star.matrix().clone()).is_ok();
                    let residual = if admissible { report.fixed_point_residual } else { f64::INFINITY };
                    rec.push(d, Some(a), label, "minimizer", &[("fixed_point_residual", report.fixed_point_residual)], residual, MINIMIZER_TOL, true);
                    let full_rank = report.sigma_star.eigensystem().min_eigenvalue() > 1e-8;
                    if full_rank && found.gap_to_closed_form.abs() <= 1e-6 {
                        let distance = (found.sigma_min.matrix() - report.sigma_star.matrix()).norm();
                        rec.push(d, Some(a), label, "minimizer_distance", &[], distance, MINIMIZER_DISTANCE_TOL, true);
                    }
                    if fixed {
                        let worst = report.value.abs().max(found.value);
                        rec.push(d, Some(a), label, "fixed_point_value", &values, worst, FIXED_POINT_VALUE_TOL, true);
                    }
                }
            }
        }
    }
    Ok(SuiteReport::from_records("theorem1", config.trials, rec.records, Vec::new(), started))
}

/// Faithfulness, free-unitary invariance, convexity and monotonicity under free operations.
///
/// Strong monotonicity (average over instrument outcomes) is recorded but not counted.
pub fn suite_axioms(config: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    config.check_dims(2..=6)?;
    let orders = config.orders()?;
    let mut rec = Recorder::new();
    let mut strong_violations = 0usize;
    let mut strong_worst = f64::NEG_INFINITY;
    let tol = config.tol(PROPERTY_TOL);
    for trial in 0..config.trials {
        let (seed, mut rng) = config.trial_rng(trial);
        rec.start(trial, seed);
        let d = config.dims[trial % config.dims.len()];
        let rho = random_state(d, &mut rng)?;
        let other = random_state(d, &mut rng)?;
        let p: f64 = rng.gen();
        let mixture = DensityMatrix::mix(p, &rho, &other)?;
        for fm in built_in_maps(d, &mut rng)? {
            let label = fm.label().to_string();
            let free = fm.map.apply(&other)?;
            let unitaries: Vec<ComplexMatrix> = match &fm.family {
                Family::CyclicTwirl(group) => group.clone(),
                family => vec![family.free_unitary(d, &mut rng)],
            };
            let rotated: Vec<DensityMatrix> = unitaries.iter().map(|u| rho.conjugate(u)).collect::<Result<_>>()?;
            let kraus = fm.family.free_instrument(d, 3, &mut rng);
            let instrument = QuantumChannel::from_kraus(d, kraus.clone())?;
            let processed = instrument.apply(&rho)?;
            let branches: Vec<(f64, DensityMatrix)> = kraus
                .iter()
                .filter_map(|k| {
                    let out = k * rho.matrix() * k.adjoint();
                    let prob = crate::linalg::trace(&out).re;
                    (prob > 1e-14).then(|| (prob, DensityMatrix::from_trusted(out.unscale(prob))))
                })
                .collect();
            let dephased = fm.map.apply(&rho)?;
            for &a in &orders {
                let mu = measure(&rho, &fm.map, a)?;
                rec.push(d, Some(a), &label, "nonnegativity", &[("value", mu)], -mu, NONNEGATIVITY_TOL, true);

                let mu_free = measure(&free, &fm.map, a)?;
                rec.push(d, Some(a), &label, "faithfulness", &[("value", mu_free)], mu_free.abs(), tol, true);

                for r in &rotated {
                    let mu_rot = measure(r, &fm.map, a)?;
                    let values = [("value", mu), ("rotated", mu_rot)];
                    rec.push(d, Some(a), &label, "unitary_invariance", &values, (mu_rot - mu).abs(), tol, true);
                    rec.push(d, Some(a), &label, "monotonicity_unitary", &values, mu_rot - mu, tol, true);
                }

                let mu_1 = mu;
                let mu_2 = measure(&other, &fm.map, a)?;
                let mu_mix = measure(&mixture, &fm.map, a)?;
                let bound = p * mu_1 + (1.0 - p) * mu_2;
                rec.push(d, Some(a), &label, "convexity", &[("p", p), ("mixture", mu_mix), ("bound", bound)], mu_mix - bound, tol, true);

                let mu_destroyed = measure(&dephased, &fm.map, a)?;
                rec.push(d, Some(a), &label, "monotonicity_map", &[("value", mu), ("after", mu_destroyed)], mu_destroyed - mu, tol, true);

                let mu_processed = measure(&processed, &fm.map, a)?;
                rec.push(d, Some(a), &label, "monotonicity_instrument", &[("value", mu), ("after", mu_processed)], mu_processed - mu, tol, true);

                let average = branches
                    .iter()
                    .map(|(prob, state)| measure(state, &fm.map, a).map(|m| prob * m))
                    .sum::<Result<f64>>()?;
                let excess = average - mu;
                if excess > tol {
                    strong_violations += 1;
                }
                strong_worst = strong_worst.max(excess);
                rec.push(d, Some(a), &label, "strong_monotonicity", &[("value", mu), ("average", average)], excess, tol, false);
            }
        }
    }
    let summary = vec![
        ("strong_monotonicity_violations".to_string(), strong_violations as f64),
        ("strong_monotonicity_worst_excess".to_string(), strong_worst),
    ];
    Ok(SuiteReport::from_records("axioms", config.trials, rec.records, summary, started))
}

/// Fine-grained versus modified coarse-grained measures, and the composition identities.
pub fn suite_theorem2(config: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    config.check_dims(3..=6)?;
    let orders = config.orders()?;
    let mut rec = Recorder::new();
    let mut min_gap = f64::INFINITY;
    for trial in 0..config.trials {
        let (seed, mut rng) = config.trial_rng(trial);
        rec.start(trial, seed);
        for &d in &config.dims {
            let rho = random_state(d, &mut rng)?;
            let partition = MeasurementPartition::random(d, true, &mut rng);
            let fine = dephasing(d)?;
            let coarse = modified_coarse_map(&partition)?;
            let label = coarse.label().to_string();
            let outer = fine.channel().compose(coarse.channel())?.distance(coarse.channel());
            let inner = coarse.channel().compose(fine.channel())?.distance(coarse.channel());
            rec.push(d, None, &label, "compose_fine_after_modified", &[], outer, SUPEROPERATOR_TOL, true);
            rec.push(d, None, &label, "compose_modified_after_fine", &[], inner, SUPEROPERATOR_TOL, true);
            for &a in &orders {
                let mu_fine = measure(&rho, &fine, a)?;
                let mu_coarse = measure(&rho, &coarse, a)?;
                min_gap = min_gap.min(mu_coarse - mu_fine);
                let values = [("fine", mu_fine), ("modified", mu_coarse)];
                rec.push(d, Some(a), &label, "ordering", &values, mu_fine - mu_coarse, config.tol(PROPERTY_TOL), true);
            }
        }
    }
    let summary = vec![("min_gap_modified_minus_fine".to_string(), min_gap)];
    Ok(SuiteReport::from_records("theorem2", config.trials, rec.records, summary, started))
}

/// `S̃_a(ρ|Π(ρ)) >= S̃_a(ρ|Π̄(ρ))` for fine `Π` and Lüders `Π̄`; counted at `a = 1` only.
pub fn suite_piani_demo(config: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    config.check_dims(2..=6)?;
    let orders = config.orders()?;
    let mut rec = Recorder::new();
    let mut summary = Vec::new();
    let mut reversed = vec![0usize; orders.len()];
    for trial in 0..config.trials {
        let (seed, mut rng) = config.trial_rng(trial);
        rec.start(trial, seed);
        for &d in &config.dims {
            let rho = random_state(d, &mut rng)?;
            let partition = MeasurementPartition::random(d, true, &mut rng);
            let fine = dephasing(d)?;
            let coarse = lueders_map(&partition)?;
            let rho = if config.is_fixed_point_trial(trial) { fine.apply(&rho)? } else { rho };
            let fine_state = fine.apply(&rho)?;
            let coarse_state = coarse.apply(&rho)?;
            for (k, &a) in orders.iter().enumerate() {
                let to_fine = tsallis_relative_entropy(&rho, &fine_state, a)?;
                let to_coarse = tsallis_relative_entropy(&rho, &coarse_state, a)?;
                let excess = to_coarse - to_fine;
                if excess > PROPERTY_TOL {
                    reversed[k] += 1;
                }
                let values = [("to_fine", to_fine), ("to_lueders", to_coarse)];
                rec.push(d, Some(a), coarse.label(), "fine_at_least_coarse", &values, excess, config.tol(PROPERTY_TOL), a.is_entropy_branch());
            }
        }
    }
    for (a, count) in orders.iter().zip(reversed) {
        summary.push((format!("reversed_at_a={a}"), count as f64));
    }
    Ok(SuiteReport::from_records("piani", config.trials, rec.records, summary, started))
}

/// `|μ_{1±δ}(ρ) - μ_1(ρ)|` for every built-in map.
pub fn suite_continuity_a1(config: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    config.check_dims(2..=6)?;
    let below = TsallisOrder::new(1.0 - CONTINUITY_STEP)?;
    let above = TsallisOrder::new(1.0 + CONTINUITY_STEP)?;
    let mut rec = Recorder::new();
    for trial in 0..config.trials {
        let (seed, mut rng) = config.trial_rng(trial);
        rec.start(trial, seed);
        let d = config.dims[trial % config.dims.len()];
        let random = random_state(d, &mut rng)?;
        for fm in built_in_maps(d, &mut rng)? {
            let fixed = config.is_fixed_point_trial(trial);
            let rho = if fixed { fm.map.apply(&random)? } else { random.clone() };
            let centre = measure(&rho, &fm.map, TsallisOrder::ENTROPY)?;
            let lo = measure(&rho, &fm.map, below)?;
            let hi = measure(&rho, &fm.map, above)?;
            let values = [("below", lo), ("at_one", centre), ("above", hi)];
            let spread = (lo - centre).abs().max((hi - centre).abs());
            rec.push(d, None, fm.label(), "continuity", &values, spread, config.tol(CONTINUITY_TOL), true);
            if fixed {
                let worst = lo.abs().max(centre.abs()).max(hi.abs());
                rec.push(d, None, fm.label(), "fixed_point_value", &values, worst, FIXED_POINT_VALUE_TOL, true);
            }
        }
    }
    Ok(SuiteReport::from_records("continuity", config.trials, rec.records, Vec::new(), started))
}

/// Adjoint pairing, `Fix(E†) ⊇ Im(E)`, closure of fixed points under powers, and
/// `Im(Π̃) ⊆ Im(Π)`, over random Hermitian pairs and states.
pub fn suite_adjoint(config: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    config.check_dims(2..=6)?;
    let mut rec = Recorder::new();
    for trial in 0..config.trials {
        let (seed, mut rng) = config.trial_rng(trial);
        rec.start(trial, seed);
        for &d in &config.dims {
            let x = random_hermitian_with(d, &mut rng);
            let y = random_hermitian_with(d, &mut rng);
            let tau = random_state(d, &mut rng)?;
            for fm in built_in_maps(d, &mut rng)? {
                let label = fm.label();
                let adjoint = fm.map.adjoint();
                let lhs = trace_product_re(&adjoint.apply_matrix(&x)?, &y);
                let rhs = trace_product_re(&x, &fm.map.apply_matrix(&y)?);
                let pairing = (lhs - rhs).abs() / (x.norm() * y.norm());
                rec.push(d, None, label, "adjoint_pairing", &[("lhs", lhs), ("rhs", rhs)], pairing, config.tol(PAIRING_TOL), true);

                let sigma = fm.map.apply(&tau)?;
                let duality = (adjoint.apply_matrix(sigma.matrix())? - sigma.matrix()).norm();
                rec.push(d, None, label, "adjoint_fixed_point", &[], duality, DUALITY_TOL, true);

                for p in [0.5, 2.0] {
                    let f_sigma = matrix_power(sigma.matrix(), p)?;
                    let closure = fm.map.fixed_point_residual(&f_sigma)?;
                    rec.push(d, None, label, "power_closure", &[("p", p)], closure, DUALITY_TOL, true);
                }

                if let Family::Modified(_) = fm.family {
                    let fine = dephasing(d)?;
                    let image = fm.map.apply(&tau)?;
                    let inclusion = (fine.apply(&image)?.matrix() - image.matrix()).norm();
                    rec.push(d, None, label, "image_inclusion", &[], inclusion, SUPEROPERATOR_TOL, true);
                }
            }
        }
    }
    Ok(SuiteReport::from_records("adjoint", config.trials, rec.records, Vec::new(), started))
}

/// Residuals of the decomposition around the minimizer on random `(ρ, σ ∈ Fix(E), a ≠ 1)`.
///
/// `identity` uses the trace-weighted split and is counted; the unweighted split is kept as
/// data under `unweighted`.
pub fn decomposition_checks(config: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    config.check_dims(2..=6)?;
    let orders: Vec<TsallisOrder> = config.orders()?.into_iter().filter(|a| !a.is_entropy_branch()).collect();
    if orders.is_empty() {
        return Err(Error::InvalidOrder(1.0));
    }
    let mut rec = Recorder::new();
    for trial in 0..config.trials {
        let (seed, mut rng) = config.trial_rng(trial);
        rec.start(trial, seed);
        let d = config.dims[trial % config.dims.len()];
        let a = orders[trial % orders.len()];
        let rho = random_state(d, &mut rng)?;
        let maps = built_in_maps(d, &mut rng)?;
        let fm = &maps[rng.gen_range(0..maps.len())];
        let sigma = fm.map.apply(&random_state(d, &mut rng)?)?;
        let terms = decomposition_terms(&rho, &sigma, &fm.map, a)?;
        let values = [
            ("divergence", terms.divergence),
            ("offset", terms.offset),
            ("N", terms.trace_term),
            ("remainder", terms.remainder),
        ];
        rec.push(d, Some(a), fm.label(), "identity", &values, terms.residual(), config.tol(PROPERTY_TOL), true);
        rec.push(d, Some(a), fm.label(), "unweighted", &values, terms.unweighted_residual(), PROPERTY_TOL, false);
    }
    Ok(SuiteReport::from_records("decomposition", config.trials, rec.records, Vec::new(), started))
}

/// Runs a suite by name.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "theorem1" => suite_theorem1(config),
        "axioms" => suite_axioms(config),
        "theorem2" => suite_theorem2(config),
        "piani" => suite_piani_demo(config),
        "continuity" => suite_continuity_a1(config),
        "adjoint" => suite_adjoint(config),
        "decomposition" => decomposition_checks(config),
        other => Err(Error::Parse(format!("unknown suite {other:?}"))),
    }
}
