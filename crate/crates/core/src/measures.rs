//! Tsallis relative entropy and the optimization-free resource measure.
//!
//! For an idempotent unital map `E` and order `a ≠ 1` the distance from `ρ` to the
//! fixed points of `E` is `(N - 1)/(a - 1)` with `N = Tr E(ρ^a)^{1/a}`, attained at
//! `σ* = E(ρ^a)^{1/a} / N`. At `a = 1` it is `S(E(ρ)) - S(ρ)`, attained at `E(ρ)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channels::ResourceDestroyingMap;
use crate::error::{Error, Result};
use crate::linalg::{
    eig_symmetrized, hermitize, spectral_power, trace, trace_product_re, ComplexMatrix, DensityMatrix,
    HermitianEigensystem, ENTROPY_CUTOFF,
};

/// Weight of `ρ` outside `supp(σ)` above which the divergence is `+∞`.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Allowed `||E(σ*) - σ*||_F` for a reported minimizer.
pub const MINIMIZER_TOL: f64 = 1e-9;
/// Allowed `||E(σ) - σ||_F` for a fixed point passed in by a caller.
pub const FIXED_POINT_TOL: f64 = 1e-8;

/// Orders sampled by default: both branches and the endpoint `a = 2`.
pub const DEFAULT_A_GRID: [f64; 7] = [0.3, 0.5, 0.8, 1.0, 1.2, 1.5, 2.0];

/// Tsallis order `a ∈ (0, 2]`; exactly `1.0` selects the relative-entropy branch.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct TsallisOrder(f64);

impl TsallisOrder {
    pub const ENTROPY: TsallisOrder = TsallisOrder(1.0);

    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 && a <= 2.0 {
            Ok(TsallisOrder(a))
        } else {
            Err(Error::InvalidOrder(a))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_entropy_branch(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for TsallisOrder {
    type Error = Error;

    fn try_from(a: f64) -> Result<Self> {
        TsallisOrder::new(a)
    }
}

impl From<TsallisOrder> for f64 {
    fn from(a: TsallisOrder) -> f64 {
        a.0
    }
}

impl fmt::Display for TsallisOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `-Σ λ ln λ` over eigenvalues above `1e-12`, in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigensystem().eigenvalues)
}

fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    -eigenvalues
        .iter()
        .filter(|&&l| l > ENTROPY_CUTOFF)
        .map(|&l| l * l.ln())
        .sum::<f64>()
}

/// `S̃_a(ρ | ·)` with everything that depends only on `ρ` precomputed.
#[derive(Debug, Clone)]
pub struct DivergenceFrom {
    a: TsallisOrder,
    rho: ComplexMatrix,
    /// `ρ^a`, or `ρ` itself on the entropy branch.
    rho_power: ComplexMatrix,
    neg_entropy: f64,
}

impl DivergenceFrom {
    pub fn new(rho: &DensityMatrix, a: TsallisOrder) -> Self {
        let eig = rho.eigensystem();
        let cut = eig.support_threshold();
        let rho_power = if a.is_entropy_branch() {
            rho.matrix().clone()
        } else {
            eig.map_eigenvalues(|l| spectral_power(l, a.value(), cut))
        };
        DivergenceFrom {
            a,
            rho: rho.matrix().clone(),
            rho_power,
            neg_entropy: -entropy_of_spectrum(&eig.eigenvalues),
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    /// `S̃_a(ρ|σ)` for a state `σ` given as a raw matrix of matching dimension.
    pub fn evaluate(&self, sigma: &ComplexMatrix) -> f64 {
        self.evaluate_eig(&eig_symmetrized(sigma))
    }

    pub(crate) fn evaluate_eig(&self, sigma: &HermitianEigensystem) -> f64 {
        let a = self.a.value();
        let cut = sigma.support_threshold();
        if a >= 1.0 && sigma.eigenvalues.iter().any(|&l| l <= cut) {
            let outside = trace_product_re(&self.rho, &sigma.kernel_projector());
            if outside > SUPPORT_TOL {
                return f64::INFINITY;
            }
        }
        if self.a.is_entropy_branch() {
            let log_sigma = sigma.map_eigenvalues(|l| if l > cut && l > 0.0 { l.ln() } else { 0.0 });
            return self.neg_entropy - trace_product_re(&self.rho, &log_sigma);
        }
        let sigma_power = sigma.map_eigenvalues(|l| spectral_power(l, 1.0 - a, cut));
        let overlap = trace_product_re(&self.rho_power, &sigma_power).max(0.0);
        (overlap.powf(1.0 / a) - 1.0) / (a - 1.0)
    }
}

/// Tsallis relative entropy `S̃_a(ρ|σ)`; `+∞` when `supp ρ ⊄ supp σ` and `a >= 1`.
pub fn tsallis_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix, a: TsallisOrder) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    Ok(DivergenceFrom::new(rho, a).evaluate(sigma.matrix()))
}

/// Value and minimizer of the closed-form measure.
#[derive(Debug, Clone)]
pub struct MeasureReport {
    pub a: TsallisOrder,
    /// Nats on the entropy branch, dimensionless otherwise.
    pub value: f64,
    /// `N = Tr E(ρ^a)^{1/a}`; `Tr E(ρ) = 1` on the entropy branch.
    pub trace_term: f64,
    pub sigma_star: DensityMatrix,
    /// `||E(σ*) - σ*||_F`.
    pub fixed_point_residual: f64,
}

/// Closed-form distance of `ρ` to `Fix(E)` and the state that attains it.
pub fn closed_form_measure(
    rho: &DensityMatrix,
    map: &ResourceDestroyingMap,
    a: TsallisOrder,
) -> Result<MeasureReport> {
    if rho.dim() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            found: rho.dim(),
        });
    }
    let (value, trace_term, sigma) = if a.is_entropy_branch() {
        let dephased = map.apply(rho)?;
        let value = von_neumann_entropy(&dephased) - von_neumann_entropy(rho);
        (value, trace(dephased.matrix()).re, dephased.into_matrix())
    } else {
        let eig = rho.eigensystem();
        let cut = eig.support_threshold();
        let rho_power = eig.map_eigenvalues(|l| spectral_power(l, a.value(), cut));
        let image = hermitize(&map.apply_matrix(&rho_power)?);
        let image_eig = eig_symmetrized(&image);
        let image_cut = image_eig.support_threshold();
        let root = image_eig.map_eigenvalues(|l| spectral_power(l, 1.0 / a.value(), image_cut));
        let n = trace(&root).re;
        let value = (n - 1.0) / (a.value() - 1.0);
        (value, n, root.unscale(n))
    };
    let sigma_star = DensityMatrix::from_trusted(sigma);
    let fixed_point_residual = map.fixed_point_residual(sigma_star.matrix())?;
    Ok(MeasureReport {
        a,
        value,
        trace_term,
        sigma_star,
        fixed_point_residual,
    })
}

/// The pieces of the decomposition of `S̃_a(ρ|σ)` around the minimizer, for `σ ∈ Fix(E)`.
#[derive(Debug, Clone, Copy)]
pub struct DecompositionTerms {
    /// `S̃_a(ρ|σ)`.
    pub divergence: f64,
    /// `(N - 1)/(a - 1)`, the closed-form value.
    pub offset: f64,
    /// `N`.
    pub trace_term: f64,
    /// `S̃_a(σ*|σ)`.
    pub remainder: f64,
}

impl DecompositionTerms {
    /// `|S̃_a(ρ|σ) - (N-1)/(a-1) - N S̃_a(σ*|σ)|`, zero up to round-off.
    pub fn residual(&self) -> f64 {
        (self.divergence - self.offset - self.trace_term * self.remainder).abs()
    }

    /// Discrepancy of the same split without the weight `N` on the remainder.
    ///
    /// Equals `|(N - 1)(T - 1)/(a - 1)|` with `T = (Tr σ*^a σ^{1-a})^{1/a}`, so it vanishes
    /// only when `σ = σ*` or `N = 1`.
    pub fn unweighted_residual(&self) -> f64 {
        (self.divergence - self.offset - self.remainder).abs()
    }
}

/// Evaluates both sides of the decomposition independently.
pub fn decomposition_terms(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    map: &ResourceDestroyingMap,
    a: TsallisOrder,
) -> Result<DecompositionTerms> {
    if a.is_entropy_branch() {
        return Err(Error::InvalidOrder(a.value()));
    }
    let residual = map.fixed_point_residual(sigma.matrix())?;
    if residual > FIXED_POINT_TOL {
        return Err(Error::NotFixedPoint { residual });
    }
    let report = closed_form_measure(rho, map, a)?;
    let divergence = tsallis_relative_entropy(rho, sigma, a)?;
    let remainder = tsallis_relative_entropy(&report.sigma_star, sigma, a)?;
    if !divergence.is_finite() || !remainder.is_finite() {
        return Err(Error::InfiniteValue(format!(
            "S(rho|sigma) = {divergence}, S(sigma*|sigma) = {remainder}"
        )));
    }
    Ok(DecompositionTerms {
        divergence,
        offset: report.value,
        trace_term: report.trace_term,
        remainder,
    })
}

/// Residual of `S̃_a(ρ|σ) = (N-1)/(a-1) + N S̃_a(σ*|σ)` for `σ ∈ Fix(E)`, `a ≠ 1`.
pub fn decomposition_identity_residual(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    map: &ResourceDestroyingMap,
    a: TsallisOrder,
) -> Result<f64> {
    Ok(decomposition_terms(rho, sigma, map, a)?.residual())
}
