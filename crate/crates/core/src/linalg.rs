//! Dense complex linear algebra for small Hermitian operators.
//!
//! Everything here works on `d x d` matrices with `d` at most a few dozen. Matrix
//! functions go through the spectral decomposition `M = V diag(λ) V†`, with the
//! eigenvalues clipped or support-restricted as described on each function.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;

/// Allowed `||M - M†||_F`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_TOL, 0)` are round-off and get clipped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Allowed `|Tr M - 1|` for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues at or below `SUPPORT_CUTOFF * λ_max` are outside the support.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Eigenvalues counted by the von Neumann entropy must exceed this.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

/// `diag(values)` as a complex matrix.
pub fn real_diagonal(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| Complex64::new(v, 0.0)),
    ))
}

/// Builds a complex matrix from real row-major rows.
pub fn from_real_rows(rows: &[&[f64]]) -> ComplexMatrix {
    let d = rows.len();
    ComplexMatrix::from_fn(d, rows.first().map_or(0, |r| r.len()), |i, j| {
        Complex64::new(rows[i][j], 0.0)
    })
}

/// `|e_i⟩⟨e_j|` in dimension `d`.
pub fn matrix_unit(d: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(i, j)] = ONE;
    m
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Real part of `Tr(A B)` without forming the product.
pub fn trace_product_re(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let d = a.nrows();
    let mut acc = 0.0;
    for i in 0..d {
        for k in 0..d {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

pub fn frobenius(m: &ComplexMatrix) -> f64 {
    m.norm()
}

pub fn hermitian_residual(m: &ComplexMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

/// `(M + M†) / 2`.
pub fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn check_square_finite(m: &ComplexMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigensystem {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigensystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `V diag(f(λ)) V†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(d, d);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for j in 0..d {
                let vjk = v[(j, k)].conj() * w;
                for i in 0..d {
                    out[(i, j)] += v[(i, k)] * vjk;
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|l| l)
    }

    /// Support threshold `SUPPORT_CUTOFF * λ_max`; zero for the null matrix.
    pub fn support_threshold(&self) -> f64 {
        SUPPORT_CUTOFF * self.max_eigenvalue().max(0.0)
    }

    /// Projector onto the eigenvectors outside the support.
    pub fn kernel_projector(&self) -> ComplexMatrix {
        let cut = self.support_threshold();
        self.map_eigenvalues(|l| if l <= cut { 1.0 } else { 0.0 })
    }
}

/// Eigendecomposition without the Hermiticity check. The input is symmetrized first.
pub(crate) fn eig_symmetrized(m: &ComplexMatrix) -> HermitianEigensystem {
    let h = hermitize(m);
    let d = h.nrows();
    let eig = nalgebra::SymmetricEigen::new(h.clone());
    // nalgebra's complex solver can leave off-diagonal mass near 1e-8 in V†HV; Jacobi
    // sweeps on that nearly diagonal matrix bring it down to rounding.
    let mut v = eig.eigenvectors;
    let mut a = v.adjoint() * &h * &v;
    jacobi_polish(&mut a, &mut v);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(d, d, |i, j| v[(i, order[j])]);
    HermitianEigensystem {
        eigenvalues,
        eigenvectors,
    }
}

/// Cyclic complex Jacobi sweeps on Hermitian `a`, accumulating rotations into `v`.
fn jacobi_polish(a: &mut ComplexMatrix, v: &mut ComplexMatrix) {
    let d = a.nrows();
    let scale = a.norm();
    if scale == 0.0 {
        return;
    }
    for _ in 0..30 {
        let off: f64 = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale {
            return;
        }
        for p in 0..d {
            for q in p + 1..d {
                let r = a[(p, q)].norm();
                if r <= 1e-3 * f64::EPSILON * scale {
                    continue;
                }
                let w = a[(p, q)] / r;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // G acts on (p, q) as [[c, s], [-s w̄, c w̄]]; A <- G† A G, V <- V G.
                let (gpp, gpq) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
                let (gqp, gqq) = (-w.conj() * s, w.conj() * c);
                for k in 0..d {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
                for k in 0..d {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
    }
}

/// Hermitian eigendecomposition with ascending eigenvalues.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<HermitianEigensystem> {
    check_square_finite(m)?;
    let residual = hermitian_residual(m);
    if residual > HERMITIAN_TOL * m.norm().max(1.0) {
        return Err(Error::NonHermitian { residual });
    }
    Ok(eig_symmetrized(m))
}

fn psd_eigensystem(m: &ComplexMatrix) -> Result<HermitianEigensystem> {
    let eig = eig_hermitian(m)?;
    if eig.min_eigenvalue() < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min_eigenvalue(),
        });
    }
    Ok(eig)
}

/// `λ^p` for one eigenvalue of a PSD matrix with the given support threshold.
#[inline]
pub(crate) fn spectral_power(lambda: f64, p: f64, cut: f64) -> f64 {
    if p > 0.0 {
        if lambda <= 0.0 {
            0.0
        } else {
            lambda.powf(p)
        }
    } else if lambda <= cut || lambda <= 0.0 {
        0.0
    } else {
        lambda.powf(p)
    }
}

/// `M^p` of a PSD matrix by spectral calculus.
///
/// Eigenvalues in `[-1e-10, 0)` are clipped to zero. For `p <= 0` the power is the
/// pseudo-power on the support: eigenvalues at or below `1e-12 λ_max` map to zero.
pub fn matrix_power(m: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let eig = psd_eigensystem(m)?;
    let cut = eig.support_threshold();
    Ok(eig.map_eigenvalues(|l| spectral_power(l, p, cut)))
}

/// Spectral logarithm restricted to the support (zero on the kernel).
pub fn matrix_log(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = psd_eigensystem(m)?;
    let cut = eig.support_threshold();
    Ok(eig.map_eigenvalues(|l| if l > cut && l > 0.0 { l.ln() } else { 0.0 }))
}

/// A validated density matrix: Hermitian, PSD and unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Same as [`validate_density`].
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate_density(m)
    }

    /// Wraps a matrix already known to be a state up to round-off.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        DensityMatrix(hermitize(&m))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix(identity(d).unscale(d as f64))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let v = DVector::from_column_slice(psi);
        let norm = v.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NonFinite);
        }
        let v = v.unscale(norm);
        Ok(DensityMatrix(&v * v.adjoint()))
    }

    /// `|+_d⟩⟨+_d|`, every entry `1/d`.
    pub fn uniform_superposition(d: usize) -> Self {
        DensityMatrix(ComplexMatrix::from_element(d, d, Complex64::new(1.0 / d as f64, 0.0)))
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        validate_density(real_diagonal(probabilities))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// `p ρ₁ + (1 - p) ρ₂`.
    pub fn mix(p: f64, first: &DensityMatrix, second: &DensityMatrix) -> Result<Self> {
        if first.dim() != second.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: second.dim(),
            });
        }
        validate_density(first.0.scale(p) + second.0.scale(1.0 - p))
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.nrows(),
            });
        }
        Ok(DensityMatrix::from_trusted(u * &self.0 * u.adjoint()))
    }

    pub fn eigensystem(&self) -> HermitianEigensystem {
        eig_symmetrized(&self.0)
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Checks the three density-matrix invariants and wraps the matrix.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    check_square_finite(&m)?;
    let residual = hermitian_residual(&m);
    if residual > HERMITIAN_TOL {
        return Err(Error::NonHermitian { residual });
    }
    let eig = eig_symmetrized(&m);
    if eig.min_eigenvalue() < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min_eigenvalue(),
        });
    }
    let residual = (trace(&m) - ONE).norm();
    if residual > TRACE_TOL {
        return Err(Error::TraceNotOne { residual });
    }
    Ok(DensityMatrix(hermitize(&m)))
}

/// Complex Gaussian with independent `N(0, 1/2)` real and imaginary parts.
pub(crate) fn complex_gaussian<R: rand::Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub(crate) fn ginibre<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(rows, cols);
    for z in g.iter_mut() {
        *z = complex_gaussian(rng);
    }
    g
}

pub(crate) fn density_from_factor(g: &ComplexMatrix) -> DensityMatrix {
    let w = g * g.adjoint();
    let t = trace(&w).re;
    DensityMatrix::from_trusted(w.unscale(t))
}

/// Seeded random state `G G† / Tr(G G†)` with `G` a `d x rank` Ginibre matrix.
pub fn random_density_matrix(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    random_density_matrix_with(d, rank, &mut rng)
}

pub fn random_density_matrix_with<R: rand::Rng + ?Sized>(
    d: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if d == 0 || rank == 0 || rank > d {
        return Err(Error::BadRank { rank, dim: d });
    }
    Ok(density_from_factor(&ginibre(d, rank, rng)))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary_with<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let qr = ginibre(d, d, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { ONE };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random Hermitian matrix with Gaussian entries (GUE-like, unnormalized).
pub fn random_hermitian_with<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    hermitize(&ginibre(d, d, rng))
}

/// `||U† U - I||_F`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    (u.adjoint() * u - identity(u.nrows())).norm()
}

/// Cyclic shift `|k⟩ ↦ |k+1 mod d⟩`.
pub fn cyclic_shift(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| if i == (j + 1) % d { ONE } else { ZERO })
}

/// Permutation matrix sending `|k⟩` to `|perm[k]⟩`.
pub fn permutation_matrix(perm: &[usize]) -> ComplexMatrix {
    let d = perm.len();
    let mut m = ComplexMatrix::zeros(d, d);
    for (k, &target) in perm.iter().enumerate() {
        m[(target, k)] = ONE;
    }
    m
}
