//! Completely positive maps, their adjoints, and the resource-destroying maps built from
//! projective measurements, finite-group twirls and complete mixing.
//!
//! Superoperators act on column-major vectorized operators: `vec(X)[i + d j] = X[i, j]`,
//! so the Kraus form `Σ K X K†` becomes `Σ conj(K) ⊗ K`. Map equality is always decided on
//! the superoperator, never on Kraus operators.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    self, identity, matrix_unit, unitarity_residual, validate_density, ComplexMatrix, DensityMatrix, ONE,
};

/// Allowed `||Σ K†K - I||_F`.
pub const TRACE_PRESERVING_TOL: f64 = 1e-10;
/// Allowed `||S² - S||_F`; looser than entrywise checks because squaring compounds round-off.
pub const IDEMPOTENCY_TOL: f64 = 1e-9;
/// Allowed `||E(I) - I||_F`.
pub const UNITALITY_TOL: f64 = 1e-10;
/// Allowed elementwise unitarity residual of twirling unitaries.
pub const UNITARY_TOL: f64 = 1e-10;
/// Allowed residual for group closure under products and inverses.
pub const GROUP_TOL: f64 = 1e-9;

/// Column-major vectorization.
pub fn vectorize(m: &ComplexMatrix) -> nalgebra::DVector<Complex64> {
    nalgebra::DVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &nalgebra::DVector<Complex64>, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(d, d, v.as_slice())
}

/// Superoperator of `X ↦ Σ K X K†`.
pub fn kraus_superoperator(d: usize, kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(d * d, d * d);
    for k in kraus {
        s += k.conjugate().kronecker(k);
    }
    s
}

/// A linear map on `d x d` operators, held as a superoperator and optionally a Kraus list.
///
/// This is the general carrier for adjoints, which are unital but need not preserve trace.
#[derive(Debug, Clone)]
pub struct LinearMap {
    dim: usize,
    kraus: Option<Vec<ComplexMatrix>>,
    superop: ComplexMatrix,
}

impl LinearMap {
    pub fn from_kraus(dim: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension("dimension must be positive".into()));
        }
        if kraus.is_empty() {
            return Err(Error::BadDimension("empty Kraus list".into()));
        }
        for k in &kraus {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if k.nrows() != dim { k.nrows() } else { k.ncols() },
                });
            }
            if k.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let superop = kraus_superoperator(dim, &kraus);
        Ok(LinearMap {
            dim,
            kraus: Some(kraus),
            superop,
        })
    }

    pub fn from_superoperator(dim: usize, superop: ComplexMatrix) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension("dimension must be positive".into()));
        }
        if superop.nrows() != dim * dim || superop.ncols() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: superop.nrows(),
            });
        }
        if superop.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(LinearMap {
            dim,
            kraus: None,
            superop,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> Option<&[ComplexMatrix]> {
        self.kraus.as_deref()
    }

    pub fn superoperator(&self) -> &ComplexMatrix {
        &self.superop
    }

    /// Applies the map to an arbitrary operator.
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.nrows() != self.dim || x.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.nrows(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &ComplexMatrix) -> ComplexMatrix {
        match &self.kraus {
            Some(kraus) if 2 * kraus.len() <= self.dim => {
                let mut out = ComplexMatrix::zeros(self.dim, self.dim);
                for k in kraus {
                    out += k * x * k.adjoint();
                }
                out
            }
            _ => unvectorize(&(&self.superop * vectorize(x)), self.dim),
        }
    }

    /// The map `X ↦ Σ K† X K`, i.e. the conjugate transpose of the superoperator.
    pub fn adjoint(&self) -> LinearMap {
        LinearMap {
            dim: self.dim,
            kraus: self.kraus.as_ref().map(|ks| ks.iter().map(|k| k.adjoint()).collect()),
            superop: self.superop.adjoint(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let kraus = match (&self.kraus, &other.kraus) {
            (Some(a), Some(b)) => Some(a.iter().flat_map(|ka| b.iter().map(move |kb| ka * kb)).collect()),
            _ => None,
        };
        Ok(LinearMap {
            dim: self.dim,
            kraus,
            superop: &self.superop * &other.superop,
        })
    }

    /// Choi matrix `Σ_ij E_ij ⊗ E(E_ij)`.
    pub fn choi(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut c = ComplexMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let image = self.apply_unchecked(&matrix_unit(d, i, j));
                c.view_mut((i * d, j * d), (d, d)).copy_from(&image);
            }
        }
        c
    }

    /// `||Σ K†K - I||_F`, evaluated through the adjoint as `||E†(I) - I||_F`.
    pub fn trace_preservation_residual(&self) -> f64 {
        (self.adjoint().apply_unchecked(&identity(self.dim)) - identity(self.dim)).norm()
    }

    pub fn unitality_residual(&self) -> f64 {
        (self.apply_unchecked(&identity(self.dim)) - identity(self.dim)).norm()
    }

    pub fn idempotency_residual(&self) -> f64 {
        (&self.superop * &self.superop - &self.superop).norm()
    }

    /// Frobenius distance between superoperators.
    pub fn distance(&self, other: &LinearMap) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        (&self.superop - &other.superop).norm()
    }
}

/// A trace-preserving completely positive map.
#[derive(Debug, Clone)]
pub struct QuantumChannel(LinearMap);

impl QuantumChannel {
    /// Operator-sum form; complete positivity holds by construction.
    pub fn from_kraus(dim: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        Self::from_map(LinearMap::from_kraus(dim, kraus)?)
    }

    /// Superoperator form; complete positivity is checked on the Choi matrix.
    pub fn from_superoperator(dim: usize, superop: ComplexMatrix) -> Result<Self> {
        let map = LinearMap::from_superoperator(dim, superop)?;
        let choi = map.choi();
        let min = linalg::eig_hermitian(&choi)
            .map_err(|_| Error::NotCompletelyPositive {
                min_eigenvalue: f64::NAN,
            })?
            .min_eigenvalue();
        if min < -linalg::PSD_TOL * dim as f64 {
            return Err(Error::NotCompletelyPositive { min_eigenvalue: min });
        }
        Self::from_map(map)
    }

    fn from_map(map: LinearMap) -> Result<Self> {
        let residual = map.trace_preservation_residual();
        if residual > TRACE_PRESERVING_TOL {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(QuantumChannel(map))
    }

    pub fn identity(d: usize) -> Self {
        QuantumChannel(LinearMap::from_kraus(d, vec![identity(d)]).expect("identity Kraus operator"))
    }

    /// `ρ ↦ U ρ U†`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let d = u.nrows();
        Self::from_kraus(d, vec![u])
    }

    /// `ρ ↦ (1 - p) ρ + p Tr(ρ) I/d`.
    pub fn depolarizing(d: usize, p: f64) -> Result<Self> {
        let mut kraus = vec![identity(d).scale((1.0 - p).sqrt())];
        let w = (p / d as f64).sqrt();
        for i in 0..d {
            for j in 0..d {
                kraus.push(matrix_unit(d, i, j).scale(w));
            }
        }
        Self::from_kraus(d, kraus)
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn as_map(&self) -> &LinearMap {
        &self.0
    }

    pub fn kraus(&self) -> Option<&[ComplexMatrix]> {
        self.0.kraus()
    }

    pub fn superoperator(&self) -> &ComplexMatrix {
        self.0.superoperator()
    }

    /// `Σ K ρ K†`, re-validated as a density matrix.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.0.apply_matrix(rho.matrix())?;
        validate_density(linalg::hermitize(&out))
    }

    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.0.apply_matrix(x)
    }

    /// Adjoint with respect to `Tr(X Y)`; unital, not necessarily trace preserving.
    pub fn adjoint(&self) -> LinearMap {
        self.0.adjoint()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &QuantumChannel) -> Result<QuantumChannel> {
        Ok(QuantumChannel(self.0.compose(&other.0)?))
    }

    pub fn distance(&self, other: &QuantumChannel) -> f64 {
        self.0.distance(&other.0)
    }
}

/// Free function form of [`QuantumChannel::apply`].
pub fn apply(channel: &QuantumChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    channel.apply(rho)
}

/// Free function form of [`QuantumChannel::adjoint`].
pub fn adjoint(channel: &QuantumChannel) -> LinearMap {
    channel.adjoint()
}

/// Free function form of [`QuantumChannel::compose`]: `a ∘ b`.
pub fn compose(a: &QuantumChannel, b: &QuantumChannel) -> Result<QuantumChannel> {
    a.compose(b)
}

/// A channel certified idempotent and unital. Its image is its fixed-point set.
#[derive(Debug, Clone)]
pub struct ResourceDestroyingMap {
    channel: QuantumChannel,
    label: String,
    idempotency_residual: f64,
    unitality_residual: f64,
}

/// Certifies `E∘E = E` and `E(I) = I` on the superoperator.
pub fn certify_rdm(channel: QuantumChannel) -> Result<ResourceDestroyingMap> {
    let idempotency_residual = channel.0.idempotency_residual();
    if idempotency_residual > IDEMPOTENCY_TOL {
        return Err(Error::NotIdempotent {
            residual: idempotency_residual,
        });
    }
    let unitality_residual = channel.0.unitality_residual();
    if unitality_residual > UNITALITY_TOL {
        return Err(Error::NotUnital {
            residual: unitality_residual,
        });
    }
    Ok(ResourceDestroyingMap {
        channel,
        label: "custom".into(),
        idempotency_residual,
        unitality_residual,
    })
}

impl ResourceDestroyingMap {
    pub fn certify(channel: QuantumChannel) -> Result<Self> {
        certify_rdm(channel)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.channel.dim()
    }

    pub fn channel(&self) -> &QuantumChannel {
        &self.channel
    }

    pub fn idempotency_residual(&self) -> f64 {
        self.idempotency_residual
    }

    pub fn unitality_residual(&self) -> f64 {
        self.unitality_residual
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.channel.apply(rho)
    }

    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.channel.apply_matrix(x)
    }

    pub(crate) fn apply_unchecked(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.channel.0.apply_unchecked(x)
    }

    pub fn adjoint(&self) -> LinearMap {
        self.channel.adjoint()
    }

    /// `||E(X) - X||_F`.
    pub fn fixed_point_residual(&self, x: &ComplexMatrix) -> Result<f64> {
        Ok((self.apply_matrix(x)? - x).norm())
    }

    /// Superoperator distance to another map.
    pub fn distance(&self, other: &ResourceDestroyingMap) -> f64 {
        self.channel.distance(&other.channel)
    }
}

/// A partition of the computational-basis indices `0..d` into blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementPartition {
    dim: usize,
    blocks: Vec<Vec<usize>>,
}

impl MeasurementPartition {
    pub fn new(dim: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPartition("dimension must be positive".into()));
        }
        let mut seen = vec![false; dim];
        for (j, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {j} is empty")));
            }
            for &i in block {
                if i >= dim {
                    return Err(Error::InvalidPartition(format!("index {i} out of range for d = {dim}")));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("index {i} appears twice")));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("index {missing} is not covered")));
        }
        Ok(MeasurementPartition { dim, blocks })
    }

    /// `{{0}, {1}, ..., {d-1}}`.
    pub fn singletons(dim: usize) -> Self {
        MeasurementPartition {
            dim,
            blocks: (0..dim).map(|i| vec![i]).collect(),
        }
    }

    /// `{{0, ..., d-1}}`.
    pub fn single_block(dim: usize) -> Self {
        MeasurementPartition {
            dim,
            blocks: vec![(0..dim).collect()],
        }
    }

    /// Shuffles `0..d` and cuts at uniformly chosen points. With `coarse` set, the
    /// all-singleton partition is rejected and redrawn (requires `d >= 2`).
    pub fn random<R: Rng + ?Sized>(dim: usize, coarse: bool, rng: &mut R) -> Self {
        assert!(dim >= 1 && (!coarse || dim >= 2), "no coarse partition of dimension {dim}");
        loop {
            let mut indices: Vec<usize> = (0..dim).collect();
            indices.shuffle(rng);
            let mut blocks = Vec::new();
            let mut current = vec![indices[0]];
            for &i in &indices[1..] {
                if rng.gen_bool(0.5) {
                    blocks.push(std::mem::take(&mut current));
                }
                current.push(i);
            }
            blocks.push(current);
            let partition = MeasurementPartition { dim, blocks };
            if !coarse || !partition.is_fine_grained() {
                return partition;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `n_j = Tr L_j`.
    pub fn degeneracies(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn is_fine_grained(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// `L_j = Σ_{i ∈ I_j} |i⟩⟨i|`.
    pub fn block_projectors(&self) -> Vec<ComplexMatrix> {
        self.blocks
            .iter()
            .map(|block| {
                let mut l = ComplexMatrix::zeros(self.dim, self.dim);
                for &i in block {
                    l[(i, i)] = ONE;
                }
                l
            })
            .collect()
    }
}

fn certified(kraus: Vec<ComplexMatrix>, d: usize, label: String) -> Result<ResourceDestroyingMap> {
    Ok(certify_rdm(QuantumChannel::from_kraus(d, kraus)?)?.with_label(label))
}

/// Fine-grained projective measurement `ρ ↦ Σ |i⟩⟨i| ρ |i⟩⟨i|`.
pub fn dephasing_map(partition: &MeasurementPartition) -> Result<ResourceDestroyingMap> {
    if let Some((block, b)) = partition.blocks.iter().enumerate().find(|(_, b)| b.len() != 1) {
        return Err(Error::NotFineGrained { block, size: b.len() });
    }
    certified(partition.block_projectors(), partition.dim, format!("dephasing(d={})", partition.dim))
}

/// Dephasing in the computational basis of dimension `d`.
pub fn dephasing(d: usize) -> Result<ResourceDestroyingMap> {
    dephasing_map(&MeasurementPartition::singletons(d))
}

/// Coarse-grained (Lüders) measurement `ρ ↦ Σ_j L_j ρ L_j`.
pub fn lueders_map(partition: &MeasurementPartition) -> Result<ResourceDestroyingMap> {
    certified(partition.block_projectors(), partition.dim, format!("lueders{:?}", partition.blocks))
}

/// Modified coarse-grained estimate `ρ ↦ Σ_j Tr(ρ L_j) L_j / n_j`.
///
/// Kraus operators are `|e_k⟩⟨e_l| / √n_j` for every ordered pair `k, l` in a block.
pub fn modified_coarse_map(partition: &MeasurementPartition) -> Result<ResourceDestroyingMap> {
    let d = partition.dim;
    let mut kraus = Vec::new();
    for block in &partition.blocks {
        let w = 1.0 / (block.len() as f64).sqrt();
        for &k in block {
            for &l in block {
                kraus.push(matrix_unit(d, k, l).scale(w));
            }
        }
    }
    certified(kraus, d, format!("modified{:?}", partition.blocks))
}

/// `ρ ↦ Tr(ρ) I/d`.
pub fn mixing_map(d: usize) -> Result<ResourceDestroyingMap> {
    if d < 2 {
        return Err(Error::BadDimension(format!("mixing map needs d >= 2, got {d}")));
    }
    let partition = MeasurementPartition::single_block(d);
    Ok(modified_coarse_map(&partition)?.with_label(format!("mixing(d={d})")))
}

/// Index of the element equal to `m` up to a global phase, if any.
fn find_up_to_phase(elements: &[ComplexMatrix], m: &ComplexMatrix) -> Option<usize> {
    elements.iter().position(|u| {
        // |Tr(U† M)| = d exactly when M = e^{iφ} U for unitary U, M.
        let overlap: Complex64 = u.iter().zip(m.iter()).map(|(a, b)| a.conj() * b).sum();
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
        (m - u * phase).norm() <= GROUP_TOL
    })
}

/// Finite-group twirl `ρ ↦ (1/|G|) Σ_g U_g ρ U_g†`.
///
/// The unitaries must form a group up to global phases, which is the condition under
/// which the twirl is idempotent.
pub fn twirling_map(unitaries: &[ComplexMatrix]) -> Result<ResourceDestroyingMap> {
    let Some(first) = unitaries.first() else {
        return Err(Error::NotAGroup("empty unitary list".into()));
    };
    let d = first.nrows();
    for (index, u) in unitaries.iter().enumerate() {
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: u.nrows() });
        }
        let residual = unitarity_residual(u);
        if residual > UNITARY_TOL {
            return Err(Error::NotUnitary { index, residual });
        }
    }
    for (g, ug) in unitaries.iter().enumerate() {
        if find_up_to_phase(unitaries, &ug.adjoint()).is_none() {
            return Err(Error::NotAGroup(format!("inverse of element {g} is missing")));
        }
        for (h, uh) in unitaries.iter().enumerate() {
            if find_up_to_phase(unitaries, &(ug * uh)).is_none() {
                return Err(Error::NotAGroup(format!("product of elements {g} and {h} is missing")));
            }
        }
    }
    let w = 1.0 / (unitaries.len() as f64).sqrt();
    let kraus = unitaries.iter().map(|u| u.scale(w)).collect();
    certified(kraus, d, format!("twirl(|G|={}, d={d})", unitaries.len()))
}

/// Powers of the cyclic shift `{I, X, ..., X^{d-1}}`.
pub fn cyclic_group(d: usize) -> Vec<ComplexMatrix> {
    let x = linalg::cyclic_shift(d);
    let mut elements = vec![identity(d)];
    for k in 1..d {
        elements.push(&x * &elements[k - 1]);
    }
    elements
}

/// Twirl over the cyclic shift group of dimension `d`.
pub fn cyclic_twirl(d: usize) -> Result<ResourceDestroyingMap> {
    Ok(twirling_map(&cyclic_group(d))?.with_label(format!("cyclic_twirl(d={d})")))
}

/// Orthonormal Hermitian basis of `d x d` matrices (generalized Gell-Mann plus `I/√d`).
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = vec![identity(d).unscale((d as f64).sqrt())];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..d {
        for j in (i + 1)..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(i, j)] = Complex64::new(s, 0.0);
            sym[(j, i)] = Complex64::new(s, 0.0);
            basis.push(sym);
            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(i, j)] = Complex64::new(0.0, -s);
            anti[(j, i)] = Complex64::new(0.0, s);
            basis.push(anti);
        }
    }
    for k in 1..d {
        let norm = 1.0 / ((k * (k + 1)) as f64).sqrt();
        let mut diag = ComplexMatrix::zeros(d, d);
        for i in 0..k {
            diag[(i, i)] = Complex64::new(norm, 0.0);
        }
        diag[(k, k)] = Complex64::new(-(k as f64) * norm, 0.0);
        basis.push(diag);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_real_rows, real_diagonal, trace_product_re};

    fn pauli_x() -> ComplexMatrix {
        from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn pauli_z() -> ComplexMatrix {
        real_diagonal(&[1.0, -1.0])
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_channel_leaves_state() {
        let rho = linalg::random_density_matrix(3, 3, 1).unwrap();
        let out = QuantumChannel::identity(3).apply(&rho).unwrap();
        assert!(close(out.matrix(), rho.matrix(), 1e-14));
    }

    #[test]
    fn dephasing_erases_coherence() {
        let plus = DensityMatrix::uniform_superposition(2);
        let map = dephasing(2).unwrap();
        assert!(close(map.apply(&plus).unwrap().matrix(), &real_diagonal(&[0.5, 0.5]), 1e-15));
        let kraus = map.channel().kraus().unwrap();
        assert_eq!(kraus.len(), 2);
        assert!(close(&kraus[0], &matrix_unit(2, 0, 0), 0.0));
        assert!(close(&kraus[1], &matrix_unit(2, 1, 1), 0.0));
        let diag = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        assert!(close(map.apply(&diag).unwrap().matrix(), diag.matrix(), 0.0));
    }

    #[test]
    fn x_twirl_mixes_basis_state() {
        // (ρ + XρX)/2 with ρ = diag(1,0).
        let map = twirling_map(&[identity(2), pauli_x()]).unwrap();
        let rho = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert!(close(map.apply(&rho).unwrap().matrix(), &real_diagonal(&[0.5, 0.5]), 1e-15));
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(dephasing(2).unwrap().apply(&rho), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn adjoint_examples() {
        let mut rng = <rand_chacha::ChaCha20Rng as rand::SeedableRng>::seed_from_u64(8);
        let u = linalg::random_unitary_with(3, &mut rng);
        let adj = QuantumChannel::unitary(u.clone()).unwrap().adjoint();
        let expected = QuantumChannel::unitary(u.adjoint()).unwrap();
        assert!(adj.distance(expected.as_map()) < 1e-12);

        let deph = dephasing(3).unwrap();
        assert!(deph.adjoint().distance(deph.channel().as_map()) < 1e-15);

        let mix = mixing_map(3).unwrap();
        let mix_adj = mix.adjoint();
        assert!(mix_adj.distance(mix.channel().as_map()) < 1e-14);
        let basis = hermitian_basis(3);
        for x in &basis {
            for y in &basis {
                let lhs = trace_product_re(&mix_adj.apply_matrix(x).unwrap(), y);
                let rhs = trace_product_re(x, &mix.apply_matrix(y).unwrap());
                assert!((lhs - rhs).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn certification_examples() {
        assert!(certify_rdm(dephasing(3).unwrap().channel().clone()).is_ok());
        assert!(certify_rdm(mixing_map(4).unwrap().channel().clone()).is_ok());
        let depol = QuantumChannel::depolarizing(2, 0.5).unwrap();
        match certify_rdm(depol) {
            // S = 0.5 I + 0.5 P with P the projector onto vec(I)/√d, so S² - S = -0.25 (I - P),
            // whose Frobenius norm is 0.25 √(d² - 1).
            Err(Error::NotIdempotent { residual }) => assert!((residual - 0.25 * 3f64.sqrt()).abs() < 1e-12),
            other => panic!("expected NotIdempotent, got {other:?}"),
        }
    }

    #[test]
    fn non_unital_channel_is_rejected() {
        // Amplitude-damping-like reset to |0⟩ is idempotent but not unital.
        let reset = QuantumChannel::from_kraus(2, vec![matrix_unit(2, 0, 0), matrix_unit(2, 0, 1)]).unwrap();
        assert!(matches!(certify_rdm(reset), Err(Error::NotUnital { .. })));
    }

    #[test]
    fn non_trace_preserving_kraus_is_rejected() {
        let err = QuantumChannel::from_kraus(2, vec![matrix_unit(2, 0, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotTracePreserving { .. }));
    }

    #[test]
    fn superoperator_channel_checks_positivity() {
        // Transpose map: trace preserving but not completely positive.
        let d = 2;
        let mut s = ComplexMatrix::zeros(4, 4);
        for i in 0..d {
            for j in 0..d {
                s[(j + d * i, i + d * j)] = ONE;
            }
        }
        assert!(matches!(
            QuantumChannel::from_superoperator(2, s),
            Err(Error::NotCompletelyPositive { .. })
        ));
        let deph = dephasing(2).unwrap();
        let from_s = QuantumChannel::from_superoperator(2, deph.channel().superoperator().clone()).unwrap();
        assert!(from_s.kraus().is_none());
        let rho = DensityMatrix::uniform_superposition(2);
        assert!(close(from_s.apply(&rho).unwrap().matrix(), &real_diagonal(&[0.5, 0.5]), 1e-15));
    }

    #[test]
    fn lueders_examples() {
        assert!(lueders_map(&MeasurementPartition::singletons(3)).unwrap().distance(&dephasing(3).unwrap()) < 1e-15);
        let p = MeasurementPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let out = lueders_map(&p).unwrap().apply(&DensityMatrix::uniform_superposition(3)).unwrap();
        let t = 1.0 / 3.0;
        let expected = from_real_rows(&[&[t, t, 0.0], &[t, t, 0.0], &[0.0, 0.0, t]]);
        assert!(close(out.matrix(), &expected, 1e-15));
        let whole = lueders_map(&MeasurementPartition::single_block(3)).unwrap();
        assert!(whole.channel().distance(&QuantumChannel::identity(3)) < 1e-15);
    }

    #[test]
    fn modified_examples() {
        let p = MeasurementPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let rho = DensityMatrix::diagonal(&[0.5, 0.3, 0.2]).unwrap();
        let out = modified_coarse_map(&p).unwrap().apply(&rho).unwrap();
        assert!(close(out.matrix(), &real_diagonal(&[0.4, 0.4, 0.2]), 1e-15));
        let fine = modified_coarse_map(&MeasurementPartition::singletons(4)).unwrap();
        assert!(fine.distance(&dephasing(4).unwrap()) < 1e-15);
        let whole = modified_coarse_map(&MeasurementPartition::single_block(3)).unwrap();
        let r = linalg::random_density_matrix(3, 3, 4).unwrap();
        assert!(close(whole.apply(&r).unwrap().matrix(), DensityMatrix::maximally_mixed(3).matrix(), 1e-15));
    }

    #[test]
    fn twirl_examples() {
        let trivial = twirling_map(&[identity(3)]).unwrap();
        assert!(trivial.channel().distance(&QuantumChannel::identity(3)) < 1e-15);
        let z_twirl = twirling_map(&[identity(2), pauli_z()]).unwrap();
        assert!(z_twirl.distance(&dephasing(2).unwrap()) < 1e-15);
    }

    #[test]
    fn twirl_validation() {
        let not_unitary = real_diagonal(&[1.0, 0.5]);
        assert!(matches!(
            twirling_map(&[identity(2), not_unitary]),
            Err(Error::NotUnitary { index: 1, .. })
        ));
        let shift = linalg::cyclic_shift(3);
        assert!(matches!(twirling_map(&[identity(3), shift]), Err(Error::NotAGroup(_))));
        assert!(matches!(twirling_map(&[]), Err(Error::NotAGroup(_))));
        // Pauli group is closed only up to phases; its twirl is complete mixing.
        let y = ComplexMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        );
        let pauli = twirling_map(&[identity(2), pauli_x(), y, pauli_z()]).unwrap();
        assert!(pauli.distance(&mixing_map(2).unwrap()) < 1e-15);
        assert!(cyclic_twirl(5).is_ok());
    }

    #[test]
    fn mixing_examples() {
        let map = mixing_map(2).unwrap();
        let rho = linalg::random_density_matrix(2, 1, 2).unwrap();
        let once = map.apply(&rho).unwrap();
        assert!(close(once.matrix(), &identity(2).unscale(2.0), 1e-15));
        assert!(close(map.apply(&once).unwrap().matrix(), once.matrix(), 1e-15));
        assert!(map.unitality_residual() < 1e-15);
        assert!(matches!(mixing_map(1), Err(Error::BadDimension(_))));
    }

    #[test]
    fn compose_examples() {
        let p = MeasurementPartition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let fine = dephasing(4).unwrap();
        let modified = modified_coarse_map(&p).unwrap();
        let id = QuantumChannel::identity(4);
        assert!(compose(&id, modified.channel()).unwrap().distance(modified.channel()) < 1e-15);
        let a = compose(fine.channel(), modified.channel()).unwrap();
        let b = compose(modified.channel(), fine.channel()).unwrap();
        assert!(a.distance(modified.channel()) < 1e-10);
        assert!(b.distance(modified.channel()) < 1e-10);
        assert!(matches!(
            compose(&id, &QuantumChannel::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn partition_validation() {
        assert!(MeasurementPartition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(MeasurementPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(MeasurementPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(MeasurementPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(MeasurementPartition::new(2, vec![vec![0, 5], vec![1]]).is_err());
        let p = MeasurementPartition::new(5, vec![vec![4, 0], vec![1, 2, 3]]).unwrap();
        assert_eq!(p.degeneracies(), vec![2, 3]);
        assert!(matches!(dephasing_map(&p), Err(Error::NotFineGrained { block: 0, size: 2 })));
    }

    #[test]
    fn random_partitions_are_valid_and_coarse_when_asked() {
        let mut rng = <rand_chacha::ChaCha20Rng as rand::SeedableRng>::seed_from_u64(1);
        for d in 2..7 {
            for _ in 0..50 {
                let p = MeasurementPartition::random(d, true, &mut rng);
                assert!(!p.is_fine_grained());
                assert!(MeasurementPartition::new(d, p.blocks().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn hermitian_basis_is_orthonormal() {
        let basis = hermitian_basis(4);
        assert_eq!(basis.len(), 16);
        for (i, a) in basis.iter().enumerate() {
            assert!(linalg::hermitian_residual(a) == 0.0);
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((trace_product_re(a, b) - expected).abs() < 1e-14);
            }
        }
    }
}
