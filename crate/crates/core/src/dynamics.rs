//! Spectral decomposition and exact unitary evolution in the
//! single-excitation sector.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Input tolerance on `|H_ij - conj(H_ji)|`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on unit norm / unit trace.
pub const NORM_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted for a density matrix.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are treated as exact zeros when factoring a
/// density matrix.
pub const RANK_TOL: f64 = 1e-13;

const DEGENERACY_TOL: f64 = 1e-9;
const PHASE_TOL: f64 = 1e-12;

fn index_check(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(i - 1)
    }
}

pub(crate) fn site(i: usize, n: usize) -> Result<usize> {
    index_check(i, n)
}

fn max_hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_square_finite(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("matrix entry"));
    }
    Ok(())
}

/// Eigenvalues ascending with orthonormal eigenvector columns.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: CMatrix,
}

impl HermitianMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square_finite(&entries)?;
        let dev = max_hermitian_deviation(&entries);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_hermitian_unchecked(entries: CMatrix) -> Self {
        debug_assert!(max_hermitian_deviation(&entries) <= HERMITIAN_TOL);
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self { entries: CMatrix::zeros(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }
}

/// `H = V diag(Λ) V†`, eigenvalues ascending.
///
/// Eigenvectors within a (near-)degenerate cluster are re-orthonormalized and
/// every column is rotated so that its first non-negligible entry is real and
/// positive, which makes the decomposition a deterministic function of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    /// Validates Hermiticity of a raw matrix before decomposing it.
    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        Ok(spectral_decompose(&HermitianMatrix::new(m.clone())?))
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// `V diag(Λ) V†`
    pub fn reconstruct(&self) -> CMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= Complex64::from(self.eigenvalues[k]);
        }
        scaled * v.adjoint()
    }

    /// `V† ψ`
    pub fn coefficients(&self, psi: &CVector) -> CVector {
        self.eigenvectors.adjoint() * psi
    }

    fn phases(&self, t: f64) -> Result<Vec<Complex64>> {
        if !t.is_finite() {
            return Err(Error::NonFinite("time"));
        }
        Ok(self.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -l * t)).collect())
    }
}

fn orthonormalize_columns(v: &mut CMatrix, cols: std::ops::Range<usize>) {
    // two passes of modified Gram-Schmidt
    for _ in 0..2 {
        for j in cols.clone() {
            for k in cols.start..j {
                let proj = v.column(k).dotc(&v.column(j));
                let ck = v.column(k).clone_owned();
                let mut cj = v.column_mut(j);
                cj -= ck * proj;
            }
            let norm = v.column(j).norm();
            v.column_mut(j).unscale_mut(norm);
        }
    }
}

pub fn spectral_decompose(h: &HermitianMatrix) -> SpectralDecomposition {
    let n = h.dim();
    let (values, mut vectors) = hermitian_eigen(h.entries());

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (values[end] - values[end - 1]).abs() <= DEGENERACY_TOL * values[end].abs().max(1.0) {
            end += 1;
        }
        if end - start > 1 {
            orthonormalize_columns(&mut vectors, start..end);
        }
        start = end;
    }

    for mut col in vectors.column_iter_mut() {
        if let Some(lead) = col.iter().copied().find(|z| z.norm() > PHASE_TOL) {
            let rot = lead.conj() / lead.norm();
            col *= rot;
        }
    }

    SpectralDecomposition { eigenvalues: DVector::from_vec(values), eigenvectors: vectors }
}

/// `U(t) = exp(-iHt)`; negative `t` evolves backwards.
pub fn propagator(d: &SpectralDecomposition, t: f64) -> Result<CMatrix> {
    let phases = d.phases(t)?;
    let v = &d.eigenvectors;
    let mut scaled = v.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[k];
    }
    Ok(scaled * v.adjoint())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVector,
}

impl PureState {
    pub fn new(amplitudes: CVector) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("amplitude"));
        }
        let norm = amplitudes.norm_squared();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    pub(crate) fn from_unchecked(amplitudes: CVector) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Amplitude at 1-based site `i`.
    pub fn amplitude(&self, i: usize) -> Result<Complex64> {
        Ok(self.amplitudes[site(i, self.dim())?])
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub fn occupation(&self, i: usize) -> Result<f64> {
        Ok(self.amplitude(i)?.norm_sqr().clamp(0.0, 1.0))
    }

    /// `|ψ⟩⟨ψ|`
    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix { entries: &self.amplitudes * self.amplitudes.adjoint() }
    }
}

/// Single-excitation density matrix in the site basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square_finite(&entries)?;
        let dev = max_hermitian_deviation(&entries);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let (values, _) = hermitian_eigen(&entries);
        if let Some(&min) = values.first() {
            if min < -PSD_TOL {
                return Err(Error::NotPositive(min));
            }
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_unchecked(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Element `ρ_ij`, 1-based.
    pub fn element(&self, i: usize, j: usize) -> Result<Complex64> {
        let n = self.dim();
        Ok(self.entries[(site(i, n)?, site(j, n)?)])
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn purity(&self) -> f64 {
        // Tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.entries).0
    }

    /// Rank-revealing factor `B` with `ρ = B B†`; columns are `√w_k v_k` for
    /// the eigenpairs with `w_k > RANK_TOL`.
    pub fn factor(&self) -> CMatrix {
        let (values, vectors) = hermitian_eigen(&self.entries);
        let keep: Vec<usize> = (0..values.len()).filter(|&k| values[k] > RANK_TOL).collect();
        let n = self.dim();
        CMatrix::from_fn(n, keep.len(), |i, c| vectors[(i, keep[c])] * values[keep[c]].sqrt())
    }
}

pub fn evolve_pure(d: &SpectralDecomposition, psi0: &PureState, t: f64) -> Result<PureState> {
    if psi0.dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), got: psi0.dim() });
    }
    PureEvolution::new(d, psi0).at(t)
}

pub fn evolve_density(d: &SpectralDecomposition, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    if rho0.dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), got: rho0.dim() });
    }
    let u = propagator(d, t)?;
    let mut rho = &u * rho0.entries() * u.adjoint();
    // restore exact Hermiticity lost to roundoff
    let n = rho.nrows();
    for i in 0..n {
        rho[(i, i)].im = 0.0;
        for j in i + 1..n {
            let avg = (rho[(i, j)] + rho[(j, i)].conj()) * 0.5;
            rho[(i, j)] = avg;
            rho[(j, i)] = avg.conj();
        }
    }
    Ok(DensityMatrix::from_unchecked(rho))
}

/// `P_i = ⟨i|ρ|i⟩`, clamped to `[0, 1]`.
pub fn occupation(rho: &DensityMatrix, i: usize) -> Result<f64> {
    let k = site(i, rho.dim())?;
    Ok(rho.entries[(k, k)].re.clamp(0.0, 1.0))
}

/// Reusable evolution of a fixed pure state: the eigenbasis coefficients are
/// computed once, each time point costs `O(n²)`.
#[derive(Debug, Clone)]
pub struct PureEvolution<'a> {
    decomposition: &'a SpectralDecomposition,
    coefficients: CVector,
}

impl<'a> PureEvolution<'a> {
    pub fn new(decomposition: &'a SpectralDecomposition, psi0: &PureState) -> Self {
        let coefficients = decomposition.coefficients(psi0.amplitudes());
        Self { decomposition, coefficients }
    }

    pub fn at(&self, t: f64) -> Result<PureState> {
        let phases = self.decomposition.phases(t)?;
        let rotated = CVector::from_iterator(
            self.coefficients.len(),
            self.coefficients.iter().zip(&phases).map(|(c, p)| c * p),
        );
        Ok(PureState::from_unchecked(&self.decomposition.eigenvectors * rotated))
    }
}
