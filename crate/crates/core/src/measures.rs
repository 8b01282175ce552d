//! Entanglement and distinguishability measures.
//!
//! Concurrence has two routes: the general Wootters construction on the 4×4
//! reduced pair state and the single-excitation shortcut `2|ρ_ij|`. Fidelities
//! are computed from rank-revealing factors (`ρ = B B†`) so that rank-deficient
//! states do not lose half their digits to matrix square roots.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::dynamics::{
    hermitian_eigen, site, CMatrix, DensityMatrix, PureState, SpectralDecomposition, PSD_TOL, RANK_TOL,
};
use crate::error::{Error, Result};
use crate::states::WalkerState;

/// Two-site reduced state in the ordering `|q_i q_j⟩`:
/// `|00⟩` (vacuum), `|01⟩` (j excited), `|10⟩` (i excited), `|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDensity(Matrix4<Complex64>);

impl PairDensity {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let dm = CMatrix::from_fn(4, 4, |i, j| m[(i, j)]);
        DensityMatrix::new(dm)?;
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }
}

pub fn reduced_pair(rho: &DensityMatrix, i: usize, j: usize) -> Result<PairDensity> {
    let n = rho.dim();
    let (a, b) = (site(i, n)?, site(j, n)?);
    if a == b {
        return Err(Error::InvalidArgument(format!("pair sites must differ, got ({i}, {j})")));
    }
    let r = rho.entries();
    let zero = Complex64::new(0.0, 0.0);
    let mut m = Matrix4::from_element(zero);
    m[(0, 0)] = Complex64::new(1.0 - r[(a, a)].re - r[(b, b)].re, 0.0);
    m[(1, 1)] = Complex64::new(r[(b, b)].re, 0.0);
    m[(2, 2)] = Complex64::new(r[(a, a)].re, 0.0);
    m[(1, 2)] = r[(b, a)];
    m[(2, 1)] = r[(a, b)];
    Ok(PairDensity(m))
}

/// `Y ⊗ Y`, real in this basis.
fn spin_flip() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 0.0, 0.0, -1.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0,
    )
}

/// Wootters concurrence `max(0, λ1 - λ2 - λ3 - λ4)`.
///
/// The `λ_k` (eigenvalues of `sqrt(√ρ ρ̃ √ρ)`, with `ρ̃ = (Y⊗Y) ρ* (Y⊗Y)`)
/// are obtained as the singular values of `Bᵀ (Y⊗Y) B` for `ρ = B B†`,
/// which shares its nonzero spectrum with `ρ ρ̃` after squaring.
pub fn concurrence_wootters(pd: &PairDensity) -> Result<f64> {
    let rho = CMatrix::from_fn(4, 4, |i, j| pd.0[(i, j)]);
    let (values, vectors) = hermitian_eigen(&rho);
    if values[0] < -PSD_TOL {
        return Err(Error::NotPositive(values[0]));
    }
    let keep: Vec<usize> = (0..4).filter(|&k| values[k] > RANK_TOL).collect();
    if keep.is_empty() {
        return Ok(0.0);
    }
    let b = CMatrix::from_fn(4, keep.len(), |i, c| vectors[(i, keep[c])] * values[keep[c]].sqrt());
    let flip = spin_flip();
    let s = CMatrix::from_fn(4, 4, |i, j| Complex64::new(flip[(i, j)], 0.0));
    let tau = b.transpose() * s * &b;
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambdas.sort_by(|x, y| y.total_cmp(x));
    let rest: f64 = lambdas.iter().skip(1).sum();
    Ok((lambdas[0] - rest).clamp(0.0, 1.0))
}

/// `C_ij = 2|ρ_ij|` for single-excitation states.
pub fn concurrence_pair_fast(rho: &DensityMatrix, i: usize, j: usize) -> Result<f64> {
    state_concurrence(&WalkerState::Mixed(rho.clone()), i, j)
}

pub(crate) fn state_concurrence(state: &WalkerState, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(Error::InvalidArgument(format!("pair sites must differ, got ({i}, {j})")));
    }
    Ok((2.0 * state.coherence(i, j)?.norm()).clamp(0.0, 1.0))
}

/// Symmetric matrix of pairwise concurrences with zero diagonal.
pub fn concurrence_matrix(rho: &DensityMatrix) -> DMatrix<f64> {
    state_concurrence_matrix(&WalkerState::Mixed(rho.clone()))
}

pub(crate) fn state_concurrence_matrix(state: &WalkerState) -> DMatrix<f64> {
    let n = state.dim();
    let mut c = DMatrix::zeros(n, n);
    for i in 1..=n {
        for j in i + 1..=n {
            let v = state_concurrence(state, i, j).expect("indices in range");
            c[(i - 1, j - 1)] = v;
            c[(j - 1, i - 1)] = v;
        }
    }
    c
}

fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::DimensionMismatch { expected: a, got: b })
    } else {
        Ok(())
    }
}

/// Uhlmann fidelity `[Tr sqrt(√ρ σ √ρ)]²`, evaluated as the squared nuclear
/// norm of `B†C` where `ρ = BB†`, `σ = CC†`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_same_dim(rho.dim(), sigma.dim())?;
    let b = rho.factor();
    let c = sigma.factor();
    Ok(factor_fidelity(&b, &c))
}

fn factor_fidelity(b: &CMatrix, c: &CMatrix) -> f64 {
    if b.ncols() == 0 || c.ncols() == 0 {
        return 0.0;
    }
    let overlap = b.adjoint() * c;
    let nuclear: f64 = if overlap.nrows() == 1 || overlap.ncols() == 1 {
        overlap.norm()
    } else {
        overlap.singular_values().iter().sum()
    };
    (nuclear * nuclear).clamp(0.0, 1.0)
}

/// `D_B = sqrt(2(1 - √F))`
pub fn bures_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(bures_from_fidelity(fidelity(rho, sigma)?))
}

pub fn bures_from_fidelity(f: f64) -> f64 {
    (2.0 * (1.0 - f.clamp(0.0, 1.0).sqrt())).max(0.0).sqrt()
}

/// Fidelity of commuting (diagonal) states `(Σ √(p_i q_i))²`.
pub fn commuting_fidelity(p: &[f64], q: &[f64]) -> f64 {
    let s: f64 = p.iter().zip(q).map(|(a, b)| (a.max(0.0) * b.max(0.0)).sqrt()).sum();
    (s * s).min(1.0)
}

/// Bures distance between normalized distributions, in the form
/// `sqrt(Σ (√p_i - √q_i)²)`, which equals `sqrt(2(1 - √F))` for unit-sum
/// inputs but keeps full precision when `p ≈ q`.
pub fn diagonal_bures(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| {
            let d = a.max(0.0).sqrt() - b.max(0.0).sqrt();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Forward/backward time asymmetry of the site populations: the Bures distance
/// between the diagonals of `ρ(t)` and `ρ(-t)`.
pub fn pts_bures(d: &SpectralDecomposition, rho0: &DensityMatrix, t: f64) -> Result<f64> {
    PtsProbe::new(d, &WalkerState::Mixed(rho0.clone()))?.at(t)
}

/// Precomputed eigenbasis coefficients of the initial state's factor, reused
/// across a time grid.
#[derive(Debug, Clone)]
pub struct PtsProbe<'a> {
    d: &'a SpectralDecomposition,
    coefficients: CMatrix,
}

impl<'a> PtsProbe<'a> {
    pub fn new(d: &'a SpectralDecomposition, initial: &WalkerState) -> Result<Self> {
        check_same_dim(d.dim(), initial.dim())?;
        let factor = match initial {
            WalkerState::Pure(p) => CMatrix::from_column_slice(p.dim(), 1, p.amplitudes().as_slice()),
            WalkerState::Mixed(r) => r.factor(),
        };
        Ok(Self { d, coefficients: d.eigenvectors().adjoint() * factor })
    }

    /// Site populations at time `t`, accumulated column by column.
    pub fn populations(&self, t: f64) -> Result<Vec<f64>> {
        if !t.is_finite() {
            return Err(Error::NonFinite("time"));
        }
        let mut rotated = self.coefficients.clone();
        for (k, mut row) in rotated.row_iter_mut().enumerate() {
            row *= Complex64::from_polar(1.0, -self.d.eigenvalues()[k] * t);
        }
        let evolved = self.d.eigenvectors() * rotated;
        Ok(evolved.row_iter().map(|row| row.iter().map(|z| z.norm_sqr()).sum()).collect())
    }

    pub fn at(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::InvalidArgument(format!("time-asymmetry probe needs t >= 0, got {t}")));
        }
        Ok(diagonal_bures(&self.populations(t)?, &self.populations(-t)?))
    }
}

/// `|⟨target|ψ⟩|²`
pub fn transfer_fidelity_pure(psi: &PureState, target: &PureState) -> Result<f64> {
    check_same_dim(target.dim(), psi.dim())?;
    Ok(target.amplitudes().dotc(psi.amplitudes()).norm_sqr().min(1.0))
}

/// Fidelity between an evolving walker state and a fixed target.
pub(crate) fn state_fidelity(state: &WalkerState, target: &WalkerState) -> Result<f64> {
    match (state, target) {
        (WalkerState::Pure(a), WalkerState::Pure(b)) => transfer_fidelity_pure(a, b),
        _ => {
            check_same_dim(state.dim(), target.dim())?;
            let factor = |s: &WalkerState| match s {
                WalkerState::Pure(p) => CMatrix::from_column_slice(p.dim(), 1, p.amplitudes().as_slice()),
                WalkerState::Mixed(r) => r.factor(),
            };
            Ok(factor_fidelity(&factor(state), &factor(target)))
        }
    }
}
