//! Initial and target states for entanglement transfer.
//!
//! Two-site superpositions use `(|i⟩ - e^{iφ}|j⟩)/√2`, so the symmetric Bell
//! pair `(|1⟩ + |2⟩)/√2` is `φ = π`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    evolve_density, site, CMatrix, CVector, DensityMatrix, PureEvolution, PureState, SpectralDecomposition,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialPairSpec {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub phi: f64,
}

impl SpatialPairSpec {
    pub fn new(n: usize, i: usize, j: usize, phi: f64) -> Result<Self> {
        let spec = Self { n, i, j, phi };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        site(self.i, self.n)?;
        site(self.j, self.n)?;
        if self.i == self.j {
            return Err(Error::InvalidArgument(format!("pair sites must differ, got ({}, {})", self.i, self.j)));
        }
        if !self.phi.is_finite() {
            return Err(Error::NonFinite("relative phase"));
        }
        Ok(())
    }
}

/// Mixing weight of the Werner-like state on the injection pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerSpec {
    b: f64,
}

impl WernerSpec {
    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::NonFinite("mixing weight"));
        }
        if !(-1.0..=1.0).contains(&b) {
            return Err(Error::MixingWeightOutOfRange(b));
        }
        Ok(Self { b })
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

pub fn localized(n: usize, i: usize) -> Result<PureState> {
    let k = site(i, n)?;
    let mut amps = CVector::zeros(n);
    amps[k] = Complex64::new(1.0, 0.0);
    Ok(PureState::from_unchecked(amps))
}

/// `(|i⟩ - e^{iφ}|j⟩)/√2`
pub fn spatial_pair(spec: SpatialPairSpec) -> Result<PureState> {
    spec.validate()?;
    let mut amps = CVector::zeros(spec.n);
    amps[spec.i - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[spec.j - 1] = -Complex64::from_polar(FRAC_1_SQRT_2, spec.phi);
    Ok(PureState::from_unchecked(amps))
}

fn pair_block(n: usize, lo: usize, b: f64) -> DensityMatrix {
    let mut m = CMatrix::zeros(n, n);
    let (p, q) = (lo - 1, lo);
    m[(p, p)] = Complex64::new(0.5, 0.0);
    m[(q, q)] = Complex64::new(0.5, 0.0);
    m[(p, q)] = Complex64::new(0.5 * b, 0.0);
    m[(q, p)] = Complex64::new(0.5 * b, 0.0);
    DensityMatrix::from_unchecked(m)
}

/// `b·|ψ⟩⟨ψ| + (1-b)(|1⟩⟨1| + |2⟩⟨2|)/2` with `ψ = (|1⟩ + |2⟩)/√2`.
pub fn werner(n: usize, spec: WernerSpec) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("Werner state needs n >= 2, got {n}")));
    }
    Ok(pair_block(n, 1, spec.b))
}

/// `(|n-1⟩ - e^{iφ}|n⟩)/√2`
pub fn target_pure(n: usize, phi: f64) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("target state needs n >= 2, got {n}")));
    }
    spatial_pair(SpatialPairSpec::new(n, n - 1, n, phi)?)
}

/// The Werner block moved to sites `(n-1, n)`.
pub fn target_werner(n: usize, b: f64) -> Result<DensityMatrix> {
    let spec = WernerSpec::new(b)?;
    if n < 2 {
        return Err(Error::InvalidSize(format!("target state needs n >= 2, got {n}")));
    }
    Ok(pair_block(n, n - 1, spec.b))
}

/// A walker state, pure or mixed.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkerState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl WalkerState {
    pub fn dim(&self) -> usize {
        match self {
            Self::Pure(p) => p.dim(),
            Self::Mixed(r) => r.dim(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            Self::Pure(p) => p.to_density(),
            Self::Mixed(r) => r.clone(),
        }
    }

    /// `ρ_ij`, 1-based.
    pub fn coherence(&self, i: usize, j: usize) -> Result<Complex64> {
        match self {
            Self::Pure(p) => Ok(p.amplitude(i)? * p.amplitude(j)?.conj()),
            Self::Mixed(r) => r.element(i, j),
        }
    }

    pub fn occupation(&self, i: usize) -> Result<f64> {
        Ok(self.coherence(i, i)?.re.clamp(0.0, 1.0))
    }
}

impl From<PureState> for WalkerState {
    fn from(p: PureState) -> Self {
        Self::Pure(p)
    }
}

impl From<DensityMatrix> for WalkerState {
    fn from(r: DensityMatrix) -> Self {
        Self::Mixed(r)
    }
}

/// Time evolution of a fixed initial [`WalkerState`].
#[derive(Debug, Clone)]
pub enum Evolution<'a> {
    Pure(PureEvolution<'a>),
    Mixed(&'a SpectralDecomposition, DensityMatrix),
}

impl<'a> Evolution<'a> {
    pub fn new(d: &'a SpectralDecomposition, initial: &WalkerState) -> Result<Self> {
        if initial.dim() != d.dim() {
            return Err(Error::DimensionMismatch { expected: d.dim(), got: initial.dim() });
        }
        Ok(match initial {
            WalkerState::Pure(p) => Self::Pure(PureEvolution::new(d, p)),
            WalkerState::Mixed(r) => Self::Mixed(d, r.clone()),
        })
    }

    pub fn at(&self, t: f64) -> Result<WalkerState> {
        match self {
            Self::Pure(e) => Ok(WalkerState::Pure(e.at(t)?)),
            Self::Mixed(d, r) => Ok(WalkerState::Mixed(evolve_density(d, r, t)?)),
        }
    }
}
