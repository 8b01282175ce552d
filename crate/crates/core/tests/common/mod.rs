#![allow(dead_code)]

use chiralwalk_core::{
    evolve_density, evolve_pure, hamiltonian, spatial_pair, spectral_decompose, triangular_chain, werner, CMatrix,
    CVector, ChiralPhase, DensityMatrix, PureState, SpatialPairSpec, SpectralDecomposition, WernerSpec,
};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn chain(n: usize, theta: f64) -> SpectralDecomposition {
    spectral_decompose(&hamiltonian(&triangular_chain(n, ChiralPhase::new(theta).unwrap(), 1.0).unwrap()))
}

pub fn random_phase(r: &mut ChaCha8Rng) -> f64 {
    r.random_range(-PI..PI)
}

/// A random two-site superposition evolved on a random chiral chain.
pub fn random_evolved_pure(r: &mut ChaCha8Rng, n: usize) -> PureState {
    let i = r.random_range(1..=n);
    let mut j = r.random_range(1..=n);
    while j == i {
        j = r.random_range(1..=n);
    }
    let psi0 = spatial_pair(SpatialPairSpec::new(n, i, j, random_phase(r)).unwrap()).unwrap();
    let d = chain(n, random_phase(r));
    evolve_pure(&d, &psi0, r.random_range(-20.0..20.0)).unwrap()
}

pub fn random_evolved_werner(r: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let rho0 = werner(n, WernerSpec::new(r.random_range(-1.0..=1.0)).unwrap()).unwrap();
    let d = chain(n, random_phase(r));
    evolve_density(&d, &rho0, r.random_range(0.0..20.0)).unwrap()
}

pub fn random_pure(r: &mut ChaCha8Rng, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_, _| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

/// `G G† / Tr(G G†)` for a random `n × rank` matrix `G`.
pub fn random_density(r: &mut ChaCha8Rng, n: usize, rank: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(n, rank, |_, _| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let mut m = m / Complex64::new(tr, 0.0);
    // exact Hermiticity
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    m.copy_from(&h);
    DensityMatrix::new(m).unwrap()
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
