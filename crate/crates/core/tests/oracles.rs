//! Measures checked against independent reference computations.

mod common;

use chiralwalk_core::measures::PtsProbe;
use chiralwalk_core::{
    bures_distance, concurrence_pair_fast, concurrence_wootters, fidelity, pts_bures, reduced_pair, werner, CMatrix,
    DensityMatrix, WalkerState, WernerSpec,
};
use common::{chain, random_density, random_evolved_pure, random_evolved_werner, random_phase, rng};
use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use rand::Rng;

/// Embeds a single-excitation density matrix into the full `2^n` space, where
/// site `k` (1-based) is bit `n - k` of the basis index.
fn embed(rho: &DensityMatrix) -> DMatrix<Complex64> {
    let n = rho.dim();
    let dim = 1usize << n;
    let mut full = DMatrix::zeros(dim, dim);
    let state = |k: usize| 1usize << (n - 1 - k);
    for a in 0..n {
        for b in 0..n {
            full[(state(a), state(b))] = rho.entries()[(a, b)];
        }
    }
    full
}

/// Generic partial trace keeping sites `i` and `j` in the order `|q_i q_j⟩`.
fn partial_trace_keep(full: &DMatrix<Complex64>, n: usize, i: usize, j: usize) -> Matrix4<Complex64> {
    let bit = |x: usize, site: usize| (x >> (n - site)) & 1;
    let mut out = Matrix4::zeros();
    let dim = 1usize << n;
    for x in 0..dim {
        for y in 0..dim {
            let rest_equal = (1..=n).filter(|&s| s != i && s != j).all(|s| bit(x, s) == bit(y, s));
            if !rest_equal {
                continue;
            }
            let a = 2 * bit(x, i) + bit(x, j);
            let b = 2 * bit(y, i) + bit(y, j);
            out[(a, b)] += full[(x, y)];
        }
    }
    out
}

/// Textbook concurrence: `λ` are the square roots of the eigenvalues of the
/// Hermitian `√ρ ρ̃ √ρ` with `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
fn textbook_concurrence(m: &Matrix4<Complex64>) -> f64 {
    let mut yy = Matrix4::<Complex64>::zeros();
    yy[(0, 3)] = Complex64::new(-1.0, 0.0);
    yy[(3, 0)] = Complex64::new(-1.0, 0.0);
    yy[(1, 2)] = Complex64::new(1.0, 0.0);
    yy[(2, 1)] = Complex64::new(1.0, 0.0);
    let tilde = yy * m.conjugate() * yy;
    let eig = m.symmetric_eigen();
    let root = eig.eigenvectors
        * Matrix4::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)))
        * eig.eigenvectors.adjoint();
    let r = root * tilde * root;
    let r = (r + r.adjoint()) * Complex64::new(0.5, 0.0);
    let mut l: Vec<f64> = r.symmetric_eigen().eigenvalues.iter().map(|v| v.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

#[test]
fn fast_concurrence_matches_wootters_on_evolved_states() {
    let mut r = rng(2024);
    let mut cases = 0;
    for k in 0..1200 {
        let n = 3 + k % 8;
        let rho = if k % 4 == 3 { random_evolved_werner(&mut r, n) } else { random_evolved_pure(&mut r, n).to_density() };
        let i = r.random_range(1..=n);
        let mut j = r.random_range(1..=n);
        while j == i {
            j = r.random_range(1..=n);
        }
        let fast = concurrence_pair_fast(&rho, i, j).unwrap();
        let wootters = concurrence_wootters(&reduced_pair(&rho, i, j).unwrap()).unwrap();
        let direct = 2.0 * rho.element(i, j).unwrap().norm();
        assert!((fast - wootters).abs() <= 1e-9, "n={n} ({i},{j}): fast {fast} vs wootters {wootters}");
        assert!((fast - direct.min(1.0)).abs() <= 1e-9);
        cases += 1;
    }
    assert!(cases >= 1000);
}

#[test]
fn wootters_agrees_with_textbook_eigenvalue_route() {
    let mut r = rng(5);
    for _ in 0..200 {
        let rho = random_evolved_pure(&mut r, 5).to_density();
        let pd = reduced_pair(&rho, 4, 5).unwrap();
        let a = concurrence_wootters(&pd).unwrap();
        let b = textbook_concurrence(pd.matrix());
        // the textbook route loses accuracy near rank deficiency
        assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
    }
}

#[test]
fn reduced_pair_matches_full_space_partial_trace() {
    let mut r = rng(77);
    for n in 2..=6 {
        for case in 0..20 {
            let rho = match case % 3 {
                0 => random_evolved_pure(&mut r, n.max(3)).to_density(),
                1 if n >= 2 => werner(n, WernerSpec::new(r.random_range(-1.0..=1.0)).unwrap()).unwrap(),
                _ => random_density(&mut r, n, 1 + case % n),
            };
            let n = rho.dim();
            let full = embed(&rho);
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let oracle = partial_trace_keep(&full, n, i, j);
                    let ours = reduced_pair(&rho, i, j).unwrap();
                    let dev = (ours.matrix() - oracle).iter().map(|z| z.norm()).fold(0.0, f64::max);
                    assert!(dev <= 1e-10, "n={n} ({i},{j}) deviation {dev}");
                }
            }
        }
    }
}

#[test]
fn werner_pair_concurrence_is_abs_b() {
    // the block is b-weighted coherence between |10⟩ and |01⟩, so C = 2|ρ_12| = |b|
    for k in 0..=40 {
        let b = -1.0 + k as f64 / 20.0;
        let rho = werner(5, WernerSpec::new(b).unwrap()).unwrap();
        let c = concurrence_wootters(&reduced_pair(&rho, 1, 2).unwrap()).unwrap();
        assert!((c - b.abs()).abs() <= 1e-12, "b={b}: {c}");
    }
}

#[test]
fn fidelity_is_symmetric_and_bures_is_a_metric() {
    let mut r = rng(99);
    for k in 0..300 {
        let n = 3 + k % 4;
        let a = random_density(&mut r, n, 1 + k % n);
        let b = random_density(&mut r, n, 1 + (k / 2) % n);
        let c = random_density(&mut r, n, n);
        let fab = fidelity(&a, &b).unwrap();
        let fba = fidelity(&b, &a).unwrap();
        assert!((fab - fba).abs() <= 1e-9);
        assert!((0.0..=1.0).contains(&fab));
        let (dab, dbc, dac) =
            (bures_distance(&a, &b).unwrap(), bures_distance(&b, &c).unwrap(), bures_distance(&a, &c).unwrap());
        assert!(dac <= dab + dbc + 1e-9);
        assert!(bures_distance(&a, &a).unwrap() <= 1e-6);
    }
}

#[test]
fn pure_state_fidelity_is_overlap_squared() {
    let mut r = rng(3);
    for _ in 0..100 {
        let u = common::random_pure(&mut r, 6);
        let v = common::random_pure(&mut r, 6);
        let du = DensityMatrix::new(&u * u.adjoint()).unwrap();
        let dv = DensityMatrix::new(&v * v.adjoint()).unwrap();
        let f = fidelity(&du, &dv).unwrap();
        assert!((f - u.dotc(&v).norm_sqr()).abs() <= 1e-9);
    }
}

#[test]
fn time_asymmetry_vanishes_for_real_walks_and_real_states() {
    let mut r = rng(8);
    for k in 0..50 {
        let n = 3 + k % 6;
        let d = chain(n, 0.0);
        let g = CMatrix::from_fn(n, 2, |_, _| Complex64::new(r.random_range(-1.0..1.0), 0.0));
        let m = &g * g.adjoint();
        let tr = m.trace();
        let rho0 = DensityMatrix::new(m / tr).unwrap();
        for t in [0.5, 3.0, 9.5] {
            assert!(pts_bures(&d, &rho0, t).unwrap() <= 1e-10);
        }
    }
}

#[test]
fn pts_probe_matches_direct_evaluation() {
    let mut r = rng(17);
    for _ in 0..30 {
        let d = chain(6, random_phase(&mut r));
        let rho0 = random_density(&mut r, 6, 2);
        let probe = PtsProbe::new(&d, &WalkerState::Mixed(rho0.clone())).unwrap();
        let t = r.random_range(0.0..10.0);
        assert!((probe.at(t).unwrap() - pts_bures(&d, &rho0, t).unwrap()).abs() <= 1e-10);
    }
}
