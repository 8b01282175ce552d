//! Acceptance checks: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use chiralwalk_core::experiments::{
    bures_trace, concurrence_trace, first_peak, global_max, measure_trace, optimize_theta, scaling_grid,
    scaling_sweep, werner_trace, GraphSpec, LongTimeSearch, Measure, PeakResult, Probe, StateSpec, TimeGrid,
    TraceSeries,
};
use chiralwalk_core::{
    concurrence_pair_fast, concurrence_wootters, evolve_density, evolve_pure, localized, propagator, reduced_pair,
    spatial_pair, werner, CMatrix, DensityMatrix, SpatialPairSpec, WernerSpec,
};
use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn short_trace(graph: GraphSpec, state: StateSpec) -> Result<TraceSeries, chiralwalk_core::Error> {
    concurrence_trace(&graph, &state, &TimeGrid::short_time())
}

fn first(series: &TraceSeries) -> Result<PeakResult, Box<dyn std::error::Error>> {
    first_peak(series)?.ok_or_else(|| "no first peak".into())
}

fn spectrum() -> Outcome {
    let start = Instant::now();
    let ev = GraphSpec::triangular(5, FRAC_PI_2).decompose()?.eigenvalues().clone();
    let elapsed = start.elapsed().as_secs_f64();
    let s37 = 37f64.sqrt();
    let big = ((7.0 + s37) / 2.0).sqrt();
    let small = ((7.0 - s37) / 2.0).sqrt();
    let expected = [-big, -small, 0.0, small, big];
    let err = ev.iter().zip(expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok((err <= 1e-10 && elapsed < 1.0, format!("max deviation {err:.2e}, {elapsed:.3} s, eigenvalues {:?}", ev.as_slice())))
}

fn ctqw_weak_transfer() -> Outcome {
    let s = measure_trace(
        &GraphSpec::triangular(5, 0.0),
        &StateSpec::Localized { site: 1 },
        Measure::Occupation { site: 5 },
        &TimeGrid::short_time(),
    )?;
    let peak = global_max(&s)?;
    Ok((peak.value < 0.45 - 0.005, format!("max P5 = {:.4} at t = {:.3} (needs < 0.445)", peak.value, peak.t_peak)))
}

fn ctqw_optimal_phase() -> Outcome {
    let g = GraphSpec::triangular(5, 0.0);
    let best = first(&short_trace(g, StateSpec::pair(3.0 * FRAC_PI_4))?)?;
    let mirror = first(&short_trace(g, StateSpec::pair(-3.0 * FRAC_PI_4))?)?;
    let mut ok = within(best.value, 0.80, 0.05) && within(best.t_peak, 1.12, 0.1);
    let mut detail = format!("phi=3pi/4: C = {:.4} at t = {:.3}", best.value, best.t_peak);
    for phi in [FRAC_PI_4, FRAC_PI_3, -FRAC_PI_3, FRAC_PI_2, -FRAC_PI_2] {
        let p = first(&short_trace(g, StateSpec::pair(phi))?)?;
        ok &= best.value > p.value;
        detail.push_str(&format!("; phi={:.3}: {:.4}", phi, p.value));
    }
    detail.push_str(&format!(
        "; mirror phi=-3pi/4 (same curve under t -> -t): C = {:.4} at t = {:.3}",
        mirror.value, mirror.t_peak
    ));
    Ok((ok, detail))
}

fn cqw_short_time() -> Outcome {
    let cqw = first(&short_trace(GraphSpec::triangular(5, FRAC_PI_2), StateSpec::bell())?)?;
    let ctqw = first(&short_trace(GraphSpec::triangular(5, 0.0), StateSpec::bell())?)?;
    let dt = ctqw.t_peak - cqw.t_peak;
    let ok = within(cqw.value, 0.90, 0.05)
        && within(cqw.t_peak, 1.02, 0.1)
        && cqw.value > ctqw.value
        && within(dt, 0.4, 0.15);
    Ok((
        ok,
        format!(
            "CQW C = {:.4} at t = {:.3}; CTQW C = {:.4} at t = {:.3}; dt = {:.3}",
            cqw.value, cqw.t_peak, ctqw.value, ctqw.t_peak, dt
        ),
    ))
}

fn population_transfer() -> Outcome {
    let p = Probe::new(&GraphSpec::triangular(5, FRAC_PI_2), &StateSpec::Localized { site: 1 }, Measure::Occupation {
        site: 5,
    })?
    .at(1.64)?;
    Ok((within(p, 0.95, 0.03), format!("P5(1.64) = {p:.4}")))
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn pts_nulls() -> Outcome {
    let grid = TimeGrid::short_time();
    let mut worst: f64 = 0.0;
    for phi in [0.0, PI, -PI] {
        let s = bures_trace(&GraphSpec::triangular(5, 0.0), &StateSpec::pair(phi), &grid)?;
        worst = worst.max(s.max_value().unwrap_or(0.0));
    }
    for theta in [0.0, PI, -PI] {
        let s = bures_trace(&GraphSpec::triangular(5, theta), &StateSpec::bell(), &grid)?;
        worst = worst.max(s.max_value().unwrap_or(0.0));
    }
    let a = bures_trace(&GraphSpec::triangular(5, FRAC_PI_4), &StateSpec::bell(), &grid)?;
    let b = bures_trace(&GraphSpec::triangular(5, 3.0 * FRAC_PI_4), &StateSpec::bell(), &grid)?;
    let diff = max_abs_diff(a.values(), b.values());
    Ok((worst <= 1e-10 && diff <= 1e-10, format!("largest null value {worst:.2e}; |pi/4 - 3pi/4| = {diff:.2e}")))
}

fn pts_maxima() -> Outcome {
    let grid = TimeGrid::short_time();
    let trace_max = |g: GraphSpec, s: StateSpec| -> Result<f64, chiralwalk_core::Error> {
        Ok(bures_trace(&g, &s, &grid)?.max_value().unwrap_or(0.0))
    };
    let mut ctqw = Vec::new();
    for phi in [FRAC_PI_3, FRAC_PI_2, 3.0 * FRAC_PI_4] {
        ctqw.push((phi, trace_max(GraphSpec::triangular(5, 0.0), StateSpec::pair(phi))?));
    }
    let mut cqw = Vec::new();
    for theta in [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, -FRAC_PI_4, -FRAC_PI_2, -3.0 * FRAC_PI_4] {
        cqw.push((theta, trace_max(GraphSpec::triangular(5, theta), StateSpec::bell())?));
    }
    let argmax = |v: &[(f64, f64)]| v.iter().cloned().fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let (phi_best, ctqw_max) = argmax(&ctqw);
    let (theta_best, cqw_max) = argmax(&cqw);
    let ok = phi_best == FRAC_PI_2 && theta_best.abs() == FRAC_PI_2 && cqw_max > ctqw_max;
    Ok((
        ok,
        format!(
            "CTQW argmax phi = {phi_best:.4} (max {ctqw_max:.4}); CQW argmax theta = {theta_best:.4} (max {cqw_max:.4})"
        ),
    ))
}

fn long_time_pgst() -> Outcome {
    let grid = TimeGrid::new(0.0, 100.0, 0.005)?;
    let cqw = global_max(&concurrence_trace(&GraphSpec::triangular(5, FRAC_PI_2), &StateSpec::bell(), &grid)?)?;
    let ctqw = global_max(&concurrence_trace(&GraphSpec::triangular(5, 0.0), &StateSpec::bell(), &grid)?)?;
    let ok = within(cqw.value, 0.999, 0.005)
        && within(cqw.t_peak, 28.1, 0.5)
        && within(ctqw.value, 0.971, 0.01)
        && within(ctqw.t_peak, 25.7, 0.5);
    Ok((
        ok,
        format!("CQW C = {:.4} at t = {:.3}; CTQW C = {:.4} at t = {:.3}", cqw.value, cqw.t_peak, ctqw.value, ctqw.t_peak),
    ))
}

/// Table row check with the near-tie guard: the reported time may differ
/// from the table's when some candidate phase reaches the table's value at
/// the table's time.
fn table_row(n: usize, candidates: &[f64], t_table: f64, c_table: f64, tol: f64) -> Result<(bool, String), Box<dyn std::error::Error>> {
    let rec = optimize_theta(n, PI, candidates, &LongTimeSearch::tabulated(500.0))?;
    let value_ok = within(rec.concurrence, c_table, tol);
    let time_ok = within(rec.t, t_table, 1.0) || {
        let mut hit = false;
        for &theta in candidates {
            let c = Probe::new(&GraphSpec::triangular(n, theta), &StateSpec::bell(), Measure::end_concurrence())?
                .at(t_table)?;
            hit |= within(c, c_table, tol);
        }
        hit
    };
    Ok((
        value_ok && time_ok,
        format!("N={n}: C = {:.4} at t = {:.1}, theta = {:.4}", rec.concurrence, rec.t, rec.theta),
    ))
}

fn rows(items: &[(usize, f64, f64, f64)], candidates: &[f64]) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for &(n, t, c, tol) in items {
        let (pass, d) = table_row(n, candidates, t, c, tol)?;
        ok &= pass;
        detail.push(d);
    }
    Ok((ok, detail.join("; ")))
}

fn table_cqw() -> Outcome {
    rows(
        &[(5, 55.4, 0.999, 0.005), (7, 85.1, 0.992, 0.01), (9, 2.9, 0.947, 0.01), (33, 9.3, 0.718, 0.03)],
        &[-FRAC_PI_2, FRAC_PI_2],
    )
}

fn table_ctqw() -> Outcome {
    let (ok5, d5) = rows(&[(5, 193.9, 0.993, 0.005)], &[0.0])?;
    let search = LongTimeSearch::tabulated(500.0);
    let mut ok = ok5;
    let mut detail = vec![d5];
    // only the N = 5 time is pinned for this table
    let r5 = optimize_theta(5, PI, &[0.0], &search)?;
    ok &= within(r5.t, 193.9, 1.0);
    for (n, c, tol) in [(19, 0.661, 0.02), (33, 0.540, 0.02)] {
        let r = optimize_theta(n, PI, &[0.0], &search)?;
        ok &= within(r.concurrence, c, tol);
        detail.push(format!("N={n}: C = {:.4} at t = {:.1}", r.concurrence, r.t));
    }
    Ok((ok, detail.join("; ")))
}

fn scaling() -> Outcome {
    let ns: Vec<usize> = (5..=71).step_by(2).collect();
    let grid = scaling_grid();
    let mut ok = true;
    let mut detail = Vec::new();
    for theta in [FRAC_PI_2, 0.0] {
        let r = scaling_sweep(&ns, theta, &StateSpec::bell(), &grid)?;
        let worst = r.rows.iter().filter(|x| x.n > 9).map(|x| x.concurrence).fold(0.0, f64::max);
        ok &= r.r_squared >= 0.98 && worst < 0.9;
        detail.push(format!(
            "theta={theta:.4}: slope {:.4}, R^2 = {:.5}, max C(N>9) = {worst:.4}",
            r.slope, r.r_squared
        ));
    }
    Ok((ok, detail.join("; ")))
}

fn werner_ordering() -> Outcome {
    let grid = TimeGrid::short_time();
    let top = first(&werner_trace(5, 1.0, FRAC_PI_2, &grid)?)?;
    let mut f = Vec::new();
    for b in [1.0, 0.5, 0.0, -0.25] {
        let p = Probe::new(&GraphSpec::triangular(5, FRAC_PI_2), &StateSpec::Werner { b }, Measure::Fidelity)?;
        f.push(p.at(top.t_peak)?);
    }
    let ok = f[0] > f[1] && f[1] > f[2] && f[2] >= f[3];
    Ok((ok, format!("at t = {:.3}: F(b=1, 1/2, 0, -1/4) = {:.4}, {:.4}, {:.4}, {:.4}", top.t_peak, f[0], f[1], f[2], f[3])))
}

fn appendix_graphs() -> Outcome {
    let grid = TimeGrid::short_time();
    let cycle = global_max(&concurrence_trace(&GraphSpec::cycle(5, FRAC_PI_2), &StateSpec::bell(), &grid)?)?;
    let star = global_max(&concurrence_trace(&GraphSpec::complete(5, FRAC_PI_2), &StateSpec::bell(), &grid)?)?;
    let ok = within(cycle.value, 0.93, 0.03)
        && within(cycle.t_peak, 4.5, 0.3)
        && star.value >= 0.97
        && within(star.t_peak, 3.7, 0.3);
    Ok((
        ok,
        format!(
            "cycle C = {:.4} at t = {:.3}; pentagram C = {:.4} at t = {:.3}",
            cycle.value, cycle.t_peak, star.value, star.t_peak
        ),
    ))
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_pair_state(r: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let i = r.random_range(1..=n);
    let j = (i % n) + 1;
    let psi0 = spatial_pair(SpatialPairSpec::new(n, i, j, r.random_range(-PI..PI)).unwrap()).unwrap();
    let d = GraphSpec::triangular(n, r.random_range(-PI..PI)).decompose().unwrap();
    evolve_pure(&d, &psi0, r.random_range(-20.0..20.0)).unwrap().to_density()
}

fn full_space_pair(rho: &DensityMatrix, i: usize, j: usize) -> Matrix4<Complex64> {
    let n = rho.dim();
    let dim = 1usize << n;
    let mut full = DMatrix::<Complex64>::zeros(dim, dim);
    for a in 0..n {
        for b in 0..n {
            full[(1 << (n - 1 - a), 1 << (n - 1 - b))] = rho.entries()[(a, b)];
        }
    }
    let bit = |x: usize, s: usize| (x >> (n - s)) & 1;
    let mut out = Matrix4::zeros();
    for x in 0..dim {
        for y in 0..dim {
            if (1..=n).filter(|&s| s != i && s != j).all(|s| bit(x, s) == bit(y, s)) {
                out[(2 * bit(x, i) + bit(x, j), 2 * bit(y, i) + bit(y, j))] += full[(x, y)];
            }
        }
    }
    out
}

fn property_suites() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(14);
    let mut unit: f64 = 0.0;
    for _ in 0..100 {
        let n = r.random_range(3..10);
        let d = GraphSpec::triangular(n, r.random_range(-PI..PI)).decompose()?;
        let t = r.random_range(-50.0..50.0);
        let u = propagator(&d, t)?;
        unit = unit.max(max_abs(&(u.adjoint() * &u - CMatrix::identity(n, n))));
        let rho0 = werner(n, WernerSpec::new(r.random_range(-1.0..=1.0))?)?;
        let rho = evolve_density(&d, &rho0, t)?;
        unit = unit.max((rho.trace() - 1.0).abs()).max((rho.purity() - rho0.purity()).abs());
    }

    let mut trs: f64 = 0.0;
    for n in 3..10 {
        let d = GraphSpec::triangular(n, 0.0).decompose()?;
        let psi = localized(n, 1)?;
        for k in 0..=100 {
            let t = k as f64 * 0.1;
            let (f, b) = (evolve_pure(&d, &psi, t)?, evolve_pure(&d, &psi, -t)?);
            for i in 1..=n {
                trs = trs.max((f.occupation(i)? - b.occupation(i)?).abs());
            }
        }
    }

    let mut oracle: f64 = 0.0;
    let cases = 1000;
    for k in 0..cases {
        let n = 3 + k % 8;
        let rho = random_pair_state(&mut r, n);
        let i = r.random_range(1..n);
        let j = r.random_range(i + 1..=n);
        let w = concurrence_wootters(&reduced_pair(&rho, i, j)?)?;
        let direct = (2.0 * rho.element(i, j)?.norm()).min(1.0);
        oracle = oracle.max((w - direct).abs()).max((concurrence_pair_fast(&rho, i, j)? - w).abs());
    }

    let mut trace_dev: f64 = 0.0;
    for n in 3..=6 {
        for _ in 0..10 {
            let rho = random_pair_state(&mut r, n);
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        let dev = reduced_pair(&rho, i, j)?.matrix() - full_space_pair(&rho, i, j);
                        trace_dev = trace_dev.max(dev.iter().map(|z| z.norm()).fold(0.0, f64::max));
                    }
                }
            }
        }
    }

    let grid = TimeGrid::short_time();
    let mut stable = true;
    let mut worst_dt: f64 = 0.0;
    let mut worst_dv: f64 = 0.0;
    let short_cases = [
        (GraphSpec::triangular(5, 0.0), StateSpec::pair(3.0 * FRAC_PI_4), false),
        (GraphSpec::triangular(5, FRAC_PI_2), StateSpec::bell(), false),
        (GraphSpec::triangular(5, 0.0), StateSpec::bell(), false),
        (GraphSpec::cycle(5, FRAC_PI_2), StateSpec::bell(), true),
        (GraphSpec::complete(5, FRAC_PI_2), StateSpec::bell(), true),
    ];
    for (g, s, global) in short_cases {
        let pick = |grid: &TimeGrid| -> Result<PeakResult, Box<dyn std::error::Error>> {
            let tr = concurrence_trace(&g, &s, grid)?;
            if global { Ok(global_max(&tr)?) } else { first(&tr) }
        };
        let (a, b) = (pick(&grid)?, pick(&grid.halved())?);
        worst_dt = worst_dt.max((a.t_peak - b.t_peak).abs());
        worst_dv = worst_dv.max((a.value - b.value).abs());
        stable &= (a.t_peak - b.t_peak).abs() < grid.dt() && (a.value - b.value).abs() < 1e-4;
    }
    let long = TimeGrid::new(0.0, 100.0, 0.005)?;
    for theta in [FRAC_PI_2, 0.0] {
        let g = GraphSpec::triangular(5, theta);
        let a = global_max(&concurrence_trace(&g, &StateSpec::bell(), &long)?)?;
        let b = global_max(&concurrence_trace(&g, &StateSpec::bell(), &long.halved())?)?;
        worst_dt = worst_dt.max((a.t_peak - b.t_peak).abs());
        worst_dv = worst_dv.max((a.value - b.value).abs());
        stable &= (a.t_peak - b.t_peak).abs() < long.dt() && (a.value - b.value).abs() < 1e-4;
    }

    let ok = unit <= 1e-9 && trs <= 1e-9 && oracle <= 1e-9 && trace_dev <= 1e-10 && stable;
    Ok((
        ok,
        format!(
            "unitarity/trace/purity {unit:.1e}; TRS {trs:.1e}; Wootters oracle {oracle:.1e} over {cases} cases; \
             partial trace {trace_dev:.1e}; refinement dt {worst_dt:.1e}, dC {worst_dv:.1e}"
        ),
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("spectrum of the chiral five-site chain", spectrum),
        ("weak transfer of the real walk from |1>", ctqw_weak_transfer),
        ("optimal initial phase of the real walk", ctqw_optimal_phase),
        ("short-time chiral transfer beats the real walk", cqw_short_time),
        ("near-perfect population transfer", population_transfer),
        ("time-asymmetry nulls", pts_nulls),
        ("time-asymmetry maxima", pts_maxima),
        ("long-time pretty-good transfer", long_time_pgst),
        ("chiral long-time table rows", table_cqw),
        ("real-walk long-time table rows", table_ctqw),
        ("transfer time scales linearly with N", scaling),
        ("Werner fidelity ordering", werner_ordering),
        ("cycle and pentagram transfer", appendix_graphs),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let status = if pass { "PASS" } else { "FAIL" };
        println!("{status} [{:>2}] {name}: {detail} ({:.2} s)", k + 1, start.elapsed().as_secs_f64());
        failed += usize::from(!pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
