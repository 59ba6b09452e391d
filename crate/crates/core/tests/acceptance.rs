//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use fock_teleport::grid::{interior_beta_axis, m_axis_range};
use fock_teleport::numerics::{wigner_d_direct, LogFactorialTable, RotationGenerator};
use fock_teleport::oracle::{default_beta_lattice, min_eigenvalue, oracle_check, protocol_brute_force};
use fock_teleport::phase::{phase_argmax_map, ridge_correspondence, DEFAULT_PHASE_GRID};
use fock_teleport::protocol::{
    average_fidelity, classical_baseline, fidelity_given_q, fidelity_sweep, number_sum_prob, outcome_distribution,
    output_state,
};
use fock_teleport::states::{cat_coeffs, cat_coeffs_with, fock_coeffs, resource_coeffs, Truncation};
use fock_teleport::{FidelityGrid, HalfInt, ResourceParams, SweepOptions, TargetCoeffs, WignerIndex};
use num_complex::Complex64;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const MAP_TOTAL: usize = 100;
const MAP_BETA_STEPS: usize = 101;
const MAP_ALPHA: f64 = 3.0;
const MAP_CUTOFF: usize = 60;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn map_target() -> TargetCoeffs {
    cat_coeffs(Complex64::new(MAP_ALPHA, 0.0), MAP_CUTOFF).expect("cat target")
}

fn map_axes() -> (Vec<f64>, Vec<HalfInt>) {
    let m_max = HalfInt::from_int(MAP_TOTAL as i64 / 2);
    (interior_beta_axis(MAP_BETA_STEPS), m_axis_range(HalfInt::ZERO, m_max))
}

fn fidelity_map(threads: Option<usize>) -> FidelityGrid {
    let (betas, ms) = map_axes();
    fidelity_sweep(&map_target(), MAP_TOTAL, &betas, &ms, SweepOptions { threads }).expect("fidelity sweep")
}

fn resource_oracle() -> Outcome {
    let reports = oracle_check(40, &default_beta_lattice()).map_err(|e| e.to_string())?;
    let worst = reports.iter().map(|r| 1.0 - r.overlap).fold(0.0, f64::max);
    let failed = reports.iter().filter(|r| !r.pass).count();
    ensure(failed == 0, format!("{} checks, {failed} failed, max 1-|overlap| = {worst:.2e}", reports.len()))
}

fn wigner_kernels() -> Outcome {
    let betas = default_beta_lattice();
    let table = LogFactorialTable::<f64>::new(64);

    let mut identity_exact = true;
    for j2 in 0..=40i64 {
        let g = RotationGenerator::new(HalfInt::from_twice(j2)).map_err(|e| e.to_string())?;
        for c in 0..=j2 {
            let col = g.column(HalfInt::from_twice(2 * c - j2), 0.0).map_err(|e| e.to_string())?;
            identity_exact &= col.iter().enumerate().all(|(r, &x)| x == if r as i64 == c { 1.0 } else { 0.0 });
            for r in 0..=j2 {
                let idx = WignerIndex::from_twice(j2, 2 * r - j2, 2 * c - j2).map_err(|e| e.to_string())?;
                let x = wigner_d_direct(&table, idx, 0.0).map_err(|e| e.to_string())?;
                identity_exact &= x == if r == c { 1.0 } else { 0.0 };
            }
        }
    }

    let mut ortho: f64 = 0.0;
    for j2 in 0..=30i64 {
        let g = RotationGenerator::new(HalfInt::from_twice(j2)).map_err(|e| e.to_string())?;
        for beta in betas {
            let cols: Vec<Vec<f64>> = (0..=j2)
                .map(|c| g.column(HalfInt::from_twice(2 * c - j2), beta))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for (a, ca) in cols.iter().enumerate() {
                for (b, cb) in cols.iter().enumerate() {
                    let dot: f64 = ca.iter().zip(cb).map(|(x, y)| x * y).sum();
                    ortho = ortho.max((dot - if a == b { 1.0 } else { 0.0 }).abs());
                }
            }
        }
    }

    let mut agree: f64 = 0.0;
    for j2 in 0..=40i64 {
        let g = RotationGenerator::new(HalfInt::from_twice(j2)).map_err(|e| e.to_string())?;
        for beta in betas {
            for c in 0..=j2 {
                let col = g.column(HalfInt::from_twice(2 * c - j2), beta).map_err(|e| e.to_string())?;
                for r in 0..=j2 {
                    let idx = WignerIndex::from_twice(j2, 2 * r - j2, 2 * c - j2).map_err(|e| e.to_string())?;
                    let direct = wigner_d_direct(&table, idx, beta).map_err(|e| e.to_string())?;
                    agree = agree.max((direct - col[r as usize]).abs());
                }
            }
        }
    }

    ensure(
        identity_exact && ortho < 1e-12 && agree < 1e-9,
        format!("identity exact: {identity_exact}, orthonormality {ortho:.2e} (j <= 15), direct vs stable {agree:.2e} (j <= 20)"),
    )
}

fn protocol_oracle() -> Outcome {
    let mut targets = vec![cat_coeffs_with(Complex64::new(1.0, 0.0), 6, Truncation::Renormalize).map_err(|e| e.to_string())?];
    for k in 0..=3 {
        targets.push(fock_coeffs(k, 6).map_err(|e| e.to_string())?);
    }
    let (mut worst_f, mut worst_rho, mut worst_p, mut outcomes) = (0.0f64, 0.0f64, 0.0f64, 0usize);
    for target in &targets {
        for total in 0..=6 {
            for n_in in 0..=total {
                for beta in default_beta_lattice() {
                    let params = ResourceParams::new(n_in, total - n_in, beta).map_err(|e| e.to_string())?;
                    let r = resource_coeffs(params).map_err(|e| e.to_string())?;
                    for q in 0..=target.cutoff() + total {
                        let p = number_sum_prob(target, &r, q);
                        if p <= 1e-12 {
                            continue;
                        }
                        outcomes += 1;
                        let brute = protocol_brute_force(target, &params, q, 0.37).map_err(|e| e.to_string())?;
                        let f = fidelity_given_q(target, &r, q).map_err(|e| e.to_string())?;
                        let rho = output_state(target, &r, q, 0.37).map_err(|e| e.to_string())?;
                        worst_p = worst_p.max((brute.p_q - p).abs());
                        worst_f = worst_f.max((brute.rho_out.fidelity_with(target) - f).abs());
                        worst_rho = worst_rho.max(rho.max_abs_diff(&brute.rho_out));
                    }
                }
            }
        }
    }
    ensure(
        worst_f < 1e-10 && worst_rho < 1e-10 && outcomes > 0,
        format!("{outcomes} outcomes, max |dF| = {worst_f:.2e}, max |d rho| = {worst_rho:.2e}, max |dP| = {worst_p:.2e}"),
    )
}

fn analytic_limits() -> Outcome {
    let mut fock_worst: f64 = 0.0;
    for k in 0..=6 {
        let target = fock_coeffs(k, 10).map_err(|e| e.to_string())?;
        for total in [0usize, 1, 4, 9, 20, 100] {
            for n_in in [0, total / 3, total / 2, total] {
                for beta in [0.0, 0.1, 0.5, FRAC_PI_2, 2.5, 3.0, PI] {
                    let r = resource_coeffs(ResourceParams::new(n_in, total - n_in, beta).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    fock_worst = fock_worst.max((average_fidelity(&target, &r) - 1.0).abs());
                }
            }
        }
    }

    let target = map_target();
    let ms = m_axis_range(HalfInt::ZERO, HalfInt::from_int(MAP_TOTAL as i64 / 2));
    let grid = fidelity_sweep(&target, MAP_TOTAL, &[0.0, PI], &ms, SweepOptions::default()).map_err(|e| e.to_string())?;
    let params = ResourceParams::new(MAP_TOTAL / 2, MAP_TOTAL / 2, 0.0).map_err(|e| e.to_string())?;
    let baseline = classical_baseline(&target, &params);
    let edge_worst = grid.values.iter().map(|v| (v - baseline).abs()).fold(0.0, f64::max);

    ensure(
        fock_worst < 1e-12 && edge_worst < 1e-9,
        format!("Fock max |F-1| = {fock_worst:.2e}, beta in {{0, pi}} max |F-baseline| = {edge_worst:.2e}"),
    )
}

fn has_interior_peak_above(row: &[f64], level: f64) -> Option<usize> {
    (1..row.len() - 1).find(|&k| row[k] > row[k - 1] && row[k] > row[k + 1] && row[k] > level)
}

fn fidelity_map_shape(grid: &FidelityGrid) -> Outcome {
    let target = map_target();
    let baseline = classical_baseline(&target, &ResourceParams::new(0, 0, 0.0).map_err(|e| e.to_string())?);
    let (i_center, _) = grid.beta_axis.iter().enumerate().find(|(_, &b)| b == FRAC_PI_2).ok_or("no beta = pi/2 column")?;
    let ((am, ab), vmax) = grid.argmax().ok_or("empty grid")?;
    let at_center = am == 0 && ab == i_center;

    let in_range = grid.values.iter().all(|v| (0.0..=1.0).contains(v));
    let last = grid.width() - 1;
    let (mut edge_abs, mut edge_rel): (f64, f64) = (0.0, 0.0);
    for i_m in 0..grid.height() {
        for i_b in [0, last] {
            let d = (grid.get(i_m, i_b) - baseline).abs();
            edge_abs = edge_abs.max(d);
            edge_rel = edge_rel.max(d / baseline);
        }
    }

    let mut ridges = Vec::new();
    for m in [5i64, 10, 20] {
        let i_m = grid.m_axis.iter().position(|&x| x == HalfInt::from_int(m)).ok_or("m missing from axis")?;
        ridges.push(has_interior_peak_above(grid.row(i_m), baseline).map(|k| grid.beta_axis[k]));
    }
    let ridges_ok = ridges.iter().all(Option::is_some);

    ensure(
        at_center && in_range && edge_abs < 0.02 && ridges_ok,
        format!(
            "max {vmax:.4} at (m = {}, beta = {:.4}), values in [0,1]: {in_range}, boundary columns max |F-baseline| = {edge_abs:.4} ({:.2}% of baseline {baseline:.4}), ridge peaks at beta = {:?}",
            grid.m_axis[am],
            grid.beta_axis[ab],
            100.0 * edge_rel,
            ridges.iter().map(|r| r.map(|b| format!("{b:.3}"))).collect::<Vec<_>>()
        ),
    )
}

fn phase_map_shape(fidelity: &FidelityGrid) -> Outcome {
    let (betas, ms) = map_axes();
    let map = phase_argmax_map(MAP_TOTAL, &betas, &ms, DEFAULT_PHASE_GRID, SweepOptions::default())
        .map_err(|e| e.to_string())?;
    let i_center = betas.iter().position(|&b| b == FRAC_PI_2).ok_or("no beta = pi/2 column")?;
    let phi = map.get(0, i_center);
    let resolution = std::f64::consts::TAU / DEFAULT_PHASE_GRID as f64;
    let stats = ridge_correspondence(&map, fidelity, 0.1).map_err(|e| e.to_string())?;
    ensure(
        (phi - FRAC_PI_2).abs() <= 0.5 * resolution && stats.holds(),
        format!(
            "phi*(pi/2, 0) = {phi:.6}, {} ridge cells, {:.1}% above grid median, ridge median {:.4} vs grid median {:.4}",
            stats.ridge_cells,
            100.0 * stats.fraction_above(),
            stats.ridge_median,
            stats.grid_median
        ),
    )
}

fn normalization_positivity() -> Outcome {
    let mut targets = vec![
        map_target(),
        cat_coeffs_with(Complex64::new(1.0, 0.0), 6, Truncation::Renormalize).map_err(|e| e.to_string())?,
        fock_coeffs(3, 6).map_err(|e| e.to_string())?,
    ];
    targets.push(TargetCoeffs::from_coeffs(
        (0..8).map(|k| Complex64::new((0.3 * k as f64).cos(), (1.7 * k as f64).sin())).collect(),
        "mixed phases",
    ));
    let (mut sum_p, mut trace, mut herm, mut min_eig, mut states) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY, 0usize);
    for target in &targets {
        for (n_in, m_in) in [(0, 0), (1, 1), (2, 3), (5, 5), (10, 4), (50, 50)] {
            for beta in default_beta_lattice() {
                let r = resource_coeffs(ResourceParams::new(n_in, m_in, beta).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let dist = outcome_distribution(target, &r);
                sum_p = sum_p.max((dist.total_probability() - 1.0).abs());
                if n_in + m_in > 20 {
                    continue;
                }
                for (q, p) in dist.p.iter().enumerate() {
                    if *p <= 1e-12 {
                        continue;
                    }
                    let rho = output_state(target, &r, q, 0.9).map_err(|e| e.to_string())?;
                    states += 1;
                    trace = trace.max((rho.trace() - Complex64::new(1.0, 0.0)).norm());
                    herm = herm.max(rho.hermiticity_error());
                    min_eig = min_eig.min(min_eigenvalue(&rho));
                }
            }
        }
    }
    ensure(
        sum_p < 1e-10 && trace < 1e-10 && herm < 1e-12 && min_eig >= -1e-10,
        format!(
            "max |sum P - 1| = {sum_p:.2e}; {states} states: max |tr - 1| = {trace:.2e}, hermiticity {herm:.2e}, min eigenvalue {min_eig:.2e}"
        ),
    )
}

fn convergence() -> Outcome {
    let target = map_target();
    let mut values = Vec::new();
    for total in [10usize, 20, 40, 100] {
        let r = resource_coeffs(ResourceParams::new(total / 2, total / 2, FRAC_PI_2).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        values.push(average_fidelity(&target, &r));
    }
    let ok = values.windows(2).all(|w| w[1] >= w[0]);
    ensure(ok, format!("F(total = 10, 20, 40, 100) = {}", values.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(", ")))
}

fn determinism(reference: &FidelityGrid) -> Outcome {
    let single = fidelity_map(Some(1)).to_csv();
    let many = fidelity_map(Some(4)).to_csv();
    let default = reference.to_csv();
    ensure(
        single.as_bytes() == many.as_bytes() && single.as_bytes() == default.as_bytes(),
        format!("{} bytes, 1 vs 4 vs default workers identical: {}", single.len(), single == many && single == default),
    )
}

fn main() -> ExitCode {
    let map = fidelity_map(None);
    let criteria: Vec<Criterion> = vec![
        ("resource matches brute-force sector propagator", Box::new(resource_oracle)),
        ("rotation-matrix kernels", Box::new(wigner_kernels)),
        ("protocol matches brute-force pipeline", Box::new(protocol_oracle)),
        ("exact analytic limits", Box::new(analytic_limits)),
        ("average-fidelity map at total 100", Box::new(|| fidelity_map_shape(&map))),
        ("phase-argmax map and ridge correspondence", Box::new(|| phase_map_shape(&map))),
        ("normalization and positivity", Box::new(normalization_positivity)),
        ("fidelity grows with total photon number", Box::new(convergence)),
        ("sweep output independent of worker count", Box::new(|| determinism(&map))),
    ];

    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2} s)", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.2} s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
