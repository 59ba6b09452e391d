use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use fock_teleport::grid::{interior_beta_axis, m_axis_range, sig17};
use fock_teleport::oracle::{default_beta_lattice, oracle_check, RESOURCE_CHECK_MAX_TOTAL};
use fock_teleport::phase::{phase_argmax_map_with, PhaseConvention};
use fock_teleport::protocol::{
    average_fidelity, classical_baseline, fidelity_given_q, fidelity_sweep, number_sum_prob, outcome_distribution,
};
use fock_teleport::states::{
    cat_auto_cutoff, cat_coeffs, coherent_auto_cutoff, coherent_coeffs, fock_coeffs, resource_coeffs,
};
use fock_teleport::{FidelityGrid, HalfInt, ResourceParams, SweepOptions, TargetCoeffs};
use num_complex::Complex64;

use crate::args::{
    Convention, DistributionCmd, FidelityCmd, GridArgs, OracleCmd, PhaseMapCmd, ResourceArgs, ResourceCmd, SweepCmd,
    TargetArgs, TargetKind,
};
use crate::output::{out_dir, write_atomic};

pub enum Status {
    Ok,
    OracleFailed,
}

fn build_target(args: &TargetArgs) -> Result<TargetCoeffs> {
    let alpha = Complex64::new(args.alpha, 0.0);
    let target = match args.target {
        TargetKind::Fock => fock_coeffs(args.k, args.cutoff.unwrap_or(args.k)).context("--k must not exceed --cutoff")?,
        TargetKind::Cat => {
            cat_coeffs(alpha, args.cutoff.unwrap_or_else(|| cat_auto_cutoff(args.alpha))).context("--cutoff too small")?
        }
        TargetKind::Coherent => coherent_coeffs(alpha, args.cutoff.unwrap_or_else(|| coherent_auto_cutoff(args.alpha)))
            .context("--cutoff too small")?,
    };
    Ok(target)
}

fn build_params(args: &ResourceArgs) -> Result<ResourceParams> {
    match (args.n_in, args.m_in, args.total, args.m) {
        (Some(n), Some(m), None, None) => Ok(ResourceParams::new(n, m, args.beta)?),
        (None, None, Some(total), Some(m)) => {
            ResourceParams::from_total(total, m, args.beta).context("--total and --m are incompatible")
        }
        _ => bail!("give either --n-in and --m-in, or --total and --m"),
    }
}

fn emit(text: &str, output: Option<&Path>, out: Option<&Path>) -> Result<()> {
    match output {
        Some(name) => {
            let path = out_dir(out).join(name);
            write_atomic(&path, text.as_bytes())?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn resource(cmd: &ResourceCmd) -> Result<Status> {
    let params = build_params(&cmd.resource)?;
    let r = resource_coeffs(params)?;
    emit(&r.to_csv(), cmd.output.as_deref(), cmd.common.out_dir.as_deref())?;
    Ok(Status::Ok)
}

pub fn distribution(cmd: &DistributionCmd) -> Result<Status> {
    let target = build_target(&cmd.target)?;
    let r = resource_coeffs(build_params(&cmd.resource)?)?;
    let dist = outcome_distribution(&target, &r);
    let mut csv = String::from("q,probability,fidelity\n");
    for (i, (p, f)) in dist.p.iter().zip(&dist.f).enumerate() {
        writeln!(csv, "{},{},{}", dist.q_min + i, sig17(*p), sig17(f.unwrap_or(f64::NAN)))?;
    }
    emit(&csv, cmd.output.as_deref(), cmd.common.out_dir.as_deref())?;
    if cmd.output.is_some() {
        println!("average fidelity {}", sig17(dist.average_fidelity()));
    }
    Ok(Status::Ok)
}

pub fn fidelity(cmd: &FidelityCmd) -> Result<Status> {
    let target = build_target(&cmd.target)?;
    let params = build_params(&cmd.resource)?;
    let r = resource_coeffs(params)?;
    println!("target {} (cutoff {})", target.label(), target.cutoff());
    println!("resource n_in = {}, m_in = {}, beta = {}", params.n_in(), params.m_in(), sig17(params.beta()));
    println!("average fidelity {}", sig17(average_fidelity(&target, &r)));
    println!("classical baseline {}", sig17(classical_baseline(&target, &params)));
    if let Some(q) = cmd.q {
        println!("P(q = {q}) {}", sig17(number_sum_prob(&target, &r, q)));
        let f = fidelity_given_q(&target, &r, q).with_context(|| format!("--q {q}"))?;
        println!("F(q = {q}) {}", sig17(f));
    }
    Ok(Status::Ok)
}

/// Default half-difference axis runs from the smallest compatible value
/// (`0` or `1/2`) up to `total / 2`.
fn grid_axes(grid: &GridArgs) -> (Vec<f64>, Vec<HalfInt>) {
    let total = grid.total as i64;
    let (start, end) = grid.m_range.unwrap_or((HalfInt::from_twice(total % 2), HalfInt::from_twice(total)));
    (interior_beta_axis(grid.beta_steps), m_axis_range(start, end))
}

fn warn_invalid_rows(total: usize, m_axis: &[HalfInt]) {
    let twice_total = total as i64;
    for &m in m_axis {
        if (m.twice() - twice_total) % 2 != 0 {
            eprintln!("warning: m = {m} has the wrong parity for total {total}; row written as NaN");
        } else if m.twice().abs() > twice_total {
            eprintln!("warning: |m| = {m} exceeds total/2 = {}; row written as NaN", HalfInt::from_twice(twice_total));
        }
    }
}

fn write_grid(grid: &FidelityGrid, stem: &str, out: Option<&Path>) -> Result<()> {
    let dir = out_dir(out);
    let csv = dir.join(format!("{stem}.csv"));
    let pgm = dir.join(format!("{stem}.pgm"));
    write_atomic(&csv, grid.to_csv().as_bytes())?;
    write_atomic(&pgm, &grid.to_pgm())?;
    println!("wrote {}", csv.display());
    println!("wrote {}", pgm.display());
    Ok(())
}

fn options(grid: &GridArgs) -> Result<SweepOptions> {
    match grid.threads {
        Some(0) => bail!("--threads must be at least 1"),
        threads => Ok(SweepOptions { threads }),
    }
}

fn report_max(grid: &FidelityGrid, what: &str) {
    if let Some(((i_m, i_b), v)) = grid.argmax() {
        println!("max {what} {} at beta = {}, m = {}", sig17(v), sig17(grid.beta_axis[i_b]), grid.m_axis[i_m]);
    }
}

pub fn sweep(cmd: &SweepCmd) -> Result<Status> {
    let target = build_target(&cmd.target)?;
    let (betas, ms) = grid_axes(&cmd.grid);
    warn_invalid_rows(cmd.grid.total, &ms);
    let grid = fidelity_sweep(&target, cmd.grid.total, &betas, &ms, options(&cmd.grid)?)?;
    write_grid(&grid, cmd.grid.prefix.as_deref().unwrap_or("fidelity"), cmd.common.out_dir.as_deref())?;
    report_max(&grid, "average fidelity");
    println!("classical baseline {}", sig17(classical_baseline(&target, &ResourceParams::new(0, 0, 0.0)?)));
    Ok(Status::Ok)
}

pub fn phase_map(cmd: &PhaseMapCmd) -> Result<Status> {
    let (betas, ms) = grid_axes(&cmd.grid);
    warn_invalid_rows(cmd.grid.total, &ms);
    let convention = match cmd.convention {
        Convention::Rotation => PhaseConvention::RotationAmplitudes,
        Convention::Resource => PhaseConvention::ResourceCoefficients,
    };
    let grid = phase_argmax_map_with(cmd.grid.total, &betas, &ms, cmd.phi_grid, convention, options(&cmd.grid)?)?;
    write_grid(&grid, cmd.grid.prefix.as_deref().unwrap_or("phase"), cmd.common.out_dir.as_deref())?;
    Ok(Status::Ok)
}

pub fn oracle(cmd: &OracleCmd) -> Result<Status> {
    if cmd.max_total > RESOURCE_CHECK_MAX_TOTAL {
        bail!("--max-total {} exceeds the oracle cap of {RESOURCE_CHECK_MAX_TOTAL}", cmd.max_total);
    }
    let betas = if cmd.betas.is_empty() { default_beta_lattice().to_vec() } else { cmd.betas.clone() };
    let reports = oracle_check(cmd.max_total, &betas)?;
    println!("{:>5} {:>5} {:>10} {:>12} {:>12} {:>12}  status", "n_in", "m_in", "beta", "1-|overlap|", "max_dev", "phase");
    let mut failed = 0;
    for r in &reports {
        let pass = 1.0 - r.overlap < cmd.tol;
        if !pass {
            failed += 1;
        }
        if !cmd.quiet || !pass {
            println!(
                "{:>5} {:>5} {:>10.6} {:>12.3e} {:>12.3e} {:>12.6}  {}",
                r.n_in,
                r.m_in,
                r.beta,
                1.0 - r.overlap,
                r.max_deviation,
                r.residual_phase,
                if pass { "PASS" } else { "FAIL" }
            );
        }
    }
    println!("{} of {} checks passed (tolerance {:e})", reports.len() - failed, reports.len(), cmd.tol);
    Ok(if failed == 0 { Status::Ok } else { Status::OracleFailed })
}
