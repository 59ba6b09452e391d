//! Parallel evaluation of per-cell quantities over an `(m, β)` grid.
//!
//! Each cell builds its own resource state and evaluates a pure function of
//! it, so the worker count changes only the schedule, never the bits.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{FidelityGrid, GridMeta};
use crate::numerics::{HalfInt, RotationGenerator};
use crate::scalar::Real;
use crate::states::{resource_coeffs_with, ResourceCoeffs, ResourceParams};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

impl SweepOptions {
    pub fn with_threads(threads: usize) -> Self {
        Self { threads: Some(threads) }
    }
}

/// Evaluates `cell` on the resource of every `(m, β)` pair at fixed `total`.
/// Pairs without integer photon numbers are left as NaN.
pub fn sweep_resources<T, F>(
    total: usize,
    beta_axis: &[T],
    m_axis: &[HalfInt],
    meta: GridMeta,
    options: SweepOptions,
    cell: F,
) -> Result<FidelityGrid<T>>
where
    T: Real,
    F: Fn(&ResourceCoeffs<T>) -> Result<T> + Sync,
{
    for &beta in beta_axis {
        ResourceParams::new(0, 0, beta)?;
    }
    let generator = RotationGenerator::new(HalfInt::from_twice(total as i64))?;
    let width = beta_axis.len();
    let evaluate = |k: usize| -> Result<T> {
        let (m, beta) = (m_axis[k / width], beta_axis[k % width]);
        match ResourceParams::from_total(total, m, beta) {
            Ok(params) => cell(&resource_coeffs_with(&generator, params)?),
            Err(Error::InvalidParams(_)) => Ok(T::nan()),
            Err(e) => Err(e),
        }
    };
    let n_cells = width * m_axis.len();
    let run = || (0..n_cells).into_par_iter().map(evaluate).collect::<Result<Vec<T>>>();
    let values = match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .expect("thread pool")
            .install(run)?,
        None => run()?,
    };
    Ok(FidelityGrid { beta_axis: beta_axis.to_vec(), m_axis: m_axis.to_vec(), values, meta })
}
