//! Joint phase-difference distribution of the resource state and the
//! location of its maximum.
//!
//! Projecting both modes onto (non-normalizable) phase states gives the
//! unnormalized density `P(φ) = |Σ_n e^{inφ} a_n|²`. Which amplitudes `a_n`
//! enter is a choice of phase reference, see [`PhaseConvention`].

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{FidelityGrid, GridKind, GridMeta};
use crate::numerics::HalfInt;
use crate::scalar::{CompensatedSum, Real};
use crate::states::ResourceCoeffs;
use crate::sweep::{sweep_resources, SweepOptions};

pub const DEFAULT_PHASE_GRID: usize = 4096;
pub const MIN_PHASE_GRID: usize = 16;

/// Relative gap below which two profile values count as tied.
const TIE_RTOL: f64 = 1e-9;

/// Amplitudes summed in the joint phase density.
///
/// The two choices differ by the quarter-turn factor `e^{-iπ/2 (n - n_in)}`
/// carried by the resource coefficients, which translates the whole profile
/// rigidly by π/2 in `φ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhaseConvention {
    /// Real rotation amplitudes `d^N_{n-N, m}(β)`. Places the balanced
    /// 50:50 maximum at `φ = π/2`.
    #[default]
    RotationAmplitudes,
    /// Full resource coefficients including their quarter-turn phases.
    ResourceCoefficients,
}

fn amplitudes<T: Real>(resource: &ResourceCoeffs<T>, convention: PhaseConvention) -> Vec<Complex<T>> {
    match convention {
        PhaseConvention::RotationAmplitudes => {
            resource.rotation_amplitudes().iter().map(|&a| Complex::new(a, T::zero())).collect()
        }
        PhaseConvention::ResourceCoefficients => resource.coeffs().to_vec(),
    }
}

/// `|Σ_n e^{inφ} a_n|²` with the default convention.
pub fn joint_phase_prob<T: Real>(resource: &ResourceCoeffs<T>, phi_minus: T) -> T {
    joint_phase_prob_with(resource, phi_minus, PhaseConvention::default())
}

pub fn joint_phase_prob_with<T: Real>(resource: &ResourceCoeffs<T>, phi_minus: T, convention: PhaseConvention) -> T {
    direct_density(&amplitudes(resource, convention), phi_minus)
}

fn direct_density<T: Real>(amps: &[Complex<T>], phi: T) -> T {
    let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
    for (n, a) in amps.iter().enumerate() {
        let term = Complex::from_polar(T::one(), T::from_count(n) * phi) * a;
        re.add(term.re);
        im.add(term.im);
    }
    Complex::new(re.value(), im.value()).norm_sqr()
}

/// Uniform grid `φ_k = 2πk / size`, `k = 0..size`.
pub fn phase_axis<T: Real>(size: usize) -> Vec<T> {
    let denom = T::from_count(size);
    (0..size).map(|k| T::from_count(k) / denom * T::TAU()).collect()
}

/// Unnormalized density sampled on [`phase_axis`].
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseProfile<T> {
    pub phi_axis: Vec<T>,
    pub values: Vec<T>,
    pub n_in: usize,
    pub m_in: usize,
    pub beta: T,
}

impl<T: Real> PhaseProfile<T> {
    /// Grid argmax; among values within a relative `1e-9` of the maximum the
    /// smallest `φ` wins.
    pub fn argmax(&self) -> (T, T) {
        let (k, v) = argmax_smallest(&self.values);
        (self.phi_axis[k], v)
    }
}

fn argmax_smallest<T: Real>(values: &[T]) -> (usize, T) {
    let max = values.iter().copied().fold(T::neg_infinity(), T::max);
    let tol = T::lit(TIE_RTOL).max(T::lit(64.0) * T::epsilon()) * max.abs();
    let k = values.iter().position(|&v| v >= max - tol).expect("non-empty profile");
    (k, max)
}

fn profile_shell<T: Real>(resource: &ResourceCoeffs<T>, size: usize, values: Vec<T>) -> PhaseProfile<T> {
    let p = resource.params();
    PhaseProfile { phi_axis: phase_axis(size), values, n_in: p.n_in(), m_in: p.m_in(), beta: p.beta() }
}

/// Profile by explicit summation at every grid point, `O(size · 2N)`.
pub fn phase_profile_direct<T: Real>(
    resource: &ResourceCoeffs<T>,
    size: usize,
    convention: PhaseConvention,
) -> PhaseProfile<T> {
    let amps = amplitudes(resource, convention);
    let values = phase_axis::<T>(size).into_iter().map(|phi| direct_density(&amps, phi)).collect();
    profile_shell(resource, size, values)
}

/// FFT-backed evaluator for a fixed grid size, shareable across threads.
#[derive(Clone)]
pub struct PhaseEvaluator<T: Real> {
    size: usize,
    fft: Arc<dyn Fft<T>>,
}

impl<T: Real> PhaseEvaluator<T> {
    pub fn new(size: usize) -> Result<Self> {
        if size < MIN_PHASE_GRID {
            return Err(Error::Range {
                what: "phase grid size",
                value: size.to_string(),
                range: format!(">= {MIN_PHASE_GRID}"),
            });
        }
        let fft = FftPlanner::new().plan_fft_inverse(size);
        Ok(Self { size, fft })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Density values on [`phase_axis`]. Coefficients are folded modulo the
    /// grid size, so grids coarser than `2N + 1` stay exact.
    pub fn values(&self, resource: &ResourceCoeffs<T>, convention: PhaseConvention) -> Vec<T> {
        let mut buf = vec![Complex::new(T::zero(), T::zero()); self.size];
        for (n, a) in amplitudes(resource, convention).into_iter().enumerate() {
            buf[n % self.size] = buf[n % self.size] + a;
        }
        // unnormalized inverse transform: Σ_n a_n e^{+2πi kn/size}
        self.fft.process(&mut buf);
        buf.into_iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn profile(&self, resource: &ResourceCoeffs<T>, convention: PhaseConvention) -> PhaseProfile<T> {
        profile_shell(resource, self.size, self.values(resource, convention))
    }

    /// `(φ*, P_max)` under the default convention.
    pub fn argmax(&self, resource: &ResourceCoeffs<T>) -> (T, T) {
        self.argmax_with(resource, PhaseConvention::default())
    }

    pub fn argmax_with(&self, resource: &ResourceCoeffs<T>, convention: PhaseConvention) -> (T, T) {
        let (k, v) = argmax_smallest(&self.values(resource, convention));
        (T::from_count(k) / T::from_count(self.size) * T::TAU(), v)
    }
}

/// Grid location and value of the joint phase maximum; ties go to the smallest `φ`.
pub fn phase_argmax<T: Real>(resource: &ResourceCoeffs<T>, grid_size: usize) -> Result<(T, T)> {
    Ok(PhaseEvaluator::new(grid_size)?.argmax(resource))
}

/// `φ*` over an `(m, β)` grid at fixed total photon number.
pub fn phase_argmax_map<T: Real>(
    total: usize,
    beta_axis: &[T],
    m_axis: &[HalfInt],
    grid_size: usize,
    options: SweepOptions,
) -> Result<FidelityGrid<T>> {
    phase_argmax_map_with(total, beta_axis, m_axis, grid_size, PhaseConvention::default(), options)
}

pub fn phase_argmax_map_with<T: Real>(
    total: usize,
    beta_axis: &[T],
    m_axis: &[HalfInt],
    grid_size: usize,
    convention: PhaseConvention,
    options: SweepOptions,
) -> Result<FidelityGrid<T>> {
    let evaluator = PhaseEvaluator::new(grid_size)?;
    let meta = GridMeta { kind: GridKind::PhaseArgmax, total, label: format!("phase-argmax(grid={grid_size})") };
    sweep_resources(total, beta_axis, m_axis, meta, options, |resource| Ok(evaluator.argmax_with(resource, convention).0))
}

/// How the cells whose `φ*` lies near π/2 rank in a fidelity grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RidgeStats<T> {
    /// Cells with `|φ* - π/2| < window`.
    pub ridge_cells: usize,
    /// Of those, how many have average fidelity above the grid median.
    pub above_median: usize,
    pub grid_median: T,
    pub ridge_median: T,
}

impl<T: Real> RidgeStats<T> {
    pub fn fraction_above(&self) -> T {
        T::from_count(self.above_median) / T::from_count(self.ridge_cells.max(1))
    }

    /// Majority of ridge cells above the grid median, and the ridge median above it too.
    pub fn holds(&self) -> bool {
        self.ridge_cells > 0 && 2 * self.above_median > self.ridge_cells && self.ridge_median > self.grid_median
    }
}

fn median<T: Real>(mut xs: Vec<T>) -> T {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = xs.len();
    if n == 0 {
        T::nan()
    } else if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) * T::lit(0.5)
    }
}

/// Compares a phase-argmax map with an average-fidelity map on the same axes.
pub fn ridge_correspondence<T: Real>(
    phase_map: &FidelityGrid<T>,
    fidelity: &FidelityGrid<T>,
    window: T,
) -> Result<RidgeStats<T>> {
    if phase_map.beta_axis != fidelity.beta_axis || phase_map.m_axis != fidelity.m_axis {
        return Err(Error::InvalidParams("phase and fidelity grids use different axes".into()));
    }
    let valid: Vec<(T, T)> = phase_map
        .values
        .iter()
        .zip(&fidelity.values)
        .filter(|(p, f)| !p.is_nan() && !f.is_nan())
        .map(|(&p, &f)| (p, f))
        .collect();
    let grid_median = median(valid.iter().map(|&(_, f)| f).collect());
    let ridge: Vec<T> =
        valid.iter().filter(|&&(p, _)| (p - T::FRAC_PI_2()).abs() < window).map(|&(_, f)| f).collect();
    let above_median = ridge.iter().filter(|&&f| f > grid_median).count();
    Ok(RidgeStats { ridge_cells: ridge.len(), above_median, grid_median, ridge_median: median(ridge) })
}
