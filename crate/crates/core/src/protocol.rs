//! Closed-form statistics of the number-sum teleportation protocol.
//!
//! Alice's joint measurement on the target and mode A returns a number sum
//! `q` (and a phase difference that Bob's correction removes). With target
//! coefficients `c` and resource coefficients `d`:
//!
//! ```text
//! P(q) = Σ_n |c_{q-n}|² |d_n|²
//! F(q) = |Σ_n |c_{q-n}|² d_n|² / P(q)
//! F̄   = Σ_q P(q) F(q)
//! ```
//!
//! with `n` running over `0..=min(q, 2N)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{FidelityGrid, GridKind, GridMeta};
use crate::numerics::HalfInt;
use crate::scalar::{CompensatedSum, Real};
use crate::states::{ResourceCoeffs, ResourceParams, TargetCoeffs};
use crate::sweep::{sweep_resources, SweepOptions};

/// Below this probability an outcome's fidelity is left undefined.
pub const DEFINED_OUTCOME_THRESHOLD: f64 = 1e-15;

/// Range of resource indices `n` contributing to outcome `q`.
fn window<T: Real>(target: &TargetCoeffs<T>, resource: &ResourceCoeffs<T>, q: usize) -> std::ops::RangeInclusive<usize> {
    let lo = q.saturating_sub(target.cutoff());
    let hi = q.min(resource.total());
    lo..=hi
}

pub fn number_sum_prob<T: Real>(target: &TargetCoeffs<T>, resource: &ResourceCoeffs<T>, q: usize) -> T {
    let d = resource.coeffs();
    let mut acc = CompensatedSum::new();
    for n in window(target, resource, q) {
        acc.add(target.get(q - n).norm_sqr() * d[n].norm_sqr());
    }
    acc.value()
}

fn defined_prob<T: Real>(target: &TargetCoeffs<T>, resource: &ResourceCoeffs<T>, q: usize) -> Result<T> {
    let p = number_sum_prob(target, resource, q);
    if p > T::lit(DEFINED_OUTCOME_THRESHOLD) {
        Ok(p)
    } else {
        Err(Error::UndefinedOutcome { q })
    }
}

/// `Σ_n |c_{q-n}|² d_n`, the amplitude whose squared modulus is `P(q) F(q)`.
fn weighted_resource_sum<T: Real>(target: &TargetCoeffs<T>, resource: &ResourceCoeffs<T>, q: usize) -> Complex<T> {
    let d = resource.coeffs();
    let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
    for n in window(target, resource, q) {
        let w = target.get(q - n).norm_sqr();
        re.add(w * d[n].re);
        im.add(w * d[n].im);
    }
    Complex::new(re.value(), im.value())
}

/// Teleportation fidelity conditioned on outcome `q`, via the factored form.
pub fn fidelity_given_q<T: Real>(target: &TargetCoeffs<T>, resource: &ResourceCoeffs<T>, q: usize) -> Result<T> {
    let p = defined_prob(target, resource, q)?;
    Ok(weighted_resource_sum(target, resource, q).norm_sqr() / p)
}

/// The same fidelity evaluated as the explicit double sum over `(n, n')`.
/// Returned complex so callers can check that the imaginary part vanishes.
pub fn fidelity_double_sum<T: Real>(
    target: &TargetCoeffs<T>,
    resource: &ResourceCoeffs<T>,
    q: usize,
) -> Result<Complex<T>> {
    let p = defined_prob(target, resource, q)?;
    let d = resource.coeffs();
    let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
    for n in window(target, resource, q) {
        for n2 in window(target, resource, q) {
            let w = target.get(q - n).norm_sqr() * target.get(q - n2).norm_sqr();
            let term = (d[n] * d[n2].conj()).scale(w);
            re.add(term.re);
            im.add(term.im);
        }
    }
    Ok(Complex::new(re.value(), im.value()).unscale(p))
}

/// `P(q)` and `F(q)` over the full support `q = 0..=cutoff + 2N`.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution<T> {
    pub q_min: usize,
    pub q_max: usize,
    /// `p[q - q_min] = P(q)`
    pub p: Vec<T>,
    /// `f[q - q_min] = F(q)`, `None` where `P(q)` is below [`DEFINED_OUTCOME_THRESHOLD`].
    pub f: Vec<Option<T>>,
}

impl<T: Real> OutcomeDistribution<T> {
    pub fn total_probability(&self) -> T {
        self.p.iter().copied().collect::<CompensatedSum<T>>().value()
    }

    /// `Σ_q P(q) F(q)` accumulated left to right over defined outcomes.
    pub fn average_fidelity(&self) -> T {
        let mut acc = T::zero();
        for (p, f) in self.p.iter().zip(&self.f) {
            if let Some(f) = f {
                acc += *p * *f;
            }
        }
        acc
    }
}

pub fn outcome_distribution<T: Real>(target: &TargetCoeffs<T>, resource: &ResourceCoeffs<T>) -> OutcomeDistribution<T> {
    let q_max = target.cutoff() + resource.total();
    let threshold = T::lit(DEFINED_OUTCOME_THRESHOLD);
    let mut p = Vec::with_capacity(q_max + 1);
    let mut f = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let pq = number_sum_prob(target, resource, q);
        p.push(pq);
        f.push((pq > threshold).then(|| weighted_resource_sum(target, resource, q).norm_sqr() / pq));
    }
    OutcomeDistribution { q_min: 0, q_max, p, f }
}

pub fn average_fidelity<T: Real>(target: &TargetCoeffs<T>, resource: &ResourceCoeffs<T>) -> T {
    outcome_distribution(target, resource).average_fidelity()
}

/// Average fidelity with an unentangled resource: every photon stays in one
/// mode, so only the diagonal `n = n_in` term survives and `F̄ = Σ_m |c_m|⁴`.
pub fn classical_baseline<T: Real>(target: &TargetCoeffs<T>, _params: &ResourceParams<T>) -> T {
    target.coeffs().iter().map(|c| c.norm_sqr() * c.norm_sqr()).collect::<CompensatedSum<T>>().value()
}

/// Bob's corrected output state for outcome `q`, on the Fock window
/// `offset..offset + dim` with `offset = q - min(q, 2N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputState<T> {
    pub q: usize,
    pub offset: usize,
    pub dim: usize,
    /// Row-major `dim × dim`: `matrix[i * dim + k] = <offset+i| ρ |offset+k>`.
    pub matrix: Vec<Complex<T>>,
}

impl<T: Real> OutputState<T> {
    /// `<k| ρ |k'>` by absolute photon numbers; zero outside the window.
    pub fn entry(&self, k: usize, k2: usize) -> Complex<T> {
        let inside = |x: usize| x >= self.offset && x < self.offset + self.dim;
        if inside(k) && inside(k2) {
            self.matrix[(k - self.offset) * self.dim + (k2 - self.offset)]
        } else {
            Complex::new(T::zero(), T::zero())
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self.matrix[i * self.dim + i]).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    /// Largest `|ρ_ik - conj(ρ_ki)|`.
    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.matrix[i * self.dim + k];
                let b = self.matrix[k * self.dim + i].conj();
                worst = worst.max((a - b).norm());
            }
        }
        worst
    }

    /// `<ψ|ρ|ψ>` for a target state.
    pub fn fidelity_with(&self, target: &TargetCoeffs<T>) -> T {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.dim {
            let ci = target.get(self.offset + i).conj();
            let mut row = Complex::new(T::zero(), T::zero());
            for k in 0..self.dim {
                row = row + self.matrix[i * self.dim + k] * target.get(self.offset + k);
            }
            acc = acc + ci * row;
        }
        acc.re
    }

    /// Largest absolute entrywise difference, comparing by photon number.
    pub fn max_abs_diff(&self, other: &OutputState<T>) -> T {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.dim).max(other.offset + other.dim);
        let mut worst = T::zero();
        for k in lo..hi {
            for k2 in lo..hi {
                worst = worst.max((self.entry(k, k2) - other.entry(k, k2)).norm());
            }
        }
        worst
    }
}

/// `e^{-2i n φ}`, the phase Alice's phase-difference result imprints on the
/// `|2N - n>` component of Bob's mode.
fn measurement_phasor<T: Real>(n: usize, phi_minus: T) -> Complex<T> {
    Complex::from_polar(T::one(), -T::lit(2.0) * T::from_count(n) * phi_minus)
}

/// Bob's state after amplification `|2N - n> → |q - n>` and the phase shift
/// `e^{2i(n - n')φ}` that undoes the measurement phase.
pub fn output_state<T: Real>(
    target: &TargetCoeffs<T>,
    resource: &ResourceCoeffs<T>,
    q: usize,
    phi_minus: T,
) -> Result<OutputState<T>> {
    let p = defined_prob(target, resource, q)?;
    let d = resource.coeffs();
    let n_hi = q.min(resource.total());
    let offset = q - n_hi;
    let dim = n_hi + 1;

    // amplitude on |q - n>, indexed by row i = q - n - offset = n_hi - n
    let mut amp = vec![Complex::new(T::zero(), T::zero()); dim];
    for n in 0..=n_hi {
        let phasor = measurement_phasor(n, phi_minus);
        let measured = phasor * target.get(q - n) * d[n];
        // Bob's correction is the conjugate of the very same phasor.
        amp[n_hi - n] = measured * phasor.conj();
    }

    let mut matrix = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            matrix[i * dim + k] = (amp[i] * amp[k].conj()).unscale(p);
        }
    }
    Ok(OutputState { q, offset, dim, matrix })
}

/// Average fidelity over an `(m, β)` grid at fixed total photon number.
pub fn fidelity_sweep<T: Real>(
    target: &TargetCoeffs<T>,
    total: usize,
    beta_axis: &[T],
    m_axis: &[HalfInt],
    options: SweepOptions,
) -> Result<FidelityGrid<T>> {
    let meta = GridMeta { kind: GridKind::AverageFidelity, total, label: target.label().to_string() };
    sweep_resources(total, beta_axis, m_axis, meta, options, |resource| Ok(average_fidelity(target, resource)))
}
