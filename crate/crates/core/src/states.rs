//! Target states to teleport and the beam-splitter resource state.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{HalfInt, LogFactorialTable, RotationGenerator};
use crate::scalar::{CompensatedSum, Real};

/// Largest tail weight a strict truncation may discard before renormalizing.
pub const TRUNCATION_TAIL_LIMIT: f64 = 1e-12;

/// Input photon numbers and beam-splitter angle.
///
/// `beta = 0` transmits everything, `beta = π/2` is a 50:50 splitter and
/// `beta = π` reflects everything.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResourceParams<T> {
    n_in: usize,
    m_in: usize,
    beta: T,
}

impl<T: Real> ResourceParams<T> {
    pub fn new(n_in: usize, m_in: usize, beta: T) -> Result<Self> {
        if !(beta >= T::zero() && beta <= T::PI()) {
            return Err(Error::InvalidParams(format!("beta = {beta} must lie in [0, π]")));
        }
        Ok(Self { n_in, m_in, beta })
    }

    /// Builds the pair `(N + m, N - m)` from a fixed total `2N` and half-difference `m`.
    pub fn from_total(total: usize, m: HalfInt, beta: T) -> Result<Self> {
        let twice_n_in = total as i64 + m.twice();
        if twice_n_in < 0 || twice_n_in % 2 != 0 || twice_n_in > 2 * total as i64 {
            return Err(Error::InvalidParams(format!(
                "total {total} and m = {m} do not give non-negative integer photon numbers"
            )));
        }
        let n_in = (twice_n_in / 2) as usize;
        Self::new(n_in, total - n_in, beta)
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn m_in(&self) -> usize {
        self.m_in
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Total photon number `2N`.
    pub fn total(&self) -> usize {
        self.n_in + self.m_in
    }

    /// `j = N`, half the total photon number.
    pub fn j(&self) -> HalfInt {
        HalfInt::from_twice(self.total() as i64)
    }

    /// Incident half-difference `m = (n_in - m_in) / 2`.
    pub fn half_difference(&self) -> HalfInt {
        HalfInt::from_twice(self.n_in as i64 - self.m_in as i64)
    }
}

/// Coefficients `d_{n-N}` of the post-beam-splitter state
/// `Σ_n d_{n-N} |n>_A |2N - n>_B`, indexed by the mode-A photon number `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResourceCoeffs<T> {
    params: ResourceParams<T>,
    amplitudes: Vec<T>,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> ResourceCoeffs<T> {
    pub fn params(&self) -> &ResourceParams<T> {
        &self.params
    }

    pub fn total(&self) -> usize {
        self.params.total()
    }

    /// `d_{n-N}` for `n = 0..=2N`.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// The real rotation amplitudes `d^N_{n-N, m}(β)`, i.e. the coefficients
    /// without their quarter-turn phase prefactor.
    pub fn rotation_amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect::<CompensatedSum<T>>().value()
    }

    /// Rebuilds a resource from explicit coefficients, e.g. to test gauge
    /// invariance. The rotation amplitudes are recovered from the moduli and
    /// phase convention; they are only meaningful for genuine resources.
    pub fn from_raw(params: ResourceParams<T>, coeffs: Vec<Complex<T>>) -> Self {
        let n_in = params.n_in();
        let amplitudes = coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| (c * quarter_turns(n as i64 - n_in as i64)).re)
            .collect();
        Self { params, amplitudes, coeffs }
    }

    pub fn to_csv(&self) -> String {
        coeffs_csv(&self.coeffs)
    }
}

/// `i^k` as an exact complex unit.
fn quarter_turns<T: Real>(k: i64) -> Complex<T> {
    match k.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

pub fn resource_coeffs<T: Real>(params: ResourceParams<T>) -> Result<ResourceCoeffs<T>> {
    let generator = RotationGenerator::new(params.j())?;
    resource_coeffs_with(&generator, params)
}

/// Same as [`resource_coeffs`] but reuses a prepared generator for `j = total / 2`.
pub fn resource_coeffs_with<T: Real>(
    generator: &RotationGenerator<T>,
    params: ResourceParams<T>,
) -> Result<ResourceCoeffs<T>> {
    if generator.j() != params.j() {
        return Err(Error::InvalidParams(format!(
            "generator built for j = {} but resource needs j = {}",
            generator.j(),
            params.j()
        )));
    }
    let mut amplitudes = generator.column(params.half_difference(), params.beta())?;
    let norm = amplitudes.iter().map(|&a| a * a).collect::<CompensatedSum<T>>().value().sqrt();
    for a in amplitudes.iter_mut() {
        *a = *a / norm;
    }
    // e^{-iπ/2 (n - N - m)} with n - N - m = n - n_in
    let n_in = params.n_in() as i64;
    let coeffs = amplitudes
        .iter()
        .enumerate()
        .map(|(n, &a)| quarter_turns::<T>(n_in - n as i64).scale(a))
        .collect();
    Ok(ResourceCoeffs { params, amplitudes, coeffs })
}

/// How a builder treats probability weight beyond its cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Reject cutoffs that discard more than [`TRUNCATION_TAIL_LIMIT`].
    #[default]
    Strict,
    /// Accept any cutoff and renormalize what is kept.
    Renormalize,
}

/// Fock-basis coefficients `c_m`, `m = 0..=cutoff`, of a pure single-mode state.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetCoeffs<T> {
    coeffs: Vec<Complex<T>>,
    label: String,
}

impl<T: Real> TargetCoeffs<T> {
    /// Normalizes the given coefficients. Panics on an all-zero vector.
    pub fn from_coeffs(coeffs: Vec<Complex<T>>, label: impl Into<String>) -> Self {
        let norm = coeffs.iter().map(|c| c.norm_sqr()).collect::<CompensatedSum<T>>().value().sqrt();
        assert!(norm > T::zero(), "target state must be non-zero");
        Self { coeffs: coeffs.into_iter().map(|c| c.unscale(norm)).collect(), label: label.into() }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `c_m`, zero beyond the cutoff.
    #[inline]
    pub fn get(&self, m: usize) -> Complex<T> {
        self.coeffs.get(m).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Photon-number distribution `|c_m|²`.
    pub fn populations(&self) -> Vec<T> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect::<CompensatedSum<T>>().value()
    }

    pub fn mean_photon_number(&self) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| T::from_count(m) * c.norm_sqr())
            .collect::<CompensatedSum<T>>()
            .value()
    }

    pub fn to_csv(&self) -> String {
        coeffs_csv(&self.coeffs)
    }
}

fn coeffs_csv<T: Real>(coeffs: &[Complex<T>]) -> String {
    let mut out = String::from("index,real,imaginary\n");
    for (i, c) in coeffs.iter().enumerate() {
        let re = c.re.to_f64().unwrap_or(f64::NAN);
        let im = c.im.to_f64().unwrap_or(f64::NAN);
        writeln!(out, "{i},{re:.16e},{im:.16e}").unwrap();
    }
    out
}

pub fn fock_coeffs<T: Real>(k: usize, cutoff: usize) -> Result<TargetCoeffs<T>> {
    if k > cutoff {
        return Err(Error::Range { what: "k", value: k.to_string(), range: format!("0..={cutoff}") });
    }
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); cutoff + 1];
    coeffs[k] = Complex::new(T::one(), T::zero());
    Ok(TargetCoeffs { coeffs, label: format!("fock(k={k})") })
}

/// `ln |α^m / √(m!)|` and the phase `m arg α`; `α = 0` is handled by the caller.
fn coherent_term<T: Real>(table: &LogFactorialTable<T>, alpha: Complex<T>, m: usize) -> Complex<T> {
    let (r, theta) = alpha.to_polar();
    let log_mag = -T::lit(0.5) * r * r + T::from_count(m) * r.ln() - T::lit(0.5) * table.at(m);
    Complex::from_polar(log_mag.exp(), T::from_count(m) * theta)
}

fn finish_truncated<T: Real>(
    mut coeffs: Vec<Complex<T>>,
    policy: Truncation,
    label: String,
) -> Result<TargetCoeffs<T>> {
    let kept = coeffs.iter().map(|c| c.norm_sqr()).collect::<CompensatedSum<T>>().value();
    let tail = (T::one() - kept).max(T::zero());
    let limit = T::lit(TRUNCATION_TAIL_LIMIT);
    if policy == Truncation::Strict && tail >= limit {
        return Err(Error::Truncation {
            cutoff: coeffs.len() - 1,
            tail: tail.to_f64().unwrap_or(f64::NAN),
            limit: TRUNCATION_TAIL_LIMIT,
        });
    }
    let norm = kept.sqrt();
    for c in coeffs.iter_mut() {
        *c = c.unscale(norm);
    }
    Ok(TargetCoeffs { coeffs, label })
}

/// Coherent state `|α>`, truncated at `cutoff` and renormalized.
pub fn coherent_coeffs<T: Real>(alpha: Complex<T>, cutoff: usize) -> Result<TargetCoeffs<T>> {
    coherent_coeffs_with(alpha, cutoff, Truncation::Strict)
}

pub fn coherent_coeffs_with<T: Real>(alpha: Complex<T>, cutoff: usize, policy: Truncation) -> Result<TargetCoeffs<T>> {
    let label = format!("coherent(alpha={alpha})");
    let zero = Complex::new(T::zero(), T::zero());
    if alpha == zero {
        let mut coeffs = vec![zero; cutoff + 1];
        coeffs[0] = Complex::new(T::one(), T::zero());
        return Ok(TargetCoeffs { coeffs, label });
    }
    let table = LogFactorialTable::new(cutoff);
    let coeffs = (0..=cutoff).map(|m| coherent_term(&table, alpha, m)).collect();
    finish_truncated(coeffs, policy, label)
}

/// Even cat state `(|α> + |-α>) / √(2 + 2 e^{-2|α|²})`, truncated at `cutoff`
/// and renormalized. Odd photon numbers are exactly zero.
pub fn cat_coeffs<T: Real>(alpha: Complex<T>, cutoff: usize) -> Result<TargetCoeffs<T>> {
    cat_coeffs_with(alpha, cutoff, Truncation::Strict)
}

pub fn cat_coeffs_with<T: Real>(alpha: Complex<T>, cutoff: usize, policy: Truncation) -> Result<TargetCoeffs<T>> {
    let label = format!("cat(alpha={alpha})");
    let zero = Complex::new(T::zero(), T::zero());
    if alpha == zero {
        let mut coeffs = vec![zero; cutoff + 1];
        coeffs[0] = Complex::new(T::one(), T::zero());
        return Ok(TargetCoeffs { coeffs, label });
    }
    let table = LogFactorialTable::new(cutoff);
    let r2 = alpha.norm_sqr();
    // 2 / √(2 + 2 e^{-2|α|²}) = √2 / √(1 + e^{-2|α|²})
    let scale = T::SQRT_2() / (T::one() + (-T::lit(2.0) * r2).exp()).sqrt();
    let coeffs = (0..=cutoff)
        .map(|m| if m % 2 == 0 { coherent_term(&table, alpha, m).scale(scale) } else { zero })
        .collect();
    finish_truncated(coeffs, policy, label)
}

/// Smallest cutoff whose discarded cat-state weight is below [`TRUNCATION_TAIL_LIMIT`].
pub fn cat_auto_cutoff(alpha: f64) -> usize {
    auto_cutoff(|k| cat_coeffs_with::<f64>(Complex::new(alpha, 0.0), k, Truncation::Strict).is_ok())
}

/// Smallest cutoff whose discarded coherent-state weight is below [`TRUNCATION_TAIL_LIMIT`].
pub fn coherent_auto_cutoff(alpha: f64) -> usize {
    auto_cutoff(|k| coherent_coeffs_with::<f64>(Complex::new(alpha, 0.0), k, Truncation::Strict).is_ok())
}

fn auto_cutoff(accepts: impl Fn(usize) -> bool) -> usize {
    let mut hi = 1;
    while !accepts(hi) {
        hi *= 2;
        assert!(hi < 1 << 24, "no finite cutoff reaches the truncation limit");
    }
    let mut lo = 0;
    // invariant: accepts(hi), !accepts(lo) unless lo == 0 and it does
    if accepts(0) {
        return 0;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if accepts(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    fn mags(r: &ResourceCoeffs<f64>) -> Vec<f64> {
        r.coeffs().iter().map(|c| c.norm()).collect()
    }

    #[test]
    fn all_transmission() {
        let r = resource_coeffs(ResourceParams::new(1, 0, 0.0).unwrap()).unwrap();
        assert_eq!(mags(&r), vec![0.0, 1.0]);
        let r = resource_coeffs(ResourceParams::new(7, 3, 0.0).unwrap()).unwrap();
        for (n, m) in mags(&r).into_iter().enumerate() {
            assert_eq!(m, if n == 7 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn hong_ou_mandel_null() {
        let r = resource_coeffs(ResourceParams::new(1, 1, FRAC_PI_2).unwrap()).unwrap();
        let m = mags(&r);
        let h = 0.5f64.sqrt();
        assert!((m[0] - h).abs() < 1e-15 && m[1].abs() < 1e-15 && (m[2] - h).abs() < 1e-15);
    }

    #[test]
    fn single_photon_balanced() {
        let r = resource_coeffs(ResourceParams::new(1, 0, FRAC_PI_2).unwrap()).unwrap();
        for p in r.coeffs().iter().map(|c| c.norm_sqr()) {
            assert!((p - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn all_reflection() {
        for (n_in, m_in) in [(3, 5), (10, 0), (0, 4), (6, 6)] {
            let r = resource_coeffs(ResourceParams::new(n_in, m_in, PI).unwrap()).unwrap();
            for (n, m) in mags(&r).into_iter().enumerate() {
                let expected = if n == m_in { 1.0 } else { 0.0 };
                assert!((m - expected).abs() < 1e-12, "({n_in},{m_in}) n={n}");
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(ResourceParams::new(1, 1, -0.1).is_err());
        assert!(ResourceParams::new(1, 1, 3.2).is_err());
        assert!(ResourceParams::new(1, 1, f64::NAN).is_err());
        let p = ResourceParams::from_total(100, HalfInt::from_int(3), 0.5).unwrap();
        assert_eq!((p.n_in(), p.m_in()), (53, 47));
        assert!(ResourceParams::from_total(100, HalfInt::from_twice(1), 0.5).is_err());
        assert!(ResourceParams::from_total(4, HalfInt::from_int(3), 0.5).is_err());
        let p = ResourceParams::from_total(5, HalfInt::from_twice(-3), 0.5).unwrap();
        assert_eq!((p.n_in(), p.m_in()), (1, 4));
    }

    #[test]
    fn fock_builder() {
        let t = fock_coeffs::<f64>(0, 3).unwrap();
        assert_eq!(t.populations(), vec![1.0, 0.0, 0.0, 0.0]);
        let t = fock_coeffs::<f64>(2, 3).unwrap();
        assert_eq!(t.populations(), vec![0.0, 0.0, 1.0, 0.0]);
        assert_eq!(t.norm_sqr(), 1.0);
        assert!(matches!(fock_coeffs::<f64>(4, 3), Err(Error::Range { .. })));
    }

    #[test]
    fn vacuum_limits() {
        let t = cat_coeffs(c(0.0), 4).unwrap();
        assert_eq!(t.populations(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        let t = coherent_coeffs(c(0.0), 2).unwrap();
        assert_eq!(t.populations(), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn cat_parity_and_norm() {
        let t = cat_coeffs(c(3.0), 60).unwrap();
        for (m, x) in t.coeffs().iter().enumerate() {
            if m % 2 == 1 {
                assert_eq!(*x, Complex::new(0.0, 0.0));
            }
        }
        assert!((t.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cat_truncation_error() {
        assert!(matches!(cat_coeffs(c(3.0), 10), Err(Error::Truncation { .. })));
        let lossy = cat_coeffs_with(c(1.0), 6, Truncation::Renormalize).unwrap();
        assert!((lossy.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn coherent_poisson_statistics() {
        let t = coherent_coeffs(c(1.0), 30).unwrap();
        let p = t.populations();
        assert!((p[1] / p[0] - 1.0).abs() < 1e-12);
        let t = coherent_coeffs(c(2.0), 40).unwrap();
        assert!((t.mean_photon_number() - 4.0).abs() < 1e-9);
        let t = coherent_coeffs(Complex::new(0.0f64, 1.5), 40).unwrap();
        // α = 1.5 i: c_1 is purely imaginary
        assert!(t.coeffs()[1].re.abs() < 1e-15 && t.coeffs()[1].im > 0.0);
    }

    #[test]
    fn auto_cutoff_is_minimal() {
        let k = cat_auto_cutoff(3.0);
        assert!(cat_coeffs(c(3.0), k).is_ok());
        assert!(cat_coeffs(c(3.0), k - 1).is_err());
        assert_eq!(cat_auto_cutoff(0.0), 0);
        let k = coherent_auto_cutoff(1.0);
        assert!(coherent_coeffs(c(1.0), k).is_ok() && coherent_coeffs(c(1.0), k - 1).is_err());
    }

    #[test]
    fn csv_dump() {
        let t = fock_coeffs::<f64>(1, 2).unwrap();
        let csv = t.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "index,real,imaginary");
        assert_eq!(lines[2], "1,1.0000000000000000e0,0.0000000000000000e0");
    }
}
