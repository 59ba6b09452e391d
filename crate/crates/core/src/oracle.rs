//! Brute-force cross-checks on small Hilbert spaces.
//!
//! Nothing here reuses the production paths: the beam-splitter generator is
//! assembled from ladder-operator matrix elements and diagonalized densely
//! with nalgebra, and the protocol is carried out literally on the joint
//! three-mode state vector.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::protocol::OutputState;
use crate::states::{resource_coeffs, ResourceParams, TargetCoeffs};

/// Largest total photon number accepted by [`verify_resource`].
pub const RESOURCE_CHECK_MAX_TOTAL: usize = 60;
/// Largest target cutoff accepted by [`protocol_brute_force`].
pub const BRUTE_FORCE_MAX_CUTOFF: usize = 8;
/// Largest total photon number accepted by [`protocol_brute_force`].
pub const BRUTE_FORCE_MAX_TOTAL: usize = 8;
/// Pass threshold on `1 - |overlap|`.
pub const RESOURCE_OVERLAP_TOL: f64 = 1e-10;

/// Beam-splitter angles of the default verification lattice.
pub fn default_beta_lattice() -> [f64; 5] {
    [0.1, 0.5, std::f64::consts::FRAC_PI_2, 2.5, 3.0]
}

/// `(a†b + b†a) / 2` restricted to total photon number `2N`, basis
/// `|n, 2N - n>` for `n = 0..=2N`.
#[derive(Clone, Debug)]
pub struct SectorHamiltonian {
    pub total: usize,
    /// `offdiag[n]` couples `|n, 2N-n>` and `|n+1, 2N-n-1>`.
    pub offdiag: Vec<f64>,
}

impl SectorHamiltonian {
    pub fn new(total: usize) -> Self {
        let dense = Self::assemble(total);
        let offdiag = (0..total).map(|n| dense[(n + 1, n)]).collect();
        Self { total, offdiag }
    }

    /// Applies `a†b` and `b†a` to every basis ket.
    fn assemble(total: usize) -> DMatrix<f64> {
        let dim = total + 1;
        let mut h = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            let b_count = total - n;
            // a† b |n, b> = √(n+1) √b |n+1, b-1>
            if b_count > 0 {
                h[(n + 1, n)] += 0.5 * ((n + 1) as f64).sqrt() * (b_count as f64).sqrt();
            }
            // b† a |n, b> = √n √(b+1) |n-1, b+1>
            if n > 0 {
                h[(n - 1, n)] += 0.5 * (n as f64).sqrt() * ((b_count + 1) as f64).sqrt();
            }
        }
        h
    }

    pub fn dense(&self) -> DMatrix<f64> {
        Self::assemble(self.total)
    }
}

/// `exp(iβH)` on one total-photon sector via dense eigendecomposition.
pub struct SectorPropagator {
    total: usize,
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl SectorPropagator {
    pub fn new(total: usize) -> Self {
        let eigen = SymmetricEigen::new(SectorHamiltonian::new(total).dense());
        Self { total, eigen }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn matrix(&self, beta: f64) -> DMatrix<Complex64> {
        let dim = self.total + 1;
        let v = &self.eigen.eigenvectors;
        DMatrix::from_fn(dim, dim, |r, c| {
            (0..dim)
                .map(|k| Complex64::from_polar(1.0, beta * self.eigen.eigenvalues[k]) * (v[(r, k)] * v[(c, k)]))
                .sum()
        })
    }

    /// `exp(iβH) |n_in, 2N - n_in>` in the `|n, 2N - n>` basis.
    pub fn column(&self, n_in: usize, beta: f64) -> Vec<Complex64> {
        let dim = self.total + 1;
        let v = &self.eigen.eigenvectors;
        (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|k| Complex64::from_polar(1.0, beta * self.eigen.eigenvalues[k]) * (v[(r, k)] * v[(n_in, k)]))
                    .sum()
            })
            .collect()
    }

    /// Largest deviation of `U†U` from the identity.
    pub fn unitarity_error(&self, beta: f64) -> f64 {
        let u = self.matrix(beta);
        let gram = u.adjoint() * &u;
        let mut worst: f64 = 0.0;
        for r in 0..gram.nrows() {
            for c in 0..gram.ncols() {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((gram[(r, c)] - target).norm());
            }
        }
        worst
    }
}

pub fn sector_unitary_column(params: &ResourceParams<f64>) -> Vec<Complex64> {
    SectorPropagator::new(params.total()).column(params.n_in(), params.beta())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResourceReport {
    pub n_in: usize,
    pub m_in: usize,
    pub beta: f64,
    /// `|<u|d>|` for the normalized oracle column `u` and resource `d`.
    pub overlap: f64,
    /// Largest `|d_n - e^{iθ} u_n|` after removing the best global phase `θ`.
    pub max_deviation: f64,
    /// `θ`, reported for reference only.
    pub residual_phase: f64,
    pub pass: bool,
}

pub fn verify_resource(params: &ResourceParams<f64>) -> Result<ResourceReport> {
    if params.total() > RESOURCE_CHECK_MAX_TOTAL {
        return Err(Error::OracleSize { what: "total", value: params.total(), cap: RESOURCE_CHECK_MAX_TOTAL });
    }
    verify_resource_with(&SectorPropagator::new(params.total()), params)
}

/// [`verify_resource`] with a prepared propagator for the right total.
pub fn verify_resource_with(propagator: &SectorPropagator, params: &ResourceParams<f64>) -> Result<ResourceReport> {
    assert_eq!(propagator.total(), params.total(), "propagator built for a different sector");
    let u = propagator.column(params.n_in(), params.beta());
    let d = resource_coeffs(*params)?;
    let d = d.coeffs();
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let inner: Complex64 = u.iter().zip(d).map(|(a, b)| a.conj() * b).sum();
    let overlap_c = inner / (norm(&u) * norm(d));
    let theta = overlap_c.arg();
    let phase = Complex64::from_polar(1.0, theta);
    let max_deviation = u.iter().zip(d).map(|(a, b)| (b - phase * a).norm()).fold(0.0, f64::max);
    let overlap = overlap_c.norm();
    Ok(ResourceReport {
        n_in: params.n_in(),
        m_in: params.m_in(),
        beta: params.beta(),
        overlap,
        max_deviation,
        residual_phase: theta,
        pass: 1.0 - overlap < RESOURCE_OVERLAP_TOL,
    })
}

/// Verifies every `(n_in, m_in)` with `n_in + m_in <= max_total` at each angle.
pub fn oracle_check(max_total: usize, betas: &[f64]) -> Result<Vec<ResourceReport>> {
    if max_total > RESOURCE_CHECK_MAX_TOTAL {
        return Err(Error::OracleSize { what: "total", value: max_total, cap: RESOURCE_CHECK_MAX_TOTAL });
    }
    let per_total: Vec<Vec<ResourceReport>> = (0..=max_total)
        .into_par_iter()
        .map(|total| {
            let propagator = SectorPropagator::new(total);
            let mut out = Vec::with_capacity((total + 1) * betas.len());
            for n_in in 0..=total {
                for &beta in betas {
                    let params = ResourceParams::new(n_in, total - n_in, beta)?;
                    out.push(verify_resource_with(&propagator, &params)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_total.into_iter().flatten().collect())
}

#[derive(Clone, Debug)]
pub struct BruteForceOutcome {
    /// Norm of Bob's conditional vector, i.e. `P(q)`.
    pub p_q: f64,
    /// Bob's corrected state on Fock numbers `0..=q`.
    pub rho_out: OutputState<f64>,
}

/// Runs the protocol on the dense joint state `|ψ_T> ⊗ |ψ_AB>`.
///
/// Alice projects target and mode A onto `|q, φ> ∝ Σ_w e^{-2iwφ} |w>_T |q-w>_A`;
/// Bob relabels `|2N - n> → |q - n>` and applies the phase shift
/// `exp(-2iφ b†b)`.
pub fn protocol_brute_force(
    target: &TargetCoeffs<f64>,
    params: &ResourceParams<f64>,
    q: usize,
    phi_minus: f64,
) -> Result<BruteForceOutcome> {
    let cutoff = target.cutoff();
    let total = params.total();
    if cutoff > BRUTE_FORCE_MAX_CUTOFF {
        return Err(Error::OracleSize { what: "cutoff", value: cutoff, cap: BRUTE_FORCE_MAX_CUTOFF });
    }
    if total > BRUTE_FORCE_MAX_TOTAL {
        return Err(Error::OracleSize { what: "total", value: total, cap: BRUTE_FORCE_MAX_TOTAL });
    }
    let (dim_t, dim_a, dim_b) = (cutoff + 1, total + 1, total + 1);
    let resource = sector_unitary_column(params);

    let mut joint = vec![Complex64::new(0.0, 0.0); dim_t * dim_a * dim_b];
    for m in 0..dim_t {
        for n in 0..dim_a {
            for b in 0..dim_b {
                if b == total - n {
                    joint[(m * dim_a + n) * dim_b + b] = target.coeffs()[m] * resource[n];
                }
            }
        }
    }

    let mut probe = vec![Complex64::new(0.0, 0.0); dim_t * dim_a];
    for w in 0..dim_t {
        for a in 0..dim_a {
            if w + a == q {
                probe[w * dim_a + a] = Complex64::from_polar(1.0, -2.0 * w as f64 * phi_minus);
            }
        }
    }

    let mut bob = vec![Complex64::new(0.0, 0.0); dim_b];
    for (ta, p) in probe.iter().enumerate() {
        for (b, slot) in bob.iter_mut().enumerate() {
            *slot += p.conj() * joint[ta * dim_b + b];
        }
    }
    let p_q: f64 = bob.iter().map(|z| z.norm_sqr()).sum();
    if p_q <= 0.0 {
        return Err(Error::UndefinedOutcome { q });
    }
    let rho_b = DMatrix::from_fn(dim_b, dim_b, |r, c| bob[r] * bob[c].conj() / p_q);

    // amplification |b> -> |b + q - 2N>
    let dim_out = q + 1;
    let mut relabel = DMatrix::<Complex64>::zeros(dim_out, dim_b);
    for b in 0..dim_b {
        let k = b as i64 + q as i64 - total as i64;
        if (0..dim_out as i64).contains(&k) {
            relabel[(k as usize, b)] = Complex64::new(1.0, 0.0);
        }
    }
    let shift = DMatrix::from_fn(dim_out, dim_out, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, -2.0 * phi_minus * r as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let step = &shift * &relabel;
    let rho = &step * rho_b * step.adjoint();

    let matrix = (0..dim_out).flat_map(|r| (0..dim_out).map(move |c| (r, c))).map(|(r, c)| rho[(r, c)]).collect();
    Ok(BruteForceOutcome { p_q, rho_out: OutputState { q, offset: 0, dim: dim_out, matrix } })
}

/// Smallest eigenvalue of the Hermitian part of a density matrix.
pub fn min_eigenvalue(state: &OutputState<f64>) -> f64 {
    let n = state.dim;
    let m = DMatrix::from_fn(n, n, |r, c| 0.5 * (state.matrix[r * n + c] + state.matrix[c * n + r].conj()));
    SymmetricEigen::new(m).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}
