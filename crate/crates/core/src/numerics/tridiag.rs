//! Implicit QL eigensolver for real symmetric tridiagonal matrices.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues in ascending order with their orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct SymTridiagEigen<T> {
    n: usize,
    values: Vec<T>,
    // eigenvector-major: vectors[i * n + k] is component k of eigenvector i
    vectors: Vec<T>,
}

impl<T: Real> SymTridiagEigen<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn vector(&self, i: usize) -> &[T] {
        &self.vectors[i * self.n..(i + 1) * self.n]
    }
}

/// Diagonalizes the symmetric tridiagonal matrix with main diagonal `diag`
/// and off-diagonal `offdiag` (`offdiag[k]` couples rows `k` and `k + 1`).
pub fn sym_tridiag_eigen<T: Real>(diag: &[T], offdiag: &[T]) -> Result<SymTridiagEigen<T>> {
    let n = diag.len();
    assert_eq!(offdiag.len() + 1, n.max(1), "off-diagonal must have length n - 1");
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(T::zero());
    let mut z = vec![T::zero(); n * n];
    for i in 0..n {
        z[i * n + i] = T::one();
    }

    let two = T::lit(2.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NoConvergence { iterations: sweeps });
            }

            // Wilkinson-style shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r } else { -r });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let (lo, hi) = z.split_at_mut((i + 1) * n);
                let zi = &mut lo[i * n..];
                let zi1 = &mut hi[..n];
                for k in 0..n {
                    let f = zi1[k];
                    zi1[k] = s * zi[k] + c * f;
                    zi[k] = c * zi[k] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &order {
        vectors.extend_from_slice(&z[i * n..(i + 1) * n]);
    }
    Ok(SymTridiagEigen { n, values, vectors })
}
