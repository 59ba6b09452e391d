use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{sym_tridiag_eigen, HalfInt, SymTridiagEigen};
use crate::scalar::{CompensatedSum, Real};

/// Eigendecomposition of `J_x` on the spin-`j` multiplet, basis ordered
/// `m' = -j, ..., j`.
///
/// `J_x` is real symmetric tridiagonal with off-diagonal
/// `½ √((j - m')(j + m' + 1))`. Once diagonalized, `exp(iβ J_x)` for any
/// angle costs one `O((2j+1)²)` contraction per column, and
/// `d^j_{m',m}(β) = i^{m'-m} <m'| exp(iβ J_x) |m>`.
#[derive(Clone, Debug)]
pub struct RotationGenerator<T> {
    j: HalfInt,
    eigen: SymTridiagEigen<T>,
}

impl<T: Real> RotationGenerator<T> {
    pub fn new(j: HalfInt) -> Result<Self> {
        if j.twice() < 0 {
            return Err(Error::Range { what: "j", value: j.to_string(), range: ">= 0".into() });
        }
        let j2 = j.twice() as usize;
        let half = T::lit(0.5);
        let offdiag: Vec<T> = (0..j2).map(|k| half * T::from_count((j2 - k) * (k + 1)).sqrt()).collect();
        let eigen = sym_tridiag_eigen(&vec![T::zero(); j2 + 1], &offdiag)?;
        Ok(Self { j, eigen })
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    fn column_index(&self, m: HalfInt) -> Result<usize> {
        if !m.same_parity(self.j) || m.twice().abs() > self.j.twice() {
            return Err(Error::InvalidIndex { twice_j: self.j.twice(), twice_row: m.twice(), twice_col: m.twice() });
        }
        Ok(((m.twice() + self.j.twice()) / 2) as usize)
    }

    /// Real and imaginary parts of the column `exp(iβ J_x) |m>`.
    fn column_parts(&self, col: usize, beta: T) -> (Vec<T>, Vec<T>) {
        let n = self.dim();
        let mut re = vec![CompensatedSum::new(); n];
        let mut im = vec![CompensatedSum::new(); n];
        for (i, &lambda) in self.eigen.values().iter().enumerate() {
            let v = self.eigen.vector(i);
            let (s, c) = (beta * lambda).sin_cos();
            let w = v[col];
            for k in 0..n {
                let vw = v[k] * w;
                re[k].add(vw * c);
                im[k].add(vw * s);
            }
        }
        (re.iter().map(CompensatedSum::value).collect(), im.iter().map(CompensatedSum::value).collect())
    }

    /// Column `<m'| exp(iβ J_x) |m>` for `m' = -j..=j`.
    pub fn unitary_column(&self, m: HalfInt, beta: T) -> Result<Vec<Complex<T>>> {
        let col = self.column_index(m)?;
        if beta == T::zero() {
            let mut out = vec![Complex::new(T::zero(), T::zero()); self.dim()];
            out[col] = Complex::new(T::one(), T::zero());
            return Ok(out);
        }
        let (re, im) = self.column_parts(col, beta);
        Ok(re.into_iter().zip(im).map(|(r, i)| Complex::new(r, i)).collect())
    }

    /// Real column `d^j_{m',m}(β)` for `m' = -j..=j`.
    pub fn column(&self, m: HalfInt, beta: T) -> Result<Vec<T>> {
        let col = self.column_index(m)?;
        let mut out = vec![T::zero(); self.dim()];
        if beta == T::zero() {
            out[col] = T::one();
            return Ok(out);
        }
        let (re, im) = self.column_parts(col, beta);
        for (k, slot) in out.iter_mut().enumerate() {
            // multiply by i^{m'-m}
            *slot = match (k as i64 - col as i64).rem_euclid(4) {
                0 => re[k],
                1 => -im[k],
                2 => -re[k],
                _ => im[k],
            };
        }
        Ok(out)
    }
}

/// One-shot convenience wrapper around [`RotationGenerator::column`].
pub fn wigner_d_column_stable<T: Real>(j: HalfInt, m_col: HalfInt, beta: T) -> Result<Vec<T>> {
    RotationGenerator::new(j)?.column(m_col, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn identity_column() {
        let col = wigner_d_column_stable(HalfInt::from_twice(1), HalfInt::from_twice(1), 0.0).unwrap();
        assert_eq!(col, vec![0.0, 1.0]);
    }

    #[test]
    fn spin_one_quarter_turn() {
        let col = wigner_d_column_stable(HalfInt::from_int(1), HalfInt::ZERO, FRAC_PI_2).unwrap();
        assert!(col[1].abs() < 1e-15);
        assert!((col[0].abs() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((col[2].abs() - FRAC_1_SQRT_2).abs() < 1e-15);
        // d^1_{1,0} = -sin β / √2, d^1_{-1,0} = +sin β / √2
        assert!(col[2] < 0.0 && col[0] > 0.0);
    }

    #[test]
    fn spin_half_unitary_column() {
        let beta = 0.9f64;
        let u = RotationGenerator::new(HalfInt::from_twice(1))
            .unwrap()
            .unitary_column(HalfInt::from_twice(1), beta)
            .unwrap();
        assert!(u[0].re.abs() < 1e-15 && (u[0].im - (beta / 2.0).sin()).abs() < 1e-15);
        assert!((u[1].re - (beta / 2.0).cos()).abs() < 1e-15 && u[1].im.abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_column() {
        let gen = RotationGenerator::<f64>::new(HalfInt::from_int(2)).unwrap();
        assert!(gen.column(HalfInt::from_twice(1), 0.3).is_err());
        assert!(gen.column(HalfInt::from_int(3), 0.3).is_err());
    }

    #[test]
    fn single_precision_normalized() {
        let col = wigner_d_column_stable(HalfInt::from_int(6), HalfInt::from_int(2), 1.2f32).unwrap();
        let norm: f32 = col.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-5);
    }
}
