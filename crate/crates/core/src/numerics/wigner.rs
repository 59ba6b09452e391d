//! Explicit factorial sum for the real rotation-matrix element
//! `d^j_{m',m}(β) = <j m'| exp(-iβ J_y) |j m>`.
//!
//! Every term is formed as `sign * exp(log magnitude)` from a
//! [`LogFactorialTable`] and accumulated with compensated summation in order
//! of increasing summation index. The alternating terms cancel
//! catastrophically once `j` grows past ~20 in double precision; use
//! [`RotationGenerator`](super::RotationGenerator) for large `j`.

use crate::error::{Error, Result};
use crate::numerics::{LogFactorialTable, WignerIndex};
use crate::scalar::{CompensatedSum, Real};

pub fn wigner_d_direct<T: Real>(table: &LogFactorialTable<T>, idx: WignerIndex, beta: T) -> Result<T> {
    let j2 = idx.j().twice();
    let jp_mr = ((j2 + idx.m_row().twice()) / 2) as usize;
    let jm_mr = ((j2 - idx.m_row().twice()) / 2) as usize;
    let jp_mc = ((j2 + idx.m_col().twice()) / 2) as usize;
    let jm_mc = ((j2 - idx.m_col().twice()) / 2) as usize;
    let delta = (idx.m_row().twice() - idx.m_col().twice()) / 2; // m' - m

    if table.n_max() < j2 as usize {
        return Err(Error::Range {
            what: "2j",
            value: j2.to_string(),
            range: format!("0..={} (log-factorial table size)", table.n_max()),
        });
    }

    let half = T::lit(0.5);
    let prefactor = half * (table.at(jp_mr) + table.at(jm_mr)) + half * (table.at(jp_mc) + table.at(jm_mc));

    let (sin_half, cos_half) = (half * beta).sin_cos();
    let ln_cos = cos_half.abs().ln();
    let ln_sin = sin_half.abs().ln();

    // s runs over every value that keeps all four factorial arguments non-negative.
    let s_min = (-delta).max(0) as usize;
    let s_max = jp_mc.min(jm_mr);

    let mut acc = CompensatedSum::new();
    for s in s_min..=s_max {
        let cos_pow = jp_mc + jm_mr - 2 * s;
        let sin_pow = (delta + 2 * s as i64) as usize;
        let denom = table.at(jp_mc - s) + table.at(s) + table.at((delta + s as i64) as usize) + table.at(jm_mr - s);
        let mut log_mag = prefactor - denom;
        let mut negative = (delta + s as i64).rem_euclid(2) == 1;
        if cos_pow > 0 {
            log_mag += T::from_count(cos_pow) * ln_cos;
            negative ^= cos_half < T::zero() && cos_pow % 2 == 1;
        }
        if sin_pow > 0 {
            log_mag += T::from_count(sin_pow) * ln_sin;
            negative ^= sin_half < T::zero() && sin_pow % 2 == 1;
        }
        let magnitude = log_mag.exp();
        acc.add(if negative { -magnitude } else { magnitude });
    }
    Ok(acc.value())
}
