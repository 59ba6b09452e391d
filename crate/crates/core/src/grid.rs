//! Two-dimensional `(m, β)` maps and their CSV / PGM renderings.

use std::fmt::Write as _;

use crate::numerics::HalfInt;
use crate::scalar::Real;

/// What the cell values of a [`FidelityGrid`] mean; fixes the grayscale mapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    /// Average fidelity; 0 renders black and 1 white.
    AverageFidelity,
    /// Phase difference at the joint-phase maximum; 0 renders black and π/2 white.
    PhaseArgmax,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridMeta {
    pub kind: GridKind,
    pub total: usize,
    pub label: String,
}

/// Values over `m_axis × beta_axis`, stored m-major (`values[i_m * n_beta + i_beta]`).
///
/// Cells whose `(total, m)` pair has no integer photon numbers hold NaN and
/// are listed in [`FidelityGrid::invalid_cells`].
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityGrid<T> {
    pub beta_axis: Vec<T>,
    pub m_axis: Vec<HalfInt>,
    pub values: Vec<T>,
    pub meta: GridMeta,
}

impl<T: Real> FidelityGrid<T> {
    pub fn width(&self) -> usize {
        self.beta_axis.len()
    }

    pub fn height(&self) -> usize {
        self.m_axis.len()
    }

    pub fn get(&self, i_m: usize, i_beta: usize) -> T {
        self.values[i_m * self.width() + i_beta]
    }

    pub fn row(&self, i_m: usize) -> &[T] {
        &self.values[i_m * self.width()..(i_m + 1) * self.width()]
    }

    pub fn column(&self, i_beta: usize) -> Vec<T> {
        (0..self.height()).map(|i| self.get(i, i_beta)).collect()
    }

    pub fn invalid_cells(&self) -> Vec<(usize, usize)> {
        let w = self.width();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_nan())
            .map(|(k, _)| (k / w, k % w))
            .collect()
    }

    /// Location `(i_m, i_beta)` and value of the largest valid cell; first one wins ties.
    pub fn argmax(&self) -> Option<((usize, usize), T)> {
        let w = self.width();
        let mut best: Option<(usize, T)> = None;
        for (k, &v) in self.values.iter().enumerate() {
            if v.is_nan() {
                continue;
            }
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((k, v));
            }
        }
        best.map(|(k, v)| ((k / w, k % w), v))
    }

    /// Value mapped to the unit interval for grayscale rendering.
    pub fn render_value(&self, v: T) -> T {
        match self.meta.kind {
            GridKind::AverageFidelity => v,
            GridKind::PhaseArgmax => v / T::FRAC_PI_2(),
        }
    }

    /// Header `beta,m,value`; 17 significant digits; m-major rows; NaN for invalid cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * self.values.len() + 16);
        out.push_str("beta,m,value\n");
        for (i_m, m) in self.m_axis.iter().enumerate() {
            let m = m.to_f64();
            for (i_b, beta) in self.beta_axis.iter().enumerate() {
                let beta = beta.to_f64().unwrap_or(f64::NAN);
                let v = self.get(i_m, i_b).to_f64().unwrap_or(f64::NAN);
                writeln!(out, "{},{},{}", sig17(beta), sig17(m), sig17(v)).unwrap();
            }
        }
        out
    }

    /// Binary 8-bit `P5` image: one row per m, one column per β.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width(), self.height()).into_bytes();
        out.extend(self.values.iter().map(|&v| self.pixel(v)));
        out
    }

    /// `round(255 · clamp(render_value, 0, 1))`, with invalid cells black.
    pub fn pixel(&self, v: T) -> u8 {
        if v.is_nan() {
            return 0;
        }
        let x = self.render_value(v).max(T::zero()).min(T::one());
        (T::lit(255.0) * x).round().to_u8().unwrap_or(0)
    }
}

/// Scientific notation with 17 significant digits; `NaN` spelled out.
pub fn sig17(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// `steps` interior points `π (k + 1) / (steps + 1)`; endpoints 0 and π excluded.
pub fn interior_beta_axis<T: Real>(steps: usize) -> Vec<T> {
    let denom = T::from_count(steps + 1);
    (0..steps).map(|k| T::from_count(k + 1) / denom * T::PI()).collect()
}

/// Integer-spaced half-integers `start, start + 1, ..., <= end`.
pub fn m_axis_range(start: HalfInt, end: HalfInt) -> Vec<HalfInt> {
    let mut out = Vec::new();
    let mut m = start;
    while m <= end {
        out.push(m);
        m = m + HalfInt::from_int(1);
    }
    out
}
