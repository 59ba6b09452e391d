use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

/// Default upper index of a freshly built table.
pub const DEFAULT_LOG_FACTORIAL_MAX: usize = 4096;

/// Tabulated `ln(n!)` for `n = 0..=n_max`.
///
/// Built once by compensated cumulative addition of `ln k`; read-only
/// afterwards, so a shared reference can be handed to any number of threads.
#[derive(Clone, Debug)]
pub struct LogFactorialTable<T> {
    values: Vec<T>,
}

impl<T: Real> Default for LogFactorialTable<T> {
    fn default() -> Self {
        Self::new(DEFAULT_LOG_FACTORIAL_MAX)
    }
}

impl<T: Real> LogFactorialTable<T> {
    pub fn new(n_max: usize) -> Self {
        let mut table = Self { values: vec![T::zero()] };
        table.grow_to(n_max);
        table
    }

    /// Extends the table so that it covers `n_max`. Existing entries are kept.
    pub fn grow_to(&mut self, n_max: usize) {
        if n_max < self.values.len() {
            return;
        }
        // Restart the compensated sum from scratch so growth and a fresh
        // build produce identical bits.
        let mut acc = CompensatedSum::new();
        self.values.clear();
        self.values.push(T::zero());
        for k in 1..=n_max {
            acc.add(T::from_count(k).ln());
            self.values.push(acc.value());
        }
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn log_factorial(&self, n: usize) -> Result<T> {
        self.values.get(n).copied().ok_or_else(|| Error::Range {
            what: "n",
            value: n.to_string(),
            range: format!("0..={}", self.n_max()),
        })
    }

    /// Unchecked lookup for hot loops whose bounds were validated up front.
    #[inline]
    pub(crate) fn at(&self, n: usize) -> T {
        self.values[n]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }
}
