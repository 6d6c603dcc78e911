//! Compensated (Neumaier) summation.
//!
//! The estimators accumulate tens of thousands of logarithms whose partial
//! sums cancel heavily (log-Mahler products hover near 0 while individual
//! terms are O(log p)), so plain `f64` accumulation would spend tolerance
//! budget for no reason. Neumaier's variant of Kahan summation keeps the
//! error at a few ulps independent of length.

/// Running compensated sum.
#[derive(Debug, Clone, Default)]
pub(crate) struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of a slice.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = NeumaierSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}
