//! Compensated (Kahan-Neumaier) summation used by the series and
//! weight-accumulation loops.

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_small_terms() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..10_000_000 {
            s.add(1e-17);
        }
        let exact = 1.0 + 1e-10;
        assert!((s.value() - exact).abs() < 1e-15);
    }
}
