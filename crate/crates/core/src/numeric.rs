//! Small numerical helpers shared across modules.

use std::sync::OnceLock;

use crate::Complex;

/// Neumaier-compensated running sum of complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: Complex,
    compensation: Complex,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Complex) {
        self.sum.re = neumaier_step(self.sum.re, term.re, &mut self.compensation.re);
        self.sum.im = neumaier_step(self.sum.im, term.im, &mut self.compensation.im);
    }

    pub fn value(&self) -> Complex {
        self.sum + self.compensation
    }
}

fn neumaier_step(sum: f64, term: f64, comp: &mut f64) -> f64 {
    let t = sum + term;
    if sum.abs() >= term.abs() {
        *comp += (sum - t) + term;
    } else {
        *comp += (term - t) + sum;
    }
    t
}

/// Pairwise reduction; the result depends only on the order of `values`.
pub fn pairwise_sum(values: &[Complex]) -> Complex {
    match values.len() {
        0 => Complex::new(0.0, 0.0),
        1 => values[0],
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

const LN_FACTORIAL_TABLE: usize = 4096;

/// `ln(n!)` from a compensated cumulative table.
pub fn ln_factorial(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(LN_FACTORIAL_TABLE);
        let mut sum = 0.0;
        let mut comp = 0.0;
        out.push(0.0);
        for k in 1..LN_FACTORIAL_TABLE {
            sum = neumaier_step(sum, (k as f64).ln(), &mut comp);
            out.push(sum + comp);
        }
        out
    });
    assert!(n < LN_FACTORIAL_TABLE, "ln_factorial({n}) beyond table");
    table[n]
}

#[cfg(test)]
/// Binomial coefficient as a float (exact for the small arguments used in tests).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_factorial_small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-15);
        // ln(170!) from the lgamma value 706.5730622457874
        assert!((ln_factorial(170) - 706.573_062_245_787_4).abs() < 1e-11);
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 1..30 {
            for k in 1..n {
                let lhs = binomial(n, k);
                let rhs = binomial(n - 1, k - 1) + binomial(n - 1, k);
                assert!((lhs - rhs).abs() <= 1e-12 * lhs);
            }
        }
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(Complex::new(1e16, 0.0));
        for _ in 0..1000 {
            s.add(Complex::new(1.0, 1.0));
        }
        s.add(Complex::new(-1e16, 0.0));
        assert_eq!(s.value(), Complex::new(1000.0, 1000.0));
    }
}
