//! Associated Laguerre polynomials `L^a_n`.

use crate::{Complex, Error, Result};

/// `L^a_n(x)` by the forward three-term recurrence
/// `(n+1) L^a_{n+1} = (2n + 1 + a - x) L^a_n - (n + a) L^a_{n-1}`.
pub fn laguerre_assoc(n: i64, a: i64, x: f64) -> Result<f64> {
    if n < 0 || a < 0 {
        return Err(Error::Domain(format!(
            "Laguerre degree and superscript must be non-negative, got n = {n}, a = {a}"
        )));
    }
    Ok(laguerre_sequence(n as usize, a as f64, Complex::new(x, 0.0))[n as usize].re)
}

/// `[L^a_0(x), ..., L^a_n(x)]` for complex argument and real `a`.
pub fn laguerre_sequence(n: usize, a: f64, x: Complex) -> Vec<Complex> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex::new(1.0, 0.0));
    if n == 0 {
        return out;
    }
    out.push(1.0 + a - x);
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - x) * out[j] - (jf + a) * out[j - 1]) / (jf + 1.0);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::binomial;

    /// `Σ_i (-1)^i C(n+a, n-i) x^i / i!`
    fn explicit_expansion(n: usize, a: usize, x: f64) -> f64 {
        let mut fact = 1.0;
        let mut sum = 0.0;
        for i in 0..=n {
            if i > 0 {
                fact *= i as f64;
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binomial(n + a, n - i) * x.powi(i as i32) / fact;
        }
        sum
    }

    #[test]
    fn base_cases() {
        for &x in &[-2.0, 0.0, 0.7, 5.0] {
            assert_eq!(laguerre_assoc(0, 0, x).unwrap(), 1.0);
            assert!((laguerre_assoc(1, 0, x).unwrap() - (1.0 - x)).abs() < 1e-15);
        }
    }

    #[test]
    fn matches_monomial_expansion() {
        let v = laguerre_assoc(3, 2, -1.5).unwrap();
        assert!((v - explicit_expansion(3, 2, -1.5)).abs() < 1e-13);
        // frozen: L^2_3(-1.5) = 10 + 15 + 5.625 + 0.5625
        assert!((v - 31.1875).abs() < 1e-13);
        for n in 0..12 {
            for a in 0..6 {
                for &x in &[-3.0, -0.4, 0.9, 2.5] {
                    let r = laguerre_assoc(n, a, x).unwrap();
                    let e = explicit_expansion(n as usize, a as usize, x);
                    assert!(
                        (r - e).abs() <= 1e-11 * e.abs().max(1.0),
                        "n={n} a={a} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_negative_indices() {
        assert!(laguerre_assoc(-1, 0, 1.0).is_err());
        assert!(laguerre_assoc(2, -3, 1.0).is_err());
    }

    #[test]
    fn positive_argument_against_high_precision() {
        // values from a 50-digit evaluation of the explicit sum
        let cases = [
            (60usize, 0.0, 40.0, 3.434_588_421_418_35e7),
            (30, 12.0, 40.0, -2.339_083_757_593_836_4e7),
            (100, 3.0, 12.5, -1.074_558_207_677_191_2e3),
        ];
        for (n, a, x, expect) in cases {
            let v = laguerre_sequence(n, a, Complex::new(x, 0.0))[n].re;
            assert!(
                ((v - expect) / expect).abs() < 1e-11,
                "n={n} a={a} x={x}: {v} vs {expect}"
            );
        }
    }
}
