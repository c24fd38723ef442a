//! The Ruelle zeta function `ζ_R(z, β) = det(1 - zλL_β) / det(1 - zL_β)`.

use serde::Serialize;

use super::det::PreparedDet;
use crate::model::{Beta, ModelParams};
use crate::ruelle::ruelle_matrix;
use crate::{Complex, Result};

/// Both determinants below this modulus trigger the limit path.
pub const DEFAULT_CANCEL_EPS: f64 = 1e-10;
const DIFF_STEP: f64 = 1e-6;
const LIMIT_AGREEMENT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZetaFlag {
    /// Plain quotient of the determinants.
    Ok,
    /// Both determinants vanish; the value is a quotient of derivatives.
    Limit,
    /// Both determinants vanish and the derivative quotient is unstable.
    Indeterminate,
}

impl ZetaFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZetaFlag::Ok => "ok",
            ZetaFlag::Limit => "limit",
            ZetaFlag::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ZetaEvaluation {
    pub z: Complex,
    pub beta: Beta,
    /// `det(1 - zλL)`.
    pub numerator: Complex,
    /// `det(1 - zL)`.
    pub denominator: Complex,
    /// `None` only when flagged indeterminate.
    pub value: Option<Complex>,
    pub flag: ZetaFlag,
}

pub fn zeta_value(
    z: Complex,
    beta: Beta,
    n: usize,
    params: &ModelParams,
) -> Result<ZetaEvaluation> {
    zeta_value_with_eps(z, beta, n, params, DEFAULT_CANCEL_EPS)
}

pub fn zeta_value_with_eps(
    z: Complex,
    beta: Beta,
    n: usize,
    params: &ModelParams,
    eps: f64,
) -> Result<ZetaEvaluation> {
    let det = PreparedDet::new(&ruelle_matrix(beta, n, params)?);
    Ok(zeta_from_det(&det, z, beta, params.lambda(), eps))
}

/// Evaluation against an already prepared determinant of `L_β`.
pub fn zeta_from_det(
    det: &PreparedDet,
    z: Complex,
    beta: Beta,
    lambda: f64,
    eps: f64,
) -> ZetaEvaluation {
    let num_at = |w: Complex| det.det(w * lambda);
    let den_at = |w: Complex| det.det(w);
    let numerator = num_at(z);
    let denominator = den_at(z);
    let (value, flag) = if numerator.norm() < eps && denominator.norm() < eps {
        let coarse = derivative(&num_at, z, DIFF_STEP) / derivative(&den_at, z, DIFF_STEP);
        let fine =
            derivative(&num_at, z, DIFF_STEP / 2.0) / derivative(&den_at, z, DIFF_STEP / 2.0);
        if coarse.is_finite()
            && fine.is_finite()
            && (coarse - fine).norm() <= LIMIT_AGREEMENT * fine.norm()
        {
            (Some(fine), ZetaFlag::Limit)
        } else {
            (None, ZetaFlag::Indeterminate)
        }
    } else {
        (Some(numerator / denominator), ZetaFlag::Ok)
    };
    ZetaEvaluation {
        z,
        beta,
        numerator,
        denominator,
        value,
        flag,
    }
}

/// Central difference with one Richardson step.
fn derivative<F: Fn(Complex) -> Complex>(f: &F, z: Complex, h: f64) -> Complex {
    let d = |h: f64| (f(z + h) - f(z - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artin_mazur_at_beta_zero() {
        for &lam in &[0.3, 0.5, 0.7] {
            let p = ModelParams::new(lam).unwrap();
            for &z in &[0.1, 0.4, 0.45, -0.8] {
                let e = zeta_value(Complex::new(z, 0.0), Beta::real(0.0), 60, &p).unwrap();
                assert_eq!(e.flag, ZetaFlag::Ok);
                let expect = 1.0 / (1.0 - 2.0 * z);
                assert!((e.value.unwrap() - expect).norm() < 1e-9 * expect.abs());
            }
        }
    }

    #[test]
    fn special_value_minus_one() {
        for &lam in &[0.3, 0.5, 0.7] {
            let p = ModelParams::new(lam).unwrap();
            let e = zeta_value(Complex::new(1.0, 0.0), Beta::real(0.0), 60, &p).unwrap();
            let v = e.value.unwrap();
            assert!((v + 1.0).norm() < 1e-7, "λ={lam}: {v}");
            if lam == 0.5 {
                assert_eq!(e.flag, ZetaFlag::Limit);
            } else {
                assert_eq!(e.flag, ZetaFlag::Ok);
            }
        }
    }

    #[test]
    fn value_near_origin() {
        let p = ModelParams::new(0.4).unwrap();
        let e = zeta_value(Complex::new(1e-9, 0.0), Beta::real(1.3), 40, &p).unwrap();
        assert!((e.value.unwrap() - 1.0).norm() < 1e-7);
        assert!((e.value.unwrap() * e.denominator - e.numerator).norm() < 1e-15);
    }
}
