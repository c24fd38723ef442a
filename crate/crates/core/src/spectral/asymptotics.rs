//! Large-`|β|` behaviour of the parity-class eigenvalues.
//!
//! For `0 < λ < 1/2` the `i`-th eigenvalue of either parity class behaves like
//! `λ^i e^{λβ/(1-λ)}` as `β → +∞`. As `β → -∞` the even class behaves like
//! `(-1)^i λ^i e^{-λβ/(1+λ)}` and the odd class like `(-1)^{i+1} λ^i e^{-λβ/(1+λ)}`.

use serde::Serialize;

use super::eigen::{eigenvalues, Spectrum};
use crate::model::{Beta, ModelParams};
use crate::ruelle::parity_matrices;
use crate::{Complex, Result};

/// `ρ_i / asymptote` for the leading eigenvalues of each parity class.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRatios {
    pub beta: f64,
    #[serde(serialize_with = "crate::report::serialize_complex_vec")]
    pub even: Vec<Complex>,
    #[serde(serialize_with = "crate::report::serialize_complex_vec")]
    pub odd: Vec<Complex>,
}

/// Predicted `i`-th eigenvalue of the given class (`odd = false` for even).
pub fn moritz_asymptote(beta: f64, i: usize, odd: bool, params: &ModelParams) -> f64 {
    let l = params.lambda();
    let li = l.powi(i as i32);
    if beta >= 0.0 {
        li * (l * beta / (1.0 - l)).exp()
    } else {
        let sign = if (i + usize::from(odd)).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        sign * li * (-l * beta / (1.0 + l)).exp()
    }
}

fn class_spectra(beta: f64, params: &ModelParams, n: usize) -> Result<(Spectrum, Spectrum)> {
    let pair = parity_matrices(Beta::real(beta), n, params)?;
    Ok((eigenvalues(&pair.even)?, eigenvalues(&pair.odd)?))
}

pub fn asymptotic_ratios(
    beta: f64,
    count: usize,
    params: &ModelParams,
    n: usize,
) -> Result<AsymptoticRatios> {
    let (even, odd) = class_spectra(beta, params, n)?;
    let ratios = |s: &Spectrum, is_odd: bool| -> Vec<Complex> {
        s.eigenvalues
            .iter()
            .take(count)
            .enumerate()
            .map(|(i, r)| r / moritz_asymptote(beta, i, is_odd, params))
            .collect()
    };
    Ok(AsymptoticRatios {
        beta,
        even: ratios(&even, false),
        odd: ratios(&odd, true),
    })
}

/// Sum of the leading `count` eigenvalues of both classes divided by the sum
/// of their asymptotes, `2 (1 - λ^count)/(1 - λ) · e^{βλ/(1-λ)}` for `β > 0`.
pub fn trace_asymptote_ratio(
    beta: f64,
    count: usize,
    params: &ModelParams,
    n: usize,
) -> Result<Complex> {
    let (even, odd) = class_spectra(beta, params, n)?;
    let computed: Complex = even
        .eigenvalues
        .iter()
        .take(count)
        .chain(odd.eigenvalues.iter().take(count))
        .sum();
    let predicted: f64 = (0..count)
        .map(|i| moritz_asymptote(beta, i, false, params) + moritz_asymptote(beta, i, true, params))
        .sum();
    Ok(computed / predicted)
}
