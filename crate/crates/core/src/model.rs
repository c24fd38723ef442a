//! Exact lattice quantities for the periodic Kac-Baker chain.
//!
//! Everything here is computed by brute-force enumeration of the `2^n`
//! period-`n` spin words, which makes it the ground truth for both transfer
//! operators: `Z_n(β) = (1 - λ^n) tr L_β^n = (1 - λ)^n tr G_β^n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numeric::{pairwise_sum, CompensatedSum};
use crate::{Complex, Error, Result};

/// Default largest period accepted by the enumerators.
pub const DEFAULT_N_MAX: usize = 24;

/// Decay rate `λ ∈ (0, 1)` of the interaction and `γ = -ln λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ModelParams {
    lambda: f64,
    gamma: f64,
}

impl ModelParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::Domain(format!(
                "decay rate lambda must lie in (0, 1), got {lambda}"
            )));
        }
        Ok(Self {
            lambda,
            gamma: -lambda.ln(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl TryFrom<f64> for ModelParams {
    type Error = Error;

    fn try_from(lambda: f64) -> Result<Self> {
        Self::new(lambda)
    }
}

impl From<ModelParams> for f64 {
    fn from(p: ModelParams) -> f64 {
        p.lambda
    }
}

/// Inverse temperature times coupling; complex in general.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Beta(Complex);

impl Beta {
    pub fn new(value: Complex) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Domain(format!("beta must be finite, got {value}")));
        }
        Ok(Self(value))
    }

    /// Real inverse temperature. Panics on a non-finite value.
    pub fn real(value: f64) -> Self {
        Self::new(Complex::new(value, 0.0)).expect("finite beta")
    }

    pub fn value(&self) -> Complex {
        self.0
    }

    pub fn is_real(&self) -> bool {
        self.0.im == 0.0
    }

    /// The real part, or a domain error if the imaginary part is nonzero.
    pub fn as_real(&self) -> Result<f64> {
        if self.is_real() {
            Ok(self.0.re)
        } else {
            Err(Error::Domain(format!("real beta required, got {}", self.0)))
        }
    }

    pub fn conj(&self) -> Self {
        Self(self.0.conj())
    }
}

/// One period of a periodic spin configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinConfig {
    spins: Vec<i8>,
}

impl SpinConfig {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if spins.is_empty() {
            return Err(Error::Domain("period must be positive".into()));
        }
        if let Some(bad) = spins.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::Domain(format!(
                "spin values must be +1 or -1, got {bad}"
            )));
        }
        Ok(Self { spins })
    }

    /// Word number `index` in the enumeration order: bit `j` is site `j`,
    /// and a set bit means spin `+1`.
    pub fn from_index(n: usize, index: u64) -> Self {
        let spins = (0..n)
            .map(|j| if (index >> j) & 1 == 1 { 1 } else { -1 })
            .collect();
        Self { spins }
    }

    pub fn period(&self) -> usize {
        self.spins.len()
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn flipped(&self) -> Self {
        Self {
            spins: self.spins.iter().map(|s| -s).collect(),
        }
    }
}

/// `e_k(ξ) = Σ_{j≥1} λ^j ξ_k ξ_{k+j}` for the periodic extension of `config`,
/// resummed over `j = qn + r` into a finite expression.
pub fn site_interaction_sum(config: &SpinConfig, k: usize, params: &ModelParams) -> Result<f64> {
    let n = config.period();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let lambda = params.lambda();
    let s = config.spins();
    let xk = f64::from(s[k]);
    let mut acc = 0.0;
    let mut lam_r = 1.0;
    for r in 1..n {
        lam_r *= lambda;
        acc += lam_r * xk * f64::from(s[(k + r) % n]);
    }
    let lam_n = lambda.powi(n as i32);
    Ok((acc + lam_n) / (1.0 - lam_n))
}

/// `Σ_k e_k(ξ)` for every word, evaluated through cyclic autocorrelations.
struct EnergyTable {
    n: usize,
    mask: u64,
    weights: Vec<f64>,
    constant: f64,
}

impl EnergyTable {
    fn new(n: usize, params: &ModelParams) -> Self {
        let lambda = params.lambda();
        let lam_n = lambda.powi(n as i32);
        let denom = 1.0 - lam_n;
        let weights = (1..n).map(|r| lambda.powi(r as i32) / denom).collect();
        Self {
            n,
            mask: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            weights,
            constant: n as f64 * lam_n / denom,
        }
    }

    fn total(&self, word: u64) -> f64 {
        let n = self.n as u32;
        let mut acc = self.constant;
        for (idx, w) in self.weights.iter().enumerate() {
            let r = idx as u32 + 1;
            let rotated = ((word >> r) | (word << (n - r))) & self.mask;
            // C_r = Σ_k ξ_k ξ_{k+r} = n - 2·#(disagreeing pairs)
            let corr = n as i64 - 2 * i64::from((word ^ rotated).count_ones());
            acc += w * corr as f64;
        }
        acc
    }
}

/// Total interaction energy `Σ_k e_k(ξ)` of one period (the Boltzmann weight is
/// `exp(β ·` this `)`).
pub fn configuration_energy(config: &SpinConfig, params: &ModelParams) -> f64 {
    let n = config.period();
    let table = EnergyTable::new(n, params);
    let word = config
        .spins()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == 1)
        .fold(0u64, |w, (j, _)| w | (1 << j));
    table.total(word)
}

/// `Z_n(β) = Σ_ξ exp(β Σ_k e_k(ξ))` over all `2^n` period-`n` words,
/// with the default limit `n ≤ 24`.
pub fn partition_function_exact(n: usize, beta: Beta, params: &ModelParams) -> Result<Complex> {
    partition_function_with_limit(n, beta, params, DEFAULT_N_MAX)
}

pub fn partition_function_with_limit(
    n: usize,
    beta: Beta,
    params: &ModelParams,
    n_max: usize,
) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("period must be at least 1".into()));
    }
    if n > n_max || n > 40 {
        return Err(Error::ResourceLimit { n, n_max });
    }
    let table = EnergyTable::new(n, params);
    let b = beta.value();
    let total: u64 = 1 << n;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let partials: Vec<Complex> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut sum = CompensatedSum::new();
            for word in c * CHUNK..((c + 1) * CHUNK).min(total) {
                sum.add((b * table.total(word)).exp());
            }
            sum.value()
        })
        .collect();
    Ok(pairwise_sum(&partials))
}

/// `tr L_β^n = Z_n(β) / (1 - λ^n)`.
pub fn exact_trace_ruelle_power(n: usize, beta: Beta, params: &ModelParams) -> Result<Complex> {
    let z = partition_function_exact(n, beta, params)?;
    Ok(z / (1.0 - params.lambda().powi(n as i32)))
}

/// `tr G_β^n = Z_n(β) / (1 - λ^n)`.
///
/// `G_β` and `L_β` share their spectrum, so this equals
/// [`exact_trace_ruelle_power`]. The form `Z_n / (1 - λ)^n` agrees only at `n = 1`.
pub fn exact_trace_gutzwiller_power(n: usize, beta: Beta, params: &ModelParams) -> Result<Complex> {
    exact_trace_ruelle_power(n, beta, params)
}

/// Finite-`n` approximant `-β · (1/n) · ln Z_n(β)` of the free energy.
///
/// The prefactor is `-β`, not the textbook `-1/β`.
pub fn free_energy_estimate(beta: Beta, n: usize, params: &ModelParams) -> Result<f64> {
    let b = beta.as_real()?;
    let z = partition_function_exact(n, beta, params)?.re;
    Ok(-b * z.ln() / n as f64)
}
