//! Zeros of `β ↦ det(1 - λL_β)` and of `β ↦ det(1 - L_β)` (poles of `ζ_R(1, β)`).
//!
//! On the real axis the determinants of the even and odd parity blocks are
//! scanned separately: for large `|β|` the two blocks have nearly equal
//! leading eigenvalues, so the full determinant touches zero twice in quick
//! succession without changing sign, while each block factor does.

use rayon::prelude::*;
use serde::Serialize;

use super::det::PreparedDet;
use crate::model::{Beta, ModelParams};
use crate::ruelle::ruelle_matrix;
use crate::{Complex, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroKind {
    NontrivialReal,
    TrivialLine,
    Pole,
}

impl ZeroKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroKind::NontrivialReal => "nontrivial-real",
            ZeroKind::TrivialLine => "trivial-line",
            ZeroKind::Pole => "pole",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Zero {
    pub kind: ZeroKind,
    #[serde(serialize_with = "crate::report::serialize_complex")]
    pub location: Complex,
    /// `|det|` of the full truncated determinant at `location`.
    pub residual: f64,
    /// Final bisection interval, for real-axis results.
    pub bracket: Option<(f64, f64)>,
    /// Parity block that changed sign: 0 even, 1 odd.
    pub block: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroSearchResult {
    pub zeros: Vec<Zero>,
    pub range: (f64, f64),
    pub step: f64,
    pub n: usize,
    /// Zero/pole pairs closer than [`ZeroSearchConfig::cancel_distance`].
    pub cancellations: Vec<(f64, f64)>,
    /// Line-search starts that did not converge, by index.
    pub failures: Vec<i64>,
}

#[derive(Clone, Copy, Debug)]
pub struct ZeroSearchConfig {
    /// Bisection stops once the bracket is shorter than this.
    pub bisection_tol: f64,
    /// Accept a located zero when `|det|` there is below this fraction of the
    /// largest `|det|` at the ends of its scan bracket.
    pub residual_tol: f64,
    pub cancel_distance: f64,
}

impl Default for ZeroSearchConfig {
    fn default() -> Self {
        Self {
            bisection_tol: 1e-10,
            residual_tol: 1e-6,
            cancel_distance: 1e-8,
        }
    }
}

/// Real zeros and poles in `[range.0, range.1]` on the grid `β_i = min + i·step`.
pub fn find_real_zeros(
    range: (f64, f64),
    params: &ModelParams,
    n: usize,
    step: f64,
) -> Result<ZeroSearchResult> {
    find_real_zeros_with(range, params, n, step, &ZeroSearchConfig::default())
}

pub fn find_real_zeros_with(
    range: (f64, f64),
    params: &ModelParams,
    n: usize,
    step: f64,
    cfg: &ZeroSearchConfig,
) -> Result<ZeroSearchResult> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::Domain(format!("invalid range [{lo}, {hi}]")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Domain("scan step must be positive".into()));
    }
    if n < 2 {
        return Err(Error::Domain("zero search needs N ≥ 2".into()));
    }
    let grid = grid_points(lo, hi, step);
    let lambda = params.lambda();
    // per grid point: [numerator blocks, denominator blocks]
    let samples: Vec<[Vec<f64>; 2]> = grid
        .par_iter()
        .map(|&b| real_block_dets(b, n, params, lambda))
        .collect::<Result<_>>()?;

    let mut zeros = Vec::new();
    for (which, kind) in [(0usize, ZeroKind::NontrivialReal), (1, ZeroKind::Pole)] {
        let z = if which == 0 { lambda } else { 1.0 };
        let blocks = samples[0][which].len();
        #[allow(clippy::needless_range_loop)]
        for block in 0..blocks {
            let mut found: Vec<(f64, f64, f64)> = Vec::new();
            for i in 0..grid.len() {
                let fa = samples[i][which][block];
                if fa == 0.0 {
                    found.push((grid[i], grid[i], fa.abs()));
                    continue;
                }
                if i + 1 == grid.len() {
                    break;
                }
                let fb = samples[i + 1][which][block];
                if fb != 0.0 && fa.signum() != fb.signum() {
                    let (a, b) = bisect(
                        grid[i],
                        grid[i + 1],
                        fa,
                        n,
                        params,
                        z,
                        block,
                        cfg.bisection_tol,
                    )?;
                    found.push((a, b, fa.abs().max(fb.abs())));
                }
            }
            for (a, b, scale) in found {
                let loc = 0.5 * (a + b);
                let full = PreparedDet::new(&ruelle_matrix(Beta::real(loc), n, params)?)
                    .det(Complex::new(z, 0.0))
                    .norm();
                let blk = block_det(loc, n, params, z, block)?.abs();
                if blk <= cfg.residual_tol * scale || a == b {
                    zeros.push(Zero {
                        kind,
                        location: Complex::new(loc, 0.0),
                        residual: full,
                        bracket: Some((a, b)),
                        block: Some(block),
                    });
                }
            }
        }
    }
    zeros.sort_by(|x, y| {
        x.location
            .re
            .total_cmp(&y.location.re)
            .then((x.kind as u8).cmp(&(y.kind as u8)))
            .then(x.block.cmp(&y.block))
    });
    let cancellations = cancellation_pairs(&zeros, cfg.cancel_distance);
    Ok(ZeroSearchResult {
        zeros,
        range,
        step,
        n,
        cancellations,
        failures: Vec::new(),
    })
}

/// `β_i = min + i·step`, `i = 0..=round((max - min)/step)`.
pub fn grid_points(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step).round() as usize + 1;
    (0..count).map(|i| lo + i as f64 * step).collect()
}

fn real_block_dets(b: f64, n: usize, params: &ModelParams, lambda: f64) -> Result<[Vec<f64>; 2]> {
    let det = PreparedDet::new(&ruelle_matrix(Beta::real(b), n, params)?);
    let num = det
        .block_dets(Complex::new(lambda, 0.0))
        .iter()
        .map(|d| d.re)
        .collect();
    let den = det
        .block_dets(Complex::new(1.0, 0.0))
        .iter()
        .map(|d| d.re)
        .collect();
    Ok([num, den])
}

fn block_det(b: f64, n: usize, params: &ModelParams, z: f64, block: usize) -> Result<f64> {
    let det = PreparedDet::new(&ruelle_matrix(Beta::real(b), n, params)?);
    Ok(det.block_dets(Complex::new(z, 0.0))[block].re)
}

#[allow(clippy::too_many_arguments)]
fn bisect(
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    n: usize,
    params: &ModelParams,
    z: f64,
    block: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = block_det(m, n, params, z, block)?;
        if fm == 0.0 {
            return Ok((m, m));
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok((a, b))
}

fn cancellation_pairs(zeros: &[Zero], dist: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for z in zeros.iter().filter(|z| z.kind == ZeroKind::NontrivialReal) {
        for p in zeros.iter().filter(|p| p.kind == ZeroKind::Pole) {
            if (z.location - p.location).norm() <= dist {
                out.push((z.location.re, p.location.re));
            }
        }
    }
    out
}

const NEWTON_MAX_ITER: usize = 60;
const NEWTON_STEP: f64 = 1e-6;

/// Converged location and residual, or `None` when Newton stalled.
type NewtonOutcome = Result<Option<(Complex, f64)>>;

/// Newton starts are displaced from `β_n` by this much in both directions.
const LINE_START_OFFSET: f64 = 0.05;

/// Zeros of `det(1 - L_β/2)` near `β_n = ln 2 + 2πin` for `λ = 1/2`, by Newton
/// iteration with a central-difference derivative.
pub fn find_line_zeros(
    params: &ModelParams,
    n_range: std::ops::RangeInclusive<i64>,
    n: usize,
) -> Result<ZeroSearchResult> {
    if params.lambda() != 0.5 {
        return Err(Error::UnsupportedDomain(format!(
            "line zeros are only available for λ = 1/2, got {}",
            params.lambda()
        )));
    }
    let f = |b: Complex| -> Result<Complex> {
        let beta = Beta::new(b)?;
        Ok(PreparedDet::new(&ruelle_matrix(beta, n, params)?).det(Complex::new(0.5, 0.0)))
    };
    let idx: Vec<i64> = n_range.clone().collect();
    let outcomes: Vec<(i64, NewtonOutcome)> = idx
        .par_iter()
        .map(|&k| {
            let start = Complex::new(
                std::f64::consts::LN_2 + LINE_START_OFFSET,
                2.0 * std::f64::consts::PI * k as f64 - LINE_START_OFFSET,
            );
            (k, newton(&f, start))
        })
        .collect();
    let mut zeros = Vec::new();
    let mut failures = Vec::new();
    for (k, r) in outcomes {
        match r? {
            Some((loc, res)) => zeros.push(Zero {
                kind: ZeroKind::TrivialLine,
                location: loc,
                residual: res,
                bracket: None,
                block: None,
            }),
            None => failures.push(k),
        }
    }
    Ok(ZeroSearchResult {
        zeros,
        range: (*n_range.start() as f64, *n_range.end() as f64),
        step: 1.0,
        n,
        cancellations: Vec::new(),
        failures,
    })
}

/// Newton iteration until the step drops below `1e-10·max(1, |β|)`, which is
/// where the finite-difference derivative and the determinant's rounding
/// noise take over. The iterate with the smallest `|det|` is returned.
fn newton<F: Fn(Complex) -> Result<Complex>>(
    f: &F,
    start: Complex,
) -> Result<Option<(Complex, f64)>> {
    let mut b = start;
    let mut fb = f(b)?;
    let mut best = (b, fb.norm());
    for _ in 0..NEWTON_MAX_ITER {
        if fb == Complex::new(0.0, 0.0) {
            return Ok(Some((b, 0.0)));
        }
        let h = Complex::new(NEWTON_STEP, 0.0);
        let d = (f(b + h)? - f(b - h)?) / (2.0 * NEWTON_STEP);
        if d.norm() == 0.0 || !d.is_finite() {
            return Ok(None);
        }
        let step = fb / d;
        b -= step;
        fb = f(b)?;
        if fb.norm() < best.1 {
            best = (b, fb.norm());
        }
        if step.norm() < 1e-10 * b.norm().max(1.0) {
            return Ok(Some(best));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        assert_eq!(grid_points(0.0, 1.0, 0.1).len(), 11);
        assert_eq!(grid_points(-30.0, 30.0, 0.25).len(), 241);
        assert_eq!(grid_points(2.0, 2.0, 0.5), vec![2.0]);
    }

    #[test]
    fn ln2_at_half() {
        let p = ModelParams::new(0.5).unwrap();
        let r = find_real_zeros((0.05, 1.0), &p, 80, 0.1).unwrap();
        let z: Vec<&Zero> = r
            .zeros
            .iter()
            .filter(|z| z.kind == ZeroKind::NontrivialReal)
            .collect();
        assert!(z.iter().any(|z| (z.location.re - std::f64::consts::LN_2).abs() < 1e-9 && z.residual < 1e-8), "{z:?}");
    }

    #[test]
    fn pole_at_zero_for_half() {
        let p = ModelParams::new(0.5).unwrap();
        let r = find_real_zeros((-1.0, 1.0), &p, 60, 0.1).unwrap();
        assert!(r
            .zeros
            .iter()
            .any(|z| z.kind == ZeroKind::Pole && z.location.re.abs() < 1e-9));
        // det(1 - L/2) also vanishes at β = 0 (eigenvalue 2), so the pair cancels
        assert!(!r.cancellations.is_empty());
    }

    #[test]
    fn line_zeros() {
        let p = ModelParams::new(0.5).unwrap();
        let r = find_line_zeros(&p, -1..=1, 80).unwrap();
        assert!(r.failures.is_empty());
        for z in &r.zeros {
            let k = (z.location.im / (2.0 * std::f64::consts::PI)).round();
            let expect = Complex::new(std::f64::consts::LN_2, 2.0 * std::f64::consts::PI * k);
            assert!((z.location - expect).norm() < 1e-6, "{z:?}");
        }
        assert!(find_line_zeros(&ModelParams::new(0.3).unwrap(), 0..=0, 40).is_err());
    }
}
