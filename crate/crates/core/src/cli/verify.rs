//! The invariant suite behind `kacbaker verify`.

use crate::bargmann::HermiteCoefficients;
use crate::bargmann::{
    bargmann_transform_quadrature, verify_operator_identities, verify_ruelle_conjugacy, zeta_k,
};
use crate::kacg::{
    b_matrix, g_matrix_quadrature, kac_kernel, kac_kernel_factored, mehler_adaptive,
    trace_g_closed_form,
};
use crate::model::{exact_trace_ruelle_power, partition_function_exact};
use crate::report::Check;
use crate::ruelle::{ruelle_matrix, truncated_trace_power};
use crate::spectral::{
    eigenfunction_connection_check, eigenvalues, fredholm_det, fredholm_det_trace_route,
    spectra_match, zeta_value, ZetaFlag,
};
use crate::{Beta, Complex, ModelParams, Result};

const TRACE_N: usize = 80;
const SPECTRUM_N: usize = 60;

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// Checks that do not depend on `β`.
pub fn beta_free_checks(params: &ModelParams) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let lambda = params.lambda();
    for n in 1..=6 {
        let z = partition_function_exact(n, Beta::real(0.0), params)?;
        out.push(Check::relative(
            format!("partition_beta_zero[n={n}]"),
            z,
            c(2f64.powi(n as i32)),
            1e-12,
        ));
    }
    for &(x, y) in &[(0.0, 0.0), (0.3, -0.2), (0.7, 0.5), (-1.1, 0.4)] {
        let s = mehler_adaptive(lambda, x, y)?;
        out.push(Check::new(
            format!("mehler[x={x},y={y}]"),
            c(s.lhs),
            c(s.rhs),
            1e-10,
        ));
        out.push(Check::new(
            format!("mehler_rescaled[x={x},y={y}]"),
            c(s.rhs_rescaled),
            c(s.rhs),
            1e-12,
        ));
    }
    let pts = [
        Complex::new(0.3, 0.0),
        Complex::new(-0.5, 0.4),
        Complex::new(0.0, -0.6),
        Complex::new(0.45, 0.35),
    ];
    for k in [0usize, 3, 8, 15] {
        let mut a = vec![c(0.0); k + 1];
        a[k] = c(1.0);
        let f = HermiteCoefficients(a);
        let mut worst = (0.0, c(0.0), c(0.0));
        for &z in &pts {
            let q = bargmann_transform_quadrature(|x| f.eval(x), z)?;
            let e = zeta_k(k, z);
            if (q - e).norm() >= worst.0 {
                worst = ((q - e).norm(), q, e);
            }
        }
        out.push(Check::new(
            format!("bargmann_basis[k={k}]"),
            worst.1,
            worst.2,
            1e-8,
        ));
    }
    out.extend(verify_operator_identities(&[0, 2, 5], 1e-8)?);
    Ok(out)
}

/// Checks at one inverse temperature.
pub fn beta_checks(beta: f64, params: &ModelParams) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let lambda = params.lambda();
    let b = Beta::real(beta);
    let tag = |name: &str| format!("{name}[beta={beta}]");

    let shifted = Beta::new(Complex::new(beta, 0.3))?;
    let z = partition_function_exact(4, shifted, params)?;
    let zc = partition_function_exact(4, shifted.conj(), params)?;
    out.push(Check::new(
        tag("partition_conjugation"),
        zc,
        z.conj(),
        1e-12,
    ));

    let l = ruelle_matrix(b, TRACE_N, params)?;
    for n in 1..=3 {
        let t = truncated_trace_power(&l, n)?;
        let exact = exact_trace_ruelle_power(n, b, params)?;
        out.push(Check::relative(
            format!("ruelle_trace_power[beta={beta},n={n}]"),
            t,
            exact,
            1e-7,
        ));
    }
    let odd_mass = (0..TRACE_N)
        .flat_map(|i| (0..TRACE_N).map(move |j| (i, j)))
        .filter(|(i, j)| (i + j) % 2 == 1)
        .map(|ij| l.entries[ij].norm())
        .fold(0.0, f64::max);
    out.push(Check::bound(tag("ruelle_parity"), odd_mass, 0.0));

    for &(xi, eta) in &[(0.2, -0.4), (1.0, 0.5), (-0.8, -1.3)] {
        out.push(Check::new(
            format!("kernel_factorization[beta={beta},xi={xi},eta={eta}]"),
            kac_kernel(b, xi, eta, params),
            kac_kernel_factored(b, xi, eta, params),
            1e-12,
        ));
    }
    let bm = b_matrix(b, TRACE_N, params)?;
    out.push(Check::relative(
        tag("bmatrix_trace"),
        bm.trace(),
        trace_g_closed_form(b, params),
        1e-9,
    ));

    if beta >= 0.0 {
        let g = g_matrix_quadrature(b, TRACE_N, 4 * TRACE_N, params)?;
        out.push(Check::relative(
            tag("gquad_trace"),
            g.trace(),
            trace_g_closed_form(b, params),
            1e-9,
        ));
        for n in 2..=3 {
            let t = truncated_trace_power(&g, n)?;
            let exact = exact_trace_ruelle_power(n, b, params)?;
            out.push(Check::relative(
                format!("gquad_trace_power[beta={beta},n={n}]"),
                t,
                exact,
                1e-7,
            ));
        }
        let m = spectra_match(beta, params, TRACE_N, SPECTRUM_N, 1e-6)?;
        for (i, p) in m.pairs.iter().take(5).enumerate() {
            out.push(Check::relative(
                format!("spectra_match[beta={beta},i={i}]"),
                p.gutzwiller,
                p.ruelle,
                1e-6,
            ));
        }
        if beta > 0.0 {
            let r = eigenfunction_connection_check(beta, 0, params)?;
            out.push(Check::bound(
                tag("eigenfunction_connection"),
                r.residual,
                1e-5,
            ));
            out.extend(verify_ruelle_conjugacy(b, params, 1e-8)?);
        }
    }

    let spec = eigenvalues(&ruelle_matrix(b, SPECTRUM_N, params)?)?;
    out.push(Check::bound(
        tag("spectrum_real"),
        spec.max_relative_imaginary(1e-8),
        1e-8,
    ));
    if beta == 0.0 {
        for (k, r) in spec.eigenvalues.iter().take(10).enumerate() {
            out.push(Check::new(
                format!("spectrum_beta_zero[k={k}]"),
                *r,
                c(2.0 * lambda.powi(k as i32)),
                1e-12,
            ));
        }
        for &zz in &[0.1, 0.4] {
            let e = zeta_value(c(zz), b, SPECTRUM_N, params)?;
            let v = e.value.unwrap_or(c(f64::NAN));
            out.push(Check::new(
                format!("zeta_beta_zero[z={zz}]"),
                v,
                c(1.0 / (1.0 - 2.0 * zz)),
                1e-9,
            ));
        }
        let e = zeta_value(c(1.0), b, SPECTRUM_N, params)?;
        let v = if e.flag == ZetaFlag::Indeterminate {
            c(f64::NAN)
        } else {
            e.value.unwrap_or(c(f64::NAN))
        };
        out.push(Check::new("zeta_beta_zero[z=1]", v, c(-1.0), 1e-7));
    }
    let z = c(0.1 / spec.top_modulus());
    out.push(Check::new(
        tag("det_routes"),
        fredholm_det(b, z, SPECTRUM_N, params)?,
        fredholm_det_trace_route(b, z, 16, params)?,
        1e-9,
    ));
    Ok(out)
}
