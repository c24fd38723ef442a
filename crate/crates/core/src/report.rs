//! Named numerical checks with both sides recorded.

use serde::{Serialize, Serializer};

use crate::Complex;

/// One comparison `lhs ≈ rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check_name: String,
    #[serde(serialize_with = "serialize_complex")]
    pub lhs: Complex,
    #[serde(serialize_with = "serialize_complex")]
    pub rhs: Complex,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip)]
    kind: Kind,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    /// `|lhs - rhs| ≤ tol · max(1, |rhs|)`
    Mixed,
    /// `|lhs - rhs| ≤ tol · |rhs|`
    Relative,
    /// `lhs ≤ tol`
    Bound,
}

impl Check {
    /// Passes when `|lhs - rhs| ≤ tol · max(1, |rhs|)`.
    pub fn new(name: impl Into<String>, lhs: Complex, rhs: Complex, tol: f64) -> Self {
        Self::build(name.into(), lhs, rhs, tol, Kind::Mixed)
    }

    /// Passes when `|lhs - rhs| ≤ tol · |rhs|`.
    pub fn relative(name: impl Into<String>, lhs: Complex, rhs: Complex, tol: f64) -> Self {
        Self::build(name.into(), lhs, rhs, tol, Kind::Relative)
    }

    /// A bound `value ≤ limit`, recorded as `lhs = value`, `rhs = 0`.
    pub fn bound(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::build(
            name.into(),
            Complex::new(value, 0.0),
            Complex::new(0.0, 0.0),
            limit,
            Kind::Bound,
        )
    }

    fn build(check_name: String, lhs: Complex, rhs: Complex, tol: f64, kind: Kind) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = if rhs.norm() > 0.0 {
            abs_err / rhs.norm()
        } else {
            abs_err
        };
        let mut c = Self {
            check_name,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            pass: false,
            kind,
        };
        c.judge();
        c
    }

    fn judge(&mut self) {
        let allowed = match self.kind {
            Kind::Mixed => self.tol * self.rhs.norm().max(1.0),
            Kind::Relative => self.tol * self.rhs.norm(),
            Kind::Bound => self.tol,
        };
        self.pass = self.abs_err.is_finite() && self.abs_err <= allowed;
    }

    /// The same comparison judged against another tolerance.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.judge();
        self
    }
}

pub(crate) fn serialize_complex<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub(crate) fn serialize_complex_vec<S: Serializer>(v: &[Complex], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}
