//! Spectra, Fredholm determinants, the Ruelle zeta function and its zeros.

mod agreement;
mod asymptotics;
mod det;
mod eigen;
mod zeros;
mod zeta;

pub use agreement::{
    eigenfunction_connection_check, eigenfunction_connection_check_with, spectra_match,
    ConnectionReport, MatchedPair, SpectraMatchReport, CONNECTION_N, CONNECTION_POINTS, MATCHED,
};
pub use asymptotics::{
    asymptotic_ratios, moritz_asymptote, trace_asymptote_ratio, AsymptoticRatios,
};
pub use det::{fredholm_det, fredholm_det_trace_route, PreparedDet};
pub use eigen::{
    eigenvalues, eigenvalues_of, spectrum_converged, spectrum_converged_with_cap, Spectrum,
    DEFAULT_N_CAP, WATCHED,
};
pub use zeros::{
    find_line_zeros, find_real_zeros, find_real_zeros_with, grid_points, Zero, ZeroKind,
    ZeroSearchConfig, ZeroSearchResult,
};
pub use zeta::{
    zeta_from_det, zeta_value, zeta_value_with_eps, ZetaEvaluation, ZetaFlag, DEFAULT_CANCEL_EPS,
};
