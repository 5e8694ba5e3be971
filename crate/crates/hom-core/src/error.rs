use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its valid domain.
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
    /// Adaptive quadrature hit its subdivision limit.
    Quadrature { residual: f64, intervals: usize },
    /// A root search could not bracket its target.
    Bracket { what: &'static str },
    /// A probability came out negative beyond round-off.
    InvalidRegime { value: f64 },
    /// Visibility baseline is zero.
    ZeroBaseline,
    /// Brute-force expansion would be too large.
    TooManyPhotons { photons: u32, limit: u32 },
    /// Sampled amplitude does not integrate to one on its grid.
    Normalization { residual: f64 },
    /// Two gridded amplitudes do not share the axis they are contracted on.
    GridMismatch,
    /// A quantity diverges (for example a sensitivity with no overlap).
    Singular { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::Quadrature {
                residual,
                intervals,
            } => write!(
                f,
                "quadrature did not converge: residual {residual:e} after {intervals} intervals"
            ),
            Error::Bracket { what } => write!(f, "could not bracket {what}"),
            Error::InvalidRegime { value } => {
                write!(f, "coincidence probability {value} is negative")
            }
            Error::ZeroBaseline => write!(f, "visibility baseline is zero"),
            Error::TooManyPhotons { photons, limit } => {
                write!(f, "{photons} photons exceeds expansion limit {limit}")
            }
            Error::Normalization { residual } => {
                write!(f, "grid too coarse: normalization residual {residual:e}")
            }
            Error::GridMismatch => write!(f, "amplitude grids do not share the contracted axis"),
            Error::Singular { what } => write!(f, "{what} is singular"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check(name: &'static str, value: f64, ok: bool) -> Result<f64> {
    if ok && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    check(name, value, (0.0..=1.0).contains(&value))
}
