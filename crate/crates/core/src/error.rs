use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Wrong number of points or coordinates.
    DimensionError { expected: usize, found: usize },
    /// A linear system or nullspace is ambiguous at the rank tolerance.
    RankDeficient,
    /// Rays spanning a solid cone are linearly dependent.
    DegenerateCone,
    /// The simplex has (numerically) zero volume.
    DegenerateSimplex,
    /// The configuration violates the embedding condition of its complex.
    InvalidConfiguration(&'static str),
    /// Matrix inverse square root requested for a (near) singular matrix.
    SingularInput,
    /// A reparametrization of α was evaluated outside its domain.
    OutOfRange { value: f64, lo: f64, hi: f64 },
    /// `s(m, q)` evaluated outside `0 ≤ n·m ≤ 1−q ≤ 1` or at the origin.
    DomainError { m: f64, q: f64 },
    /// The wide face only exists when the greatest solid angle exceeds `V/2`.
    NotGated { alpha: f64, half_v: f64 },
    /// A path sample left the configuration space.
    EmbeddingViolated { t: f64 },
    /// The degeneracy type changed along a path where it should not.
    ClassificationUnstable { t: f64 },
    /// A word or generator name could not be parsed.
    Parse(alloc::string::String),
    /// The inradius flow did not meet its stopping criterion.
    NonConvergence { iterations: usize, potential: f64, residual: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionError { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::RankDeficient => write!(f, "rank deficient input"),
            Error::DegenerateCone => write!(f, "cone rays are linearly dependent"),
            Error::DegenerateSimplex => write!(f, "simplex is degenerate"),
            Error::InvalidConfiguration(why) => write!(f, "invalid configuration: {why}"),
            Error::SingularInput => write!(f, "singular input matrix"),
            Error::OutOfRange { value, lo, hi } => {
                write!(f, "value {value} outside [{lo}, {hi}]")
            }
            Error::DomainError { m, q } => write!(f, "s(m, q) undefined at m = {m}, q = {q}"),
            Error::NotGated { alpha, half_v } => {
                write!(f, "greatest solid angle {alpha} does not exceed V/2 = {half_v}")
            }
            Error::EmbeddingViolated { t } => write!(f, "embedding violated at t = {t}"),
            Error::ClassificationUnstable { t } => write!(f, "degeneracy type changed at t = {t}"),
            Error::Parse(token) => write!(f, "cannot parse {token:?}"),
            Error::NonConvergence { iterations, potential, residual } => write!(
                f,
                "no convergence after {iterations} iterations (potential {potential}, residual {residual})"
            ),
        }
    }
}

impl core::error::Error for Error {}
