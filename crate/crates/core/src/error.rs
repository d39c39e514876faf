use thiserror::Error;

/// Existence conditions a Klein-Gordon Woods-Saxon bound state has to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExistenceCondition {
    /// `0 <= n < (sqrt(1 + 192 l(l+1) a^4/R0^4 - 4 V0^2 a^2/(hbar c)^2) - 1)/2`, i.e. `n' > 0`.
    RadialCount,
    /// `0 < V0 < 4 hbar c a sqrt(3 l(l+1)) / R0^2`, i.e. `gamma^2 > 0`.
    DepthWindow,
}

impl ExistenceCondition {
    pub fn describe(self) -> &'static str {
        match self {
            ExistenceCondition::RadialCount => {
                "radial-count condition n' > 0 violated (zero angular momentum has no bound states)"
            }
            ExistenceCondition::DepthWindow => {
                "depth-window condition 0 < V0 < 4 hbar c a sqrt(3 l(l+1)) / R0^2 violated"
            }
        }
    }
}

impl std::fmt::Display for ExistenceCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate NU problem: the perfect-square condition holds for every k")]
    DegenerateProblem,

    #[error("k = {k} does not make the radicand a perfect square (discriminant {discriminant:e})")]
    NotPerfectSquare { k: f64, discriminant: f64 },

    #[error("no admissible (pi, tau) branch")]
    NoValidBranch,

    #[error("{count} admissible (pi, tau) branches, expected exactly one")]
    AmbiguousBranch { count: usize },

    #[error("no bound state: {0}")]
    NoBoundState(ExistenceCondition),

    #[error("energy quadratic has no real roots (discriminant {0:e})")]
    NoRealRoot(f64),

    #[error("state is not normalizable: {0}")]
    NonNormalizable(String),

    #[error("non-decaying asymptotics at E = {energy} MeV (eps^2 = {eps2:e})")]
    NonDecaying { energy: f64, eps2: f64 },

    #[error("state is not a validated bound state")]
    InvalidState,

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
