use thiserror::Error;

/// Errors raised by the evaluators.
///
/// Every variant maps onto one of three coarse categories (see [`ErrorCategory`])
/// which the command line front end turns into exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("region: {0}")]
    Region(String),
    #[error("order: {0}")]
    Order(String),
    #[error("radius: {0}")]
    Radius(String),
    #[error("route: {0}")]
    Route(String),
    #[error("branch point: {0}")]
    BranchPoint(String),
    #[error("convergence: {0}")]
    Convergence(String),
    #[error("slow convergence: {0}")]
    SlowConvergence(String),
    #[error("heuristic failure: {0}")]
    HeuristicFailure(String),
    #[error("depth: {0}")]
    Depth(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("usage: {0}")]
    Usage(String),
}

/// Coarse failure class used for exit codes and FFI status values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Domain,
    Convergence,
    Usage,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Pole(_)
            | Error::Domain(_)
            | Error::Degenerate(_)
            | Error::Region(_)
            | Error::Order(_)
            | Error::Radius(_)
            | Error::Route(_)
            | Error::BranchPoint(_) => ErrorCategory::Domain,
            Error::Convergence(_)
            | Error::SlowConvergence(_)
            | Error::HeuristicFailure(_)
            | Error::Depth(_)
            | Error::Precision(_) => ErrorCategory::Convergence,
            Error::Usage(_) => ErrorCategory::Usage,
        }
    }

    /// The message without its category prefix.
    pub fn message(&self) -> &str {
        match self {
            Error::Pole(m)
            | Error::Domain(m)
            | Error::Degenerate(m)
            | Error::Region(m)
            | Error::Order(m)
            | Error::Radius(m)
            | Error::Route(m)
            | Error::BranchPoint(m)
            | Error::Convergence(m)
            | Error::SlowConvergence(m)
            | Error::HeuristicFailure(m)
            | Error::Depth(m)
            | Error::Precision(m)
            | Error::Usage(m) => m,
        }
    }

    /// Process exit status used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self.category() {
            ErrorCategory::Domain => 2,
            ErrorCategory::Convergence => 3,
            ErrorCategory::Usage => 4,
        }
    }

    /// Short machine-readable tag, e.g. `region` or `slow-convergence`.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::Domain(_) => "domain",
            Error::Degenerate(_) => "degenerate",
            Error::Region(_) => "region",
            Error::Order(_) => "order",
            Error::Radius(_) => "radius",
            Error::Route(_) => "route",
            Error::BranchPoint(_) => "branch-point",
            Error::Convergence(_) => "convergence",
            Error::SlowConvergence(_) => "slow-convergence",
            Error::HeuristicFailure(_) => "heuristic-failure",
            Error::Depth(_) => "depth",
            Error::Precision(_) => "precision",
            Error::Usage(_) => "usage",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
