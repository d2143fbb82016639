//! Structured error reporting: every failure leaves a one-line JSON object
//! on stderr with a stable machine-readable kind, and the process exits 1.
//! Usage errors (bad flags) are handled by the argument parser with exit 2.

use spantree::census::CensusError;
use spantree::counting::CountError;
use spantree::format::FormatError;
use spantree::graph::GraphError;
use spantree::sampler::SamplerError;
use spantree::spectral::SpectralError;
use spantree::spine::SpineError;
use spantree::tree::TreeError;
use spantree::treegen::GenError;

#[derive(Debug)]
pub struct AppError {
    pub kind: &'static str,
    pub message: String,
}

impl AppError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> AppError {
        AppError {
            kind,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": { "kind": self.kind, "message": self.message }
        })
        .to_string()
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for AppError {}

impl From<TreeError> for AppError {
    fn from(e: TreeError) -> AppError {
        AppError::new("not_a_tree", e.to_string())
    }
}

impl From<GenError> for AppError {
    fn from(e: GenError) -> AppError {
        let kind = match e {
            GenError::ResourceLimit { .. } => "resource_limit",
            GenError::NotCanonical { .. } | GenError::BadShape => "not_canonical",
        };
        AppError::new(kind, e.to_string())
    }
}

impl From<CountError> for AppError {
    fn from(e: CountError) -> AppError {
        let kind = match e {
            CountError::ResourceLimit { .. } => "resource_limit",
            CountError::SearchExhausted { .. } => "search_exhausted",
            CountError::BadEpsilon { .. } => "bad_parameters",
            CountError::IndexOutOfRange { .. } => "bad_parameters",
            CountError::ParityViolation { .. } => "internal",
        };
        AppError::new(kind, e.to_string())
    }
}

impl From<SpineError> for AppError {
    fn from(e: SpineError) -> AppError {
        let kind = match &e {
            SpineError::NotInImage(_) => "not_in_image",
            SpineError::ThresholdNotFound { .. } => "search_exhausted",
            SpineError::Count(inner) => return AppError::from(inner.clone()),
            _ => "bad_parameters",
        };
        AppError::new(kind, e.to_string())
    }
}

impl From<GraphError> for AppError {
    fn from(e: GraphError) -> AppError {
        let kind = match e {
            GraphError::RejectionBudgetExceeded { .. } => "rejection_budget_exceeded",
            GraphError::BadParameters(_) | GraphError::Empty => "bad_parameters",
            _ => "not_simple_graph",
        };
        AppError::new(kind, e.to_string())
    }
}

impl From<SpectralError> for AppError {
    fn from(e: SpectralError) -> AppError {
        let kind = match e {
            SpectralError::NotRegular { .. } => "not_regular",
            SpectralError::ResourceLimit { .. } => "resource_limit",
            SpectralError::BadTolerance { .. } => "bad_parameters",
            SpectralError::NoConvergence { .. } => "no_convergence",
        };
        AppError::new(kind, e.to_string())
    }
}

impl From<CensusError> for AppError {
    fn from(e: CensusError) -> AppError {
        let kind = match e {
            CensusError::ResourceLimit { .. } => "resource_limit",
            CensusError::OverCap { .. } => "over_cap",
            CensusError::Disconnected => "disconnected",
        };
        AppError::new(kind, e.to_string())
    }
}

impl From<SamplerError> for AppError {
    fn from(e: SamplerError) -> AppError {
        match e {
            SamplerError::Disconnected => AppError::new("disconnected", e.to_string()),
            SamplerError::NoThreads => AppError::new("bad_parameters", e.to_string()),
            SamplerError::Census(inner) => AppError::from(inner),
        }
    }
}

impl From<FormatError> for AppError {
    fn from(e: FormatError) -> AppError {
        AppError::new("format", e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> AppError {
        AppError::new("io", e.to_string())
    }
}
