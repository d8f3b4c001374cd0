use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Bad indices, dimensions or group parameters.
    #[error("argument error: {0}")]
    Argument(String),

    /// Input data violates a mathematical precondition (non-isotropic vector, proportional P and Q, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A quotient denominator fell below its domain floor.
    #[error("domain error: quotient denominator |{magnitude:e}| below floor {floor:e} at node {}", path_string(.path))]
    Pole {
        path: Vec<usize>,
        magnitude: f64,
        floor: f64,
    },

    #[error("degenerate direction at pivot {index}: |B(v,v)| = {value:e}")]
    Degenerate { index: usize, value: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Every sample fell outside the domain of a quotient.
    #[error("inconclusive: all {discarded} samples were outside the domain")]
    Inconclusive { discarded: usize },

    #[error("construction error: {0}")]
    Construction(String),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Prefixes a child index onto the node path of a pole error.
    pub(crate) fn at_child(self, index: usize) -> Self {
        match self {
            Error::Pole {
                mut path,
                magnitude,
                floor,
            } => {
                path.insert(0, index);
                Error::Pole {
                    path,
                    magnitude,
                    floor,
                }
            }
            other => other,
        }
    }
}

fn path_string(path: &[usize]) -> String {
    let mut s = String::from("root");
    for p in path {
        s.push('.');
        s.push_str(&p.to_string());
    }
    s
}
