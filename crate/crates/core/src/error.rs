use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinnikError {
    #[error("n = {n} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { n: u64, ceiling: u64 },

    #[error("n must be positive")]
    ZeroNorm,

    #[error("the sphere x²+y²+z²={0} carries no lattice points")]
    NoPoints(u64),

    #[error("vector is not unit length (norm {0})")]
    NotUnit(f64),

    #[error("{name} = {value} is outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("Parseval deficit {0} is negative beyond rounding")]
    Normalization(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl LinnikError {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        LinnikError::Domain {
            name,
            value,
            domain,
        }
    }
}

impl From<std::io::Error> for LinnikError {
    fn from(e: std::io::Error) -> Self {
        LinnikError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LinnikError>;
