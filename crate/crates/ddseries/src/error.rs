use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("outside convergence region: {0}")]
    Region(String),
    #[error("accuracy target {target:e} not reached (achieved {achieved:e})")]
    Accuracy { achieved: f64, target: f64 },
    #[error("inconclusive: no certified nonzero central value for N = {n} with d <= {d_max}")]
    Inconclusive { n: u64, d_max: u64 },
    #[error("fit error: {0}")]
    Fit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
