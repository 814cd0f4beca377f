use thiserror::Error;

#[derive(Debug, Error)]
pub enum KitError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] daehee_core::Error),
    #[error("reading config: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing config: {0}")]
    Config(#[from] toml::de::Error),
    #[error("writing json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T, E = KitError> = std::result::Result<T, E>;
