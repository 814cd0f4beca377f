//! Optional TOML config file. Precedence is flag, then `DAEHEE_*` environment
//! variable (both handled by clap), then this file, then built-in defaults.

use std::path::Path;

use serde::Deserialize;

use crate::error::Result;
use crate::output::Format;

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub n_max: Option<usize>,
    pub k_max: Option<usize>,
    pub k: Option<usize>,
    pub jobs: Option<usize>,
    pub x_samples: Option<Vec<String>>,
    pub budget: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }
}

/// First present value wins.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let cfg: FileConfig = toml::from_str(
            r#"
            format = "csv"
            n_max = 12
            k_max = 4
            k = 2
            jobs = 3
            x_samples = ["0", "1/2"]
            budget = 1000
            "#,
        )
        .unwrap();
        assert_eq!(cfg.format, Some(Format::Csv));
        assert_eq!(cfg.n_max, Some(12));
        assert_eq!(cfg.x_samples.as_deref(), Some(&["0".to_string(), "1/2".to_string()][..]));
        assert_eq!(cfg.budget, Some(1000));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(resolve(Some(1), Some(2), 3), 1);
        assert_eq!(resolve(None, Some(2), 3), 2);
        assert_eq!(resolve(None::<i32>, None, 3), 3);
    }
}
