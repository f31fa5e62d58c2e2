use crate::error::{Error, Result};

/// Environment variable overriding the exhaustive-coverage cap.
pub const COVERAGE_CAP_ENV: &str = "ALPHASAT_COVERAGE_CAP";

/// Largest `n` for which anything enumerates all `2^n` assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverageCap(u32);

impl CoverageCap {
    pub const DEFAULT: u32 = 26;
    pub const MAX: u32 = 30;

    pub fn new(cap: u32) -> Result<Self> {
        if cap > Self::MAX {
            return Err(Error::InvalidParams(format!(
                "coverage cap {cap} exceeds the maximum of {}",
                Self::MAX
            )));
        }
        Ok(CoverageCap(cap))
    }

    /// Reads [`COVERAGE_CAP_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(COVERAGE_CAP_ENV) {
            Ok(raw) => {
                let cap = raw.trim().parse::<u32>().map_err(|_| {
                    Error::InvalidParams(format!("{COVERAGE_CAP_ENV}={raw:?} is not an integer"))
                })?;
                Self::new(cap)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 as usize {
            Err(Error::OverCap { n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for CoverageCap {
    fn default() -> Self {
        CoverageCap(Self::DEFAULT)
    }
}
