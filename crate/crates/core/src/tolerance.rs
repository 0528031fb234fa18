use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical slack used by every comparison in the crate.
///
/// `eps_psd` bounds how negative an eigenvalue may be before a matrix stops
/// counting as positive semidefinite. `eps_rank` is a relative cutoff: an
/// eigenvalue belongs to the range only when it exceeds `eps_rank * λmax`.
/// `eps_eq` is the Frobenius tolerance for equality and `eps_herm` the
/// Hermiticity slack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub eps_psd: f64,
    pub eps_rank: f64,
    pub eps_eq: f64,
    pub eps_herm: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_psd: 1e-9,
            eps_rank: 1e-8,
            eps_eq: 1e-9,
            eps_herm: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eps_psd: f64, eps_rank: f64, eps_eq: f64, eps_herm: f64) -> Result<Self> {
        let cfg = Self {
            eps_psd,
            eps_rank,
            eps_eq,
            eps_herm,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Multiplies every field by `factor`, keeping their ratios fixed.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.eps_psd * factor,
            self.eps_rank * factor,
            self.eps_eq * factor,
            self.eps_herm * factor,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_psd", self.eps_psd),
            ("eps_rank", self.eps_rank),
            ("eps_eq", self.eps_eq),
            ("eps_herm", self.eps_herm),
        ] {
            if !(v > 0.0 && v < 1e-3) {
                return Err(Error::ParamError(format!(
                    "{name} = {v} must lie in the open interval (0, 1e-3)"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ToleranceConfig::default().validate().unwrap();
    }

    #[test]
    fn scaling_keeps_ratios() {
        let t = ToleranceConfig::default().scaled(10.0).unwrap();
        assert!((t.eps_eq - 1e-8).abs() < 1e-20);
        assert!((t.eps_rank / t.eps_psd - 10.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_range_fields() {
        assert!(ToleranceConfig::new(0.0, 1e-8, 1e-9, 1e-10).is_err());
        assert!(ToleranceConfig::new(1e-9, 1e-2, 1e-9, 1e-10).is_err());
        assert!(ToleranceConfig::default().scaled(1e7).is_err());
    }
}
