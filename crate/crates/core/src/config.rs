//! JSON instance and sweep configuration.
//!
//! ```json
//! {
//!   "p": 1021, "t": 20,
//!   "polys": ["1020,1", "1019,1"], "cosets": [1, 1],
//!   "seed": 7,
//!   "sweep": {"p_range": [500, 50000], "t_rule": "window",
//!             "poly_degrees": [1, 1], "samples": 60}
//! }
//! ```
//!
//! Polynomials use the ascending residue text of [`DensePoly::to_text`].

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::oracle::InstanceSpec;
use crate::poly::DensePoly;
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub p: Option<u64>,
    pub t: Option<u64>,
    #[serde(default)]
    pub polys: Vec<String>,
    #[serde(default)]
    pub cosets: Vec<u64>,
    pub seed: Option<u64>,
    pub sweep: Option<SweepConfig>,
}

/// How `t` is chosen once `p` is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TRule {
    /// Any divisor of `p - 1` inside the exact hypothesis window.
    Window,
    /// The largest such divisor.
    LargestWindow,
    /// Any divisor `t >= 2` of `p - 1`, including ones outside the window.
    AnyDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Inclusive prime range.
    pub p_range: [u64; 2],
    pub t_rule: TRule,
    pub poly_degrees: Vec<u64>,
    pub samples: usize,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<()> {
        if !self.cosets.is_empty()
            && !self.polys.is_empty()
            && self.cosets.len() != self.polys.len()
        {
            return Err(Error::Config(format!(
                "{} polys but {} cosets",
                self.polys.len(),
                self.cosets.len()
            )));
        }
        if let Some(s) = &self.sweep {
            if s.p_range[0] > s.p_range[1] {
                return Err(Error::Config("p_range must be ascending".into()));
            }
            if s.poly_degrees.len() < 2 || s.poly_degrees.contains(&0) {
                return Err(Error::Config(
                    "poly_degrees needs at least two positive degrees".into(),
                ));
            }
        }
        Ok(())
    }

    /// The single instance described by `p`, `t`, `polys`, `cosets`; cosets
    /// default to the subgroup itself.
    pub fn instance(&self) -> Result<InstanceSpec> {
        let p = self
            .p
            .ok_or_else(|| Error::Config("missing field p".into()))?;
        let t = self
            .t
            .ok_or_else(|| Error::Config("missing field t".into()))?;
        let cosets = if self.cosets.is_empty() {
            vec![1; self.polys.len()]
        } else {
            self.cosets.clone()
        };
        InstanceSpec::from_text(p, t, &self.polys, &cosets)
    }

    pub fn polynomials(&self) -> Result<Vec<DensePoly>> {
        let p = self
            .p
            .ok_or_else(|| Error::Config("missing field p".into()))?;
        let ctx = crate::FieldCtx::new(p)?;
        self.polys
            .iter()
            .map(|s| DensePoly::parse(ctx, s))
            .collect()
    }
}
