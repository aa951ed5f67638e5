use std::path::PathBuf;
use std::sync::Arc;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use tube_ncr::cohom::Bounds;
use tube_ncr::quivalg::ArrowConvention;
use tube_ncr::{Field, Poly, PolyRing, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Everything a run depends on. Built from defaults, then an optional
/// `--config` file, then command-line flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub field: Field,
    pub n: usize,
    /// Variables of the base ring that `f` is written in.
    pub vars: Vec<String>,
    /// Base-change polynomials `f_0, …, f_n`; empty means `t_i ↦ t_i`.
    pub f: Vec<String>,
    /// Which idempotent `a_i b_i = f_i e` lands on in the contraction quiver.
    pub convention: ArrowConvention,
    /// `None` lets each command use its own default box.
    pub bounds: Option<Bounds>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: Field::Rationals,
            n: 2,
            vars: vec!["x".into(), "y".into()],
            f: Vec::new(),
            convention: ArrowConvention::Tube,
            bounds: None,
            output: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn bounds_or(&self, default: Bounds) -> Bounds {
        self.bounds.unwrap_or(default)
    }

    /// The ring `f` lives in together with `f` itself; without `f`, the
    /// generic ring `k[t_0..t_n]` and its variables.
    pub fn base_change(&self, count: usize) -> Result<(Arc<PolyRing>, Vec<Poly>)> {
        if self.f.is_empty() {
            let r = PolyRing::t_ring(self.field, count - 1);
            let f = (0..count).map(|i| r.var(i)).collect();
            return Ok((r, f));
        }
        if self.f.len() != count {
            return Err(tube_ncr::Error::Parse(format!("expected {count} polynomials after --f, got {}", self.f.len())));
        }
        let r = PolyRing::new(self.field, self.vars.iter().map(String::as_str))?;
        let f = self.f.iter().map(|p| r.parse(p)).collect::<Result<_>>()?;
        Ok((r, f))
    }

    /// The configuration as echoed into reports (without the output path,
    /// so reports do not depend on where they are written).
    pub fn echo(&self) -> RunConfig {
        RunConfig { output: None, ..self.clone() }
    }
}
