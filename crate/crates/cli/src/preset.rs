use std::path::PathBuf;

use clap::{Args, ValueEnum};
use tensorspace_core::fraisse::{self, hypergraph_glue, random_colored_hypergraph};
use tensorspace_core::{Caps, Error, RelationalStructure, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Dlo,
    Rado,
    Glinfty,
    Line,
    Hypergraph,
    Path,
    Cycle,
    Complete,
    Petersen,
    #[value(name = "k4-minus-edge")]
    K4MinusEdge,
}

/// Where a structure comes from: a named preset or a structure JSON file.
#[derive(Args, Clone, Debug)]
pub struct Source {
    #[arg(long, value_enum, conflicts_with = "input")]
    pub preset: Option<Preset>,
    /// Structure JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Universe size; vertex count for `hypergraph`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Field size for `glinfty`.
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    /// Vector-space dimension for `glinfty`.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Number of edge colors for `hypergraph`.
    #[arg(long, default_value_t = 2)]
    pub colors: usize,
    /// Edge probability for `hypergraph`.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
}

impl Source {
    pub fn load(&self, m: u32, seed: u64, caps: &Caps) -> Result<RelationalStructure> {
        match (self.preset, &self.input) {
            (Some(p), _) => self.build(p, self.n, m, seed, caps),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
                RelationalStructure::from_json(&text)
            }
            (None, None) => Err(Error::Invalid("one of --preset or --input is required".into())),
        }
    }

    /// The preset at universe parameter `n` (colors for `hypergraph`).
    pub fn build(&self, preset: Preset, n: Option<usize>, m: u32, seed: u64, caps: &Caps) -> Result<RelationalStructure> {
        let need_n = || n.ok_or_else(|| Error::Invalid(format!("preset {preset:?} needs --n")));
        Ok(match preset {
            Preset::Dlo => fraisse::dlo_approx(positive(need_n()?)?),
            Preset::Rado => fraisse::rado_approx(positive(need_n()?)?),
            Preset::Glinfty => fraisse::glinfty_approx(self.q, self.dim, caps)?,
            Preset::Line => fraisse::line_cycle(need_n()?)?,
            Preset::Hypergraph => {
                let h = random_colored_hypergraph(n.unwrap_or(4), self.colors, m as usize, self.p, seed, caps)?;
                hypergraph_glue(&h)
            }
            Preset::Path => fraisse::path(positive(need_n()?)?),
            Preset::Cycle => fraisse::cycle(need_n()?)?,
            Preset::Complete => fraisse::complete(positive(need_n()?)?),
            Preset::Petersen => fraisse::petersen(),
            Preset::K4MinusEdge => fraisse::k4_minus_edge(),
        })
    }
}

fn positive(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::Invalid("--n must be at least 1".into()))
    } else {
        Ok(n)
    }
}
