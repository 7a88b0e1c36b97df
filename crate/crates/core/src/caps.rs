//! Size limits for the exhaustive searches.
//!
//! Every search checks its predicted (or running) work against one of these
//! before it allocates. Limits are plain configuration: the CLI lets callers
//! raise them with flags or the `TENSORSPACE_CAPS` environment variable.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest universe handed to the permutation backtracking search.
    pub max_search_degree: usize,
    /// Largest tuple space `n^k` enumerated by orbit computations.
    pub max_tuples: u128,
    /// Largest group materialised by closure or enumeration.
    pub max_group: u128,
    /// Node budget for the monomial automorphism search.
    pub max_monomial_nodes: u128,
    /// Largest `m^n * |G|` summed over by the character inner product.
    pub max_character_terms: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_search_degree: 16,
            max_tuples: 10_000_000,
            max_group: 1_000_000,
            max_monomial_nodes: 100_000_000,
            max_character_terms: 10_000_000,
        }
    }
}

impl Caps {
    /// Parses overrides of the form `perms=20,tuples=1e8,group=5000000`.
    ///
    /// Recognised keys: `perms` (search degree), `tuples`, `group`,
    /// `monomial`, `character`. Values accept plain integers or `AeB`.
    pub fn with_overrides(mut self, overrides: &str) -> Result<Self> {
        for item in overrides.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap override `{item}` lacks `=`")))?;
            let value = parse_count(value.trim())?;
            match key.trim() {
                "perms" => self.max_search_degree = value as usize,
                "tuples" => self.max_tuples = value,
                "group" => self.max_group = value,
                "monomial" => self.max_monomial_nodes = value,
                "character" => self.max_character_terms = value,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }
}

fn parse_count(s: &str) -> Result<u128> {
    let bad = || Error::Parse(format!("bad cap value `{s}`"));
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: u128 = mant.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        10u128
            .checked_pow(exp)
            .and_then(|p| p.checked_mul(mant))
            .ok_or_else(bad)
    } else {
        s.parse().map_err(|_| bad())
    }
}

pub(crate) fn check(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded { what, needed, cap })
    } else {
        Ok(())
    }
}
