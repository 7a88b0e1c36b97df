use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fraisse::{hypergraph_glue, line_cycle, random_colored_hypergraph};
use crate::relstruct::{orbit_partition, PermGroup, RelationalStructure};

/// Growth pattern of the orbit counts along a truncation family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Counts were constant at this value with `k < m`.
    Finite(usize),
    /// At least three truncations with strictly increasing counts. This is
    /// evidence only: finitely many sizes never prove unbounded growth.
    InfiniteEvidence,
    Inconclusive,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Finite(_) => "finite",
            Verdict::InfiniteEvidence => "infinite-evidence",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthReport {
    pub k: usize,
    pub m: u32,
    pub sizes: Vec<usize>,
    /// Orbit counts on `X^k`, which equal the number of irreducible
    /// summands of `V^{⊗k}`.
    pub orbit_counts: Vec<usize>,
    pub verdict: Verdict,
}

impl fmt::Display for LengthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} m={} sizes={:?} orbit_counts={:?} verdict=", self.k, self.m, self.sizes, self.orbit_counts)?;
        match self.verdict {
            Verdict::Finite(c) => write!(f, "finite({c})"),
            Verdict::InfiniteEvidence => write!(f, "infinite-evidence (heuristic)"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

pub fn classify(k: usize, m: u32, counts: &[usize]) -> Verdict {
    if counts.is_empty() {
        return Verdict::Inconclusive;
    }
    if counts.windows(2).all(|w| w[0] == w[1]) && (k as u64) < m as u64 {
        return Verdict::Finite(counts[0]);
    }
    if counts.len() >= 3 && counts.windows(2).all(|w| w[0] < w[1]) {
        return Verdict::InfiniteEvidence;
    }
    Verdict::Inconclusive
}

/// A family of finite truncations `X_t` together with a group acting on
/// each, indexed by a size parameter.
pub trait TruncationFamily {
    fn describe(&self) -> String;
    fn group(&self, size: usize, caps: &Caps) -> Result<PermGroup>;
}

/// Wrap-around line truncations `Z/n` acted on by their rotations only;
/// the reflections are automorphisms too but are left out.
#[derive(Clone, Copy, Debug, Default)]
pub struct LineFamily;

impl TruncationFamily for LineFamily {
    fn describe(&self) -> String {
        "wrap-around line truncations Z/n under rotation".into()
    }

    fn group(&self, size: usize, _caps: &Caps) -> Result<PermGroup> {
        line_cycle(size)?;
        Ok(PermGroup::rotations(size))
    }
}

/// Glued colored hypergraphs with the number of colors as size parameter
/// and the full automorphism group of the glued structure.
#[derive(Clone, Copy, Debug)]
pub struct HypergraphFamily {
    pub vertices: usize,
    pub edge_size: usize,
    pub p: f64,
    pub seed: u64,
}

impl TruncationFamily for HypergraphFamily {
    fn describe(&self) -> String {
        format!(
            "glued {}-uniform hypergraphs on {} vertices, p={}, seed={}",
            self.edge_size, self.vertices, self.p, self.seed
        )
    }

    fn group(&self, size: usize, caps: &Caps) -> Result<PermGroup> {
        let h = random_colored_hypergraph(self.vertices, size, self.edge_size, self.p, self.seed, caps)?;
        hypergraph_glue(&h).automorphism_search(caps)
    }
}

/// Any structure builder, with the automorphism group found by search.
pub struct SearchFamily<F> {
    pub name: String,
    pub build: F,
}

impl<F: Fn(usize) -> Result<RelationalStructure>> TruncationFamily for SearchFamily<F> {
    fn describe(&self) -> String {
        self.name.clone()
    }

    fn group(&self, size: usize, caps: &Caps) -> Result<PermGroup> {
        (self.build)(size)?.automorphism_search(caps)
    }
}

pub fn length_report(
    family: &dyn TruncationFamily,
    k: usize,
    m: u32,
    sizes: &[usize],
    caps: &Caps,
) -> Result<LengthReport> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(format!("sizes must be non-empty and strictly increasing, got {sizes:?}")));
    }
    if m == 0 {
        return Err(Error::Invalid("root order must be positive".into()));
    }
    let mut counts = Vec::with_capacity(sizes.len());
    for &t in sizes {
        let g = family.group(t, caps)?;
        counts.push(orbit_partition(&g, k, caps)?.orbit_count());
    }
    Ok(LengthReport { k, m, sizes: sizes.to_vec(), verdict: classify(k, m, &counts), orbit_counts: counts })
}
