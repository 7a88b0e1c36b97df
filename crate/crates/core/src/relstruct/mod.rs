//! Finite relational structures over the universe `[0, n)`, their
//! automorphism groups, and orbit enumeration on tuple powers.

mod orbits;
mod perm;
pub(crate) mod search;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use orbits::{orbit_partition, tuple_at, tuple_index, OrbitPartition, OrbitSummary};
pub use perm::{PermGroup, Permutation};

use crate::caps::{self, Caps};
use crate::error::{invalid, Error, Result};

/// Arities `(d_1, …, d_r)` of the relations of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if arities.is_empty() {
            return invalid("signature must have at least one relation");
        }
        if arities.contains(&0) {
            return invalid("arities must be positive");
        }
        Ok(Signature(arities))
    }

    pub fn arities(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Wire form of a structure: `{"n", "arities", "relations"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureData {
    pub n: usize,
    pub arities: Vec<usize>,
    pub relations: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptySignature,
    ZeroArity { relation: usize },
    RelationCount { declared: usize, given: usize },
    BadArity { relation: usize, tuple: Vec<usize>, expected: usize },
    OutOfRange { relation: usize, tuple: Vec<usize> },
    Duplicate { relation: usize, tuple: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySignature => write!(f, "empty signature"),
            Violation::ZeroArity { relation } => write!(f, "relation {relation}: zero arity"),
            Violation::RelationCount { declared, given } => {
                write!(f, "{declared} arities declared but {given} relations given")
            }
            Violation::BadArity { relation, tuple, expected } => {
                write!(f, "relation {relation}: bad arity for {tuple:?}, expected {expected}")
            }
            Violation::OutOfRange { relation, tuple } => {
                write!(f, "relation {relation}: entry out of range in {tuple:?}")
            }
            Violation::Duplicate { relation, tuple } => {
                write!(f, "relation {relation}: duplicate tuple {tuple:?}")
            }
        }
    }
}

/// Lists every invariant violation of raw structure data; empty means valid.
pub fn validate_structure(data: &StructureData) -> Vec<Violation> {
    let mut out = Vec::new();
    if data.arities.is_empty() {
        out.push(Violation::EmptySignature);
    }
    for (i, &a) in data.arities.iter().enumerate() {
        if a == 0 {
            out.push(Violation::ZeroArity { relation: i });
        }
    }
    if data.arities.len() != data.relations.len() {
        out.push(Violation::RelationCount {
            declared: data.arities.len(),
            given: data.relations.len(),
        });
    }
    for (i, (rel, &arity)) in data.relations.iter().zip(&data.arities).enumerate() {
        let mut seen = HashSet::new();
        for t in rel {
            if t.len() != arity {
                out.push(Violation::BadArity { relation: i, tuple: t.clone(), expected: arity });
            }
            if t.iter().any(|&x| x >= data.n) {
                out.push(Violation::OutOfRange { relation: i, tuple: t.clone() });
            }
            if !seen.insert(t) {
                out.push(Violation::Duplicate { relation: i, tuple: t.clone() });
            }
        }
    }
    out
}

/// A set `[0, n)` with relations `P_1, …, P_r`. Tuples are kept sorted.
#[derive(Clone, Debug)]
pub struct RelationalStructure {
    n: usize,
    signature: Signature,
    relations: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashSet<Vec<usize>>>,
}

impl PartialEq for RelationalStructure {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.signature == other.signature && self.relations == other.relations
    }
}

impl Eq for RelationalStructure {}

impl RelationalStructure {
    pub fn new(n: usize, arities: Vec<usize>, relations: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        Self::from_data(StructureData { n, arities, relations })
    }

    pub fn from_data(data: StructureData) -> Result<Self> {
        let violations = validate_structure(&data);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return invalid(msgs.join("; "));
        }
        let signature = Signature::new(data.arities)?;
        let mut relations = data.relations;
        for rel in &mut relations {
            rel.sort();
        }
        let lookup = relations.iter().map(|rel| rel.iter().cloned().collect()).collect();
        Ok(RelationalStructure { n: data.n, signature, relations, lookup })
    }

    /// Convenience for symmetric irreflexive graphs: stores both orientations.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut seen = HashSet::new();
        for &(a, b) in edges {
            if a == b {
                return invalid(format!("loop at {a}"));
            }
            for t in [vec![a, b], vec![b, a]] {
                if seen.insert(t.clone()) {
                    tuples.push(t);
                }
            }
        }
        Self::new(n, vec![2], vec![tuples])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relation(&self, i: usize) -> Result<&[Vec<usize>]> {
        self.relations
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange { index: i, len: self.relations.len() })
    }

    pub fn relations(&self) -> &[Vec<Vec<usize>>] {
        &self.relations
    }

    pub fn holds(&self, i: usize, t: &[usize]) -> bool {
        self.lookup.get(i).is_some_and(|set| set.contains(t))
    }

    pub fn to_data(&self) -> StructureData {
        StructureData {
            n: self.n,
            arities: self.signature.arities().to_vec(),
            relations: self.relations.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_data())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_data(serde_json::from_str(s)?)
    }

    /// Substructure induced on `subset`, relabelled `subset[i] -> i`.
    pub fn induced(&self, subset: &[usize]) -> Result<Self> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in subset.iter().enumerate() {
            if x >= self.n {
                return Err(Error::IndexOutOfRange { index: x, len: self.n });
            }
            pos[x] = i;
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .filter(|t| t.iter().all(|&x| pos[x] != usize::MAX))
                    .map(|t| t.iter().map(|&x| pos[x]).collect())
                    .collect()
            })
            .collect();
        Self::new(subset.len(), self.signature.arities().to_vec(), relations)
    }

    pub fn is_automorphism(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, got: p.degree() });
        }
        // p is injective on tuples, so into == onto for finite relations.
        Ok(self
            .relations
            .iter()
            .zip(&self.lookup)
            .all(|(rel, set)| rel.iter().all(|t| set.contains(&p.apply_tuple(t)))))
    }

    /// All automorphisms, by backtracking with colour-refinement pruning.
    pub fn automorphism_search(&self, caps: &Caps) -> Result<PermGroup> {
        caps::check("automorphism search degree", self.n as u128, caps.max_search_degree as u128)?;
        let rels: Vec<&[Vec<usize>]> = self.relations.iter().map(Vec::as_slice).collect();
        let found = search::search_permutations(self.n, &rels, &|_, _, _| true, caps.max_monomial_nodes)?;
        caps::check("automorphism group order", found.len() as u128, caps.max_group)?;
        Ok(PermGroup::from_elements(self.n, found))
    }
}
