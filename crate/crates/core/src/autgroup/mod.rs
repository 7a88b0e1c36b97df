//! Monomial automorphism groups of systems of forms.
//!
//! Every map here sends each basis vector to a root-of-unity multiple of a
//! basis vector. Once a diagonal form `g_k` is in the system, every linear
//! automorphism has this shape (a vector `v` is a multiple of a basis vector
//! exactly when `∂_v g_k` is a power of a linear form), so restricting the
//! search to monomial maps loses nothing.

mod search;
mod verify;
pub mod zmod;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

pub use search::monomial_automorphism_search;
pub use verify::{
    construction_forms, rigidity_certificate, verify_construction, verify_diagonal, verify_wreath_containment,
    ConstructionMode, RigidityReport, RigiditySample, VerifyReport,
};

use crate::error::{invalid, Error, Result};
use crate::forms::{CyclotomicScalar, Vector};
use crate::relstruct::Permutation;

/// `e_i ↦ ζ_m^{exps[i]} · e_{perm[i]}`.
///
/// Ordered by `(perm, exps)`, which is the canonical listing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialMap {
    perm: Permutation,
    exps: Vec<u32>,
    m: u32,
}

impl MonomialMap {
    pub fn new(perm: Permutation, m: u32, exps: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return invalid("root order must be positive");
        }
        if exps.len() != perm.degree() {
            return Err(Error::DegreeMismatch { expected: perm.degree(), got: exps.len() });
        }
        let exps = exps.into_iter().map(|e| e % m).collect();
        Ok(MonomialMap { perm, exps, m })
    }

    pub fn permutation(perm: Permutation, m: u32) -> Self {
        let n = perm.degree();
        MonomialMap { perm, exps: vec![0; n], m }
    }

    pub fn identity(n: usize, m: u32) -> Self {
        Self::permutation(Permutation::identity(n), m)
    }

    /// Diagonal map multiplying `e_i` by `ζ_m^k` and fixing the rest.
    pub fn twist(n: usize, m: u32, i: usize, k: u32) -> Self {
        let mut exps = vec![0; n];
        exps[i] = k % m;
        MonomialMap { perm: Permutation::identity(n), exps, m }
    }

    pub fn dim(&self) -> usize {
        self.perm.degree()
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_pure_permutation(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Same map written over `μ_l`, `l` a multiple of `m`.
    pub fn lift(&self, l: u32) -> MonomialMap {
        assert!(l.is_multiple_of(self.m));
        let k = l / self.m;
        MonomialMap {
            perm: self.perm.clone(),
            exps: self.exps.iter().map(|&e| e * k).collect(),
            m: l,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonomialMap) -> MonomialMap {
        let l = num_integer::lcm(self.m, other.m);
        let (g, h) = (self.lift(l), other.lift(l));
        let exps = (0..g.dim())
            .map(|i| (h.exps[i] + g.exps[h.perm.apply(i)]) % l)
            .collect();
        MonomialMap { perm: g.perm.compose(&h.perm), exps, m: l }
    }

    pub fn inverse(&self) -> MonomialMap {
        let inv = self.perm.inverse();
        let exps = (0..self.dim())
            .map(|j| (self.m - self.exps[inv.apply(j)]) % self.m)
            .collect();
        MonomialMap { perm: inv, exps, m: self.m }
    }

    /// Image of a vector; the result lives in `Q(ζ_lcm)`.
    pub fn apply(&self, v: &Vector) -> Vector {
        let l = num_integer::lcm(self.m, v.order());
        let mut out = Vector::zero(v.dim(), l);
        for i in 0..v.dim() {
            let c = v.get(i);
            if !c.is_zero() {
                let root = CyclotomicScalar::root_of_unity(self.m, self.exps[i] as i64);
                out = out.with(self.perm.apply(i), &c * &root);
            }
        }
        out
    }
}

/// An enumerated group of monomial maps over `μ_m`, sorted by `(perm, exps)`.
#[derive(Clone, Debug)]
pub struct MonomialGroup {
    n: usize,
    m: u32,
    elements: Vec<MonomialMap>,
}

impl MonomialGroup {
    pub(crate) fn from_sorted(n: usize, m: u32, elements: Vec<MonomialMap>) -> Self {
        MonomialGroup { n, m, elements }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MonomialMap] {
        &self.elements
    }

    pub fn contains(&self, g: &MonomialMap) -> bool {
        let g = if g.m == self.m {
            g.clone()
        } else if self.m.is_multiple_of(g.m) {
            g.lift(self.m)
        } else {
            return false;
        };
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        let set: HashSet<&MonomialMap> = self.elements.iter().collect();
        set.contains(&MonomialMap::identity(self.n, self.m))
            && self.elements.iter().all(|a| set.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
    }

    /// Greedy generating set, taken in canonical order.
    pub fn generators(&self) -> Vec<MonomialMap> {
        let mut gens: Vec<MonomialMap> = Vec::new();
        let mut span: HashSet<MonomialMap> = HashSet::from([MonomialMap::identity(self.n, self.m)]);
        for e in &self.elements {
            if span.len() == self.elements.len() {
                break;
            }
            if span.contains(e) {
                continue;
            }
            gens.push(e.clone());
            span = closure(self.n, self.m, &gens);
        }
        gens
    }
}

fn closure(n: usize, m: u32, gens: &[MonomialMap]) -> HashSet<MonomialMap> {
    let id = MonomialMap::identity(n, m);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}
