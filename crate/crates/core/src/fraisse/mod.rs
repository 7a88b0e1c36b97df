//! Finite approximations of homogeneous structures, amalgamation and the
//! one-point extension property.

mod hypergraph;
mod presets;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::relstruct::RelationalStructure;

pub use hypergraph::{hypergraph_glue, random_colored_hypergraph, subsets, ColoredHypergraph};
pub use presets::{
    complete, cycle, dlo_approx, glinfty_approx, k4_minus_edge, line_cycle, path, petersen, rado_approx, SmallField,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Amalgamation {
    /// Disjoint union over the common part.
    Free,
    /// Disjoint union followed by the lexicographically least linear
    /// extension of the union of both orders.
    Order,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClassKind {
    Graphs,
    LinearOrders,
    All,
}

/// A hereditary class with an amalgamation strategy.
#[derive(Clone, Debug)]
pub struct ClassSpec {
    arities: Vec<usize>,
    kind: ClassKind,
}

impl ClassSpec {
    pub fn graphs() -> Self {
        ClassSpec { arities: vec![2], kind: ClassKind::Graphs }
    }

    pub fn linear_orders() -> Self {
        ClassSpec { arities: vec![2], kind: ClassKind::LinearOrders }
    }

    pub fn all(arities: Vec<usize>) -> Self {
        ClassSpec { arities, kind: ClassKind::All }
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn strategy(&self) -> Amalgamation {
        match self.kind {
            ClassKind::LinearOrders => Amalgamation::Order,
            ClassKind::Graphs | ClassKind::All => Amalgamation::Free,
        }
    }

    pub fn contains(&self, s: &RelationalStructure) -> bool {
        if s.signature().arities() != self.arities.as_slice() {
            return false;
        }
        match self.kind {
            ClassKind::All => true,
            ClassKind::Graphs => {
                let e = s.relation(0).expect("arity checked");
                e.iter().all(|t| t[0] != t[1] && s.holds(0, &[t[1], t[0]]))
            }
            ClassKind::LinearOrders => is_strict_linear_order(s),
        }
    }

    pub fn amalgamate(
        &self,
        a: &RelationalStructure,
        b1: &RelationalStructure,
        emb1: &[usize],
        b2: &RelationalStructure,
        emb2: &[usize],
    ) -> Result<RelationalStructure> {
        free_amalgam(a, b1, emb1, b2, emb2, self.strategy())
    }
}

fn is_strict_linear_order(s: &RelationalStructure) -> bool {
    let n = s.n();
    let lt = |i: usize, j: usize| s.holds(0, &[i, j]);
    for i in 0..n {
        if lt(i, i) {
            return false;
        }
        for j in 0..n {
            if i != j && lt(i, j) == lt(j, i) {
                return false;
            }
            for k in 0..n {
                if lt(i, j) && lt(j, k) && !lt(i, k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks that `emb` is an injective map `a → b` that preserves and reflects
/// every relation.
pub fn check_embedding(a: &RelationalStructure, b: &RelationalStructure, emb: &[usize]) -> Result<()> {
    let fail = |msg: String| Err(Error::NotEmbedding(msg));
    if a.signature() != b.signature() {
        return fail("signatures differ".into());
    }
    if emb.len() != a.n() {
        return fail(format!("map has {} entries for {} points", emb.len(), a.n()));
    }
    let mut inv = vec![usize::MAX; b.n()];
    for (x, &y) in emb.iter().enumerate() {
        if y >= b.n() {
            return fail(format!("image {y} out of range"));
        }
        if inv[y] != usize::MAX {
            return fail(format!("not injective at {y}"));
        }
        inv[y] = x;
    }
    for (r, rel) in a.relations().iter().enumerate() {
        for t in rel {
            let img: Vec<usize> = t.iter().map(|&x| emb[x]).collect();
            if !b.holds(r, &img) {
                return fail(format!("tuple {t:?} of relation {r} not preserved"));
            }
        }
    }
    for (r, rel) in b.relations().iter().enumerate() {
        for t in rel {
            if t.iter().all(|&y| inv[y] != usize::MAX) {
                let pre: Vec<usize> = t.iter().map(|&y| inv[y]).collect();
                if !a.holds(r, &pre) {
                    return fail(format!("tuple {t:?} of relation {r} not reflected"));
                }
            }
        }
    }
    Ok(())
}

/// Amalgam of `b1 ← a → b2`. `b1` keeps its indices; points of `b2` outside
/// the image of `a` follow in increasing order.
pub fn free_amalgam(
    a: &RelationalStructure,
    b1: &RelationalStructure,
    emb1: &[usize],
    b2: &RelationalStructure,
    emb2: &[usize],
    strategy: Amalgamation,
) -> Result<RelationalStructure> {
    check_embedding(a, b1, emb1)?;
    check_embedding(a, b2, emb2)?;
    let n1 = b1.n();
    let mut map2 = vec![usize::MAX; b2.n()];
    for (x, &y) in emb2.iter().enumerate() {
        map2[y] = emb1[x];
    }
    let mut next = n1;
    for slot in map2.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let n = next;
    let mut rels: Vec<BTreeSet<Vec<usize>>> = b1.relations().iter().map(|r| r.iter().cloned().collect()).collect();
    for (r, rel) in b2.relations().iter().enumerate() {
        rels[r].extend(rel.iter().map(|t| t.iter().map(|&y| map2[y]).collect::<Vec<_>>()));
    }
    let arities = b1.signature().arities().to_vec();
    match strategy {
        Amalgamation::Free => RelationalStructure::new(n, arities, rels.into_iter().map(|r| r.into_iter().collect()).collect()),
        Amalgamation::Order => {
            if arities != [2] {
                return Err(Error::Invalid("order amalgamation needs a single binary relation".into()));
            }
            let order = least_linear_extension(n, &rels[0])?;
            let mut pos = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let mut lt = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if pos[i] < pos[j] {
                        lt.push(vec![i, j]);
                    }
                }
            }
            RelationalStructure::new(n, arities, vec![lt])
        }
    }
}

/// Kahn's algorithm taking the smallest available vertex first.
fn least_linear_extension(n: usize, pairs: &BTreeSet<Vec<usize>>) -> Result<Vec<usize>> {
    let mut out_edges = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for t in pairs {
        out_edges[t[0]].push(t[1]);
        indeg[t[1]] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &out_edges[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    if order.len() != n {
        return Err(Error::Invalid("orders are inconsistent; union has a cycle".into()));
    }
    Ok(order)
}

/// A one-point extension type over a base set that no point realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionViolation {
    /// Base points, increasing.
    pub base: Vec<usize>,
    /// Per relation, the tuples involving the new point; local indices,
    /// with base point `base[i]` as `i` and the new point as `base.len()`.
    pub extension: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionOutcome {
    Pass,
    Violation(ExtensionViolation),
}

impl ExtensionOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ExtensionOutcome::Pass)
    }
}

/// For every base of at most `level` points and every one-point extension of
/// it inside the class, looks for a point of `s` realizing it. Bases are
/// visited by size, then lexicographically; extension types by the bitmask
/// of their new tuples.
pub fn extension_property_check(
    s: &RelationalStructure,
    class: &ClassSpec,
    level: usize,
    caps: &Caps,
) -> Result<ExtensionOutcome> {
    if s.signature().arities() != class.arities() {
        return Err(Error::Invalid("structure signature differs from the class signature".into()));
    }
    let n = s.n();
    for size in 0..=level.min(n) {
        let fresh = fresh_tuples(size, class.arities());
        let bits: usize = fresh.iter().map(Vec::len).sum();
        if bits >= 64 {
            return Err(Error::CapExceeded { what: "extension types", needed: u128::MAX, cap: caps.max_tuples });
        }
        let bases = subsets(n, size);
        caps::check(
            "extension checks",
            (bases.len() as u128).saturating_mul(1u128 << bits),
            caps.max_tuples,
        )?;
        for base in &bases {
            let local = s.induced(base)?;
            for mask in 0u64..(1u64 << bits) {
                let ext = decode(&fresh, mask);
                let mut rels = local.relations().to_vec();
                for (r, tuples) in ext.iter().enumerate() {
                    rels[r].extend(tuples.iter().cloned());
                }
                let candidate = RelationalStructure::new(size + 1, class.arities().to_vec(), rels)?;
                if !class.contains(&candidate) {
                    continue;
                }
                let realized = (0..n)
                    .filter(|v| !base.contains(v))
                    .any(|v| realizes(s, base, v, &fresh, &ext));
                if !realized {
                    return Ok(ExtensionOutcome::Violation(ExtensionViolation { base: base.clone(), extension: ext }));
                }
            }
        }
    }
    Ok(ExtensionOutcome::Pass)
}

/// Tuples over `{0..=size}` that mention the new point `size`, per relation.
fn fresh_tuples(size: usize, arities: &[usize]) -> Vec<Vec<Vec<usize>>> {
    arities
        .iter()
        .map(|&d| {
            let total = (size + 1).pow(d as u32);
            (0..total)
                .map(|mut idx| {
                    let mut t = vec![0; d];
                    for slot in t.iter_mut().rev() {
                        *slot = idx % (size + 1);
                        idx /= size + 1;
                    }
                    t
                })
                .filter(|t| t.contains(&size))
                .collect()
        })
        .collect()
}

fn decode(fresh: &[Vec<Vec<usize>>], mask: u64) -> Vec<Vec<Vec<usize>>> {
    let mut bit = 0;
    fresh
        .iter()
        .map(|rel| {
            rel.iter()
                .filter(|_| {
                    let on = (mask >> bit) & 1 == 1;
                    bit += 1;
                    on
                })
                .cloned()
                .collect()
        })
        .collect()
}

fn realizes(s: &RelationalStructure, base: &[usize], v: usize, fresh: &[Vec<Vec<usize>>], ext: &[Vec<Vec<usize>>]) -> bool {
    let size = base.len();
    let global = |t: &[usize]| -> Vec<usize> { t.iter().map(|&x| if x == size { v } else { base[x] }).collect() };
    fresh.iter().enumerate().all(|(r, rel)| {
        rel.iter().all(|t| s.holds(r, &global(t)) == ext[r].binary_search(t).is_ok())
    })
}
