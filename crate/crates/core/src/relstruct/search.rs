//! Backtracking search for the permutations of `[0, n)` that map each of a
//! list of tuple sets onto itself.
//!
//! Shared by the automorphism search on relational structures and the
//! permutation stage of the monomial search on form supports. Candidate
//! images are restricted to vertices of the same refined colour; colours
//! come from iterated refinement of per-relation incidence profiles, which
//! every solution preserves, so the pruning never discards a solution.

use std::collections::{BTreeMap, HashSet};

use crate::caps;
use crate::error::Result;
use crate::relstruct::Permutation;

/// Iterated colour refinement. Vertex `v`'s signature is its colour plus the
/// sorted list of `(relation, position, equality pattern, entry colours)` for
/// every tuple it occurs in. Colours are ranks of signatures, so they are
/// canonical and isomorphism-invariant.
/// Per-vertex occurrence: relation, position, equality pattern, entry colors.
type Occurrence<'t> = (usize, usize, &'t [usize], Vec<usize>);

/// Called as `accept(relation, tuple, image)` once a tuple is fully placed.
pub(crate) type Accept<'a> = dyn Fn(usize, &[usize], &[usize]) -> bool + 'a;

pub(crate) fn refine_colors(n: usize, relations: &[&[Vec<usize>]]) -> Vec<usize> {
    let patterns: Vec<Vec<Vec<usize>>> = relations
        .iter()
        .map(|rel| rel.iter().map(|t| equality_pattern(t)).collect())
        .collect();
    let mut colors = vec![0usize; n];
    let mut classes = 1;
    loop {
        let mut sigs: Vec<Vec<Occurrence>> = vec![Vec::new(); n];
        for (r, rel) in relations.iter().enumerate() {
            for (t, pat) in rel.iter().zip(&patterns[r]) {
                let tc: Vec<usize> = t.iter().map(|&x| colors[x]).collect();
                for (p, &v) in t.iter().enumerate() {
                    sigs[v].push((r, p, pat.as_slice(), tc.clone()));
                }
            }
        }
        for s in &mut sigs {
            s.sort();
        }
        let mut ranked: BTreeMap<(usize, &Vec<_>), usize> = BTreeMap::new();
        for v in 0..n {
            ranked.insert((colors[v], &sigs[v]), 0);
        }
        for (i, slot) in ranked.values_mut().enumerate() {
            *slot = i;
        }
        let next: Vec<usize> = (0..n).map(|v| ranked[&(colors[v], &sigs[v])]).collect();
        let count = ranked.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

fn equality_pattern(t: &[usize]) -> Vec<usize> {
    t.iter()
        .map(|x| t.iter().position(|y| y == x).unwrap())
        .collect()
}

/// Enumerates all permutations `p` with `p(T) ∈ R` for every tuple `T` of
/// every relation `R`, and for which `accept(r, T, p(T))` holds. Since `p`
/// is injective on tuples and each relation is finite, mapping into the
/// relation is the same as mapping onto it.
///
/// Output is sorted lexicographically by image array.
pub(crate) fn search_permutations(
    n: usize,
    relations: &[&[Vec<usize>]],
    accept: &Accept<'_>,
    node_cap: u128,
) -> Result<Vec<Permutation>> {
    let colors = refine_colors(n, relations);
    let members: Vec<HashSet<&[usize]>> = relations
        .iter()
        .map(|rel| rel.iter().map(Vec::as_slice).collect())
        .collect();

    let order = assignment_order(n, relations, &colors);
    let mut step_of = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        step_of[v] = k;
    }
    // Tuples become checkable at the step where their last entry is placed.
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (r, rel) in relations.iter().enumerate() {
        for (i, t) in rel.iter().enumerate() {
            if let Some(last) = t.iter().map(|&x| step_of[x]).max() {
                checks[last].push((r, i));
            }
        }
    }
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let candidates: Vec<Vec<usize>> = (0..n).map(|v| by_color[&colors[v]].clone()).collect();

    let mut ctx = Ctx {
        relations,
        members,
        accept,
        order,
        checks,
        candidates,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        node_cap,
        found: Vec::new(),
        scratch: Vec::new(),
    };
    if n == 0 {
        return Ok(vec![Permutation::identity(0)]);
    }
    ctx.descend(0)?;
    let mut found = ctx.found;
    found.sort();
    Ok(found)
}

fn assignment_order(n: usize, relations: &[&[Vec<usize>]], colors: &[usize]) -> Vec<usize> {
    let mut class_size = vec![0usize; n];
    for &c in colors {
        class_size[c] += 1;
    }
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (r, rel) in relations.iter().enumerate() {
        for (i, t) in rel.iter().enumerate() {
            for &x in t {
                adjacency[x].push((r, i));
            }
        }
    }
    let mut placed = vec![false; n];
    let mut link = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(link[v]), class_size[colors[v]], v))
            .unwrap();
        placed[v] = true;
        order.push(v);
        let mut touched: HashSet<(usize, usize)> = HashSet::new();
        for &(r, i) in &adjacency[v] {
            if touched.insert((r, i)) {
                for &x in &relations[r][i] {
                    if !placed[x] {
                        link[x] += 1;
                    }
                }
            }
        }
    }
    order
}

struct Ctx<'a> {
    relations: &'a [&'a [Vec<usize>]],
    members: Vec<HashSet<&'a [usize]>>,
    accept: &'a Accept<'a>,
    order: Vec<usize>,
    checks: Vec<Vec<(usize, usize)>>,
    candidates: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u128,
    node_cap: u128,
    found: Vec<Permutation>,
    scratch: Vec<usize>,
}

impl Ctx<'_> {
    fn descend(&mut self, step: usize) -> Result<()> {
        let n = self.order.len();
        if step == n {
            self.found.push(Permutation::new(self.image.clone())?);
            return Ok(());
        }
        let v = self.order[step];
        for ci in 0..self.candidates[v].len() {
            let w = self.candidates[v][ci];
            if self.used[w] {
                continue;
            }
            self.nodes += 1;
            caps::check("permutation search nodes", self.nodes, self.node_cap)?;
            self.image[v] = w;
            self.used[w] = true;
            if self.consistent(step) {
                self.descend(step + 1)?;
            }
            self.used[w] = false;
            self.image[v] = usize::MAX;
        }
        Ok(())
    }

    fn consistent(&mut self, step: usize) -> bool {
        for &(r, i) in &self.checks[step] {
            let t = &self.relations[r][i];
            self.scratch.clear();
            self.scratch.extend(t.iter().map(|&x| self.image[x]));
            if !self.members[r].contains(self.scratch.as_slice()) {
                return false;
            }
            if !(self.accept)(r, t, &self.scratch) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_separates_path_ends_from_middle() {
        let edges = vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]];
        let colors = refine_colors(3, &[&edges]);
        assert_eq!(colors[0], colors[2]);
        assert_ne!(colors[0], colors[1]);
    }

    #[test]
    fn empty_relations_give_symmetric_group() {
        let found = search_permutations(4, &[], &|_, _, _| true, u128::MAX).unwrap();
        assert_eq!(found.len(), 24);
    }

    #[test]
    fn node_cap_trips() {
        let err = search_permutations(6, &[], &|_, _, _| true, 10).unwrap_err();
        assert!(err.is_cap());
    }
}
