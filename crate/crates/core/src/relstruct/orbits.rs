use serde::Serialize;

use crate::caps::{self, Caps};
use crate::error::{invalid, Result};
use crate::relstruct::PermGroup;

/// Orbits of a permutation group acting diagonally on `X^k`.
///
/// Tuples are addressed by their big-endian base-`n` index, so index order
/// is lexicographic order. Classes are numbered in order of their
/// lexicographically minimal member.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    n: usize,
    k: usize,
    labels: Vec<u32>,
    representatives: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

#[derive(Serialize)]
pub struct OrbitSummary {
    pub n: usize,
    pub k: usize,
    pub orbit_count: usize,
    pub representatives: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
}

pub fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn tuple_at(n: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

/// Union-find over tuple indices, joined along every generator move.
pub fn orbit_partition(g: &PermGroup, k: usize, caps: &Caps) -> Result<OrbitPartition> {
    if k == 0 {
        return invalid("tuple length must be positive");
    }
    let n = g.degree();
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    caps::check("tuple space n^k", total, caps.max_tuples)?;
    let total = total as usize;

    let mut parent: Vec<u32> = (0..total as u32).collect();
    let mut digits = vec![0usize; k];
    for gen in g.generators() {
        digits.iter_mut().for_each(|d| *d = 0);
        for idx in 0..total {
            let img = digits.iter().fold(0, |acc, &x| acc * n + gen.apply(x));
            union(&mut parent, idx, img);
            increment(&mut digits, n);
        }
    }

    let mut labels = vec![u32::MAX; total];
    let mut root_label: Vec<u32> = vec![u32::MAX; total];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for (idx, slot) in labels.iter_mut().enumerate() {
        let root = find(&mut parent, idx) as usize;
        if root_label[root] == u32::MAX {
            root_label[root] = representatives.len() as u32;
            representatives.push(tuple_at(n, k, idx));
            sizes.push(0);
        }
        let label = root_label[root];
        *slot = label;
        sizes[label as usize] += 1;
    }
    Ok(OrbitPartition { n, k, labels, representatives, sizes })
}

fn increment(digits: &mut [usize], n: usize) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return;
        }
        *d = 0;
    }
}

fn find(parent: &mut [u32], mut x: usize) -> u32 {
    while parent[x] as usize != x {
        let p = parent[x] as usize;
        parent[x] = parent[p];
        x = p;
    }
    x as u32
}

fn union(parent: &mut [u32], a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    // Smaller root wins so roots stay class minima; not needed for
    // correctness but keeps the forest shallow on sequential scans.
    if ra < rb {
        parent[rb as usize] = ra;
    } else if rb < ra {
        parent[ra as usize] = rb;
    }
}

impl OrbitPartition {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<usize>] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn class_of(&self, t: &[usize]) -> usize {
        self.labels[tuple_index(self.n, t)] as usize
    }

    pub fn class_of_index(&self, idx: usize) -> usize {
        self.labels[idx] as usize
    }

    pub fn tuple_count(&self) -> usize {
        self.labels.len()
    }

    /// Members of class `j`, in lexicographic order.
    pub fn members(&self, j: usize) -> Vec<Vec<usize>> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l as usize == j)
            .map(|(idx, _)| tuple_at(self.n, self.k, idx))
            .collect()
    }

    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary {
            n: self.n,
            k: self.k,
            orbit_count: self.orbit_count(),
            representatives: self.representatives.clone(),
            sizes: self.sizes.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relstruct::Permutation;

    #[test]
    fn rotation_orbits() {
        let caps = Caps::default();
        let c4 = PermGroup::rotations(4);
        assert_eq!(orbit_partition(&c4, 1, &caps).unwrap().orbit_count(), 1);
        let pairs = orbit_partition(&c4, 2, &caps).unwrap();
        assert_eq!(pairs.orbit_count(), 4);
        assert_eq!(
            pairs.representatives(),
            &[vec![0, 0], vec![0, 1], vec![0, 2], vec![0, 3]]
        );
        assert_eq!(pairs.sizes(), &[4, 4, 4, 4]);
    }

    #[test]
    fn symmetric_group_on_pairs() {
        let s3 = PermGroup::symmetric(3);
        let p = orbit_partition(&s3, 2, &Caps::default()).unwrap();
        assert_eq!(p.orbit_count(), 2);
        assert_eq!(p.class_of(&[1, 1]), p.class_of(&[2, 2]));
        assert_ne!(p.class_of(&[1, 2]), p.class_of(&[2, 2]));
    }

    #[test]
    fn trivial_group_counts_every_tuple() {
        let g = PermGroup::new(3, vec![]).unwrap();
        let p = orbit_partition(&g, 3, &Caps::default()).unwrap();
        assert_eq!(p.orbit_count(), 27);
    }

    #[test]
    fn members_and_index_roundtrip() {
        assert_eq!(tuple_at(5, 3, tuple_index(5, &[4, 0, 3])), vec![4, 0, 3]);
        let g = PermGroup::new(3, vec![Permutation::from_cycles(3, &[&[0, 2]]).unwrap()]).unwrap();
        let p = orbit_partition(&g, 1, &Caps::default()).unwrap();
        assert_eq!(p.members(0), vec![vec![0], vec![2]]);
    }

    #[test]
    fn tuple_cap() {
        let caps = Caps { max_tuples: 100, ..Caps::default() };
        assert!(orbit_partition(&PermGroup::rotations(5), 3, &caps).unwrap_err().is_cap());
        assert!(orbit_partition(&PermGroup::rotations(5), 0, &caps).is_err());
    }
}
