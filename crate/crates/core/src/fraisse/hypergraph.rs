use std::collections::BTreeSet;

use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::relstruct::RelationalStructure;

/// `t` edge colors on `n` vertices; each color holds a set of sorted
/// `m`-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredHypergraph {
    n: usize,
    m: usize,
    edges: Vec<BTreeSet<Vec<usize>>>,
}

impl ColoredHypergraph {
    pub fn new(n: usize, m: usize, edges: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("edge size must be positive".into()));
        }
        let mut out = Vec::with_capacity(edges.len());
        for color in edges {
            let mut set = BTreeSet::new();
            for mut e in color {
                e.sort_unstable();
                if e.len() != m {
                    return Err(Error::DegreeMismatch { expected: m, got: e.len() });
                }
                if e.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Invalid(format!("edge {e:?} repeats a vertex")));
                }
                if let Some(&x) = e.iter().find(|&&x| x >= n) {
                    return Err(Error::IndexOutOfRange { index: x, len: n });
                }
                set.insert(e);
            }
            out.push(set);
        }
        Ok(ColoredHypergraph { n, m, edges: out })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_size(&self) -> usize {
        self.m
    }

    pub fn edges(&self, color: usize) -> &BTreeSet<Vec<usize>> {
        &self.edges[color]
    }
}

/// Vertices keep indices `0..n`, color `a` becomes element `n + a`.
/// `P1` holds `(v_{σ1}, …, v_{σm}, n + a)` for every edge of color `a` and
/// every ordering `σ`; `P2` marks the color elements.
pub fn hypergraph_glue(h: &ColoredHypergraph) -> RelationalStructure {
    let (n, m) = (h.n, h.m);
    let mut p1 = Vec::new();
    for (a, color) in h.edges.iter().enumerate() {
        for e in color {
            for_each_permutation(e, |order| {
                let mut t = order.to_vec();
                t.push(n + a);
                p1.push(t);
            });
        }
    }
    let p2 = (0..h.colors()).map(|a| vec![n + a]).collect();
    RelationalStructure::new(n + h.colors(), vec![m + 1, 1], vec![p1, p2]).expect("glued structure is well formed")
}

fn for_each_permutation(items: &[usize], mut f: impl FnMut(&[usize])) {
    // Heap's algorithm
    let mut a = items.to_vec();
    let k = a.len();
    let mut c = vec![0usize; k];
    f(&a);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Sorted `m`-subsets of `{0..n}` in lexicographic order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < m - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE5_E4B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Bernoulli(`p`) edges, decided per (color, subset) by hashing
/// `(seed, color, subset rank)`. The first `t` colors of a larger draw with
/// the same seed coincide with a draw of `t` colors.
pub fn random_colored_hypergraph(
    n: usize,
    t: usize,
    m: usize,
    p: f64,
    seed: u64,
    caps: &Caps,
) -> Result<ColoredHypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!("edge probability {p} outside [0, 1]")));
    }
    if m == 0 {
        return Err(Error::Invalid("edge size must be positive".into()));
    }
    let all = subsets(n, m);
    caps::check("hypergraph candidate edges", (all.len() as u128).saturating_mul(t as u128), caps.max_tuples)?;
    let edges = (0..t)
        .map(|a| {
            all.iter()
                .enumerate()
                .filter(|(s, _)| {
                    let h = splitmix64(seed ^ splitmix64(((a as u64) << 40) ^ *s as u64));
                    ((h >> 11) as f64 / (1u64 << 53) as f64) < p
                })
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect();
    Ok(ColoredHypergraph { n, m, edges })
}
