//! Finite structures used as truncations of homogeneous limits, plus the
//! small graph corpus.

use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::relstruct::RelationalStructure;

/// Strict linear order `<` on `{0..n}`.
pub fn dlo_approx(n: usize) -> RelationalStructure {
    let mut lt = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            lt.push(vec![i, j]);
        }
    }
    RelationalStructure::new(n, vec![2], vec![lt]).expect("chain is well formed")
}

/// Induced subgraph of the BIT graph on `{0..n}`: `i < j` adjacent iff bit `i`
/// of `j` is set.
pub fn rado_approx(n: usize) -> RelationalStructure {
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j.min(usize::BITS as usize) {
            if (j >> i) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    RelationalStructure::graph(n, &edges).expect("BIT graph is loopless")
}

/// Addition and multiplication tables for `F_q`, `q ∈ {2, 3, 4, 5}`.
/// `F_4 = F_2[x]/(x²+x+1)` with `a + bx` encoded as `a + 2b`.
#[derive(Clone, Debug)]
pub struct SmallField {
    q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    primitive: usize,
}

impl SmallField {
    pub fn new(q: usize) -> Result<Self> {
        let (add, mul, primitive): (Vec<Vec<usize>>, Vec<Vec<usize>>, usize) = match q {
            2 | 3 | 5 => (
                (0..q).map(|a| (0..q).map(|b| (a + b) % q).collect()).collect(),
                (0..q).map(|a| (0..q).map(|b| (a * b) % q).collect()).collect(),
                if q == 2 { 1 } else { 2 },
            ),
            4 => {
                let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
                let mul = (0..4).map(|a| (0..4).map(|b| gf4_mul(a, b)).collect()).collect();
                (add, mul, 2)
            }
            _ => return Err(Error::Invalid(format!("unsupported field size {q}; expected 2, 3, 4 or 5"))),
        };
        Ok(SmallField { q, add, mul, primitive })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(&self) -> usize {
        self.primitive
    }
}

fn gf4_mul(a: usize, b: usize) -> usize {
    // carry-less product reduced by x² = x + 1
    let mut p = 0;
    for i in 0..2 {
        if (b >> i) & 1 == 1 {
            p ^= a << i;
        }
    }
    if p & 4 != 0 {
        p ^= 0b111;
    }
    p
}

/// `F_q^dim` as a structure with `P1 = {(y+z, y, z)}` and `P2 = {(a·y, y)}`
/// for the primitive root `a`. Vector `(c_0, …, c_{dim-1})` has index
/// `Σ c_i q^i`; the zero vector is included.
pub fn glinfty_approx(q: usize, dim: usize, caps: &Caps) -> Result<RelationalStructure> {
    let field = SmallField::new(q)?;
    let size = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    caps::check("vector-space P1 tuples", size.saturating_mul(size), caps.max_tuples)?;
    let n = size as usize;
    let digits = |mut v: usize| -> Vec<usize> {
        (0..dim)
            .map(|_| {
                let d = v % q;
                v /= q;
                d
            })
            .collect()
    };
    let index = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * q + d);
    let vecs: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut sum = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            let x: Vec<usize> = vecs[y].iter().zip(&vecs[z]).map(|(&a, &b)| field.add(a, b)).collect();
            sum.push(vec![index(&x), y, z]);
        }
    }
    let a = field.primitive_root();
    let scaled = (0..n)
        .map(|y| {
            let x: Vec<usize> = vecs[y].iter().map(|&c| field.mul(a, c)).collect();
            vec![index(&x), y]
        })
        .collect();
    RelationalStructure::new(n, vec![3, 2], vec![sum, scaled])
}

/// Wrap-around truncation of the integer line: `i ~ i+1 mod n`.
pub fn line_cycle(n: usize) -> Result<RelationalStructure> {
    cycle(n)
}

pub fn path(n: usize) -> RelationalStructure {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    RelationalStructure::graph(n, &edges).expect("path is loopless")
}

pub fn cycle(n: usize) -> Result<RelationalStructure> {
    if n < 3 {
        return Err(Error::Invalid(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    RelationalStructure::graph(n, &edges)
}

pub fn complete(n: usize) -> RelationalStructure {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    RelationalStructure::graph(n, &edges).expect("complete graph is loopless")
}

/// Outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram.
pub fn petersen() -> RelationalStructure {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    RelationalStructure::graph(10, &edges).expect("Petersen graph is loopless")
}

/// `K4` with the edge `{2, 3}` removed.
pub fn k4_minus_edge() -> RelationalStructure {
    RelationalStructure::graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("loopless")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aut_order(s: &RelationalStructure) -> usize {
        s.automorphism_search(&Caps::default()).unwrap().order().unwrap()
    }

    #[test]
    fn corpus_automorphism_orders() {
        assert_eq!(aut_order(&path(3)), 2);
        assert_eq!(aut_order(&cycle(4).unwrap()), 8);
        assert_eq!(aut_order(&complete(4)), 24);
        assert_eq!(aut_order(&petersen()), 120);
        assert_eq!(aut_order(&k4_minus_edge()), 4);
        assert_eq!(aut_order(&dlo_approx(3)), 1);
        assert_eq!(aut_order(&line_cycle(5).unwrap()), 10);
        assert_eq!(line_cycle(3).unwrap(), complete(3));
        assert!(line_cycle(2).is_err());
    }

    #[test]
    fn bit_graph_edges() {
        let r = rado_approx(4);
        // 1 ~ 0, 2 ~ 1, 3 ~ 0, 3 ~ 1
        assert_eq!(r.relation(0).unwrap().len(), 8);
        assert!(r.holds(0, &[0, 3]) && r.holds(0, &[1, 3]) && !r.holds(0, &[0, 2]));
    }

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5] {
            let f = SmallField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert!((0..q).any(|b| f.add(a, b) == 0));
                if a != 0 {
                    assert!((0..q).any(|b| f.mul(a, b) == 1));
                }
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            // the powers of the primitive root exhaust F_q^×
            let mut seen = std::collections::BTreeSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, f.primitive_root());
            }
            assert_eq!(seen.len(), q - 1);
        }
        assert!(SmallField::new(6).is_err());
    }

    #[test]
    fn vector_space_relations() {
        let caps = Caps::default();
        let v = glinfty_approx(3, 2, &caps).unwrap();
        assert_eq!(v.n(), 9);
        assert_eq!(v.relation(0).unwrap().len(), 81);
        assert_eq!(v.relation(1).unwrap().len(), 9);
        // (1,0) + (0,1) = (1,1): indices 1 + 3 = 4
        assert!(v.holds(0, &[4, 1, 3]));
        // 2·(1,0) = (2,0)
        assert!(v.holds(1, &[2, 1]));
        let v4 = glinfty_approx(4, 1, &caps).unwrap();
        // x·x = x + 1 in F_4
        assert!(v4.holds(1, &[3, 2]));
        let tiny = Caps { max_tuples: 10, ..Caps::default() };
        assert!(glinfty_approx(3, 2, &tiny).unwrap_err().is_cap());
    }
}
