use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::{self, Caps};
use crate::error::{invalid, Error, Result};

/// A bijection of `[0, n)`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return invalid(format!("{images:?} is not a permutation"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Permutation of `[0, n)` given in cycle notation.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= n || y >= n {
                    return Err(Error::IndexOutOfRange { index: x.max(y), len: n });
                }
                images[x] = y;
            }
        }
        Permutation::new(images)
    }

    /// The rotation `i -> i + shift mod n`.
    pub fn rotation(n: usize, shift: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + shift) % n).collect(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_tuple(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&x| self.images[x]).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.images[x];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A permutation group of degree `n`, given by generators and optionally
/// fully enumerated.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Option<Vec<Permutation>>,
}

impl PermGroup {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, got: g.degree() });
            }
        }
        Ok(PermGroup { n, generators, elements: None })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup {
            n,
            generators: Vec::new(),
            elements: Some(vec![Permutation::identity(n)]),
        }
    }

    /// Cyclic group of rotations of `[0, n)`.
    pub fn rotations(n: usize) -> Self {
        let gens = if n > 1 { vec![Permutation::rotation(n, 1)] } else { Vec::new() };
        PermGroup { n, generators: gens, elements: None }
    }

    /// Full symmetric group on `[0, n)`, by transposition and long cycle.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n > 1 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n > 2 {
            gens.push(Permutation::rotation(n, 1));
        }
        PermGroup { n, generators: gens, elements: None }
    }

    /// Wraps a list that is already known to be a whole group; the list is
    /// sorted and a small generating set is extracted from it.
    pub(crate) fn from_elements(n: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let generators = extract_generators(&elements);
        PermGroup { n, generators, elements: Some(elements) }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn contains(&self, p: &Permutation) -> Option<bool> {
        self.elements.as_ref().map(|els| els.binary_search(p).is_ok())
    }

    /// Breadth-first closure of the generators. Elements come out sorted
    /// lexicographically by image array.
    pub fn closure(&self, caps: &Caps) -> Result<PermGroup> {
        if self.elements.is_some() {
            return Ok(self.clone());
        }
        let elements = close(self.n, &self.generators, caps.max_group)?;
        Ok(PermGroup {
            n: self.n,
            generators: self.generators.clone(),
            elements: Some(elements),
        })
    }

    /// Checks closure under composition and inverse of the cached list.
    pub fn is_closed(&self) -> bool {
        let Some(els) = &self.elements else { return false };
        let set: HashSet<&Permutation> = els.iter().collect();
        set.contains(&Permutation::identity(self.n))
            && els.iter().all(|a| set.contains(&a.inverse()))
            && els
                .iter()
                .all(|a| els.iter().all(|b| set.contains(&a.compose(b))))
    }
}

fn close(n: usize, generators: &[Permutation], cap: u128) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                caps::check("group closure", seen.len() as u128 + 1, cap)?;
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Greedy generating set: walk the sorted element list and keep each element
/// not already in the span of those kept so far.
fn extract_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let Some(first) = elements.first() else { return Vec::new() };
    let n = first.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        // The span only grows, so the old span is a subgroup and the cap is
        // the full list size.
        span = close(n, &gens, u128::MAX).unwrap().into_iter().collect();
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}
