use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::forms::CyclotomicScalar;
use crate::relstruct::{orbit_partition, tuple_at, OrbitPartition, PermGroup};

/// The character of `μ_m^X` on `e_x` for a tuple `x`: the diagonal element
/// `(ζ^{a_y})_y` acts by `ζ^{Σ_y mult_x(y)·a_y}`, so the character is the
/// multiplicity vector of `x` reduced mod `m`. Zero entries are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleCharacter {
    m: u32,
    mults: BTreeMap<usize, u32>,
}

impl TupleCharacter {
    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn mults(&self) -> &BTreeMap<usize, u32> {
        &self.mults
    }

    pub fn is_trivial(&self) -> bool {
        self.mults.is_empty()
    }

    /// Exponent of `ζ_m` by which the diagonal map with exponents `exps` acts.
    pub fn exponent(&self, exps: &[u32]) -> u32 {
        let s: u64 = self.mults.iter().map(|(&y, &k)| k as u64 * exps[y] as u64).sum();
        (s % self.m as u64) as u32
    }
}

pub fn tuple_character(t: &[usize], m: u32) -> TupleCharacter {
    let mut mults: BTreeMap<usize, u32> = BTreeMap::new();
    for &x in t {
        *mults.entry(x).or_default() += 1;
    }
    mults.retain(|_, k| {
        *k %= m;
        *k != 0
    });
    TupleCharacter { m, mults }
}

/// `V^{⊗k}` split into the spans `W_j` of basis tuples in one orbit.
#[derive(Clone, Debug)]
pub struct SummandDecomposition {
    pub k: usize,
    pub m: u32,
    pub partition: OrbitPartition,
    /// `dim W_j`, the orbit sizes.
    pub dimensions: Vec<usize>,
    /// Multiset of tuple characters occurring in each `W_j`.
    pub characters: Vec<BTreeMap<TupleCharacter, usize>>,
    /// Pairs of tuples lying in different orbits yet sharing a character.
    pub cross_orbit_collisions: u128,
    /// Pairs of distinct tuples sharing a character, in any orbits.
    pub tuple_collisions: u128,
}

impl SummandDecomposition {
    pub fn summand_count(&self) -> usize {
        self.dimensions.len()
    }

    /// True when no two tuples in different summands carry the same
    /// character.
    pub fn characters_separate_summands(&self) -> bool {
        self.cross_orbit_collisions == 0
    }
}

pub fn summand_decomposition(g: &PermGroup, k: usize, m: u32, caps: &Caps) -> Result<SummandDecomposition> {
    let partition = orbit_partition(g, k, caps)?;
    let n = g.degree();
    let count = partition.orbit_count();
    let mut characters: Vec<BTreeMap<TupleCharacter, usize>> = vec![BTreeMap::new(); count];
    let mut by_char: HashMap<TupleCharacter, HashMap<usize, u128>> = HashMap::new();
    for idx in 0..partition.tuple_count() {
        let t = tuple_at(n, k, idx);
        let chi = tuple_character(&t, m);
        let j = partition.class_of_index(idx);
        *characters[j].entry(chi.clone()).or_default() += 1;
        *by_char.entry(chi).or_default().entry(j).or_default() += 1;
    }
    let mut cross = 0u128;
    let mut any = 0u128;
    for per_orbit in by_char.values() {
        let total: u128 = per_orbit.values().sum();
        let same: u128 = per_orbit.values().map(|c| c * c).sum();
        cross += (total * total - same) / 2;
        any += total * (total - 1) / 2;
    }
    Ok(SummandDecomposition {
        k,
        m,
        dimensions: partition.sizes().to_vec(),
        partition,
        characters,
        cross_orbit_collisions: cross,
        tuple_collisions: any,
    })
}

/// `⟨χ, χ⟩ = |G|⁻¹ Σ_{w ∈ G} |χ(w)|²` for `G = μ_m ≀ g` acting on the span of
/// `orbit`. For `w = (π, a)` the trace is the sum of `ζ^{α_x(a)}` over tuples
/// `x` of the orbit fixed by `π`. Sums are accumulated as exact counts per
/// power of `ζ_m` and converted to a cyclotomic number at the end; a value
/// of 1 certifies irreducibility.
pub fn irreducibility_check(
    g: &PermGroup,
    orbit: &[Vec<usize>],
    m: u32,
    caps: &Caps,
) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::Invalid("root order must be positive".into()));
    }
    let n = g.degree();
    let group = g.closure(caps)?;
    let perms = group.elements().expect("closure enumerates");
    let diag = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    caps::check("character sum terms m^n·|G|", diag.saturating_mul(perms.len() as u128), caps.max_character_terms)?;
    for t in orbit {
        if let Some(&x) = t.iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange { index: x, len: n });
        }
    }

    let chars: Vec<TupleCharacter> = orbit.iter().map(|t| tuple_character(t, m)).collect();
    let mu = m as usize;
    let mut norm_counts = vec![0u128; mu];
    let mut exps = vec![0u32; n];
    let mut trace = vec![0u128; mu];
    for p in perms {
        let fixed: Vec<&TupleCharacter> = orbit
            .iter()
            .zip(&chars)
            .filter(|(t, _)| t.iter().all(|&x| p.apply(x) == x))
            .map(|(_, c)| c)
            .collect();
        if fixed.is_empty() {
            continue;
        }
        exps.iter_mut().for_each(|e| *e = 0);
        for _ in 0..diag {
            trace.iter_mut().for_each(|c| *c = 0);
            for chi in &fixed {
                trace[chi.exponent(&exps) as usize] += 1;
            }
            // |Σ c_a ζ^a|² = Σ_{a,b} c_a c_b ζ^{a-b}
            for a in 0..mu {
                if trace[a] == 0 {
                    continue;
                }
                for b in 0..mu {
                    norm_counts[(a + mu - b) % mu] += trace[a] * trace[b];
                }
            }
            odometer(&mut exps, m);
        }
    }
    let counts: Vec<BigInt> = norm_counts.into_iter().map(BigInt::from).collect();
    let total = CyclotomicScalar::from_power_counts(m, &counts)
        .as_rational()
        .ok_or(Error::NonRational)?;
    let order = BigInt::from(diag) * BigInt::from(perms.len());
    if total.is_zero() {
        return Ok(total);
    }
    Ok(total / BigRational::from_integer(order))
}

fn odometer(digits: &mut [u32], base: u32) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return;
        }
        *d = 0;
    }
}
