//! Sparse multilinear forms on the free vector space with basis `[0, n)`,
//! exact cyclotomic evaluation, and the three form constructions: diagonal
//! forms, relation forms and block blow-ups of relation forms.

mod cyclotomic;
mod poly;

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::{cyclotomic_polynomial, totient, CyclotomicScalar};
pub use poly::{Homogeneity, Polynomial, PowerVerdict};

use crate::autgroup::MonomialMap;
use crate::error::{invalid, Error, Result};
use crate::relstruct::RelationalStructure;

/// A `d`-linear form given by its values on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseForm {
    n: usize,
    d: usize,
    terms: BTreeMap<Vec<usize>, CyclotomicScalar>,
}

impl SparseForm {
    pub fn from_terms(
        n: usize,
        d: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, CyclotomicScalar)>,
    ) -> Result<Self> {
        let mut f = SparseForm { n, d, terms: BTreeMap::new() };
        for (t, c) in terms {
            if t.len() != d {
                return invalid(format!("tuple {t:?} has length {} for arity {d}", t.len()));
            }
            if let Some(&x) = t.iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { index: x, len: n });
            }
            f.add(t, &c);
        }
        Ok(f)
    }

    fn add(&mut self, t: Vec<usize>, c: &CyclotomicScalar) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&t) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !merged.is_zero() {
            self.terms.insert(t, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, CyclotomicScalar> {
        &self.terms
    }

    pub fn coefficient(&self, t: &[usize]) -> CyclotomicScalar {
        self.terms.get(t).cloned().unwrap_or_else(CyclotomicScalar::zero)
    }

    pub fn support(&self) -> Vec<Vec<usize>> {
        self.terms.keys().cloned().collect()
    }

    /// Value on basis vectors `e_{t_1}, …, e_{t_d}`.
    pub fn on_basis(&self, t: &[usize]) -> CyclotomicScalar {
        self.coefficient(t)
    }

    /// Multilinear evaluation: `Σ_t c_t Π_j args[j][t_j]`.
    pub fn evaluate(&self, args: &[Vector]) -> Result<CyclotomicScalar> {
        if args.len() != self.d {
            return Err(Error::DegreeMismatch { expected: self.d, got: args.len() });
        }
        let m = args.first().map_or(1, |v| v.m);
        for v in args {
            if v.n != self.n {
                return Err(Error::DegreeMismatch { expected: self.n, got: v.n });
            }
            if v.m != m {
                return Err(Error::RootOrderMismatch(m, v.m));
            }
        }
        let mut total = CyclotomicScalar::zero();
        'terms: for (t, c) in &self.terms {
            let mut prod = c.clone();
            for (v, &x) in args.iter().zip(t) {
                match v.entries.get(&x) {
                    Some(a) => prod = &prod * a,
                    None => continue 'terms,
                }
            }
            total = &total + &prod;
        }
        Ok(total)
    }

    /// `(v_1, …, v_d) ↦ f(g v_1, …, g v_d)` as a sparse form.
    ///
    /// With `g e_i = ζ^{a_i} e_{π(i)}`, the pulled-back coefficient at `t` is
    /// `ζ^{Σ a_{t_j}} c(π t)`; iterating stored terms `s = π t` covers the
    /// whole support.
    pub fn pullback(&self, g: &MonomialMap) -> Result<SparseForm> {
        if g.dim() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, got: g.dim() });
        }
        let inv = g.perm().inverse();
        let m = g.order();
        let roots: Vec<CyclotomicScalar> =
            (0..m).map(|k| CyclotomicScalar::root_of_unity(m, k as i64)).collect();
        let mut out = SparseForm { n: self.n, d: self.d, terms: BTreeMap::new() };
        for (s, c) in &self.terms {
            let t = inv.apply_tuple(s);
            let twist: u64 = t.iter().map(|&x| g.exps()[x] as u64).sum();
            let coef = c * &roots[(twist % m as u64) as usize];
            out.add(t, &coef);
        }
        Ok(out)
    }

    pub fn preserved_by(&self, g: &MonomialMap) -> Result<bool> {
        Ok(self.pullback(g)? == *self)
    }

    /// Restriction to the diagonal `f(x, …, x)`, a degree-`d` polynomial.
    pub fn as_polynomial(&self) -> Result<Polynomial> {
        let mut p = Polynomial::zero(self.n);
        for (t, c) in &self.terms {
            let c = c.as_rational().ok_or(Error::NonRational)?;
            let mut e = vec![0u32; self.n];
            for &x in t {
                e[x] += 1;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Average over all argument permutations. The symmetrised value on an
    /// arrangement of a multiset is the multiset's total weight divided by
    /// its number of distinct arrangements.
    pub fn symmetrize(&self) -> SparseForm {
        let mut groups: BTreeMap<Vec<usize>, CyclotomicScalar> = BTreeMap::new();
        for (t, c) in &self.terms {
            let mut key = t.clone();
            key.sort_unstable();
            let slot = groups.entry(key).or_insert_with(CyclotomicScalar::zero);
            *slot = &*slot + c;
        }
        let mut out = SparseForm { n: self.n, d: self.d, terms: BTreeMap::new() };
        for (key, total) in groups {
            if total.is_zero() {
                continue;
            }
            let arrangements = distinct_arrangements(&key);
            let share = total.scale(&BigRational::new(BigInt::one(), BigInt::from(arrangements.len())));
            for t in arrangements {
                out.terms.insert(t, share.clone());
            }
        }
        out
    }

    /// True iff the coefficient is constant on every multiset of indices and
    /// every arrangement is present.
    pub fn is_symmetric(&self) -> bool {
        let mut groups: BTreeMap<Vec<usize>, (usize, &CyclotomicScalar)> = BTreeMap::new();
        for (t, c) in &self.terms {
            let mut key = t.clone();
            key.sort_unstable();
            match groups.get_mut(&key) {
                Some((count, first)) => {
                    if *first != c {
                        return false;
                    }
                    *count += 1;
                }
                None => {
                    groups.insert(key, (1, c));
                }
            }
        }
        groups
            .iter()
            .all(|(key, (count, _))| *count as u128 == arrangement_count(key))
    }

    pub fn to_data(&self) -> Result<FormData> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                let r = c.as_rational().ok_or(Error::NonRational)?;
                Ok(TermData { idx: t.clone(), coef: r.to_string() })
            })
            .collect::<Result<_>>()?;
        Ok(FormData { n: self.n, d: self.d, terms })
    }

    pub fn from_data(data: &FormData) -> Result<Self> {
        let terms = data
            .terms
            .iter()
            .map(|t| {
                let c = BigRational::from_str(&t.coef)
                    .map_err(|_| Error::Parse(format!("coefficient `{}`", t.coef)))?;
                if c.is_zero() {
                    return invalid(format!("zero coefficient stored at {:?}", t.idx));
                }
                Ok((t.idx.clone(), CyclotomicScalar::from_rational(c)))
            })
            .collect::<Result<Vec<_>>>()?;
        if terms.len() != terms.iter().map(|(t, _)| t).collect::<std::collections::HashSet<_>>().len() {
            return invalid("duplicate tuple in form terms");
        }
        SparseForm::from_terms(data.n, data.d, terms)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_data()?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_data(&serde_json::from_str(s)?)
    }
}

fn arrangement_count(sorted: &[usize]) -> u128 {
    let mut total: u128 = (1..=sorted.len() as u128).product();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
        total /= (1..=j as u128).product::<u128>();
        i += j;
    }
    total
}

/// All distinct orderings of a sorted multiset, in lexicographic order.
fn distinct_arrangements(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Wire form `{"n", "d", "terms": [{"idx", "coef"}]}`; coefficients are
/// exact rationals written `p` or `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormData {
    pub n: usize,
    pub d: usize,
    pub terms: Vec<TermData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermData {
    pub idx: Vec<usize>,
    pub coef: String,
}

/// A vector of `Q(ζ_m)^n`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    n: usize,
    m: u32,
    entries: BTreeMap<usize, CyclotomicScalar>,
}

impl Vector {
    pub fn zero(n: usize, m: u32) -> Self {
        Vector { n, m, entries: BTreeMap::new() }
    }

    pub fn basis(n: usize, m: u32, i: usize) -> Self {
        Vector::zero(n, m).with(i, CyclotomicScalar::one())
    }

    pub fn from_rationals(m: u32, coords: &[BigRational]) -> Self {
        let mut v = Vector::zero(coords.len(), m);
        for (i, c) in coords.iter().enumerate() {
            v = v.with(i, CyclotomicScalar::from_rational(c.clone()));
        }
        v
    }

    /// Sets coordinate `i`. Panics if `i` is out of range or the scalar does
    /// not live in `Q(ζ_m)`.
    pub fn with(mut self, i: usize, c: CyclotomicScalar) -> Self {
        assert!(i < self.n, "coordinate {i} out of range");
        assert!(self.m.is_multiple_of(c.order()), "scalar of order {} in field of order {}", c.order(), self.m);
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn get(&self, i: usize) -> CyclotomicScalar {
        self.entries.get(&i).cloned().unwrap_or_else(CyclotomicScalar::zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!((self.n, self.m), (other.n, other.m));
        let mut out = self.clone();
        for (&i, c) in &other.entries {
            let s = &out.get(i) + c;
            out = out.with(i, s);
        }
        out
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Vector {
        let mut out = Vector::zero(self.n, self.m);
        for (&i, x) in &self.entries {
            out = out.with(i, x * c);
        }
        out
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }
}

/// `g_d`: value 1 on constant basis tuples, 0 elsewhere; polynomial `Σ x_i^d`.
pub fn diagonal_form(n: usize, d: usize) -> SparseForm {
    assert!(d >= 1, "arity must be positive");
    SparseForm {
        n,
        d,
        terms: (0..n).map(|i| (vec![i; d], CyclotomicScalar::one())).collect(),
    }
}

/// `f_i(e_{x_1}, …, e_{x_d}) = P_i(x_1, …, x_d)`.
pub fn relation_form(s: &RelationalStructure, i: usize) -> Result<SparseForm> {
    let rel = s.relation(i)?;
    let d = s.signature().arities()[i];
    Ok(SparseForm {
        n: s.n(),
        d,
        terms: rel.iter().map(|t| (t.clone(), CyclotomicScalar::one())).collect(),
    })
}

/// The blow-up of relation `i` with blocks of size `m`: arity `m·d_i`,
/// value 1 exactly on tuples made of `d_i` constant blocks whose values form
/// a tuple of `P_i`. Block `a`, slot `b` sits at position `a·m + b`.
pub fn blowup_form(s: &RelationalStructure, i: usize, m: usize) -> Result<SparseForm> {
    if m == 0 {
        return invalid("block size must be positive");
    }
    let rel = s.relation(i)?;
    let d = s.signature().arities()[i];
    Ok(SparseForm {
        n: s.n(),
        d: d * m,
        terms: rel
            .iter()
            .map(|t| (blow_tuple(t, m), CyclotomicScalar::one()))
            .collect(),
    })
}

pub(crate) fn blow_tuple(t: &[usize], m: usize) -> Vec<usize> {
    t.iter().flat_map(|&x| std::iter::repeat_n(x, m)).collect()
}
