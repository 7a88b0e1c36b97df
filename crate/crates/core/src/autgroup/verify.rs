use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::autgroup::{monomial_automorphism_search, MonomialMap};
use crate::caps::Caps;
use crate::error::{invalid, Error, Result};
use crate::forms::{blowup_form, diagonal_form, relation_form, SparseForm};
use crate::relstruct::{PermGroup, RelationalStructure};

/// Which form system to build from a structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionMode {
    /// `f_1, …, f_r, g_2, g_3`; automorphisms should be exactly `Aut(X)`.
    Standard,
    /// `f'_1, …, f'_r, g_m` with blocks of size `m ≥ 3`; should be `μ_m ≀ Aut(X)`.
    Blowup(u32),
    /// `f'_1, …, f'_r, g_2, g_4` with blocks of size 2; should be `μ_2 ≀ Aut(X)`.
    Blowup2,
}

impl ConstructionMode {
    /// Root order of the field holding every root the forms can see.
    pub fn ambient_order(&self) -> u32 {
        match self {
            ConstructionMode::Standard => 6,
            ConstructionMode::Blowup(m) => *m,
            ConstructionMode::Blowup2 => 4,
        }
    }

    /// Order of the roots of unity in the expected diagonal part.
    pub fn twist_order(&self) -> u32 {
        match self {
            ConstructionMode::Standard => 1,
            ConstructionMode::Blowup(m) => *m,
            ConstructionMode::Blowup2 => 2,
        }
    }
}

impl fmt::Display for ConstructionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionMode::Standard => write!(f, "standard"),
            ConstructionMode::Blowup(m) => write!(f, "blowup({m})"),
            ConstructionMode::Blowup2 => write!(f, "blowup2"),
        }
    }
}

/// Named forms of the construction, relation forms first.
pub fn construction_forms(
    s: &RelationalStructure,
    mode: ConstructionMode,
) -> Result<Vec<(String, SparseForm)>> {
    let n = s.n();
    let r = s.signature().len();
    let mut out = Vec::new();
    match mode {
        ConstructionMode::Standard => {
            for i in 0..r {
                out.push((format!("f{}", i + 1), relation_form(s, i)?));
            }
            out.push(("g2".into(), diagonal_form(n, 2)));
            out.push(("g3".into(), diagonal_form(n, 3)));
        }
        ConstructionMode::Blowup(m) => {
            if m < 3 {
                return invalid("blowup needs block size m >= 3; use blowup2 for m = 2");
            }
            for i in 0..r {
                out.push((format!("f'{}", i + 1), blowup_form(s, i, m as usize)?));
            }
            out.push((format!("g{m}"), diagonal_form(n, m as usize)));
        }
        ConstructionMode::Blowup2 => {
            for i in 0..r {
                out.push((format!("f'{}", i + 1), blowup_form(s, i, 2)?));
            }
            out.push(("g2".into(), diagonal_form(n, 2)));
            out.push(("g4".into(), diagonal_form(n, 4)));
        }
    }
    Ok(out)
}

/// Certifies `μ_m ≀ Γ ⊆ Aut(forms)` from generators alone: each generator
/// of `Γ` and each single-coordinate twist by `ζ_m` must preserve every
/// form, and these generate the wreath product.
pub fn verify_wreath_containment(forms: &[SparseForm], gamma: &PermGroup, m: u32) -> Result<bool> {
    let n = gamma.degree();
    for f in forms {
        if f.dim() != n {
            return Err(Error::DegreeMismatch { expected: n, got: f.dim() });
        }
    }
    let mut tests: Vec<MonomialMap> = gamma
        .generators()
        .iter()
        .map(|p| MonomialMap::permutation(p.clone(), m))
        .collect();
    if m > 1 {
        tests.extend((0..n).map(|i| MonomialMap::twist(n, m, i, 1)));
    }
    for g in &tests {
        for f in forms {
            if !f.preserved_by(g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub mode: String,
    pub group_order: u128,
    pub expected_order: Option<u128>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub generators: Vec<MonomialMap>,
    #[serde(skip)]
    pub notes: Vec<String>,
}

/// Builds the mode's form system, searches its monomial automorphisms,
/// independently searches `Aut(X)`, and compares.
pub fn verify_construction(
    s: &RelationalStructure,
    mode: ConstructionMode,
    caps: &Caps,
) -> Result<VerifyReport> {
    let forms: Vec<SparseForm> = construction_forms(s, mode)?.into_iter().map(|(_, f)| f).collect();
    let found = monomial_automorphism_search(&forms, mode.ambient_order(), caps)?;
    let gamma = s.automorphism_search(caps)?;
    let gamma_order = gamma.order().expect("search enumerates") as u128;
    let n = s.n() as u32;
    let expected = (mode.twist_order() as u128).pow(n) * gamma_order;
    let order = found.order() as u128;

    let structure_ok = match mode {
        ConstructionMode::Standard => found.elements().iter().all(|g| {
            g.is_pure_permutation() && gamma.contains(g.perm()) == Some(true)
        }),
        _ => verify_wreath_containment(&forms, &gamma, mode.twist_order())?,
    };
    let notes = vec![
        "search restricted to monomial maps: a diagonal form g_k is present, so every linear \
         automorphism permutes the lines through basis vectors"
            .to_string(),
        format!("|Aut(X)| = {gamma_order} by independent backtracking"),
    ];
    Ok(VerifyReport {
        mode: mode.to_string(),
        group_order: order,
        expected_order: Some(expected),
        matches: structure_ok && order == expected,
        generators: found.generators(),
        notes,
    })
}

/// Monomial automorphisms of `g_d` on `n` coordinates over `μ_d`, compared
/// with `|μ_d ≀ S_n| = d^n · n!`.
pub fn verify_diagonal(n: usize, d: usize, caps: &Caps) -> Result<VerifyReport> {
    if n == 0 || d == 0 {
        return invalid("diagonal form needs n >= 1 and d >= 1");
    }
    let f = diagonal_form(n, d);
    let found = monomial_automorphism_search(std::slice::from_ref(&f), d as u32, caps)?;
    let factorial: u128 = (1..=n as u128).product();
    let expected = (d as u128).pow(n as u32) * factorial;
    let contains = verify_wreath_containment(std::slice::from_ref(&f), &PermGroup::symmetric(n), d as u32)?;
    Ok(VerifyReport {
        mode: format!("prop-diag(n={n}, d={d})"),
        group_order: found.order() as u128,
        expected_order: Some(expected),
        matches: contains && found.order() as u128 == expected,
        generators: found.generators(),
        notes: vec!["every element found is a monomial map over the d-th roots of unity".into()],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RigiditySample {
    pub v: Vec<String>,
    pub support: usize,
    pub criterion: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub n: usize,
    pub d: usize,
    pub samples: Vec<RigiditySample>,
    pub pass: bool,
}

/// For each sample `v`, checks that `∂_v f` is a power of a linear form
/// exactly when `v` is supported on at most one coordinate.
pub fn rigidity_certificate(f: &SparseForm, samples: &[Vec<BigRational>]) -> Result<RigidityReport> {
    let (n, d) = (f.dim(), f.arity());
    if d < 3 {
        return invalid("rigidity criterion needs arity d >= 3");
    }
    if *f != diagonal_form(n, d) {
        return invalid("rigidity certificate applies to the diagonal form only");
    }
    let p = f.as_polynomial()?;
    let mut out = Vec::with_capacity(samples.len());
    for v in samples {
        let criterion = p.directional_derivative(v)?.is_power_of_linear_form()?.is_power();
        let support = v.iter().filter(|c| !c.is_zero()).count();
        out.push(RigiditySample {
            v: v.iter().map(ToString::to_string).collect(),
            support,
            criterion,
            pass: criterion == (support <= 1),
        });
    }
    let pass = out.iter().all(|s| s.pass);
    Ok(RigidityReport { n, d, samples: out, pass })
}
