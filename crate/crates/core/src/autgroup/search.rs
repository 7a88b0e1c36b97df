use std::collections::HashSet;

use crate::autgroup::zmod::ZmodSystem;
use crate::autgroup::{MonomialGroup, MonomialMap};
use crate::caps::{self, Caps};
use crate::error::{invalid, Error, Result};
use crate::forms::{CyclotomicScalar, SparseForm};
use crate::relstruct::search::search_permutations;

/// All monomial maps over `μ_m` that preserve every form.
///
/// Stage one backtracks over permutations that carry each form's support
/// onto itself and keep every coefficient ratio inside `μ_m`. Stage two,
/// per surviving permutation `π`, turns each stored term `t` into the
/// congruence `Σ_j a_{t_j} ≡ r_t (mod m)`, where `ζ^{r_t}·c(π t) = c(t)`,
/// and enumerates the solutions of that system.
///
/// The node cap bounds visited permutation nodes plus emitted elements,
/// not the naive `m^n · n!`.
pub fn monomial_automorphism_search(
    forms: &[SparseForm],
    m: u32,
    caps: &Caps,
) -> Result<MonomialGroup> {
    if m == 0 {
        return invalid("root order must be positive");
    }
    let Some(first) = forms.first() else {
        return invalid("need at least one form");
    };
    let n = first.dim();
    for f in forms {
        if f.dim() != n {
            return Err(Error::DegreeMismatch { expected: n, got: f.dim() });
        }
    }
    caps::check("monomial search degree", n as u128, caps.max_search_degree as u128)?;

    let roots: Vec<CyclotomicScalar> =
        (0..m).map(|k| CyclotomicScalar::root_of_unity(m, k as i64)).collect();
    // Exponent r with ζ^r · c(image) = c(t), if any.
    let ratio_exponent = |c_t: &CyclotomicScalar, c_img: &CyclotomicScalar| -> Option<u32> {
        if c_t == c_img {
            return Some(0);
        }
        (1..m).find(|&r| &(&roots[r as usize] * c_img) == c_t)
    };

    let supports: Vec<Vec<Vec<usize>>> = forms.iter().map(SparseForm::support).collect();
    let rels: Vec<&[Vec<usize>]> = supports.iter().map(Vec::as_slice).collect();
    let accept = |r: usize, t: &[usize], img: &[usize]| {
        let f = &forms[r];
        ratio_exponent(&f.terms()[t], &f.terms()[img]).is_some()
    };
    let perms = search_permutations(n, &rels, &accept, caps.max_monomial_nodes)?;

    let mut budget = caps.max_monomial_nodes.saturating_sub(perms.len() as u128);
    let mut elements = Vec::new();
    for perm in perms {
        let mut sys = ZmodSystem::new(m, n);
        let mut seen: HashSet<(Vec<i64>, u32)> = HashSet::new();
        for f in forms {
            for (t, c) in f.terms() {
                let img = perm.apply_tuple(t);
                let r = ratio_exponent(c, &f.terms()[&img]).expect("checked during search");
                let mut row = vec![0i64; n];
                for &x in t {
                    row[x] += 1;
                }
                if seen.insert((row.clone(), r)) {
                    sys.push(row, r as i64);
                }
            }
        }
        let solutions = sys.solve_all(budget)?;
        budget -= solutions.len() as u128;
        caps::check(
            "monomial group order",
            (elements.len() + solutions.len()) as u128,
            caps.max_group,
        )?;
        for exps in solutions {
            elements.push(MonomialMap::new(perm.clone(), m, exps)?);
        }
    }
    elements.sort();
    Ok(MonomialGroup::from_sorted(n, m, elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{blowup_form, diagonal_form, relation_form};
    use crate::relstruct::{Permutation, RelationalStructure};

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..n).filter(|x| !p.contains(x)).map(|x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    }).collect::<Vec<_>>()
                })
                .collect();
        }
        out.into_iter().map(|p| Permutation::new(p).unwrap()).collect()
    }

    fn brute(forms: &[SparseForm], m: u32) -> Vec<MonomialMap> {
        let n = forms[0].dim();
        let mut out = Vec::new();
        for p in all_perms(n) {
            for idx in 0..(m as usize).pow(n as u32) {
                let mut exps = vec![0u32; n];
                let mut k = idx;
                for slot in exps.iter_mut().rev() {
                    *slot = (k % m as usize) as u32;
                    k /= m as usize;
                }
                let g = MonomialMap::new(p.clone(), m, exps).unwrap();
                if forms.iter().all(|f| f.preserved_by(&g).unwrap()) {
                    out.push(g);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn diagonal_cubic_in_two_variables() {
        let forms = vec![diagonal_form(2, 3)];
        let g = monomial_automorphism_search(&forms, 3, &Caps::default()).unwrap();
        assert_eq!(g.order(), 18);
        assert_eq!(g.elements(), brute(&forms, 3).as_slice());
        assert!(g.is_closed());
    }

    #[test]
    fn g2_g3_leave_only_permutations() {
        let forms = vec![diagonal_form(3, 2), diagonal_form(3, 3)];
        let g = monomial_automorphism_search(&forms, 6, &Caps::default()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.elements().iter().all(MonomialMap::is_pure_permutation));
        assert_eq!(g.elements(), brute(&forms, 6).as_slice());
    }

    #[test]
    fn path_standard_construction() {
        let p3 = RelationalStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let forms = vec![relation_form(&p3, 0).unwrap(), diagonal_form(3, 2), diagonal_form(3, 3)];
        let g = monomial_automorphism_search(&forms, 6, &Caps::default()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.elements(), brute(&forms, 6).as_slice());
    }

    #[test]
    fn signed_coefficients_need_even_order() {
        // f = x0 x1 - x1 x0 style antisymmetric 2-form: swapping is -1.
        let f = SparseForm::from_terms(
            2,
            2,
            [(vec![0, 1], CyclotomicScalar::from_int(1)), (vec![1, 0], CyclotomicScalar::from_int(-1))],
        )
        .unwrap();
        for m in [2u32, 3, 4] {
            let forms = vec![f.clone(), diagonal_form(2, 4)];
            let g = monomial_automorphism_search(&forms, m, &Caps::default()).unwrap();
            assert_eq!(g.elements(), brute(&forms, m).as_slice(), "m={m}");
        }
    }

    #[test]
    fn blowup_against_brute_force() {
        let k2 = RelationalStructure::graph(2, &[(0, 1)]).unwrap();
        let forms = vec![blowup_form(&k2, 0, 2).unwrap(), diagonal_form(2, 2), diagonal_form(2, 4)];
        let g = monomial_automorphism_search(&forms, 4, &Caps::default()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.elements(), brute(&forms, 4).as_slice());
    }

    #[test]
    fn rejects_mixed_dimensions() {
        let forms = vec![diagonal_form(2, 3), diagonal_form(3, 3)];
        assert!(monomial_automorphism_search(&forms, 3, &Caps::default()).is_err());
        assert!(monomial_automorphism_search(&[], 3, &Caps::default()).is_err());
    }

    #[test]
    fn cap_on_group_size() {
        let caps = Caps { max_group: 10, ..Caps::default() };
        let err = monomial_automorphism_search(&[diagonal_form(3, 3)], 3, &caps).unwrap_err();
        assert!(err.is_cap());
    }
}
