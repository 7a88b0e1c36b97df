//! One line per acceptance criterion. Every check is exact; the binary
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensorspace_core::autgroup::{
    construction_forms, monomial_automorphism_search, verify_construction, ConstructionMode, MonomialMap,
};
use tensorspace_core::forms::{diagonal_form, CyclotomicScalar, SparseForm, Vector};
use tensorspace_core::fraisse::{self, random_colored_hypergraph};
use tensorspace_core::relstruct::{orbit_partition, tuple_at, tuple_index, PermGroup, Permutation, RelationalStructure};
use tensorspace_core::repthy::{irreducibility_check, length_report, HypergraphFamily, LineFamily, Verdict};
use tensorspace_core::Caps;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (0..n).filter(|x| !p.contains(x)).map(|x| [p.clone(), vec![x]].concat()).collect::<Vec<_>>())
            .collect();
    }
    out.into_iter().map(|p| Permutation::new(p).unwrap()).collect()
}

fn all_exponents(n: usize, m: u32) -> Vec<Vec<u32>> {
    (0..(m as usize).pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let e = (idx % m as usize) as u32;
                    idx /= m as usize;
                    e
                })
                .collect()
        })
        .collect()
}

/// `f(g e_{t_1}, …, g e_{t_d}) = f(e_{t_1}, …, e_{t_d})` for every basis tuple.
fn preserves_by_evaluation(f: &SparseForm, g: &MonomialMap) -> bool {
    let (n, d) = (f.dim(), f.arity());
    let m = g.order();
    let images: Vec<Vector> = (0..n).map(|i| g.apply(&Vector::basis(n, m, i))).collect();
    (0..n.pow(d as u32)).all(|idx| {
        let t = tuple_at(n, d, idx);
        let args: Vec<Vector> = t.iter().map(|&i| images[i].clone()).collect();
        f.evaluate(&args).unwrap() == f.coefficient(&t)
    })
}

fn criterion_1() -> Check {
    let caps = Caps::default();
    let mut cases = Vec::new();
    for d in [3usize, 4] {
        for n in 1..=4usize {
            let f = diagonal_form(n, d);
            let found = monomial_automorphism_search(std::slice::from_ref(&f), d as u32, &caps).map_err(|e| e.to_string())?;
            let mut brute = Vec::new();
            for p in all_perms(n) {
                for e in all_exponents(n, d as u32) {
                    let g = MonomialMap::new(p.clone(), d as u32, e).unwrap();
                    if preserves_by_evaluation(&f, &g) {
                        brute.push(g);
                    }
                }
            }
            brute.sort();
            let expected = d.pow(n as u32) * (1..=n).product::<usize>();
            ensure(found.order() == expected, || format!("n={n} d={d}: order {} != {expected}", found.order()))?;
            ensure(found.elements() == brute.as_slice(), || format!("n={n} d={d}: element sets differ from brute force"))?;
            cases.push(format!("({n},{d})={expected}"));
        }
    }
    Ok(cases.join(" "))
}

fn random_sample(rng: &mut ChaCha8Rng, n: usize, narrow: bool) -> Vec<BigRational> {
    let support = if narrow { rng.random_range(0..=1) } else { rng.random_range(2..=n) };
    let mut coords: Vec<usize> = (0..n).collect();
    for j in 0..support {
        let k = rng.random_range(j..n);
        coords.swap(j, k);
    }
    let mut v = vec![BigRational::zero(); n];
    for &c in &coords[..support] {
        let num = rng.random_range(1..=12i64) * if rng.random_bool(0.5) { 1 } else { -1 };
        v[c] = q(num, rng.random_range(1..=6));
    }
    v
}

fn criterion_2() -> Check {
    let mut total = 0;
    for n in [2usize, 3, 4] {
        for d in [3usize, 4] {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * n as u64 + d as u64);
            let p = diagonal_form(n, d).as_polynomial().map_err(|e| e.to_string())?;
            for i in 0..200 {
                let v = random_sample(&mut rng, n, i % 2 == 0);
                let support = v.iter().filter(|c| !c.is_zero()).count();
                let dv = p.directional_derivative(&v).map_err(|e| e.to_string())?;
                let power = dv.is_power_of_linear_form().map_err(|e| e.to_string())?.is_power();
                ensure(power == (support <= 1), || format!("n={n} d={d} v={v:?}: power={power}, support={support}"))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} samples over (n,d) in {{2,3,4}}x{{3,4}}, 0 failures"))
}

fn criterion_3() -> Check {
    let caps = Caps::default();
    let corpus: Vec<(&str, RelationalStructure)> = vec![
        ("P3", fraisse::path(3)),
        ("C4", fraisse::cycle(4).unwrap()),
        ("C5", fraisse::cycle(5).unwrap()),
        ("K3", fraisse::complete(3)),
        ("K4-e", fraisse::k4_minus_edge()),
        ("3-chain", fraisse::dlo_approx(3)),
        ("Petersen", fraisse::petersen()),
    ];
    let mut parts = Vec::new();
    for (name, s) in corpus {
        let start = Instant::now();
        let report = verify_construction(&s, ConstructionMode::Standard, &caps).map_err(|e| e.to_string())?;
        let forms: Vec<SparseForm> = construction_forms(&s, ConstructionMode::Standard)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(_, f)| f)
            .collect();
        let found = monomial_automorphism_search(&forms, 6, &caps).map_err(|e| e.to_string())?;
        let gamma = s.automorphism_search(&caps).map_err(|e| e.to_string())?;
        let perms: Vec<Permutation> = found.elements().iter().map(|g| g.perm().clone()).collect();
        let mut perms_sorted = perms.clone();
        perms_sorted.sort();
        ensure(report.matches, || format!("{name}: report mismatch"))?;
        ensure(found.elements().iter().all(MonomialMap::is_pure_permutation), || format!("{name}: nontrivial diagonal part"))?;
        ensure(perms_sorted.as_slice() == gamma.elements().unwrap(), || format!("{name}: permutation parts differ from Aut(X)"))?;
        ensure(name != "Petersen" || found.order() == 120, || "Petersen order is not 120".into())?;
        parts.push(format!("{name}={} ({:.2}s)", found.order(), start.elapsed().as_secs_f64()));
    }
    Ok(parts.join(" "))
}

fn criterion_4() -> Check {
    let caps = Caps::default();
    let c4 = verify_construction(&fraisse::cycle(4).unwrap(), ConstructionMode::Blowup(3), &caps).map_err(|e| e.to_string())?;
    ensure(c4.group_order == 648 && c4.matches, || format!("C4 blowup(3): order {} match {}", c4.group_order, c4.matches))?;
    let k2 = verify_construction(&fraisse::complete(2), ConstructionMode::Blowup2, &caps).map_err(|e| e.to_string())?;
    ensure(k2.group_order == 8 && k2.matches, || format!("K2 blowup2: order {} match {}", k2.group_order, k2.matches))?;
    Ok("C4 blowup(3) = 648 = 3^4*8, K2 blowup2 = 8 = 2^2*2".into())
}

fn criterion_5() -> Check {
    let caps = Caps::default();
    let r1 = length_report(&LineFamily, 1, 3, &[6, 8, 10], &caps).map_err(|e| e.to_string())?;
    ensure(r1.orbit_counts == [1, 1, 1] && r1.verdict == Verdict::Finite(1), || r1.to_string())?;
    let r2 = length_report(&LineFamily, 2, 3, &[6, 8, 10], &caps).map_err(|e| e.to_string())?;
    ensure(r2.orbit_counts == [6, 8, 10] && r2.verdict == Verdict::InfiniteEvidence, || r2.to_string())?;
    let x1: Vec<Vec<usize>> = (0..4).map(|i| vec![i]).collect();
    let ip = irreducibility_check(&PermGroup::rotations(4), &x1, 3, &caps).map_err(|e| e.to_string())?;
    ensure(ip == q(1, 1), || format!("<chi,chi> = {ip}"))?;
    Ok(format!("k=1 {:?} finite(1); k=2 {:?} infinite-evidence; <chi,chi> = {ip}", r1.orbit_counts, r2.orbit_counts))
}

fn criterion_6() -> Check {
    let caps = Caps::default();
    // Saturated truncation: every 3-set carries every color, so Aut = S_3 x S_t.
    let fam = HypergraphFamily { vertices: 3, edge_size: 3, p: 1.0, seed: 2024 };
    let sizes = [1, 2, 3];
    let counts: Vec<Vec<usize>> = (1..=3)
        .map(|k| length_report(&fam, k, 3, &sizes, &caps).map(|r| r.orbit_counts))
        .collect::<tensorspace_core::Result<_>>()
        .map_err(|e| e.to_string())?;
    // X^1 is constant over every t; X^2 is constant from t = 2, the first
    // truncation containing two distinct colors.
    ensure(counts[0].windows(2).all(|w| w[0] == w[1]), || format!("X^1 counts {:?}", counts[0]))?;
    ensure(counts[1][1] == counts[1][2], || format!("X^2 counts {:?}", counts[1]))?;
    ensure(counts[2].windows(2).all(|w| w[0] < w[1]), || format!("X^3 counts {:?}", counts[2]))?;
    Ok(format!(
        "t=1,2,3: X^1 {:?}, X^2 {:?} (constant from t=2), X^3 {:?} strictly increasing",
        counts[0], counts[1], counts[2]
    ))
}

fn brute_automorphisms(s: &RelationalStructure) -> Vec<Permutation> {
    all_perms(s.n()).into_iter().filter(|p| s.is_automorphism(p).unwrap()).collect()
}

fn criterion_7() -> Check {
    let caps = Caps::default();
    let v22 = fraisse::glinfty_approx(2, 2, &caps).map_err(|e| e.to_string())?;
    let g22 = v22.automorphism_search(&caps).map_err(|e| e.to_string())?;
    ensure(g22.order() == Some(6), || format!("GL_2(F_2): order {:?}", g22.order()))?;
    ensure(g22.elements().unwrap() == brute_automorphisms(&v22).as_slice(), || "F_2^2 differs from brute force".into())?;
    let v31 = fraisse::glinfty_approx(3, 1, &caps).map_err(|e| e.to_string())?;
    let g31 = v31.automorphism_search(&caps).map_err(|e| e.to_string())?;
    let expected = vec![Permutation::identity(3), Permutation::new(vec![0, 2, 1]).unwrap()];
    ensure(g31.elements().unwrap() == expected.as_slice(), || format!("F_3: {:?}", g31.elements()))?;
    ensure(brute_automorphisms(&v31) == expected, || "F_3 differs from brute force".into())?;
    Ok("|Aut(F_2^2)| = 6; Aut(F_3^1) = <x -> 2x> of order 2 fixing 0".into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.random_range(-6..=6), rng.random_range(1..=4))
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: usize) -> SparseForm {
    let terms: Vec<(Vec<usize>, CyclotomicScalar)> = (0..rng.random_range(0..8))
        .map(|_| {
            let t = (0..d).map(|_| rng.random_range(0..n)).collect();
            (t, CyclotomicScalar::from_rational(random_rational(rng)))
        })
        .collect();
    SparseForm::from_terms(n, d, terms).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, m: u32) -> Vector {
    let mut v = Vector::zero(n, m);
    for i in 0..n {
        let c = &CyclotomicScalar::from_rational(random_rational(rng)) * &CyclotomicScalar::root_of_unity(m, rng.random_range(0..m as i64));
        v = v.with(i, c);
    }
    v
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    Permutation::new(p).unwrap()
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, m: u32) -> MonomialMap {
    let e = (0..n).map(|_| rng.random_range(0..m)).collect();
    MonomialMap::new(random_perm(rng, n), m, e).unwrap()
}

fn random_structure(rng: &mut ChaCha8Rng) -> RelationalStructure {
    let n = rng.random_range(1..=6);
    let arities: Vec<usize> = (0..rng.random_range(1..=2)).map(|_| rng.random_range(1..=3)).collect();
    let relations = arities
        .iter()
        .map(|&a| {
            let tuples: BTreeSet<Vec<usize>> =
                (0..rng.random_range(0..10)).map(|_| (0..a).map(|_| rng.random_range(0..n)).collect()).collect();
            tuples.into_iter().collect()
        })
        .collect();
    RelationalStructure::new(n, arities, relations).unwrap()
}

fn criterion_8() -> Check {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    const CASES: usize = 64;
    let err = |e: tensorspace_core::Error| e.to_string();

    for _ in 0..CASES {
        let f = random_form(&mut rng, 3, 3);
        let args: Vec<Vector> = (0..3).map(|_| random_vector(&mut rng, 3, 6)).collect();
        let (u, w) = (random_vector(&mut rng, 3, 6), random_vector(&mut rng, 3, 6));
        let a = CyclotomicScalar::from_rational(random_rational(&mut rng));
        let b = CyclotomicScalar::root_of_unity(6, rng.random_range(0..6));
        let slot = rng.random_range(0..3);
        let mut mixed = args.clone();
        mixed[slot] = u.scale(&a).add(&w.scale(&b));
        let mut at_u = args.clone();
        at_u[slot] = u;
        let mut at_w = args;
        at_w[slot] = w;
        let lhs = f.evaluate(&mixed).map_err(err)?;
        let rhs = &(&a * &f.evaluate(&at_u).map_err(err)?) + &(&b * &f.evaluate(&at_w).map_err(err)?);
        ensure(lhs == rhs, || "multilinearity".into())?;
    }

    for _ in 0..CASES {
        let f = random_form(&mut rng, 4, 2);
        let ms = [2u32, 3, 4, 6];
        let (mg, mh) = (ms[rng.random_range(0..4)], ms[rng.random_range(0..4)]);
        let g = random_monomial(&mut rng, 4, mg);
        let h = random_monomial(&mut rng, 4, mh);
        let lhs = f.pullback(&g.compose(&h)).map_err(err)?;
        let rhs = f.pullback(&g).map_err(err)?.pullback(&h).map_err(err)?;
        ensure(lhs == rhs, || "pullback functoriality".into())?;
    }

    for _ in 0..CASES {
        let s = random_structure(&mut rng);
        let g = s.automorphism_search(&caps).map_err(err)?;
        let els = g.elements().unwrap();
        ensure(g.is_closed() && els.iter().all(|p| s.is_automorphism(p).unwrap()), || "permutation search closure".into())?;
        ensure(els == brute_automorphisms(&s).as_slice(), || "permutation search vs brute force".into())?;
        let forms = vec![random_form(&mut rng, 3, 3), diagonal_form(3, 3)];
        let mg = monomial_automorphism_search(&forms, [1u32, 2, 3][rng.random_range(0..3)], &caps).map_err(err)?;
        ensure(mg.is_closed(), || "monomial search closure".into())?;
    }

    for _ in 0..CASES {
        let n = rng.random_range(1..=5);
        let gens = (0..rng.random_range(0..3)).map(|_| random_perm(&mut rng, n)).collect();
        let g = PermGroup::new(n, gens).unwrap();
        let k = rng.random_range(1..=3);
        let part = orbit_partition(&g, k, &caps).map_err(err)?;
        let total = n.pow(k as u32);
        ensure(part.sizes().iter().sum::<usize>() == total, || "partition sizes".into())?;
        for idx in 0..total {
            let t = tuple_at(n, k, idx);
            ensure(tuple_index(n, &t) == idx, || "tuple index".into())?;
            for p in g.generators() {
                ensure(part.class_of(&p.apply_tuple(&t)) == part.class_of(&t), || "orbit not stable".into())?;
            }
        }
        for (j, rep) in part.representatives().iter().enumerate() {
            let members = part.members(j);
            ensure(members.iter().min() == Some(rep), || "representative not minimal".into())?;
            // every member is reachable from the representative
            let closure = g.closure(&caps).map_err(err)?;
            let orbit: BTreeSet<Vec<usize>> = closure.elements().unwrap().iter().map(|p| p.apply_tuple(rep)).collect();
            ensure(orbit.into_iter().collect::<Vec<_>>() == members, || "orbit differs from group images".into())?;
        }
    }

    for _ in 0..CASES {
        let s = random_structure(&mut rng);
        let text = s.to_json().map_err(err)?;
        ensure(RelationalStructure::from_json(&text).map_err(err)?.to_json().map_err(err)? == text, || "structure JSON".into())?;
        let f = random_form(&mut rng, 3, 2);
        let text = f.to_json().map_err(err)?;
        ensure(SparseForm::from_json(&text).map_err(err)?.to_json().map_err(err)? == text, || "form JSON".into())?;
    }

    for seed in 0..CASES as u64 {
        let a = random_colored_hypergraph(6, 3, 3, 0.4, seed, &caps).map_err(err)?;
        let b = random_colored_hypergraph(6, 3, 3, 0.4, seed, &caps).map_err(err)?;
        ensure(a == b, || "seeded hypergraph".into())?;
        let ga = fraisse::hypergraph_glue(&a).to_json().map_err(err)?;
        ensure(ga == fraisse::hypergraph_glue(&b).to_json().map_err(err)?, || "glued JSON".into())?;
    }
    Ok(format!("6 property suites x {CASES} seeded cases, 0 failures"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("diagonal form automorphisms equal mu_d wr S_n (n<=4, d in {3,4})", criterion_1),
        ("directional-derivative rigidity dichotomy", criterion_2),
        ("standard construction recovers Aut(X) on the corpus", criterion_3),
        ("blowup constructions give mu_m wr Aut(X)", criterion_4),
        ("line truncations: finite length at k=1, growth at k=2, V irreducible", criterion_5),
        ("glued (3,Sigma)-hypergraphs: X^1, X^2 stabilize, X^3 grows", criterion_6),
        ("vector-space structures: GL_2(F_2) and <x -> 2x> on F_3", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{secs:.2}s] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL [{secs:.2}s] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
