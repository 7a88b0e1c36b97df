//! Linear systems over `Z/m`, solved by unimodular row reduction.
//!
//! `Z/m` is not a field for composite `m`, so rows are combined with the
//! extended-gcd 2×2 transform `[[s, t], [-b/g, a/g]]` (determinant 1). The
//! result is an echelon system with the same solution set; its solutions are
//! enumerated by back-substitution, where each pivot equation `p·x ≡ r`
//! contributes `gcd(p, m)` or zero choices.

use num_integer::Integer;

use crate::caps;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct ZmodSystem {
    m: i64,
    vars: usize,
    rows: Vec<(Vec<i64>, i64)>,
}

impl ZmodSystem {
    pub fn new(m: u32, vars: usize) -> Self {
        ZmodSystem { m: m as i64, vars, rows: Vec::new() }
    }

    /// Adds `Σ coeffs[i]·x_i ≡ rhs (mod m)`.
    pub fn push(&mut self, coeffs: Vec<i64>, rhs: i64) {
        assert_eq!(coeffs.len(), self.vars);
        let m = self.m;
        self.rows.push((coeffs.into_iter().map(|c| c.rem_euclid(m)).collect(), rhs.rem_euclid(m)));
    }

    /// All solutions in `[0, m)^vars`, lexicographically sorted.
    pub fn solve_all(&self, cap: u128) -> Result<Vec<Vec<u32>>> {
        let m = self.m;
        let mut rows = self.rows.clone();
        let mut pivots: Vec<Option<usize>> = vec![None; self.vars];
        let mut r = 0;
        for (c, pivot) in pivots.iter_mut().enumerate() {
            if r == rows.len() {
                break;
            }
            for i in r + 1..rows.len() {
                if rows[i].0[c] != 0 {
                    combine(&mut rows, r, i, c, m);
                }
            }
            if rows[r].0[c] != 0 {
                *pivot = Some(r);
                r += 1;
            }
        }
        if rows[r..].iter().any(|(_, rhs)| *rhs != 0) {
            return Ok(Vec::new());
        }

        let mut out = Vec::new();
        let mut x = vec![0i64; self.vars];
        self.enumerate(&rows, &pivots, self.vars, &mut x, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn enumerate(
        &self,
        rows: &[(Vec<i64>, i64)],
        pivots: &[Option<usize>],
        upto: usize,
        x: &mut Vec<i64>,
        out: &mut Vec<Vec<u32>>,
        cap: u128,
    ) -> Result<()> {
        let m = self.m;
        if upto == 0 {
            caps::check("exponent solutions", out.len() as u128 + 1, cap)?;
            out.push(x.iter().map(|&v| v as u32).collect());
            return Ok(());
        }
        let c = upto - 1;
        let choices: Vec<i64> = match pivots[c] {
            None => (0..m).collect(),
            Some(r) => {
                let (coeffs, rhs) = &rows[r];
                let rest: i64 = (c + 1..self.vars).map(|j| coeffs[j] * x[j]).sum();
                solve_scalar(coeffs[c], (rhs - rest).rem_euclid(m), m)
            }
        };
        for v in choices {
            x[c] = v;
            self.enumerate(rows, pivots, c, x, out, cap)?;
        }
        x[c] = 0;
        Ok(())
    }
}

fn combine(rows: &mut [(Vec<i64>, i64)], r: usize, i: usize, c: usize, m: i64) {
    let a = rows[r].0[c];
    let b = rows[i].0[c];
    let egcd = a.extended_gcd(&b);
    let (g, s, t) = (egcd.gcd, egcd.x, egcd.y);
    let (p, q) = (-b / g, a / g);
    let (ra, rb) = (rows[r].clone(), rows[i].clone());
    let mix = |u: i64, v: i64, k1: i64, k2: i64| (k1 * u + k2 * v).rem_euclid(m);
    for j in 0..ra.0.len() {
        rows[r].0[j] = mix(ra.0[j], rb.0[j], s, t);
        rows[i].0[j] = mix(ra.0[j], rb.0[j], p, q);
    }
    rows[r].1 = mix(ra.1, rb.1, s, t);
    rows[i].1 = mix(ra.1, rb.1, p, q);
}

/// Solutions of `a·x ≡ b (mod m)` in `[0, m)`.
fn solve_scalar(a: i64, b: i64, m: i64) -> Vec<i64> {
    let g = a.gcd(&m);
    if b % g != 0 {
        return Vec::new();
    }
    let (a1, b1, m1) = (a / g, b / g, m / g);
    let inv = a1.extended_gcd(&m1).x.rem_euclid(m1);
    let x0 = (b1 * inv).rem_euclid(m1);
    (0..g).map(|j| x0 + j * m1).collect()
}
