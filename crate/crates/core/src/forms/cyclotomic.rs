//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is a rational polynomial in `ζ_m` reduced modulo the m-th
//! cyclotomic polynomial. Operands of different orders are lifted into
//! `Q(ζ_l)` with `l = lcm`, via `ζ_m = ζ_l^(l/m)`. Results that happen to be
//! rational are stored with `m = 1`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(m >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Degree of `Φ_m`, i.e. Euler's totient of `m`.
pub fn totient(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

#[derive(Clone, Debug)]
pub struct CyclotomicScalar {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicScalar {
    pub fn zero() -> Self {
        CyclotomicScalar { m: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = CyclotomicScalar { m: 1, coeffs: vec![r] };
        s.trim();
        s
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::reduced(m, poly)
    }

    /// `Σ counts[j] ζ_m^j`.
    pub fn from_power_counts(m: u32, counts: &[BigInt]) -> Self {
        let poly = counts.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        Self::reduced(m, poly)
    }

    /// Builds an element from an arbitrary-degree polynomial in `ζ_m`.
    pub fn reduced(m: u32, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            // top * x^(shift+deg) ≡ -top * Σ_{j<deg} φ_j x^(shift+j)
            for (j, &c) in phi.iter().take(deg).enumerate() {
                if c != 0 {
                    poly[shift + j] -= &top * BigRational::from_integer(BigInt::from(c));
                }
            }
        }
        let mut s = CyclotomicScalar { m, coeffs: poly };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.len() <= 1 {
            self.m = 1;
        }
    }

    /// Root order of the field this value is currently written in.
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Rewrites the value inside `Q(ζ_l)`; `l` must be a multiple of the
    /// current order.
    pub fn lift(&self, l: u32) -> CyclotomicScalar {
        assert!(l.is_multiple_of(self.m), "cannot lift order {} into {}", self.m, l);
        if l == self.m || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let step = (l / self.m) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Self::reduced(l, poly)
    }

    fn common(&self, other: &Self) -> (u32, CyclotomicScalar, CyclotomicScalar) {
        let l = self.m.lcm(&other.m);
        (l, self.lift(l), other.lift(l))
    }

    /// Complex conjugate: `ζ^j -> ζ^(-j)`.
    pub fn conj(&self) -> CyclotomicScalar {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let m = self.m as usize;
        let mut poly = vec![BigRational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(m - j) % m] += c;
        }
        Self::reduced(self.m, poly)
    }

    pub fn scale(&self, r: &BigRational) -> CyclotomicScalar {
        let mut s = CyclotomicScalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        };
        s.trim();
        s
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicScalar {}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, other: &CyclotomicScalar) -> CyclotomicScalar {
        let (l, a, b) = self.common(other);
        let len = a.coeffs.len().max(b.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); len];
        for (j, c) in a.coeffs.into_iter().enumerate() {
            coeffs[j] += c;
        }
        for (j, c) in b.coeffs.into_iter().enumerate() {
            coeffs[j] += c;
        }
        let mut s = CyclotomicScalar { m: l, coeffs };
        s.trim();
        s
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, other: &CyclotomicScalar) -> CyclotomicScalar {
        self + &(-other)
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, other: &CyclotomicScalar) -> CyclotomicScalar {
        if self.is_zero() || other.is_zero() {
            return CyclotomicScalar::zero();
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (l, a, b) = self.common(other);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        CyclotomicScalar::reduced(l, poly)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, other: CyclotomicScalar) -> CyclotomicScalar {
                (&self).$method(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*z{}", self.m)?,
                _ => write!(f, "{a}*z{}^{j}", self.m)?,
            }
            first = false;
        }
        Ok(())
    }
}
