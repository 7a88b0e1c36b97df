//! Rational polynomials in variables `x0, …, x(n-1)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// Outcome of testing whether `p = c·ℓ^e` for a linear form `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerVerdict {
    /// The zero polynomial; counted as a power by convention.
    Zero,
    /// `p = scale · linear^e`, with `linear` normalised to coefficient 1 at
    /// its first variable having a pure power in `p`. `rational_root` tells
    /// whether `scale` is itself an e-th power in Q, i.e. whether `p = ℓ'^e`
    /// for a rational `ℓ'` without extending the field.
    Power {
        linear: Vec<BigRational>,
        scale: BigRational,
        rational_root: bool,
    },
    NotPower,
}

impl PowerVerdict {
    pub fn is_power(&self) -> bool {
        !matches!(self, PowerVerdict::NotPower)
    }
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `Σ v_i x_i`.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len();
        Polynomial::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coef: BigRational) {
        assert_eq!(exps.len(), self.n, "exponent vector length");
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|x| x == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Mixed,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut out = Polynomial::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::from_terms(self.n, [(vec![0; self.n], BigRational::one())]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::from_terms(self.n, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.n);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    pub fn partial(&self, i: usize) -> Polynomial {
        Polynomial::from_terms(
            self.n,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * BigRational::from_integer(BigInt::from(e[i])))
            }),
        )
    }

    /// `Σ_i v_i ∂p/∂x_i`; rejects non-homogeneous input.
    pub fn directional_derivative(&self, v: &[BigRational]) -> Result<Polynomial> {
        if self.homogeneity() == Homogeneity::Mixed {
            return Err(Error::NonHomogeneous);
        }
        if v.len() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, got: v.len() });
        }
        let mut out = Polynomial::zero(self.n);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (e, c) in self.partial(i).terms {
                out.add_term(e, c * vi);
            }
        }
        Ok(out)
    }

    /// Decides whether `p = c·ℓ^e`.
    ///
    /// Picks the first variable `x_j` with a nonzero pure power `c·x_j^e`,
    /// reads the candidate `ℓ = x_j + Σ λ_i x_i` off the coefficients of
    /// `x_j^(e-1) x_i` (which equal `c·e·λ_i`), then compares `c·ℓ^e` with
    /// `p` term by term. A nonzero power of a linear form always has such a
    /// pure power, so failing to find one means `p` is not a power.
    pub fn is_power_of_linear_form(&self) -> Result<PowerVerdict> {
        let e = match self.homogeneity() {
            Homogeneity::Zero => return Ok(PowerVerdict::Zero),
            Homogeneity::Mixed => return Err(Error::NonHomogeneous),
            Homogeneity::Degree(0) => {
                return Err(Error::Invalid("constant polynomial has no linear root".into()))
            }
            Homogeneity::Degree(e) => e,
        };
        let n = self.n;
        let pure = |j: usize| {
            let mut x = vec![0u32; n];
            x[j] = e;
            x
        };
        let Some(j) = (0..n).find(|&j| self.terms.contains_key(&pure(j))) else {
            return Ok(PowerVerdict::NotPower);
        };
        let scale = self.coefficient(&pure(j));
        let e_q = BigRational::from_integer(BigInt::from(e));
        let linear: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == j {
                    return BigRational::one();
                }
                let mut x = vec![0u32; n];
                x[j] = e - 1;
                x[i] += 1;
                self.coefficient(&x) / (&scale * &e_q)
            })
            .collect();
        let candidate = Polynomial::linear(&linear).pow(e).scale(&scale);
        if candidate != *self {
            return Ok(PowerVerdict::NotPower);
        }
        let rational_root = is_rational_power(&scale, e);
        Ok(PowerVerdict::Power { linear, scale, rational_root })
    }
}

fn is_rational_power(r: &BigRational, e: u32) -> bool {
    let exact = |x: &BigInt| {
        if x.is_negative() {
            if e.is_multiple_of(2) {
                return false;
            }
            let root = (-x).nth_root(e);
            num_traits::pow(root, e as usize) == -x
        } else {
            let root = x.nth_root(e);
            num_traits::pow(root, e as usize) == *x
        }
    };
    exact(r.numer()) && exact(r.denom())
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing lexicographic order of exponent vectors, each as
    /// `c*x0^a0*x2^a2` (zero exponents omitted), joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &a) in e.iter().enumerate() {
                if a > 0 {
                    write!(f, "*x{i}^{a}")?;
                }
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the text produced by `Display` in an `n`-variable ring.
    pub fn parse(n: usize, s: &str) -> Result<Polynomial> {
        let s = s.trim();
        let mut p = Polynomial::zero(n);
        if s == "0" {
            return Ok(p);
        }
        let bad = |m: &str| Error::Parse(format!("polynomial term `{m}`"));
        for term in s.split(" + ") {
            let mut parts = term.split('*');
            let coef = BigRational::from_str(parts.next().ok_or_else(|| bad(term))?.trim())
                .map_err(|_| bad(term))?;
            let mut e = vec![0u32; n];
            for factor in parts {
                let (var, exp) = factor.split_once('^').ok_or_else(|| bad(term))?;
                let i: usize = var.strip_prefix('x').ok_or_else(|| bad(term))?.parse().map_err(|_| bad(term))?;
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
                e[i] += exp.parse::<u32>().map_err(|_| bad(term))?;
            }
            p.add_term(e, coef);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn cubes() -> Polynomial {
        Polynomial::from_terms(2, [(vec![3, 0], q(1)), (vec![0, 3], q(1))])
    }

    #[test]
    fn derivative_examples() {
        let p = cubes();
        assert_eq!(p.directional_derivative(&[q(1), q(0)]).unwrap().to_string(), "3*x0^2");
        assert_eq!(
            p.directional_derivative(&[q(1), q(1)]).unwrap().to_string(),
            "3*x0^2 + 3*x1^2"
        );
        assert!(p.directional_derivative(&[q(0), q(0)]).unwrap().is_zero());
        let mixed = Polynomial::from_terms(2, [(vec![1, 0], q(1)), (vec![2, 0], q(1))]);
        assert!(matches!(mixed.directional_derivative(&[q(1), q(0)]), Err(Error::NonHomogeneous)));
    }

    #[test]
    fn power_examples() {
        let single = Polynomial::from_terms(2, [(vec![2, 0], q(3))]);
        let v = single.is_power_of_linear_form().unwrap();
        assert!(v.is_power());
        assert!(matches!(v, PowerVerdict::Power { rational_root: false, .. }));

        let two = Polynomial::from_terms(2, [(vec![2, 0], q(3)), (vec![0, 2], q(3))]);
        assert_eq!(two.is_power_of_linear_form().unwrap(), PowerVerdict::NotPower);

        // x0² + 2x0x1 + x1² = (x0 + x1)²
        let square = Polynomial::from_terms(
            2,
            [(vec![2, 0], q(1)), (vec![1, 1], q(2)), (vec![0, 2], q(1))],
        );
        let expected = Polynomial::linear(&[q(1), q(1)]).pow(2);
        assert_eq!(square, expected);
        assert!(matches!(
            square.is_power_of_linear_form().unwrap(),
            PowerVerdict::Power { rational_root: true, .. }
        ));

        assert_eq!(Polynomial::zero(3).is_power_of_linear_form().unwrap(), PowerVerdict::Zero);

        // x0*x1 has no pure power
        let cross = Polynomial::from_terms(2, [(vec![1, 1], q(1))]);
        assert_eq!(cross.is_power_of_linear_form().unwrap(), PowerVerdict::NotPower);

        // -8 x0^3 = (-2 x0)^3
        let neg = Polynomial::from_terms(1, [(vec![3], q(-8))]);
        assert!(matches!(
            neg.is_power_of_linear_form().unwrap(),
            PowerVerdict::Power { rational_root: true, .. }
        ));
    }

    #[test]
    fn text_format() {
        let p = Polynomial::from_terms(
            3,
            [
                (vec![0, 0, 3], BigRational::new(BigInt::from(-1), BigInt::from(2))),
                (vec![3, 0, 0], q(1)),
                (vec![1, 2, 0], q(2)),
            ],
        );
        let text = p.to_string();
        assert_eq!(text, "1*x0^3 + 2*x0^1*x1^2 + -1/2*x2^3");
        assert_eq!(Polynomial::parse(3, &text).unwrap(), p);
        assert_eq!(Polynomial::parse(2, "0").unwrap(), Polynomial::zero(2));
        assert!(Polynomial::parse(2, "1*y0^2").is_err());
    }

    fn arb_homogeneous() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((0u32..=3, -4i64..=4), 1..5).prop_map(|ts| {
            // degree-3 monomials in 3 variables: pick x_a^k x_b^(3-k)
            Polynomial::from_terms(
                3,
                ts.into_iter().map(|(k, c)| {
                    let mut e = vec![0u32; 3];
                    e[(k as usize) % 3] += k;
                    e[((k as usize) + 1) % 3] += 3 - k;
                    (e, q(c))
                }),
            )
        })
    }

    proptest! {
        // p(x + t v) - p(x) - t ∂_v p(x) is divisible by t², checked by
        // evaluating the t-polynomial's low coefficients exactly.
        #[test]
        fn derivative_is_first_taylor_term(
            p in arb_homogeneous(),
            x in prop::collection::vec(-3i64..=3, 3),
            v in prop::collection::vec(-3i64..=3, 3),
        ) {
            let x: Vec<BigRational> = x.into_iter().map(q).collect();
            let v: Vec<BigRational> = v.into_iter().map(q).collect();
            let dv = p.directional_derivative(&v).unwrap().evaluate(&x);
            // g(t) = p(x + t v) is a cubic in t; recover its coefficients from
            // values at t = 0, 1, -1, 2 and check g'(0) = dv.
            let g = |t: i64| {
                let pt: Vec<BigRational> = x.iter().zip(&v).map(|(a, b)| a + b * q(t)).collect();
                p.evaluate(&pt)
            };
            let (g0, g1, gm1, g2) = (g(0), g(1), g(-1), g(2));
            // For cubic a0 + a1 t + a2 t² + a3 t³: a1 = (-2g(-1) - 3g(0) + 6g(1) - g(2)) / 6
            let a1 = (q(-2) * gm1 - q(3) * g0.clone() + q(6) * g1 - g2) / q(6);
            prop_assert_eq!(a1, dv);
        }

        #[test]
        fn text_round_trip(p in arb_homogeneous()) {
            let text = p.to_string();
            let back = Polynomial::parse(3, &text).unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, p);
        }
    }
}
