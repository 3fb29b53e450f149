//! Integer polynomials in two commuting variables `T` and `H`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::Ring;

/// Sparse map `(deg_T, deg_H) -> coefficient`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn monomial(coeff: impl Into<BigInt>, deg_t: u32, deg_h: u32) -> Self {
        let mut p = BiPoly::default();
        p.add_term(deg_t, deg_h, coeff.into());
        p
    }

    pub fn var_t() -> Self {
        BiPoly::monomial(1, 1, 0)
    }

    pub fn var_h() -> Self {
        BiPoly::monomial(1, 0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    fn add_term(&mut self, dt: u32, dh: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((dt, dh)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(dt, dh));
        }
    }

    /// Terms as `((deg_T, deg_H), coeff)` in lexicographic degree order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, deg_t: u32, deg_h: u32) -> BigInt {
        self.terms.get(&(deg_t, deg_h)).cloned().unwrap_or_default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = BiPoly::default();
        for ((dt, dh), c) in terms {
            p.add_term(dt, dh, c);
        }
        p
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_h(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Degree at most one in each variable separately.
    pub fn is_multilinear(&self) -> bool {
        self.degree_t() <= 1 && self.degree_h() <= 1
    }

    /// Exchanges the roles of `T` and `H`.
    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(t, h), c)| ((h, t), c.clone())).collect(),
        }
    }

    pub fn eval(&self, t: &BigInt, h: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(dt, dh), c)| c * num_traits::pow(t.clone(), dt as usize) * num_traits::pow(h.clone(), dh as usize))
            .sum()
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // constant first, then by total degree, matching the usual hand-written order
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(t, h)| (t + h, std::cmp::Reverse(t), h));
        for (dt, dh) in keys {
            let c = &self.terms[&(dt, dh)];
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            let mut mono = String::new();
            for (name, d) in [("T", dt), ("H", dh)] {
                match d {
                    0 => {}
                    1 => mono.push_str(name),
                    _ => mono.push_str(&format!("{name}^{d}")),
                }
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for BiPoly {
    type Output = BiPoly;

    fn add(mut self, rhs: BiPoly) -> BiPoly {
        for ((dt, dh), c) in rhs.terms {
            self.add_term(dt, dh, c);
        }
        self
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: BiPoly) -> BiPoly {
        self + (-rhs)
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(at, ah), a) in &self.terms {
            for (&(bt, bh), b) in &rhs.terms {
                out.add_term(at + bt, ah + bh, a * b);
            }
        }
        out
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::constant(1)
    }
}

impl Ring for BiPoly {
    const TAG: &'static str = "bipoly";

    fn from_i64(v: i64) -> Self {
        BiPoly::constant(v)
    }
}
