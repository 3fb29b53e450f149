//! Laurent polynomials in one variable `t` with integer coefficients.
//!
//! A value is stored as `t^shift * (c_0 + c_1 t + ... + c_k t^k)` with
//! `c_0 != 0` and `c_k != 0`. The zero polynomial has no coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{ExactDiv, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    shift: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    /// Builds `t^shift * Σ coeffs[i] t^i`, normalizing zeros away.
    pub fn new(shift: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Laurent { shift, coeffs };
        p.normalize();
        p
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        Laurent::new(exp, vec![coeff.into()])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Laurent::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Laurent::monomial(c, 0)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.shift = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.shift += lead_zeros as i64;
        }
    }

    /// Lowest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.shift
    }

    /// Highest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn max_exp(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.shift + self.coeffs.len() as i64 - 1
        }
    }

    /// Coefficients starting at `t^min_exp`, ascending.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.shift;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        Laurent {
            shift: self.shift + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// True if the polynomial has no negative powers.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.is_empty() || self.shift >= 0
    }

    /// Evaluates at a non-zero rational point (zero is allowed when no negative powers occur).
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        if self.coeffs.is_empty() {
            return Some(BigRational::zero());
        }
        if t.is_zero() && self.shift < 0 {
            return None;
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + BigRational::from_integer(c.clone());
        }
        Some(acc * pow_rat(t, self.shift))
    }

    /// Evaluates at an integer point, failing if the result is not an integer.
    pub fn eval_int(&self, t: &BigInt) -> Option<BigInt> {
        let v = self.eval(&BigRational::from_integer(t.clone()))?;
        v.is_integer().then(|| v.to_integer())
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
        }
        acc * t.powi(self.shift as i32)
    }
}

fn pow_rat(t: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { t.recip() } else { t.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let exp = self.shift + i as i64;
            let mag = c.abs();
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
            let unit = mag.is_one();
            match exp {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}*t")?,
                _ if unit => write!(f, "t^{exp}")?,
                _ => write!(f, "{mag}*t^{exp}")?,
            }
        }
        Ok(())
    }
}

impl Add for Laurent {
    type Output = Laurent;

    fn add(self, rhs: Laurent) -> Laurent {
        if self.coeffs.is_empty() {
            return rhs;
        }
        if rhs.coeffs.is_empty() {
            return self;
        }
        let lo = self.shift.min(rhs.shift);
        let hi = self.max_exp().max(rhs.max_exp());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        Laurent::new(lo, coeffs)
    }
}

impl Neg for Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent {
            shift: self.shift,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for Laurent {
    type Output = Laurent;

    fn sub(self, rhs: Laurent) -> Laurent {
        self + (-rhs)
    }
}

impl Mul for Laurent {
    type Output = Laurent;

    fn mul(self, rhs: Laurent) -> Laurent {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Laurent::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Laurent::new(self.shift + rhs.shift, out)
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::constant(1)
    }
}

impl Ring for Laurent {
    const TAG: &'static str = "laurent";

    fn from_i64(v: i64) -> Self {
        Laurent::constant(v)
    }
}

impl ExactDiv for Laurent {
    /// Division in `Z[t, 1/t]`: powers of `t` are units, so both operands are
    /// reduced to polynomials with non-zero constant term before long division.
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.coeffs.is_empty() {
            return None;
        }
        if self.coeffs.is_empty() {
            return Some(Laurent::default());
        }
        let den = &divisor.coeffs;
        let mut rem = self.coeffs.clone();
        if rem.len() < den.len() {
            return None;
        }
        let qlen = rem.len() - den.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        let dlead = den.last().expect("non-empty");
        for k in (0..qlen).rev() {
            let top = &rem[k + den.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::new(self.shift - divisor.shift, quot))
    }
}
