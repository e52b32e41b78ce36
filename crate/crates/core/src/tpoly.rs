//! Univariate polynomials in `t` over exact rationals, the ring `H*(BS)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficients of powers of `t`, lowest first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TPolynomial {
    coeffs: Vec<BigRational>,
}

impl TPolynomial {
    pub fn zero() -> Self {
        TPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        TPolynomial { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = TPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        self.is_constant().then(|| self.coeff(0))
    }

    /// True for zero and for single-term polynomials `c t^k`.
    pub fn is_homogeneous(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TPolynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder of long division.
    pub fn div_rem(&self, divisor: &TPolynomial) -> Result<(TPolynomial, TPolynomial)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Integrity("division by the zero polynomial".into()))?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &q * c;
            }
            quot[k - dd] = q;
        }
        Ok((
            TPolynomial::from_coeffs(quot),
            TPolynomial::from_coeffs(rem),
        ))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &TPolynomial) -> Result<TPolynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Integrity(format!(
                "{divisor} does not divide {self} (remainder {r})"
            )));
        }
        Ok(q)
    }
}

impl Add for &TPolynomial {
    type Output = TPolynomial;
    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        TPolynomial::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &TPolynomial {
    type Output = TPolynomial;
    fn sub(self, rhs: &TPolynomial) -> TPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        TPolynomial::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &TPolynomial {
    type Output = TPolynomial;
    fn neg(self) -> TPolynomial {
        TPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TPolynomial {
    type Output = TPolynomial;
    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return TPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPolynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for TPolynomial {
            type Output = TPolynomial;
            fn $f(self, rhs: TPolynomial) -> TPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => fmt_rational(&mag),
                (_, true) => String::new(),
                (_, false) => format!("{}*", fmt_rational(&mag)),
            };
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            write!(f, "{sign}{body}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for TPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
