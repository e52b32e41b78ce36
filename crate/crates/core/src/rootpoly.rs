//! Polynomials in the simple roots with exact rational coefficients, the ring
//! `H*(BT)`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::roots::RootVector;
use crate::tpoly::{fmt_rational, TPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RootPolynomial {
    pub fn zero(nvars: usize) -> Self {
        RootPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(vec![0; nvars], BigRational::one());
        p
    }

    /// The linear form `sum c_i alpha_i`.
    pub fn from_root(root: &RootVector) -> Self {
        let n = root.0.len();
        let mut p = Self::zero(n);
        for (i, &c) in root.0.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, BigRational::from_integer(c.into()));
            }
        }
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common total degree of all terms, or `None` if zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn has_non_negative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn add_assign(&mut self, other: &RootPolynomial) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// Product with the linear form of `root`.
    pub fn mul_root(&self, root: &RootVector) -> RootPolynomial {
        let mut out = RootPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            for (i, &r) in root.0.iter().enumerate() {
                if r == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] += 1;
                out.add_term(e2, c * BigRational::from_integer(r.into()));
            }
        }
        out
    }

    pub fn mul(&self, other: &RootPolynomial) -> RootPolynomial {
        let mut out = RootPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Image under `alpha_i -> t` for every `i`.
    pub fn restrict_to_s(&self) -> TPolynomial {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (e, c) in &self.terms {
            let d = e.iter().sum::<u32>() as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigRational::zero());
            }
            coeffs[d] += c;
        }
        TPolynomial::from_coeffs(coeffs)
    }
}

/// Substitutes `alpha_i -> t` for every `i`.
pub fn restrict_to_s(p: &RootPolynomial) -> TPolynomial {
    p.restrict_to_s()
}

impl fmt::Display for RootPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest degree first, then lexicographically descending
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if k == 0 {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("a{}", i + 1)
                    } else {
                        format!("a{}^{x}", i + 1)
                    }
                })
                .collect();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => fmt_rational(&mag),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", fmt_rational(&mag), mono.join("*")),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// Sorted list of `(exponents, numerator, denominator)` triples.
impl Serialize for RootPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.numer().to_string(), c.denom().to_string()))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms_and_restriction() {
        let p = RootPolynomial::from_root(&RootVector(vec![1, 2]));
        assert_eq!(p.to_string(), "a1+2*a2");
        assert_eq!(
            p.restrict_to_s(),
            TPolynomial::from_int(3) * TPolynomial::t()
        );
        assert_eq!(RootPolynomial::zero(2).restrict_to_s(), TPolynomial::zero());
        let sq = p.mul(&p);
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert_eq!(
            sq.restrict_to_s(),
            TPolynomial::monomial(BigRational::from_integer(9.into()), 2)
        );
        assert_eq!(p.mul_root(&RootVector(vec![1, 2])), sq);
    }

    #[test]
    fn serialization_is_sorted_triples() {
        let p = RootPolynomial::from_root(&RootVector(vec![4, -2]));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[[[0,1],"-2","1"],[[1,0],"4","1"]]"#);
    }
}
