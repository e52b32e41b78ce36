use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::tpoly::fmt_rational;

pub type Monomial = Vec<u32>;

/// Degree-compatible monomial orders. Variable 0 is the largest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    GradedLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| match self {
            MonomialOrder::GradedLex => a.cmp(b),
            // the last differing variable decides, smaller exponent wins
            MonomialOrder::GrevLex => a
                .iter()
                .zip(b)
                .rev()
                .find(|(x, y)| x != y)
                .map_or(Ordering::Equal, |(x, y)| y.cmp(x)),
        })
    }
}

/// A polynomial over exact rationals in `nvars` variables, each of
/// cohomological degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl GradedPolynomial {
    pub fn zero(nvars: usize) -> Self {
        GradedPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, BigRational::one())])
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Integer coefficients, e.g. `from_int_terms(2, &[(&[1, 0], 3)])` is `3 x1`.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigRational::from_integer((*c).into()))),
        )
    }

    pub(crate) fn add_term(&mut self, e: Monomial, c: BigRational) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree (each variable counted once) if all terms agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Degree in the cohomological grading where every variable has degree 2.
    pub fn cohomological_degree(&self) -> Option<u32> {
        self.homogeneous_degree().map(|d| 2 * d)
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    pub fn add(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, x)| (e.clone(), x * c)),
        )
    }

    pub fn mul(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    /// Sets variable `i` to zero.
    pub fn substitute_zero(&self, i: usize) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(e, _)| e[i] == 0)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Drops variable `i` (which must not occur).
    pub fn drop_variable(&self, i: usize) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            self.nvars - 1,
            self.terms.iter().map(|(e, c)| {
                assert_eq!(e[i], 0, "variable still occurs");
                let mut e = e.clone();
                e.remove(i);
                (e, c.clone())
            }),
        )
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { poly: self, names }
    }
}

struct Named<'a> {
    poly: &'a GradedPolynomial,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| MonomialOrder::GrevLex.cmp(b, a));
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
                    let name = self
                        .names
                        .get(i)
                        .cloned()
                        .unwrap_or_else(|| format!("z{}", i + 1));
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
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

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with(&[]), f)
    }
}

/// Sorted list of `(exponents, numerator, denominator)` triples.
impl Serialize for GradedPolynomial {
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
    fn orders_on_degree_two() {
        // x1 > x2 > t in both orders on linear terms
        let x1 = [1, 0, 0];
        let x2 = [0, 1, 0];
        let t = [0, 0, 1];
        for o in [MonomialOrder::GrevLex, MonomialOrder::GradedLex] {
            assert_eq!(o.cmp(&x1, &x2), Ordering::Greater);
            assert_eq!(o.cmp(&x2, &t), Ordering::Greater);
        }
        // x1*t vs x2^2: graded lex prefers x1*t, grevlex prefers x2^2
        let x1t = [1, 0, 1];
        let x2sq = [0, 2, 0];
        assert_eq!(MonomialOrder::GradedLex.cmp(&x1t, &x2sq), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&x1t, &x2sq), Ordering::Less);
    }

    #[test]
    fn arithmetic_and_display() {
        let names: Vec<String> = ["x1", "x2", "t"].iter().map(|s| s.to_string()).collect();
        let p = GradedPolynomial::from_int_terms(
            3,
            &[(&[2, 0, 0], 2), (&[1, 1, 0], -1), (&[1, 0, 1], -2)],
        );
        assert_eq!(p.display_with(&names).to_string(), "2*x1^2-x1*x2-2*x1*t");
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(p.cohomological_degree(), Some(4));
        let q = p.substitute_zero(2);
        assert_eq!(q.display_with(&names).to_string(), "2*x1^2-x1*x2");
        assert_eq!(q.drop_variable(2).nvars(), 2);
        assert!(p
            .add(&p.scale(&BigRational::from_integer((-1).into())))
            .is_zero());
    }
}
