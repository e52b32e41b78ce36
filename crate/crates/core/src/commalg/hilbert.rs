//! Hilbert series of graded quotients of polynomial rings.
//!
//! Every variable has cohomological degree 2, so series live in `u = s^2`.
//! Internally a series is `N(u) / (1 - u)^k` with `N(1) != 0` whenever
//! `k > 0`, which makes the representation canonical.

use std::fmt;

use serde::{Serialize, Serializer};

use super::polynomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    /// Numerator coefficients in `u`, lowest first, no trailing zeros.
    numerator_u: Vec<i64>,
    /// Power of `(1 - u)` in the denominator.
    pole_order: u32,
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|k| a.get(k).copied().unwrap_or(0) - b.get(k).copied().unwrap_or(0))
            .collect(),
    )
}

/// `1 - u^d`.
fn one_minus_power(d: usize) -> Vec<i64> {
    if d == 0 {
        return Vec::new();
    }
    let mut v = vec![0; d + 1];
    v[0] = 1;
    v[d] = -1;
    v
}

impl HilbertSeries {
    /// `numerator(u) / (1 - u)^pole_order`, brought to canonical form.
    pub fn new(numerator_u: Vec<i64>, pole_order: u32) -> Self {
        let mut num = trim(numerator_u);
        let mut k = pole_order;
        while k > 0 && !num.is_empty() && num.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - u): q_i = sum_{j <= i} n_j
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = 0;
            for &c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc);
            }
            num = trim(q);
            k -= 1;
        }
        if num.is_empty() {
            k = 0;
        }
        HilbertSeries {
            numerator_u: num,
            pole_order: k,
        }
    }

    /// The polynomial ring in `nvars` variables.
    pub fn polynomial_ring(nvars: usize) -> Self {
        HilbertSeries::new(vec![1], nvars as u32)
    }

    /// `(1 + s^2)^n`.
    pub fn cohomology_of_peterson(n: usize) -> Self {
        let num = (0..n).fold(vec![1], |acc, _| poly_mul(&acc, &[1, 1]));
        HilbertSeries::new(num, 0)
    }

    /// `(1 + s^2)^n / (1 - s^2)`.
    pub fn equivariant_cohomology_of_peterson(n: usize) -> Self {
        let num = (0..n).fold(vec![1], |acc, _| poly_mul(&acc, &[1, 1]));
        HilbertSeries::new(num, 1)
    }

    /// Multiplies by `prod (1 - s^{2 d})` over the given degrees in `u`.
    pub fn times_one_minus_powers(&self, u_degrees: &[u32]) -> Self {
        let num = u_degrees.iter().fold(self.numerator_u.clone(), |acc, &d| {
            poly_mul(&acc, &one_minus_power(d as usize))
        });
        HilbertSeries::new(num, self.pole_order)
    }

    /// Numerator coefficients in `s`.
    pub fn numerator_coeffs(&self) -> Vec<i64> {
        spread(&self.numerator_u)
    }

    /// Denominator coefficients in `s`.
    pub fn denominator_coeffs(&self) -> Vec<i64> {
        let den = (0..self.pole_order).fold(vec![1], |acc, _| poly_mul(&acc, &[1, -1]));
        spread(&den)
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    /// Coefficients of `s^0, s^1, ..., s^max_degree` in the power series.
    pub fn coefficients(&self, max_degree: usize) -> Vec<i64> {
        let terms_u = max_degree / 2 + 1;
        let mut series: Vec<i64> = (0..terms_u)
            .map(|k| self.numerator_u.get(k).copied().unwrap_or(0))
            .collect();
        for _ in 0..self.pole_order {
            // multiply by 1/(1-u): prefix sums
            for k in 1..terms_u {
                series[k] += series[k - 1];
            }
        }
        let mut out = vec![0; max_degree + 1];
        for (k, c) in series.into_iter().enumerate() {
            out[2 * k] = c;
        }
        out
    }

    /// Dimension of the quotient if finite.
    pub fn total_dimension(&self) -> Option<i64> {
        (self.pole_order == 0).then(|| self.numerator_u.iter().sum())
    }
}

fn spread(u_coeffs: &[i64]) -> Vec<i64> {
    let mut out = vec![0; (2 * u_coeffs.len()).saturating_sub(1)];
    for (k, &c) in u_coeffs.iter().enumerate() {
        out[2 * k] = c;
    }
    out
}

fn fmt_poly(coeffs: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.iter().all(|&c| c == 0) {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if first {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        let var = match k {
            0 => String::new(),
            1 => "s".into(),
            _ => format!("s^{k}"),
        };
        if mag == 1 && k > 0 {
            write!(f, "{sign}{var}")?;
        } else {
            write!(f, "{sign}{mag}{var}")?;
        }
        first = false;
    }
    Ok(())
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator_coeffs();
        if self.pole_order == 0 {
            return fmt_poly(&num, f);
        }
        f.write_str("(")?;
        fmt_poly(&num, f)?;
        f.write_str(")/(")?;
        fmt_poly(&self.denominator_coeffs(), f)?;
        f.write_str(")")
    }
}

impl Serialize for HilbertSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            numerator_coeffs: Vec<i64>,
            denominator_coeffs: Vec<i64>,
        }
        Wire {
            numerator_coeffs: self.numerator_coeffs(),
            denominator_coeffs: self.denominator_coeffs(),
        }
        .serialize(s)
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.iter().sum::<u32>(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(u)` of the series `N(u) / (1 - u)^nvars` of `k[vars] / (gens)`,
/// by the recursion `N(I + (m)) = N(I) - u^deg(m) N(I : m)`.
fn monomial_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    let pairwise_coprime = gens.iter().enumerate().all(|(a, g)| {
        gens[..a]
            .iter()
            .all(|h| g.iter().zip(h).all(|(x, y)| *x == 0 || *y == 0))
    });
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            poly_mul(&acc, &one_minus_power(g.iter().sum::<u32>() as usize))
        });
    }
    // split off the generator with the largest support
    let pivot_idx = (0..gens.len())
        .max_by_key(|&k| (gens[k].iter().filter(|&&e| e > 0).count(), k))
        .unwrap();
    let mut rest = gens.clone();
    let pivot = rest.remove(pivot_idx);
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|m| {
            m.iter()
                .zip(&pivot)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect()
        })
        .collect();
    let d = pivot.iter().sum::<u32>() as usize;
    let mut shifted = vec![0; d];
    shifted.extend(monomial_numerator(colon));
    poly_sub(&monomial_numerator(rest), &shifted)
}

/// Series of `k[z_1, ..., z_nvars] / (monomials)`, each variable of degree 2.
pub fn monomial_quotient_series(nvars: usize, monomials: &[Monomial]) -> HilbertSeries {
    HilbertSeries::new(monomial_numerator(monomials.to_vec()), nvars as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_cancels_common_factors() {
        // (1 - u^2) / (1 - u)^3 = (1 + u) / (1 - u)^2
        let a = HilbertSeries::new(vec![1, 0, -1], 3);
        let b = HilbertSeries::new(vec![1, 1], 2);
        assert_eq!(a, b);
        assert_eq!(
            HilbertSeries::new(vec![0], 4),
            HilbertSeries::new(vec![], 0)
        );
    }

    #[test]
    fn expected_peterson_series() {
        let h = HilbertSeries::equivariant_cohomology_of_peterson(2);
        assert_eq!(h.coefficients(6), vec![1, 0, 3, 0, 4, 0, 4]);
        assert_eq!(h.numerator_coeffs(), vec![1, 0, 2, 0, 1]);
        assert_eq!(h.denominator_coeffs(), vec![1, 0, -1]);
        assert_eq!(h.to_string(), "(1+2s^2+s^4)/(1-s^2)");
        let h1 = HilbertSeries::equivariant_cohomology_of_peterson(1);
        assert_eq!(h1.coefficients(4), vec![1, 0, 2, 0, 2]);
        assert_eq!(
            HilbertSeries::cohomology_of_peterson(3).total_dimension(),
            Some(8)
        );
    }

    #[test]
    fn monomial_quotients() {
        // k[x]/(x) = 1
        assert_eq!(
            monomial_quotient_series(1, &[vec![1]]),
            HilbertSeries::new(vec![1], 0)
        );
        // k[x,y]/(x^2, y^2) = (1+u)^2
        assert_eq!(
            monomial_quotient_series(2, &[vec![2, 0], vec![0, 2]]),
            HilbertSeries::cohomology_of_peterson(2)
        );
        // k[x,y]/(xy): 1 + 2u + 2u^2 + ...
        let h = monomial_quotient_series(2, &[vec![1, 1]]);
        assert_eq!(h.coefficients(6), vec![1, 0, 2, 0, 2, 0, 2]);
        // k[x,y,z]/(xy, yz, xz^2) against a direct count of standard monomials
        let gens = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 2]];
        let h = monomial_quotient_series(3, &gens);
        let coeffs = h.coefficients(12);
        for d in 0..=6u32 {
            let mut count = 0;
            for a in 0..=d {
                for b in 0..=d - a {
                    let m = [a, b, d - a - b];
                    if !gens.iter().any(|g| g.iter().zip(&m).all(|(x, y)| x <= y)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(coeffs[2 * d as usize], count, "degree {d}");
        }
    }
}
