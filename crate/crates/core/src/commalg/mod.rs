//! Exact commutative algebra for the quadric presentation: the ideals built
//! from a Cartan matrix, Gröbner bases, Hilbert series, and the
//! regular-sequence and zero-set criteria.

mod groebner;
mod hilbert;
mod polynomial;

pub use groebner::{groebner_basis, leading_monomials, reduce, s_poly};
pub use hilbert::{monomial_quotient_series, HilbertSeries};
pub use polynomial::{GradedPolynomial, Monomial, MonomialOrder};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::CartanMatrix;
use crate::weyl::SimpleSubset;

/// An ideal given by generators, together with the names of its ring variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ideal {
    variables: Vec<String>,
    generators: Vec<GradedPolynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(variables: Vec<String>, generators: Vec<GradedPolynomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != variables.len() {
                return Err(Error::Precondition(format!(
                    "generator has {} variables, ring has {}",
                    g.nvars(),
                    variables.len()
                )));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            variables,
            generators,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn generators(&self) -> &[GradedPolynomial] {
        &self.generators
    }

    pub fn groebner_basis(&self, order: MonomialOrder) -> Vec<GradedPolynomial> {
        groebner_basis(&self.generators, order)
    }

    pub fn display_generators(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.display_with(&self.variables).to_string())
            .collect()
    }
}

fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(c.into())
}

/// The quadric generator `sum_j a[i][j] x_i x_j - 2 t x_i` over `(x_1..x_n, t)`.
fn theta(cartan: &CartanMatrix, i: usize) -> GradedPolynomial {
    let n = cartan.rank();
    let mut p = GradedPolynomial::zero(n + 1);
    for j in 0..n {
        let mut e = vec![0; n + 1];
        e[i] += 1;
        e[j] += 1;
        p.add_term(e, int(cartan.get(i, j)));
    }
    let mut e = vec![0; n + 1];
    e[i] = 1;
    e[n] = 1;
    p.add_term(e, int(-2));
    p
}

/// The ideal `J` in `Q[x_1, .., x_n, t]` generated by
/// `sum_j <alpha_i, alpha_j> x_i x_j - 2 t x_i` for each node `i`.
pub fn build_ideal_j(cartan: &CartanMatrix) -> Ideal {
    let n = cartan.rank();
    let mut vars = x_names(n);
    vars.push("t".into());
    Ideal::new(vars, (0..n).map(|i| theta(cartan, i)).collect()).expect("generators match the ring")
}

/// `J` with `t = 0`, as an ideal of `Q[x_1, .., x_n]`.
pub fn build_ideal_jcheck(cartan: &CartanMatrix) -> Ideal {
    let n = cartan.rank();
    let gens = (0..n)
        .map(|i| theta(cartan, i).substitute_zero(n).drop_variable(n))
        .collect();
    Ideal::new(x_names(n), gens).expect("generators match the ring")
}

/// Hilbert series of the quotient by `ideal`, via the leading-term ideal of a
/// Gröbner basis under `order`.
pub fn hilbert_series_of_quotient_with(ideal: &Ideal, order: MonomialOrder) -> HilbertSeries {
    let gb = ideal.groebner_basis(order);
    monomial_quotient_series(ideal.nvars(), &leading_monomials(&gb, order))
}

/// Hilbert series of the quotient, using graded reverse lexicographic order.
pub fn hilbert_series_of_quotient(ideal: &Ideal) -> HilbertSeries {
    hilbert_series_of_quotient_with(ideal, MonomialOrder::GrevLex)
}

/// Both sides of the Hilbert-series criterion for a regular sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularSequenceCertificate {
    pub quotient_series: HilbertSeries,
    pub expected_series: HilbertSeries,
    pub regular: bool,
}

/// Decides whether homogeneous `polys` of positive degree form a regular
/// sequence in `Q[z_1, .., z_nvars]`: true iff the quotient series equals
/// `F(ring) * prod (1 - s^deg)`.
pub fn is_regular_sequence(
    nvars: usize,
    polys: &[GradedPolynomial],
) -> Result<RegularSequenceCertificate> {
    let mut degrees = Vec::with_capacity(polys.len());
    for (k, p) in polys.iter().enumerate() {
        if p.nvars() != nvars {
            return Err(Error::Precondition(format!(
                "element {k} lives in a different ring"
            )));
        }
        match p.homogeneous_degree() {
            Some(d) if d > 0 => degrees.push(d),
            Some(_) => {
                return Err(Error::Precondition(format!("element {k} has degree zero")));
            }
            None if p.is_zero() => {
                return Err(Error::Precondition(format!("element {k} is zero")));
            }
            None => return Err(Error::NonHomogeneous(format!("element {k}: {p}"))),
        }
    }
    let names: Vec<String> = (1..=nvars).map(|i| format!("z{i}")).collect();
    let ideal = Ideal::new(names, polys.to_vec())?;
    let quotient_series = hilbert_series_of_quotient(&ideal);
    let expected_series = HilbertSeries::polynomial_ring(nvars).times_one_minus_powers(&degrees);
    let regular = quotient_series == expected_series;
    Ok(RegularSequenceCertificate {
        quotient_series,
        expected_series,
        regular,
    })
}

/// For a homogeneous ideal: the common zero set is the origin iff the
/// leading-term ideal contains a pure power of every variable.
pub fn zero_set_is_origin(ideal: &Ideal) -> Result<bool> {
    for (k, g) in ideal.generators().iter().enumerate() {
        if g.homogeneous_degree().is_none() {
            return Err(Error::NonHomogeneous(format!("generator {k}")));
        }
    }
    let order = MonomialOrder::GrevLex;
    let lms = leading_monomials(&ideal.groebner_basis(order), order);
    Ok((0..ideal.nvars()).all(|v| {
        lms.iter()
            .any(|m| m[v] > 0 && m.iter().enumerate().all(|(i, &e)| i == v || e == 0))
    }))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}

/// Leading principal minors `det A[0..k, 0..k]` for `k = 1..n`.
pub fn leading_principal_minors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=rows.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = rows[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// All leading principal minors positive.
///
/// For a Cartan matrix `A` the symmetrization `D A` (with `D` a positive
/// diagonal symmetrizer) has leading minors `det(D_k) det(A_k)`, so testing
/// the minors of `A` itself decides positive definiteness of `D A`.
pub fn is_positive_definite(rows: &[Vec<i64>]) -> Result<bool> {
    let n = rows.len();
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NonSquare {
                rows: n,
                row: r,
                len: row.len(),
            });
        }
    }
    Ok(leading_principal_minors(rows)
        .iter()
        .all(|m| m.is_positive()))
}

/// Every principal submatrix of the Cartan matrix is positive definite, so
/// the quadrics of `J` with `t = 0` have only the trivial common zero.
pub fn zero_set_via_minors(cartan: &CartanMatrix) -> bool {
    let n = cartan.rank();
    (1..1u32 << n).all(|mask| {
        let nodes: Vec<usize> = SimpleSubset::from_mask(mask).nodes().collect();
        is_positive_definite(&cartan.principal_submatrix(&nodes)).unwrap_or(false)
    })
}
