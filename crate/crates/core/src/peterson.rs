//! The GKM restriction model of the equivariant cohomology of the Peterson
//! variety.
//!
//! The ring is represented by its image in the direct sum of copies of `Q[t]`
//! indexed by the fixed points `w_K`, one for each subset `K` of the simple
//! roots. A class is a tuple of `t`-polynomials; ring operations are pointwise.
//! Fixed points are stored by bitmask and iterated in order of
//! `(|K|, mask)`, which refines inclusion.

use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::billey::{billey_localization, restricted_localization};
use crate::error::{Error, Result};
pub use crate::record::CertificationRecord;
use crate::roots::{CartanMatrix, RootSystemType};
use crate::tpoly::TPolynomial;
use crate::weyl::{format_word, SimpleSubset, Weyl, WeylElement};

/// The fixed point `w_K`.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub subset: SimpleSubset,
    pub element: WeylElement,
}

/// A class in the restriction model: one `t`-polynomial per fixed point.
#[derive(Debug, Clone)]
pub struct PetersonClass {
    cartan: Arc<CartanMatrix>,
    values: Vec<TPolynomial>,
}

impl PartialEq for PetersonClass {
    fn eq(&self, other: &Self) -> bool {
        *self.cartan == *other.cartan && self.values == other.values
    }
}

impl PetersonClass {
    pub fn constant(cartan: Arc<CartanMatrix>, c: TPolynomial) -> Self {
        let len = 1usize << cartan.rank();
        PetersonClass {
            cartan,
            values: vec![c; len],
        }
    }

    /// Value at `w_K`.
    pub fn value(&self, k: SimpleSubset) -> &TPolynomial {
        &self.values[k.mask() as usize]
    }

    /// Values indexed by subset mask.
    pub fn values(&self) -> &[TPolynomial] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(TPolynomial::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.cartan, &other.cartan) || *self.cartan == *other.cartan {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&TPolynomial, &TPolynomial) -> TPolynomial,
    ) -> Result<Self> {
        self.check_same(other)?;
        Ok(PetersonClass {
            cartan: self.cartan.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// Multiplication by an element of `Q[t]`.
    pub fn scale(&self, c: &TPolynomial) -> Self {
        PetersonClass {
            cartan: self.cartan.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Fixed points (as subsets) where the class does not vanish.
    pub fn support(&self) -> Vec<SimpleSubset> {
        (0..self.values.len() as u32)
            .map(SimpleSubset::from_mask)
            .filter(|k| !self.value(*k).is_zero())
            .collect()
    }
}

pub fn class_add(x: &PetersonClass, y: &PetersonClass) -> Result<PetersonClass> {
    x.add(y)
}

pub fn class_mul(x: &PetersonClass, y: &PetersonClass) -> Result<PetersonClass> {
    x.mul(y)
}

pub fn scalar_mul_by_t_poly(x: &PetersonClass, c: &TPolynomial) -> PetersonClass {
    x.scale(c)
}

/// The square matrix `(p_{v_K}(w_J))` with rows `K` and columns `J` in the
/// inclusion-refining order.
#[derive(Debug, Clone)]
pub struct BasisMatrix {
    pub order: Vec<SimpleSubset>,
    pub entries: Vec<Vec<TPolynomial>>,
}

impl BasisMatrix {
    pub fn is_upper_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(r, row)| row[..r].iter().all(TPolynomial::is_zero))
    }

    pub fn diagonal_nonzero(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(r, row)| !row[r].is_zero())
    }

    /// Entry `(K, J)` vanishes whenever `K` is not a subset of `J`.
    pub fn respects_inclusion(&self) -> bool {
        self.order.iter().zip(&self.entries).all(|(k, row)| {
            self.order
                .iter()
                .zip(row)
                .all(|(j, e)| k.is_subset(*j) || e.is_zero())
        })
    }

    pub fn entry(&self, k: SimpleSubset, j: SimpleSubset) -> &TPolynomial {
        let r = self
            .order
            .iter()
            .position(|x| *x == k)
            .expect("subset in range");
        let c = self
            .order
            .iter()
            .position(|x| *x == j)
            .expect("subset in range");
        &self.entries[r][c]
    }
}

/// Fixed points and cached Peterson Schubert classes for one root system.
#[derive(Debug)]
pub struct PetersonModel {
    label: String,
    weyl: Weyl,
    fixed_points: Vec<FixedPoint>,
    order: Vec<SimpleSubset>,
    simple_classes: Vec<OnceLock<PetersonClass>>,
    basis_classes: Vec<OnceLock<PetersonClass>>,
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, x| acc * x)
}

fn rational_string(c: &BigRational) -> String {
    crate::tpoly::fmt_rational(c)
}

impl PetersonModel {
    pub fn new(lie_type: &RootSystemType) -> Self {
        Self::from_cartan(lie_type.to_string(), lie_type.cartan_matrix())
    }

    pub fn from_cartan(label: impl Into<String>, cartan: CartanMatrix) -> Self {
        let n = cartan.rank();
        assert!(n < 31, "rank {n} is too large for the fixed-point model");
        let weyl = Weyl::new(cartan);
        let fixed_points = (0..1u32 << n)
            .map(|m| {
                let subset = SimpleSubset::from_mask(m);
                FixedPoint {
                    subset,
                    element: weyl.longest_element(subset),
                }
            })
            .collect();
        PetersonModel {
            label: label.into(),
            order: SimpleSubset::all_ordered(n),
            simple_classes: (0..n).map(|_| OnceLock::new()).collect(),
            basis_classes: (0..1usize << n).map(|_| OnceLock::new()).collect(),
            weyl,
            fixed_points,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weyl(&self) -> &Weyl {
        &self.weyl
    }

    pub fn cartan(&self) -> &CartanMatrix {
        self.weyl.cartan()
    }

    pub fn rank(&self) -> usize {
        self.weyl.rank()
    }

    pub fn fixed_point(&self, k: SimpleSubset) -> &FixedPoint {
        &self.fixed_points[k.mask() as usize]
    }

    pub fn fixed_points(&self) -> &[FixedPoint] {
        &self.fixed_points
    }

    /// Subsets in `(|K|, mask)` order.
    pub fn subset_order(&self) -> &[SimpleSubset] {
        &self.order
    }

    fn shared_cartan(&self) -> Arc<CartanMatrix> {
        self.weyl.shared_cartan().clone()
    }

    pub fn one(&self) -> PetersonClass {
        PetersonClass::constant(self.shared_cartan(), TPolynomial::one())
    }

    /// The class `t` (constant polynomial `t` at every fixed point).
    pub fn t(&self) -> PetersonClass {
        PetersonClass::constant(self.shared_cartan(), TPolynomial::t())
    }

    /// `p_v`: the restriction of `sigma_v` to every fixed point `w_K`.
    pub fn peterson_schubert_class(&self, v: &WeylElement) -> PetersonClass {
        PetersonClass {
            cartan: self.shared_cartan(),
            values: self
                .fixed_points
                .iter()
                .map(|fp| restricted_localization(&self.weyl, v, &fp.element))
                .collect(),
        }
    }

    /// Same class, computed by expanding `sigma_v(w_K)` in the simple roots
    /// and then substituting `alpha_i -> t`.
    pub fn peterson_schubert_class_expanded(&self, v: &WeylElement) -> PetersonClass {
        PetersonClass {
            cartan: self.shared_cartan(),
            values: self
                .fixed_points
                .iter()
                .map(|fp| billey_localization(&self.weyl, v, &fp.element).restrict_to_s())
                .collect(),
        }
    }

    /// `p_{s_i}`.
    pub fn p_simple(&self, i: usize) -> Result<&PetersonClass> {
        self.cartan().check_node(i)?;
        Ok(self.simple_classes[i].get_or_init(|| {
            let s = self.weyl.simple(i).expect("node checked");
            self.peterson_schubert_class(&s)
        }))
    }

    /// `p_{v_K}`.
    pub fn p_v(&self, k: SimpleSubset) -> &PetersonClass {
        self.basis_classes[k.mask() as usize]
            .get_or_init(|| self.peterson_schubert_class(&self.weyl.v_k(k)))
    }

    fn check_subset(&self, k: SimpleSubset) -> Result<()> {
        if k.is_subset(SimpleSubset::full(self.rank())) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{k} is not a set of nodes of a rank-{} system",
                self.rank()
            )))
        }
    }

    /// `c_{i,K}^J = (p_{s_i}(w_J) - p_{s_i}(w_K)) p_{v_K}(w_J) / p_{v_J}(w_J)`.
    pub fn monk_coefficient(
        &self,
        i: usize,
        k: SimpleSubset,
        j: SimpleSubset,
    ) -> Result<TPolynomial> {
        self.check_subset(k)?;
        self.check_subset(j)?;
        if !k.is_subset(j) || j.len() != k.len() + 1 {
            return Err(Error::Precondition(format!(
                "{j} must contain {k} plus exactly one node"
            )));
        }
        let ps = self.p_simple(i)?;
        let numerator = &(ps.value(j) - ps.value(k)) * self.p_v(k).value(j);
        let denominator = self.p_v(j).value(j);
        if denominator.is_zero() {
            return Err(Error::Integrity(format!("p_v(w_J) vanishes for J = {j}")));
        }
        numerator.div_exact(denominator)
    }

    /// Pointwise check of
    /// `p_{s_i} p_{v_K} = p_{s_i}(w_K) p_{v_K} + sum_J c_{i,K}^J p_{v_J}`
    /// over `J = K + {j}`, together with constancy and non-negativity of each
    /// coefficient.
    pub fn verify_monk(&self, i: usize, k: SimpleSubset) -> Result<CertificationRecord> {
        self.check_subset(k)?;
        let ps = self.p_simple(i)?;
        let pk = self.p_v(k);
        let lhs = ps.mul(pk)?;
        let mut rhs = pk.scale(ps.value(k));
        let mut coefficients = Vec::new();
        let mut coefficients_ok = true;
        for node in 0..self.rank() {
            if k.contains(node) {
                continue;
            }
            let j = k.insert(node);
            let c = self.monk_coefficient(i, k, j)?;
            let constant = c.is_constant();
            let non_negative = c.as_constant().is_some_and(|x| !x.is_negative());
            coefficients_ok &= constant && non_negative;
            rhs = rhs.add(&self.p_v(j).scale(&c))?;
            coefficients.push(json!({
                "J": j,
                "c": c,
                "constant": constant,
                "non_negative": non_negative,
            }));
        }
        let identity_holds = lhs == rhs;
        Ok(CertificationRecord::new(
            "monk",
            &self.label,
            json!({ "i": i + 1, "K": k }),
            json!({
                "p_si_at_wK": ps.value(k),
                "coefficients": coefficients,
                "identity_holds": identity_holds,
            }),
            identity_holds && coefficients_ok,
        ))
    }

    /// `|K|! / |R(v_K)|`.
    pub fn giambelli_coefficient(&self, k: SimpleSubset) -> (BigUint, BigRational) {
        let count = self.weyl.count_reduced_words(&self.weyl.v_k(k));
        let coeff = BigRational::new(
            BigInt::from(factorial(k.len())),
            BigInt::from(count.clone()),
        );
        (count, coeff)
    }

    /// `(|K|! / |R(v_K)|) p_{v_K} = prod_{i in K} p_{s_i}` for connected `K`.
    pub fn verify_giambelli(&self, k: SimpleSubset) -> Result<CertificationRecord> {
        self.check_subset(k)?;
        if !k.is_connected(self.cartan()) {
            return Err(Error::Precondition(format!(
                "{k} is not connected; use verify_disconnected_product"
            )));
        }
        let (count, coeff) = self.giambelli_coefficient(k);
        let lhs = self.p_v(k).scale(&TPolynomial::constant(coeff.clone()));
        let mut rhs = self.one();
        for i in k.nodes() {
            rhs = rhs.mul(self.p_simple(i)?)?;
        }
        let pass = lhs == rhs;
        Ok(CertificationRecord::new(
            "giambelli",
            &self.label,
            json!({ "K": k }),
            json!({
                "v_K": format_word(self.weyl.v_k(k).witness_word()),
                "reduced_word_count": count.to_string(),
                "coefficient": rational_string(&coeff),
            }),
            pass,
        ))
    }

    /// `p_{v_{J u K}} = p_{v_J} p_{v_K}` for connected, disjoint `J`, `K`
    /// whose union is disconnected. An empty `J` or `K` is allowed.
    pub fn verify_disconnected_product(
        &self,
        j: SimpleSubset,
        k: SimpleSubset,
    ) -> Result<CertificationRecord> {
        self.check_subset(j)?;
        self.check_subset(k)?;
        let cartan = self.cartan();
        if !j.is_connected(cartan) || !k.is_connected(cartan) {
            return Err(Error::Precondition(format!(
                "{j} and {k} must both be connected"
            )));
        }
        if !j.intersection(k).is_empty() {
            return Err(Error::Precondition(format!("{j} and {k} must be disjoint")));
        }
        let union = j.union(k);
        if !j.is_empty() && !k.is_empty() && union.is_connected(cartan) {
            return Err(Error::Precondition(format!("{union} is connected")));
        }
        let product = self.p_v(j).mul(self.p_v(k))?;
        let pass = *self.p_v(union) == product;
        Ok(CertificationRecord::new(
            "disconnected_product",
            &self.label,
            json!({ "J": j, "K": k }),
            json!({ "union": union }),
            pass,
        ))
    }

    /// `p_{v_K}` equals the product of `p_{v_C}` over the connected components
    /// `C` of `K`.
    pub fn verify_component_product(&self, k: SimpleSubset) -> Result<CertificationRecord> {
        self.check_subset(k)?;
        let comps = k.components(self.cartan());
        let mut product = self.one();
        for c in &comps {
            product = product.mul(self.p_v(*c))?;
        }
        let pass = *self.p_v(k) == product;
        Ok(CertificationRecord::new(
            "component_product",
            &self.label,
            json!({ "K": k }),
            json!({ "components": comps }),
            pass,
        ))
    }

    pub fn basis_matrix(&self) -> BasisMatrix {
        let entries = self
            .order
            .iter()
            .map(|&k| {
                let p = self.p_v(k);
                self.order.iter().map(|&j| p.value(j).clone()).collect()
            })
            .collect();
        BasisMatrix {
            order: self.order.clone(),
            entries,
        }
    }

    /// `sum_j <alpha_i, alpha_j> p_{s_i} p_{s_j} - 2 t p_{s_i} = 0` for each `i`,
    /// checked at every fixed point.
    pub fn verify_quadratic_relations(&self) -> Result<CertificationRecord> {
        let n = self.rank();
        let two_t = TPolynomial::from_int(2) * TPolynomial::t();
        let mut per_node = Vec::new();
        let mut pass = true;
        for i in 0..n {
            let pi = self.p_simple(i)?;
            let mut rel = pi.scale(&-&two_t);
            for j in 0..n {
                let a = self.cartan().get(i, j);
                if a != 0 {
                    rel = rel.add(&pi.mul(self.p_simple(j)?)?.scale(&TPolynomial::from_int(a)))?;
                }
            }
            let nonzero: Vec<SimpleSubset> = rel.support();
            pass &= nonzero.is_empty();
            per_node.push(json!({ "i": i + 1, "nonzero_at": nonzero }));
        }
        Ok(CertificationRecord::new(
            "quadratic",
            &self.label,
            json!({ "fixed_points": 1usize << n }),
            json!({ "relations": per_node }),
            pass,
        ))
    }

    /// For `2d <= cutoff_degree`, the dimension over `Q` of the span of all
    /// degree-`2d` monomials in `t, p_{s_1}, .., p_{s_n}`.
    pub fn image_graded_dimensions(&self, cutoff_degree: usize) -> Result<Vec<usize>> {
        if !cutoff_degree.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "cutoff degree {cutoff_degree} is odd"
            )));
        }
        let mut generators = vec![self.t()];
        for i in 0..self.rank() {
            generators.push(self.p_simple(i)?.clone());
        }
        // monomials of degree d as (class, index of last generator used)
        let mut layer: Vec<(PetersonClass, usize)> = vec![(self.one(), 0)];
        let mut dims = Vec::new();
        for d in 0..=cutoff_degree / 2 {
            if d > 0 {
                let mut next = Vec::new();
                for (m, last) in &layer {
                    for (g, gen) in generators.iter().enumerate().skip(*last) {
                        next.push((m.mul(gen)?, g));
                    }
                }
                layer = next;
            }
            let vectors = layer.iter().map(|(m, _)| {
                m.values
                    .iter()
                    .flat_map(|v| (0..=d).map(move |k| v.coeff(k)))
                    .collect::<Vec<_>>()
            });
            dims.push(rank_over_q(vectors));
        }
        Ok(dims)
    }
}

/// Rank of a family of vectors, by incremental row reduction.
fn rank_over_q(vectors: impl Iterator<Item = Vec<BigRational>>) -> usize {
    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for mut v in vectors {
        for (col, row) in &pivots {
            if !v[*col].is_zero() {
                let f = &v[*col] / &row[*col];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(col) = v.iter().position(|x| !x.is_zero()) {
            pivots.push((col, v));
        }
    }
    pivots.len()
}
