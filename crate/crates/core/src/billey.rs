//! Localization of equivariant Schubert classes at torus-fixed points.
//!
//! For a reduced word `w = s_{b_1} ... s_{b_m}` let
//! `r(k, w) = s_{b_1} ... s_{b_{k-1}}(alpha_{b_k})`. The value `sigma_v(w)` is
//! the sum, over all positions `j_1 < ... < j_l` whose letters spell a reduced
//! word of `v`, of the products `r(j_1, w) ... r(j_l, w)`.
//!
//! Embeddings are enumerated right to left: the last chosen letter must be a
//! right descent of `v`, and what remains to be spelled is `v s`. Partial sums
//! are memoized on `(position, remaining element)`, so each embedding is
//! counted exactly once without visiting dead subsets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use crate::rootpoly::{restrict_to_s, RootPolynomial};
use crate::roots::RootVector;
pub use crate::tpoly::TPolynomial;
use crate::weyl::{Action, Weyl, WeylElement};

/// The roots `r(k, w)` for each position of a reduced word, all positive.
pub fn inversion_roots(weyl: &Weyl, word: &[usize]) -> Vec<RootVector> {
    let n = weyl.rank();
    let mut prefix = Action::identity(n);
    let mut out = Vec::with_capacity(word.len());
    for &b in word {
        let r = prefix.column(b);
        assert!(
            r.is_positive(),
            "r(k, w) = {r} is not a positive root; word is not reduced"
        );
        out.push(r);
        prefix = prefix.mul_simple_right(weyl.cartan(), b);
    }
    out
}

/// Values the localization can be accumulated in.
trait Accumulator: Clone {
    fn zero(n: usize) -> Self;
    fn one(n: usize) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul_root(&self, root: &RootVector) -> Self;
}

impl Accumulator for RootPolynomial {
    fn zero(n: usize) -> Self {
        RootPolynomial::zero(n)
    }
    fn one(n: usize) -> Self {
        RootPolynomial::one(n)
    }
    fn add_assign(&mut self, other: &Self) {
        RootPolynomial::add_assign(self, other)
    }
    fn mul_root(&self, root: &RootVector) -> Self {
        RootPolynomial::mul_root(self, root)
    }
}

/// Coefficient of `t^l` after `alpha_i -> t`: each root factor becomes its height.
#[derive(Clone)]
struct Restricted(BigInt);

impl Accumulator for Restricted {
    fn zero(_: usize) -> Self {
        Restricted(BigInt::zero())
    }
    fn one(_: usize) -> Self {
        Restricted(BigInt::one())
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }
    fn mul_root(&self, root: &RootVector) -> Self {
        Restricted(&self.0 * BigInt::from(root.height()))
    }
}

struct Localizer<'a, A> {
    weyl: &'a Weyl,
    word: &'a [usize],
    roots: Vec<RootVector>,
    memo: HashMap<(usize, Action), A>,
}

impl<'a, A: Accumulator> Localizer<'a, A> {
    fn new(weyl: &'a Weyl, word: &'a [usize]) -> Self {
        Localizer {
            weyl,
            word,
            roots: inversion_roots(weyl, word),
            memo: HashMap::new(),
        }
    }

    /// Sum over embeddings of reduced words of `rest` into the first `k` letters.
    fn eval(&mut self, k: usize, rest: &Action, rest_len: usize) -> A {
        let n = self.weyl.rank();
        if rest_len == 0 {
            return A::one(n);
        }
        if rest_len > k {
            return A::zero(n);
        }
        let key = (k, rest.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = self.eval(k - 1, rest, rest_len);
        let s = self.word[k - 1];
        if rest.has_right_descent(s) {
            let shorter = rest.mul_simple_right(self.weyl.cartan(), s);
            let tail = self.eval(k - 1, &shorter, rest_len - 1);
            total.add_assign(&tail.mul_root(&self.roots[k - 1]));
        }
        self.memo.insert(key, total.clone());
        total
    }
}

fn check_reduced(weyl: &Weyl, word: &[usize]) -> Result<()> {
    let w = weyl.from_word(word)?;
    if w.length() != word.len() {
        return Err(Error::Precondition(format!(
            "word {} is not reduced",
            crate::weyl::format_word(word)
        )));
    }
    Ok(())
}

/// `sigma_v(w)` in `H*(BT)`, using the witness word of `w`.
pub fn billey_localization(weyl: &Weyl, v: &WeylElement, w: &WeylElement) -> RootPolynomial {
    let mut loc = Localizer::<RootPolynomial>::new(weyl, w.witness_word());
    loc.eval(w.length(), v.action(), v.length())
}

/// `sigma_v(w)` computed from an explicitly supplied reduced word of `w`.
pub fn billey_localization_with_word(
    weyl: &Weyl,
    v: &WeylElement,
    word: &[usize],
) -> Result<RootPolynomial> {
    check_reduced(weyl, word)?;
    let mut loc = Localizer::<RootPolynomial>::new(weyl, word);
    Ok(loc.eval(word.len(), v.action(), v.length()))
}

/// `pi(sigma_v(w))` in `H*(BS)`.
///
/// Applies `alpha_i -> t` to each factor before summing, which is the same
/// thing as [`restrict_to_s`] of [`billey_localization`] because the
/// substitution is a ring homomorphism; it avoids expanding multivariate
/// products.
pub fn restricted_localization(weyl: &Weyl, v: &WeylElement, w: &WeylElement) -> TPolynomial {
    let mut loc = Localizer::<Restricted>::new(weyl, w.witness_word());
    let c = loc.eval(w.length(), v.action(), v.length()).0;
    TPolynomial::monomial(BigRational::from_integer(c), v.length())
}
