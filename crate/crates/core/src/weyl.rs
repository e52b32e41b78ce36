//! Weyl group elements, reduced words and parabolic longest elements.
//!
//! An element is stored canonically as its action on simple-root coordinates:
//! column `j` of the matrix holds the coordinates of `w(alpha_j)`. Two elements
//! are equal exactly when their matrices are.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::roots::{positive_roots, reflect, CartanMatrix, RootVector};

/// Default cap on the length of elements whose reduced words are enumerated.
pub const DEFAULT_REDUCED_WORD_CAP: usize = 16;

/// Row-major integer matrix of the action on simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    n: usize,
    data: Vec<i64>,
}

impl Action {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Action { n, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == Action::identity(self.n)
    }

    /// Coordinates of `w(alpha_j)`.
    pub fn column(&self, j: usize) -> RootVector {
        RootVector((0..self.n).map(|r| self.get(r, j)).collect())
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        RootVector(
            (0..self.n)
                .map(|r| (0..self.n).map(|c| self.get(r, c) * v.0[c]).sum())
                .collect(),
        )
    }

    pub fn mul(&self, other: &Action) -> Action {
        let n = self.n;
        let mut data = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let x = self.get(r, k);
                if x == 0 {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += x * other.get(k, c);
                }
            }
        }
        Action { n, data }
    }

    /// `self * s_j`.
    pub fn mul_simple_right(&self, cartan: &CartanMatrix, j: usize) -> Action {
        let n = self.n;
        let mut data = self.data.clone();
        for r in 0..n {
            let xj = self.get(r, j);
            for i in 0..n {
                data[r * n + i] = if i == j {
                    -xj
                } else {
                    self.get(r, i) - cartan.get(i, j) * xj
                };
            }
        }
        Action { n, data }
    }

    /// `s_j * self`.
    pub fn mul_simple_left(&self, cartan: &CartanMatrix, j: usize) -> Action {
        let n = self.n;
        let mut data = self.data.clone();
        for c in 0..n {
            let shift: i64 = (0..n).map(|k| cartan.get(k, j) * self.get(k, c)).sum();
            data[j * n + c] -= shift;
        }
        Action { n, data }
    }

    /// `s` is a right descent iff `w(alpha_s)` is a negative root.
    #[inline]
    pub fn has_right_descent(&self, s: usize) -> bool {
        (0..self.n)
            .map(|r| self.get(r, s))
            .find(|&x| x != 0)
            .is_some_and(|x| x < 0)
    }
}

/// A Weyl group element with its length and one reduced word.
#[derive(Debug, Clone)]
pub struct WeylElement {
    action: Action,
    length: usize,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// A reduced word for the element (0-based nodes).
    pub fn witness_word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn has_right_descent(&self, s: usize) -> bool {
        self.action.has_right_descent(s)
    }

    /// Nodes appearing in any reduced word.
    pub fn support(&self) -> SimpleSubset {
        SimpleSubset::from_nodes(self.word.iter().copied())
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&format_word(&self.word))
        }
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_word(&self.word))
    }
}

/// Formats a 0-based word as comma-separated 1-based labels, e.g. `"1,2,1"`.
pub fn format_word(word: &[usize]) -> String {
    word.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses comma-separated 1-based labels into a 0-based word.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let label: usize = tok.trim().parse().map_err(|_| Error::Parse {
                what: "word",
                input: s.to_string(),
                reason: format!("{tok:?} is not a node label"),
            })?;
            label.checked_sub(1).ok_or_else(|| Error::Parse {
                what: "word",
                input: s.to_string(),
                reason: "node labels start at 1".into(),
            })
        })
        .collect()
}

/// A subset of the simple roots, stored as a bitmask over 0-based nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleSubset(u32);

impl SimpleSubset {
    pub const EMPTY: SimpleSubset = SimpleSubset(0);

    pub fn from_mask(mask: u32) -> Self {
        SimpleSubset(mask)
    }

    pub fn from_nodes(nodes: impl IntoIterator<Item = usize>) -> Self {
        SimpleSubset(nodes.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn full(n: usize) -> Self {
        SimpleSubset(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        SimpleSubset(self.0 | 1 << i)
    }

    pub fn union(self, other: Self) -> Self {
        SimpleSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SimpleSubset(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Nodes in ascending order.
    pub fn nodes(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1)
    }

    /// Connected components of the Dynkin subdiagram on this subset, each
    /// listed in order of its smallest node.
    pub fn components(self, cartan: &CartanMatrix) -> Vec<SimpleSubset> {
        let mut left = self.0;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in SimpleSubset(left).nodes() {
                    if comp >> j & 1 == 0 && cartan.adjacent(i, j) {
                        comp |= 1 << j;
                        stack.push(j);
                    }
                }
            }
            left &= !comp;
            out.push(SimpleSubset(comp));
        }
        out
    }

    /// The empty set counts as connected.
    pub fn is_connected(self, cartan: &CartanMatrix) -> bool {
        self.components(cartan).len() <= 1
    }

    /// All subsets of `{0, .., n-1}` ordered by size, then by mask value.
    /// This order refines inclusion.
    pub fn all_ordered(n: usize) -> Vec<SimpleSubset> {
        let mut all: Vec<_> = (0..1u32 << n).map(SimpleSubset).collect();
        all.sort_by_key(|s| (s.len(), s.0));
        all
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.nodes().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl Serialize for SimpleSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The Weyl group of a Cartan matrix.
#[derive(Debug, Clone)]
pub struct Weyl {
    cartan: Arc<CartanMatrix>,
}

impl Weyl {
    pub fn new(cartan: CartanMatrix) -> Self {
        Weyl {
            cartan: Arc::new(cartan),
        }
    }

    pub fn from_shared(cartan: Arc<CartanMatrix>) -> Self {
        Weyl { cartan }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn shared_cartan(&self) -> &Arc<CartanMatrix> {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            action: Action::identity(self.rank()),
            length: 0,
            word: Vec::new(),
        }
    }

    pub fn simple(&self, i: usize) -> Result<WeylElement> {
        self.from_word(&[i])
    }

    /// The element `s_{w[0]} s_{w[1]} ...`.
    ///
    /// A reduced input is kept as the witness word; otherwise the witness is
    /// the canonical reduced word from [`Weyl::element`].
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        for &i in word {
            self.cartan.check_node(i)?;
        }
        let mut action = Action::identity(self.rank());
        let mut reduced = true;
        for &s in word {
            if action.has_right_descent(s) {
                reduced = false;
            }
            action = action.mul_simple_right(&self.cartan, s);
        }
        if reduced {
            Ok(WeylElement {
                action,
                length: word.len(),
                word: word.to_vec(),
            })
        } else {
            Ok(self.element(action))
        }
    }

    /// Wraps an action matrix, computing length and a canonical reduced word
    /// by repeatedly stripping the smallest right descent.
    pub fn element(&self, action: Action) -> WeylElement {
        let mut word = Vec::new();
        let mut x = action.clone();
        while let Some(s) = (0..self.rank()).find(|&s| x.has_right_descent(s)) {
            word.push(s);
            x = x.mul_simple_right(&self.cartan, s);
        }
        debug_assert!(x.is_identity(), "matrix is not a Weyl group element");
        word.reverse();
        WeylElement {
            action,
            length: word.len(),
            word,
        }
    }

    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        self.from_word(&word)
            .expect("words of valid elements are in range")
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let word: Vec<usize> = w.word.iter().rev().copied().collect();
        self.from_word(&word)
            .expect("words of valid elements are in range")
    }

    /// `w * s`.
    pub fn mul_simple(&self, w: &WeylElement, s: usize) -> WeylElement {
        let action = w.action.mul_simple_right(&self.cartan, s);
        if w.has_right_descent(s) {
            // the witness of w need not end in s
            return self.element(action);
        }
        let mut word = w.word.clone();
        word.push(s);
        WeylElement {
            action,
            length: w.length + 1,
            word,
        }
    }

    pub fn right_descents(&self, w: &WeylElement) -> Vec<usize> {
        (0..self.rank())
            .filter(|&s| w.has_right_descent(s))
            .collect()
    }

    pub fn left_descents(&self, w: &WeylElement) -> Vec<usize> {
        let inv = self.inverse(w);
        self.right_descents(&inv)
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        positive_roots(&self.cartan)
            .iter()
            .filter(|r| w.action.apply(r).is_negative())
            .count()
    }

    /// Longest element of the parabolic subgroup generated by `k`, built by
    /// right-multiplying with length-increasing generators from `k`.
    pub fn longest_element(&self, k: SimpleSubset) -> WeylElement {
        let mut action = Action::identity(self.rank());
        let mut word = Vec::new();
        while let Some(s) = k
            .nodes()
            .find(|&s| s < self.rank() && !action.has_right_descent(s))
        {
            action = action.mul_simple_right(&self.cartan, s);
            word.push(s);
        }
        WeylElement {
            action,
            length: word.len(),
            word,
        }
    }

    /// `s_{a_1} s_{a_2} ... s_{a_k}` for the nodes of `k` in ascending order.
    pub fn v_k(&self, k: SimpleSubset) -> WeylElement {
        let word: Vec<usize> = k.nodes().filter(|&s| s < self.rank()).collect();
        self.from_word(&word).expect("nodes are in range")
    }

    /// Number of reduced words, by summing over right descents with memoization.
    pub fn count_reduced_words(&self, w: &WeylElement) -> BigUint {
        let mut memo: HashMap<Action, BigUint> = HashMap::new();
        self.count_rec(&w.action, &mut memo)
    }

    fn count_rec(&self, x: &Action, memo: &mut HashMap<Action, BigUint>) -> BigUint {
        if x.is_identity() {
            return BigUint::one();
        }
        if let Some(c) = memo.get(x) {
            return c.clone();
        }
        let mut total = BigUint::default();
        for s in 0..self.rank() {
            if x.has_right_descent(s) {
                let y = x.mul_simple_right(&self.cartan, s);
                total += self.count_rec(&y, memo);
            }
        }
        memo.insert(x.clone(), total.clone());
        total
    }

    /// Every reduced word of `w`. Fails if `length(w) > cap`.
    pub fn enumerate_reduced_words(
        &self,
        w: &WeylElement,
        cap: usize,
    ) -> Result<BTreeSet<Vec<usize>>> {
        if w.length > cap {
            return Err(Error::ResourceCap(format!(
                "element of length {} exceeds the reduced-word cap {cap}",
                w.length
            )));
        }
        let mut out = BTreeSet::new();
        let mut suffix = Vec::with_capacity(w.length);
        self.enumerate_rec(&w.action, &mut suffix, &mut out);
        Ok(out)
    }

    fn enumerate_rec(&self, x: &Action, suffix: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if x.is_identity() {
            out.insert(suffix.iter().rev().copied().collect());
            return;
        }
        for s in 0..self.rank() {
            if x.has_right_descent(s) {
                suffix.push(s);
                self.enumerate_rec(&x.mul_simple_right(&self.cartan, s), suffix, out);
                suffix.pop();
            }
        }
    }

    /// Bruhat order by the subword criterion: scan the witness word of `w`
    /// from the right, greedily matching right descents of what remains of `v`.
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> bool {
        if v.length > w.length {
            return false;
        }
        let mut rest = v.action.clone();
        let mut left = v.length;
        for (pos, &s) in w.word.iter().enumerate().rev() {
            if left == 0 {
                break;
            }
            if left > pos + 1 {
                return false;
            }
            if rest.has_right_descent(s) {
                rest = rest.mul_simple_right(&self.cartan, s);
                left -= 1;
            }
        }
        left == 0
    }

    /// All elements of length at most `max_length`, by breadth-first search.
    pub fn elements_up_to_length(&self, max_length: usize) -> Vec<WeylElement> {
        let mut seen: HashSet<Action> = HashSet::new();
        let mut layer = vec![self.identity()];
        seen.insert(layer[0].action.clone());
        let mut out = layer.clone();
        for _ in 0..max_length {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..self.rank() {
                    if !w.has_right_descent(s) {
                        let u = self.mul_simple(w, s);
                        if seen.insert(u.action.clone()) {
                            next.push(u);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// The whole group, refusing to build more than `cap` elements.
    pub fn all_elements(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let w0 = self.longest_element(SimpleSubset::full(self.rank()));
        let all = self.elements_up_to_length(w0.length);
        if all.len() > cap {
            return Err(Error::ResourceCap(format!(
                "group has more than {cap} elements"
            )));
        }
        Ok(all)
    }

    /// Whether `s_i` and `s_j` commute.
    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.cartan.get(i, j) == 0
    }

    /// Applies `s_j` to a root vector.
    pub fn reflect(&self, j: usize, v: &RootVector) -> RootVector {
        reflect(&self.cartan, j, v)
    }
}
