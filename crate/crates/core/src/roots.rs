//! Root-system data: Lie types, Cartan matrices and the reflection action of
//! the simple reflections on root coordinates.
//!
//! Nodes are 0-based throughout the library. Text formats (words, reports)
//! use 1-based node labels.
//!
//! Node ordering follows the Bourbaki/Humphreys tables:
//!
//! | type | diagram (0-based nodes)                                   |
//! |------|-----------------------------------------------------------|
//! | A_n  | `0 - 1 - ... - n-1`                                        |
//! | B_n  | `0 - 1 - ... - n-2 => n-1` (last node short)               |
//! | C_n  | `0 - 1 - ... - n-2 <= n-1` (last node long)                |
//! | D_n  | `0 - ... - n-3`, with `n-3` joined to both `n-2` and `n-1` |
//! | E_n  | `0 - 2 - 3 - ... - n-1`, with `1` joined to `3`            |
//! | F_4  | `0 - 1 => 2 - 3`                                           |
//! | G_2  | `0 <= 1` (node 0 short)                                    |
//!
//! The Cartan integer `a[i][j] = <alpha_i, alpha_j> = 2(alpha_i, alpha_j) / (alpha_j, alpha_j)`
//! is the coefficient in `s_j(alpha_i) = alpha_i - a[i][j] alpha_j`. For G_2
//! this gives `a[0][1] = -1` and `a[1][0] = -3`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::commalg::is_positive_definite;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Lie type such as `A3` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let constraint = match family {
            Family::A if rank < 1 => Some("A_n requires n >= 1"),
            Family::B if rank < 2 => Some("B_n requires n >= 2"),
            Family::C if rank < 2 => Some("C_n requires n >= 2"),
            Family::D if rank < 4 => Some("D_n requires n >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E_n requires n in {6, 7, 8}"),
            Family::F if rank != 4 => Some("F_n requires n = 4"),
            Family::G if rank != 2 => Some("G_n requires n = 2"),
            _ => None,
        };
        if let Some(constraint) = constraint {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                constraint,
            });
        }
        Ok(LieType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                (0..n - 3).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 2, -1, -1);
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -1, -3),
        }
        CartanMatrix::from_rows_unchecked(a)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_err = |reason: &str| Error::Parse {
            what: "Lie type",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| parse_err("expected a family letter A-G"))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| parse_err("expected a decimal rank after the family letter"))?;
        LieType::new(family, rank)
    }
}

/// A semisimple type given as an ordered direct sum of simple types, e.g. `A2+A1`.
///
/// Node indices of later summands are offset by the ranks of earlier ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSystemType {
    components: Vec<LieType>,
}

impl RootSystemType {
    pub fn new(components: Vec<LieType>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Precondition(
                "a root system needs at least one summand".into(),
            ));
        }
        Ok(RootSystemType { components })
    }

    pub fn components(&self) -> &[LieType] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(LieType::rank).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.components.len() == 1
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        CartanMatrix::direct_sum(self.components.iter().map(LieType::cartan_matrix))
    }
}

impl From<LieType> for RootSystemType {
    fn from(t: LieType) -> Self {
        RootSystemType {
            components: vec![t],
        }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let components = s
            .split('+')
            .map(str::parse)
            .collect::<Result<Vec<LieType>>>()?;
        RootSystemType::new(components)
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a Lie type from a string. Accepts sums such as `A2+A1`.
pub fn parse_type(s: &str) -> Result<RootSystemType> {
    s.parse()
}

/// Square integer matrix of Cartan integers `a[i][j] = <alpha_i, alpha_j>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CartanMatrix {
    rows: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Builds a Cartan matrix of finite type, checking every defining invariant.
    #[allow(clippy::needless_range_loop)]
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
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
        for i in 0..n {
            if rows[i][i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({i},{i}) is not 2"
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (aij, aji) = (rows[i][j], rows[j][i]);
                if aij > 0 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) is positive")));
                }
                if (aij == 0) != (aji == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) disagree on vanishing"
                    )));
                }
                if !(0..=3).contains(&(aij * aji)) {
                    return Err(Error::InvalidCartan(format!(
                        "product of entries ({i},{j}) and ({j},{i}) is {}",
                        aij * aji
                    )));
                }
            }
        }
        if !is_positive_definite(&rows)? {
            return Err(Error::InvalidCartan(
                "matrix is not positive definite".into(),
            ));
        }
        Ok(CartanMatrix { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<i64>>) -> Self {
        CartanMatrix { rows }
    }

    /// Block-diagonal assembly, in the order given.
    pub fn direct_sum(blocks: impl IntoIterator<Item = CartanMatrix>) -> Self {
        let blocks: Vec<_> = blocks.into_iter().collect();
        let n: usize = blocks.iter().map(CartanMatrix::rank).sum();
        let mut rows = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for b in &blocks {
            for i in 0..b.rank() {
                for j in 0..b.rank() {
                    rows[offset + i][offset + j] = b.rows[i][j];
                }
            }
            offset += b.rank();
        }
        CartanMatrix { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.rows[i][j] != 0
    }

    pub fn principal_submatrix(&self, nodes: &[usize]) -> Vec<Vec<i64>> {
        nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.rows[i][j]).collect())
            .collect()
    }

    /// Positive integers `d` with `d[i] * a[i][j] == d[j] * a[j][i]`, so that
    /// `diag(d) * A` is symmetric. Normalized so each component has minimum 1.
    #[allow(clippy::needless_range_loop)]
    pub fn symmetrizer(&self) -> Vec<i64> {
        let n = self.rank();
        // Work with rationals d = num/den per node, then clear denominators.
        let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some((1, 1));
            let mut stack = vec![start];
            let mut component = vec![start];
            while let Some(i) = stack.pop() {
                let (p, q) = d[i].unwrap();
                for j in 0..n {
                    if self.adjacent(i, j) && d[j].is_none() {
                        // d_j = d_i * a_ij / a_ji
                        let (mut pj, mut qj) = (p * self.rows[i][j], q * self.rows[j][i]);
                        if qj < 0 {
                            pj = -pj;
                            qj = -qj;
                        }
                        let g = num_integer::gcd(pj, qj);
                        d[j] = Some((pj / g, qj / g));
                        stack.push(j);
                        component.push(j);
                    }
                }
            }
            let l = component
                .iter()
                .fold(1i64, |acc, &i| num_integer::lcm(acc, d[i].unwrap().1));
            let scaled: Vec<i64> = component
                .iter()
                .map(|&i| {
                    let (p, q) = d[i].unwrap();
                    p * (l / q)
                })
                .collect();
            let g = scaled.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
            for (&i, &x) in component.iter().zip(&scaled) {
                d[i] = Some((x / g, 1));
            }
        }
        d.into_iter().map(|x| x.unwrap().0).collect()
    }

    /// `diag(symmetrizer) * A`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let d = self.symmetrizer();
        self.rows
            .iter()
            .zip(&d)
            .map(|(row, &di)| row.iter().map(|&a| di * a).collect())
            .collect()
    }

    pub(crate) fn check_node(&self, index: usize) -> Result<()> {
        if index < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                rank: self.rank(),
            })
        }
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

/// The Cartan matrix of `lie_type` in the fixed node ordering.
pub fn cartan_matrix(lie_type: &RootSystemType) -> CartanMatrix {
    lie_type.cartan_matrix()
}

/// Coordinates of `sum c_i alpha_i` in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Non-negative coordinates, not all zero.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
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
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `s_j(v)`, extended linearly from `s_j(alpha_i) = alpha_i - a[i][j] alpha_j`.
pub fn simple_reflection_action(
    cartan: &CartanMatrix,
    j: usize,
    v: &RootVector,
) -> Result<RootVector> {
    cartan.check_node(j)?;
    if v.0.len() != cartan.rank() {
        return Err(Error::Precondition(format!(
            "root vector has {} coordinates, rank is {}",
            v.0.len(),
            cartan.rank()
        )));
    }
    Ok(reflect(cartan, j, v))
}

pub(crate) fn reflect(cartan: &CartanMatrix, j: usize, v: &RootVector) -> RootVector {
    let shift: i64 =
        v.0.iter()
            .enumerate()
            .map(|(i, &c)| c * cartan.get(i, j))
            .sum();
    let mut out = v.clone();
    out.0[j] -= shift;
    out
}

/// Order of `s_i s_j`, read off from `a[i][j] * a[j][i]`.
pub fn bond_order(cartan: &CartanMatrix, i: usize, j: usize) -> Result<u32> {
    cartan.check_node(i)?;
    cartan.check_node(j)?;
    if i == j {
        return Err(Error::Precondition(
            "bond order needs two distinct nodes".into(),
        ));
    }
    match cartan.get(i, j) * cartan.get(j, i) {
        0 => Ok(2),
        1 => Ok(3),
        2 => Ok(4),
        3 => Ok(6),
        p => Err(Error::InvalidCartan(format!(
            "bond product {p} is not of finite type"
        ))),
    }
}

/// All positive roots, by closing the simple roots under simple reflections.
/// Sorted by height, then lexicographically.
pub fn positive_roots(cartan: &CartanMatrix) -> Vec<RootVector> {
    let n = cartan.rank();
    let mut seen: std::collections::BTreeSet<RootVector> =
        (0..n).map(|i| RootVector::simple(n, i)).collect();
    let mut frontier: Vec<RootVector> = seen.iter().cloned().collect();
    while let Some(r) = frontier.pop() {
        for j in 0..n {
            let image = reflect(cartan, j, &r);
            if image.is_positive() && seen.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    let mut roots: Vec<_> = seen.into_iter().collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> RootSystemType {
        s.parse().unwrap()
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(ty("A1").cartan_matrix().rows(), &[vec![2]]);
        assert_eq!(ty("A2").cartan_matrix().rows(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(ty("G2").cartan_matrix().rows(), &[vec![2, -1], vec![-3, 2]]);
        assert_eq!(ty("B2").cartan_matrix().rows(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(ty("C2").cartan_matrix().rows(), &[vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn rank_constraints_are_enforced() {
        for bad in ["A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3"] {
            let err = bad.parse::<LieType>().unwrap_err();
            assert!(matches!(err, Error::InvalidRank { .. }), "{bad}: {err}");
        }
        assert!(matches!("X2".parse::<LieType>(), Err(Error::Parse { .. })));
        assert!(matches!("A".parse::<LieType>(), Err(Error::Parse { .. })));
        assert!("C2".parse::<LieType>().is_ok());
    }

    #[test]
    fn direct_sum_offsets_blocks() {
        let c = ty("A2+A1").cartan_matrix();
        assert_eq!(c.rows(), &[vec![2, -1, 0], vec![-1, 2, 0], vec![0, 0, 2]]);
        assert_eq!(ty("A2+A1").to_string(), "A2+A1");
        assert_eq!(ty("A2+A1").rank(), 3);
    }

    #[test]
    fn reflection_examples() {
        let a2 = ty("A2").cartan_matrix();
        let g2 = ty("G2").cartan_matrix();
        let a1 = RootVector::simple(2, 0);
        assert_eq!(
            simple_reflection_action(&a2, 0, &a1).unwrap(),
            RootVector(vec![-1, 0])
        );
        assert_eq!(
            simple_reflection_action(&a2, 1, &a1).unwrap(),
            RootVector(vec![1, 1])
        );
        assert_eq!(
            simple_reflection_action(&g2, 1, &a1).unwrap(),
            RootVector(vec![1, 1])
        );
        // Transposed convention would give alpha_1 + 3 alpha_2 here.
        let a2v = RootVector::simple(2, 1);
        assert_eq!(
            simple_reflection_action(&g2, 0, &a2v).unwrap(),
            RootVector(vec![3, 1])
        );
        assert!(simple_reflection_action(&g2, 2, &a1).is_err());
    }

    #[test]
    fn bond_orders() {
        let a2 = ty("A2").cartan_matrix();
        let b2 = ty("B2").cartan_matrix();
        let g2 = ty("G2").cartan_matrix();
        let a3 = ty("A3").cartan_matrix();
        assert_eq!(bond_order(&a2, 0, 1).unwrap(), 3);
        assert_eq!(bond_order(&b2, 0, 1).unwrap(), 4);
        assert_eq!(bond_order(&g2, 0, 1).unwrap(), 6);
        assert_eq!(bond_order(&a3, 0, 2).unwrap(), 2);
        assert!(bond_order(&a3, 1, 1).is_err());
    }

    #[test]
    fn positive_root_counts() {
        let expected = [
            ("A1", 1),
            ("A3", 6),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ];
        for (t, count) in expected {
            assert_eq!(positive_roots(&ty(t).cartan_matrix()).len(), count, "{t}");
        }
    }

    #[test]
    fn symmetrizer_makes_symmetric() {
        for t in ["A3", "B3", "C3", "D5", "E6", "F4", "G2", "B2+G2"] {
            let c = ty(t).cartan_matrix();
            let s = c.symmetrized();
            for (i, row) in s.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert_eq!(*x, s[j][i], "{t}");
                }
            }
        }
        assert_eq!(ty("G2").cartan_matrix().symmetrizer(), vec![3, 1]);
    }

    #[test]
    fn from_rows_validates() {
        assert!(CartanMatrix::from_rows(vec![vec![2, -1], vec![-3, 2]]).is_ok());
        assert!(CartanMatrix::from_rows(vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![3]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![2, -1]]).is_err());
    }
}
