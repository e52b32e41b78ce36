//! Library results against brute-force or independently constructed oracles.

use std::collections::HashSet;

use peterson::billey::{billey_localization, RootPolynomial};
use peterson::roots::{positive_roots, simple_reflection_action, RootSystemType, RootVector};
use peterson::weyl::{Weyl, WeylElement};

fn weyl(t: &str) -> Weyl {
    let t: RootSystemType = t.parse().unwrap();
    Weyl::new(t.cartan_matrix())
}

fn e(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 2;
    v
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Simple roots in Euclidean coordinates, scaled by 2 to stay integral,
/// numbered as in the library's Dynkin diagrams.
fn realization(family: char, n: usize) -> Vec<Vec<i64>> {
    match family {
        'A' => (0..n)
            .map(|i| sub(&e(n + 1, i), &e(n + 1, i + 1)))
            .collect(),
        'B' | 'C' | 'D' => {
            let mut roots: Vec<Vec<i64>> =
                (0..n - 1).map(|i| sub(&e(n, i), &e(n, i + 1))).collect();
            roots.push(match family {
                'B' => e(n, n - 1),
                'C' => e(n, n - 1).iter().map(|x| 2 * x).collect(),
                _ => add(&e(n, n - 2), &e(n, n - 1)),
            });
            roots
        }
        'G' => vec![vec![2, -2, 0], vec![-4, 2, 2]],
        'F' => vec![
            sub(&e(4, 1), &e(4, 2)),
            sub(&e(4, 2), &e(4, 3)),
            e(4, 3),
            vec![1, -1, -1, -1],
        ],
        'E' => {
            let all = [
                vec![1, -1, -1, -1, -1, -1, -1, 1],
                add(&e(8, 0), &e(8, 1)),
                sub(&e(8, 1), &e(8, 0)),
                sub(&e(8, 2), &e(8, 1)),
                sub(&e(8, 3), &e(8, 2)),
                sub(&e(8, 4), &e(8, 3)),
                sub(&e(8, 5), &e(8, 4)),
                sub(&e(8, 6), &e(8, 5)),
            ];
            all[..n].to_vec()
        }
        _ => unreachable!(),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn cartan_matrices_match_euclidean_realizations() {
    let types = [
        ('A', 1),
        ('A', 2),
        ('A', 3),
        ('A', 5),
        ('B', 2),
        ('B', 3),
        ('B', 5),
        ('C', 2),
        ('C', 3),
        ('C', 5),
        ('D', 4),
        ('D', 5),
        ('D', 6),
        ('E', 6),
        ('E', 7),
        ('E', 8),
        ('F', 4),
        ('G', 2),
    ];
    for (family, n) in types {
        let label = format!("{family}{n}");
        let cartan = label.parse::<RootSystemType>().unwrap().cartan_matrix();
        let roots = realization(family, n);
        for i in 0..n {
            for j in 0..n {
                let num = 2 * dot(&roots[i], &roots[j]);
                let den = dot(&roots[j], &roots[j]);
                assert_eq!(num % den, 0, "{label}");
                assert_eq!(cartan.get(i, j), num / den, "{label} a[{i}][{j}]");
            }
        }
    }
}

#[test]
fn positive_root_counts_match_realizations() {
    // Count positive roots directly: reflection closure of the realization.
    for (family, n) in [('B', 3), ('C', 4), ('D', 4), ('F', 4), ('G', 2), ('E', 6)] {
        let simple = realization(family, n);
        let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut frontier: Vec<Vec<i64>> = simple.clone();
        while let Some(r) = frontier.pop() {
            for a in &simple {
                let c = 2 * dot(&r, a) / dot(a, a);
                let img: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - c * y).collect();
                if seen.insert(img.clone()) {
                    frontier.push(img);
                }
            }
        }
        let label = format!("{family}{n}");
        let cartan = label.parse::<RootSystemType>().unwrap().cartan_matrix();
        assert_eq!(positive_roots(&cartan).len() * 2, seen.len(), "{label}");
    }
}

/// `r(k) = s_{b_1} ... s_{b_{k-1}} (alpha_{b_k})`, one reflection at a time.
fn roots_along(weyl: &Weyl, word: &[usize]) -> Vec<RootVector> {
    (0..word.len())
        .map(|k| {
            let mut r = RootVector::simple(weyl.rank(), word[k]);
            for &b in word[..k].iter().rev() {
                r = simple_reflection_action(weyl.cartan(), b, &r).unwrap();
            }
            r
        })
        .collect()
}

/// Billey's sum over index subsets of `w`'s witness word whose extracted word
/// is a reduced word of `v`.
fn billey_by_subsets(weyl: &Weyl, v: &WeylElement, w: &WeylElement) -> RootPolynomial {
    let word = w.witness_word();
    let roots = roots_along(weyl, word);
    let mut total = RootPolynomial::zero(weyl.rank());
    for mask in 0u32..1 << word.len() {
        if mask.count_ones() as usize != v.length() {
            continue;
        }
        let picked: Vec<usize> = (0..word.len()).filter(|k| mask >> k & 1 == 1).collect();
        let sub: Vec<usize> = picked.iter().map(|&k| word[k]).collect();
        let u = weyl.from_word(&sub).unwrap();
        if u == *v && u.length() == sub.len() {
            let mut term = RootPolynomial::one(weyl.rank());
            for &k in &picked {
                term = term.mul_root(&roots[k]);
            }
            total.add_assign(&term);
        }
    }
    total
}

#[test]
fn billey_matches_subset_enumeration() {
    for t in ["A2", "B2", "G2", "A3", "B3", "C3", "A2+A1"] {
        let weyl = weyl(t);
        let all = weyl.all_elements(100).unwrap();
        for w in &all {
            for v in &all {
                assert_eq!(
                    billey_localization(&weyl, v, w),
                    billey_by_subsets(&weyl, v, w),
                    "{t}: v = {v}, w = {w}"
                );
            }
        }
    }
}

/// `[e, w]` as the set of products of all subwords of a reduced word of `w`.
fn interval_by_subwords(weyl: &Weyl, w: &WeylElement) -> HashSet<WeylElement> {
    let word = w.witness_word();
    (0u32..1 << word.len())
        .map(|mask| {
            let sub: Vec<usize> = (0..word.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| word[k])
                .collect();
            weyl.from_word(&sub).unwrap()
        })
        .collect()
}

#[test]
fn bruhat_matches_subword_products() {
    for t in ["A2", "B2", "G2", "A3", "B3", "C3"] {
        let weyl = weyl(t);
        let all = weyl.all_elements(100).unwrap();
        for w in &all {
            let interval = interval_by_subwords(&weyl, w);
            for v in &all {
                assert_eq!(
                    weyl.bruhat_leq(v, w),
                    interval.contains(v),
                    "{t}: {v} <= {w}"
                );
            }
        }
    }
}

#[test]
fn reduced_word_counts_match_enumeration() {
    for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A2+A1"] {
        let weyl = weyl(t);
        for w in weyl.all_elements(100).unwrap() {
            let words = weyl.enumerate_reduced_words(&w, 16).unwrap();
            assert_eq!(weyl.count_reduced_words(&w), words.len().into(), "{t}: {w}");
            for word in &words {
                assert_eq!(weyl.from_word(word).unwrap(), w);
            }
        }
    }
}

#[test]
fn group_orders_match_product_formula() {
    // |W| = prod (d_i) over the fundamental degrees.
    for (t, order) in [
        ("A3", 24),
        ("B3", 48),
        ("C3", 48),
        ("D4", 192),
        ("F4", 1152),
        ("G2", 12),
        ("A2+A1", 12),
    ] {
        assert_eq!(weyl(t).all_elements(2000).unwrap().len(), order, "{t}");
    }
}

#[test]
fn length_equals_inversion_count() {
    for t in ["B3", "G2", "A2+A1"] {
        let weyl = weyl(t);
        let pos = positive_roots(weyl.cartan());
        for w in weyl.all_elements(100).unwrap() {
            let inverted = pos
                .iter()
                .filter(|r| w.action().apply(r).is_negative())
                .count();
            assert_eq!(w.length(), inverted, "{t}: {w}");
            assert_eq!(weyl.inversion_count(&w), inverted);
        }
    }
}
