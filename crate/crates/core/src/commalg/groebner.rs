//! Buchberger's algorithm over exact rationals.
//!
//! Pairs are processed by smallest lcm first. A pair is dropped when its
//! leading monomials are coprime, or when some third basis element's leading
//! monomial divides their lcm and both connecting pairs have already been
//! handled.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::{GradedPolynomial, Monomial, MonomialOrder};

/// Terms sorted ascending under a fixed order; the leading term is last.
#[derive(Debug, Clone)]
struct Sorted {
    terms: Vec<(Monomial, BigRational)>,
}

impl Sorted {
    fn from_poly(p: &GradedPolynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sorted { terms }
    }

    fn to_poly(&self, nvars: usize) -> GradedPolynomial {
        GradedPolynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lead(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.last()
    }

    fn lm(&self) -> &Monomial {
        &self.lead().expect("nonzero polynomial").0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.last() {
            let inv = lc.recip();
            for (_, c) in &mut self.terms {
                *c *= &inv;
            }
        }
    }

    /// `self - c * x^shift * g`.
    fn sub_multiple(
        &self,
        c: &BigRational,
        shift: &[u32],
        g: &Sorted,
        order: MonomialOrder,
    ) -> Sorted {
        let shifted = g.terms.iter().map(|(e, x)| {
            let e: Monomial = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            (e, -(x * c))
        });
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let pick = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match pick {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (e, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + y;
                    if !s.is_zero() {
                        out.push((e, s));
                    }
                }
            }
        }
        Sorted { terms: out }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Fully reduced normal form of `f` modulo monic `basis`.
fn normal_form(f: &Sorted, basis: &[Sorted], order: MonomialOrder) -> Sorted {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, BigRational)> = Vec::new();
    while let Some((lm, lc)) = p.lead().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let shift = quotient(&lm, g.lm());
                p = p.sub_multiple(&lc, &shift, g, order);
            }
            None => {
                p.terms.pop();
                rem.push((lm, lc));
            }
        }
    }
    rem.reverse();
    Sorted { terms: rem }
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: MonomialOrder) -> Sorted {
    let l = lcm(f.lm(), g.lm());
    let fm = Sorted { terms: Vec::new() }.sub_multiple(
        &-BigRational::one(),
        &quotient(&l, f.lm()),
        f,
        order,
    );
    fm.sub_multiple(&BigRational::one(), &quotient(&l, g.lm()), g, order)
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by ascending leading
/// monomial. Empty for the zero ideal.
pub fn groebner_basis(
    generators: &[GradedPolynomial],
    order: MonomialOrder,
) -> Vec<GradedPolynomial> {
    let Some(nvars) = generators.first().map(GradedPolynomial::nvars) else {
        return Vec::new();
    };
    let mut basis: Vec<Sorted> = Vec::new();
    for g in generators {
        let mut s = Sorted::from_poly(g, order);
        if !s.is_zero() {
            s.make_monic();
            basis.push(s);
        }
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }

    while !pairs.is_empty() {
        let &(i, j) = pairs
            .iter()
            .min_by(|p, q| {
                let lp = lcm(basis[p.0].lm(), basis[p.1].lm());
                let lq = lcm(basis[q.0].lm(), basis[q.1].lm());
                order.cmp(&lp, &lq).then_with(|| p.cmp(q))
            })
            .unwrap();
        pairs.remove(&(i, j));

        if coprime(basis[i].lm(), basis[j].lm()) {
            continue;
        }
        let l = lcm(basis[i].lm(), basis[j].lm());
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let mut h = normal_form(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if !h.is_zero() {
            h.make_monic();
            let idx = basis.len();
            basis.push(h);
            for k in 0..idx {
                pairs.insert((k, idx));
            }
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Sorted> = Vec::new();
    for (a, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(b, h)| b != a && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || b < a));
        if !redundant {
            keep.push(g.clone());
        }
    }
    // inter-reduce the tails
    let mut reduced = Vec::with_capacity(keep.len());
    for a in 0..keep.len() {
        let others: Vec<Sorted> = keep
            .iter()
            .enumerate()
            .filter(|&(b, _)| b != a)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = keep[a].lead().cloned().unwrap();
        let tail = Sorted {
            terms: keep[a].terms[..keep[a].terms.len() - 1].to_vec(),
        };
        let mut r = normal_form(&tail, &others, order);
        r.terms.push((lm, lc));
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    reduced.iter().map(|s| s.to_poly(nvars)).collect()
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn reduce(
    f: &GradedPolynomial,
    basis: &[GradedPolynomial],
    order: MonomialOrder,
) -> GradedPolynomial {
    let mut sorted: Vec<Sorted> = basis.iter().map(|g| Sorted::from_poly(g, order)).collect();
    sorted.iter_mut().for_each(Sorted::make_monic);
    normal_form(&Sorted::from_poly(f, order), &sorted, order).to_poly(f.nvars())
}

/// The S-polynomial of two nonzero polynomials.
pub fn s_poly(
    f: &GradedPolynomial,
    g: &GradedPolynomial,
    order: MonomialOrder,
) -> GradedPolynomial {
    let mut a = Sorted::from_poly(f, order);
    let mut b = Sorted::from_poly(g, order);
    a.make_monic();
    b.make_monic();
    s_polynomial(&a, &b, order).to_poly(f.nvars())
}

/// Leading monomials of a basis.
pub fn leading_monomials(basis: &[GradedPolynomial], order: MonomialOrder) -> Vec<Monomial> {
    basis
        .iter()
        .filter_map(|g| g.leading_monomial(order).cloned())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> GradedPolynomial {
        GradedPolynomial::from_int_terms(nvars, terms)
    }

    #[test]
    fn principal_ideals() {
        let x1 = p(1, &[(&[1], 1)]);
        assert_eq!(
            groebner_basis(std::slice::from_ref(&x1), MonomialOrder::GrevLex),
            vec![x1]
        );
        let two_x_sq = p(1, &[(&[2], 2)]);
        assert_eq!(
            groebner_basis(&[two_x_sq], MonomialOrder::GrevLex),
            vec![p(1, &[(&[2], 1)])]
        );
        assert!(groebner_basis(&[], MonomialOrder::GrevLex).is_empty());
    }

    #[test]
    fn textbook_example() {
        // (x^2 - y, x^3 - x) under grevlex with x > y: basis {x^2 - y, xy - x, y^2 - y}
        let f = p(2, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = p(2, &[(&[3, 0], 1), (&[1, 0], -1)]);
        let gb = groebner_basis(&[f, g], MonomialOrder::GrevLex);
        let expected = vec![
            p(2, &[(&[0, 2], 1), (&[0, 1], -1)]),
            p(2, &[(&[1, 1], 1), (&[1, 0], -1)]),
            p(2, &[(&[2, 0], 1), (&[0, 1], -1)]),
        ];
        let mut got = gb.clone();
        got.sort_by_key(|p| p.to_string());
        let mut exp = expected.clone();
        exp.sort_by_key(|p| p.to_string());
        assert_eq!(got, exp);
        for a in &gb {
            for b in &gb {
                assert!(reduce(
                    &s_poly(a, b, MonomialOrder::GrevLex),
                    &gb,
                    MonomialOrder::GrevLex
                )
                .is_zero());
            }
        }
    }

    #[test]
    fn reduction_detects_membership() {
        let f = p(2, &[(&[1, 1], 1)]);
        let gb = groebner_basis(&[f], MonomialOrder::GrevLex);
        assert!(reduce(&p(2, &[(&[2, 1], 5)]), &gb, MonomialOrder::GrevLex).is_zero());
        assert!(!reduce(&p(2, &[(&[2, 0], 1)]), &gb, MonomialOrder::GrevLex).is_zero());
    }
}
