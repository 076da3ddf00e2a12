//! Shuffle determinants and the functional `Φ_r` on edge systems.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{ExactMatrix, Monomial, MultiPoly, Rational, Ring};
use crate::limits::{check, Bounds};
use crate::perm::Permutation;

fn check_pair<R: Ring>(a: &ExactMatrix<R>, b: &ExactMatrix<R>) -> Result<()> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension(format!(
            "shapes differ: {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

fn shuffle_mask<R: Ring>(a: &ExactMatrix<R>, b: &ExactMatrix<R>, mask: u64) -> ExactMatrix<R> {
    ExactMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if mask >> i & 1 == 1 {
            a[(i, j)].clone()
        } else {
            b[(i, j)].clone()
        }
    })
}

/// `(A, B)_I`: row `i` from `A` if `i ∈ I`, else from `B` (zero-based rows).
pub fn shuffle<R: Ring>(a: &ExactMatrix<R>, b: &ExactMatrix<R>, rows: &[usize]) -> Result<ExactMatrix<R>> {
    check_pair(a, b)?;
    let mut mask = 0u64;
    for &i in rows {
        if i >= a.rows() || i >= 64 {
            return Err(Error::InvalidIndex(format!("row {i} of {}", a.rows())));
        }
        mask |= 1 << i;
    }
    Ok(shuffle_mask(a, b, mask))
}

/// `Σ_I det (A,B)_I · det (A,B)_Ī` over all row subsets, visited in Gray
/// code order.
pub fn sdet<R: Ring>(a: &ExactMatrix<R>, b: &ExactMatrix<R>) -> Result<R> {
    sdet_with(a, b, &Bounds::default())
}

pub fn sdet_with<R: Ring>(a: &ExactMatrix<R>, b: &ExactMatrix<R>, bounds: &Bounds) -> Result<R> {
    check_pair(a, b)?;
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "sdet needs square matrices, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    check("shuffle determinant size", n, bounds.sdet_n.min(63))?;
    let full = (1u64 << n) - 1;
    let term = |k: u64| {
        let mask = k ^ (k >> 1);
        let d1 = R::determinant(&shuffle_mask(a, b, mask));
        let d2 = R::determinant(&shuffle_mask(a, b, full ^ mask));
        d1 * d2
    };
    let total = if n >= 5 {
        (0..=full).into_par_iter().map(term).reduce(R::zero, |x, y| x + y)
    } else {
        (0..=full).map(term).fold(R::zero(), |x, y| x + y)
    };
    Ok(total)
}

/// `sdet` with columns shuffled instead of rows: `sdet(Aᵀ, Bᵀ)`.
pub fn sdet_columns<R: Ring>(a: &ExactMatrix<R>, b: &ExactMatrix<R>) -> Result<R> {
    sdet(&a.transpose(), &b.transpose())
}

/// Which side the diagonal matrix `X = diag(x_1, ..., x_n)` multiplies `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `det(A + BX)²`; the coefficient is [`sdet_columns`].
    Right,
    /// `det(A + XB)²`; the coefficient is [`sdet`].
    Left,
}

/// Coefficient of `x_1 ⋯ x_n` in `det(A + B·diag(x))²`.
pub fn sdet_via_coeff(a: &ExactMatrix<Rational>, b: &ExactMatrix<Rational>, bounds: &Bounds) -> Result<Rational> {
    coefficient_extraction(a, b, Side::Right, bounds)
}

pub fn coefficient_extraction(
    a: &ExactMatrix<Rational>,
    b: &ExactMatrix<Rational>,
    side: Side,
    bounds: &Bounds,
) -> Result<Rational> {
    check_pair(a, b)?;
    if !a.is_square() {
        return Err(Error::Dimension("sdet needs square matrices".into()));
    }
    let n = a.rows();
    check("symbolic matrix size", n, bounds.symbolic_n)?;
    let m = ExactMatrix::from_fn(n, n, |i, j| {
        let x = match side {
            Side::Right => j,
            Side::Left => i,
        };
        MultiPoly::constant(a[(i, j)].clone()) + MultiPoly::constant(b[(i, j)].clone()) * MultiPoly::var(x as u32)
    });
    let d = m.det()?;
    let sq = &d * &d;
    Ok(sq.coeff_at(&Monomial::multilinear(0..n as u32)))
}

/// `(-1)^n Σ_σ (-2)^{ν(σ)} a_{1σ(1)} ⋯ a_{nσ(n)}`.
pub fn sdet_identity_formula<R: Ring>(a: &ExactMatrix<R>) -> Result<R> {
    if !a.is_square() {
        return Err(Error::Dimension("square matrix expected".into()));
    }
    let n = a.rows();
    check("identity formula size", n, 8)?;
    let mut acc = R::zero();
    for sigma in Permutation::all(n) {
        let mut t = R::from_i64((-2i64).pow(sigma.cycle_count() as u32));
        for i in 0..n {
            t = t * a[(i, sigma.image0(i))].clone();
        }
        acc = acc + t;
    }
    Ok(if n % 2 == 1 { -acc } else { acc })
}

/// Variables `a_ij` (index `i·n + j`) and `b_ij` (index `n² + i·n + j`),
/// zero-based, with display names `a11, ..., bnn`.
pub fn symbolic_pair(n: usize) -> (ExactMatrix<MultiPoly>, ExactMatrix<MultiPoly>, Vec<String>) {
    let a = ExactMatrix::from_fn(n, n, |i, j| MultiPoly::var((i * n + j) as u32));
    let b = ExactMatrix::from_fn(n, n, |i, j| MultiPoly::var((n * n + i * n + j) as u32));
    let names = ["a", "b"]
        .iter()
        .flat_map(|p| (1..=n).cartesian_product(1..=n).map(move |(i, j)| format!("{p}{i}{j}")))
        .collect();
    (a, b, names)
}

/// The directed graph `G` of a monomial of the symbolic `sdet`: one edge
/// `i -> j` per letter `a_ij` or `b_ij`, 1-based.
pub fn monomial_graph(n: usize, mono: &Monomial) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (v, e) in mono.iter() {
        let v = v as usize % (n * n);
        for _ in 0..e {
            edges.push((v / n + 1, v % n + 1));
        }
    }
    edges
}

/// Number of cycles `m` of the auxiliary graph `Γ'` and the signed
/// coefficient `±2^m` of any monomial whose letters form the graph `edges`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphCoefficient {
    pub cycles: usize,
    pub coefficient: i64,
}

pub fn monomial_coefficient(edges: &[(usize, usize)]) -> Result<GraphCoefficient> {
    if edges.is_empty() || edges.len() % 2 == 1 {
        return Err(Error::Structure(format!("{} edges; expected 2n", edges.len())));
    }
    let n = edges.len() / 2;
    let mut outs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ins: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(i, j)) in edges.iter().enumerate() {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidIndex(format!("edge ({i}, {j}) outside 1..{n}")));
        }
        outs[i - 1].push(e);
        ins[j - 1].push(e);
    }
    if outs.iter().chain(&ins).any(|v| v.len() != 2) {
        return Err(Error::Structure("every vertex needs in- and out-degree 2".into()));
    }
    let partner = |lists: &[Vec<usize>], v: usize, e: usize| {
        let l = &lists[v];
        if l[0] == e {
            l[1]
        } else {
            l[0]
        }
    };
    // colour[e]: Some(true) red, Some(false) blue
    let mut colour: Vec<Option<bool>> = vec![None; edges.len()];
    let mut cycles = 0;
    for start in 0..edges.len() {
        if colour[start].is_some() {
            continue;
        }
        cycles += 1;
        let mut e = start;
        let mut red = true;
        let mut via_out = true;
        while colour[e].is_none() {
            colour[e] = Some(red);
            let (i, j) = edges[e];
            e = if via_out {
                partner(&outs, i - 1, e)
            } else {
                partner(&ins, j - 1, e)
            };
            red = !red;
            via_out = !via_out;
        }
    }
    let sign_of = |red: bool| -> Result<i64> {
        let mut images = vec![0usize; n];
        for (e, &(i, j)) in edges.iter().enumerate() {
            if colour[e] == Some(red) {
                images[i - 1] = j;
            }
        }
        Ok(Permutation::from_images(&images)?.sign())
    };
    let sign = sign_of(true)? * sign_of(false)?;
    Ok(GraphCoefficient {
        cycles,
        coefficient: sign << cycles,
    })
}

/// An ordered list of 4-tuples `(i, j, k, l)` of distinct labels in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSystem {
    n: usize,
    tuples: Vec<[usize; 4]>,
}

impl EdgeSystem {
    pub fn new(n: usize, tuples: Vec<[usize; 4]>) -> Result<Self> {
        if tuples.is_empty() {
            return Err(Error::Structure("edge system needs at least one tuple".into()));
        }
        for t in &tuples {
            if t.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::InvalidIndex(format!("{t:?} outside 1..{n}")));
            }
            if t.iter().duplicates().next().is_some() {
                return Err(Error::InvalidCycle(format!("{t:?} repeats a label")));
            }
        }
        Ok(EdgeSystem { n, tuples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[[usize; 4]] {
        &self.tuples
    }

    /// Row `s` of `A` is `e_{i_s} - e_{j_s}`, row `s` of `B` is
    /// `e_{k_s} - e_{l_s}`.
    pub fn build_ab(&self) -> (ExactMatrix<i64>, ExactMatrix<i64>) {
        let row = |t: &[usize; 4], p: usize, q: usize, c: usize| -> i64 {
            if c + 1 == t[p] {
                1
            } else if c + 1 == t[q] {
                -1
            } else {
                0
            }
        };
        let a = ExactMatrix::from_fn(self.r(), self.n, |s, c| row(&self.tuples[s], 0, 1, c));
        let b = ExactMatrix::from_fn(self.r(), self.n, |s, c| row(&self.tuples[s], 2, 3, c));
        (a, b)
    }

    /// `Σ_{#J = r} sdet(A^J, B^J)` computed literally.
    pub fn coefficient_literal(&self) -> Result<i64> {
        let r = self.r();
        if r > self.n {
            return Err(Error::Dimension(format!("r = {r} exceeds n = {}", self.n)));
        }
        let (a, b) = self.build_ab();
        let rows: Vec<usize> = (0..r).collect();
        let mut acc = 0;
        for cols in (0..self.n).combinations(r) {
            acc += sdet(&a.submatrix(&rows, &cols), &b.submatrix(&rows, &cols))?;
        }
        Ok(acc)
    }

    /// Same value via Cauchy–Binet: `Σ_I det((A,B)_I · (A,B)_Īᵀ)`.
    pub fn coefficient(&self) -> Result<i64> {
        let r = self.r();
        if r > self.n {
            return Err(Error::Dimension(format!("r = {r} exceeds n = {}", self.n)));
        }
        let (a, b) = self.build_ab();
        let full = (1u64 << r) - 1;
        let mut acc = 0;
        for mask in 0..=full {
            let p = shuffle_mask(&a, &b, mask);
            let q = shuffle_mask(&a, &b, full ^ mask);
            acc += p.mul(&q.transpose())?.det()?;
        }
        Ok(acc)
    }

    /// `c_E · Π weights`.
    pub fn phi<R: Ring>(&self, weights: &[R]) -> Result<R> {
        if weights.len() != self.r() {
            return Err(Error::Dimension(format!(
                "{} weights for {} tuples",
                weights.len(),
                self.r()
            )));
        }
        let c = self.coefficient()?;
        Ok(weights.iter().fold(R::from_i64(c), |acc, w| acc * w.clone()))
    }

    /// `sdet(A^J, B^J)` for each `J = {1..n} \ {k}`; all equal when
    /// `r = n - 1`.
    pub fn column_deleted_sdets(&self) -> Result<Vec<i64>> {
        if self.r() + 1 != self.n {
            return Err(Error::Dimension(format!(
                "need r = n - 1, got r = {}, n = {}",
                self.r(),
                self.n
            )));
        }
        let (a, b) = self.build_ab();
        let rows: Vec<usize> = (0..self.r()).collect();
        (0..self.n)
            .map(|k| {
                let cols: Vec<usize> = (0..self.n).filter(|&c| c != k).collect();
                sdet(&a.submatrix(&rows, &cols), &b.submatrix(&rows, &cols))
            })
            .collect()
    }

    /// `n · sdet(A^J, B^J)` with `J = {1..n-1}`.
    pub fn top_coefficient(&self) -> Result<i64> {
        if self.r() + 1 != self.n {
            return Err(Error::Dimension(format!(
                "need r = n - 1, got r = {}, n = {}",
                self.r(),
                self.n
            )));
        }
        let (a, b) = self.build_ab();
        let rows: Vec<usize> = (0..self.r()).collect();
        let cols: Vec<usize> = (0..self.n - 1).collect();
        Ok(self.n as i64 * sdet(&a.submatrix(&rows, &cols), &b.submatrix(&rows, &cols))?)
    }

    /// [`EdgeSystem::top_coefficient`] times the weights.
    pub fn phi_top<R: Ring>(&self, weights: &[R]) -> Result<R> {
        if weights.len() != self.r() {
            return Err(Error::Dimension(format!(
                "{} weights for {} tuples",
                weights.len(),
                self.r()
            )));
        }
        let c = self.top_coefficient()?;
        Ok(weights.iter().fold(R::from_i64(c), |acc, w| acc * w.clone()))
    }
}

/// The weighted `η`-terms of `z = Σ_{i<j<k<l} (w_ijkl η_ijkl + w_iklj η_iklj)`:
/// tuple `(i,j,k,l)` then `(i,k,l,j)` for each 4-subset in lexicographic
/// order.
pub fn eta_items(n: usize) -> Vec<[usize; 4]> {
    (1..=n)
        .tuple_combinations()
        .flat_map(|(i, j, k, l)| [[i, j, k, l], [i, k, l, j]])
        .collect()
}

/// Nonzero coefficients `c_E` for every `r`-multiset `E` of the items of
/// [`eta_items`], with `r = 1..n-1`. Independent of the weights.
#[derive(Clone, Debug)]
pub struct MainTable {
    n: usize,
    items: Vec<[usize; 4]>,
    // by r - 1: (multiset as sorted item indices, c_E)
    levels: Vec<Vec<(Vec<u16>, i64)>>,
    // r = n - 1 again, from `EdgeSystem::top_coefficient`
    top: Vec<(Vec<u16>, i64)>,
}

impl MainTable {
    pub fn build(n: usize) -> Result<Self> {
        let items = eta_items(n);
        let mut levels = Vec::new();
        for r in 1..n {
            let multisets: Vec<Vec<u16>> = (0..items.len() as u16)
                .combinations_with_replacement(r)
                // a tuple used three times contributes nothing
                .filter(|ms| ms.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2])))
                .collect();
            let level: Vec<(Vec<u16>, i64)> = multisets
                .into_par_iter()
                .map(|ms| {
                    let es = EdgeSystem {
                        n,
                        tuples: ms.iter().map(|&k| items[k as usize]).collect(),
                    };
                    let c = es.coefficient().expect("r < n");
                    (ms, c)
                })
                .filter(|(_, c)| *c != 0)
                .collect();
            levels.push(level);
        }
        let top = if n < 2 {
            Vec::new()
        } else {
            (0..items.len() as u16)
                .combinations_with_replacement(n - 1)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|ms| {
                    let es = EdgeSystem {
                        n,
                        tuples: ms.iter().map(|&k| items[k as usize]).collect(),
                    };
                    let c = es.top_coefficient().expect("r = n - 1");
                    (ms, c)
                })
                .filter(|(_, c)| *c != 0)
                .collect()
        };
        Ok(MainTable { n, items, levels, top })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[[usize; 4]] {
        &self.items
    }

    pub fn level(&self, r: usize) -> &[(Vec<u16>, i64)] {
        &self.levels[r - 1]
    }

    /// `μ_r = Σ_E c_E Π w / Π mult!` for `r = 1..n-1`, weights indexed like
    /// [`MainTable::items`].
    pub fn mu<R: Ring>(&self, weights: &[R]) -> Result<Vec<R>> {
        if weights.len() != self.items.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} items",
                weights.len(),
                self.items.len()
            )));
        }
        self.levels.iter().map(|level| Self::weigh(level, weights)).collect()
    }

    /// `μ_{n-1}` from the coefficients of [`EdgeSystem::top_coefficient`],
    /// tabulated separately over every `(n-1)`-multiset.
    pub fn mu_top<R: Ring>(&self, weights: &[R]) -> Result<R> {
        if weights.len() != self.items.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} items",
                weights.len(),
                self.items.len()
            )));
        }
        Self::weigh(&self.top, weights)
    }

    fn weigh<R: Ring>(level: &[(Vec<u16>, i64)], weights: &[R]) -> Result<R> {
        level
            .par_iter()
            .map(|(ms, c)| {
                let mut t = R::from_i64(*c);
                let mut denom = 1i64;
                for (k, run) in &ms.iter().chunk_by(|&&k| k) {
                    let len = run.count();
                    denom *= (1..=len as i64).product::<i64>();
                    t = t * weights[k as usize].pow(len as u32);
                }
                t.exact_div(&R::from_i64(denom))
                    .ok_or_else(|| Error::Structure(format!("{t} not divisible by {denom}")))
            })
            .try_reduce(R::zero, |a, b| Ok(a + b))
    }
}

/// `μ_r` by summing literal `Σ_J sdet` coefficients over every `r`-multiset
/// of weighted tuples. Slow reference path.
pub fn phi_power_literal<R: Ring>(items: &[([usize; 4], R)], n: usize, r: usize) -> Result<R> {
    let mut acc = R::zero();
    for ms in (0..items.len()).combinations_with_replacement(r) {
        let es = EdgeSystem::new(n, ms.iter().map(|&k| items[k].0).collect())?;
        let c = es.coefficient_literal()?;
        if c == 0 {
            continue;
        }
        let mut counts: HashMap<usize, u32> = HashMap::new();
        for &k in &ms {
            *counts.entry(k).or_insert(0) += 1;
        }
        let mut t = R::from_i64(c);
        let mut denom = 1i64;
        for (&k, &len) in &counts {
            t = t * items[k].1.pow(len);
            denom *= (1..=len as i64).product::<i64>();
        }
        acc = acc + t.exact_div(&R::from_i64(denom)).expect("divisible");
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn shuffles() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let b = q(&[&[5, 6], &[7, 8]]);
        assert_eq!(shuffle(&a, &b, &[]).unwrap(), b);
        assert_eq!(shuffle(&a, &b, &[0, 1]).unwrap(), a);
        assert_eq!(shuffle(&a, &b, &[0]).unwrap(), q(&[&[1, 2], &[7, 8]]));
        assert!(shuffle(&a, &b, &[2]).is_err());
    }

    #[test]
    fn small_sdets() {
        let (a, b) = (MultiPoly::var(0), MultiPoly::var(1));
        let one = |x: MultiPoly| ExactMatrix::new(1, 1, vec![x]).unwrap();
        assert_eq!(
            sdet(&one(a.clone()), &one(b.clone())).unwrap(),
            (&a * &b).scale(&int(2))
        );
        let (sa, _, _) = symbolic_pair(2);
        let id = ExactMatrix::<MultiPoly>::identity(2);
        let v = |i: u32, j: u32| MultiPoly::var(i * 2 + j);
        let want = (&v(0, 0) * &v(1, 1)).scale(&int(4)) - (&v(0, 1) * &v(1, 0)).scale(&int(2));
        assert_eq!(sdet(&sa, &id).unwrap(), want);
        assert_eq!(sdet_identity_formula(&sa).unwrap(), want);
    }

    #[test]
    fn row_shuffles_are_not_left_invariant() {
        let a = q(&[&[0, 0], &[0, 1]]);
        let b = q(&[&[0, 0], &[1, 0]]);
        let c = q(&[&[0, 1], &[0, -1]]);
        assert_eq!(c.det().unwrap(), int(0));
        assert_eq!(sdet(&c.mul(&a).unwrap(), &c.mul(&b).unwrap()).unwrap(), int(-2));
        assert_eq!(sdet_columns(&c.mul(&a).unwrap(), &c.mul(&b).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn coefficient_extraction_with_zero_a() {
        let b = q(&[&[1, 2, 0], &[0, 1, 3], &[2, 0, 1]]);
        let z = ExactMatrix::zeros(3, 3);
        assert_eq!(sdet_via_coeff(&z, &b, &Bounds::default()).unwrap(), int(0));
        assert_eq!(sdet(&z, &b).unwrap(), int(0));
    }

    #[test]
    fn monomial_coefficients_match_symbolic_expansion() {
        assert_eq!(
            monomial_coefficient(&[(1, 1), (1, 1)]).unwrap(),
            GraphCoefficient {
                cycles: 1,
                coefficient: 2
            }
        );
        for n in 1..=3 {
            let (a, b, _) = symbolic_pair(n);
            let s = sdet(&a, &b).unwrap();
            assert!(s.num_terms() > 0);
            for (mono, c) in s.terms() {
                let g = monomial_coefficient(&monomial_graph(n, mono)).unwrap();
                assert_eq!(int(g.coefficient), c.clone(), "n = {n}, monomial {mono:?}");
            }
        }
        assert!(monomial_coefficient(&[(1, 2), (1, 2)]).is_err());
    }

    #[test]
    fn edge_matrices() {
        let es = EdgeSystem::new(4, vec![[1, 2, 3, 4]]).unwrap();
        let (a, b) = es.build_ab();
        assert_eq!(a.data(), &[1, -1, 0, 0]);
        assert_eq!(b.data(), &[0, 0, 1, -1]);
        assert_eq!(es.phi(&[int(1)]).unwrap(), int(0));
        assert!(EdgeSystem::new(4, vec![[1, 2, 2, 4]]).is_err());
        assert!(EdgeSystem::new(4, vec![[1, 2, 3, 5]]).is_err());
    }

    #[test]
    fn eta_square_coefficient() {
        let es = EdgeSystem::new(4, vec![[1, 2, 3, 4], [1, 2, 3, 4]]).unwrap();
        assert_eq!(es.coefficient_literal().unwrap(), -8);
        assert_eq!(es.coefficient().unwrap(), -8);
        let t = MainTable::build(4).unwrap();
        let mut w = vec![int(0); t.items().len()];
        w[0] = int(1);
        assert_eq!(t.mu(&w).unwrap(), vec![int(0), int(-4), int(0)]);
    }

    #[test]
    fn triple_use_vanishes() {
        let es = EdgeSystem::new(5, vec![[1, 2, 3, 4]; 3]).unwrap();
        assert_eq!(es.coefficient_literal().unwrap(), 0);
    }

    #[test]
    fn top_level_summands_agree() {
        let es = EdgeSystem::new(5, vec![[1, 2, 3, 4], [1, 3, 5, 2], [2, 4, 5, 3], [1, 5, 4, 2]]).unwrap();
        let v = es.column_deleted_sdets().unwrap();
        assert!(v.iter().all(|&x| x == v[0]));
        let w = [rat(1, 2), int(3), rat(-2, 7), int(5)];
        assert_eq!(es.phi_top(&w).unwrap(), es.phi(&w).unwrap());
        let two = EdgeSystem::new(2, vec![[1, 2, 3, 4]]);
        assert!(two.is_err());
    }

    fn rat_matrix(n: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
        prop::collection::vec((-6i64..7, 1i64..4), n * n)
            .prop_map(move |v| ExactMatrix::new(n, n, v.into_iter().map(|(a, b)| rat(a, b)).collect()).unwrap())
    }

    fn triple() -> impl Strategy<Value = (ExactMatrix<Rational>, ExactMatrix<Rational>, ExactMatrix<Rational>)> {
        (1usize..5).prop_flat_map(|n| (rat_matrix(n), rat_matrix(n), rat_matrix(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn shuffle_determinant_identities((a, b, c) in triple(), l in -3i64..4, m in -3i64..4) {
            let n = a.rows() as i32;
            let s = sdet(&a, &b).unwrap();
            prop_assert_eq!(sdet(&b, &a).unwrap(), s.clone());
            let dc = c.det().unwrap();
            let ac = a.mul(&c).unwrap();
            let bc = b.mul(&c).unwrap();
            prop_assert_eq!(sdet(&ac, &bc).unwrap(), &s * &dc * &dc);
            let sc = sdet_columns(&a, &b).unwrap();
            let ca = c.mul(&a).unwrap();
            let cb = c.mul(&b).unwrap();
            prop_assert_eq!(sdet_columns(&ca, &cb).unwrap(), &sc * &dc * &dc);
            let (lq, mq) = (int(l), int(m));
            prop_assert_eq!(
                sdet(&a.scale(&lq), &b.scale(&mq)).unwrap(),
                &s * Ring::pow(&lq, n as u32) * Ring::pow(&mq, n as u32)
            );
            prop_assert_eq!(sdet_via_coeff(&a, &b, &Bounds::default()).unwrap(), sc);
            prop_assert_eq!(coefficient_extraction(&a, &b, Side::Left, &Bounds::default()).unwrap(), s.clone());
            prop_assert_eq!(
                sdet(&a, &ExactMatrix::identity(a.rows())).unwrap(),
                sdet_identity_formula(&a).unwrap()
            );
        }

        #[test]
        fn fast_coefficient_matches_literal(picks in prop::collection::vec((0usize..5, 0usize..2), 1..5)) {
            let items = eta_items(5);
            let tuples: Vec<[usize; 4]> = picks.iter().map(|&(k, v)| items[2 * k + v]).collect();
            let es = EdgeSystem::new(5, tuples).unwrap();
            prop_assert_eq!(es.coefficient().unwrap(), es.coefficient_literal().unwrap());
        }
    }
}
