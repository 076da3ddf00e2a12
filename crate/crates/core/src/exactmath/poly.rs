use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use super::Ring;

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, exponents strictly positive.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the lowest-indexed variable decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Canonicalizes arbitrary `(variable, exponent)` pairs: repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_exponents<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0u32) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Product `x_{v_1} ... x_{v_k}` of distinct variables.
    pub fn multilinear<I: IntoIterator<Item = u32>>(vars: I) -> Self {
        Self::from_exponents(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: u32) -> u32 {
        self.0
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                if d > e {
                    return None;
                }
                if e > d {
                    out.push((v, e - d));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                // self has a positive exponent where other has none
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        (self.0.len() - i).cmp(&(other.0.len() - j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients. Variables are
/// plain indices; names live with whoever created them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: u32) -> Self {
        Self::term(Monomial::var(v), int(1))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MultiPoly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += c;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of exactly `m`, zero if absent.
    pub fn coeff_at(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn add_scaled_shifted(&mut self, other: &MultiPoly, shift: &Monomial, c: &Rational) {
        for (m, v) in &other.terms {
            self.add_term(m.mul(shift), v * c);
        }
    }

    /// Exact division by repeated cancellation of leading terms; `None` when
    /// `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::default();
        while let Some((lm, lc)) = rem.leading() {
            let m = lm.div(&dm)?;
            let c = lc / &dc;
            rem.add_scaled_shifted(divisor, &m, &-c.clone());
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Renders with caller-supplied variable names (index `v` -> `names[v]`,
    /// falling back to `x{v}`).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .map(|(v, e)| {
                    let name = names.get(v as usize).cloned().unwrap_or_else(|| format!("x{v}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", abs, mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(int(1))
    }
}

impl Ring for MultiPoly {
    fn from_i64(v: i64) -> Self {
        MultiPoly::constant(int(v))
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        MultiPoly::exact_div(self, divisor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn x(v: u32) -> MultiPoly {
        MultiPoly::var(v)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents([(0, 2)]);
        let b = Monomial::from_exponents([(0, 1), (1, 1)]);
        let c = Monomial::from_exponents([(1, 2)]);
        let d = Monomial::var(0);
        assert!(a > b && b > c && c > d);
        assert!(Monomial::var(0) > Monomial::var(1));
        assert!(d > Monomial::one());
    }

    #[test]
    fn canonical_exponents() {
        let m = Monomial::from_exponents([(2, 1), (0, 0), (2, 2), (1, 1)]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![(1, 1), (2, 3)]);
        assert_eq!(m.exponent(0), 0);
    }

    #[test]
    fn coeff_at_examples() {
        let p = &(&x(0) * &x(1)) + &(&x(0) * &x(0)).scale(&int(3));
        assert_eq!(p.coeff_at(&Monomial::multilinear([0, 1])), int(1));
        assert_eq!(p.coeff_at(&Monomial::from_exponents([(0, 2)])), int(3));
        assert_eq!(MultiPoly::zero().coeff_at(&Monomial::var(4)), int(0));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &x(0) - &x(0);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2).scale(&rat(1, 2));
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!((&prod + &MultiPoly::one()).exact_div(&a), None);
        assert_eq!(a.exact_div(&MultiPoly::zero()), None);
    }

    #[test]
    fn display() {
        let p = &(&x(0) * &x(0)).scale(&int(3)) - &x(1);
        assert_eq!(p.to_string(), "3*x0^2 - x1");
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!((&p + &MultiPoly::one()).display_with(&names), "3*a^2 - b + 1");
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6), 0..4).prop_map(|ts| {
            MultiPoly::from_terms(
                ts.into_iter()
                    .map(|((a, b, c), k)| (Monomial::from_exponents([(0, a), (1, b), (2, c)]), int(k))),
            )
        })
    }

    // naive expansion over term pairs, without going through add_term
    fn naive_coeff(p: &MultiPoly, q: &MultiPoly, m: &Monomial) -> Rational {
        let mut acc = Rational::zero();
        for (ma, ca) in p.terms() {
            for (mb, cb) in q.terms() {
                let exps: Vec<u32> = (0..3).map(|v| ma.exponent(v) + mb.exponent(v)).collect();
                if (0..3).all(|v| exps[v as usize] == m.exponent(v)) && m.iter().all(|(v, _)| v < 3) {
                    acc += ca * cb;
                }
            }
        }
        acc
    }

    proptest! {
        #[test]
        fn product_coefficients_match_naive(p in small_poly(), q in small_poly(), a in 0u32..5, b in 0u32..5, c in 0u32..5) {
            let m = Monomial::from_exponents([(0, a), (1, b), (2, c)]);
            prop_assert_eq!((&p * &q).coeff_at(&m), naive_coeff(&p, &q, &m));
        }

        #[test]
        fn ring_laws(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            if !q.is_zero() {
                prop_assert_eq!((&p * &q).exact_div(&q), Some(p.clone()));
            }
        }
    }
}
