use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, Rational, Ring};
use crate::perm::Permutation;

/// A finite linear combination `Σ a_g g` of permutations of one degree.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<R = Rational> {
    n: usize,
    terms: BTreeMap<Permutation, R>,
}

impl<R: Ring> GroupAlgebraElement<R> {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_perm(Permutation::identity(n))
    }

    pub fn from_perm(p: Permutation) -> Self {
        Self::term(p, R::one())
    }

    pub fn term(p: Permutation, c: R) -> Self {
        let mut x = Self::zero(p.degree());
        x.add_term(p, c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (Permutation, R)>>(n: usize, terms: I) -> Result<Self> {
        let mut x = Self::zero(n);
        for (p, c) in terms {
            if p.degree() != n {
                return Err(Error::DegreeMismatch(n, p.degree()));
            }
            x.add_term(p, c);
        }
        Ok(x)
    }

    /// Adds `c·p`. Panics if `p` has the wrong degree.
    pub fn add_term(&mut self, p: Permutation, c: R) {
        assert_eq!(p.degree(), self.n, "permutation degree");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Permutation) -> R {
        self.terms.get(p).cloned().unwrap_or_else(R::zero)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DegreeMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    pub fn map_coeffs<S: Ring, F: FnMut(&R) -> S>(&self, mut f: F) -> GroupAlgebraElement<S> {
        let mut out = GroupAlgebraElement::zero(self.n);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = Self::zero(self.n);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(g.compose(h)?, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// `xy - yx`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// `σ x σ⁻¹`.
    pub fn conjugate(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.degree() != self.n {
            return Err(Error::DegreeMismatch(self.n, sigma.degree()));
        }
        let inv = sigma.inverse();
        let mut out = Self::zero(self.n);
        for (g, c) in &self.terms {
            out.add_term(sigma.compose(g)?.compose(&inv)?, c.clone());
        }
        Ok(out)
    }

    /// `y x y⁻¹` for `y` a single permutation with coefficient one.
    pub fn conjugate_by(&self, y: &Self) -> Result<Self> {
        self.conjugate(&y.as_permutation()?)
    }

    /// The permutation `g` if `self = 1·g`.
    pub fn as_permutation(&self) -> Result<Permutation> {
        match self.terms.iter().next() {
            Some((g, c)) if self.terms.len() == 1 && c.is_one() => Ok(g.clone()),
            _ => Err(Error::UnsupportedUnit(format!("{self} is not a single group element"))),
        }
    }

    pub fn coeff_sum(&self) -> R {
        self.terms.values().fold(R::zero(), |acc, c| acc + c.clone())
    }

    /// Image under `S_n -> S_{n+1}`, the stabilizer of `n + 1`.
    pub fn iota(&self) -> Self {
        GroupAlgebraElement {
            n: self.n + 1,
            terms: self.terms.iter().map(|(g, c)| (g.extend(), c.clone())).collect(),
        }
    }

    /// Coefficient vector of length `n!` in the order of [`Permutation::all`].
    pub fn to_dense(&self) -> Vec<R> {
        let size: usize = (1..=self.n).product();
        let mut v = vec![R::zero(); size];
        for (g, c) in &self.terms {
            v[g.lex_rank()] = c.clone();
        }
        v
    }

    pub fn from_dense(n: usize, v: &[R]) -> Result<Self> {
        let all = Permutation::all(n);
        if v.len() != all.len() {
            return Err(Error::Dimension(format!("{} coordinates for degree {n}", v.len())));
        }
        Self::from_terms(n, all.into_iter().zip(v.iter().cloned()))
    }

    /// `[{"cycles": [[1, 2]], "coefficient": "-1"}, ...]`
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(g, c)| TermRepr {
                cycles: g.cycles(),
                coefficient: c.to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }
}

impl GroupAlgebraElement<Rational> {
    pub fn from_json(n: usize, value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermRepr> = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut x = Self::zero(n);
        for t in terms {
            x.add_term(Permutation::from_cycles(n, &t.cycles)?, parse_rational(&t.coefficient)?);
        }
        Ok(x)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    cycles: Vec<Vec<usize>>,
    coefficient: String,
}

fn is_atomic(s: &str) -> bool {
    !s.contains(' ')
}

impl<R: Ring> fmt::Display for GroupAlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            let basis = if g.is_identity() { String::new() } else { g.to_string() };
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) if is_atomic(rest) => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            let body = match (mag.as_str(), basis.is_empty()) {
                ("1", true) => "1".to_string(),
                ("1", false) => basis,
                (m, true) if is_atomic(m) => m.to_string(),
                (m, true) => format!("({m})"),
                (m, false) if is_atomic(m) => format!("{m}*{basis}"),
                (m, false) => format!("({m})*{basis}"),
            };
            match (k, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat, MultiPoly};
    use proptest::prelude::*;

    type E = GroupAlgebraElement;

    fn g(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn kappa(n: usize, i: usize, j: usize) -> E {
        E::one(n).sub(&E::from_perm(g(n, &[&[i, j]]))).unwrap()
    }

    fn nu(n: usize, i: usize, j: usize, k: usize) -> E {
        E::from_perm(g(n, &[&[i, j, k]]))
            .sub(&E::from_perm(g(n, &[&[i, k, j]])))
            .unwrap()
    }

    #[test]
    fn products_and_brackets() {
        let k12 = kappa(3, 1, 2);
        let k23 = kappa(3, 2, 3);
        assert_eq!(E::one(3).multiply(&k12).unwrap(), k12);
        let expected = E::from_terms(
            3,
            [
                (Permutation::identity(3), int(1)),
                (g(3, &[&[2, 3]]), int(-1)),
                (g(3, &[&[1, 2]]), int(-1)),
                (g(3, &[&[1, 2, 3]]), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(k12.multiply(&k23).unwrap(), expected);
        assert_eq!(k12.bracket(&k23).unwrap(), nu(3, 1, 2, 3));
        assert!(k12.bracket(&k12).unwrap().is_zero());
        assert!(k12.multiply(&kappa(4, 1, 2)).is_err());
    }

    #[test]
    fn conjugation() {
        let k12 = kappa(3, 1, 2);
        assert_eq!(k12.conjugate(&Permutation::identity(3)).unwrap(), k12);
        assert_eq!(k12.conjugate(&g(3, &[&[1, 3]])).unwrap(), kappa(3, 2, 3));
        let y = E::from_perm(g(3, &[&[1, 3]]));
        assert_eq!(k12.conjugate_by(&y).unwrap(), kappa(3, 2, 3));
        assert!(matches!(
            k12.conjugate_by(&y.scale(&int(2))),
            Err(Error::UnsupportedUnit(_))
        ));
        assert!(k12.conjugate_by(&k12).is_err());
    }

    #[test]
    fn sums_and_embedding() {
        assert_eq!(kappa(2, 1, 2).coeff_sum(), int(0));
        assert_eq!(E::one(3).coeff_sum(), int(1));
        assert_eq!(kappa(2, 1, 2).iota(), kappa(3, 1, 2));
        let x = nu(4, 1, 2, 4);
        assert_eq!(E::from_dense(4, &x.to_dense()).unwrap(), x);
    }

    #[test]
    fn rendering() {
        assert_eq!(kappa(2, 1, 2).to_string(), "1 - (1 2)");
        assert_eq!(nu(3, 1, 2, 3).to_string(), "(1 2 3) - (1 3 2)");
        assert_eq!(E::zero(3).to_string(), "0");
        let x = E::from_terms(3, [(g(3, &[&[1, 2]]), rat(-3, 4)), (Permutation::identity(3), int(2))]).unwrap();
        assert_eq!(x.to_string(), "2 - 3/4*(1 2)");
        let w = MultiPoly::var(0) + MultiPoly::var(1);
        let p = GroupAlgebraElement::term(g(2, &[&[1, 2]]), w);
        assert_eq!(p.to_string(), "(x0 + x1)*(1 2)");
    }

    #[test]
    fn json_round_trip() {
        let x = kappa(3, 1, 3).scale(&rat(5, 2));
        let v = x.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"coefficient":"5/2","cycles":[]},{"coefficient":"-5/2","cycles":[[1,3]]}]"#
        );
        assert_eq!(E::from_json(3, &v).unwrap(), x);
    }

    fn element(n: usize, max_terms: usize) -> impl Strategy<Value = E> {
        let all = Permutation::all(n);
        prop::collection::vec((0..all.len(), -5i64..6), 0..=max_terms)
            .prop_map(move |ts| E::from_terms(n, ts.into_iter().map(|(k, c)| (all[k].clone(), int(c)))).unwrap())
    }

    fn triple() -> impl Strategy<Value = (E, E, E, Permutation)> {
        (2usize..6).prop_flat_map(|n| {
            let all = Permutation::all(n);
            (
                element(n, 6),
                element(n, 6),
                element(n, 6),
                (0..all.len()).prop_map(move |k| all[k].clone()),
            )
        })
    }

    proptest! {
        #[test]
        fn algebra_laws((x, y, z, s) in triple()) {
            let xy = x.multiply(&y).unwrap();
            prop_assert_eq!(xy.multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
            prop_assert_eq!(xy.coeff_sum(), x.coeff_sum() * y.coeff_sum());
            let jacobi = x.bracket(&y.bracket(&z).unwrap()).unwrap()
                .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
                .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
            prop_assert!(jacobi.is_zero());
            let b = x.bracket(&y).unwrap();
            prop_assert_eq!(
                b.conjugate(&s).unwrap(),
                x.conjugate(&s).unwrap().bracket(&y.conjugate(&s).unwrap()).unwrap()
            );
            prop_assert_eq!(b.iota(), x.iota().bracket(&y.iota()).unwrap());
        }
    }
}
