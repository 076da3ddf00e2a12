//! Kirchhoff differences `κ`, their commutators `ν` and `η`, and Lie
//! closures of generator sets.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{int, Echelon, ExactMatrix, Rational, Ring};
use crate::group_algebra::GroupAlgebraElement;
use crate::limits::{check, Bounds};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Kappa,
    Nu,
    Eta,
}

impl Kind {
    pub fn arity(self) -> usize {
        match self {
            Kind::Kappa => 2,
            Kind::Nu => 3,
            Kind::Eta => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorId {
    pub kind: Kind,
    pub indices: Vec<usize>,
}

impl GeneratorId {
    pub fn new(kind: Kind, indices: &[usize]) -> Result<Self> {
        if indices.len() != kind.arity() {
            return Err(Error::InvalidIndex(format!(
                "{kind:?} takes {} indices, got {}",
                kind.arity(),
                indices.len()
            )));
        }
        if indices.iter().duplicates().next().is_some() {
            return Err(Error::InvalidCycle(format!("repeated index in {indices:?}")));
        }
        Ok(GeneratorId {
            kind,
            indices: indices.to_vec(),
        })
    }

    /// The same generator with every index replaced by `σ(index)`.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        GeneratorId {
            kind: self.kind,
            indices: self.indices.iter().map(|&i| sigma.apply(i)).collect(),
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Kind::Kappa => "kappa",
            Kind::Nu => "nu",
            Kind::Eta => "eta",
        };
        write!(f, "{name}_{}", self.indices.iter().join(","))
    }
}

fn signed_cycles<R: Ring>(n: usize, terms: &[(i64, &[usize])]) -> Result<GroupAlgebraElement<R>> {
    let mut x = GroupAlgebraElement::zero(n);
    for &(c, cyc) in terms {
        let g = if cyc.is_empty() {
            Permutation::identity(n)
        } else {
            Permutation::cycle(n, cyc)?
        };
        x.add_term(g, R::from_i64(c));
    }
    Ok(x)
}

/// The element named by `gen` in `Q[S_n]`.
pub fn make<R: Ring>(n: usize, gen: &GeneratorId) -> Result<GroupAlgebraElement<R>> {
    let ix = &gen.indices;
    match gen.kind {
        Kind::Kappa => signed_cycles(n, &[(1, &[]), (-1, &[ix[0], ix[1]])]),
        Kind::Nu => {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            signed_cycles(n, &[(1, &[i, j, k]), (-1, &[i, k, j])])
        }
        Kind::Eta => {
            let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
            signed_cycles(
                n,
                &[
                    (1, &[i, j, k, l]),
                    (1, &[i, l, k, j]),
                    (-1, &[i, j, l, k]),
                    (-1, &[i, k, l, j]),
                ],
            )
        }
    }
}

/// `κ_ij = 1 - (i j)`.
pub fn kappa(n: usize, i: usize, j: usize) -> Result<GroupAlgebraElement> {
    make(n, &GeneratorId::new(Kind::Kappa, &[i, j])?)
}

/// `ν_ijk = (i j k) - (i k j)`.
pub fn nu(n: usize, i: usize, j: usize, k: usize) -> Result<GroupAlgebraElement> {
    make(n, &GeneratorId::new(Kind::Nu, &[i, j, k])?)
}

/// `η_ijkl = (i j k l) + (i l k j) - (i j l k) - (i k l j)`.
pub fn eta(n: usize, i: usize, j: usize, k: usize, l: usize) -> Result<GroupAlgebraElement> {
    make(n, &GeneratorId::new(Kind::Eta, &[i, j, k, l])?)
}

/// All generators of one kind on labels `1..=n`, every ordering of every
/// index set.
pub fn all_generators(n: usize, kind: Kind) -> Vec<GeneratorId> {
    (1..=n)
        .permutations(kind.arity())
        .map(|ix| GeneratorId { kind, indices: ix })
        .collect()
}

/// `ξ_ijkl = w1·η_ijkl + w2·η_iklj` for `i < j < k < l`.
#[derive(Clone, Debug, PartialEq)]
pub struct XiElement<R = Rational> {
    pub indices: [usize; 4],
    pub w1: R,
    pub w2: R,
}

impl<R: Ring> XiElement<R> {
    pub fn new(indices: [usize; 4], w1: R, w2: R) -> Result<Self> {
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndex(format!("{indices:?} is not increasing")));
        }
        Ok(XiElement { indices, w1, w2 })
    }

    pub fn element(&self, n: usize) -> Result<GroupAlgebraElement<R>> {
        let [i, j, k, l] = self.indices;
        let a: GroupAlgebraElement<R> = make(n, &GeneratorId::new(Kind::Eta, &[i, j, k, l])?)?;
        let b: GroupAlgebraElement<R> = make(n, &GeneratorId::new(Kind::Eta, &[i, k, l, j])?)?;
        a.scale(&self.w1).add(&b.scale(&self.w2))
    }
}

/// Rank of a family of elements as vectors of length `n!`.
pub fn rank_of(elements: &[GroupAlgebraElement]) -> usize {
    let Some(first) = elements.first() else {
        return 0;
    };
    let width: usize = (1..=first.degree()).product();
    let mut ech = Echelon::new(width);
    for x in elements {
        ech.insert(x.to_dense());
    }
    ech.rank()
}

/// Coordinates of `x` in the span of independent `basis`, if it lies there.
pub fn coordinates(basis: &[GroupAlgebraElement], x: &GroupAlgebraElement) -> Option<Vec<Rational>> {
    let k = basis.len();
    let support: Vec<Permutation> = basis
        .iter()
        .chain(std::iter::once(x))
        .flat_map(|e| e.terms().map(|(g, _)| g.clone()))
        .unique()
        .collect();
    let aug = ExactMatrix::from_fn(support.len(), k + 1, |r, c| {
        if c < k {
            basis[c].coeff(&support[r])
        } else {
            x.coeff(&support[r])
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    Some((0..k).map(|r| red[(r, k)].clone()).collect())
}

/// Checks the index symmetries of `κ`, `ν`, `η` over the label set
/// `{1, 2, 3, 4}` in degree `n`; returns the violated identities.
pub fn verify_relations(n: usize) -> Result<Vec<String>> {
    if n < 4 {
        return Err(Error::InvalidIndex(format!("relations need n >= 4, got {n}")));
    }
    let mut bad = Vec::new();
    let mut expect = |what: String, lhs: GroupAlgebraElement, rhs: GroupAlgebraElement| {
        if lhs != rhs {
            bad.push(what);
        }
    };
    for ix in (1..=4).permutations(2) {
        let (p, q) = (ix[0], ix[1]);
        expect(format!("kappa_{q}{p} = kappa_{p}{q}"), kappa(n, q, p)?, kappa(n, p, q)?);
    }
    for ix in (1..=4).permutations(3) {
        let (p, q, r) = (ix[0], ix[1], ix[2]);
        let v = nu(n, p, q, r)?;
        expect(format!("nu_{p}{q}{r} = nu_{q}{r}{p}"), v.clone(), nu(n, q, r, p)?);
        expect(format!("nu_{p}{q}{r} = -nu_{q}{p}{r}"), v, nu(n, q, p, r)?.neg());
    }
    for ix in (1..=4).permutations(4) {
        let (p, q, r, s) = (ix[0], ix[1], ix[2], ix[3]);
        let e = eta(n, p, q, r, s)?;
        let tag = format!("{p}{q}{r}{s}");
        expect(
            format!("eta_{tag} = -eta_{q}{p}{r}{s}"),
            e.clone(),
            eta(n, q, p, r, s)?.neg(),
        );
        expect(
            format!("eta_{tag} = -eta_{p}{q}{s}{r}"),
            e.clone(),
            eta(n, p, q, s, r)?.neg(),
        );
        expect(format!("eta_{tag} = eta_{s}{r}{q}{p}"), e.clone(), eta(n, s, r, q, p)?);
        expect(format!("eta_{tag} = eta_{r}{s}{p}{q}"), e.clone(), eta(n, r, s, p, q)?);
        expect(format!("eta_{tag} = eta_{q}{p}{s}{r}"), e.clone(), eta(n, q, p, s, r)?);
        let three = e.add(&eta(n, p, r, s, q)?)?.add(&eta(n, p, s, q, r)?)?;
        expect(
            format!("eta_{tag} + eta_{p}{r}{s}{q} + eta_{p}{s}{q}{r} = 0"),
            three,
            GroupAlgebraElement::zero(n),
        );
    }
    Ok(bad)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpanDims {
    pub kappa: usize,
    pub nu: usize,
    pub eta: usize,
    /// `{η_1234, η_1342}` is independent and spans the `η` family.
    pub eta_basis: bool,
}

/// Ranks of the spans of all index orderings of `κ_12`, `ν_123`, `η_1234`.
pub fn span_dims(n: usize) -> Result<SpanDims> {
    if n < 4 {
        return Err(Error::InvalidIndex(format!("span dims need n >= 4, got {n}")));
    }
    let family = |kind: Kind| -> Result<Vec<GroupAlgebraElement>> {
        (1..=kind.arity())
            .permutations(kind.arity())
            .map(|ix| make(n, &GeneratorId::new(kind, &ix)?))
            .collect()
    };
    let etas = family(Kind::Eta)?;
    let basis = vec![eta(n, 1, 2, 3, 4)?, eta(n, 1, 3, 4, 2)?];
    let eta_basis = rank_of(&basis) == 2 && etas.iter().all(|e| coordinates(&basis, e).is_some());
    Ok(SpanDims {
        kappa: rank_of(&family(Kind::Kappa)?),
        nu: rank_of(&family(Kind::Nu)?),
        eta: rank_of(&etas),
        eta_basis,
    })
}

/// 2×2 matrix of the index action of `σ ∈ S_4` on `span{η_1234, η_1342}`.
pub fn eta_action_matrix(sigma: &Permutation) -> Result<ExactMatrix<Rational>> {
    let basis = [eta(4, 1, 2, 3, 4)?, eta(4, 1, 3, 4, 2)?];
    let mut cols = Vec::new();
    for b in &basis {
        let img = b.conjugate(sigma)?;
        cols.push(coordinates(&basis, &img).ok_or_else(|| Error::Structure(format!("{img} leaves the eta span")))?);
    }
    Ok(ExactMatrix::from_fn(2, 2, |i, j| cols[j][i].clone()))
}

/// Element `a + b·λ` of `Q[λ]/(λ² - tλ + d)`.
#[derive(Clone, Debug)]
struct Quad {
    a: Rational,
    b: Rational,
}

impl Quad {
    fn mul(&self, o: &Quad, t: &Rational, d: &Rational) -> Quad {
        let bd = &self.b * &o.b;
        Quad {
            a: &self.a * &o.a - &bd * d,
            b: &self.a * &o.b + &self.b * &o.a + &bd * t,
        }
    }

    fn sub(&self, o: &Quad) -> Quad {
        Quad {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn scale(&self, c: &Rational) -> Quad {
        Quad {
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.a.is_zero() && self.b.is_zero()
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    use num_bigint::Sign;
    if q.numer().sign() == Sign::Minus {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn is_eigvec(m: &ExactMatrix<Rational>, v: &[Rational; 2]) -> bool {
    use num_traits::Zero;
    let w0 = &m[(0, 0)] * &v[0] + &m[(0, 1)] * &v[1];
    let w1 = &m[(1, 0)] * &v[0] + &m[(1, 1)] * &v[1];
    (&v[0] * &w1 - &v[1] * &w0).is_zero()
}

/// True iff the 2×2 rational matrices have no common eigenvector over the
/// algebraic closure of `Q`.
pub fn no_common_eigenline(matrices: &[ExactMatrix<Rational>]) -> bool {
    use num_traits::Zero;
    let Some(m) = matrices
        .iter()
        .find(|m| !(m[(0, 1)].is_zero() && m[(1, 0)].is_zero() && m[(0, 0)] == m[(1, 1)]))
    else {
        return false;
    };
    let (a, b, c, d) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
    let tr = a + d;
    let det = a * d - b * c;
    let disc = &tr * &tr - int(4) * &det;
    if b.is_zero() && c.is_zero() {
        let lines = [[int(1), int(0)], [int(0), int(1)]];
        return !lines.iter().any(|v| matrices.iter().all(|x| is_eigvec(x, v)));
    }
    // eigenvector (b, λ - a) if b ≠ 0, else (λ - d, c)
    let vec_at = |lam: &Rational| -> [Rational; 2] {
        if !b.is_zero() {
            [b.clone(), lam - a]
        } else {
            [lam - d, c.clone()]
        }
    };
    if let Some(root) = rational_sqrt(&disc) {
        let half = int(1) / int(2);
        let roots = [(&tr + &root) * &half, (&tr - &root) * &half];
        return !roots
            .iter()
            .any(|lam| matrices.iter().all(|x| is_eigvec(x, &vec_at(lam))));
    }
    let lam = Quad { a: int(0), b: int(1) };
    let one = Quad { a: int(1), b: int(0) };
    let v: [Quad; 2] = if !b.is_zero() {
        [one.scale(b), lam.sub(&one.scale(a))]
    } else {
        [lam.sub(&one.scale(d)), one.scale(c)]
    };
    !matrices.iter().all(|x| {
        let w0 = Quad {
            a: &x[(0, 0)] * &v[0].a + &x[(0, 1)] * &v[1].a,
            b: &x[(0, 0)] * &v[0].b + &x[(0, 1)] * &v[1].b,
        };
        let w1 = Quad {
            a: &x[(1, 0)] * &v[0].a + &x[(1, 1)] * &v[1].a,
            b: &x[(1, 0)] * &v[0].b + &x[(1, 1)] * &v[1].b,
        };
        v[0].mul(&w1, &tr, &det).sub(&v[1].mul(&w0, &tr, &det)).is_zero()
    })
}

/// The index action of `S_4` on `span{η_1234, η_1342}` has no invariant
/// line.
pub fn no_invariant_line() -> Result<bool> {
    let gens = [[1, 2], [2, 3], [3, 4]]
        .iter()
        .map(|t| eta_action_matrix(&Permutation::transposition(4, t[0], t[1])?))
        .collect::<Result<Vec<_>>>()?;
    Ok(no_common_eigenline(&gens))
}

/// Index transpositions fix `κ_12`.
pub fn kappa_span_is_trivial(n: usize) -> Result<bool> {
    Ok(kappa(n, 2, 1)? == kappa(n, 1, 2)?)
}

/// Index permutations act on `ν_123` by their sign.
pub fn nu_span_is_sign(n: usize) -> Result<bool> {
    let base = nu(n, 1, 2, 3)?;
    for sigma in Permutation::all(3) {
        let img = nu(n, sigma.apply(1), sigma.apply(2), sigma.apply(3))?;
        if img != base.scale(&int(sigma.sign())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest bracket-closed subspace containing `generators`. The basis is
/// the generators followed by the brackets that enlarged the span, in the
/// order found.
pub fn lie_closure(generators: &[GroupAlgebraElement], n: usize, bounds: &Bounds) -> Result<Vec<GroupAlgebraElement>> {
    check("lie closure degree", n, bounds.lie_n)?;
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(n, g.degree()));
    }
    let width: usize = (1..=n).product();
    let mut ech = Echelon::new(width);
    let mut basis = Vec::new();
    for g in generators {
        if ech.insert(g.to_dense()) {
            basis.push(g.clone());
        }
    }
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let products: Vec<GroupAlgebraElement> = frontier
            .par_iter()
            .flat_map_iter(|b| generators.iter().map(move |g| b.bracket(g).expect("same degree")))
            .collect();
        frontier.clear();
        for p in products {
            if !p.is_zero() && ech.insert(p.to_dense()) {
                basis.push(p.clone());
                frontier.push(p);
            }
        }
    }
    Ok(basis)
}

/// All Kirchhoff differences `κ_ij`, `i < j`.
pub fn kirchhoff_differences(n: usize) -> Result<Vec<GroupAlgebraElement>> {
    (1..=n).tuple_combinations().map(|(i, j)| kappa(n, i, j)).collect()
}

/// `[...[κ_{1 i_1}, κ_{2 i_2}], ...], κ_{n-1, i_{n-1}}]` for all
/// `s + 1 <= i_s <= n`, in lexicographic order of `(i_1, ..., i_{n-1})`.
pub fn repeated_commutator_set(n: usize, bounds: &Bounds) -> Result<Vec<GroupAlgebraElement>> {
    check("repeated commutator degree", n, bounds.lie_n)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    let choices = (1..n).map(|s| s + 1..=n).multi_cartesian_product();
    let mut out = Vec::new();
    for ix in choices {
        let mut x = kappa(n, 1, ix[0])?;
        for (s, &i) in ix.iter().enumerate().skip(1) {
            x = x.bracket(&kappa(n, s + 1, i)?)?;
        }
        out.push(x);
    }
    Ok(out)
}
