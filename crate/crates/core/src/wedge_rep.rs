//! The operators `Grp_m` and `Alg_m` on exterior powers, the Lie-element
//! test and the linear solver for the space of Lie elements.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{int, Echelon, ExactMatrix, Ring};
use crate::group_algebra::GroupAlgebraElement;
use crate::limits::{check, Bounds};
use crate::perm::Permutation;

/// Which representation of `S_n` the exterior powers are built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `Q^n` with `g v_i = v_{g(i)}`.
    Permutation,
    /// `V = {Σ x_i = 0}` in the basis `v_i - v_n`.
    Reflection,
}

impl Representation {
    pub fn dim(self, n: usize) -> usize {
        match self {
            Representation::Permutation => n,
            Representation::Reflection => n.saturating_sub(1),
        }
    }
}

/// The `m`-subsets of `{0..d-1}` in lexicographic order, indexing the basis
/// `v_{i_1} ∧ ... ∧ v_{i_m}` of `Λ^m`.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    d: usize,
    m: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if m > d {
            return Err(Error::Dimension(format!("wedge degree {m} exceeds dimension {d}")));
        }
        let subsets: Vec<Vec<usize>> = (0..d).combinations(m).collect();
        let index = subsets.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        Ok(WedgeBasis { d, m, subsets, index })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Zero-based sorted subset of basis vector `k`.
    pub fn subset(&self, k: usize) -> &[usize] {
        &self.subsets[k]
    }

    pub fn index_of(&self, sorted: &[usize]) -> Option<usize> {
        self.index.get(sorted).copied()
    }

    /// Index and sign of the wedge of the given vectors, or `None` if an
    /// index repeats.
    pub fn locate(&self, idx: &[usize]) -> Option<(usize, i64)> {
        let mut v = idx.to_vec();
        let sign = sort_sign(&mut v)?;
        Some((self.index[&v], sign))
    }
}

/// Sorts in place and returns the sign of the sorting permutation; `None` on
/// a repeated entry.
fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

type Sparse = Vec<(usize, usize, i64)>;

fn grp_perm(g: &Permutation, basis: &WedgeBasis) -> Sparse {
    let mut out = Vec::with_capacity(basis.len());
    for (col, s) in basis.subsets.iter().enumerate() {
        let img: Vec<usize> = s.iter().map(|&i| g.image0(i)).collect();
        if let Some((row, sign)) = basis.locate(&img) {
            out.push((row, col, sign));
        }
    }
    out
}

fn alg_perm(g: &Permutation, basis: &WedgeBasis) -> Sparse {
    let mut out = Vec::new();
    for (col, s) in basis.subsets.iter().enumerate() {
        for p in 0..s.len() {
            let mut img = s.clone();
            img[p] = g.image0(s[p]);
            if let Some((row, sign)) = basis.locate(&img) {
                out.push((row, col, sign));
            }
        }
    }
    out
}

/// Integer matrix of a permutation in the given representation.
pub fn perm_matrix(g: &Permutation, rep: Representation) -> ExactMatrix<i64> {
    let n = g.degree();
    let p = ExactMatrix::from_fn(n, n, |i, j| i64::from(g.image0(j) == i));
    match rep {
        Representation::Permutation => p,
        Representation::Reflection => {
            let b = ExactMatrix::from_fn(n, n - 1, |i, j| {
                if i == j {
                    1
                } else if i == n - 1 {
                    -1
                } else {
                    0
                }
            });
            let pb = p.mul(&b).expect("shapes agree");
            pb.submatrix(&(0..n - 1).collect::<Vec<_>>(), &(0..n - 1).collect::<Vec<_>>())
        }
    }
}

fn grp_general(rho: &ExactMatrix<i64>, basis: &WedgeBasis) -> Sparse {
    let mut out = Vec::new();
    for (col, s) in basis.subsets.iter().enumerate() {
        for (row, t) in basis.subsets.iter().enumerate() {
            let minor = rho.submatrix(t, s).det().expect("square minor");
            if minor != 0 {
                out.push((row, col, minor));
            }
        }
    }
    out
}

fn alg_general(rho: &ExactMatrix<i64>, basis: &WedgeBasis) -> Sparse {
    let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
    for (col, s) in basis.subsets.iter().enumerate() {
        for p in 0..s.len() {
            for t in 0..basis.d {
                let a = rho[(t, s[p])];
                if a == 0 {
                    continue;
                }
                let mut img = s.clone();
                img[p] = t;
                if let Some((row, sign)) = basis.locate(&img) {
                    *acc.entry((row, col)).or_insert(0) += sign * a;
                }
            }
        }
    }
    acc.into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|((r, c), v)| (r, c, v))
        .collect()
}

fn operator_entries(g: &Permutation, basis: &WedgeBasis, rep: Representation, alg: bool) -> Sparse {
    match (rep, alg) {
        (Representation::Permutation, false) => grp_perm(g, basis),
        (Representation::Permutation, true) => alg_perm(g, basis),
        (Representation::Reflection, false) => grp_general(&perm_matrix(g, rep), basis),
        (Representation::Reflection, true) => alg_general(&perm_matrix(g, rep), basis),
    }
}

fn operator<R: Ring>(x: &GroupAlgebraElement<R>, m: usize, rep: Representation, alg: bool) -> Result<ExactMatrix<R>> {
    let d = rep.dim(x.degree());
    let basis = WedgeBasis::new(d, m)?;
    if m == 0 {
        let v = if alg { R::zero() } else { x.coeff_sum() };
        return ExactMatrix::new(1, 1, vec![v]);
    }
    let mut out = ExactMatrix::zeros(basis.len(), basis.len());
    for (g, c) in x.terms() {
        for (r, col, v) in operator_entries(g, &basis, rep, alg) {
            let cur = std::mem::replace(&mut out[(r, col)], R::zero());
            out[(r, col)] = cur + c.clone() * R::from_i64(v);
        }
    }
    Ok(out)
}

/// Matrix of `Grp_m⟨x⟩` on `Λ^m(Q^n)` in the lexicographic wedge basis.
pub fn grp_matrix<R: Ring>(x: &GroupAlgebraElement<R>, m: usize) -> Result<ExactMatrix<R>> {
    operator(x, m, Representation::Permutation, false)
}

/// Matrix of `Alg_m⟨x⟩` on `Λ^m(Q^n)`.
pub fn alg_matrix<R: Ring>(x: &GroupAlgebraElement<R>, m: usize) -> Result<ExactMatrix<R>> {
    operator(x, m, Representation::Permutation, true)
}

pub fn grp_matrix_on<R: Ring>(x: &GroupAlgebraElement<R>, m: usize, rep: Representation) -> Result<ExactMatrix<R>> {
    operator(x, m, rep, false)
}

pub fn alg_matrix_on<R: Ring>(x: &GroupAlgebraElement<R>, m: usize, rep: Representation) -> Result<ExactMatrix<R>> {
    operator(x, m, rep, true)
}

/// `Grp_m⟨x⟩ = Alg_m⟨x⟩` for every `m = 0..=n` on `Q^n`.
pub fn is_lie<R: Ring>(x: &GroupAlgebraElement<R>) -> bool {
    is_lie_on(x, Representation::Permutation)
}

pub fn is_lie_on<R: Ring>(x: &GroupAlgebraElement<R>, rep: Representation) -> bool {
    (0..=rep.dim(x.degree()))
        .all(|m| operator(x, m, rep, false).expect("m in range") == operator(x, m, rep, true).expect("m in range"))
}

/// Matrix of `x` acting on the representation; column `i` is `x·b_i`.
pub fn action_matrix<R: Ring>(x: &GroupAlgebraElement<R>, rep: Representation) -> ExactMatrix<R> {
    let d = rep.dim(x.degree());
    let mut out = ExactMatrix::zeros(d, d);
    for (g, c) in x.terms() {
        let p = perm_matrix(g, rep);
        for i in 0..d {
            for j in 0..d {
                let v = p[(i, j)];
                if v != 0 {
                    let cur = std::mem::replace(&mut out[(i, j)], R::zero());
                    out[(i, j)] = cur + c.clone() * R::from_i64(v);
                }
            }
        }
    }
    out
}

/// Basis of the Lie elements of `Q[S_n]`, one element per free coordinate
/// of the reduced constraint system in permutation-enumeration order.
#[derive(Clone, Debug)]
pub struct LieSpace {
    n: usize,
    basis: Vec<GroupAlgebraElement>,
    echelon: Echelon,
}

impl LieSpace {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GroupAlgebraElement] {
        &self.basis
    }

    pub fn contains(&self, x: &GroupAlgebraElement) -> bool {
        x.degree() == self.n && self.echelon.contains(&x.to_dense())
    }
}

/// The space of Lie elements for `S_n` acting on `Q^n`.
pub fn lie_space(n: usize) -> Result<LieSpace> {
    lie_space_on(n, Representation::Permutation, &Bounds::default())
}

/// Solves `Grp_m = Alg_m` entrywise for `m = 0..=dim`, with one unknown per
/// permutation.
pub fn lie_space_on(n: usize, rep: Representation, bounds: &Bounds) -> Result<LieSpace> {
    check("lie space degree", n, bounds.lie_n)?;
    let perms = Permutation::all(n);
    let d = rep.dim(n);
    let bases: Vec<WedgeBasis> = (1..=d).map(|m| WedgeBasis::new(d, m)).collect::<Result<_>>()?;
    let mut offsets = Vec::with_capacity(bases.len());
    let mut total = 1; // the m = 0 equation: Σ a_g = 0
    for b in &bases {
        offsets.push(total);
        total += b.len() * b.len();
    }
    let columns: Vec<Vec<(usize, i64)>> = perms
        .par_iter()
        .map(|g| {
            let mut col: HashMap<usize, i64> = HashMap::new();
            col.insert(0, 1);
            for (b, &off) in bases.iter().zip(&offsets) {
                let size = b.len();
                for (r, c, v) in operator_entries(g, b, rep, false) {
                    *col.entry(off + r * size + c).or_insert(0) += v;
                }
                for (r, c, v) in operator_entries(g, b, rep, true) {
                    *col.entry(off + r * size + c).or_insert(0) -= v;
                }
            }
            let mut col: Vec<(usize, i64)> = col.into_iter().filter(|&(_, v)| v != 0).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); total];
    for (j, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            rows[r].push((j, v));
        }
    }
    let mut seen = BTreeSet::new();
    let mut distinct: Vec<Vec<(usize, i64)>> = Vec::new();
    for row in rows {
        if row.is_empty() {
            continue;
        }
        let neg: Vec<(usize, i64)> = row.iter().map(|&(j, v)| (j, -v)).collect();
        if seen.contains(&row) || seen.contains(&neg) {
            continue;
        }
        seen.insert(row.clone());
        distinct.push(row);
    }
    distinct.sort_by_key(|r| r.len());
    let width = perms.len();
    let mut ech = Echelon::new(width);
    for row in distinct {
        let mut dense = vec![int(0); width];
        for (j, v) in row {
            dense[j] = int(v);
        }
        ech.insert(dense);
        if ech.rank() == width {
            break;
        }
    }
    let basis = ech
        .kernel()
        .into_iter()
        .map(|v| GroupAlgebraElement::from_dense(n, &v))
        .collect::<Result<Vec<_>>>()?;
    let mut echelon = Echelon::new(width);
    for b in &basis {
        echelon.insert(b.to_dense());
    }
    Ok(LieSpace { n, basis, echelon })
}

/// `(dim L_n, dim K_n)` where `K_n` is the kernel of the action of `L_n`
/// on `Q^n`.
pub fn kernel_dim(n: usize, bounds: &Bounds) -> Result<(usize, usize)> {
    let space = lie_space_on(n, Representation::Permutation, bounds)?;
    Ok((space.dim(), space.dim() - action_rank(space.basis())))
}

/// Rank of the span of the action matrices on `Q^n`.
pub fn action_rank(elements: &[GroupAlgebraElement]) -> usize {
    let Some(first) = elements.first() else {
        return 0;
    };
    let n = first.degree();
    let mut ech = Echelon::new(n * n);
    for x in elements {
        ech.insert(action_matrix(x, Representation::Permutation).data().to_vec());
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    type E = GroupAlgebraElement;

    fn g(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn kappa(n: usize, i: usize, j: usize) -> E {
        E::one(n).sub(&E::from_perm(g(n, &[&[i, j]]))).unwrap()
    }

    #[test]
    fn wedge_signs() {
        let b = WedgeBasis::new(4, 2).unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(b.locate(&[1, 0]), Some((0, -1)));
        assert_eq!(b.locate(&[2, 2]), None);
        assert_eq!(b.locate(&[0, 3]), Some((2, 1)));
        assert!(WedgeBasis::new(2, 3).is_err());
    }

    #[test]
    fn unit_and_transposition() {
        for m in 0..=4 {
            let size = WedgeBasis::new(4, m).unwrap().len();
            assert_eq!(grp_matrix(&E::one(4), m).unwrap(), ExactMatrix::identity(size));
            let expected = if m == 0 {
                ExactMatrix::zeros(1, 1)
            } else {
                ExactMatrix::identity(size).scale(&int(m as i64))
            };
            assert_eq!(alg_matrix(&E::one(4), m).unwrap(), expected);
        }
        let t = E::from_perm(g(2, &[&[1, 2]]));
        assert_eq!(grp_matrix(&t, 2).unwrap().data(), &[int(-1)]);
        assert_eq!(alg_matrix(&t, 2).unwrap().data(), &[int(0)]);
        assert_eq!(alg_matrix(&t, 0).unwrap().data(), &[int(0)]);
        assert!(grp_matrix(&t, 3).is_err());
    }

    #[test]
    fn kirchhoff_difference_doubles_wedges_containing_both() {
        let k = kappa(4, 1, 2);
        for m in 2..=4 {
            let basis = WedgeBasis::new(4, m).unwrap();
            let gm = grp_matrix(&k, m).unwrap();
            for (col, s) in basis.subsets.iter().enumerate() {
                if s.starts_with(&[0, 1]) {
                    for row in 0..basis.len() {
                        let want = if row == col { int(2) } else { int(0) };
                        assert_eq!(gm[(row, col)], want);
                    }
                }
            }
        }
    }

    #[test]
    fn membership() {
        assert!(is_lie(&kappa(3, 1, 3)));
        assert!(!is_lie(&E::one(3)));
        assert!(!is_lie(&E::from_perm(g(3, &[&[1, 2]]))));
        let nu = E::from_perm(g(4, &[&[1, 2, 3]]))
            .sub(&E::from_perm(g(4, &[&[1, 3, 2]])))
            .unwrap();
        assert!(is_lie(&nu));
        assert!(is_lie_on(&nu, Representation::Reflection));
    }

    #[test]
    fn action_matrices() {
        let k = action_matrix(&kappa(2, 1, 2), Representation::Permutation);
        assert_eq!(k.data(), &[int(1), int(-1), int(-1), int(1)]);
        assert_eq!(
            action_matrix(&E::one(3), Representation::Permutation),
            ExactMatrix::identity(3)
        );
        let r = action_matrix(&kappa(2, 1, 2), Representation::Reflection);
        assert_eq!(r.data(), &[int(2)]);
    }

    #[test]
    fn solver_small_cases() {
        let s = lie_space(2).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&kappa(2, 1, 2)));
        let s3 = lie_space(3).unwrap();
        for b in s3.basis() {
            assert!(is_lie(b));
            assert_eq!(b.coeff_sum(), int(0));
        }
        assert_eq!(kernel_dim(2, &Bounds::default()).unwrap(), (1, 0));
        assert!(matches!(
            lie_space_on(7, Representation::Permutation, &Bounds::default()),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn reflection_and_permutation_agree_on_small_degrees() {
        for n in 2..=4 {
            let a = lie_space_on(n, Representation::Permutation, &Bounds::default()).unwrap();
            let b = lie_space_on(n, Representation::Reflection, &Bounds::default()).unwrap();
            assert_eq!(a.dim(), b.dim());
            assert!(b.basis().iter().all(|x| a.contains(x)));
        }
    }

    #[test]
    fn general_path_matches_fast_path() {
        let x = kappa(4, 1, 3).add(&E::term(g(4, &[&[1, 2, 4]]), rat(3, 2))).unwrap();
        for m in 0..=4 {
            let basis = WedgeBasis::new(4, m).unwrap();
            for (p, _) in x.terms() {
                let rho = perm_matrix(p, Representation::Permutation);
                assert_eq!(merged(grp_perm(p, &basis)), merged(grp_general(&rho, &basis)));
                assert_eq!(merged(alg_perm(p, &basis)), merged(alg_general(&rho, &basis)));
            }
        }
    }

    fn merged(entries: Sparse) -> std::collections::BTreeMap<(usize, usize), i64> {
        let mut out = std::collections::BTreeMap::new();
        for (r, c, v) in entries {
            *out.entry((r, c)).or_insert(0) += v;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn pair() -> impl Strategy<Value = (E, E, Permutation)> {
        (2usize..6).prop_flat_map(|n| {
            let all = Permutation::all(n);
            let a2 = all.clone();
            let elem = move || {
                let all = all.clone();
                prop::collection::vec((0..all.len(), -4i64..5), 1..5).prop_map(move |ts| {
                    E::from_terms(n, ts.into_iter().map(|(k, c)| (all[k].clone(), int(c)))).unwrap()
                })
            };
            (elem(), elem(), (0..a2.len()).prop_map(move |k| a2[k].clone()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn operators_are_homomorphisms((x, y, s) in pair()) {
            let b = x.bracket(&y).unwrap();
            let xc = x.conjugate(&s).unwrap();
            let se = E::from_perm(s.clone());
            let si = E::from_perm(s.inverse());
            for m in 0..=x.degree() {
                for alg in [false, true] {
                    let f = |e: &E| operator(e, m, Representation::Permutation, alg).unwrap();
                    prop_assert_eq!(f(&b), f(&x).commutator(&f(&y)).unwrap());
                    let gs = grp_matrix(&se, m).unwrap();
                    let gi = grp_matrix(&si, m).unwrap();
                    prop_assert_eq!(f(&xc), gs.mul(&f(&x)).unwrap().mul(&gi).unwrap());
                }
            }
        }
    }
}
