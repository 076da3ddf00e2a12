use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::rational::{int, parse_rational, Rational};
use super::Ring;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> ExactMatrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<S: Ring, F: FnMut(&R) -> S>(&self, f: F) -> ExactMatrix<S> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], R::zero());
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> Result<R> {
        self.check_square()?;
        Ok((0..self.rows).fold(R::zero(), |acc, i| acc + self[(i, i)].clone()))
    }

    pub fn det(&self) -> Result<R> {
        self.check_square()?;
        Ok(R::determinant(self))
    }

    /// Pfaffian by expansion along the first row, normalized so that
    /// `Pf [[0, 1], [-1, 0]] = 1`.
    pub fn pfaffian(&self) -> Result<R> {
        self.check_square()?;
        if self.rows % 2 == 1 {
            return Err(Error::Structure(format!("pfaffian of odd dimension {}", self.rows)));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if self[(i, j)] != -self[(j, i)].clone() {
                    return Err(Error::Structure(format!("matrix is not skew-symmetric at ({i}, {j})")));
                }
            }
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(pfaffian_rec(self, &idx))
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }
}

fn pfaffian_rec<R: Ring>(m: &ExactMatrix<R>, idx: &[usize]) -> R {
    if idx.is_empty() {
        return R::one();
    }
    let first = idx[0];
    let mut acc = R::zero();
    for pos in 1..idx.len() {
        let a = &m[(first, idx[pos])];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != 0 && p != pos)
            .map(|(_, &v)| v)
            .collect();
        let term = a.clone() * pfaffian_rec(m, &rest);
        acc = if pos % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

pub(crate) fn bareiss_det<R: Ring>(m: &ExactMatrix<R>) -> R {
    let n = m.rows;
    if n == 0 {
        return R::one();
    }
    let mut a = m.data.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return R::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let num = a[i * n + j].clone() * pivot.clone() - lead.clone() * a[k * n + j].clone();
                a[i * n + j] = num.exact_div(&prev).expect("Bareiss quotient is exact");
            }
            a[i * n + k] = R::zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub(crate) fn gaussian_det(m: &ExactMatrix<Rational>) -> Rational {
    let n = m.rows;
    let mut a = m.data.clone();
    let mut det = int(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            let f = &a[i * n + k] / &pivot;
            for j in k + 1..n {
                let t = &f * &a[k * n + j];
                a[i * n + j] -= t;
            }
            a[i * n + k] = Rational::zero();
        }
    }
    det
}

impl ExactMatrix<Rational> {
    /// Rows separated by `;`, entries by commas or whitespace: `"1 2; 3/4 -1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(';')
            .map(|r| {
                r.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(parse_rational)
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(rows)
    }

    /// Coefficients `c_0, ..., c_n` of `det(tI - M)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Result<Vec<Rational>> {
        self.check_square()?;
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = int(1);
        let mut aux = ExactMatrix::<Rational>::zeros(n, n);
        for k in 1..=n {
            // aux <- M * aux + c_{n-k+1} I
            let mut next = self.mul(&aux)?;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            aux = next;
            let tr = self.mul(&aux)?.trace()?;
            coeffs[n - k] = -tr / int(k as i64);
        }
        Ok(coeffs)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix<Rational>, Vec<usize>) {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        let (rows, pivots) = ech.sorted_rows();
        let r = rows.len();
        let mut data: Vec<Rational> = rows.into_iter().flatten().collect();
        data.resize(self.rows * self.cols, Rational::zero());
        let _ = r;
        (
            ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing
    /// column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.kernel()
    }
}

impl<R> Index<(usize, usize)> for ExactMatrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for ExactMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Display> fmt::Display for ExactMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        f.write_str("]")
    }
}

/// Incrementally maintained reduced row echelon basis of a subspace of
/// `Q^width`.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    v[j] -= &f * x;
                }
            }
        }
    }

    /// Reduces `v` against the basis; adds it and returns `true` if it was
    /// independent.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.width, "vector width");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = int(1) / &v[p];
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (j, x) in v.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    row[j] -= &f * x;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Basis rows ordered by pivot column.
    pub fn sorted_rows(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        (
            order.iter().map(|&i| self.rows[i].clone()).collect(),
            order.iter().map(|&i| self.pivots[i]).collect(),
        )
    }

    /// Kernel of the map whose rows span this subspace: one vector per free
    /// column, in increasing column order.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.sorted_rows();
        let mut is_pivot = vec![false; self.width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.width)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.width];
                v[f] = Rational::one();
                for (row, &p) in rows.iter().zip(&pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, MultiPoly};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    // Leibniz expansion, used as an independent oracle
    fn leibniz<R: Ring>(m: &ExactMatrix<R>) -> R {
        use itertools::Itertools;
        let n = m.rows();
        let mut acc = R::zero();
        for p in (0..n).permutations(n) {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut t = R::one();
            for i in 0..n {
                t = t * m[(i, p[i])].clone();
            }
            acc = if inv % 2 == 0 { acc + t } else { acc - t };
        }
        acc
    }

    #[test]
    fn det_examples() {
        assert_eq!(ExactMatrix::<Rational>::identity(2).det().unwrap(), int(1));
        assert_eq!(q(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]).det().unwrap(), int(0));
        let (a, b, c, d) = (
            MultiPoly::var(0),
            MultiPoly::var(1),
            MultiPoly::var(2),
            MultiPoly::var(3),
        );
        let m = ExactMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        assert_eq!(m.det().unwrap(), &(&a * &d) - &(&b * &c));
        assert!(q(&[&[1, 2, 3]]).det().is_err());
    }

    #[test]
    fn bareiss_needs_row_swap() {
        let m = q(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        assert_eq!(bareiss_det(&m), gaussian_det(&m));
        assert_eq!(m.det().unwrap(), int(7));
        let mi = m.map(|x| x.to_integer().try_into().unwrap_or(0i64));
        assert_eq!(mi.det().unwrap(), 7);
    }

    #[test]
    fn symbolic_det_matches_leibniz() {
        let m = ExactMatrix::from_fn(3, 3, |i, j| MultiPoly::var((3 * i + j) as u32));
        assert_eq!(m.det().unwrap(), leibniz(&m));
    }

    #[test]
    fn charpoly_examples() {
        let z = ExactMatrix::<Rational>::zeros(4, 4);
        assert_eq!(z.charpoly().unwrap(), vec![int(0), int(0), int(0), int(0), int(1)]);
        let d = q(&[&[2, 0, 0, 0], &[0, -2, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(d.charpoly().unwrap(), vec![int(0), int(0), int(-4), int(0), int(1)]);
    }

    #[test]
    fn pfaffian_examples() {
        let p = MultiPoly::var(0);
        let m = ExactMatrix::from_rows(vec![
            vec![MultiPoly::zero(), p.clone()],
            vec![-p.clone(), MultiPoly::zero()],
        ])
        .unwrap();
        assert_eq!(m.pfaffian().unwrap(), p);
        let blk = q(&[&[0, 3, 0, 0], &[-3, 0, 0, 0], &[0, 0, 0, 5], &[0, 0, -5, 0]]);
        assert_eq!(blk.pfaffian().unwrap(), int(15));
        assert!(q(&[&[0, 1, 2], &[-1, 0, 3], &[-2, -3, 0]]).pfaffian().is_err());
        assert!(q(&[&[0, 1], &[1, 0]]).pfaffian().is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::<Rational>::identity(3).nullspace().is_empty());
        let row = q(&[&[1, 1, 1]]);
        let ns = row.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: Rational = v.iter().fold(int(0), |a, b| a + b);
            assert_eq!(s, int(0));
        }
        let lap = q(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(lap.nullspace(), vec![vec![int(1), int(1), int(1)]]);
    }

    #[test]
    fn echelon_contains() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![int(1), int(2), int(0)]));
        assert!(e.insert(vec![int(0), int(1), int(1)]));
        assert!(!e.insert(vec![int(1), int(3), int(1)]));
        assert!(e.contains(&[int(2), int(5), int(1)]));
        assert!(!e.contains(&[int(0), int(0), int(1)]));
        assert_eq!(e.rank(), 2);
    }

    fn rat_matrix(n: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
        prop::collection::vec((-9i64..10, 1i64..5), n * n)
            .prop_map(move |v| ExactMatrix::new(n, n, v.into_iter().map(|(a, b)| rat(a, b)).collect()).unwrap())
    }

    fn skew(n: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
        prop::collection::vec((-9i64..10, 1i64..4), n * n).prop_map(move |v| {
            ExactMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => rat(v[i * n + j].0, v[i * n + j].1),
                std::cmp::Ordering::Greater => -rat(v[j * n + i].0, v[j * n + i].1),
                std::cmp::Ordering::Equal => int(0),
            })
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in rat_matrix(4), b in rat_matrix(4)) {
            prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), a.det().unwrap() * b.det().unwrap());
            prop_assert_eq!(a.det().unwrap(), leibniz(&a));
            prop_assert_eq!(bareiss_det(&a), gaussian_det(&a));
        }

        #[test]
        fn charpoly_trace_and_det(a in rat_matrix(4)) {
            let c = a.charpoly().unwrap();
            prop_assert_eq!(c[4].clone(), int(1));
            prop_assert_eq!(c[3].clone(), -a.trace().unwrap());
            prop_assert_eq!(c[0].clone(), a.det().unwrap());
        }

        #[test]
        fn pfaffian_squares_to_det(a in skew(4), b in skew(6)) {
            let pa = a.pfaffian().unwrap();
            prop_assert_eq!(&pa * &pa, a.det().unwrap());
            let pb = b.pfaffian().unwrap();
            prop_assert_eq!(&pb * &pb, b.det().unwrap());
        }

        #[test]
        fn pfaffian_congruence(m in skew(4), s in rat_matrix(4)) {
            let t = s.transpose().mul(&m).unwrap().mul(&s).unwrap();
            prop_assert_eq!(t.pfaffian().unwrap(), s.det().unwrap() * m.pfaffian().unwrap());
        }

        #[test]
        fn nullspace_is_annihilated(a in prop::collection::vec(-3i64..4, 12)) {
            let m = ExactMatrix::new(3, 4, a.into_iter().map(int).collect()).unwrap();
            let ns = m.nullspace();
            prop_assert_eq!(ns.len() + m.rank(), 4);
            for v in ns {
                let col = ExactMatrix::new(4, 1, v).unwrap();
                prop_assert!(m.mul(&col).unwrap().is_zero());
            }
        }
    }
}
