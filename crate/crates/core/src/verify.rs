//! End-to-end checks: each compares an algebraic computation in the group
//! algebra against an independent combinatorial formula, exactly.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use itertools::Itertools;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{int, random_rational, ExactMatrix, MultiPoly, Rational, Ring};
use crate::graphs::{delta_sign, enumerate_three_trees, enumerate_trees, tree_weight};
use crate::group_algebra::GroupAlgebraElement;
use crate::lie_generators::{
    eta, kirchhoff_differences, lie_closure, make, repeated_commutator_set, GeneratorId, Kind,
};
use crate::limits::{check, Bounds};
use crate::sdet::MainTable;
use crate::wedge_rep::{action_matrix, action_rank, is_lie, lie_space_on, Representation};
use crate::weights::{Symbolic, Weights};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Report,
}

impl Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Report => "REPORT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub n: usize,
    pub seed: Option<u64>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(theorem: &str, n: usize, seed: Option<u64>, status: Status, lhs: String, rhs: String) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            n,
            seed,
            status,
            lhs,
            rhs,
            elapsed_ms: None,
        }
    }

    /// PASS iff `lhs == rhs`.
    pub fn compare<T: PartialEq + Display>(theorem: &str, n: usize, seed: Option<u64>, lhs: &T, rhs: &T) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        Self::new(theorem, n, seed, status, lhs.to_string(), rhs.to_string())
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_text(&self) -> String {
        let seed = self.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        let ms = self.elapsed_ms.map(|t| format!(" ({t} ms)")).unwrap_or_default();
        format!(
            "{} {} n={}{seed}: {} = {}{ms}",
            self.status, self.theorem, self.n, self.lhs, self.rhs
        )
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tuple<T: Display>(xs: &[T]) -> String {
    format!("({})", xs.iter().join(", "))
}

fn gen<R: Ring>(n: usize, kind: Kind, ix: &[usize]) -> Result<GroupAlgebraElement<R>> {
    make(n, &GeneratorId::new(kind, ix)?)
}

/// `x = Σ w_ij κ_ij`.
pub fn pair_element<R: Ring>(n: usize, w: &Weights<R>) -> Result<GroupAlgebraElement<R>> {
    let mut x = GroupAlgebraElement::zero(n);
    for (i, j) in (1..=n).tuple_combinations() {
        let wt = w.pair(i, j).unwrap_or_else(R::zero);
        if !wt.is_zero() {
            x = x.add(&gen::<R>(n, Kind::Kappa, &[i, j])?.scale(&wt))?;
        }
    }
    Ok(x)
}

/// `y = Σ w_ijk ν_ijk`.
pub fn triple_element<R: Ring>(n: usize, w: &Weights<R>) -> Result<GroupAlgebraElement<R>> {
    let mut y = GroupAlgebraElement::zero(n);
    for (i, j, k) in (1..=n).tuple_combinations() {
        let wt = w.triple(i, j, k).unwrap_or_else(R::zero);
        if !wt.is_zero() {
            y = y.add(&gen::<R>(n, Kind::Nu, &[i, j, k])?.scale(&wt))?;
        }
    }
    Ok(y)
}

/// `z = Σ_{i<j<k<l} (w_ijkl η_ijkl + w_iklj η_iklj)`.
pub fn quad_element<R: Ring>(n: usize, w: &Weights<R>) -> Result<GroupAlgebraElement<R>> {
    let mut z = GroupAlgebraElement::zero(n);
    for (s, [a, b]) in w.quads() {
        let [i, j, k, l] = s;
        if l > n {
            return Err(Error::InvalidIndex(format!("{s:?} outside 1..{n}")));
        }
        z = z.add(&gen::<R>(n, Kind::Eta, &[i, j, k, l])?.scale(a))?;
        z = z.add(&gen::<R>(n, Kind::Eta, &[i, k, l, j])?.scale(b))?;
    }
    Ok(z)
}

/// `(det x|_V, n Σ_T w_T)`.
pub fn mtt_sides<R: Ring>(n: usize, w: &Weights<R>, bounds: &Bounds) -> Result<(R, R)> {
    if n < 2 {
        return Err(Error::Structure("matrix-tree check needs n >= 2".into()));
    }
    let x = pair_element(n, w)?;
    let lhs = action_matrix(&x, Representation::Reflection).det()?;
    let mut sum = R::zero();
    for t in enumerate_trees(n, bounds)? {
        sum = sum + tree_weight(&t, w)?;
    }
    Ok((lhs, R::from_i64(n as i64) * sum))
}

pub fn verify_mtt(n: usize, w: &Weights, bounds: &Bounds) -> Result<VerificationReport> {
    check("matrix-tree degree", n, bounds.mtt_n)?;
    let mut w = w.clone();
    w.fill_zero(n);
    let (l, r) = mtt_sides(n, &w, bounds)?;
    Ok(VerificationReport::compare("mtt", n, None, &l, &r))
}

pub fn verify_mtt_seeded(n: usize, seed: u64, bounds: &Bounds) -> Result<VerificationReport> {
    let w = Weights::random_pairs(n, &mut rng(seed));
    Ok(VerificationReport {
        seed: Some(seed),
        ..verify_mtt(n, &w, bounds)?
    })
}

pub fn verify_mtt_symbolic(n: usize, bounds: &Bounds) -> Result<VerificationReport> {
    check("symbolic matrix-tree degree", n, bounds.symbolic_n)?;
    let s = Symbolic::pairs(n);
    let (l, r) = mtt_sides(n, &s.weights, bounds)?;
    let status = if l == r { Status::Pass } else { Status::Fail };
    Ok(VerificationReport::new(
        "mtt-symbolic",
        n,
        None,
        status,
        l.display_with(&s.names),
        r.display_with(&s.names),
    ))
}

/// Pieces of the Pfaffian identity for odd `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PftData<R> {
    /// `Ω_pq = (b_p, y b_q)` with `b_p = v_p - v_n`.
    pub omega: ExactMatrix<R>,
    pub skew: bool,
    pub pfaffian: R,
    /// `Σ_Γ δ(Γ) w_Γ` over 3-trees with `(n-1)/2` triangles.
    pub tree_sum: R,
}

impl<R: Ring> PftData<R> {
    /// `(-1)^m n Σ δ w`, the value `Pf(Ω)` takes.
    pub fn expected(&self) -> R {
        let n = self.omega.rows() + 1;
        let m = (n - 1) / 2;
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        R::from_i64(sign * n as i64) * self.tree_sum.clone()
    }
}

pub fn pft_data<R: Ring>(n: usize, w: &Weights<R>, bounds: &Bounds) -> Result<PftData<R>> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Structure(format!("Pfaffian identity needs odd n >= 3, got {n}")));
    }
    let y = triple_element(n, w)?;
    let yp = action_matrix(&y, Representation::Permutation);
    let b = ExactMatrix::from_fn(n, n - 1, |i, j| {
        if i == j {
            R::one()
        } else if i == n - 1 {
            -R::one()
        } else {
            R::zero()
        }
    });
    let omega = b.transpose().mul(&yp)?.mul(&b)?;
    let skew = omega == omega.transpose().map(|v| -v.clone());
    let pfaffian = if skew { omega.pfaffian()? } else { R::zero() };
    let mut tree_sum = R::zero();
    for g in enumerate_three_trees((n - 1) / 2, bounds)? {
        let d = R::from_i64(delta_sign(&g)?);
        tree_sum = tree_sum + d * g.weight(w)?;
    }
    Ok(PftData {
        omega,
        skew,
        pfaffian,
        tree_sum,
    })
}

/// Odd `n`: `Pf(Ω) = (-1)^m n Σ δ(Γ) w_Γ` with `Ω` skew. Even `n`:
/// `det y|_V = 0`.
pub fn verify_pft(n: usize, w: &Weights, bounds: &Bounds) -> Result<VerificationReport> {
    check("Pfaffian-tree degree", n, bounds.pft_n)?;
    let mut w = w.clone();
    w.fill_zero(n);
    if n.is_multiple_of(2) {
        let d = pft_even_det(n, &w)?;
        return Ok(VerificationReport::compare("pft-even", n, None, &d, &int(0)));
    }
    let data = pft_data(n, &w, bounds)?;
    let mut rep = VerificationReport::compare("pft", n, None, &data.pfaffian, &data.expected());
    if !data.skew {
        rep.status = Status::Fail;
        rep.lhs = format!("Ω not skew: {}", data.omega);
    }
    Ok(rep)
}

pub fn verify_pft_seeded(n: usize, seed: u64, bounds: &Bounds) -> Result<VerificationReport> {
    let w = Weights::random_triples(n, &mut rng(seed));
    Ok(VerificationReport {
        seed: Some(seed),
        ..verify_pft(n, &w, bounds)?
    })
}

/// `det y|_V` for `y = Σ w_ijk ν_ijk`.
pub fn pft_even_det<R: Ring>(n: usize, w: &Weights<R>) -> Result<R> {
    let y = triple_element(n, w)?;
    action_matrix(&y, Representation::Reflection).det()
}

/// `M[α, v]: u ↦ (α, u) v` as the matrix `v αᵀ`.
fn rank_one(alpha: &[i64], v: &[i64]) -> ExactMatrix<Rational> {
    ExactMatrix::from_fn(v.len(), alpha.len(), |r, c| int(v[r] * alpha[c]))
}

/// `η_ijkl` on `Q^n` against `M[v_i - v_j, v_l - v_k] + M[v_l - v_k, v_i - v_j]`.
pub fn verify_rank2(i: usize, j: usize, k: usize, l: usize, n: usize) -> Result<VerificationReport> {
    let x = eta(n, i, j, k, l)?;
    let lhs = action_matrix(&x, Representation::Permutation);
    let diff = |p: usize, q: usize| -> Vec<i64> { (1..=n).map(|t| i64::from(t == p) - i64::from(t == q)).collect() };
    let (a, v) = (diff(i, j), diff(l, k));
    let rhs = rank_one(&a, &v).add(&rank_one(&v, &a))?;
    let mut rep = VerificationReport::compare("rank2", n, None, &lhs, &rhs);
    rep.theorem = format!("rank2 ({i} {j} {k} {l})");
    Ok(rep)
}

/// Weight vector in the order of [`MainTable::items`].
pub fn item_weights(table: &MainTable, w: &Weights) -> Vec<Rational> {
    table
        .items()
        .iter()
        .map(|t| {
            let mut s = *t;
            s.sort_unstable();
            let slot = w.quad(s);
            let pick = usize::from(t[1] != s[1]);
            slot.map(|q| q[pick].clone()).unwrap_or_else(Rational::zero)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainData {
    /// Coefficients `c_0..c_n` of `det(t - z)` on `Q^n`.
    pub charpoly: Vec<Rational>,
    /// `μ_r` for `r = 1..n-1` from shuffle determinants.
    pub mu: Vec<Rational>,
    /// `μ_{n-1}` recomputed with `phi_top`.
    pub mu_top: Rational,
}

impl MainData {
    /// `μ_r` read off the characteristic polynomial, `r = 1..n-1`.
    pub fn charpoly_mu(&self) -> Vec<Rational> {
        let n = self.charpoly.len() - 1;
        (1..n).map(|r| self.charpoly[n - r].clone()).collect()
    }

    pub fn holds(&self) -> bool {
        self.charpoly[0].is_zero() && self.charpoly_mu() == self.mu && self.mu.last() == Some(&self.mu_top)
    }
}

pub fn main_data(table: &MainTable, w: &Weights) -> Result<MainData> {
    let n = table.n();
    let z = quad_element(n, &w.restricted(n))?;
    let charpoly = action_matrix(&z, Representation::Permutation).charpoly()?;
    let iw = item_weights(table, w);
    let mu = table.mu(&iw)?;
    let mu_top = table.mu_top(&iw)?;
    Ok(MainData { charpoly, mu, mu_top })
}

pub fn verify_main(table: &MainTable, w: &Weights, bounds: &Bounds) -> Result<VerificationReport> {
    let n = table.n();
    check("main theorem degree", n, bounds.main_n)?;
    let d = main_data(table, w)?;
    let status = if d.holds() { Status::Pass } else { Status::Fail };
    let mut lhs = d.charpoly_mu();
    lhs.push(d.charpoly[0].clone());
    let mut rhs = d.mu.clone();
    rhs.push(int(0));
    let mut rep = VerificationReport::new("main", n, None, status, tuple(&lhs), tuple(&rhs));
    if d.mu.last() != Some(&d.mu_top) {
        rep.rhs = format!("{} but phi_top gives {}", rep.rhs, d.mu_top);
    }
    Ok(rep)
}

pub fn verify_main_seeded(table: &MainTable, seed: u64, bounds: &Bounds) -> Result<VerificationReport> {
    let w = Weights::random_quads(table.n(), &mut rng(seed));
    Ok(VerificationReport {
        seed: Some(seed),
        ..verify_main(table, &w, bounds)?
    })
}

/// `ι(x)` is Lie in degree `n + 1` for every basis element of the Lie space
/// of degree `n` and for `trials` random combinations.
pub fn verify_iota(n: usize, trials: usize, seed: u64, bounds: &Bounds) -> Result<VerificationReport> {
    check("induction degree", n, bounds.lie_n.min(5))?;
    let space = lie_space_on(n, Representation::Permutation, bounds)?;
    let mut rng = rng(seed);
    let mut samples: Vec<GroupAlgebraElement> = space.basis().to_vec();
    for _ in 0..trials {
        let mut x = GroupAlgebraElement::zero(n);
        for b in space.basis() {
            x = x.add(&b.scale(&random_rational(&mut rng)))?;
        }
        samples.push(x);
    }
    let good = samples.iter().filter(|x| is_lie(&x.iota())).count();
    let lhs = format!("{good}/{} lifted elements Lie", samples.len());
    let rhs = format!("{}/{} lifted elements Lie", samples.len(), samples.len());
    let status = if good == samples.len() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport::new("iota", n, Some(seed), status, lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureData {
    pub n: usize,
    pub lie_dim: usize,
    pub closure_dim: usize,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
    pub factorial: usize,
    pub commutator_rank: usize,
    pub closure_contained: bool,
}

pub fn conjecture_data(n: usize, bounds: &Bounds) -> Result<ConjectureData> {
    check("conjecture degree", n, bounds.conjecture_n)?;
    let space = lie_space_on(n, Representation::Permutation, bounds)?;
    let closure = lie_closure(&kirchhoff_differences(n)?, n, bounds)?;
    let image = action_rank(space.basis());
    Ok(ConjectureData {
        n,
        lie_dim: space.dim(),
        closure_dim: closure.len(),
        kernel_dim: space.dim() - image,
        quotient_dim: image,
        factorial: (1..n).product(),
        commutator_rank: action_rank(&repeated_commutator_set(n, bounds)?),
        closure_contained: closure.iter().all(|x| space.contains(x)),
    })
}

/// REPORT unless the closure of the `κ`'s escapes the Lie space.
pub fn conjecture_report(n: usize, bounds: &Bounds) -> Result<VerificationReport> {
    let d = conjecture_data(n, bounds)?;
    let status = if d.closure_contained {
        Status::Report
    } else {
        Status::Fail
    };
    let lhs = format!(
        "dim L={} closure={} K={} L/K={} commutators={}",
        d.lie_dim, d.closure_dim, d.kernel_dim, d.quotient_dim, d.commutator_rank
    );
    Ok(VerificationReport::new(
        "conjectures",
        n,
        None,
        status,
        lhs,
        format!("(n-1)!={}", d.factorial),
    ))
}

fn golden_path(dir: &Path, theorem: &str, n: usize) -> PathBuf {
    let name: String = theorem
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("{name}_n{n}.json"))
}

/// Stores `value` under `(theorem, n)` unless already present; returns the
/// stored value so callers can compare.
pub fn persist_golden<T: Serialize + for<'de> Deserialize<'de>>(
    dir: &Path,
    theorem: &str,
    n: usize,
    value: &T,
) -> Result<T> {
    let path = golden_path(dir, theorem, n);
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(io)?;
        return serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())));
    }
    std::fs::create_dir_all(dir).map_err(io)?;
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(&path, text + "\n").map_err(io)?;
    serde_json::from_str(&serde_json::to_string(value).expect("serializable")).map_err(|e| Error::Parse(e.to_string()))
}

/// Symbolic `det x|_V` on `n` labels with the variable names used.
pub fn symbolic_mtt_det(n: usize) -> Result<(MultiPoly, Vec<String>)> {
    let s = Symbolic::pairs(n);
    let x = pair_element(n, &s.weights)?;
    Ok((action_matrix(&x, Representation::Reflection).det()?, s.names))
}
