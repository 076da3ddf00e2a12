//! Labeled trees, 3-trees with their sign, and 4-graphs.
//!
//! Vertices are labeled `1..=n` throughout.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Ring;
use crate::limits::{check, Bounds};
use crate::perm::Permutation;
use crate::sdet::EdgeSystem;
use crate::weights::Weights;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// False if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 || edges.len() + 1 != n {
            return Err(Error::Structure(format!(
                "{} edges cannot span {n} vertices",
                edges.len()
            )));
        }
        let mut uf = UnionFind::new(n + 1);
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::InvalidIndex(format!("edge ({a}, {b}) on {n} vertices")));
            }
            if !uf.union(a, b) {
                return Err(Error::Structure(format!("edge ({a}, {b}) closes a cycle")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        Ok(LabeledTree { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Decodes a Prüfer sequence of length `n - 2` over `1..=n`.
    pub fn from_prufer(n: usize, seq: &[usize]) -> Result<Self> {
        if n < 2 {
            return if seq.is_empty() && n == 1 {
                Ok(LabeledTree { n, edges: vec![] })
            } else {
                Err(Error::Structure(format!("no Prüfer code {seq:?} on {n} vertices")))
            };
        }
        if seq.len() + 2 != n || seq.iter().any(|&a| a == 0 || a > n) {
            return Err(Error::Structure(format!("no Prüfer code {seq:?} on {n} vertices")));
        }
        let mut degree = vec![1usize; n + 1];
        for &a in seq {
            degree[a] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &a in seq {
            let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf always exists");
            edges.push((leaf.min(a), leaf.max(a)));
            degree[leaf] -= 1;
            degree[a] -= 1;
        }
        let (u, v) = (1..=n)
            .filter(|&v| degree[v] == 1)
            .collect_tuple()
            .expect("two vertices remain");
        edges.push((u, v));
        Ok(LabeledTree { n, edges })
    }

    pub fn prufer(&self) -> Vec<usize> {
        let n = self.n;
        let mut adj = vec![Vec::new(); n + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; n + 1];
        let mut seq = Vec::with_capacity(n.saturating_sub(2));
        for _ in 0..n.saturating_sub(2) {
            let leaf = (1..=n)
                .find(|&v| !removed[v] && degree[v] == 1)
                .expect("a leaf always exists");
            removed[leaf] = true;
            let next = adj[leaf]
                .iter()
                .copied()
                .find(|&u| !removed[u])
                .expect("leaf has a neighbour");
            degree[next] -= 1;
            seq.push(next);
        }
        seq
    }
}

/// All `n^(n-2)` labeled trees in lexicographic order of Prüfer codes.
pub fn enumerate_trees(n: usize, bounds: &Bounds) -> Result<impl Iterator<Item = LabeledTree>> {
    if n == 0 {
        return Err(Error::Structure("a tree needs a vertex".into()));
    }
    check("tree enumeration", n, bounds.mtt_n)?;
    let len = n.saturating_sub(2);
    let seqs: Box<dyn Iterator<Item = Vec<usize>>> = if len == 0 {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new((0..len).map(|_| 1..=n).multi_cartesian_product())
    };
    Ok(seqs.map(move |s| LabeledTree::from_prufer(n, &s).expect("valid code")))
}

/// `w_T`, the product of the edge weights.
pub fn tree_weight<R: Ring>(tree: &LabeledTree, w: &Weights<R>) -> Result<R> {
    let mut acc = R::one();
    for &(a, b) in &tree.edges {
        let wt = w.pair(a, b).ok_or_else(|| Error::MissingWeight(format!("w{a}{b}")))?;
        acc = acc * wt;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ThreeGraph {
    n: usize,
    triangles: Vec<[usize; 3]>,
}

impl ThreeGraph {
    pub fn new(n: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mut out = Vec::with_capacity(triangles.len());
        for mut t in triangles {
            if t.iter().any(|&v| v == 0 || v > n) || !t.iter().all_unique() {
                return Err(Error::InvalidIndex(format!("triangle {t:?} on {n} vertices")));
            }
            t.sort_unstable();
            out.push(t);
        }
        Ok(ThreeGraph { n, triangles: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// `w_Γ`, the product of the triple weights of the triangles.
    pub fn weight<R: Ring>(&self, w: &Weights<R>) -> Result<R> {
        let mut acc = R::one();
        for &[i, j, k] in &self.triangles {
            let wt = w
                .triple(i, j, k)
                .ok_or_else(|| Error::MissingWeight(format!("w{i}{j}{k}")))?;
            acc = acc * wt;
        }
        Ok(acc)
    }
}

/// Contractible union of triangles: `n = 2m + 1`, every vertex covered and
/// leaf triangles (two private vertices) can be pruned down to one triangle.
pub fn is_three_tree(g: &ThreeGraph) -> bool {
    let m = g.triangles.len();
    if m == 0 || g.n != 2 * m + 1 {
        return false;
    }
    let mut count = vec![0usize; g.n + 1];
    for t in &g.triangles {
        for &v in t {
            count[v] += 1;
        }
    }
    if count[1..].contains(&0) {
        return false;
    }
    let mut alive = vec![true; m];
    for _ in 1..m {
        let leaf = (0..m).find(|&s| alive[s] && g.triangles[s].iter().filter(|&&v| count[v] > 1).count() == 1);
        let Some(s) = leaf else { return false };
        alive[s] = false;
        for &v in &g.triangles[s] {
            count[v] -= 1;
        }
    }
    true
}

/// All 3-trees with `m` triangles on `1..=2m+1`, triangles in lex order.
pub fn enumerate_three_trees(m: usize, bounds: &Bounds) -> Result<Vec<ThreeGraph>> {
    if m == 0 {
        return Err(Error::Structure("a 3-tree needs a triangle".into()));
    }
    check("3-tree enumeration", m, bounds.three_tree_m)?;
    let n = 2 * m + 1;
    let all: Vec<[usize; 3]> = (1..=n).combinations(3).map(|c| [c[0], c[1], c[2]]).collect();
    Ok(all
        .into_iter()
        .combinations(m)
        .map(|ts| ThreeGraph { n, triangles: ts })
        .filter(is_three_tree)
        .collect())
}

fn delta_in_order(n: usize, triangles: &[[usize; 3]]) -> Result<i64> {
    let mut sigma = Permutation::identity(n);
    for t in triangles {
        sigma = sigma.compose(&Permutation::cycle(n, t)?)?;
    }
    let cycles = sigma.cycles();
    if cycles.len() != 1 || cycles[0].len() != n {
        return Err(Error::Structure(format!(
            "product of {triangles:?} is {sigma}, not an {n}-cycle"
        )));
    }
    Ok(Permutation::from_images(&cycles[0])?.sign())
}

/// `δ(Γ)`: the product `σ` of the triangles' 3-cycles (in edge order, left
/// action) is an `n`-cycle `(a_1 … a_n)` with `a_1 = 1`; `δ` is the sign of
/// `τ: s ↦ a_s`. Recomputed with the edges reversed as a consistency check.
pub fn delta_sign(g: &ThreeGraph) -> Result<i64> {
    let d = delta_in_order(g.n, &g.triangles)?;
    let rev: Vec<[usize; 3]> = g.triangles.iter().rev().copied().collect();
    if delta_in_order(g.n, &rev)? != d {
        return Err(Error::Structure(format!(
            "sign of {:?} depends on edge order",
            g.triangles
        )));
    }
    Ok(d)
}

/// The two tetrahedra on a 4-set `i < j < k < l`, matching `η_ijkl` and `η_iklj`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Variant {
    T1,
    T2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FourGraph {
    n: usize,
    edges: Vec<([usize; 4], Variant)>,
}

impl FourGraph {
    pub fn new(n: usize, edges: Vec<([usize; 4], Variant)>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (mut s, v) in edges {
            if s.iter().any(|&x| x == 0 || x > n) || !s.iter().all_unique() {
                return Err(Error::InvalidIndex(format!("4-edge {s:?} on {n} vertices")));
            }
            s.sort_unstable();
            out.push((s, v));
        }
        Ok(FourGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[([usize; 4], Variant)] {
        &self.edges
    }

    /// The η-index tuple of each edge.
    pub fn tuples(&self) -> Vec<[usize; 4]> {
        self.edges
            .iter()
            .map(|&([i, j, k, l], v)| match v {
                Variant::T1 => [i, j, k, l],
                Variant::T2 => [i, k, l, j],
            })
            .collect()
    }

    pub fn edge_system(&self) -> Result<EdgeSystem> {
        EdgeSystem::new(self.n, self.tuples())
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All multisets of `r` tetrahedra on `1..=n`.
pub fn enumerate_four_graphs(r: usize, n: usize, bounds: &Bounds) -> Result<Vec<FourGraph>> {
    if n < 4 {
        return Err(Error::Structure(format!("no 4-edges on {n} vertices")));
    }
    let items: Vec<([usize; 4], Variant)> = (1..=n)
        .combinations(4)
        .flat_map(|c| {
            let s = [c[0], c[1], c[2], c[3]];
            [(s, Variant::T1), (s, Variant::T2)]
        })
        .collect();
    let count = binomial(items.len() as u128 + r as u128 - 1, r as u128);
    if count > bounds.enumeration as u128 {
        return Err(Error::ResourceLimit {
            what: "4-graph count",
            n: count.min(usize::MAX as u128) as usize,
            max: bounds.enumeration,
        });
    }
    Ok(items
        .into_iter()
        .combinations_with_replacement(r)
        .map(|edges| FourGraph { n, edges })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, MultiPoly};
    use crate::weights::Symbolic;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn b() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn cayley_counts() {
        for n in 1..=6 {
            let trees: Vec<_> = enumerate_trees(n, &b()).unwrap().collect();
            assert_eq!(trees.len(), n.pow(n.saturating_sub(2) as u32), "n = {n}");
            let set: HashSet<_> = trees
                .iter()
                .map(|t| t.edges().iter().copied().sorted().collect_vec())
                .collect();
            assert_eq!(set.len(), trees.len());
        }
    }

    #[test]
    fn three_vertex_trees_are_paths() {
        let centers: Vec<usize> = enumerate_trees(3, &b()).unwrap().map(|t| t.prufer()[0]).collect();
        assert_eq!(centers, [1, 2, 3]);
        let t = LabeledTree::from_prufer(3, &[1]).unwrap();
        assert_eq!(t.edges(), [(1, 2), (1, 3)]);
    }

    #[test]
    fn prufer_round_trip() {
        for n in 2..=6 {
            for t in enumerate_trees(n, &b()).unwrap() {
                let code = t.prufer();
                assert_eq!(LabeledTree::from_prufer(n, &code).unwrap(), t);
            }
        }
    }

    #[test]
    fn tree_validation() {
        assert!(LabeledTree::new(3, vec![(1, 2), (2, 3)]).is_ok());
        assert!(LabeledTree::new(4, vec![(1, 2), (2, 3), (3, 1)]).is_err());
        assert!(LabeledTree::new(3, vec![(1, 2)]).is_err());
        assert!(LabeledTree::from_prufer(4, &[5, 1]).is_err());
    }

    #[test]
    fn star_weight() {
        let s = Symbolic::pairs(3);
        let star = LabeledTree::new(3, vec![(1, 2), (1, 3)]).unwrap();
        let w = tree_weight(&star, &s.weights).unwrap();
        assert_eq!(w, MultiPoly::var(0) * MultiPoly::var(1));
        let mut ones = Weights::new();
        ones.set_pair(1, 2, int(1)).unwrap();
        ones.set_pair(1, 3, int(1)).unwrap();
        assert_eq!(tree_weight(&star, &ones).unwrap(), int(1));
        let path = LabeledTree::new(3, vec![(1, 2), (2, 3)]).unwrap();
        assert!(matches!(tree_weight(&path, &ones), Err(Error::MissingWeight(_))));
    }

    #[test]
    fn symbolic_tree_weights_have_degree_n_minus_one() {
        let s = Symbolic::pairs(5);
        for t in enumerate_trees(5, &b()).unwrap() {
            assert_eq!(tree_weight(&t, &s.weights).unwrap().total_degree(), 4);
        }
    }

    #[test]
    fn three_tree_counts() {
        let counts: Vec<usize> = (1..=3).map(|m| enumerate_three_trees(m, &b()).unwrap().len()).collect();
        assert_eq!(counts, [1, 15, 735]);
        assert!(matches!(
            enumerate_three_trees(4, &b()),
            Err(Error::ResourceLimit { .. })
        ));
    }

    fn euler_connected(g: &ThreeGraph) -> bool {
        // Triangles glued at vertices: V - E + F with E = 3m, F = m.
        let m = g.triangles().len() as i64;
        let covered: HashSet<usize> = g.triangles().iter().flatten().copied().collect();
        let chi = covered.len() as i64 - 3 * m + m;
        let mut uf = UnionFind::new(g.n() + 1);
        for t in g.triangles() {
            uf.union(t[0], t[1]);
            uf.union(t[0], t[2]);
        }
        let roots: HashSet<usize> = (1..=g.n()).map(|v| uf.find(v)).collect();
        let simple = g
            .triangles()
            .iter()
            .tuple_combinations()
            .all(|(a, b)| a.iter().filter(|v| b.contains(v)).count() <= 1);
        covered.len() == g.n() && roots.len() == 1 && chi == 1 && simple
    }

    #[test]
    fn pruning_agrees_with_euler_characteristic() {
        for m in 1..=2 {
            let n = 2 * m + 1;
            let all: Vec<[usize; 3]> = (1..=n).combinations(3).map(|c| [c[0], c[1], c[2]]).collect();
            for ts in all.into_iter().combinations_with_replacement(m) {
                let g = ThreeGraph { n, triangles: ts };
                assert_eq!(is_three_tree(&g), euler_connected(&g), "{:?}", g.triangles());
            }
        }
    }

    #[test]
    fn small_three_trees() {
        let tri = ThreeGraph::new(3, vec![[1, 2, 3]]).unwrap();
        assert!(is_three_tree(&tri));
        assert_eq!(delta_sign(&tri).unwrap(), 1);
        let bow = ThreeGraph::new(5, vec![[1, 2, 3], [3, 4, 5]]).unwrap();
        assert!(is_three_tree(&bow));
        let twice = ThreeGraph::new(5, vec![[1, 2, 3], [1, 2, 3]]).unwrap();
        assert!(!is_three_tree(&twice));
        let wrong_parity = ThreeGraph::new(6, vec![[1, 2, 3], [4, 5, 6]]).unwrap();
        assert!(!is_three_tree(&wrong_parity));
    }

    #[test]
    fn delta_ignores_edge_order() {
        for m in 1..=3 {
            for g in enumerate_three_trees(m, &b()).unwrap() {
                let d = delta_sign(&g).unwrap();
                for order in g.triangles().iter().copied().permutations(m) {
                    assert_eq!(delta_in_order(g.n(), &order).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn four_graph_counts() {
        assert_eq!(enumerate_four_graphs(1, 4, &b()).unwrap().len(), 2);
        assert_eq!(enumerate_four_graphs(1, 5, &b()).unwrap().len(), 10);
        let two = enumerate_four_graphs(2, 4, &b()).unwrap();
        assert_eq!(two.len(), 3);
        let doubled = two.iter().filter(|g| g.edges()[0] == g.edges()[1]).count();
        assert_eq!(doubled, 2);
        assert_eq!(two[0].tuples(), [[1, 2, 3, 4], [1, 2, 3, 4]]);
        assert_eq!(two[2].tuples(), [[1, 3, 4, 2], [1, 3, 4, 2]]);
    }

    proptest! {
        #[test]
        fn prufer_codes_decode_to_trees(n in 2usize..9, seed in prop::collection::vec(1usize..9, 7)) {
            let code: Vec<usize> = seed.iter().take(n - 2).map(|&a| (a - 1) % n + 1).collect();
            let t = LabeledTree::from_prufer(n, &code).unwrap();
            prop_assert!(LabeledTree::new(n, t.edges().to_vec()).is_ok());
            prop_assert_eq!(t.prufer(), code);
        }
    }
}
