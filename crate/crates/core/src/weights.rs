//! Weight tables for pairs, triples and quadruples of labels.
//!
//! Pair weights are symmetric, triple weights alternate under odd
//! permutations, and quadruple weights are stored per 4-subset
//! `i < j < k < l` as the coefficients of `η_ijkl` and `η_iklj`.

use std::collections::BTreeMap;
use std::path::Path;

use itertools::Itertools;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, random_rational, MultiPoly, Rational, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Weights<R = Rational> {
    pairs: BTreeMap<[usize; 2], R>,
    triples: BTreeMap<[usize; 3], R>,
    quads: BTreeMap<[usize; 4], [R; 2]>,
    // Quadruple entries as given, keyed by 4-subset and pairing, for
    // conflict detection.
    raw_quads: BTreeMap<([usize; 4], usize), R>,
}

impl<R: Ring> Default for Weights<R> {
    fn default() -> Self {
        Weights {
            pairs: BTreeMap::new(),
            triples: BTreeMap::new(),
            quads: BTreeMap::new(),
            raw_quads: BTreeMap::new(),
        }
    }
}

fn distinct(ix: &[usize]) -> Result<()> {
    if ix.contains(&0) || !ix.iter().all_unique() {
        return Err(Error::InvalidIndex(format!("{ix:?} needs distinct labels >= 1")));
    }
    Ok(())
}

/// Sorts `ix` in place and returns the sign of the sorting permutation.
fn sort_with_sign(ix: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..ix.len() {
        for j in 0..ix.len() - 1 - i {
            if ix[j] > ix[j + 1] {
                ix.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Writes `η_abcd` as `±η` of a tuple starting at its smallest label.
/// Returns the sorted subset, the pairing (0 for `(i,j,k,l)`, 1 for
/// `(i,k,l,j)`, 2 for `(i,l,j,k)`) and the sign.
fn quad_pairing(t: [usize; 4]) -> ([usize; 4], usize, i64) {
    // η_abcd depends on the pairs (a,b) and (d,c): antisymmetric inside
    // each pair, symmetric under exchanging them.
    let (mut p, mut q) = ((t[0], t[1]), (t[3], t[2]));
    let mut sign = 1;
    let s = *t.iter().min().expect("four labels");
    if q.0 == s || q.1 == s {
        std::mem::swap(&mut p, &mut q);
    }
    if p.1 == s {
        p = (p.1, p.0);
        q = (q.1, q.0);
    }
    let mut sorted = t;
    sorted.sort_unstable();
    let partner = p.1;
    let pairing = sorted[1..]
        .iter()
        .position(|&v| v == partner)
        .expect("partner is a label");
    // Canonical representatives: (i,j,k,l) pairs (j) with (l,k);
    // (i,k,l,j) pairs (k) with (j,l); (i,l,j,k) pairs (l) with (k,j).
    let want = match pairing {
        0 => (sorted[3], sorted[2]),
        1 => (sorted[1], sorted[3]),
        _ => (sorted[2], sorted[1]),
    };
    if q != want {
        sign = -sign;
    }
    (sorted, pairing, sign)
}

impl<R: Ring> Weights<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.triples.is_empty() && self.quads.is_empty()
    }

    fn insert<K: Ord + Copy + std::fmt::Debug, V: Ring>(map: &mut BTreeMap<K, V>, key: K, v: V) -> Result<()> {
        match map.get(&key) {
            Some(old) if *old != v => Err(Error::WeightConflict(format!("{key:?}: {old} vs {v}"))),
            _ => {
                map.insert(key, v);
                Ok(())
            }
        }
    }

    /// Sets `w_ij = w_ji`.
    pub fn set_pair(&mut self, i: usize, j: usize, w: R) -> Result<()> {
        distinct(&[i, j])?;
        Self::insert(&mut self.pairs, [i.min(j), i.max(j)], w)
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<R> {
        self.pairs.get(&[i.min(j), i.max(j)]).cloned()
    }

    /// Sets `w_ijk`; any odd relabeling flips the sign.
    pub fn set_triple(&mut self, i: usize, j: usize, k: usize, w: R) -> Result<()> {
        distinct(&[i, j, k])?;
        let mut key = [i, j, k];
        let s = sort_with_sign(&mut key);
        let v = if s < 0 { -w } else { w };
        Self::insert(&mut self.triples, key, v)
    }

    pub fn triple(&self, i: usize, j: usize, k: usize) -> Option<R> {
        let mut key = [i, j, k];
        let s = sort_with_sign(&mut key);
        self.triples
            .get(&key)
            .map(|w| if s < 0 { -w.clone() } else { w.clone() })
    }

    /// Adds `w·η_t`. Tuples in the third pairing class are rewritten through
    /// `η_ijkl + η_iklj + η_iljk = 0`.
    pub fn set_quad(&mut self, t: [usize; 4], w: R) -> Result<()> {
        distinct(&t)?;
        let (key, pairing, sign) = quad_pairing(t);
        let v = if sign < 0 { -w } else { w };
        Self::insert(&mut self.raw_quads, (key, pairing), v.clone())?;
        let slot = self.quads.entry(key).or_insert_with(|| [R::zero(), R::zero()]);
        match pairing {
            0 | 1 => {
                let cur = std::mem::replace(&mut slot[pairing], R::zero());
                slot[pairing] = cur + v;
            }
            _ => {
                for c in slot.iter_mut() {
                    let cur = std::mem::replace(c, R::zero());
                    *c = cur - v.clone();
                }
            }
        }
        Ok(())
    }

    /// `(w_ijkl, w_iklj)` for a sorted 4-subset.
    pub fn quad(&self, subset: [usize; 4]) -> Option<&[R; 2]> {
        self.quads.get(&subset)
    }

    pub fn pairs(&self) -> impl Iterator<Item = ([usize; 2], &R)> {
        self.pairs.iter().map(|(k, v)| (*k, v))
    }

    pub fn triples(&self) -> impl Iterator<Item = ([usize; 3], &R)> {
        self.triples.iter().map(|(k, v)| (*k, v))
    }

    pub fn quads(&self) -> impl Iterator<Item = ([usize; 4], &[R; 2])> {
        self.quads.iter().map(|(k, v)| (*k, v))
    }

    /// Largest label mentioned anywhere.
    pub fn max_label(&self) -> usize {
        let p = self.pairs.keys().map(|k| k[1]);
        let t = self.triples.keys().map(|k| k[2]);
        let q = self.quads.keys().map(|k| k[3]);
        p.chain(t).chain(q).max().unwrap_or(0)
    }

    /// Fills every missing pair, triple and quadruple on `1..=n` with zero.
    pub fn fill_zero(&mut self, n: usize) {
        for ix in (1..=n).combinations(2) {
            self.pairs.entry([ix[0], ix[1]]).or_insert_with(R::zero);
        }
        for ix in (1..=n).combinations(3) {
            self.triples.entry([ix[0], ix[1], ix[2]]).or_insert_with(R::zero);
        }
        for ix in (1..=n).combinations(4) {
            self.quads
                .entry([ix[0], ix[1], ix[2], ix[3]])
                .or_insert_with(|| [R::zero(), R::zero()]);
        }
    }

    /// Drops the quadruple table down to entries with `l <= n`.
    pub fn restricted(&self, n: usize) -> Self {
        Weights {
            pairs: self
                .pairs
                .iter()
                .filter(|(k, _)| k[1] <= n)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            triples: self
                .triples
                .iter()
                .filter(|(k, _)| k[2] <= n)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            quads: self
                .quads
                .iter()
                .filter(|(k, _)| k[3] <= n)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            raw_quads: self
                .raw_quads
                .iter()
                .filter(|(k, _)| k.0[3] <= n)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

impl Weights<Rational> {
    pub fn random_pairs<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Self {
        let mut w = Weights::new();
        for ix in (1..=n).combinations(2) {
            w.pairs.insert([ix[0], ix[1]], random_rational(rng));
        }
        w
    }

    pub fn random_triples<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Self {
        let mut w = Weights::new();
        for ix in (1..=n).combinations(3) {
            w.triples.insert([ix[0], ix[1], ix[2]], random_rational(rng));
        }
        w
    }

    pub fn random_quads<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Self {
        let mut w = Weights::new();
        for ix in (1..=n).combinations(4) {
            let a = random_rational(rng);
            let b = random_rational(rng);
            w.quads.insert([ix[0], ix[1], ix[2], ix[3]], [a, b]);
        }
        w
    }

    /// Parses `{"pairs": [[i,j,"w"]], "triples": [[i,j,k,"w"]], "quads": [[i,j,k,l,"w"]]}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("weight file must be a JSON object".into()))?;
        let mut w = Weights::new();
        for key in obj.keys() {
            if !matches!(key.as_str(), "pairs" | "triples" | "quads") {
                return Err(Error::Parse(format!("unknown weight table {key:?}")));
            }
        }
        for (key, arity) in [("pairs", 2), ("triples", 3), ("quads", 4)] {
            let Some(list) = obj.get(key) else { continue };
            let list = list
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{key} must be an array")))?;
            for entry in list {
                let (ix, v) = parse_entry(entry, arity)?;
                match arity {
                    2 => w.set_pair(ix[0], ix[1], v)?,
                    3 => w.set_triple(ix[0], ix[1], ix[2], v)?,
                    _ => w.set_quad([ix[0], ix[1], ix[2], ix[3]], v)?,
                }
            }
        }
        Ok(w)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&value)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// Canonical form: sorted keys, quadruples as their two components.
    pub fn to_json(&self) -> Value {
        let s = |v: &Rational| Value::String(v.to_string());
        json!({
            "pairs": self.pairs.iter().map(|(k, v)| json!([k[0], k[1], s(v)])).collect::<Vec<_>>(),
            "triples": self.triples.iter().map(|(k, v)| json!([k[0], k[1], k[2], s(v)])).collect::<Vec<_>>(),
            "quads": self.quads.iter().flat_map(|(k, [a, b])| {
                [json!([k[0], k[1], k[2], k[3], s(a)]), json!([k[0], k[2], k[3], k[1], s(b)])]
            }).collect::<Vec<_>>(),
        })
    }
}

fn parse_entry(entry: &Value, arity: usize) -> Result<(Vec<usize>, Rational)> {
    let items = entry
        .as_array()
        .filter(|a| a.len() == arity + 1)
        .ok_or_else(|| Error::Parse(format!("expected {} indices and a value, got {entry}", arity)))?;
    let mut ix = Vec::with_capacity(arity);
    for v in &items[..arity] {
        let i = v
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("bad label {v} in {entry}")))?;
        ix.push(i as usize);
    }
    let v = match &items[arity] {
        Value::String(s) => parse_rational(s)?,
        Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().expect("checked").into()),
        other => return Err(Error::Parse(format!("weight {other} must be a rational string"))),
    };
    Ok((ix, v))
}

/// Symbolic weights named `w12`, `w123`, ... on `1..=n`; variable indices
/// follow the order of `names`.
pub struct Symbolic {
    pub weights: Weights<MultiPoly>,
    pub names: Vec<String>,
}

fn label(ix: &[usize]) -> String {
    let sep = if ix.iter().any(|&i| i > 9) { "_" } else { "" };
    format!("w{}", ix.iter().map(|i| i.to_string()).join(sep))
}

impl Symbolic {
    pub fn pairs(n: usize) -> Self {
        let mut weights = Weights::new();
        let mut names = Vec::new();
        for ix in (1..=n).combinations(2) {
            weights.pairs.insert([ix[0], ix[1]], MultiPoly::var(names.len() as u32));
            names.push(label(&ix));
        }
        Symbolic { weights, names }
    }

    pub fn triples(n: usize) -> Self {
        let mut weights = Weights::new();
        let mut names = Vec::new();
        for ix in (1..=n).combinations(3) {
            weights
                .triples
                .insert([ix[0], ix[1], ix[2]], MultiPoly::var(names.len() as u32));
            names.push(label(&ix));
        }
        Symbolic { weights, names }
    }

    pub fn quads(n: usize) -> Self {
        let mut weights = Weights::new();
        let mut names = Vec::new();
        for ix in (1..=n).combinations(4) {
            let a = MultiPoly::var(names.len() as u32);
            names.push(label(&ix));
            let b = MultiPoly::var(names.len() as u32);
            names.push(label(&[ix[0], ix[2], ix[3], ix[1]]));
            weights.quads.insert([ix[0], ix[1], ix[2], ix[3]], [a, b]);
        }
        Symbolic { weights, names }
    }
}
