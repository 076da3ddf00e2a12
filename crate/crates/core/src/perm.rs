use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1..n}`. Composition is the left action
/// `(s ∘ t)(i) = s(t(i))`, so `(1 2)(2 3) = (1 2 3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[i] = σ(i + 1) - 1
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n < 256, "degree {n} too large");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From 1-based images `σ(1), ..., σ(n)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidCycle(format!("{images:?} is not a bijection")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    /// Product of disjoint cycles given by 1-based labels.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        let mut p = Self::identity(n);
        let mut used = vec![false; n];
        for c in cycles {
            let c = c.as_ref();
            for &v in c {
                if v == 0 || v > n {
                    return Err(Error::InvalidIndex(format!("label {v} outside 1..{n}")));
                }
                if used[v - 1] {
                    return Err(Error::InvalidCycle(format!("label {v} repeated")));
                }
                used[v - 1] = true;
            }
            for (k, &v) in c.iter().enumerate() {
                p.images[v - 1] = (c[(k + 1) % c.len()] - 1) as u8;
            }
        }
        Ok(p)
    }

    pub fn cycle(n: usize, labels: &[usize]) -> Result<Self> {
        Self::from_cycles(n, &[labels])
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_cycles(n, &[[i, j]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for a 1-based label.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&t| self.images[t as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Cycles of length at least two, each starting at its smallest label,
    /// ordered by that label.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i + 1);
                i = self.images[i] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Number of orbits, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.all_cycles().len()
    }

    pub fn sign(&self) -> i64 {
        if (self.degree() + self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The same permutation on `{1..n+1}` fixing `n + 1`.
    pub fn extend(&self) -> Self {
        let mut images = self.images.clone();
        images.push(self.degree() as u8);
        Permutation { images }
    }

    /// All of `S_n` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Self> {
        use itertools::Itertools;
        (0..n as u8)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }

    /// Position of `self` in [`Permutation::all`].
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        let mut fact = (1..n).product::<usize>();
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&v| v < self.images[i]).count();
            rank += smaller * fact;
            if i + 1 < n {
                fact /= n - 1 - i;
            }
        }
        rank
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))?;
            let labels = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| usize::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if !labels.is_empty() {
                cycles.push(labels);
            }
            rest = body.1.trim_start();
        }
        Self::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized as `{ "n": 4, "cycles": [[1, 2, 3]] }`.
#[derive(Serialize, Deserialize)]
struct PermRepr {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermRepr {
            n: self.degree(),
            cycles: self.cycles(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PermRepr::deserialize(d)?;
        Permutation::from_cycles(r.n, &r.cycles).map_err(serde::de::Error::custom)
    }
}
