use crate::error::{Error, Result};

/// Size limits for the expensive computations. `heavy()` lifts them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Degree for the Lie-space solver.
    pub lie_n: usize,
    /// Matrix size for symbolic polynomial work.
    pub symbolic_n: usize,
    /// Size of numeric shuffle determinants.
    pub sdet_n: usize,
    /// Number of triangles in enumerated 3-trees.
    pub three_tree_m: usize,
    pub mtt_n: usize,
    pub pft_n: usize,
    pub main_n: usize,
    pub conjecture_n: usize,
    /// Number of items any single enumeration may produce.
    pub enumeration: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            lie_n: 6,
            symbolic_n: 5,
            sdet_n: 8,
            three_tree_m: 3,
            mtt_n: 7,
            pft_n: 5,
            main_n: 6,
            conjecture_n: 5,
            enumeration: 2_000_000,
        }
    }
}

impl Bounds {
    pub fn heavy() -> Self {
        Bounds {
            lie_n: 7,
            symbolic_n: 7,
            sdet_n: 12,
            three_tree_m: 4,
            mtt_n: 9,
            pft_n: 7,
            main_n: 7,
            conjecture_n: 6,
            enumeration: 50_000_000,
        }
    }
}

pub(crate) fn check(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::ResourceLimit { what, n, max })
    } else {
        Ok(())
    }
}
