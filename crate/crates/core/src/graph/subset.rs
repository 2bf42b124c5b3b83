//! k-subsets of `[n] = {1, .., n}` as bit masks, ranked in colexicographic order.
//!
//! Bit `j` of a mask stands for the element `j + 1`. Colex order on masks of a
//! fixed popcount coincides with the numeric order of the masks, so every
//! subset avoiding `n` precedes every subset containing it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set supported by the mask representation.
pub const MAX_GROUND: usize = 63;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc as u64
}

/// All k-subsets of `[n]` in colex order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> Result<Vec<u64>> {
    if n > MAX_GROUND {
        return Err(Error::InvalidParameters(format!(
            "ground set of size {n} exceeds {MAX_GROUND}"
        )));
    }
    if k > n {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(binomial(n, k) as usize);
    if k == 0 {
        out.push(0);
        return Ok(out);
    }
    let limit = 1u64 << n;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        out.push(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    Ok(out)
}

/// Colex rank of a mask among the subsets of the same cardinality.
pub fn colex_rank(mask: u64) -> u64 {
    let mut rank = 0;
    let mut m = mask;
    let mut j = 0;
    while m != 0 {
        let e = m.trailing_zeros() as usize;
        rank += binomial(e, j + 1);
        j += 1;
        m &= m - 1;
    }
    rank
}

/// Complement of `mask` inside `[n]`.
pub fn complement(mask: u64, n: usize) -> u64 {
    !mask & ((1u64 << n) - 1)
}

/// A subset of `[n]` rendered with 1-based elements, e.g. `{1,3}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubsetLabel(pub Vec<u32>);

impl SubsetLabel {
    pub fn from_mask(mask: u64) -> Self {
        let mut elems = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            elems.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        SubsetLabel(elems)
    }

    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |acc, &e| acc | (1u64 << (e - 1)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.0.binary_search(&e).is_ok()
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (j, e) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn colex_order_matches_ranks() {
        for n in 1..=9 {
            for k in 0..=n {
                let subsets = k_subsets(n, k).unwrap();
                assert_eq!(subsets.len() as u64, binomial(n, k));
                for (r, &s) in subsets.iter().enumerate() {
                    assert_eq!(s.count_ones() as usize, k);
                    assert_eq!(colex_rank(s), r as u64);
                }
            }
        }
    }

    #[test]
    fn subsets_avoiding_top_element_come_first() {
        let subsets = k_subsets(6, 3).unwrap();
        let cut = binomial(5, 3) as usize;
        assert!(subsets[..cut].iter().all(|s| s & (1 << 5) == 0));
        assert!(subsets[cut..].iter().all(|s| s & (1 << 5) != 0));
    }

    #[test]
    fn label_round_trip() {
        let l = SubsetLabel::from_mask(0b10101);
        assert_eq!(l.0, vec![1, 3, 5]);
        assert_eq!(l.to_string(), "{1,3,5}");
        assert_eq!(l.to_mask(), 0b10101);
        assert_eq!(complement(0b00011, 5), 0b11100);
    }
}
