use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::check_bijection;

/// A bijection of `0..n`, stored as its image array.
///
/// Products are spelled out by name: `p.then(q)` applies `p` first, while
/// `p.compose(q)` is the functional composite `p ∘ q` (apply `q` first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        check_bijection(&images, images.len())?;
        Ok(Permutation(images))
    }

    /// Builds a permutation of `0..n` from 0-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (j, &x) in cycle.iter().enumerate() {
                let y = cycle[(j + 1) % cycle.len()];
                if x >= n || y >= n || touched[x] {
                    return Err(Error::NotPermutation(format!("bad cycle {cycle:?}")));
                }
                touched[x] = true;
                images[x] = y;
            }
        }
        Permutation::from_images(images)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Ok(Permutation::identity(n));
        }
        Permutation::from_cycles(n, &[&[a, b]])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        other.then(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    /// `self^-1 ∘ p ∘ self`, i.e. `p` transported along `self`.
    pub fn conjugate(&self, p: &Permutation) -> Permutation {
        self.inverse().compose(&p.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| self.0[y] == x)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| other.0[y] == self.0[other.0[x]])
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.0[x] == x
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(x, &y)| *x != y).map(|(x, _)| x)
    }

    /// Non-trivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect()
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,4)` on `n` points.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cycle notation {s:?}"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let inner = &body[..close];
            if !inner.is_empty() {
                let cycle = inner
                    .split(',')
                    .map(|t| {
                        t.parse::<usize>()
                            .ok()
                            .and_then(|x| x.checked_sub(1))
                            .ok_or_else(bad)
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            rest = &body[close + 1..];
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(n, &refs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}
