//! Invariant factors of sparse integer matrices.
//!
//! Unit pivots are eliminated first on the sparse form, which disposes of most
//! of a boundary matrix; what remains goes through a dense diagonalization and
//! a gcd/lcm pass. Arithmetic runs in `i64` with overflow checks and restarts in
//! `BigInt` if any check trips.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait SnfInt: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_cmp_key(&self) -> BigInt;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    /// Floor quotient and remainder.
    fn div_rem(&self, other: &Self) -> (Self, Self);
    fn to_big(&self) -> BigInt;
    fn from_i64(x: i64) -> Self;
}

impl SnfInt for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_cmp_key(&self) -> BigInt {
        BigInt::from(*self).abs()
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        Integer::div_mod_floor(self, other)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_i64(x: i64) -> Self {
        x
    }
}

impl SnfInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_cmp_key(&self) -> BigInt {
        self.abs()
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        Integer::div_mod_floor(self, other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
}

/// Sparse integer matrix given by its nonzero entries, one map per row.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: vec![BTreeMap::new(); rows],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        if v == 0 {
            self.entries[r].remove(&c);
        } else {
            self.entries[r].insert(c, v);
        }
    }
}

/// Rank and the invariant factors greater than one, in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn smith_summary(m: &SparseMatrix) -> SmithSummary {
    if let Some(s) = smith_generic::<i64>(m) {
        return s;
    }
    smith_generic::<BigInt>(m).expect("bigint arithmetic cannot overflow")
}

fn smith_generic<T: SnfInt>(m: &SparseMatrix) -> Option<SmithSummary> {
    let mut rows: Vec<BTreeMap<usize, T>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|(&c, &v)| (c, T::from_i64(v))).collect())
        .collect();
    let mut col_rows: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r, ());
        }
    }
    let mut alive = vec![true; m.rows];
    let mut rank = 0;
    // sweep the rows, pivoting on a unit wherever one is left, until a sweep finds none
    let mut progressed = true;
    while progressed {
        progressed = false;
        for pr in 0..m.rows {
            if !alive[pr] {
                continue;
            }
            let Some(pc) = rows[pr]
                .iter()
                .filter(|(_, v)| v.is_unit())
                .map(|(&c, _)| c)
                .min_by_key(|&c| (col_rows[c].len(), c))
            else {
                continue;
            };
            let prow = std::mem::take(&mut rows[pr]);
            let pval = prow[&pc].clone();
            let others: Vec<usize> = col_rows[pc].keys().copied().filter(|&r| r != pr).collect();
            for r in others {
                // row_r -= (a_rc / p) * row_p, exact since p = ±1
                let factor = rows[r][&pc].checked_mul(&pval)?;
                for (&c, v) in &prow {
                    let cur = rows[r].get(&c).cloned().unwrap_or_else(T::zero);
                    let next = cur.checked_sub(&factor.checked_mul(v)?)?;
                    if next.is_zero() {
                        rows[r].remove(&c);
                        col_rows[c].remove(&r);
                    } else {
                        if !rows[r].contains_key(&c) {
                            col_rows[c].insert(r, ());
                        }
                        rows[r].insert(c, next);
                    }
                }
            }
            for &c in prow.keys() {
                col_rows[c].remove(&pr);
            }
            alive[pr] = false;
            rank += 1;
            progressed = true;
        }
    }
    let rest_rows: Vec<usize> = (0..m.rows).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
    let mut rest_cols: Vec<usize> = rest_rows.iter().flat_map(|&r| rows[r].keys().copied()).collect();
    rest_cols.sort_unstable();
    rest_cols.dedup();
    let mut dense: Vec<Vec<T>> = rest_rows
        .iter()
        .map(|&r| {
            rest_cols
                .iter()
                .map(|c| rows[r].get(c).cloned().unwrap_or_else(T::zero))
                .collect()
        })
        .collect();
    let diag = dense_diagonal(&mut dense)?;
    rank += diag.len();
    let mut factors: Vec<BigInt> = diag.iter().map(|d| d.to_big().abs()).collect();
    normalize_divisibility(&mut factors);
    Some(SmithSummary {
        rank,
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

/// Diagonalizes in place; returns the nonzero diagonal.
fn dense_diagonal<T: SnfInt>(a: &mut [Vec<T>]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by_key(|&(r, c)| a[r][c].abs_cmp_key())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let (q, rem) = a[r][t].div_rem(&a[t][t]);
                for c in t..cols {
                    let sub = q.checked_mul(&a[t][c])?;
                    a[r][c] = a[r][c].checked_sub(&sub)?;
                }
                if !rem.is_zero() {
                    a.swap(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let (q, rem) = a[t][c].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = q.checked_mul(&row[t])?;
                    row[c] = row[c].checked_sub(&sub)?;
                }
                if !rem.is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Some(diag)
}

/// Replaces each pair `(a, b)` by `(gcd, lcm)` until every entry divides the next.
fn normalize_divisibility(d: &mut [BigInt]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_matrices() {
        let s = smith_summary(&from_dense(&[&[2, 0], &[0, 3]]));
        assert_eq!((s.rank, s.torsion), (2, big(&[6])));
        let s = smith_summary(&from_dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!((s.rank, s.torsion), (3, big(&[2, 6, 12])));
        let s = smith_summary(&from_dense(&[&[1, 1], &[1, 1]]));
        assert_eq!((s.rank, s.torsion), (1, vec![]));
        let s = smith_summary(&SparseMatrix::new(0, 4));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn overflow_promotes() {
        let huge = i64::MAX / 2 + 1;
        let s = smith_summary(&from_dense(&[&[huge, 3], &[3, huge]]));
        let det = BigInt::from(huge) * BigInt::from(huge) - BigInt::from(9);
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion.iter().product::<BigInt>(), det.abs());
    }

    #[test]
    fn two_torsion_of_a_mobius_like_relation() {
        // columns: boundary of a 2-cell attached by a^2
        let s = smith_summary(&from_dense(&[&[2]]));
        assert_eq!(s.torsion, big(&[2]));
    }
}
