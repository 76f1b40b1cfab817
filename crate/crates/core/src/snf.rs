//! Exact integer matrices and Smith normal form.
//!
//! Entries are arbitrary-precision integers throughout; pivots are chosen by
//! minimal absolute value (fill as tie-break) to limit coefficient growth on
//! the sparse boundary matrices this library produces.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-major sparse integer matrix with a per-column occupancy index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseIntMat {
    pub fn zero(nrows: usize, ncols: usize) -> SparseIntMat {
        SparseIntMat {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
            cols: vec![BTreeSet::new(); ncols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> SparseIntMat {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = SparseIntMat::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, BigInt::from(v));
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i].get(&j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            if self.rows[i].remove(&j).is_some() {
                self.cols[j].remove(&i);
            }
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, BigInt> {
        &self.rows[i]
    }

    pub fn col_rows(&self, j: usize) -> &BTreeSet<usize> {
        &self.cols[j]
    }

    /// `self * other`, for the ∂∂ = 0 check.
    pub fn mul(&self, other: &SparseIntMat) -> SparseIntMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut out = SparseIntMat::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for (k, v) in &self.rows[i] {
                for (j, w) in &other.rows[*k] {
                    out.add_to(i, *j, &(v * w));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let entries: Vec<(usize, BigInt)> =
            self.rows[k].iter().map(|(j, v)| (*j, v.clone())).collect();
        for (j, v) in entries {
            self.add_to(i, j, &(-(q * v)));
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let entries: Vec<(usize, BigInt)> = self.cols[k]
            .iter()
            .map(|&i| (i, self.rows[i][&k].clone()))
            .collect();
        for (i, v) in entries {
            self.add_to(i, j, &(-(q * v)));
        }
    }

    fn clear_row(&mut self, i: usize) {
        let js: Vec<usize> = self.rows[i].keys().copied().collect();
        for j in js {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        }
    }

    fn clear_col(&mut self, j: usize) {
        let is: Vec<usize> = self.cols[j].iter().copied().collect();
        for i in is {
            self.rows[i].remove(&j);
        }
        self.cols[j].clear();
    }
}

/// Diagonal of the Smith normal form, in divisor-chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    /// `d_1 | d_2 | … | d_r`, all positive; length equals the rank.
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

impl Snf {
    /// Invariant factors greater than 1 — the torsion contribution.
    pub fn nonunit_invariants(&self) -> Vec<BigInt> {
        use num_traits::One;
        self.invariants
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Nearest-integer quotient: |a - q·b| ≤ |b|/2.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if (&r + &r).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Smith normal form by unimodular row/column operations on a sparse copy.
///
/// Pivots are nonzero entries of minimal absolute value (then minimal fill);
/// each pivot's row and column are reduced with nearest-integer quotients
/// until isolated. The collected diagonal is normalized into a divisor chain
/// at the end, which is equivalent to enforcing divisibility during
/// elimination but avoids the extra passes.
pub fn smith_normal_form(m: &SparseIntMat) -> Snf {
    let mut a = m.clone();
    let mut diag: Vec<BigInt> = Vec::new();
    loop {
        let Some((mut pi, mut pj)) = select_pivot(&a) else {
            break;
        };
        loop {
            let p = a.rows[pi][&pj].clone();
            // Reduce the pivot column by row operations.
            let others: Vec<usize> = a.cols[pj].iter().copied().filter(|&i| i != pi).collect();
            for i in others {
                let v = a.rows[i][&pj].clone();
                let q = round_div(&v, &p);
                a.row_sub(i, pi, &q);
            }
            if let Some(&i) = a.cols[pj].iter().find(|&&i| i != pi) {
                // A remainder survived; rounding makes it strictly smaller
                // than |p|, so moving the pivot onto it terminates.
                debug_assert!(a.rows[i][&pj].abs() < p.abs());
                pi = i;
                continue;
            }
            // Column is clear; reduce the pivot row by column operations.
            let others: Vec<usize> = a.rows[pi].keys().copied().filter(|&j| j != pj).collect();
            for j in others {
                let v = a.rows[pi][&j].clone();
                let q = round_div(&v, &p);
                a.col_sub(j, pj, &q);
            }
            if let Some((&j, v)) = a.rows[pi].iter().find(|(&j, _)| j != pj) {
                debug_assert!(v.abs() < p.abs());
                pj = j;
                continue;
            }
            break;
        }
        diag.push(a.rows[pi][&pj].abs());
        a.clear_row(pi);
        a.clear_col(pj);
    }
    let rank = diag.len();
    Snf {
        invariants: divisor_chain(diag),
        rank,
    }
}

fn select_pivot(a: &SparseIntMat) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize, usize)> = None;
    for i in 0..a.nrows {
        for (j, v) in &a.rows[i] {
            let fill = (a.rows[i].len() - 1) * (a.cols[*j].len() - 1);
            let key = (v.abs(), fill, i, *j);
            let better = match &best {
                None => true,
                Some((bv, bf, bi, bj)) => {
                    (&key.0, key.1, key.2, key.3) < (bv, *bf, *bi, *bj)
                }
            };
            if better {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, i, j)| (i, j))
}

/// Normalizes a multiset of positive diagonal entries into d_1 | d_2 | … .
fn divisor_chain(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    let n = diag.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                if !(&diag[j] % &diag[i]).is_zero() {
                    let g = diag[i].gcd(&diag[j]);
                    let l = &diag[i] / &g * &diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    diag.sort();
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_of(rows: &[Vec<i64>]) -> (Vec<i64>, usize) {
        let s = smith_normal_form(&SparseIntMat::from_rows(rows));
        let inv = s
            .invariants
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        (inv, s.rank)
    }

    #[test]
    fn identity_2x2() {
        assert_eq!(snf_of(&[vec![1, 0], vec![0, 1]]), (vec![1, 1], 2));
    }

    #[test]
    fn single_entry_two() {
        assert_eq!(snf_of(&[vec![2]]), (vec![2], 1));
    }

    #[test]
    fn hand_reduced_2x2() {
        // [[2,4],[6,8]]: determinant -8, gcd 2 → invariants (2, 4).
        assert_eq!(snf_of(&[vec![2, 4], vec![6, 8]]), (vec![2, 4], 2));
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(snf_of(&[vec![0, 0], vec![0, 0]]), (vec![], 0));
        let s = smith_normal_form(&SparseIntMat::zero(0, 3));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn known_4x4() {
        let (inv, rank) = snf_of(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        assert_eq!(inv, vec![1, 3, 21]);
        assert_eq!(rank, 3);
    }

    #[test]
    fn divisor_chain_refines() {
        // diag(2, 3) is equivalent to diag(1, 6).
        assert_eq!(snf_of(&[vec![2, 0], vec![0, 3]]), (vec![1, 6], 2));
    }

    #[test]
    fn rounded_division() {
        let q = round_div(&BigInt::from(7), &BigInt::from(2));
        assert!(q == BigInt::from(3) || q == BigInt::from(4));
        assert_eq!(round_div(&BigInt::from(-7), &BigInt::from(3)), BigInt::from(-2));
        assert_eq!(round_div(&BigInt::from(6), &BigInt::from(3)), BigInt::from(2));
    }
}
