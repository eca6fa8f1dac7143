use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::f2::{F2Matrix, F2Vec};
use crate::snf::smith_diagonal;
use crate::AlgebraError;

/// A sparse integer matrix stored by columns, entries sorted by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds a matrix from column entry lists; repeated rows are summed and
    /// zero results dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let columns: Vec<Vec<(u32, i64)>> = columns
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(c.len());
                for (r, x) in c {
                    assert!((r as usize) < rows, "row index out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += x,
                        _ => out.push((r, x)),
                    }
                    if out.last().is_some_and(|e| e.1 == 0) {
                        out.pop();
                    }
                }
                out
            })
            .collect();
        IntMatrix { rows, cols: columns.len(), columns }
    }

    pub fn from_dense(a: &[Vec<i64>]) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|j| {
                (0..rows).filter(|&i| a[i][j] != 0).map(|i| (i as u32, a[i][j])).collect()
            })
            .collect();
        IntMatrix { rows, cols, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, x) in c {
                out[i as usize][j] = x;
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = vec![0i64; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(i, a) in &self.columns[j] {
                let t = a.checked_mul(x).ok_or(AlgebraError::Overflow)?;
                out[i as usize] = out[i as usize].checked_add(t).ok_or(AlgebraError::Overflow)?;
            }
        }
        Ok(out)
    }

    pub fn compose(&self, rhs: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if rhs.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut columns = Vec::with_capacity(rhs.cols);
        for c in &rhs.columns {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for &(k, b) in c {
                for &(i, a) in &self.columns[k as usize] {
                    let t = a.checked_mul(b).ok_or(AlgebraError::Overflow)?;
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(t).ok_or(AlgebraError::Overflow)?;
                }
            }
            let mut col: Vec<(u32, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
            col.sort_unstable_by_key(|e| e.0);
            columns.push(col);
        }
        Ok(IntMatrix { rows: self.rows, cols: rhs.cols, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn mod2(&self) -> F2Matrix {
        F2Matrix::from_columns(
            self.rows,
            self.columns
                .iter()
                .map(|c| c.iter().filter(|e| e.1 % 2 != 0).map(|e| e.0).collect())
                .collect(),
        )
    }

    /// Rank and invariant factors (those greater than one) over the integers.
    pub fn invariants(&self) -> IntInvariants {
        match eliminate_units(self) {
            Ok((units, residue)) => {
                let diag = smith_diagonal(&residue);
                invariants_from(units, &diag)
            }
            Err(_) => {
                let dense: Vec<Vec<BigInt>> = self
                    .to_dense()
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                invariants_from(0, &smith_diagonal(&dense))
            }
        }
    }
}

fn invariants_from(units: usize, diag: &[BigInt]) -> IntInvariants {
    let mut factors: Vec<BigInt> =
        diag.iter().filter(|d| !d.is_one()).cloned().collect();
    factors.sort();
    IntInvariants { rank: units + diag.len(), factors }
}

/// Rank over Q together with the nontrivial invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntInvariants {
    pub rank: usize,
    pub factors: Vec<BigInt>,
}

/// Eliminates pivots of absolute value one by row operations, which leave
/// the invariant factors unchanged. Returns the number of pivots removed and
/// the dense remainder on the surviving rows and columns.
fn eliminate_units(m: &IntMatrix) -> Result<(usize, Vec<Vec<BigInt>>), AlgebraError> {
    let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); m.rows];
    for (j, c) in m.columns.iter().enumerate() {
        for &(i, x) in c {
            rows[i as usize].push((j as u32, x));
        }
    }
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            col_rows[j as usize].push(i as u32);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i as u32))).collect();
    let mut units = 0;
    let mut scratch: Vec<(u32, i64)> = Vec::new();
    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !row_alive[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let pivot = rows[r]
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| col_rows[e.0 as usize].len())
            .copied();
        let Some((pc, pv)) = pivot else { continue };
        let pivot_row = std::mem::take(&mut rows[r]);
        row_alive[r] = false;
        let targets: Vec<u32> = col_rows[pc as usize]
            .iter()
            .copied()
            .filter(|&t| t as usize != r && row_alive[t as usize])
            .collect();
        for t in targets {
            let t = t as usize;
            let Some(coef) = rows[t].iter().find(|e| e.0 == pc).map(|e| e.1) else { continue };
            let factor = coef.checked_mul(pv).ok_or(AlgebraError::Overflow)?;
            scratch.clear();
            let (a, b) = (&rows[t], &pivot_row);
            let (mut x, mut y) = (0, 0);
            while x < a.len() || y < b.len() {
                let ca = a.get(x).map_or(u32::MAX, |e| e.0);
                let cb = b.get(y).map_or(u32::MAX, |e| e.0);
                if ca < cb {
                    scratch.push(a[x]);
                    x += 1;
                } else if cb < ca {
                    let v = b[y].1.checked_mul(-factor).ok_or(AlgebraError::Overflow)?;
                    scratch.push((cb, v));
                    col_rows[cb as usize].push(t as u32);
                    y += 1;
                } else {
                    let v = b[y].1.checked_mul(factor).ok_or(AlgebraError::Overflow)?;
                    let v = a[x].1.checked_sub(v).ok_or(AlgebraError::Overflow)?;
                    if v != 0 {
                        scratch.push((ca, v));
                    }
                    x += 1;
                    y += 1;
                }
            }
            std::mem::swap(&mut rows[t], &mut scratch);
            heap.push(Reverse((rows[t].len(), t as u32)));
        }
        col_alive[pc as usize] = false;
        for &(c, _) in &pivot_row {
            col_rows[c as usize].retain(|&q| q as usize != r);
        }
        for &(c, _) in &pivot_row {
            if c != pc {
                let live = &mut col_rows[c as usize];
                live.sort_unstable();
                live.dedup();
                live.retain(|&q| rows[q as usize].iter().any(|e| e.0 == c));
            }
        }
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| row_alive[i] && !rows[i].is_empty()).collect();
    let mut col_pos: HashMap<u32, usize> = HashMap::new();
    for &i in &live_rows {
        for &(c, _) in &rows[i] {
            debug_assert!(col_alive[c as usize]);
            let n = col_pos.len();
            col_pos.entry(c).or_insert(n);
        }
    }
    let mut dense = vec![vec![BigInt::zero(); col_pos.len()]; live_rows.len()];
    for (k, &i) in live_rows.iter().enumerate() {
        for &(c, x) in &rows[i] {
            dense[k][col_pos[&c]] = BigInt::from(x);
        }
    }
    Ok((units, dense))
}

/// Lifts a mod 2 vector to a 0/1 integer vector.
pub fn lift_01(v: &F2Vec) -> Vec<i64> {
    let mut out = vec![0i64; v.len()];
    for i in v.ones() {
        out[i] = 1;
    }
    out
}

pub fn bigint_to_u64(x: &BigInt) -> Option<u64> {
    if x.is_negative() {
        None
    } else {
        x.to_u64()
    }
}
