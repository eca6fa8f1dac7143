use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Smith normal form `U A V = D` of a dense integer matrix, with unimodular
/// `U` and `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    /// Nonzero diagonal entries of `D`, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub d: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        if let Some(u) = &mut self.u {
            u.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for r in &mut self.a {
            r.swap(j, k);
        }
        if let Some(v) = &mut self.v {
            for r in v {
                r.swap(j, k);
            }
        }
    }

    /// row_i -= q * row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt) {
        let rk = self.a[k].clone();
        for (x, y) in self.a[i].iter_mut().zip(&rk) {
            *x -= q * y;
        }
        if let Some(u) = &mut self.u {
            let rk = u[k].clone();
            for (x, y) in u[i].iter_mut().zip(&rk) {
                *x -= q * y;
            }
        }
    }

    /// col_j -= q * col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in &mut self.a {
            let y = r[k].clone();
            r[j] -= q * y;
        }
        if let Some(v) = &mut self.v {
            for r in v {
                let y = r[k].clone();
                r[j] -= q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                if self.a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let n = self.rows().min(self.cols());
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.smallest_from(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    let (mut bi, mut bj) = (t, t);
                    for i in t..self.rows() {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[bi][bj].abs() {
                            (bi, bj) = (i, t);
                        }
                    }
                    for j in t..self.cols() {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[bi][bj].abs() {
                            (bi, bj) = (t, j);
                        }
                    }
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                let bad = (t + 1..self.rows()).find(|&i| {
                    (t + 1..self.cols()).any(|j| !self.a[i][j].is_multiple_of(&self.a[t][t]))
                });
                match bad {
                    Some(i) => {
                        let minus_one = BigInt::from(-1);
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Positive nonzero diagonal entries of the Smith normal form.
pub fn smith_diagonal(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut w = Work { a: a.to_vec(), u: None, v: None };
    let r = w.run();
    (0..r).map(|t| w.a[t][t].clone()).collect()
}

/// Smith normal form with transformation certificates.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Snf {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut w = Work { a: a.to_vec(), u: Some(identity(rows)), v: Some(identity(cols)) };
    let r = w.run();
    Snf {
        diagonal: (0..r).map(|t| w.a[t][t].clone()).collect(),
        d: w.a,
        u: w.u.expect("tracked"),
        v: w.v.expect("tracked"),
    }
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut m = a.to_vec();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = x / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &m[n - 1][n - 1]
    }
}
