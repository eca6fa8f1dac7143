use fixedbitset::FixedBitSet;

use crate::AlgebraError;

/// A vector over F2, bit-packed into 64-bit words.
pub type F2Vec = FixedBitSet;

/// Index of the lowest set bit at position `>= from`.
pub fn next_one(v: &F2Vec, from: usize) -> Option<usize> {
    let words = v.as_slice();
    let block_bits = usize::BITS as usize;
    let mut w = from / block_bits;
    if w >= words.len() {
        return None;
    }
    let mut word = words[w] & (!0usize).checked_shl((from % block_bits) as u32).unwrap_or(0);
    loop {
        if word != 0 {
            let bit = w * block_bits + word.trailing_zeros() as usize;
            return (bit < v.len()).then_some(bit);
        }
        w += 1;
        if w >= words.len() {
            return None;
        }
        word = words[w];
    }
}

pub fn f2_from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> F2Vec {
    let mut v = FixedBitSet::with_capacity(len);
    for i in ones {
        v.toggle(i);
    }
    v
}

/// A sparse F2 matrix stored by columns; column `j` lists the rows holding a 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<u32>>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds a matrix from columns; repeated row indices cancel in pairs.
    pub fn from_columns(rows: usize, columns: Vec<Vec<u32>>) -> Self {
        let columns: Vec<Vec<u32>> = columns
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Vec<u32> = Vec::with_capacity(c.len());
                for r in c {
                    assert!((r as usize) < rows, "row index out of range");
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        F2Matrix { rows, cols: columns.len(), columns }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix::from_columns(n, (0..n as u32).map(|i| vec![i]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.columns[j]
    }

    pub fn column_vec(&self, j: usize) -> F2Vec {
        f2_from_indices(self.rows, self.columns[j].iter().map(|&r| r as usize))
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.columns[j].binary_search(&(i as u32)).is_ok()
    }

    pub fn apply(&self, v: &F2Vec) -> Result<F2Vec, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = FixedBitSet::with_capacity(self.rows);
        for j in v.ones() {
            for &r in &self.columns[j] {
                out.toggle(r as usize);
            }
        }
        Ok(out)
    }

    /// The product `self * rhs`.
    pub fn compose(&self, rhs: &F2Matrix) -> Result<F2Matrix, AlgebraError> {
        if rhs.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let columns = (0..rhs.cols)
            .map(|j| {
                let v = self.apply(&rhs.column_vec(j)).expect("checked dimensions");
                v.ones().map(|r| r as u32).collect()
            })
            .collect();
        Ok(F2Matrix { rows: self.rows, cols: rhs.cols, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn rank(&self) -> usize {
        f2_rank(self)
    }
}

/// Row echelon data: a set of vectors with distinct leading (lowest) bits,
/// each carrying a tag recording which inserted vectors it combines.
#[derive(Debug, Clone)]
pub struct Echelon {
    len: usize,
    tag_len: usize,
    pivot_of: Vec<u32>,
    rows: Vec<F2Vec>,
    tags: Vec<F2Vec>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Echelon { len, tag_len, pivot_of: vec![NO_PIVOT; len], rows: Vec::new(), tags: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place, xoring `tag` alongside; afterwards no set bit of
    /// `v` is a pivot.
    pub fn reduce(&self, v: &mut F2Vec, tag: &mut F2Vec) {
        let mut pos = 0;
        while let Some(b) = next_one(v, pos) {
            let p = self.pivot_of[b];
            if p != NO_PIVOT {
                v.symmetric_difference_with(&self.rows[p as usize]);
                tag.symmetric_difference_with(&self.tags[p as usize]);
            }
            pos = b + 1;
        }
    }

    /// Inserts `v` with tag `tag`. Returns `None` if `v` became a new pivot
    /// row, or the tag of the dependency found when `v` lies in the span.
    pub fn insert(&mut self, mut v: F2Vec, mut tag: F2Vec) -> Option<F2Vec> {
        assert_eq!(v.len(), self.len, "vector length");
        let mut pos = 0;
        let mut lead = None;
        while let Some(b) = next_one(&v, pos) {
            let p = self.pivot_of[b];
            if p == NO_PIVOT {
                lead = Some(b);
                break;
            }
            v.symmetric_difference_with(&self.rows[p as usize]);
            tag.symmetric_difference_with(&self.tags[p as usize]);
            pos = b + 1;
        }
        match lead {
            Some(b) => {
                self.pivot_of[b] = self.rows.len() as u32;
                self.rows.push(v);
                self.tags.push(tag);
                None
            }
            None => Some(tag),
        }
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        let mut w = v.clone();
        let mut t = FixedBitSet::with_capacity(self.tag_len);
        self.reduce(&mut w, &mut t);
        w.is_clear()
    }
}

pub fn f2_rank(m: &F2Matrix) -> usize {
    let mut e = Echelon::new(m.rows, 0);
    for j in 0..m.cols {
        e.insert(m.column_vec(j), FixedBitSet::with_capacity(0));
    }
    e.rank()
}

/// A basis of the kernel of `m`, as vectors of length `m.cols()`.
pub fn f2_kernel_basis(m: &F2Matrix) -> Vec<F2Vec> {
    let mut e = Echelon::new(m.rows, m.cols);
    let mut out = Vec::new();
    for j in 0..m.cols {
        let tag = f2_from_indices(m.cols, [j]);
        if let Some(dep) = e.insert(m.column_vec(j), tag) {
            out.push(dep);
        }
    }
    out
}

/// A basis of the column space of `m`, chosen among its columns.
pub fn f2_image_basis(m: &F2Matrix) -> Vec<F2Vec> {
    let mut e = Echelon::new(m.rows, 0);
    let mut out = Vec::new();
    for j in 0..m.cols {
        let c = m.column_vec(j);
        if e.insert(c.clone(), FixedBitSet::with_capacity(0)).is_none() {
            out.push(c);
        }
    }
    out
}

/// Some `x` with `m x = b`.
pub fn f2_solve(m: &F2Matrix, b: &F2Vec) -> Result<F2Vec, AlgebraError> {
    if b.len() != m.rows {
        return Err(AlgebraError::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let mut e = Echelon::new(m.rows, m.cols);
    for j in 0..m.cols {
        e.insert(m.column_vec(j), f2_from_indices(m.cols, [j]));
    }
    let mut v = b.clone();
    let mut tag = FixedBitSet::with_capacity(m.cols);
    e.reduce(&mut v, &mut tag);
    if v.is_clear() {
        Ok(tag)
    } else {
        Err(AlgebraError::NoSolution)
    }
}

/// Intersection dimension of two subspaces given by spanning sets.
pub fn f2_intersection_dim(len: usize, a: &[F2Vec], b: &[F2Vec]) -> usize {
    let span = |vs: &[&F2Vec]| {
        let mut e = Echelon::new(len, 0);
        for v in vs {
            e.insert((*v).clone(), FixedBitSet::with_capacity(0));
        }
        e.rank()
    };
    let ra = span(&a.iter().collect::<Vec<_>>());
    let rb = span(&b.iter().collect::<Vec<_>>());
    let rab = span(&a.iter().chain(b.iter()).collect::<Vec<_>>());
    ra + rb - rab
}
