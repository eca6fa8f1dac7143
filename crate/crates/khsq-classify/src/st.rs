use std::collections::BTreeMap;
use std::fmt;

use khsq_algebra::{f2_image_basis, f2_intersection_dim, f2_kernel_basis, f2_rank, F2Matrix, F2Vec};
use khsq_cube::{Cube, Parity};
use khsq_steenrod::{Grading, MatchingChoice, Sq2Formula};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ClassifyError;

/// One bidegree of `St_l`, with the ranks it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StEntry {
    pub i: i32,
    pub j: i32,
    pub tuple: [usize; 4],
    pub ranks: [usize; 4],
}

impl fmt::Display for StEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.tuple;
        write!(f, "({}, {})↦({a}, {b}, {c}, {d})", self.i, self.j)
    }
}

/// The nonzero values of `St_l`, sorted by `(j, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StTable {
    pub l: u32,
    pub entries: Vec<StEntry>,
}

impl StTable {
    /// The tuple at `(i, j)`, zero if absent.
    pub fn get(&self, i: i32, j: i32) -> [usize; 4] {
        self.entries.iter().find(|e| e.i == i && e.j == j).map_or([0; 4], |e| e.tuple)
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entries as `(i, j) -> tuple`.
    pub fn as_map(&self) -> BTreeMap<(i32, i32), [usize; 4]> {
        self.entries.iter().map(|e| ((e.i, e.j), e.tuple)).collect()
    }
}

fn images(m: &F2Matrix, vs: &[F2Vec]) -> Result<Vec<F2Vec>, ClassifyError> {
    Ok(vs.iter().map(|v| m.apply(v)).collect::<Result<_, _>>()?)
}

/// The ranks `r_1, ..., r_4` from `Sq^2 : H^i -> H^{i+2}`,
/// `Sq^1_{(i)} : H^i -> H^{i+1}` and `Sq^1_{(i+1)} : H^{i+1} -> H^{i+2}`.
/// The last two ranks are intersection dimensions with the image of
/// `Sq^1_{(i+1)}`.
pub fn st_ranks(sq2: &F2Matrix, sq1_i: &F2Matrix, sq1_next: &F2Matrix) -> Result<[usize; 4], ClassifyError> {
    let len = sq2.rows();
    let kernel = f2_kernel_basis(sq1_i);
    let restricted = images(sq2, &kernel)?;
    let bockstein_image = f2_image_basis(sq1_next);
    let square_image = f2_image_basis(sq2);
    let r1 = f2_rank(sq2);
    let r2 = f2_intersection_dim(len, &restricted, &restricted);
    let r3 = f2_intersection_dim(len, &bockstein_image, &square_image);
    let r4 = f2_intersection_dim(len, &bockstein_image, &restricted);
    Ok([r1, r2, r3, r4])
}

/// `(r_2 - r_4, r_1 - r_2 - r_3 + r_4, r_4, r_3 - r_4)`, or `None` if a
/// coordinate would be negative.
pub fn st_tuple(ranks: [usize; 4]) -> Option<[usize; 4]> {
    let [r1, r2, r3, r4] = ranks.map(|r| r as i64);
    let t = [r2 - r4, r1 - r2 - r3 + r4, r4, r3 - r4];
    t.iter().all(|&x| x >= 0).then(|| t.map(|x| x as usize))
}

fn grading_entries(
    cube: &Cube,
    j: i32,
    ls: &[u32],
    choice: MatchingChoice,
) -> Result<Vec<Vec<StEntry>>, ClassifyError> {
    let g = Grading::new(cube, j)?;
    let mut out = vec![Vec::new(); ls.len()];
    let degrees: Vec<i32> = g.degrees().filter(|&i| g.dim(i) > 0 && g.dim(i + 2) > 0).collect();
    for i in degrees {
        let mut sq1 = BTreeMap::new();
        for (k, &l) in ls.iter().enumerate() {
            let parity = Parity::for_l(l);
            if let std::collections::btree_map::Entry::Vacant(e) = sq1.entry(parity) {
                e.insert((g.sq1(i, parity)?, g.sq1(i + 1, parity)?));
            }
            let (sq1_i, sq1_next) = &sq1[&parity];
            let sq2 = g.sq2(cube, i, Sq2Formula::Facet { l }, choice)?;
            let ranks = st_ranks(&sq2, sq1_i, sq1_next)?;
            let tuple = st_tuple(ranks).ok_or(ClassifyError::NegativeTuple { i, j, ranks })?;
            if tuple != [0; 4] {
                out[k].push(StEntry { i, j, tuple, ranks });
            }
        }
    }
    Ok(out)
}

/// `St_l` for each `l` in `ls`, sharing the cohomology computations.
/// Quantum gradings are processed in parallel.
pub fn st_tables(cube: &Cube, ls: &[u32], choice: MatchingChoice) -> Result<Vec<StTable>, ClassifyError> {
    let per_grading: Vec<Vec<Vec<StEntry>>> = cube
        .quantum_gradings()
        .into_par_iter()
        .map(|j| grading_entries(cube, j, ls, choice))
        .collect::<Result<_, _>>()?;
    let mut tables: Vec<StTable> = ls.iter().map(|&l| StTable { l, entries: Vec::new() }).collect();
    for grading in per_grading {
        for (t, entries) in tables.iter_mut().zip(grading) {
            t.entries.extend(entries);
        }
    }
    Ok(tables)
}

/// `St_l` of the link whose cube is given.
pub fn st_table(cube: &Cube, l: u32, choice: MatchingChoice) -> Result<StTable, ClassifyError> {
    Ok(st_tables(cube, &[l], choice)?.remove(0))
}
