use std::collections::BTreeMap;

use khsq_algebra::{complex_cohomology_z, AbelianGroup, F2Cohomology, IntMatrix};

use crate::cube::{edge_sign, Cube};
use crate::CubeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// The parity of the complex used for the spectrum `X_l`.
    pub fn for_l(l: u32) -> Parity {
        if l.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The cochain complex in one quantum grading.
#[derive(Debug, Clone)]
pub struct GradedComplex {
    pub q: i32,
    pub i_min: i32,
    /// Generator ids per homological degree, starting at `i_min`.
    pub gens: Vec<Vec<usize>>,
    /// `d[k]` maps degree `i_min + k` to `i_min + k + 1`.
    pub d: Vec<IntMatrix>,
}

impl GradedComplex {
    pub fn i_max(&self) -> i32 {
        self.i_min + self.gens.len() as i32 - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.gens.iter().map(Vec::len).collect()
    }

    fn slot(&self, i: i32) -> Option<usize> {
        let k = i - self.i_min;
        (k >= 0 && (k as usize) < self.gens.len()).then_some(k as usize)
    }

    pub fn dim(&self, i: i32) -> usize {
        self.slot(i).map_or(0, |k| self.gens[k].len())
    }

    /// The differential out of degree `i`, possibly a zero matrix.
    pub fn differential(&self, i: i32) -> IntMatrix {
        match self.slot(i) {
            Some(k) if k < self.d.len() => self.d[k].clone(),
            _ => IntMatrix::zero(self.dim(i + 1), self.dim(i)),
        }
    }

    /// F2 cohomology in degree `i`.
    pub fn f2_cohomology(&self, i: i32) -> Result<F2Cohomology, CubeError> {
        Ok(F2Cohomology::new(&self.differential(i - 1).mod2(), &self.differential(i).mod2())?)
    }

    /// Integral cohomology in every degree from `i_min`.
    pub fn integral_cohomology(&self) -> Result<Vec<AbelianGroup>, CubeError> {
        Ok(complex_cohomology_z(&self.dims(), &self.d)?)
    }

    pub fn check_d_squared(&self) -> bool {
        self.d.windows(2).all(|w| w[1].compose(&w[0]).map(|m| m.is_zero()).unwrap_or(false))
    }
}

impl Cube {
    /// The even or odd complex in quantum grading `q`.
    pub fn complex(&self, q: i32, parity: Parity) -> GradedComplex {
        let degrees: Vec<i32> =
            self.bidegrees().into_iter().filter(|&(_, j)| j == q).map(|(i, _)| i).collect();
        let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
            return GradedComplex { q, i_min: 0, gens: Vec::new(), d: Vec::new() };
        };
        let gens: Vec<Vec<usize>> = (lo..=hi).map(|i| self.block(i, q).to_vec()).collect();
        let d = (0..gens.len().saturating_sub(1))
            .map(|k| self.differential_block(&gens[k], gens[k + 1].len(), parity))
            .collect();
        GradedComplex { q, i_min: lo, gens, d }
    }

    fn differential_block(&self, sources: &[usize], rows: usize, parity: Parity) -> IntMatrix {
        let columns = sources
            .iter()
            .map(|&gid| {
                let (u, mask) = self.generator(gid);
                let mut col = Vec::new();
                for j in 0..self.n_crossings() {
                    let Some(e) = self.edge(u, j) else { continue };
                    let v = u | 1 << j;
                    let base = match parity {
                        Parity::Even => edge_sign(u, j),
                        Parity::Odd => edge_sign(u, j) ^ self.epsilon(u, j),
                    };
                    let images = match parity {
                        Parity::Even => e.even_images(mask),
                        Parity::Odd => e.odd_images(mask),
                    };
                    for &(m, c) in images.as_slice() {
                        let value = if base == 1 { -(c as i64) } else { c as i64 };
                        col.push((self.local_index(self.gid(v, m)) as u32, value));
                    }
                }
                col
            })
            .collect();
        IntMatrix::from_columns(rows, columns)
    }

    /// Integral Khovanov homology, keyed by `(i, j)`; zero groups omitted.
    pub fn homology_z(&self, parity: Parity) -> Result<BTreeMap<(i32, i32), AbelianGroup>, CubeError> {
        let mut out = BTreeMap::new();
        for q in self.quantum_gradings() {
            let c = self.complex(q, parity);
            for (k, h) in c.integral_cohomology()?.into_iter().enumerate() {
                if !h.is_zero() {
                    out.insert((c.i_min + k as i32, q), h);
                }
            }
        }
        Ok(out)
    }

    /// Dimensions of Khovanov homology over F2, keyed by `(i, j)`.
    pub fn homology_f2(&self) -> Result<BTreeMap<(i32, i32), usize>, CubeError> {
        let mut out = BTreeMap::new();
        for q in self.quantum_gradings() {
            let c = self.complex(q, Parity::Even);
            for i in c.i_min..=c.i_max() {
                let dim = c.f2_cohomology(i)?.dim();
                if dim > 0 {
                    out.insert((i, q), dim);
                }
            }
        }
        Ok(out)
    }
}
