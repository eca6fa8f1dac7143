use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::f2::{F2Matrix, F2Vec};
use crate::int::{bigint_to_u64, lift_01, IntInvariants, IntMatrix};
use crate::AlgebraError;

/// A finitely generated abelian group `Z^free ⊕ ⊕ Z/torsion[k]`, with
/// torsion split into prime powers and sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands of order a power of two.
    pub fn two_torsion_summands(&self) -> usize {
        self.torsion.iter().filter(|&&t| t % 2 == 0).count()
    }

    /// Whether every torsion summand has order exactly two.
    pub fn only_order_two_torsion(&self) -> bool {
        self.torsion.iter().all(|&t| t == 2)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free > 0 {
            parts.push(if self.free == 1 { "Z".to_string() } else { format!("Z^{}", self.free) });
        }
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &t in &self.torsion {
            *counts.entry(t).or_default() += 1;
        }
        for (t, k) in counts {
            parts.push(if k == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{k}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Splits an integer greater than one into prime power factors.
pub fn prime_power_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn torsion_of(inv: &IntInvariants) -> Result<Vec<u64>, AlgebraError> {
    let mut out = Vec::new();
    for f in &inv.factors {
        let n = bigint_to_u64(f).ok_or_else(|| AlgebraError::TorsionTooLarge(f.to_string()))?;
        out.extend(prime_power_factors(n));
    }
    out.sort_unstable();
    Ok(out)
}

/// Cohomology `ker d_in_out / im d_into` of a cochain group of dimension
/// `dim`, given the invariants of the incoming and outgoing differentials.
pub fn cohomology_group(
    dim: usize,
    into: &IntInvariants,
    out_of: &IntInvariants,
) -> Result<AbelianGroup, AlgebraError> {
    let free = dim
        .checked_sub(into.rank + out_of.rank)
        .ok_or(AlgebraError::NotAComplex)?;
    Ok(AbelianGroup { free, torsion: torsion_of(into)? })
}

/// Integral cohomology of a cochain complex `C^0 -> C^1 -> ... -> C^{n-1}`
/// given by its differentials `d[k]: C^k -> C^{k+1}`, `k < n - 1`.
pub fn complex_cohomology_z(dims: &[usize], d: &[IntMatrix]) -> Result<Vec<AbelianGroup>, AlgebraError> {
    check_shapes(dims, d.iter().map(|m| (m.rows(), m.cols())))?;
    let invs: Vec<IntInvariants> = d.iter().map(IntMatrix::invariants).collect();
    let empty = IntInvariants { rank: 0, factors: Vec::<BigInt>::new() };
    (0..dims.len())
        .map(|k| {
            let into = if k == 0 { &empty } else { &invs[k - 1] };
            let out_of = invs.get(k).unwrap_or(&empty);
            cohomology_group(dims[k], into, out_of)
        })
        .collect()
}

fn check_shapes(
    dims: &[usize],
    shapes: impl Iterator<Item = (usize, usize)>,
) -> Result<(), AlgebraError> {
    for (k, (rows, cols)) in shapes.enumerate() {
        if cols != dims[k] {
            return Err(AlgebraError::DimensionMismatch { expected: dims[k], found: cols });
        }
        let next = dims.get(k + 1).copied().unwrap_or(0);
        if rows != next {
            return Err(AlgebraError::DimensionMismatch { expected: next, found: rows });
        }
    }
    Ok(())
}

/// F2 dimension predicted by universal coefficients from `H^k` and `H^{k+1}`.
pub fn universal_coefficients_f2(h: &AbelianGroup, h_next: &AbelianGroup) -> usize {
    h.free + h.two_torsion_summands() + h_next.two_torsion_summands()
}

/// A basis of `H^k(C; F2)` together with coordinates for cocycles.
#[derive(Debug, Clone)]
pub struct F2Cohomology {
    dim: usize,
    representatives: Vec<F2Vec>,
    echelon: crate::f2::Echelon,
    outgoing: F2Matrix,
    tag_to_gen: Vec<Option<usize>>,
}

impl F2Cohomology {
    /// `into: C^{k-1} -> C^k` and `out_of: C^k -> C^{k+1}`.
    pub fn new(into: &F2Matrix, out_of: &F2Matrix) -> Result<Self, AlgebraError> {
        let dim = out_of.cols();
        if into.rows() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: into.rows() });
        }
        let kernel = crate::f2::f2_kernel_basis(out_of);
        let mut echelon = crate::f2::Echelon::new(dim, kernel.len());
        for j in 0..into.cols() {
            echelon.insert(into.column_vec(j), F2Vec::with_capacity(kernel.len()));
        }
        let mut representatives = Vec::new();
        let mut tag_to_gen = vec![None; kernel.len()];
        for (t, z) in kernel.iter().enumerate() {
            let tag = crate::f2::f2_from_indices(kernel.len(), [t]);
            if echelon.insert(z.clone(), tag).is_none() {
                tag_to_gen[t] = Some(representatives.len());
                representatives.push(z.clone());
            }
        }
        let c = F2Cohomology { dim, representatives, echelon, outgoing: out_of.clone(), tag_to_gen };
        for j in 0..into.cols() {
            if !c.is_cocycle(&into.column_vec(j)) {
                return Err(AlgebraError::NotAComplex);
            }
        }
        Ok(c)
    }

    pub fn cochain_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Cocycle representatives of the basis classes.
    pub fn representatives(&self) -> &[F2Vec] {
        &self.representatives
    }

    pub fn is_cocycle(&self, v: &F2Vec) -> bool {
        self.outgoing.apply(v).map(|w| w.is_clear()).unwrap_or(false)
    }

    /// Coordinates of the class of a cocycle in the chosen basis.
    pub fn coords(&self, v: &F2Vec) -> Result<F2Vec, AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if !self.is_cocycle(v) {
            return Err(AlgebraError::NotACocycle);
        }
        let mut w = v.clone();
        let mut tag = F2Vec::with_capacity(self.tag_to_gen.len());
        self.echelon.reduce(&mut w, &mut tag);
        debug_assert!(w.is_clear());
        let mut out = F2Vec::with_capacity(self.representatives.len());
        for t in tag.ones() {
            let g = self.tag_to_gen[t].expect("tags only name basis classes");
            out.insert(g);
        }
        Ok(out)
    }

    pub fn is_coboundary(&self, v: &F2Vec) -> Result<bool, AlgebraError> {
        Ok(self.coords(v)?.is_clear())
    }
}

/// The mod 2 Bockstein of a cocycle `v` of `d mod 2`: lift to a 0/1 integral
/// cochain, apply `d`, divide by two and reduce.
pub fn bockstein(d: &IntMatrix, v: &F2Vec) -> Result<F2Vec, AlgebraError> {
    let image = d.apply(&lift_01(v))?;
    let mut out = F2Vec::with_capacity(d.rows());
    for (i, x) in image.into_iter().enumerate() {
        if x % 2 != 0 {
            return Err(AlgebraError::NotACocycle);
        }
        if (x / 2) % 2 != 0 {
            out.insert(i);
        }
    }
    Ok(out)
}
