use khsq_moduli::{BoundaryGraph, Chain};

use crate::SteenrodError;

/// The facet cycle of a cycle in a boundary graph, read in one traversal
/// direction. Entry `k` describes the `k`-th matched edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetCycle {
    /// The facet label `S_Z(q)`.
    pub labels: Vec<u32>,
    /// The sign `σ(q)`.
    pub omegas: Vec<u8>,
    /// `Some(true)` if the edge is directed along the traversal,
    /// `Some(false)` if against it, `None` if undirected.
    pub orient: Vec<Option<bool>>,
    /// Whether both endpoints have the same cubical sign `S`.
    pub s_equal: Vec<bool>,
    /// The number of interval edges of the cycle whose four odd signs
    /// alternate around the square.
    pub alternating: u32,
}

impl FacetCycle {
    /// Reads a cycle listed as `[v1, v1', v2, v2', ...]`.
    pub fn from_cycle(g: &BoundaryGraph, cycle: &[usize]) -> FacetCycle {
        let mut fc = FacetCycle {
            labels: Vec::new(),
            omegas: Vec::new(),
            orient: Vec::new(),
            s_equal: Vec::new(),
            alternating: 0,
        };
        let r = cycle.len();
        for k in (1..r).step_by(2) {
            let (a, b) = (&g.vertices[cycle[k]].chain, &g.vertices[cycle[(k + 1) % r]].chain);
            if alternating_signs(a, b) {
                fc.alternating += 1;
            }
        }
        for e in cycle.chunks(2) {
            let (v, w) = (&g.vertices[e[0]], &g.vertices[e[1]]);
            fc.labels.push(v.s_z());
            fc.omegas.push(v.sigma2());
            fc.orient.push(g.tail[e[0]]);
            fc.s_equal.push(v.big_s() == w.big_s());
        }
        fc
    }

    /// An unsigned, undirected cycle with the given labels.
    pub fn unsigned(labels: &[u32]) -> FacetCycle {
        let r = labels.len();
        FacetCycle {
            labels: labels.to_vec(),
            omegas: vec![0; r],
            orient: vec![None; r],
            s_equal: vec![false; r],
            alternating: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The same cycle traversed the other way.
    pub fn reversed(&self) -> FacetCycle {
        fn rev<T: Copy>(v: &[T]) -> Vec<T> {
            v.iter().rev().copied().collect()
        }
        FacetCycle {
            labels: rev(&self.labels),
            omegas: rev(&self.omegas),
            orient: self.orient.iter().rev().map(|o| o.map(|f| !f)).collect(),
            s_equal: rev(&self.s_equal),
            alternating: self.alternating,
        }
    }

    fn at(&self, k: isize) -> u32 {
        self.labels[k.rem_euclid(self.len() as isize) as usize]
    }
}

/// `a_b`: `a` if `a < b`, otherwise `a - 1`.
pub fn reduced(a: u32, b: u32) -> u32 {
    if a < b {
        a
    } else {
        a - 1
    }
}

fn median(a: u32, b: u32, c: u32) -> u32 {
    a.max(b).min(a.min(b).max(c))
}

fn between(b: u32, a: u32, c: u32) -> bool {
    a.min(c) < b && b < a.max(c)
}

/// The unsigned part of the facet cycle value, reduced mod 2.
pub fn q_unsigned(fc: &FacetCycle) -> Result<u8, SteenrodError> {
    let r = fc.len() as isize;
    let mut total: u64 = 1;
    let mut switchbacks = 0u64;
    for k in 0..r {
        let (a, b, c) = (fc.at(k - 1), fc.at(k), fc.at(k + 1));
        total += (b * c) as u64 + b as u64 + b.max(c) as u64 + median(a, b, c) as u64;
        if !between(b, a, c) {
            switchbacks += 1;
        }
        if b.min(c) < a && a <= b.max(c) {
            total += 1;
        }
        if a == c && fc.orient[k as usize] == Some(false) {
            total += 1;
        }
    }
    if switchbacks % 2 == 1 {
        return Err(SteenrodError::OddSwitchbacks);
    }
    Ok(((total + switchbacks / 2) % 2) as u8)
}

/// The signed vertex terms of the facet cycle value.
pub fn q_signs(fc: &FacetCycle) -> u8 {
    let r = fc.len();
    let mut total = 0u32;
    for k in 0..r {
        let n = (k + 1) % r;
        let (a, b) = (fc.labels[k], fc.labels[n]);
        total += reduced(a, b) * fc.omegas[n] as u32 + reduced(b, a) * fc.omegas[k] as u32;
        total += fc.omegas[k] as u32;
    }
    (total % 2) as u8
}

/// Whether the interval with endpoints `first` and `second` has odd signs
/// that alternate around its square: the two lower edges differ, and each
/// upper edge carries the sign of the lower edge opposite to it.
pub fn alternating_signs(first: &Chain, second: &Chain) -> bool {
    first.p.sigma != second.p.sigma
        && first.p.sigma == second.q.sigma
        && second.p.sigma == first.q.sigma
}

/// The value of a facet cycle for the `l`-signed realization.
pub fn q_value(fc: &FacetCycle, l: u32) -> Result<u8, SteenrodError> {
    let mut v = q_unsigned(fc)?;
    if l % 2 == 1 {
        v ^= q_signs(fc);
    }
    if (l / 2) % 2 == 1 {
        v ^= (fc.alternating % 2) as u8;
    }
    Ok(v)
}
