use std::collections::{BTreeMap, HashMap};

use khsq_cube::{Arrow, Cube};

use crate::interval::{interval_partner, Chain};
use crate::matching::Matching;
use crate::ModuliError;

/// Which matched edges of the boundary graph carry a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMode {
    /// Every ordered pair gives a directed edge.
    Paper,
    /// Only ordered pairs of equal cubical sign give directed edges.
    Schutz,
}

/// A vertex `(p, q)` of the boundary graph, i.e. a chain `x -> y -> z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaVertex {
    pub chain: Chain,
}

impl GammaVertex {
    pub fn new(x: usize, p: Arrow, q: Arrow) -> GammaVertex {
        GammaVertex { chain: Chain { x, p, q } }
    }

    /// `S(p) + S(q)`.
    pub fn big_s(&self) -> u8 {
        self.chain.big_s()
    }

    /// The facet label `S_Z(q)`.
    pub fn s_z(&self) -> u32 {
        self.chain.q.s_z
    }

    /// The odd sign `σ(q)`.
    pub fn sigma2(&self) -> u8 {
        self.chain.q.sigma
    }

    pub fn sigma_p(&self) -> u8 {
        self.chain.p.sigma
    }
}

/// The graph on the broken chains from a cocycle to a generator `z`. Every
/// vertex has one interval edge and one matched edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryGraph {
    pub z: usize,
    pub vertices: Vec<GammaVertex>,
    /// The other endpoint of the interval through each vertex.
    pub interval: Vec<usize>,
    /// The other point of the matched pair, with the same `q`.
    pub matched: Vec<usize>,
    /// For directed matched edges, whether the vertex is the tail.
    pub tail: Vec<Option<bool>>,
}

impl BoundaryGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks that both edge sets are fixed-point-free involutions and the
    /// directions are consistent.
    pub fn is_well_formed(&self) -> bool {
        let n = self.len();
        let involution = |e: &[usize]| {
            e.len() == n && (0..n).all(|v| e[v] < n && e[v] != v && e[e[v]] == v)
        };
        involution(&self.interval)
            && involution(&self.matched)
            && self.tail.len() == n
            && (0..n).all(|v| match (self.tail[v], self.tail[self.matched[v]]) {
                (None, None) => true,
                (Some(a), Some(b)) => a != b,
                _ => false,
            })
    }

    /// The cycles of the graph. Each cycle is listed as
    /// `[v1, v1', v2, v2', ...]` where `(v_k, v_k')` are matched edges and
    /// `(v_k', v_{k+1})` are interval edges.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            loop {
                let w = self.matched[v];
                seen[v] = true;
                seen[w] = true;
                cycle.push(v);
                cycle.push(w);
                v = self.interval[w];
                if v == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }
}

/// Builds the boundary graph for every `z` reached from the matched cocycle.
pub fn build_gammas(
    cube: &Cube,
    matching: &Matching,
    mode: GammaMode,
) -> Result<BTreeMap<usize, BoundaryGraph>, ModuliError> {
    let mut graphs: BTreeMap<usize, BoundaryGraph> = BTreeMap::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (&y, pairs) in matching.pairs() {
        for q in cube.arrows(y) {
            let g = graphs.entry(q.target).or_insert_with(|| BoundaryGraph {
                z: q.target,
                vertices: Vec::new(),
                interval: Vec::new(),
                matched: Vec::new(),
                tail: Vec::new(),
            });
            for pair in pairs {
                let directed = pair.ordered
                    && (mode == GammaMode::Paper
                        || pair.first.arrow.big_s() == pair.second.arrow.big_s());
                let a = g.vertices.len();
                g.vertices.push(GammaVertex::new(pair.first.source, pair.first.arrow, q));
                g.vertices.push(GammaVertex::new(pair.second.source, pair.second.arrow, q));
                g.matched.extend([a + 1, a]);
                g.tail.extend(if directed { [Some(true), Some(false)] } else { [None, None] });
                index.insert((q.target, pair.first.source, y), a);
                index.insert((q.target, pair.second.source, y), a + 1);
            }
        }
    }
    for g in graphs.values_mut() {
        g.interval = Vec::with_capacity(g.vertices.len());
        for v in &g.vertices {
            let other = interval_partner(cube, &v.chain)?;
            let w = index.get(&(g.z, other.x, other.y())).ok_or_else(|| {
                ModuliError::BadInterval {
                    x: other.x,
                    z: g.z,
                    why: "interval endpoint outside the boundary graph".to_string(),
                }
            })?;
            g.interval.push(*w);
        }
    }
    Ok(graphs)
}
