use std::collections::{BTreeMap, HashMap};

use khsq_cube::{Arrow, Cube};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::ModuliError;

/// A zero-dimensional moduli point `p ∈ M(y, x)` with `x = source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliPoint {
    pub source: usize,
    pub arrow: Arrow,
}

impl ModuliPoint {
    pub fn target(&self) -> usize {
        self.arrow.target
    }
}

/// Two matched boundary points of the same target. When `ordered` is set the
/// pair is ordered as `(first, second)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchedPair {
    pub first: ModuliPoint,
    pub second: ModuliPoint,
    pub ordered: bool,
}

/// The points `M(y, μ)` grouped by target `y`, for a cochain given by
/// generator ids.
pub fn boundary_points(cube: &Cube, mu: &[usize]) -> BTreeMap<usize, Vec<ModuliPoint>> {
    let mut out: BTreeMap<usize, Vec<ModuliPoint>> = BTreeMap::new();
    for &x in mu {
        for arrow in cube.arrows(x) {
            out.entry(arrow.target).or_default().push(ModuliPoint { source: x, arrow });
        }
    }
    out
}

/// A boundary matching for a cocycle: for every `y`, a perfect matching of
/// `M(y, μ)` with some pairs ordered.
#[derive(Debug, Clone, Default)]
pub struct Matching {
    pairs: BTreeMap<usize, Vec<MatchedPair>>,
    lookup: HashMap<(usize, usize), (usize, bool)>,
}

impl Matching {
    /// Builds a matching from explicit pairs, keyed by target.
    pub fn from_pairs(pairs: BTreeMap<usize, Vec<MatchedPair>>) -> Matching {
        let mut lookup = HashMap::new();
        for (&y, list) in &pairs {
            for (k, pair) in list.iter().enumerate() {
                lookup.insert((y, pair.first.source), (k, true));
                lookup.insert((y, pair.second.source), (k, false));
            }
        }
        Matching { pairs, lookup }
    }

    /// The deterministic facewise matching: points of each `M(y, μ)` are
    /// sorted by `(s_Z, source)` and consecutive points are paired in order.
    pub fn canonical(cube: &Cube, mu: &[usize]) -> Result<Matching, ModuliError> {
        let mut pairs = BTreeMap::new();
        for (y, mut points) in boundary_points(cube, mu) {
            if points.len() % 2 == 1 {
                return Err(ModuliError::OddBoundary { y });
            }
            points.sort_by_key(|p| (p.arrow.s_z, p.source));
            let list = points
                .chunks(2)
                .map(|c| MatchedPair { first: c[0], second: c[1], ordered: true })
                .collect();
            pairs.insert(y, list);
        }
        Ok(Matching::from_pairs(pairs))
    }

    /// A random facewise matching: each `M(y, μ)` is matched uniformly and
    /// each pair is ordered by `s_Z`, with ties broken at random.
    pub fn random<R: Rng>(cube: &Cube, mu: &[usize], rng: &mut R) -> Result<Matching, ModuliError> {
        let mut pairs = BTreeMap::new();
        for (y, mut points) in boundary_points(cube, mu) {
            if points.len() % 2 == 1 {
                return Err(ModuliError::OddBoundary { y });
            }
            points.shuffle(rng);
            let list = points
                .chunks(2)
                .map(|c| {
                    let swap = match c[0].arrow.s_z.cmp(&c[1].arrow.s_z) {
                        std::cmp::Ordering::Less => false,
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Equal => rng.gen(),
                    };
                    let (first, second) = if swap { (c[1], c[0]) } else { (c[0], c[1]) };
                    MatchedPair { first, second, ordered: true }
                })
                .collect();
            pairs.insert(y, list);
        }
        Ok(Matching::from_pairs(pairs))
    }

    /// The signwise matching with the same pairs: a pair stays ordered only
    /// if its two points have equal cubical sign `S`.
    pub fn signwise(&self) -> Matching {
        let pairs = self
            .pairs
            .iter()
            .map(|(&y, list)| {
                let list = list
                    .iter()
                    .map(|p| MatchedPair {
                        ordered: p.ordered && p.first.arrow.big_s() == p.second.arrow.big_s(),
                        ..*p
                    })
                    .collect();
                (y, list)
            })
            .collect();
        Matching::from_pairs(pairs)
    }

    pub fn pairs(&self) -> &BTreeMap<usize, Vec<MatchedPair>> {
        &self.pairs
    }

    /// The pair containing the point of `M(y, x)`, and whether that point
    /// comes first.
    pub fn pair_of(&self, y: usize, x: usize) -> Option<(&MatchedPair, bool)> {
        let &(k, first) = self.lookup.get(&(y, x))?;
        Some((&self.pairs[&y][k], first))
    }

    /// Whether every ordered pair respects `s_Z(first) <= s_Z(second)`.
    pub fn respects_index_order(&self) -> bool {
        self.pairs
            .values()
            .flatten()
            .all(|p| !p.ordered || p.first.arrow.s_z <= p.second.arrow.s_z)
    }
}
