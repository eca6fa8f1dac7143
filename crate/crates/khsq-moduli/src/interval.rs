use khsq_cube::{Arrow, Cube};

use crate::ModuliError;

/// A broken flow line `x -> y -> z`: `p ∈ M(y, x)` followed by `q ∈ M(z, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chain {
    pub x: usize,
    pub p: Arrow,
    pub q: Arrow,
}

impl Chain {
    pub fn y(&self) -> usize {
        self.p.target
    }

    pub fn z(&self) -> usize {
        self.q.target
    }

    /// `S(p) + S(q)` modulo two.
    pub fn big_s(&self) -> u8 {
        self.p.big_s() ^ self.q.big_s()
    }
}

/// Chains from `x` to `z` whose first arrow changes the given crossing.
fn chains_via(cube: &Cube, x: usize, z: usize, crossing: u8) -> Vec<Chain> {
    let mut out = Vec::new();
    for p in cube.arrows(x).into_iter().filter(|p| p.crossing == crossing) {
        for q in cube.arrows(p.target) {
            if q.target == z {
                out.push(Chain { x, p, q });
            }
        }
    }
    out
}

/// The other endpoint of the interval of `M(z, x)` that ends at `chain`.
pub fn interval_partner(cube: &Cube, chain: &Chain) -> Result<Chain, ModuliError> {
    let (x, z) = (chain.x, chain.z());
    let bad = |why: &str| ModuliError::BadInterval { x, z, why: why.to_string() };
    let (i, j) = (chain.p.crossing, chain.q.crossing);
    let same = chains_via(cube, x, z, i);
    let other = chains_via(cube, x, z, j);
    match (same.len(), other.len()) {
        (1, 1) => Ok(other[0]),
        (2, 2) => {
            let (w, _) = cube.generator(x);
            let pairing = cube
                .ladybug_pairing(w, i as usize, j as usize)
                .ok_or_else(|| bad("two chains on each side of a face that is not a ladybug"))?;
            let circle = |c: u8| if c == i.min(j) { pairing[0] } else { pairing[1] };
            let flagged = |ch: &Chain, dir: u8| cube.generator(ch.y()).1 >> circle(dir) & 1 == 1;
            let flag = flagged(chain, i);
            let mut partners = other.iter().filter(|ch| flagged(ch, j) == flag);
            match (partners.next(), partners.next()) {
                (Some(p), None) => Ok(*p),
                _ => Err(bad("ladybug pairing does not separate the chains")),
            }
        }
        _ => Err(bad("unexpected number of chains")),
    }
}

/// All intervals of `M(z, x)`, each as a pair of its endpoints.
pub fn interval_pairs(cube: &Cube, x: usize, z: usize) -> Result<Vec<(Chain, Chain)>, ModuliError> {
    let (u, _) = cube.generator(x);
    let (v, _) = cube.generator(z);
    let diff = v & !u;
    if u & !v != 0 || diff.count_ones() != 2 {
        return Ok(Vec::new());
    }
    let low = diff.trailing_zeros() as u8;
    let mut out = Vec::new();
    for chain in chains_via(cube, x, z, low) {
        out.push((chain, interval_partner(cube, &chain)?));
    }
    Ok(out)
}

/// Checks `S(p) + S(q) + S(p') + S(q') = 1` on every interval of `M(z, x)`.
pub fn check_interval_signs(cube: &Cube, x: usize, z: usize) -> Result<(), ModuliError> {
    for (a, b) in interval_pairs(cube, x, z)? {
        if a.big_s() ^ b.big_s() != 1 {
            return Err(ModuliError::SignCriterion { x, z });
        }
    }
    Ok(())
}
