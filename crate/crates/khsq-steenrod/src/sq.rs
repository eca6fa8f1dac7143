use std::collections::{BTreeMap, BTreeSet};

use khsq_algebra::{bockstein, F2Cohomology, F2Matrix, F2Vec};
use khsq_cube::{Cube, GradedComplex, Parity};
use khsq_moduli::{build_gammas, interval_pairs, GammaMode, Matching};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::facet::{q_value, FacetCycle};
use crate::schutz::schutz_value;
use crate::SteenrodError;

/// An F2 cochain, as the set of generator ids in its support.
pub type Cochain = BTreeSet<usize>;

fn toggle(c: &mut Cochain, g: usize) {
    if !c.remove(&g) {
        c.insert(g);
    }
}

/// A formula for a second Steenrod square cochain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sq2Formula {
    /// Facet cycle values for the `l`-signed realization.
    Facet { l: u32 },
    /// Frame and direction counts with frame assignment `f_ε`.
    Schutz { eps: u8 },
}

/// How boundary matchings are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingChoice {
    Canonical,
    Random(u64),
}

impl MatchingChoice {
    pub fn build(&self, cube: &Cube, mu: &[usize]) -> Result<Matching, SteenrodError> {
        Ok(match self {
            MatchingChoice::Canonical => Matching::canonical(cube, mu)?,
            MatchingChoice::Random(seed) => {
                let salt = mu.iter().fold(*seed, |h, &g| h.rotate_left(7) ^ g as u64);
                Matching::random(cube, mu, &mut ChaCha8Rng::seed_from_u64(salt))?
            }
        })
    }
}

/// The mod 2 coboundary of a cochain.
pub fn coboundary(cube: &Cube, c: &Cochain) -> Cochain {
    let mut out = Cochain::new();
    for &x in c {
        for a in cube.arrows(x) {
            toggle(&mut out, a.target);
        }
    }
    out
}

/// The second Steenrod square cochain of a cocycle, for a facewise
/// boundary matching of it.
pub fn sq2_cochain(cube: &Cube, matching: &Matching, formula: Sq2Formula) -> Result<Cochain, SteenrodError> {
    let mode = match formula {
        Sq2Formula::Facet { .. } => GammaMode::Paper,
        Sq2Formula::Schutz { .. } => GammaMode::Schutz,
    };
    let mut out = Cochain::new();
    for (z, g) in build_gammas(cube, matching, mode)? {
        let mut v = 0u8;
        for cycle in g.cycles() {
            v ^= match formula {
                Sq2Formula::Facet { l } => q_value(&FacetCycle::from_cycle(&g, &cycle), l)?,
                Sq2Formula::Schutz { eps } => schutz_value(cube, &g, &cycle, eps),
            };
        }
        if v == 1 {
            out.insert(z);
        }
    }
    Ok(out)
}

/// The cochain map `L`: each interval of `M(z, x)` contributes the larger
/// facet label of its endpoints.
pub fn interval_max_map(cube: &Cube, c: &Cochain) -> Result<Cochain, SteenrodError> {
    let mut out = Cochain::new();
    for &x in c {
        let mut targets = BTreeSet::new();
        for a in cube.arrows(x) {
            targets.extend(cube.arrows(a.target).iter().map(|b| b.target));
        }
        for z in targets {
            let mut v = 0u32;
            for (e, f) in interval_pairs(cube, x, z)? {
                v += e.q.s_z.max(f.q.s_z);
            }
            if v % 2 == 1 {
                toggle(&mut out, z);
            }
        }
    }
    Ok(out)
}

/// The homotopy `H` with `dH + Hd = L`.
pub fn interval_homotopy(cube: &Cube, c: &Cochain) -> Cochain {
    let mut out = Cochain::new();
    for &x in c {
        for a in cube.arrows(x) {
            if (a.s_z * (a.s_z + 1) / 2) % 2 == 1 {
                toggle(&mut out, a.target);
            }
        }
    }
    out
}

/// The cochain supported on those `y` where the odd signs of the second
/// points of ordered pairs sum to one.
pub fn second_point_signs(matching: &Matching) -> Cochain {
    let mut out = Cochain::new();
    for (&y, pairs) in matching.pairs() {
        let v = pairs.iter().filter(|p| p.ordered).fold(0, |v, p| v ^ p.second.arrow.sigma);
        if v == 1 {
            out.insert(y);
        }
    }
    out
}

/// An explicit primitive for the difference between the facet formula with
/// `l = 1` and the frame formula with `ε = 1`, for the same facewise
/// matching of a cocycle.
pub fn odd_difference_primitive(cube: &Cube, mu: &Cochain, matching: &Matching) -> Cochain {
    let mut out = interval_homotopy(cube, mu);
    for y in second_point_signs(matching) {
        toggle(&mut out, y);
    }
    out
}

/// Cohomology of the mod 2 complex in bidegree `(i, j)`, with the generator
/// list for that degree.
pub struct CohomologySlot {
    pub gens: Vec<usize>,
    pub cohomology: F2Cohomology,
}

impl CohomologySlot {
    pub fn new(complex: &GradedComplex, i: i32) -> Result<CohomologySlot, SteenrodError> {
        let gens = if i >= complex.i_min && i <= complex.i_max() {
            complex.gens[(i - complex.i_min) as usize].clone()
        } else {
            Vec::new()
        };
        Ok(CohomologySlot { gens, cohomology: complex.f2_cohomology(i)? })
    }

    pub fn dim(&self) -> usize {
        self.cohomology.dim()
    }

    pub fn to_cochain(&self, v: &F2Vec) -> Cochain {
        v.ones().map(|k| self.gens[k]).collect()
    }

    pub fn to_vec(&self, cube: &Cube, c: &Cochain) -> F2Vec {
        let mut v = F2Vec::with_capacity(self.gens.len());
        for &g in c {
            v.insert(cube.local_index(g));
        }
        v
    }

    /// Coordinates of a cocycle in the cohomology basis.
    pub fn coords(&self, cube: &Cube, c: &Cochain) -> Result<F2Vec, SteenrodError> {
        Ok(self.cohomology.coords(&self.to_vec(cube, c))?)
    }
}

/// The even and odd complexes of one quantum grading, with F2 cohomology
/// bases in every degree. Both complexes have the same reduction mod 2, so
/// one set of bases serves both.
pub struct Grading {
    pub j: i32,
    even: GradedComplex,
    odd: GradedComplex,
    slots: BTreeMap<i32, CohomologySlot>,
    empty: CohomologySlot,
}

impl Grading {
    pub fn new(cube: &Cube, j: i32) -> Result<Grading, SteenrodError> {
        let even = cube.complex(j, Parity::Even);
        let odd = cube.complex(j, Parity::Odd);
        let mut slots = BTreeMap::new();
        for i in even.i_min - 2..=even.i_max() + 2 {
            slots.insert(i, CohomologySlot::new(&even, i)?);
        }
        let empty = CohomologySlot::new(&even, even.i_max() + 3)?;
        Ok(Grading { j, even, odd, slots, empty })
    }

    pub fn complex(&self, parity: Parity) -> &GradedComplex {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// The degrees with a cohomology slot, which include every degree where
    /// cohomology can be nonzero.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.slots.keys().copied()
    }

    pub fn slot(&self, i: i32) -> &CohomologySlot {
        self.slots.get(&i).unwrap_or(&self.empty)
    }

    /// Dimension of F2 cohomology in degree `i`.
    pub fn dim(&self, i: i32) -> usize {
        self.slots.get(&i).map_or(0, CohomologySlot::dim)
    }

    /// The matrix of `Sq^2 : H^{i,j} -> H^{i+2,j}` in the standard bases.
    pub fn sq2(&self, cube: &Cube, i: i32, formula: Sq2Formula, choice: MatchingChoice) -> Result<F2Matrix, SteenrodError> {
        let (src, dst) = (self.slot(i), self.slot(i + 2));
        let mut columns = Vec::with_capacity(src.dim());
        for rep in src.cohomology.representatives() {
            if dst.dim() == 0 {
                columns.push(Vec::new());
                continue;
            }
            let mu = src.to_cochain(rep);
            let support: Vec<usize> = mu.iter().copied().collect();
            let matching = choice.build(cube, &support)?;
            let image = sq2_cochain(cube, &matching, formula)?;
            columns.push(dst.coords(cube, &image)?.ones().map(|k| k as u32).collect());
        }
        Ok(F2Matrix::from_columns(dst.dim(), columns))
    }

    /// The matrix of the Bockstein `Sq^1 : H^{i,j} -> H^{i+1,j}` of the
    /// integral complex of the given parity.
    pub fn sq1(&self, i: i32, parity: Parity) -> Result<F2Matrix, SteenrodError> {
        let (src, dst) = (self.slot(i), self.slot(i + 1));
        let d = self.complex(parity).differential(i);
        let mut columns = Vec::with_capacity(src.dim());
        for rep in src.cohomology.representatives() {
            let image = bockstein(&d, rep)?;
            columns.push(dst.cohomology.coords(&image)?.ones().map(|k| k as u32).collect());
        }
        Ok(F2Matrix::from_columns(dst.dim(), columns))
    }
}

/// The matrix of `Sq^2 : H^{i,j} -> H^{i+2,j}` in the standard bases.
pub fn sq2_matrix(
    cube: &Cube,
    i: i32,
    j: i32,
    formula: Sq2Formula,
    choice: MatchingChoice,
) -> Result<F2Matrix, SteenrodError> {
    Grading::new(cube, j)?.sq2(cube, i, formula, choice)
}

/// The matrix of the Bockstein `Sq^1 : H^{i,j} -> H^{i+1,j}` of the integral
/// complex of the given parity.
pub fn sq1_matrix(cube: &Cube, i: i32, j: i32, parity: Parity) -> Result<F2Matrix, SteenrodError> {
    Grading::new(cube, j)?.sq1(i, parity)
}
