use std::collections::BTreeMap;
use std::fmt;

use clap::ValueEnum;
use khsq_cube::{Cube, Parity};
use khsq_link::{braid_closure, render_pd, LinkDiagram};
use khsq_moduli::{build_gammas, check_interval_signs, GammaMode, ModuliError};
use khsq_steenrod::{
    coboundary, interval_homotopy, interval_max_map, odd_difference_primitive, q_value, sq2_cochain, Cochain,
    FacetCycle, Grading, MatchingChoice, Sq2Formula,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::CliError;

/// A family of invariant checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    /// `d² = 0` over Z and F2 in both parities, and equal mod 2 reductions.
    DSquared,
    /// The sign criterion on every interval of every 2-dimensional face.
    Intervals,
    /// `Sq¹ ∘ Sq¹ = 0` on cohomology in both parities.
    Sq1Sq1,
    /// Every `Sq²` cochain of a cocycle is a cocycle.
    Cocycle,
    /// The class of `Sq²` does not depend on the boundary matching.
    Matching,
    /// The class of `Sq²` does not depend on the cocycle representative.
    Representative,
    /// Facet cycle values do not depend on the traversal direction.
    Orientation,
    /// Facet cycle values and cochains have period four in `l`.
    Period,
    /// The four realizations `l = 0..3` sum to zero on cohomology.
    Sum4,
    /// The facet and frame formulas agree on cohomology, with an explicit
    /// primitive for the odd case.
    Oracle,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        Suite::value_variants().to_vec()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        write!(f, "{}", name.get_name())
    }
}

/// A diagram to test, with a label for reports.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub diagram: LinkDiagram,
}

/// Closures of random braid words with 2 to 4 strands and at most
/// `max_crossings` letters.
pub fn random_corpus(seed: u64, count: usize, max_crossings: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let strands = rng.gen_range(2..=4usize);
            let len = rng.gen_range(2..=max_crossings.max(2));
            let word: Vec<i32> = (0..len)
                .map(|_| {
                    let i = rng.gen_range(1..strands as i32);
                    if rng.gen_bool(0.5) {
                        i
                    } else {
                        -i
                    }
                })
                .collect();
            let letters: Vec<String> = word.iter().map(i32::to_string).collect();
            Instance { label: format!("braid {strands}: {}", letters.join(" ")), diagram: braid_closure(strands, &word) }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub cocycles_per_diagram: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, suites: Suite::all(), cocycles_per_diagram: 6 }
    }
}

/// Pass counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub diagrams: usize,
    pub cocycles: usize,
    pub checks: BTreeMap<Suite, usize>,
}

impl SuiteReport {
    fn absorb(&mut self, other: SuiteReport) {
        self.diagrams += other.diagrams;
        self.cocycles += other.cocycles;
        for (s, n) in other.checks {
            *self.checks.entry(s).or_insert(0) += n;
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} diagrams, {} cocycles", self.diagrams, self.cocycles)?;
        for (s, n) in &self.checks {
            writeln!(f, "{s}: {n} checks passed")?;
        }
        Ok(())
    }
}

/// A failed check, with what is needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteFailure {
    pub suite: Suite,
    pub instance: String,
    pub pd: String,
    pub detail: String,
    pub cocycle: Option<Vec<usize>>,
    pub matching_seed: Option<u64>,
}

impl fmt::Display for SuiteFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} failed on {}: {}", self.suite, self.instance, self.detail)?;
        write!(f, "reproducer: --pd '{}'", self.pd)?;
        if let Some(c) = &self.cocycle {
            write!(f, " cocycle {c:?}")?;
        }
        if let Some(s) = self.matching_seed {
            write!(f, " matching seed {s}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum SuiteError {
    Failure(SuiteFailure),
    Compute(CliError),
}

macro_rules! compute_error {
    ($($t:ty),*) => {
        $(impl From<$t> for SuiteError {
            fn from(e: $t) -> Self {
                SuiteError::Compute(e.into())
            }
        })*
    };
}

compute_error!(CliError, khsq_algebra::AlgebraError, khsq_cube::CubeError, ModuliError, khsq_steenrod::SteenrodError);

struct Run<'a> {
    cube: Cube,
    instance: &'a Instance,
    pd: String,
    gradings: BTreeMap<i32, Grading>,
    suites: &'a [Suite],
    report: SuiteReport,
    cocycle: Option<Vec<usize>>,
    matching_seed: Option<u64>,
}

impl Run<'_> {
    fn enabled(&self, s: Suite) -> bool {
        self.suites.contains(&s)
    }

    fn check(&mut self, suite: Suite, ok: bool, detail: impl FnOnce() -> String) -> Result<(), SuiteError> {
        if ok {
            *self.report.checks.entry(suite).or_insert(0) += 1;
            return Ok(());
        }
        Err(SuiteError::Failure(SuiteFailure {
            suite,
            instance: self.instance.label.clone(),
            pd: self.pd.clone(),
            detail: detail(),
            cocycle: self.cocycle.clone(),
            matching_seed: self.matching_seed,
        }))
    }

    /// Whether a cocycle in degree `i` of grading `j` is a coboundary.
    fn trivial(&self, i: i32, j: i32, c: &Cochain) -> Result<bool, SuiteError> {
        if !coboundary(&self.cube, c).is_empty() {
            return Ok(false);
        }
        let coords = self.gradings[&j].slot(i).coords(&self.cube, c)?;
        Ok(coords.ones().next().is_none())
    }

    fn sq2(&self, mu: &Cochain, formula: Sq2Formula, choice: MatchingChoice) -> Result<Cochain, SuiteError> {
        let support: Vec<usize> = mu.iter().copied().collect();
        let matching = choice.build(&self.cube, &support)?;
        Ok(sq2_cochain(&self.cube, &matching, formula)?)
    }

    fn diagram_checks(&mut self) -> Result<(), SuiteError> {
        let js: Vec<i32> = self.gradings.keys().copied().collect();
        for &j in &js {
            let g = &self.gradings[&j];
            let (even, odd) = (g.complex(Parity::Even).clone(), g.complex(Parity::Odd).clone());
            for i in even.i_min - 1..=even.i_max() {
                if self.enabled(Suite::DSquared) {
                    for c in [&even, &odd] {
                        let (d0, d1) = (c.differential(i), c.differential(i + 1));
                        let z = d1.compose(&d0)?.is_zero();
                        self.check(Suite::DSquared, z, || format!("d² ≠ 0 over Z at ({i}, {j})"))?;
                        let f = d1.mod2().compose(&d0.mod2())?.is_zero();
                        self.check(Suite::DSquared, f, || format!("d² ≠ 0 over F2 at ({i}, {j})"))?;
                    }
                    let same = even.differential(i).mod2() == odd.differential(i).mod2();
                    self.check(Suite::DSquared, same, || format!("mod 2 differentials differ at ({i}, {j})"))?;
                }
                if self.enabled(Suite::Sq1Sq1) {
                    for parity in [Parity::Even, Parity::Odd] {
                        let g = &self.gradings[&j];
                        let zero = g.sq1(i + 1, parity)?.compose(&g.sq1(i, parity)?)?.is_zero();
                        self.check(Suite::Sq1Sq1, zero, || format!("Sq¹Sq¹ ≠ 0 at ({i}, {j}), {parity:?}"))?;
                    }
                }
            }
        }
        if self.enabled(Suite::Intervals) {
            for x in 0..self.cube.n_generators() {
                let mut targets = std::collections::BTreeSet::new();
                for a in self.cube.arrows(x) {
                    targets.extend(self.cube.arrows(a.target).iter().map(|b| b.target));
                }
                for z in targets {
                    let result = check_interval_signs(&self.cube, x, z);
                    let ok = !matches!(result, Err(ModuliError::SignCriterion { .. }));
                    self.check(Suite::Intervals, ok, || format!("sign criterion fails from {x} to {z}"))?;
                    result?;
                }
            }
        }
        Ok(())
    }

    fn cocycle_checks(&mut self, i: i32, j: i32, mu: &Cochain, other: &Cochain, seed: u64) -> Result<(), SuiteError> {
        self.cocycle = Some(mu.iter().copied().collect());
        self.matching_seed = Some(seed);
        let canonical = MatchingChoice::Canonical;
        let facet: Vec<Cochain> =
            (0..4).map(|l| self.sq2(mu, Sq2Formula::Facet { l }, canonical)).collect::<Result<_, _>>()?;
        if self.enabled(Suite::Cocycle) {
            for (l, c) in facet.iter().enumerate() {
                let ok = coboundary(&self.cube, c).is_empty();
                self.check(Suite::Cocycle, ok, || format!("Sq²_{l} is not a cocycle"))?;
            }
            for eps in 0..2 {
                let c = self.sq2(mu, Sq2Formula::Schutz { eps }, canonical)?;
                let ok = coboundary(&self.cube, &c).is_empty();
                self.check(Suite::Cocycle, ok, || format!("frame formula ε={eps} is not a cocycle"))?;
            }
        }
        if self.enabled(Suite::Matching) {
            for (l, c) in facet.iter().enumerate() {
                let r = self.sq2(mu, Sq2Formula::Facet { l: l as u32 }, MatchingChoice::Random(seed))?;
                let ok = self.trivial(i + 2, j, &(c ^ &r))?;
                self.check(Suite::Matching, ok, || format!("Sq²_{l} depends on the matching"))?;
            }
        }
        if self.enabled(Suite::Representative) {
            for (l, c) in facet.iter().enumerate() {
                let r = self.sq2(other, Sq2Formula::Facet { l: l as u32 }, canonical)?;
                let ok = self.trivial(i + 2, j, &(c ^ &r))?;
                self.check(Suite::Representative, ok, || format!("Sq²_{l} depends on the representative"))?;
            }
        }
        if self.enabled(Suite::Orientation) || self.enabled(Suite::Period) {
            let support: Vec<usize> = mu.iter().copied().collect();
            let matching = canonical.build(&self.cube, &support)?;
            for g in build_gammas(&self.cube, &matching, GammaMode::Paper)?.values() {
                for cycle in g.cycles() {
                    let fc = FacetCycle::from_cycle(g, &cycle);
                    let rev = fc.reversed();
                    for l in 0..4 {
                        let v = q_value(&fc, l)?;
                        if self.enabled(Suite::Orientation) {
                            let ok = v == q_value(&rev, l)?;
                            self.check(Suite::Orientation, ok, || format!("Q_{l} of {fc:?} depends on direction"))?;
                        }
                        if self.enabled(Suite::Period) {
                            let ok = v == q_value(&fc, l + 4)?;
                            self.check(Suite::Period, ok, || format!("Q_{l} differs from Q_{} on {fc:?}", l + 4))?;
                        }
                    }
                }
            }
        }
        if self.enabled(Suite::Period) {
            for (l, c) in facet.iter().enumerate() {
                let shifted = self.sq2(mu, Sq2Formula::Facet { l: l as u32 + 4 }, canonical)?;
                self.check(Suite::Period, *c == shifted, || format!("Sq²_{l} differs from Sq²_{}", l + 4))?;
            }
        }
        if self.enabled(Suite::Sum4) {
            let total = facet.iter().fold(Cochain::new(), |a, c| &a ^ c);
            let ok = self.trivial(i + 2, j, &total)?;
            self.check(Suite::Sum4, ok, || "the four realizations do not sum to zero".into())?;
        }
        if self.enabled(Suite::Oracle) {
            let support: Vec<usize> = mu.iter().copied().collect();
            let matching = canonical.build(&self.cube, &support)?;
            let frame1 = sq2_cochain(&self.cube, &matching, Sq2Formula::Schutz { eps: 1 })?;
            let frame0 = sq2_cochain(&self.cube, &matching, Sq2Formula::Schutz { eps: 0 })?;
            let odd = &facet[1] ^ &frame1;
            let ok = self.trivial(i + 2, j, &odd)?;
            self.check(Suite::Oracle, ok, || "Sq²_1 and the ε=1 frame formula differ on cohomology".into())?;
            let certificate = coboundary(&self.cube, &odd_difference_primitive(&self.cube, mu, &matching));
            self.check(Suite::Oracle, odd == certificate, || "the explicit primitive does not reproduce the difference".into())?;
            let l_map = interval_max_map(&self.cube, mu)?;
            let l_ok = l_map == coboundary(&self.cube, &interval_homotopy(&self.cube, mu));
            self.check(Suite::Oracle, l_ok, || "the interval map is not the coboundary of its homotopy".into())?;
            let ok = self.trivial(i + 2, j, &(&facet[3] ^ &frame0))?;
            self.check(Suite::Oracle, ok, || "Sq²_3 and the ε=0 frame formula differ on cohomology".into())?;
        }
        self.cocycle = None;
        self.matching_seed = None;
        Ok(())
    }
}

fn random_subset(rng: &mut ChaCha8Rng, items: &[usize]) -> Cochain {
    items.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

fn run_instance(instance: &Instance, index: usize, config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let cube = Cube::new(&instance.diagram)?;
    let gradings = cube
        .quantum_gradings()
        .into_iter()
        .map(|j| Ok((j, Grading::new(&cube, j)?)))
        .collect::<Result<BTreeMap<_, _>, SuiteError>>()?;
    let mut run = Run {
        pd: render_pd(&instance.diagram),
        cube,
        instance,
        gradings,
        suites: &config.suites,
        report: SuiteReport { diagrams: 1, ..Default::default() },
        cocycle: None,
        matching_seed: None,
    };
    run.diagram_checks()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let classes: Vec<(i32, i32)> = run
        .gradings
        .iter()
        .flat_map(|(&j, g)| g.degrees().filter(|&i| g.dim(i) > 0).map(move |i| (i, j)))
        .collect();
    let reaching: Vec<(i32, i32)> =
        classes.iter().copied().filter(|&(i, j)| run.gradings[&j].dim(i + 2) > 0).collect();
    for k in 0..config.cocycles_per_diagram {
        let pool = if k % 2 == 0 && !reaching.is_empty() { &reaching } else { &classes };
        let Some(&(i, j)) = pool.choose(&mut rng) else { break };
        let (mu, other) = {
            let g = &run.gradings[&j];
            let slot = g.slot(i);
            let reps = slot.cohomology.representatives();
            let mut mu = Cochain::new();
            while mu.is_empty() {
                for r in reps {
                    if rng.gen_bool(0.5) {
                        mu = &mu ^ &slot.to_cochain(r);
                    }
                }
            }
            let below = &g.slot(i - 1).gens;
            mu = &mu ^ &coboundary(&run.cube, &random_subset(&mut rng, below));
            let other = &mu ^ &coboundary(&run.cube, &random_subset(&mut rng, below));
            (mu, other)
        };
        let seed = rng.gen();
        run.cocycle_checks(i, j, &mu, &other, seed)?;
        run.report.cocycles += 1;
    }
    Ok(run.report)
}

/// Runs the configured suites on every instance, in parallel over
/// instances. The first failure in instance order is returned.
pub fn run_suites(instances: &[Instance], config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let results: Vec<Result<SuiteReport, SuiteError>> =
        instances.par_iter().enumerate().map(|(k, inst)| run_instance(inst, k, config)).collect();
    let mut total = SuiteReport::default();
    for r in results {
        total.absorb(r?);
    }
    Ok(total)
}
