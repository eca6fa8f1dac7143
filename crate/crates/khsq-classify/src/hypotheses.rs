use std::collections::{BTreeMap, BTreeSet};

use khsq_algebra::AbelianGroup;
use serde::{Deserialize, Serialize};

/// Which of the three classification hypotheses integral Khovanov homology
/// satisfies, with the offending bidegrees.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// The lowest value of `2i - j` over nonzero bidegrees.
    pub sigma: Option<i32>,
    /// Nonzero bidegrees off the diagonals `sigma`, `sigma + 2`, `sigma + 4`.
    pub off_diagonal: Vec<(i32, i32)>,
    /// Torsion summands of prime power order other than 2 and 3.
    pub bad_torsion: Vec<((i32, i32), u64)>,
    /// Bidegrees on the lowest diagonal that carry torsion.
    pub lowest_torsion: Vec<(i32, i32)>,
}

impl HypothesisReport {
    pub fn three_diagonals(&self) -> bool {
        self.off_diagonal.is_empty()
    }

    pub fn small_torsion(&self) -> bool {
        self.bad_torsion.is_empty()
    }

    pub fn untwisted_lowest_diagonal(&self) -> bool {
        self.lowest_torsion.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.three_diagonals() && self.small_torsion() && self.untwisted_lowest_diagonal()
    }

    /// The homological degree on the lowest diagonal in quantum grading `j`.
    pub fn lowest_degree(&self, j: i32) -> Option<i32> {
        let s = self.sigma?;
        ((s + j) % 2 == 0).then_some((s + j) / 2)
    }
}

/// Checks the classification hypotheses on integral Khovanov homology keyed
/// by `(i, j)`.
pub fn check_hypotheses(kh: &BTreeMap<(i32, i32), AbelianGroup>) -> HypothesisReport {
    let nonzero: Vec<(&(i32, i32), &AbelianGroup)> = kh.iter().filter(|(_, h)| !h.is_zero()).collect();
    let diagonals: BTreeSet<i32> = nonzero.iter().map(|((i, j), _)| 2 * i - j).collect();
    let sigma = diagonals.first().copied();
    let mut report = HypothesisReport { sigma, ..Default::default() };
    let Some(sigma) = sigma else { return report };
    for &(&(i, j), h) in &nonzero {
        let d = 2 * i - j;
        if ![sigma, sigma + 2, sigma + 4].contains(&d) {
            report.off_diagonal.push((i, j));
        }
        for &t in &h.torsion {
            if t != 2 && t != 3 {
                report.bad_torsion.push(((i, j), t));
            }
        }
        if d == sigma && !h.torsion.is_empty() {
            report.lowest_torsion.push((i, j));
        }
    }
    report
}
