use std::collections::BTreeMap;
use std::fmt;

use khsq_algebra::AbelianGroup;
use serde::{Deserialize, Serialize};

use crate::{ClassifyError, HypothesisReport, StTable};

/// A wedge summand of a Khovanov spectrum. Suspension degrees and Moore
/// degrees are cohomological: a Moore summand of degree `k` has reduced
/// cohomology `Z` or `Z/n` in degree `k` only.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Summand {
    /// `Σ^shift CP^2`.
    Cp2 { shift: i32 },
    /// `Σ^shift RP^5/RP^2`.
    Rp5Rp2 { shift: i32 },
    /// `Σ^shift RP^4/RP^1`.
    Rp4Rp1 { shift: i32 },
    /// `Σ^shift RP^2 ∧ RP^2`.
    Rp2Rp2 { shift: i32 },
    /// A sphere (`order` is `None`) or a Moore space for `Z/order`.
    Moore { degree: i32, order: Option<u64> },
}

impl Summand {
    /// The integral cohomology the summand contributes, as `(degree, order)`
    /// with `None` for `Z`.
    fn cohomology(&self) -> Vec<(i32, Option<u64>)> {
        match *self {
            Summand::Cp2 { shift } => vec![(shift + 2, None), (shift + 4, None)],
            Summand::Rp5Rp2 { shift } => vec![(shift + 4, Some(2)), (shift + 5, None)],
            Summand::Rp4Rp1 { shift } => vec![(shift + 2, None), (shift + 4, Some(2))],
            Summand::Rp2Rp2 { shift } => vec![(shift + 3, Some(2)), (shift + 4, Some(2))],
            Summand::Moore { degree, order } => vec![(degree, order)],
        }
    }

    pub fn is_moore(&self) -> bool {
        matches!(self, Summand::Moore { .. })
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Cp2 { shift } => write!(f, "Σ^{shift} CP^2"),
            Summand::Rp5Rp2 { shift } => write!(f, "Σ^{shift} RP^5/RP^2"),
            Summand::Rp4Rp1 { shift } => write!(f, "Σ^{shift} RP^4/RP^1"),
            Summand::Rp2Rp2 { shift } => write!(f, "Σ^{shift} RP^2∧RP^2"),
            Summand::Moore { degree, order: None } => write!(f, "S^{degree}"),
            Summand::Moore { degree, order: Some(n) } => write!(f, "M(Z/{n}, {degree})"),
        }
    }
}

/// The stable wedge decomposition of `X_l^j`, as summands with
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeDecomposition {
    pub l: u32,
    pub j: i32,
    pub summands: BTreeMap<Summand, usize>,
}

impl WedgeDecomposition {
    pub fn is_moore_wedge(&self) -> bool {
        self.summands.keys().all(Summand::is_moore)
    }
}

impl fmt::Display for WedgeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(s, &k)| if k == 1 { s.to_string() } else { format!("{k}×{s}") })
            .collect();
        if parts.is_empty() {
            write!(f, "*")
        } else {
            write!(f, "{}", parts.join(" ∨ "))
        }
    }
}

fn take(groups: &mut BTreeMap<i32, AbelianGroup>, j: i32, degree: i32, order: Option<u64>, summand: &Summand) -> Result<(), ClassifyError> {
    let missing = || ClassifyError::MissingSummand { i: degree, j, summand: summand.to_string() };
    let h = groups.get_mut(&degree).ok_or_else(missing)?;
    match order {
        None if h.free > 0 => h.free -= 1,
        Some(n) => {
            let k = h.torsion.iter().position(|&t| t == n).ok_or_else(missing)?;
            h.torsion.remove(k);
        }
        None => return Err(missing()),
    }
    Ok(())
}

/// The wedge decomposition of `X_l^j` from the integral homology of parity
/// `l mod 2` and `St_l`. Fails unless the hypotheses hold.
pub fn wedge(
    kh: &BTreeMap<(i32, i32), AbelianGroup>,
    report: &HypothesisReport,
    st: &StTable,
    j: i32,
) -> Result<WedgeDecomposition, ClassifyError> {
    if !report.passes() {
        return Err(ClassifyError::HypothesesFail);
    }
    let mut groups: BTreeMap<i32, AbelianGroup> =
        kh.iter().filter(|(&(_, q), _)| q == j).map(|(&(i, _), h)| (i, h.clone())).collect();
    let mut summands = BTreeMap::new();
    if let Some(i) = report.lowest_degree(j) {
        let [x1, x2, x3, x4] = st.get(i, j);
        let special = [
            (Summand::Cp2 { shift: i - 2 }, x1),
            (Summand::Rp5Rp2 { shift: i - 3 }, x2),
            (Summand::Rp4Rp1 { shift: i - 2 }, x3),
            (Summand::Rp2Rp2 { shift: i - 2 }, x4),
        ];
        for (s, k) in special {
            for _ in 0..k {
                for (degree, order) in s.cohomology() {
                    take(&mut groups, j, degree, order, &s)?;
                }
            }
            if k > 0 {
                summands.insert(s, k);
            }
        }
    }
    for (degree, h) in groups {
        if h.free > 0 {
            *summands.entry(Summand::Moore { degree, order: None }).or_insert(0) += h.free;
        }
        for t in h.torsion {
            *summands.entry(Summand::Moore { degree, order: Some(t) }).or_insert(0) += 1;
        }
    }
    Ok(WedgeDecomposition { l: st.l, j, summands })
}
