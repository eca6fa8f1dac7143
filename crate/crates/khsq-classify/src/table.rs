use std::collections::BTreeMap;

use crate::ClassifyError;

/// Expected tuples of one knot, as `l -> (i, j) -> tuple`.
pub type KnotRows = BTreeMap<u32, BTreeMap<(i32, i32), [usize; 4]>>;

/// A reference table of `St_1` and `St_3` values. Every listed knot has
/// zero tuples at all bidegrees not listed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StReference {
    /// `knot -> l -> (i, j) -> tuple`.
    pub rows: BTreeMap<String, KnotRows>,
}

impl StReference {
    pub fn knots(&self) -> impl Iterator<Item = &str> {
        self.rows.keys().map(String::as_str)
    }

    /// The expected nonzero entries of `St_l` for `knot`, or `None` if the
    /// knot is not listed.
    pub fn expected(&self, knot: &str, l: u32) -> Option<BTreeMap<(i32, i32), [usize; 4]>> {
        self.rows.get(knot).map(|by_l| by_l.get(&l).cloned().unwrap_or_default())
    }
}

/// Parses `knot<TAB>l<TAB>i<TAB>j<TAB>x1,x2,x3,x4` lines; `#` starts a
/// comment.
pub fn parse_st_reference(text: &str) -> Result<StReference, ClassifyError> {
    let mut reference = StReference::default();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| ClassifyError::BadTableLine { line: k + 1, why: why.to_string() };
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [knot, l, i, j, tuple] = fields[..] else {
            return Err(bad("expected five tab-separated fields"));
        };
        let l: u32 = l.parse().map_err(|_| bad("bad l"))?;
        let i: i32 = i.parse().map_err(|_| bad("bad i"))?;
        let j: i32 = j.parse().map_err(|_| bad("bad j"))?;
        let xs: Vec<usize> = tuple
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("bad tuple"))?;
        let tuple: [usize; 4] = xs.try_into().map_err(|_| bad("tuple needs four entries"))?;
        reference
            .rows
            .entry(knot.to_string())
            .or_default()
            .entry(l)
            .or_default()
            .insert((i, j), tuple);
    }
    Ok(reference)
}
