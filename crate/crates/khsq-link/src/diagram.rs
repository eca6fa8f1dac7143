use std::collections::BTreeMap;

use crate::LinkError;

/// A position `(crossing, slot)` with `slot` in `0..4` inside a PD tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port {
    pub crossing: usize,
    pub slot: usize,
}

/// A validated, oriented link diagram.
///
/// Strand labels are kept as given; `strands()` lists them in increasing
/// order and `strand_index` maps a label to its position in that list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    free_loops: usize,
    strands: Vec<u32>,
    ports: Vec<[Port; 2]>,
    incoming: Vec<[bool; 4]>,
    signs: Vec<i8>,
    components: Vec<Vec<u32>>,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<[u32; 4]>, free_loops: usize) -> Result<Self, LinkError> {
        if crossings.is_empty() && free_loops == 0 {
            return Err(LinkError::EmptyInput);
        }
        let mut occurrences: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
        for (k, x) in crossings.iter().enumerate() {
            for (slot, &label) in x.iter().enumerate() {
                if label == 0 {
                    return Err(LinkError::MalformedToken(format!("X{:?}", x)));
                }
                occurrences.entry(label).or_default().push(Port { crossing: k, slot });
            }
        }
        for (&label, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(LinkError::DanglingStrand { label, count: occ.len() });
            }
        }
        let strands: Vec<u32> = occurrences.keys().copied().collect();
        let ports: Vec<[Port; 2]> = occurrences.values().map(|v| [v[0], v[1]]).collect();
        let mut diagram = LinkDiagram {
            incoming: vec![[false; 4]; crossings.len()],
            signs: vec![0; crossings.len()],
            crossings,
            free_loops,
            strands,
            ports,
            components: Vec::new(),
        };
        diagram.orient()?;
        Ok(diagram)
    }

    fn orient(&mut self) -> Result<(), LinkError> {
        let m = self.strands.len();
        let mut visited = vec![false; m];
        let mut components = Vec::new();
        for start in 0..m {
            if visited[start] {
                continue;
            }
            let entry = self.ports[start][1];
            let walk = self.walk(entry);
            let forward = walk.iter().any(|p| p.slot == 0);
            let backward = walk.iter().any(|p| p.slot == 2);
            if forward && backward {
                return Err(LinkError::InconsistentOrientation(self.strands[start]));
            }
            let walk = if backward { self.walk(self.ports[start][0]) } else { walk };
            let mut labels = Vec::with_capacity(walk.len());
            for p in &walk {
                let label = self.crossings[p.crossing][p.slot];
                let s = self.strand_index(label).expect("label present");
                visited[s] = true;
                self.incoming[p.crossing][p.slot] = true;
                labels.push(label);
            }
            components.push(labels);
        }
        for (k, x) in self.crossings.iter().enumerate() {
            let inc = self.incoming[k];
            if !inc[0] || inc[2] || inc[1] == inc[3] {
                return Err(LinkError::InconsistentOrientation(x[0]));
            }
            self.signs[k] = if inc[1] { 1 } else { -1 };
        }
        components.sort_by_key(|c| *c.iter().min().expect("nonempty component"));
        self.components = components;
        Ok(())
    }

    /// Follows the link starting by entering at `entry`, returning every port
    /// at which the traversal enters a crossing.
    fn walk(&self, entry: Port) -> Vec<Port> {
        let mut out = Vec::new();
        let mut cur = entry;
        loop {
            out.push(cur);
            let exit = Port { crossing: cur.crossing, slot: (cur.slot + 2) % 4 };
            cur = self.other_end(exit);
            if cur == entry {
                return out;
            }
        }
    }

    /// The port at the far end of the strand leaving through `port`.
    pub fn other_end(&self, port: Port) -> Port {
        let label = self.crossings[port.crossing][port.slot];
        let pair = self.ports[self.strand_index(label).expect("label present")];
        if pair[0] == port {
            pair[1]
        } else {
            pair[0]
        }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_free_loops(&self) -> usize {
        self.free_loops
    }

    /// Strand labels in increasing order.
    pub fn strands(&self) -> &[u32] {
        &self.strands
    }

    pub fn strand_index(&self, label: u32) -> Option<usize> {
        self.strands.binary_search(&label).ok()
    }

    /// The label sitting at a port.
    pub fn label(&self, port: Port) -> u32 {
        self.crossings[port.crossing][port.slot]
    }

    /// Crossing signs, `+1` or `-1`, in crossing order.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// Whether the strand at `port` enters its crossing there.
    pub fn is_incoming(&self, port: Port) -> bool {
        self.incoming[port.crossing][port.slot]
    }

    /// Link components as strand labels in traversal order, followed by one
    /// empty entry per free loop.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut out = self.components.clone();
        out.extend(std::iter::repeat_with(Vec::new).take(self.free_loops));
        out
    }

    pub fn n_components(&self) -> usize {
        self.components.len() + self.free_loops
    }

    /// The mirror image: every crossing changes over and under strands.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(x, &s)| if s > 0 { [x[1], x[2], x[3], x[0]] } else { [x[3], x[0], x[1], x[2]] })
            .collect();
        LinkDiagram::new(crossings, self.free_loops).expect("mirror of a valid diagram")
    }

    /// Split union, relabelling the strands of `other` above those of `self`.
    pub fn split_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let shift = self.strands.last().copied().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| x.map(|l| l + shift)));
        LinkDiagram::new(crossings, self.free_loops + other.free_loops)
            .expect("split union of valid diagrams")
    }

    /// Adds `k` crossingless unknotted components.
    pub fn with_free_loops(&self, k: usize) -> LinkDiagram {
        LinkDiagram::new(self.crossings.clone(), self.free_loops + k).expect("valid diagram")
    }
}

/// Closure of a braid word on `n_strands` strands. Letter `i` (resp. `-i`)
/// is the generator crossing positions `i` and `i+1` positively (resp.
/// negatively), with `1 <= i < n_strands`. Untouched positions become free
/// loops. Used to produce test diagrams.
pub fn braid_closure(n_strands: usize, word: &[i32]) -> LinkDiagram {
    let mut cur: Vec<u32> = (1..=n_strands as u32).collect();
    let mut touched = vec![false; n_strands];
    let mut next = n_strands as u32 + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &letter in word {
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < n_strands, "braid letter out of range");
        let (l, r) = (i - 1, i);
        touched[l] = true;
        touched[r] = true;
        let (in_l, in_r) = (cur[l], cur[r]);
        let (out_l, out_r) = (next, next + 1);
        next += 2;
        crossings.push(if letter > 0 {
            [in_l, in_r, out_r, out_l]
        } else {
            [in_r, out_r, out_l, in_l]
        });
        cur[l] = out_l;
        cur[r] = out_r;
    }
    let mut rename = std::collections::HashMap::new();
    for p in 0..n_strands {
        if touched[p] {
            rename.insert(cur[p], p as u32 + 1);
        }
    }
    for x in &mut crossings {
        for label in x.iter_mut() {
            if let Some(&r) = rename.get(label) {
                *label = r;
            }
        }
    }
    let loops = touched.iter().filter(|&&t| !t).count();
    LinkDiagram::new(crossings, loops).expect("braid closures are valid diagrams")
}
