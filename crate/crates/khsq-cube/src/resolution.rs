use khsq_link::LinkDiagram;

/// A vertex of the cube: bit `k` set means crossing `k` takes its 1-smoothing.
pub type Vertex = u32;

/// The two resolution arcs of a crossing, as slot pairs.
pub fn arcs(bit: bool) -> [[usize; 2]; 2] {
    if bit {
        [[0, 1], [2, 3]]
    } else {
        [[0, 3], [1, 2]]
    }
}

/// The partner slot of `slot` under the given smoothing.
pub fn arc_partner(bit: bool, slot: usize) -> usize {
    if bit {
        slot ^ 1
    } else {
        3 - slot
    }
}

/// Circles of a resolved diagram. Circles meeting crossings are ordered by
/// their smallest strand label; free loops come last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub vertex: Vertex,
    /// Circle index of each strand, indexed like `LinkDiagram::strands`.
    pub circle_of_strand: Vec<u8>,
    pub n_circles: usize,
}

impl Resolution {
    /// Strand labels on each circle; free loops give empty lists.
    pub fn circles(&self, diagram: &LinkDiagram) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n_circles];
        for (s, &c) in self.circle_of_strand.iter().enumerate() {
            out[c as usize].push(diagram.strands()[s]);
        }
        out
    }

    /// The circle through the strand with the given label.
    pub fn circle_of_label(&self, diagram: &LinkDiagram, label: u32) -> u8 {
        self.circle_of_strand[diagram.strand_index(label).expect("label present")]
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn resolve(diagram: &LinkDiagram, u: Vertex) -> Resolution {
    let m = diagram.strands().len();
    let mut parent: Vec<usize> = (0..m).collect();
    for (k, x) in diagram.crossings().iter().enumerate() {
        for [p, q] in arcs(u >> k & 1 == 1) {
            let a = find(&mut parent, diagram.strand_index(x[p]).expect("label present"));
            let b = find(&mut parent, diagram.strand_index(x[q]).expect("label present"));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut circle_of_root = vec![u8::MAX; m];
    let mut circle_of_strand = vec![0u8; m];
    let mut n = 0usize;
    for (s, circle) in circle_of_strand.iter_mut().enumerate() {
        let r = find(&mut parent, s);
        if circle_of_root[r] == u8::MAX {
            circle_of_root[r] = n as u8;
            n += 1;
        }
        *circle = circle_of_root[r];
    }
    let n_circles = n + diagram.n_free_loops();
    assert!(n_circles <= 63, "too many circles for a 64-bit labelling");
    Resolution { vertex: u, circle_of_strand, n_circles }
}
