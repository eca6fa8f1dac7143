use std::collections::{BTreeMap, HashMap};

use khsq_link::{LinkDiagram, Port};

use crate::resolution::{arc_partner, resolve, Resolution, Vertex};
use crate::CubeError;

/// How a single edge of the cube changes the circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Circles `a` and `b` merge into circle `c` of the target.
    Merge { a: u8, b: u8, c: u8 },
    /// Circle `a` splits into `b1`, the circle through the crossing's first
    /// strand, and `b2`, the circle through its third strand.
    Split { a: u8, b1: u8, b2: u8 },
}

/// An edge of the cube with its circle correspondence. For a split, `map`
/// sends the split circle to `b1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub kind: EdgeKind,
    pub map: Vec<u8>,
}

/// At most two images of a basis element under an edge map.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeImages {
    len: u8,
    items: [(u64, i8); 2],
}

impl EdgeImages {
    fn push(&mut self, mask: u64, coef: i8) {
        self.items[self.len as usize] = (mask, coef);
        self.len += 1;
    }

    pub fn as_slice(&self) -> &[(u64, i8)] {
        &self.items[..self.len as usize]
    }
}

fn map_monomial(mask: u64, map: &[u8]) -> (u64, bool) {
    let mut seq = [0u8; 64];
    let mut len = 0;
    let mut bits = mask;
    while bits != 0 {
        seq[len] = map[bits.trailing_zeros() as usize];
        len += 1;
        bits &= bits - 1;
    }
    let mut odd = false;
    let mut out = 0u64;
    for x in 0..len {
        out |= 1 << seq[x];
        for y in x + 1..len {
            odd ^= seq[x] > seq[y];
        }
    }
    (out, odd)
}

fn wedge_sign(circle: u8, mask: u64) -> bool {
    (mask & ((1u64 << circle) - 1)).count_ones() % 2 == 1
}

impl Edge {
    /// Images of a labelling under the even Frobenius map; a set bit means
    /// the circle is labelled `x`. Coefficients are all `+1`.
    pub fn even_images(&self, mask: u64) -> EdgeImages {
        let mut out = self.odd_images(mask);
        for item in &mut out.items {
            item.1 = 1;
        }
        out
    }

    /// Images of an exterior monomial under the odd map, with signs.
    pub fn odd_images(&self, mask: u64) -> EdgeImages {
        let mut out = EdgeImages::default();
        match self.kind {
            EdgeKind::Merge { a, b, .. } => {
                if mask >> a & 1 == 1 && mask >> b & 1 == 1 {
                    return out;
                }
                let (m, odd) = map_monomial(mask, &self.map);
                out.push(m, if odd { -1 } else { 1 });
            }
            EdgeKind::Split { a, b1, b2 } => {
                let (m, odd) = map_monomial(mask, &self.map);
                let base = if odd { -1 } else { 1 };
                if mask >> a & 1 == 0 {
                    let s = if wedge_sign(b1, m) { -base } else { base };
                    out.push(m | 1 << b1, s);
                }
                let s = if wedge_sign(b2, m) { base } else { -base };
                out.push(m | 1 << b2, s);
            }
        }
        out
    }
}

/// Which pair of arcs of a ladybug circle is matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadybugRule {
    Right,
    Left,
}

/// The sign parity of the edge `u -> u + {j}`: `#{i in u : i < j} mod 2`.
pub fn edge_sign(u: Vertex, j: usize) -> u8 {
    (edge_index(u, j) % 2) as u8
}

/// The index `#{i in u : i < j}` of the edge `u -> u + {j}`.
pub fn edge_index(u: Vertex, j: usize) -> u32 {
    (u & ((1u32 << j) - 1)).count_ones()
}

/// Sign parity for an edge given as target `t` and source `s`.
pub fn standard_sign(t: Vertex, s: Vertex) -> Result<u8, CubeError> {
    index(t, s).map(|k| (k % 2) as u8)
}

/// Index for an edge given as target `t` and source `s`.
pub fn index(t: Vertex, s: Vertex) -> Result<u32, CubeError> {
    if s & !t != 0 || (t ^ s).count_ones() != 1 {
        return Err(CubeError::NotAnEdge { t, s });
    }
    Ok(edge_index(s, (t ^ s).trailing_zeros() as usize))
}

/// A moduli point: one term of the differential of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub target: usize,
    pub crossing: u8,
    /// The index `s_Z` of the cube edge.
    pub s_z: u32,
    /// The odd sign `σ`.
    pub sigma: u8,
}

impl Arrow {
    /// The standard sign parity `s`.
    pub fn s(&self) -> u8 {
        (self.s_z % 2) as u8
    }

    /// The cubical sign `S = s + σ`.
    pub fn big_s(&self) -> u8 {
        self.s() ^ self.sigma
    }
}

/// The full resolution cube of a diagram together with the odd edge signs.
#[derive(Debug, Clone)]
pub struct Cube {
    diagram: LinkDiagram,
    n: usize,
    resolutions: Vec<Resolution>,
    offsets: Vec<usize>,
    edges: Vec<Option<Edge>>,
    eps: Vec<u8>,
    ladybugs: HashMap<(Vertex, u8, u8), [u8; 2]>,
    rule: LadybugRule,
    blocks: BTreeMap<(i32, i32), Vec<usize>>,
    local: Vec<u32>,
}

impl Cube {
    pub fn new(diagram: &LinkDiagram) -> Result<Self, CubeError> {
        Cube::with_rule(diagram, LadybugRule::Right)
    }

    pub fn with_rule(diagram: &LinkDiagram, rule: LadybugRule) -> Result<Self, CubeError> {
        let n = diagram.n_crossings();
        if n > 16 {
            return Err(CubeError::TooLarge(n));
        }
        let resolutions: Vec<Resolution> = (0..1u32 << n).map(|u| resolve(diagram, u)).collect();
        let mut offsets = Vec::with_capacity(resolutions.len() + 1);
        let mut total = 0usize;
        for r in &resolutions {
            offsets.push(total);
            total += 1usize << r.n_circles;
        }
        offsets.push(total);
        let mut cube = Cube {
            diagram: diagram.clone(),
            n,
            resolutions,
            offsets,
            edges: Vec::new(),
            eps: vec![0; (1usize << n) * n.max(1)],
            ladybugs: HashMap::new(),
            rule,
            blocks: BTreeMap::new(),
            local: vec![0; total],
        };
        cube.edges = (0..1u32 << n)
            .flat_map(|u| (0..n).map(move |j| (u, j)))
            .map(|(u, j)| (u >> j & 1 == 0).then(|| cube.build_edge(u, j)))
            .collect();
        cube.solve_signs()?;
        for gid in 0..total {
            let (u, mask) = cube.generator(gid);
            let key = cube.grading(u, mask);
            let block = cube.blocks.entry((key.1, key.0)).or_default();
            cube.local[gid] = block.len() as u32;
            block.push(gid);
        }
        Ok(cube)
    }

    fn build_edge(&self, u: Vertex, j: usize) -> Edge {
        let d = &self.diagram;
        let x = d.crossings()[j];
        let v = u | 1 << j;
        let (ru, rv) = (&self.resolutions[u as usize], &self.resolutions[v as usize]);
        let a = ru.circle_of_label(d, x[0]);
        let b = ru.circle_of_label(d, x[1]);
        let mut map = vec![u8::MAX; ru.n_circles];
        for (s, &c) in ru.circle_of_strand.iter().enumerate() {
            if map[c as usize] == u8::MAX {
                map[c as usize] = rv.circle_of_strand[s];
            }
        }
        let crossing_circles = ru.n_circles - d.n_free_loops();
        let shift = rv.n_circles - d.n_free_loops();
        for f in 0..d.n_free_loops() {
            map[crossing_circles + f] = (shift + f) as u8;
        }
        let kind = if a == b {
            let b1 = rv.circle_of_label(d, x[0]);
            let b2 = rv.circle_of_label(d, x[2]);
            map[a as usize] = b1;
            EdgeKind::Split { a, b1, b2 }
        } else {
            EdgeKind::Merge { a, b, c: rv.circle_of_label(d, x[0]) }
        };
        Edge { kind, map }
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn n_crossings(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> LadybugRule {
        self.rule
    }

    pub fn resolution(&self, u: Vertex) -> &Resolution {
        &self.resolutions[u as usize]
    }

    pub fn n_circles(&self, u: Vertex) -> usize {
        self.resolutions[u as usize].n_circles
    }

    pub fn n_generators(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    /// The edge `u -> u + {j}`; `None` if `j` is already in `u`.
    pub fn edge(&self, u: Vertex, j: usize) -> Option<&Edge> {
        self.edges[u as usize * self.n + j].as_ref()
    }

    /// The odd edge sign correction `ε(u, j)`.
    pub fn epsilon(&self, u: Vertex, j: usize) -> u8 {
        self.eps[u as usize * self.n + j]
    }

    pub fn gid(&self, u: Vertex, mask: u64) -> usize {
        self.offsets[u as usize] + mask as usize
    }

    pub fn generator(&self, gid: usize) -> (Vertex, u64) {
        let u = self.offsets.partition_point(|&o| o <= gid) - 1;
        (u as Vertex, (gid - self.offsets[u]) as u64)
    }

    /// Bigrading `(i, j)` of a generator.
    pub fn grading(&self, u: Vertex, mask: u64) -> (i32, i32) {
        let d = &self.diagram;
        let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
        let height = u.count_ones() as i32;
        let c = self.n_circles(u) as i32;
        let x = mask.count_ones() as i32;
        (height - nm, c - 2 * x + height + np - 2 * nm)
    }

    pub fn gid_grading(&self, gid: usize) -> (i32, i32) {
        let (u, m) = self.generator(gid);
        self.grading(u, m)
    }

    /// Generators in bidegree `(i, j)`, in increasing order.
    pub fn block(&self, i: i32, j: i32) -> &[usize] {
        self.blocks.get(&(j, i)).map_or(&[], Vec::as_slice)
    }

    /// Position of a generator inside its bidegree block.
    pub fn local_index(&self, gid: usize) -> usize {
        self.local[gid] as usize
    }

    /// Nonempty bidegrees `(i, j)`, sorted by `j` then `i`.
    pub fn bidegrees(&self) -> Vec<(i32, i32)> {
        self.blocks.keys().map(|&(j, i)| (i, j)).collect()
    }

    pub fn quantum_gradings(&self) -> Vec<i32> {
        let mut js: Vec<i32> = self.blocks.keys().map(|k| k.0).collect();
        js.dedup();
        js
    }

    /// All moduli points out of a generator, i.e. the terms of its
    /// differential, in order of crossing then target.
    pub fn arrows(&self, gid: usize) -> Vec<Arrow> {
        let (u, mask) = self.generator(gid);
        let mut out = Vec::new();
        for j in 0..self.n {
            let Some(e) = self.edge(u, j) else { continue };
            let v = u | 1 << j;
            let eps = self.epsilon(u, j);
            for &(m, c) in e.odd_images(mask).as_slice() {
                out.push(Arrow {
                    target: self.gid(v, m),
                    crossing: j as u8,
                    s_z: edge_index(u, j),
                    sigma: eps ^ (c < 0) as u8,
                });
            }
        }
        out
    }

    /// For a ladybug face with base `w` and directions `i < j`: the circles
    /// at `w + {i}` and `w + {j}` whose `x`-labelled intermediate generators
    /// are matched with each other. `None` if the face is not a ladybug.
    pub fn ladybug_pairing(&self, w: Vertex, i: usize, j: usize) -> Option<[u8; 2]> {
        let (i, j) = (i.min(j), i.max(j));
        self.ladybugs.get(&(w, i as u8, j as u8)).copied()
    }

    fn composite(&self, w: Vertex, first: usize, second: usize) -> Vec<(u64, i32)> {
        let e1 = self.edge(w, first).expect("edge");
        let e2 = self.edge(w | 1 << first, second).expect("edge");
        let mut acc: BTreeMap<u64, i32> = BTreeMap::new();
        for &(m1, c1) in e1.odd_images(0).as_slice() {
            for &(m2, c2) in e2.odd_images(m1).as_slice() {
                *acc.entry(m2).or_default() += (c1 * c2) as i32;
            }
        }
        acc.into_iter().filter(|e| e.1 != 0).collect()
    }

    /// The required value of `Σ ε` around the face `(w; i, j)`.
    fn face_target(&mut self, w: Vertex, i: usize, j: usize) -> Result<u8, CubeError> {
        let c1 = self.composite(w, i, j);
        let c2 = self.composite(w, j, i);
        if c1.is_empty() && c2.is_empty() {
            let pairing = self.right_pair(w, i, j)?;
            self.ladybugs.insert((w, i as u8, j as u8), pairing);
            let bit = |first: usize, circle: u8| match self.edge(w, first).expect("edge").kind {
                EdgeKind::Split { b2, .. } => (b2 == circle) as u8,
                EdgeKind::Merge { .. } => unreachable!("ladybug edges split"),
            };
            return Ok(bit(i, pairing[0]) ^ bit(j, pairing[1]));
        }
        if c1 == c2 {
            return Ok(0);
        }
        let neg: Vec<(u64, i32)> = c2.iter().map(|&(m, c)| (m, -c)).collect();
        if c1 == neg {
            return Ok(1);
        }
        Err(CubeError::NoValidAssignment(format!("face at {w:b} in directions {i},{j}")))
    }

    fn right_pair(&self, w: Vertex, c1: usize, c2: usize) -> Result<[u8; 2], CubeError> {
        let d = &self.diagram;
        let bug = |why: &str| CubeError::NoValidAssignment(format!("ladybug at {w:b} ({c1},{c2}): {why}"));
        let start = Port { crossing: c1, slot: 0 };
        let mut exit = start;
        let mut segments: Vec<(Port, Port, u32)> = Vec::new();
        let mut seg_start = start;
        let mut first_label = d.label(start);
        loop {
            let entry = d.other_end(exit);
            let bit = w >> entry.crossing & 1 == 1;
            let out = Port { crossing: entry.crossing, slot: arc_partner(bit, entry.slot) };
            if entry.crossing == c1 || entry.crossing == c2 {
                segments.push((seg_start, entry, first_label));
                seg_start = out;
                first_label = d.label(out);
            }
            exit = out;
            if exit == start {
                break;
            }
        }
        if segments.len() != 4 {
            return Err(bug("circle does not pass each crossing twice"));
        }
        let want = match self.rule {
            LadybugRule::Right => 1,
            LadybugRule::Left => 0,
        };
        let mut chosen = Vec::new();
        for &(a, b, label) in &segments {
            if a.crossing == b.crossing {
                return Err(bug("arcs are not interleaved"));
            }
            let (p1, p2) = if a.crossing == c1 { (a, b) } else { (b, a) };
            if p1.slot % 2 == want {
                if p2.slot % 2 != want {
                    return Err(bug("port parities disagree"));
                }
                chosen.push(label);
            }
        }
        let (v1, v2) = (w | 1 << c1, w | 1 << c2);
        let circle = |v: Vertex, label: u32| self.resolutions[v as usize].circle_of_label(d, label);
        let alpha = [circle(v1, chosen[0]), circle(v2, chosen[0])];
        let beta = [circle(v1, chosen[1]), circle(v2, chosen[1])];
        if alpha[0] == beta[0] || alpha[1] == beta[1] {
            return Err(bug("matched arcs share a circle"));
        }
        Ok(alpha)
    }

    fn solve_signs(&mut self) -> Result<(), CubeError> {
        let n = self.n;
        let mut targets: HashMap<(Vertex, u8, u8), u8> = HashMap::new();
        for w in 0..1u32 << n {
            for i in 0..n {
                for j in i + 1..n {
                    if w >> i & 1 == 0 && w >> j & 1 == 0 {
                        let t = self.face_target(w, i, j)?;
                        targets.insert((w, i as u8, j as u8), t);
                    }
                }
            }
        }
        for j in 0..n {
            let low = (1u32 << j) - 1;
            let mut us: Vec<Vertex> = (0..1u32 << n).filter(|u| u >> j & 1 == 0).collect();
            us.sort_by_key(|u| ((u & low).count_ones(), *u));
            for u in us {
                if u & low == 0 {
                    continue;
                }
                let i = u.trailing_zeros() as usize;
                let w = u & !(1 << i);
                let t = targets[&(w, i as u8, j as u8)];
                let value = t ^ self.epsilon(w, i) ^ self.epsilon(w, j) ^ self.epsilon(w | 1 << j, i);
                self.eps[u as usize * n + j] = value;
            }
        }
        for (&(w, i, j), &t) in &targets {
            let (i, j) = (i as usize, j as usize);
            let sum = self.epsilon(w, i)
                ^ self.epsilon(w, j)
                ^ self.epsilon(w | 1 << i, j)
                ^ self.epsilon(w | 1 << j, i);
            if sum != t {
                return Err(CubeError::NoValidAssignment(format!(
                    "inconsistent face at {w:b} in directions {i},{j}"
                )));
            }
        }
        Ok(())
    }
}
