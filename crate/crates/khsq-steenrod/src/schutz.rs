use khsq_cube::{Cube, Vertex};
use khsq_moduli::{BoundaryGraph, Chain};

use crate::facet::reduced;

/// The standard frame value `(i - 1)(j - i - 1)` of the face from `w` down
/// to `w` minus two crossings, where `i < j` are their positions in `w`.
pub fn standard_frame(w: Vertex, c1: u8, c2: u8) -> u8 {
    let (lo, hi) = (c1.min(c2), c1.max(c2));
    let pos = |c: u8| (w & ((1u32 << c) - 1)).count_ones() + 1;
    let (i, j) = (pos(lo), pos(hi));
    ((i - 1) * (j - i - 1) % 2) as u8
}

/// The frame value `f_ε` of the interval with endpoints `first` and
/// `second`. The lower edges are `a = first.p`, `b = second.p` and the
/// upper edges are `c = second.q`, `d = first.q`.
pub fn frame_value(cube: &Cube, first: &Chain, second: &Chain, eps: u8) -> u8 {
    let (w, _) = cube.generator(first.z());
    let base = standard_frame(w, first.p.crossing, first.q.crossing);
    let (a, b) = (first.p.s(), second.p.s());
    let (c, d) = (second.q.s(), first.q.s());
    let key = (first.p.sigma, second.p.sigma, second.q.sigma, first.q.sigma);
    let diff = match key {
        (0, 0, 0, 0) => 0,
        (1, 1, 0, 0) => 1,
        (0, 0, 1, 1) => c ^ d,
        (1, 0, 0, 1) => a,
        (0, 1, 1, 0) => b,
        (1, 0, 1, 0) => eps ^ b,
        (0, 1, 0, 1) => eps ^ a,
        (1, 1, 1, 1) => a ^ b,
        _ => panic!("interval violates the sign criterion"),
    };
    base ^ diff
}

/// The closed form of the frame sum for `ε = 1`, in terms of facet labels
/// and signs.
pub fn frame_value_closed(first: &Chain, second: &Chain) -> u8 {
    let (a, b) = (first.q.s_z, second.q.s_z);
    let sigma_e = first.p.sigma ^ first.q.sigma;
    let v = a * b
        + sigma_e as u32
        + reduced(b, a) * first.q.sigma as u32
        + reduced(a, b) * second.q.sigma as u32;
    (v % 2) as u8
}

/// The value `1 + F(C) + D(C)` of a cycle in a boundary graph built in
/// signwise mode.
pub fn schutz_value(cube: &Cube, g: &BoundaryGraph, cycle: &[usize], eps: u8) -> u8 {
    let r = cycle.len();
    let mut v = 1u8;
    for k in (1..r).step_by(2) {
        let (x, y) = (cycle[k], cycle[(k + 1) % r]);
        v ^= frame_value(cube, &g.vertices[x].chain, &g.vertices[y].chain, eps);
    }
    for k in (0..r).step_by(2) {
        if g.tail[cycle[k]] == Some(true) {
            v ^= 1;
        }
    }
    v
}
