use std::path::PathBuf;

use khsq_cube::{Arrow, Cube, Parity};
use khsq_link::{braid_closure, load_named, LinkDiagram};
use khsq_moduli::{
    boundary_points, build_gammas, check_interval_signs, interval_pairs, BoundaryGraph,
    GammaMode, GammaVertex, Matching, ModuliError,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn knot(name: &str) -> LinkDiagram {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/knots.pdtab");
    load_named(path, name).unwrap()
}

/// Every generator pair two degrees apart, checked for interval structure.
fn check_all_intervals(cube: &Cube) -> Result<usize, ModuliError> {
    let mut intervals = 0;
    for x in 0..cube.n_generators() {
        let (u, _) = cube.generator(x);
        let (i, j) = cube.gid_grading(x);
        for z in cube.block(i + 2, j) {
            let (v, _) = cube.generator(*z);
            if u & !v != 0 {
                continue;
            }
            let pairs = interval_pairs(cube, x, *z)?;
            let mut chains = 0;
            for a in cube.arrows(x) {
                chains += cube.arrows(a.target).iter().filter(|b| b.target == *z).count();
            }
            assert_eq!(2 * pairs.len(), chains);
            assert!(chains == 0 || chains == 2 || chains == 4);
            for (a, b) in &pairs {
                assert_ne!(a.p.crossing, b.p.crossing);
                assert_eq!((a.x, a.z()), (b.x, b.z()));
            }
            check_interval_signs(cube, x, *z)?;
            intervals += pairs.len();
        }
    }
    Ok(intervals)
}

/// F2 cocycle representatives in every bidegree, as generator id lists.
fn cocycles(cube: &Cube) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for q in cube.quantum_gradings() {
        let c = cube.complex(q, Parity::Even);
        for i in c.i_min..=c.i_max() {
            let h = c.f2_cohomology(i).unwrap();
            let gens = &c.gens[(i - c.i_min) as usize];
            for rep in h.representatives() {
                out.push(rep.ones().map(|k| gens[k]).collect());
            }
        }
    }
    out
}

fn check_gammas(cube: &Cube, matching: &Matching) {
    for mode in [GammaMode::Paper, GammaMode::Schutz] {
        for g in build_gammas(cube, matching, mode).unwrap().values() {
            assert!(g.is_well_formed());
            let mut covered = 0;
            for cycle in g.cycles() {
                assert_eq!(cycle.len() % 2, 0);
                covered += cycle.len();
                let equal = cycle
                    .chunks(2)
                    .filter(|e| g.vertices[e[0]].big_s() == g.vertices[e[1]].big_s())
                    .count();
                assert_eq!(equal % 2, 0, "S-equal matched edges must come in pairs");
                for e in cycle.chunks(2) {
                    assert_eq!(g.vertices[e[0]].chain.q, g.vertices[e[1]].chain.q);
                }
            }
            assert_eq!(covered, g.len());
        }
    }
}

#[test]
fn trefoil_intervals_satisfy_sign_criterion() {
    let cube = Cube::new(&knot("3_1")).unwrap();
    assert!(check_all_intervals(&cube).unwrap() > 0);
}

#[test]
fn ladybug_knots_satisfy_sign_criterion() {
    for name in ["4_1", "5_2", "6_1", "8_19"] {
        let cube = Cube::new(&knot(name)).unwrap();
        check_all_intervals(&cube).unwrap();
    }
}

#[test]
fn canonical_matching_orders_by_index() {
    let cube = Cube::new(&knot("5_1")).unwrap();
    for mu in cocycles(&cube) {
        let m = Matching::canonical(&cube, &mu).unwrap();
        assert!(m.respects_index_order());
        for (y, pairs) in m.pairs() {
            for p in pairs {
                assert_eq!((p.first.target(), p.second.target()), (*y, *y));
            }
        }
        check_gammas(&cube, &m);
        check_gammas(&cube, &m.signwise());
    }
}

#[test]
fn signwise_matching_orders_only_equal_signs() {
    let cube = Cube::new(&knot("6_2")).unwrap();
    for mu in cocycles(&cube) {
        let m = Matching::canonical(&cube, &mu).unwrap().signwise();
        for p in m.pairs().values().flatten() {
            assert_eq!(p.ordered, p.first.arrow.big_s() == p.second.arrow.big_s());
        }
    }
}

#[test]
fn non_cocycle_has_odd_boundary() {
    let cube = Cube::new(&knot("3_1")).unwrap();
    let x = (0..cube.n_generators()).find(|&g| !cube.arrows(g).is_empty()).unwrap();
    let err = Matching::canonical(&cube, &[x]).unwrap_err();
    assert!(matches!(err, ModuliError::OddBoundary { .. }));
    assert!(boundary_points(&cube, &[x]).values().any(|v| v.len() % 2 == 1));
}

fn arrow(s_z: u32, sigma: u8) -> Arrow {
    Arrow { target: 0, crossing: 0, s_z, sigma }
}

/// Six chains over three matched pairs, joined in one cycle. The matched
/// pairs have facet labels 3, 2, 0; the point signs are `0,0`, `0,1`, `1,1`.
fn six_vertex_fixture(schutz: bool) -> BoundaryGraph {
    let labels = [3, 2, 0];
    let signs = [(0, 0), (1, 0), (1, 1)];
    let mut vertices = Vec::new();
    let mut tail = Vec::new();
    for k in 0..3 {
        let q = arrow(labels[k], 0);
        vertices.push(GammaVertex::new(2 * k, arrow(0, signs[k].0), q));
        vertices.push(GammaVertex::new(2 * k + 1, arrow(0, signs[k].1), q));
        let directed = !schutz || signs[k].0 == signs[k].1;
        let forward = k != 1;
        tail.extend(if !directed {
            [None, None]
        } else {
            [Some(forward), Some(!forward)]
        });
    }
    BoundaryGraph {
        z: 0,
        vertices,
        interval: vec![5, 2, 1, 4, 3, 0],
        matched: vec![1, 0, 3, 2, 5, 4],
        tail,
    }
}

#[test]
fn six_vertex_fixture_is_one_cycle() {
    for schutz in [false, true] {
        let g = six_vertex_fixture(schutz);
        assert!(g.is_well_formed());
        assert_eq!(g.cycles(), vec![vec![0, 1, 2, 3, 4, 5]]);
        let directed = g.tail.iter().filter(|t| **t == Some(true)).count();
        assert_eq!(directed, if schutz { 2 } else { 3 });
    }
}

fn random_diagram() -> impl Strategy<Value = LinkDiagram> {
    (2usize..5, proptest::collection::vec((1i32..4, any::<bool>()), 1..7)).prop_map(
        |(strands, letters)| {
            let word: Vec<i32> = letters
                .iter()
                .map(|&(i, pos)| {
                    let i = 1 + (i - 1) % (strands as i32 - 1);
                    if pos { i } else { -i }
                })
                .collect();
            braid_closure(strands, &word)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn intervals_and_gammas_on_random_diagrams(d in random_diagram(), seed in any::<u64>()) {
        let cube = Cube::new(&d).unwrap();
        prop_assert!(check_all_intervals(&cube).is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for mu in cocycles(&cube) {
            let m = Matching::random(&cube, &mu, &mut rng).unwrap();
            prop_assert!(m.respects_index_order());
            check_gammas(&cube, &m);
        }
    }
}
