use std::collections::BTreeMap;

use khsq_algebra::{AbelianGroup, IntMatrix};
use khsq_cube::*;
use khsq_link::{braid_closure, parse_pd, parse_table, KnotTable, LinkDiagram};
use proptest::prelude::*;

const TREFOIL: &str = "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]";

fn data(file: &str) -> String {
    std::fs::read_to_string(std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(file))
        .unwrap()
}

fn table() -> KnotTable {
    parse_table(&data("knots.pdtab")).unwrap()
}

type Groups = BTreeMap<(i32, i32), AbelianGroup>;

/// Parses a polynomial such as `q+t^(2)*q^(5)+t^(3)*q^(7)*T^(2)` where a
/// factor `T^(k)` marks a cyclic summand of order `k`.
fn parse_poly(text: &str) -> Groups {
    let mut out = Groups::new();
    for term in text.split('+').filter(|s| !s.is_empty()) {
        let (mut coef, mut i, mut j, mut torsion) = (1usize, 0i32, 0i32, None);
        for factor in term.split('*') {
            let exp = |f: &str| -> i32 {
                match f.split_once('^') {
                    Some((_, e)) => e.trim_matches(|c| c == '(' || c == ')').parse().unwrap(),
                    None => 1,
                }
            };
            match factor.chars().next().unwrap() {
                't' => i = exp(factor),
                'q' => j = exp(factor),
                'T' => torsion = Some(exp(factor) as u64),
                _ => coef = factor.parse().unwrap(),
            }
        }
        let g = out.entry((i, j)).or_default();
        match torsion {
            Some(t) => g.torsion.extend(std::iter::repeat_n(t, coef)),
            None => g.free += coef,
        }
    }
    for g in out.values_mut() {
        g.torsion.sort_unstable();
    }
    out
}

/// Unreduced odd homology from the reduced one: two copies shifted by `q^{±1}`.
fn unreduce(reduced: &Groups) -> Groups {
    let mut out = Groups::new();
    for (&(i, j), g) in reduced {
        for dj in [-1, 1] {
            let e = out.entry((i, j + dj)).or_default();
            e.free += g.free;
            e.torsion.extend(&g.torsion);
            e.torsion.sort_unstable();
        }
    }
    out
}

fn reference() -> BTreeMap<String, (Groups, Groups)> {
    data("khovanov_reference.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].to_string(), (parse_poly(f[2]), unreduce(&parse_poly(f[3]))))
        })
        .collect()
}

fn crossing_number(name: &str) -> usize {
    name.trim_start_matches('K').split(|c: char| !c.is_ascii_digit()).next().unwrap().parse().unwrap()
}

#[test]
fn trefoil_resolutions() {
    let d = parse_pd(TREFOIL).unwrap();
    assert_eq!(resolve(&d, 0b000).n_circles, 2);
    assert_eq!(resolve(&d, 0b111).n_circles, 3);
    let u = parse_pd("U^1").unwrap();
    assert_eq!(resolve(&u, 0).n_circles, 1);
}

#[test]
fn sign_and_index_examples() {
    assert_eq!(standard_sign(0b1, 0), Ok(0));
    assert_eq!(index(0b1, 0), Ok(0));
    assert_eq!(standard_sign(0b101, 0b001), Ok(1));
    assert_eq!(index(0b101, 0b001), Ok(1));
    assert_eq!(standard_sign(0b111, 0b101), Ok(1));
    assert_eq!(index(0b111, 0b101), Ok(1));
    assert!(matches!(index(0b11, 0), Err(CubeError::NotAnEdge { .. })));
    assert!(matches!(index(0b01, 0b10), Err(CubeError::NotAnEdge { .. })));
}

#[test]
fn standard_signs_anticommute_on_every_face() {
    for n in 2..6usize {
        for w in 0..1u32 << n {
            for i in 0..n {
                for j in i + 1..n {
                    if w >> i & 1 == 0 && w >> j & 1 == 0 {
                        let sum = edge_sign(w, i) ^ edge_sign(w, j) ^ edge_sign(w | 1 << i, j) ^ edge_sign(w | 1 << j, i);
                        assert_eq!(sum, 1);
                    }
                }
            }
        }
    }
}

fn group(free: usize, torsion: &[u64]) -> AbelianGroup {
    AbelianGroup { free, torsion: torsion.to_vec() }
}

#[test]
fn trefoil_even_homology() {
    let cube = Cube::new(&parse_pd(TREFOIL).unwrap()).unwrap();
    let h = cube.homology_z(Parity::Even).unwrap();
    let expected: Groups = [
        ((0, 1), group(1, &[])),
        ((0, 3), group(1, &[])),
        ((2, 5), group(1, &[])),
        ((3, 7), group(0, &[2])),
        ((3, 9), group(1, &[])),
    ]
    .into_iter()
    .collect();
    assert_eq!(h, expected);
}

#[test]
fn trefoil_odd_homology_is_torsion_free() {
    let cube = Cube::new(&parse_pd(TREFOIL).unwrap()).unwrap();
    let h = cube.homology_z(Parity::Odd).unwrap();
    assert!(h.values().all(|g| g.torsion.is_empty()));
    assert_eq!(h.values().map(|g| g.free).sum::<usize>(), 6);
}

#[test]
fn unknot_diagrams() {
    let expected: Groups = [((0, -1), group(1, &[])), ((0, 1), group(1, &[]))].into_iter().collect();
    for pd in ["U^1", "X[1,2,2,1]", "X[2,1,1,2]"] {
        let d = parse_pd(pd).unwrap();
        let cube = Cube::new(&d).unwrap();
        assert_eq!(cube.homology_z(Parity::Even).unwrap(), expected, "{pd}");
        assert_eq!(cube.homology_z(Parity::Odd).unwrap(), expected, "{pd}");
    }
}

fn check_against_reference(max_crossings: usize) {
    let table = table();
    let reference = reference();
    let mut checked = 0;
    for (name, (even, odd)) in &reference {
        if crossing_number(name) > max_crossings {
            continue;
        }
        let cube = Cube::new(&table.lookup(name).unwrap()).unwrap();
        assert_eq!(&cube.homology_z(Parity::Even).unwrap(), even, "even homology of {name}");
        assert_eq!(&cube.homology_z(Parity::Odd).unwrap(), odd, "odd homology of {name}");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn matches_reference_homology_up_to_eleven_crossings() {
    check_against_reference(11);
}

#[test]
fn eight_nineteen_matches_reference() {
    let cube = Cube::new(&table().lookup("8_19").unwrap()).unwrap();
    let (even, odd) = &reference()["8_19"];
    assert_eq!(&cube.homology_z(Parity::Even).unwrap(), even);
    assert_eq!(&cube.homology_z(Parity::Odd).unwrap(), odd);
}

#[test]
fn mirror_reflects_homology() {
    let d = table().lookup("5_2").unwrap();
    let h = Cube::new(&d).unwrap().homology_z(Parity::Even).unwrap();
    let m = Cube::new(&d.mirror()).unwrap().homology_z(Parity::Even).unwrap();
    let mut expected = Groups::new();
    for (&(i, j), g) in &h {
        if g.free > 0 {
            expected.entry((-i, -j)).or_default().free += g.free;
        }
        if !g.torsion.is_empty() {
            expected.entry((1 - i, -j)).or_default().torsion.extend(&g.torsion);
        }
    }
    assert_eq!(m, expected);
    let f2 = Cube::new(&d).unwrap().homology_f2().unwrap();
    let mf2 = Cube::new(&d.mirror()).unwrap().homology_f2().unwrap();
    let reflected: BTreeMap<(i32, i32), usize> = f2.iter().map(|(&(i, j), &n)| ((-i, -j), n)).collect();
    assert_eq!(mf2, reflected);
}

fn odd_d_squared_vanishes(cube: &Cube, eps: &dyn Fn(u32, usize) -> u8) -> bool {
    let n = cube.n_crossings();
    for q in cube.quantum_gradings() {
        let c = cube.complex(q, Parity::Even);
        let mats: Vec<IntMatrix> = (0..c.gens.len().saturating_sub(1))
            .map(|k| {
                let columns = c.gens[k]
                    .iter()
                    .map(|&gid| {
                        let (u, mask) = cube.generator(gid);
                        let mut col = Vec::new();
                        for j in 0..n {
                            let Some(e) = cube.edge(u, j) else { continue };
                            let sign = edge_sign(u, j) ^ eps(u, j);
                            for &(m, coef) in e.odd_images(mask).as_slice() {
                                let v = if sign == 1 { -coef } else { coef } as i64;
                                col.push((cube.local_index(cube.gid(u | 1 << j, m)) as u32, v));
                            }
                        }
                        col
                    })
                    .collect();
                IntMatrix::from_columns(c.gens[k + 1].len(), columns)
            })
            .collect();
        for w in mats.windows(2) {
            if !w[1].compose(&w[0]).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

#[test]
fn hopf_link_exhaustive_sign_search() {
    let d = parse_pd("X[4,1,3,2],X[2,3,1,4]").unwrap();
    let cube = Cube::new(&d).unwrap();
    let edges: Vec<(u32, usize)> =
        (0..4u32).flat_map(|u| (0..2).map(move |j| (u, j))).filter(|&(u, j)| u >> j & 1 == 0).collect();
    assert_eq!(edges.len(), 4);
    let mut valid = 0;
    for choice in 0..1u32 << edges.len() {
        let eps = |u: u32, j: usize| {
            let k = edges.iter().position(|&e| e == (u, j)).unwrap();
            (choice >> k & 1) as u8
        };
        if odd_d_squared_vanishes(&cube, &eps) {
            valid += 1;
        }
    }
    assert!(valid > 0);
    assert!(odd_d_squared_vanishes(&cube, &|u, j| cube.epsilon(u, j)));
}

#[test]
fn spectrum_parity() {
    assert_eq!(Parity::for_l(0), Parity::Even);
    assert_eq!(Parity::for_l(3), Parity::Odd);
}

fn random_diagram() -> impl Strategy<Value = LinkDiagram> {
    (2usize..5, proptest::collection::vec((1i32..4, any::<bool>()), 1..7), 0usize..2).prop_map(
        |(strands, letters, loops)| {
            let word: Vec<i32> = letters
                .iter()
                .map(|&(i, pos)| {
                    let i = 1 + (i - 1) % (strands as i32 - 1);
                    if pos { i } else { -i }
                })
                .collect();
            braid_closure(strands, &word).with_free_loops(loops)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn d_squared_is_zero_and_reductions_agree(d in random_diagram()) {
        let cube = Cube::new(&d).unwrap();
        for q in cube.quantum_gradings() {
            let even = cube.complex(q, Parity::Even);
            let odd = cube.complex(q, Parity::Odd);
            prop_assert!(even.check_d_squared());
            prop_assert!(odd.check_d_squared());
            for (a, b) in even.d.iter().zip(&odd.d) {
                prop_assert_eq!(a.mod2(), b.mod2());
                let sq: Vec<_> = even.d.windows(2).map(|w| w[1].mod2().compose(&w[0].mod2()).unwrap().is_zero()).collect();
                prop_assert!(sq.iter().all(|&z| z));
            }
            for k in 0..even.d.len() {
                for &gid in &even.gens[k] {
                    let (i, j) = cube.gid_grading(gid);
                    prop_assert_eq!((i, j), (even.i_min + k as i32, q));
                }
            }
        }
    }

    #[test]
    fn universal_coefficients_hold(d in random_diagram()) {
        let cube = Cube::new(&d).unwrap();
        let f2 = cube.homology_f2().unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            let h = cube.homology_z(parity).unwrap();
            let zero = AbelianGroup::default();
            for (i, j) in cube.bidegrees() {
                let here = h.get(&(i, j)).unwrap_or(&zero);
                let next = h.get(&(i + 1, j)).unwrap_or(&zero);
                let predicted = khsq_algebra::universal_coefficients_f2(here, next);
                prop_assert_eq!(predicted, f2.get(&(i, j)).copied().unwrap_or(0));
            }
        }
    }
}
