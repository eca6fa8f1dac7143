use std::collections::BTreeMap;
use std::path::PathBuf;

use khsq_algebra::{complex_cohomology_z, AbelianGroup, F2Matrix, IntMatrix};
use khsq_classify::{
    check_hypotheses, parse_st_reference, st_ranks, st_table, st_tables, st_tuple, wedge, ClassifyError, StTable,
    Summand,
};
use khsq_cube::{Cube, Parity};
use khsq_link::{braid_closure, load_named, LinkDiagram};
use khsq_steenrod::MatchingChoice;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn knot(name: &str) -> LinkDiagram {
    load_named(data("knots.pdtab"), name).unwrap()
}

fn matrix(rows: usize, columns: &[&[u32]]) -> F2Matrix {
    F2Matrix::from_columns(rows, columns.iter().map(|c| c.to_vec()).collect())
}

fn tuple_of(sq2: &F2Matrix, sq1_i: &F2Matrix, sq1_next: &F2Matrix) -> [usize; 4] {
    st_tuple(st_ranks(sq2, sq1_i, sq1_next).unwrap()).unwrap()
}

// The four model spectra, with their mod 2 cohomology in three consecutive
// degrees and Sq^1, Sq^2 from the Cartan formula and Sq^k x^n = C(n,k) x^{n+k}.

#[test]
fn complex_projective_plane() {
    let sq2 = matrix(1, &[&[0]]);
    assert_eq!(tuple_of(&sq2, &F2Matrix::zero(0, 1), &F2Matrix::zero(1, 0)), [1, 0, 0, 0]);
}

#[test]
fn stunted_projective_space_five_over_two() {
    // Cells x^3, x^4, x^5: Sq^1 x^3 = x^4, Sq^1 x^4 = 0, Sq^2 x^3 = x^5.
    let sq2 = matrix(1, &[&[0]]);
    let sq1_i = matrix(1, &[&[0]]);
    let sq1_next = matrix(1, &[&[]]);
    assert_eq!(tuple_of(&sq2, &sq1_i, &sq1_next), [0, 1, 0, 0]);
}

#[test]
fn stunted_projective_space_four_over_one() {
    // Cells x^2, x^3, x^4: Sq^1 x^2 = 0, Sq^1 x^3 = x^4, Sq^2 x^2 = x^4.
    let sq2 = matrix(1, &[&[0]]);
    let sq1_i = matrix(1, &[&[]]);
    let sq1_next = matrix(1, &[&[0]]);
    assert_eq!(tuple_of(&sq2, &sq1_i, &sq1_next), [0, 0, 1, 0]);
}

#[test]
fn smash_of_projective_planes() {
    // Basis a1b1 | a1b2, a2b1 | a2b2 with Sq^1 a1 = a2 and Sq^1 a2 = 0.
    let sq2 = matrix(1, &[&[0]]);
    let sq1_i = matrix(2, &[&[0, 1]]);
    let sq1_next = matrix(1, &[&[0], &[0]]);
    assert_eq!(tuple_of(&sq2, &sq1_i, &sq1_next), [0, 0, 0, 1]);
}

#[test]
fn tuples_add_over_wedges() {
    // CP^2 wedge RP^4/RP^1: block diagonal maps.
    let sq2 = matrix(2, &[&[0], &[1]]);
    let sq1_i = matrix(1, &[&[], &[]]);
    let sq1_next = matrix(2, &[&[1]]);
    assert_eq!(tuple_of(&sq2, &sq1_i, &sq1_next), [1, 0, 1, 0]);
}

#[test]
fn negative_tuples_are_rejected() {
    assert_eq!(st_tuple([1, 1, 1, 1]), Some([0, 0, 1, 0]));
    assert_eq!(st_tuple([1, 0, 0, 1]), None);
    assert_eq!(st_tuple([0, 1, 0, 0]), None);
}

fn groups(entries: &[((i32, i32), usize, &[u64])]) -> BTreeMap<(i32, i32), AbelianGroup> {
    entries
        .iter()
        .map(|&(ij, free, torsion)| (ij, AbelianGroup { free, torsion: torsion.to_vec() }))
        .collect()
}

#[test]
fn trefoil_satisfies_hypotheses() {
    let cube = Cube::new(&knot("3_1")).unwrap();
    for parity in [Parity::Even, Parity::Odd] {
        let report = check_hypotheses(&cube.homology_z(parity).unwrap());
        assert!(report.passes(), "{parity:?}: {report:?}");
    }
}

#[test]
fn eight_nineteen_satisfies_hypotheses() {
    let cube = Cube::new(&knot("8_19")).unwrap();
    for parity in [Parity::Even, Parity::Odd] {
        assert!(check_hypotheses(&cube.homology_z(parity).unwrap()).passes(), "{parity:?}");
    }
}

#[test]
fn order_four_torsion_from_a_complex_fails_the_torsion_condition() {
    let d = IntMatrix::from_dense(&[vec![4]]);
    let h = complex_cohomology_z(&[1, 1], &[d]).unwrap();
    assert_eq!(h[1].torsion, vec![4]);
    let kh: BTreeMap<(i32, i32), AbelianGroup> =
        [((0, 1), AbelianGroup { free: 1, torsion: vec![] }), ((1, 1), h[1].clone())].into_iter().collect();
    let report = check_hypotheses(&kh);
    assert!(report.three_diagonals());
    assert_eq!(report.bad_torsion, vec![((1, 1), 4)]);
    assert!(!report.passes());
}

#[test]
fn hypothesis_failures_are_located() {
    let kh = groups(&[((0, 1), 1, &[]), ((0, 3), 1, &[]), ((3, 7), 0, &[2]), ((4, 1), 1, &[]), ((2, 5), 0, &[9])]);
    let report = check_hypotheses(&kh);
    assert_eq!(report.sigma, Some(-3));
    assert_eq!(report.off_diagonal, vec![(4, 1)]);
    assert_eq!(report.bad_torsion, vec![((2, 5), 9)]);
    assert!(report.untwisted_lowest_diagonal());

    let kh = groups(&[((0, 1), 1, &[]), ((1, 5), 0, &[2]), ((2, 5), 0, &[3])]);
    let report = check_hypotheses(&kh);
    assert_eq!(report.sigma, Some(-3));
    assert_eq!(report.lowest_torsion, vec![(1, 5)]);
    assert!(report.small_torsion());
}

#[test]
fn eleven_nineteen_odd_has_order_four_torsion() {
    let cube = Cube::new(&knot("K11n19")).unwrap();
    let report = check_hypotheses(&cube.homology_z(Parity::Odd).unwrap());
    assert!(!report.small_torsion());
    assert!(report.bad_torsion.iter().all(|&(_, t)| t == 4));
    assert!(check_hypotheses(&cube.homology_z(Parity::Even).unwrap()).passes());
}

fn wedges(name: &str, l: u32) -> Vec<khsq_classify::WedgeDecomposition> {
    let cube = Cube::new(&knot(name)).unwrap();
    let kh = cube.homology_z(Parity::for_l(l)).unwrap();
    let report = check_hypotheses(&kh);
    let st = st_table(&cube, l, MatchingChoice::Canonical).unwrap();
    cube.quantum_gradings().into_iter().map(|j| wedge(&kh, &report, &st, j).unwrap()).collect()
}

#[test]
fn trefoil_spectra_are_moore_wedges() {
    for l in 0..4 {
        assert!(wedges("3_1", l).iter().all(|w| w.is_moore_wedge()), "l={l}");
    }
}

#[test]
fn eight_nineteen_second_spectrum_is_a_moore_wedge() {
    assert!(wedges("8_19", 2).iter().all(|w| w.is_moore_wedge()));
}

#[test]
fn eight_nineteen_third_spectrum_has_a_stunted_projective_summand() {
    let w = wedges("8_19", 3).into_iter().find(|w| w.j == 11).unwrap();
    assert_eq!(w.summands.get(&Summand::Rp4Rp1 { shift: 0 }), Some(&1));
    assert_eq!(w.summands.keys().filter(|s| !s.is_moore()).count(), 1);
}

#[test]
fn wedge_needs_the_hypotheses() {
    let kh = groups(&[((0, 1), 1, &[4])]);
    let report = check_hypotheses(&kh);
    let st = StTable { l: 1, entries: Vec::new() };
    assert_eq!(wedge(&kh, &report, &st, 1), Err(ClassifyError::HypothesesFail));
}

fn all_tables(d: &LinkDiagram) -> Vec<StTable> {
    st_tables(&Cube::new(d).unwrap(), &[0, 1, 2, 3], MatchingChoice::Canonical).unwrap()
}

#[test]
fn st_is_a_knot_invariant() {
    let torus = [1, 2, 1, 2, 1, 2, 1, 2];
    let stabilized = [1, 2, 1, 2, 1, 2, 1, 2, 3];
    let with_cancelling_pair = [1, 2, 1, 2, -1, 1, 1, 2, 1, 2];
    let conjugated = [2, 1, 2, 1, 2, 1, 2, 1];
    let base = all_tables(&braid_closure(3, &torus));
    assert!(base.iter().any(|t| !t.is_trivial()));
    assert_eq!(base, all_tables(&braid_closure(4, &stabilized)));
    assert_eq!(base, all_tables(&braid_closure(3, &with_cancelling_pair)));
    assert_eq!(base, all_tables(&braid_closure(3, &conjugated)));
}

#[test]
fn st_does_not_depend_on_the_matching() {
    let cube = Cube::new(&knot("10_132")).unwrap();
    let base = st_tables(&cube, &[0, 1, 2, 3], MatchingChoice::Canonical).unwrap();
    for seed in [7, 8] {
        assert_eq!(base, st_tables(&cube, &[0, 1, 2, 3], MatchingChoice::Random(seed)).unwrap());
    }
}

#[test]
fn reference_table_parses() {
    let text = std::fs::read_to_string(data("st_table.tsv")).unwrap();
    let reference = parse_st_reference(&text).unwrap();
    assert_eq!(reference.expected("8_19", 3).unwrap(), [((2, 11), [0, 0, 1, 0])].into_iter().collect());
    assert!(reference.expected("8_19", 1).unwrap().is_empty());
    assert!(reference.expected("3_1", 1).is_none());
    assert!(matches!(
        parse_st_reference("8_19\t3\t2\t11\t0,0,1"),
        Err(ClassifyError::BadTableLine { line: 1, .. })
    ));
}
