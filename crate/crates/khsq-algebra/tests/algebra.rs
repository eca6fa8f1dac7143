use khsq_algebra::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense_f2_rank(mut a: Vec<Vec<u8>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] == 1) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] == 1 {
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

fn random_f2(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> (F2Matrix, Vec<Vec<u8>>) {
    let dense: Vec<Vec<u8>> =
        (0..rows).map(|_| (0..cols).map(|_| rng.gen_bool(density) as u8).collect()).collect();
    let columns = (0..cols)
        .map(|j| (0..rows).filter(|&i| dense[i][j] == 1).map(|i| i as u32).collect())
        .collect();
    (F2Matrix::from_columns(rows, columns), dense)
}

#[test]
fn identity_has_full_rank_and_zero_kernel() {
    let id = F2Matrix::identity(37);
    assert_eq!(id.rank(), 37);
    assert!(f2_kernel_basis(&id).is_empty());
    let z = F2Matrix::zero(5, 9);
    assert_eq!(z.rank(), 0);
    assert_eq!(f2_kernel_basis(&z).len(), 9);
}

#[test]
fn random_square_rank_matches_dense_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for density in [0.05, 0.2, 0.5] {
        let (m, dense) = random_f2(&mut rng, 64, 64, density);
        assert_eq!(m.rank(), dense_f2_rank(dense));
    }
}

#[test]
fn kernel_vectors_are_killed_and_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (m, _) = random_f2(&mut rng, 30, 70, 0.1);
    let ker = f2_kernel_basis(&m);
    assert_eq!(ker.len(), 70 - m.rank());
    for v in &ker {
        assert!(m.apply(v).unwrap().is_clear());
    }
    let as_matrix = F2Matrix::from_columns(70, ker.iter().map(|v| v.ones().map(|i| i as u32).collect()).collect());
    assert_eq!(as_matrix.rank(), ker.len());
}

#[test]
fn solve_recovers_a_preimage() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (m, _) = random_f2(&mut rng, 40, 50, 0.1);
    let x = f2_from_indices(50, [1, 4, 9, 33]);
    let b = m.apply(&x).unwrap();
    let y = f2_solve(&m, &b).unwrap();
    assert_eq!(m.apply(&y).unwrap(), b);
    let zero = F2Matrix::zero(3, 2);
    assert_eq!(f2_solve(&zero, &f2_from_indices(3, [0])), Err(AlgebraError::NoSolution));
}

#[test]
fn next_one_crosses_word_boundaries() {
    let v = f2_from_indices(200, [3, 64, 130, 199]);
    assert_eq!(next_one(&v, 0), Some(3));
    assert_eq!(next_one(&v, 4), Some(64));
    assert_eq!(next_one(&v, 65), Some(130));
    assert_eq!(next_one(&v, 131), Some(199));
    assert_eq!(next_one(&v, 200), None);
}

#[test]
fn intersection_dimension() {
    let a = vec![f2_from_indices(4, [0]), f2_from_indices(4, [1])];
    let b = vec![f2_from_indices(4, [0, 1]), f2_from_indices(4, [2])];
    assert_eq!(f2_intersection_dim(4, &a, &b), 1);
}

fn big(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[test]
fn diagonal_two_three_becomes_one_six() {
    let snf = smith_normal_form(&big(&[vec![2, 0], vec![0, 3]]));
    assert_eq!(snf.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    let inv = IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]).invariants();
    assert_eq!(inv.rank, 2);
    assert_eq!(inv.factors, vec![BigInt::from(6)]);
}

/// Invariant factors from gcds of k x k minors.
fn determinantal_factors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    };
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(a[i][j])).collect()).collect();
                g = g.gcd(&determinant(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    (1..divisors.len()).map(|k| &divisors[k] / &divisors[k - 1]).collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r)
    })
}

proptest! {
    #[test]
    fn snf_certificate(a in small_matrix()) {
        let snf = smith_normal_form(&big(&a));
        prop_assert_eq!(&mat_mul(&mat_mul(&snf.u, &big(&a)), &snf.v), &snf.d);
        prop_assert_eq!(determinant(&snf.u).abs(), BigInt::from(1));
        prop_assert_eq!(determinant(&snf.v).abs(), BigInt::from(1));
        for (i, row) in snf.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j || i >= snf.diagonal.len() {
                    prop_assert!(x.is_zero());
                }
            }
        }
        for w in snf.diagonal.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(&snf.diagonal, &determinantal_factors(&a));
    }

    #[test]
    fn sparse_invariants_match_dense(a in small_matrix()) {
        let inv = IntMatrix::from_dense(&a).invariants();
        let diag = determinantal_factors(&a);
        prop_assert_eq!(inv.rank, diag.len());
        let nontrivial: Vec<BigInt> = diag.into_iter().filter(|d| *d != BigInt::from(1)).collect();
        prop_assert_eq!(inv.factors, nontrivial);
    }

    #[test]
    fn f2_rank_matches_dense(seed in any::<u64>(), rows in 1usize..40, cols in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, dense) = random_f2(&mut rng, rows, cols, 0.15);
        prop_assert_eq!(m.rank(), dense_f2_rank(dense));
    }
}

#[test]
fn sparse_elimination_on_larger_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let rows = rng.gen_range(5..9);
        let cols = rng.gen_range(5..9);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if rng.gen_bool(0.3) { [-2, -1, 1, 2][rng.gen_range(0..4)] } else { 0 })
                    .collect()
            })
            .collect();
        let inv = IntMatrix::from_dense(&a).invariants();
        let diag = smith_diagonal(&big(&a));
        assert_eq!(inv.rank, diag.len());
        let nontrivial: Vec<BigInt> = diag.into_iter().filter(|d| *d != BigInt::from(1)).collect();
        assert_eq!(inv.factors, nontrivial);
    }
}

/// Cellular cochains of the real projective plane: Z -0-> Z -2-> Z.
fn rp2() -> (Vec<usize>, Vec<IntMatrix>) {
    (
        vec![1, 1, 1],
        vec![IntMatrix::zero(1, 1), IntMatrix::from_dense(&[vec![2]])],
    )
}

#[test]
fn projective_plane_cohomology() {
    let (dims, d) = rp2();
    let h = complex_cohomology_z(&dims, &d).unwrap();
    assert_eq!(h[0], AbelianGroup { free: 1, torsion: vec![] });
    assert_eq!(h[1], AbelianGroup::default());
    assert_eq!(h[2], AbelianGroup { free: 0, torsion: vec![2] });
    assert_eq!(h[2].to_string(), "Z/2");
    let f2: Vec<usize> = (0..3)
        .map(|k| universal_coefficients_f2(&h[k], h.get(k + 1).unwrap_or(&AbelianGroup::default())))
        .collect();
    assert_eq!(f2, vec![1, 1, 1]);
}

#[test]
fn projective_plane_bockstein() {
    let (_, d) = rp2();
    let d1 = &d[1];
    let h1 = F2Cohomology::new(&d[0].mod2(), &d1.mod2()).unwrap();
    let h2 = F2Cohomology::new(&d1.mod2(), &F2Matrix::zero(0, 1)).unwrap();
    assert_eq!(h1.dim(), 1);
    assert_eq!(h2.dim(), 1);
    let beta = bockstein(d1, &h1.representatives()[0]).unwrap();
    assert_eq!(h2.coords(&beta).unwrap(), f2_from_indices(1, [0]));
}

#[test]
fn cohomology_coordinates() {
    // C^0 = F2^1 -> C^1 = F2^3 -> C^2 = F2^1, d0 = (1,1,0)^T, d1 = (1,1,0).
    let d0 = F2Matrix::from_columns(3, vec![vec![0, 1]]);
    let d1 = F2Matrix::from_columns(1, vec![vec![0], vec![0], vec![]]);
    let h = F2Cohomology::new(&d0, &d1).unwrap();
    assert_eq!(h.dim(), 1);
    assert!(h.is_coboundary(&f2_from_indices(3, [0, 1])).unwrap());
    assert!(!h.is_coboundary(&f2_from_indices(3, [2])).unwrap());
    assert_eq!(h.coords(&f2_from_indices(3, [0]),), Err(AlgebraError::NotACocycle));
    let z = f2_from_indices(3, [0, 1, 2]);
    assert_eq!(h.coords(&z).unwrap(), f2_from_indices(1, [0]));
}

#[test]
fn non_complex_is_rejected() {
    let d0 = F2Matrix::identity(2);
    let d1 = F2Matrix::identity(2);
    assert_eq!(F2Cohomology::new(&d0, &d1).unwrap_err(), AlgebraError::NotAComplex);
}

#[test]
fn prime_powers() {
    assert_eq!(prime_power_factors(12), vec![4, 3]);
    assert_eq!(prime_power_factors(2), vec![2]);
    assert_eq!(prime_power_factors(45), vec![9, 5]);
}
