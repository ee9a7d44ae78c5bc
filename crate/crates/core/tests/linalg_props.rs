use proptest::prelude::*;
use qdual_core::linalg::{Matrix, PrimeField, Subspace};

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn matrix() -> impl Strategy<Value = Matrix> {
    (0..PRIMES.len(), 0usize..7, 0usize..7).prop_flat_map(|(pi, r, c)| {
        let p = PRIMES[pi];
        prop::collection::vec(0..p, r * c)
            .prop_map(move |data| Matrix::from_data(PrimeField::new(p), r, c, data))
    })
}

fn pair_same_field() -> impl Strategy<Value = (Matrix, Matrix)> {
    (0..PRIMES.len(), 0usize..5, 0usize..5, 0usize..5, 0usize..5).prop_flat_map(
        |(pi, a, b, c, d)| {
            let p = PRIMES[pi];
            let f = PrimeField::new(p);
            (
                prop::collection::vec(0..p, a * b),
                prop::collection::vec(0..p, c * d),
            )
                .prop_map(move |(x, y)| {
                    (Matrix::from_data(f, a, b, x), Matrix::from_data(f, c, d, y))
                })
        },
    )
}

/// Rank over F_2 by counting the distinct vectors in the row space.
fn brute_rank_f2(m: &Matrix) -> usize {
    let rows = m.rows();
    let mut span = std::collections::HashSet::new();
    for mask in 0u32..(1 << rows) {
        let mut v = vec![0u32; m.cols()];
        for r in 0..rows {
            if mask >> r & 1 == 1 {
                for (c, x) in v.iter_mut().enumerate() {
                    *x ^= m[(r, c)];
                }
            }
        }
        span.insert(v);
    }
    span.len().trailing_zeros() as usize
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = m.rref();
        let twice = once.reduced.rref();
        prop_assert_eq!(&once.reduced, &twice.reduced);
        prop_assert_eq!(once.rank, m.rank());
    }

    #[test]
    fn rank_nullity_and_kernel(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn rank_of_transpose(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_matches_brute_force_over_f2(data in prop::collection::vec(0u32..2, 30), r in 0usize..6) {
        let m = Matrix::from_data(PrimeField::new(2), r, 5, data[..r * 5].to_vec());
        prop_assert_eq!(m.rank(), brute_rank_f2(&m));
    }

    #[test]
    fn kronecker_rank_multiplies((a, b) in pair_same_field()) {
        let k = a.kronecker(&b).unwrap();
        prop_assert_eq!(k.rows(), a.rows() * b.rows());
        prop_assert_eq!(k.rank(), a.rank() * b.rank());
    }

    #[test]
    fn solve_recovers_consistent_systems(m in matrix(), seed in any::<u64>()) {
        let f = m.field();
        let x: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 60)) as u32) % f.p()).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn subspace_sum_and_intersection((a, b) in pair_same_field()) {
        let n = a.cols();
        let b = if b.cols() == n { b } else { Matrix::zeros(a.field(), 0, n) };
        let sa = Subspace::row_span(&a);
        let sb = Subspace::row_span(&b);
        let sum = sa.sum(&sb);
        let int = sa.intersection(&sb);
        prop_assert_eq!(sum.dim() + int.dim(), sa.dim() + sb.dim());
        prop_assert!(int.is_subspace_of(&sa) && int.is_subspace_of(&sb));
        prop_assert!(sa.is_subspace_of(&sum) && sb.is_subspace_of(&sum));
        for v in sa.basis_vectors() {
            let c = sa.coordinates(&v).unwrap();
            prop_assert_eq!(sa.element(&c), v);
        }
    }
}
