use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use squadk::lattice::{integer_kernel, lattice_member, smith_diagonal, smith_normal_form, FgAbelianGroup, IntMatrix};

fn matrix(max: usize, entry: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-entry..=entry, c), r))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Applies `col_j += q col_i` for each step, a unimodular column change.
fn shear(m: &IntMatrix, steps: &[(usize, usize, i64)]) -> IntMatrix {
    let mut out = m.clone();
    for &(i, j, q) in steps {
        let (i, j) = (i % m.cols(), j % m.cols());
        if i != j {
            out.add_col_multiple(j, i, &BigInt::from(q));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_factorization(rows in matrix(6, 30)) {
        let m = IntMatrix::from_rows(&rows);
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).unwrap().mul(&f.v).unwrap(), f.s.clone());
        prop_assert!(f.u.is_unimodular() && f.v.is_unimodular());
        prop_assert_eq!(smith_diagonal(&m), f.diagonal());
    }

    #[test]
    fn column_span_members_are_found(rows in matrix(5, 9), x in prop::collection::vec(-5i64..=5, 5)) {
        let m = IntMatrix::from_rows(&rows);
        let x = big(&x[..m.cols()]);
        let v = m.mul_vec(&x).unwrap();
        let y = lattice_member(&m, &v).unwrap().expect("v lies in the span");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), v);
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in matrix(5, 6)) {
        let m = IntMatrix::from_rows(&rows);
        let kernel = integer_kernel(m.rows(), &m.columns());
        let rank = smith_diagonal(&m).iter().filter(|d| !d.is_zero()).count();
        prop_assert_eq!(kernel.len(), m.cols() - rank);
        for k in kernel {
            prop_assert!(m.mul_vec(&k).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn invariant_factors_ignore_relation_changes(
        rows in matrix(5, 12),
        steps in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
    ) {
        let m = IntMatrix::from_rows(&rows);
        let g = FgAbelianGroup::new(m.rows(), m.clone()).unwrap();
        let h = FgAbelianGroup::new(m.rows(), shear(&m, &steps)).unwrap();
        prop_assert_eq!(g.invariant_factors(), h.invariant_factors());
        let t = shear(&m.transpose(), &steps).transpose();
        let k = FgAbelianGroup::new(m.rows(), t).unwrap();
        prop_assert_eq!(g.invariant_factors(), k.invariant_factors());
    }
}
