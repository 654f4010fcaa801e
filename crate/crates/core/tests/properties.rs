use num_bigint::BigInt;
use proptest::prelude::*;

use parthom_core::complex::build_dn;
use parthom_core::homology::{smith_normal_form, Chain, IntMatrix};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
    })
}

fn shuffled(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn snf_is_a_divisibility_chain(rows in small_matrix()) {
        let snf = smith_normal_form(&IntMatrix::from_dense(&rows));
        prop_assert_eq!(snf.rank, snf.invariant_factors.len());
        prop_assert!(snf.rank <= rows.len().min(rows[0].len()));
        for w in snf.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == 0u8.into());
        }
    }

    #[test]
    fn snf_ignores_row_and_column_order(
        (rows, rp, cp) in small_matrix().prop_flat_map(|m| {
            let (r, c) = (m.len(), m[0].len());
            (Just(m), shuffled(r), shuffled(c))
        })
    ) {
        let m = IntMatrix::from_dense(&rows);
        prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&m.permuted(&rp, &cp)));
        prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&m.transpose()));
    }

    #[test]
    fn boundary_of_a_boundary_is_zero(
        dim in 0isize..4,
        picks in proptest::collection::vec((0usize..1000, -5i64..=5), 1..12)
    ) {
        let c = build_dn(5).unwrap();
        let faces = c.faces_of_dim(dim);
        let chain = Chain::from_terms(
            dim,
            picks.iter().map(|&(i, v)| (faces[i % faces.len()].clone(), BigInt::from(v))),
        ).unwrap();
        prop_assert!(chain.boundary().boundary().is_zero());
        prop_assert!(parthom_core::homology::is_boundary(&c, &chain.boundary()).unwrap());
    }
}
