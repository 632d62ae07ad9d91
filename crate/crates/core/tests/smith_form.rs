use lowerk::abelian::{smith_normal_form, AbelianMap, AbelianPresentation, FgAbelianGroup};
use lowerk::{BigInt, BigMatrix};
use proptest::prelude::*;

fn matrix(rows: &[Vec<i64>], cols: usize) -> BigMatrix {
    BigMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

fn small_matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        (prop::collection::vec(prop::collection::vec(-20i64..=20, c), r), Just(c))
    })
}

proptest! {
    #[test]
    fn postconditions_hold((rows, cols) in small_matrix()) {
        let m = matrix(&rows, cols);
        prop_assert!(smith_normal_form(&m).verify(&m));
    }

    #[test]
    fn invariant_factors_ignore_transpose((rows, cols) in small_matrix()) {
        let m = matrix(&rows, cols);
        prop_assert_eq!(
            smith_normal_form(&m).invariant_factors(),
            smith_normal_form(&m.transpose()).invariant_factors()
        );
    }

    #[test]
    fn determinant_is_product_of_factors(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 4)) {
        let m = matrix(&rows, 4);
        let snf = smith_normal_form(&m);
        let product: BigInt = if snf.rank == 4 { snf.invariant_factors().iter().product() } else { BigInt::from(0) };
        let det = m.determinant();
        prop_assert!(det == product || det == -product);
    }
}

#[test]
fn textbook_example() {
    let m = matrix(&[vec![2, 4], vec![6, 8]], 2);
    let snf = smith_normal_form(&m);
    assert_eq!(snf.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    assert!(snf.verify(&m));
}

#[test]
fn cokernel_of_diagonal_inclusion() {
    // Z/2 -> Z/2 + Z/4, 1 -> (1, 2)
    let source = AbelianPresentation::from_orders(&[2], 0);
    let target = AbelianPresentation::from_orders(&[2, 4], 0);
    let map = AbelianMap::new(source, target, matrix(&[vec![1], vec![2]], 1)).unwrap();
    assert!(map.kernel().is_zero());
    assert_eq!(map.cokernel(), "Z/4".parse::<FgAbelianGroup>().unwrap());
}

#[test]
fn ill_defined_map_is_rejected() {
    // 1 in Z/2 cannot go to 1 in Z/3.
    let source = AbelianPresentation::from_orders(&[2], 0);
    let target = AbelianPresentation::from_orders(&[3], 0);
    assert!(AbelianMap::new(source, target, matrix(&[vec![1]], 1)).is_err());
}
