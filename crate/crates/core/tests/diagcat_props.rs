use ainfty::diagcat::{
    compose, from_coords, hom_dim, hom_dim_d, serre, shift, tau, to_coords, window_diagonals, CObj,
    HomKind, Morphism,
};
use proptest::prelude::*;

#[test]
fn hom_agrees_in_both_coordinate_systems() {
    let objs = window_diagonals(-12, 12);
    for &x in &objs {
        for &y in &objs {
            assert_eq!(hom_dim(x, y).0, hom_dim_d(x, y), "{x} {y}");
        }
    }
}

#[test]
fn hom_is_at_most_one_dimensional_and_kind_matches() {
    let objs = window_diagonals(-8, 8);
    for &x in &objs {
        for &y in &objs {
            let (d, kind) = hom_dim(x, y);
            assert!(d <= 1);
            assert_eq!(d == 0, kind == HomKind::Zero, "{x} {y}");
        }
    }
}

fn diagonal() -> impl Strategy<Value = CObj> {
    (-20i64..=20, 2i64..=15).prop_map(|(m, g)| CObj::new(m, m + g))
}

proptest! {
    #[test]
    fn coordinates_round_trip(x in diagonal()) {
        prop_assert_eq!(from_coords(to_coords(x).unwrap()), x);
    }

    #[test]
    fn shift_preserves_hom(x in diagonal(), y in diagonal(), k in -5i64..=5) {
        prop_assert_eq!(hom_dim(shift(x, k), shift(y, k)), hom_dim(x, y));
    }

    #[test]
    fn serre_duality_dimension(x in diagonal(), y in diagonal()) {
        prop_assert_eq!(hom_dim(x, y).0, hom_dim(y, serre(x)).0);
    }

    #[test]
    fn tau_is_invertible_by_shift(x in diagonal()) {
        prop_assert_eq!(tau(shift(x, -1)), x);
    }

    #[test]
    fn identity_is_neutral(x in diagonal(), y in diagonal(), c in 1i64..5) {
        if hom_dim(x, y).0 == 1 {
            let f = Morphism::new(x, y, c).unwrap();
            prop_assert_eq!(compose(Morphism::identity(x), f).unwrap(), f);
            prop_assert_eq!(compose(f, Morphism::identity(y)).unwrap(), f);
        } else {
            prop_assert!(Morphism::new(x, y, c).is_err());
        }
    }
}
