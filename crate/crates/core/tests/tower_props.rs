use ainfty::seeds::{enumerate_variables_an, Seed, DEFAULT_CAP};
use ainfty::tower::{check_cluster_morphism, proj, surjectivity_witnesses, Witness};
use ainfty::LaurentPoly;
use proptest::prelude::*;

#[test]
fn projection_is_functorial() {
    for k in 1..=5u32 {
        let vars = enumerate_variables_an(k, DEFAULT_CAP).unwrap();
        for j in 1..=k {
            for i in 1..=j {
                for v in &vars {
                    let two_step = proj(i, j, &proj(j, k, v).unwrap()).unwrap();
                    assert_eq!(two_step, proj(i, k, v).unwrap(), "p({i},{j}) p({j},{k}) on {v}");
                }
            }
        }
    }
}

#[test]
fn projection_is_identity_on_the_diagonal() {
    for v in enumerate_variables_an(4, DEFAULT_CAP).unwrap() {
        assert_eq!(proj(4, 4, &v).unwrap(), v);
    }
}

#[test]
fn every_lower_variable_has_a_witness() {
    for n in 2..=5u32 {
        for (w, witness) in surjectivity_witnesses(n).unwrap() {
            let witness = witness.unwrap_or_else(|| panic!("no witness for {w} at n = {n}"));
            let recovered = match witness {
                Witness::Image(v) => proj(n - 1, n, &v).unwrap(),
                Witness::ImageMinus(v, c) => &proj(n - 1, n, &v).unwrap() - &LaurentPoly::constant(c),
            };
            assert_eq!(recovered, w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exchange_relation_holds(n in 1u32..=5, path in prop::collection::vec(1i64..=5, 0..8), k in 1i64..=5) {
        let path: Vec<i64> = path.into_iter().map(|p| (p - 1) % i64::from(n) + 1).collect();
        let k = (k - 1) % i64::from(n) + 1;
        let s = Seed::initial_an(n).mutate_sequence(&path).unwrap();
        let t = s.mutate(k).unwrap();
        let lhs = s.value(k).unwrap() * t.value(k).unwrap();
        prop_assert_eq!(lhs, s.exchange_binomial(k));
        for v in t.values().values() {
            prop_assert!(v.has_positive_numerator().unwrap());
        }
    }

    #[test]
    fn projection_is_a_cluster_morphism(i in 1u32..=4, extra in 1u32..=2, seqs in prop::collection::vec(prop::collection::vec(1i64..=4, 0..6), 1..6)) {
        let j = i + extra;
        let seqs: Vec<Vec<i64>> = seqs
            .into_iter()
            .map(|s| s.into_iter().map(|p| (p - 1) % i64::from(i) + 1).collect())
            .collect();
        let r = check_cluster_morphism(i, j, &seqs).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }
}
