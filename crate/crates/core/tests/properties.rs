mod common;

use proptest::collection::btree_set;
use proptest::prelude::*;
use rsdkit::constructions::{
    base_power, check_base_power, digit_expansion, extend, BasePowerParams,
};
use rsdkit::{analyze, are_affinely_equivalent, canonicalize, IntSet};

fn small_set(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    btree_set(-100i64..=100, 1..=max_len).prop_map(|s| s.into_iter().collect())
}

fn zero_based(max_len: usize, hi: i64) -> impl Strategy<Value = IntSet> {
    btree_set(1i64..=hi, 2..max_len).prop_map(|s| {
        let mut v = vec![0];
        v.extend(s);
        IntSet::new(&v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn kernels_match_double_loop(v in small_set(12)) {
        let a = IntSet::new(&v).unwrap();
        prop_assert_eq!(a.sumset().unwrap().to_vec(), common::to_vec(&common::sums(&v)));
        prop_assert_eq!(a.restricted_sumset().unwrap().to_vec(), common::to_vec(&common::restricted(&v)));
        prop_assert_eq!(a.difference_set().unwrap().to_vec(), common::to_vec(&common::differences(&v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn wide_sparse_sets_match_double_loop(v in btree_set(-5000i64..=5000, 1..=12).prop_map(|s| s.into_iter().collect::<Vec<_>>())) {
        let a = IntSet::new(&v).unwrap();
        prop_assert_eq!(a.sumset().unwrap().to_vec(), common::to_vec(&common::sums(&v)));
        prop_assert_eq!(a.restricted_sumset().unwrap().to_vec(), common::to_vec(&common::restricted(&v)));
        prop_assert_eq!(a.difference_set().unwrap().to_vec(), common::to_vec(&common::differences(&v)));
    }

    #[test]
    fn analysis_is_affine_invariant(v in small_set(10), shift in -1000i64..=1000, scale in prop::sample::select(vec![-7i64, -3, -2, -1, 1, 2, 5, 11])) {
        let a = IntSet::new(&v).unwrap();
        let b = a.affine_map(shift, scale).unwrap();
        let (ra, rb) = (analyze(&a).unwrap(), analyze(&b).unwrap());
        prop_assert_eq!(ra.sumset_size, rb.sumset_size);
        prop_assert_eq!(ra.restricted_sumset_size, rb.restricted_sumset_size);
        prop_assert_eq!(ra.difference_size, rb.difference_size);
        prop_assert!(are_affinely_equivalent(&a, &b).unwrap());
        prop_assert_eq!(canonicalize(&a).unwrap().representative, canonicalize(&b).unwrap().representative);
    }

    #[test]
    fn canonical_form_is_idempotent_and_reconstructs(v in small_set(10)) {
        let a = IntSet::new(&v).unwrap();
        let c = canonicalize(&a).unwrap();
        prop_assert_eq!(c.reconstruct().unwrap(), a);
        let again = canonicalize(&c.representative).unwrap();
        prop_assert_eq!(&again.representative, &c.representative);
        prop_assert_eq!(again.shift, 0);
        prop_assert_eq!(again.scale, 1);
        prop_assert!(!again.reflected);
    }

    #[test]
    fn size_floors(v in small_set(12)) {
        let r = analyze(&IntSet::new(&v).unwrap()).unwrap();
        let k = r.size;
        prop_assert!(r.sumset_size >= 2 * k - 1);
        prop_assert!(r.difference_size >= 2 * k - 1);
        prop_assert!(r.restricted_sumset_size + 3 >= 2 * k || k < 2);
        prop_assert!(r.restricted_sumset_size <= r.sumset_size);
        prop_assert!(r.sumset_size <= r.restricted_sumset_size + k);
        prop_assert_eq!(r.is_rsd, r.delta < 0);
        prop_assert_eq!(r.is_sd, r.sumset_size > r.difference_size);
    }

    #[test]
    fn extension_shifts_sizes(a in zero_based(12, 40), extra in 1i64..=50) {
        let b = 2 * a.max_element().unwrap() + extra;
        let before = common::sizes(&a.to_vec());
        let e = extend(&a, b).unwrap();
        let after = common::sizes(&e.to_vec());
        let k = a.len();
        prop_assert_eq!(after.restricted, before.restricted + k);
        prop_assert_eq!(after.differences, before.differences + 2 * k);
    }

    #[test]
    fn base_power_sizes(a in zero_based(5, 8), extra in 1i64..=3, n in 1u32..=3) {
        let m = 2 * a.max_element().unwrap() + extra;
        let params = BasePowerParams::new(a.clone(), m, n).unwrap();
        let b = base_power(&params).unwrap();
        let check = check_base_power(&params, &analyze(&a).unwrap(), &analyze(&b).unwrap());
        prop_assert!(check.holds, "{:?}", check);
        prop_assert_eq!(b.difference_set().unwrap(), digit_expansion(&a.difference_set().unwrap(), m, n).unwrap());
    }
}
