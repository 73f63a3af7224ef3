use niho_core::boomerang::{fbct_distribution, sozd_distribution};
use niho_core::codes::{weight_distribution, weights_from_walsh};
use niho_core::niho::{count_v, niho_pair_sum, search_locally_apn};
use niho_core::verify::verify;
use niho_core::walsh::{walsh_distribution, walsh_value};
use niho_core::{build_field, make_niho, predict, Options};

#[test]
fn pair_sum_matches_v_system() {
    for (p, m) in [(2, 2), (2, 3), (3, 1), (5, 1)] {
        let f = build_field(p, m).unwrap();
        let pm = (p as i128).pow(m);
        for (g1, g2) in [(2, 1), (2, 0), (3, 1), (1, 2)] {
            for u in f.elements() {
                for v in f.elements() {
                    let lhs = niho_pair_sum(&f, g1, g2, v, u);
                    let rhs = (count_v(&f, g1, g2, u, v) as i128 - 1) * pm;
                    assert_eq!(lhs.as_integer(), Some(rhs), "p={p} m={m} g=({g1},{g2})");
                }
            }
        }
    }
}

#[test]
fn verify_passes_on_family_members() {
    let opts = Options::default();
    for (p, m) in [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
        let f = build_field(p, m).unwrap();
        for s in [2u64, 2 * (p as u64).pow(m)] {
            let e = make_niho(p, m, s as i64);
            let r = verify(&f, &e, &opts).unwrap();
            assert!(r.pass, "p={p} m={m} s={s}: {:?}", r.checks);
        }
    }
}

#[test]
fn excluded_predictions_are_never_locally_apn() {
    for (p, m) in [(2, 3), (2, 4), (2, 5)] {
        let r = search_locally_apn(p, m, false, &Options::default()).unwrap();
        for entry in r.entries {
            if predict(&make_niho(p, m, entry.s as i64))
                .predicted_locally_apn
                .as_bool()
                == Some(false)
            {
                assert!(!entry.measured.locally_apn, "p={p} m={m} s={}", entry.s);
            }
        }
    }
}

#[test]
fn sozd_equals_fbct_in_characteristic_two() {
    let opts = Options::default();
    let f = build_field(2, 3).unwrap();
    for s in 0..=8 {
        let d = make_niho(2, 3, s).d;
        let a = fbct_distribution(&f, d, false, &opts).unwrap();
        let b = sozd_distribution(&f, d, false, &opts).unwrap();
        assert_eq!(a.entries, b.entries, "s={s}");
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let f = build_field(3, 2).unwrap();
    let (seq, par) = (Options::sequential(), Options::default());
    for d in [17, 25, 41] {
        assert_eq!(
            walsh_distribution(&f, d, &seq).unwrap(),
            walsh_distribution(&f, d, &par).unwrap()
        );
        assert_eq!(
            weight_distribution(&f, d, &seq).unwrap(),
            weight_distribution(&f, d, &par).unwrap()
        );
        assert_eq!(
            sozd_distribution(&f, d, false, &seq).unwrap(),
            sozd_distribution(&f, d, false, &par).unwrap()
        );
    }
}

#[test]
fn grid_agrees_with_pointwise_walsh() {
    let f = build_field(5, 1).unwrap();
    let dist = walsh_distribution(&f, 9, &Options::default()).unwrap();
    let mut direct = std::collections::BTreeMap::new();
    for u in f.nonzero() {
        for v in f.elements() {
            *direct
                .entry(walsh_value(&f, 9, u, v).unwrap())
                .or_insert(0u64) += 1;
        }
    }
    assert_eq!(dist.entries, direct);
    let weights = weights_from_walsh(&f, &dist).unwrap();
    assert_eq!(
        weights,
        weight_distribution(&f, 9, &Options::default())
            .unwrap()
            .weights
    );
}
