use std::collections::BTreeMap;

use proptest::prelude::*;

use hurwitz_atlas::algebra::{closed_form, fit, z_power_decompose, AElement};
use hurwitz_atlas::rational::{frac, Rational};
use hurwitz_atlas::series::{gen_y, gen_z, PowerSeries};

const ORDER: usize = 16;

fn element(lo: i64, hi: i64) -> impl Strategy<Value = AElement> {
    prop::collection::btree_map(lo..=hi, (-20i64..=20, 1i64..=6), 0..5).prop_map(|m| {
        let map: BTreeMap<i64, Rational> = m.into_iter().map(|(k, (a, b))| (k, frac(a, b))).collect();
        AElement::from_map(map)
    })
}

proptest! {
    #[test]
    fn series_map_is_a_ring_map(a in element(-4, 4), b in element(-4, 4)) {
        prop_assert_eq!(a.mul(&b).to_series(ORDER), &a.to_series(ORDER) * &b.to_series(ORDER));
        prop_assert_eq!(a.add(&b).to_series(ORDER), &a.to_series(ORDER) + &b.to_series(ORDER));
    }

    #[test]
    fn d_commutes_with_expansion(a in element(-4, 4)) {
        prop_assert_eq!(a.d().to_series(ORDER), a.to_series(ORDER).d_operator());
    }

    #[test]
    fn fit_recovers_elements(a in element(-3, 3)) {
        let s = a.to_series(2 * 3 + 8);
        prop_assert_eq!(fit(&s, 3, 8).unwrap(), a);
    }

    #[test]
    fn closed_form_matches_expansion(a in element(-4, 3)) {
        let s = a.to_series(ORDER);
        let cf = closed_form(&a);
        for n in 1..=ORDER as u64 {
            prop_assert_eq!(&cf.coefficient(n), s.coeff(n as usize), "n = {}", n);
        }
    }
}

#[test]
fn generator_identities() {
    let y = gen_y(ORDER);
    let z = gen_z(ORDER);
    assert_eq!(AElement::y().to_series(ORDER), y);
    assert_eq!(AElement::z().to_series(ORDER), z);
    assert_eq!(AElement::z().d(), AElement::z().mul(&AElement::one_plus_z().pow(2)));
}

#[test]
fn z_powers_decompose_exactly() {
    let z = gen_z(ORDER);
    let mut power = PowerSeries::one(ORDER);
    for k in 1..=8 {
        power = &power * &z;
        assert_eq!(z_power_decompose(k).to_series(ORDER), power, "k = {k}");
    }
}
