mod common;

use common::*;
use dpbound::bounds::{max_separated, MeasureId, SchnorrMode};
use dpbound::generators::{gen_perm, random_multilinear_polynomial};
use dpbound::oracle::{
    min_compute_size, min_multilinear_bool_size, min_produce_size, oracle_domain, verify_certificate, OracleValue,
};
use dpbound::{Polynomial, SemiringId};
use proptest::prelude::*;

fn small(max_exp: u32) -> impl Strategy<Value = Polynomial> {
    (1usize..=3).prop_flat_map(move |n| {
        proptest::collection::btree_set(proptest::collection::vec(0..=max_exp, n), 1..=3)
            .prop_map(move |ms| from_dense(n, &ms))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn produce_size_matches_enumeration(f in small(2)) {
        let want = min_produce_naive(&f, 3);
        let got = min_produce_size(&f, 3).unwrap();
        prop_assert_eq!(got.size, want, "{}", f.pretty());
        if let Some(c) = got.circuit {
            // the returned circuit really produces f
            prop_assert!(c.produce_sets(1 << 12).unwrap()[0].set_eq(&f));
            prop_assert_eq!(Some(c.size()), want);
        }
    }

    #[test]
    fn computing_is_no_harder_than_producing(seed in any::<u64>()) {
        let f = random_multilinear_polynomial(3, 3, 3, seed).unwrap();
        let r = min_produce_size(&f, 5).unwrap().size;
        for id in [SemiringId::MinNat, SemiringId::MaxNat, SemiringId::Bool, SemiringId::MinInt] {
            let a = min_compute_size(&f, id, 5, None).unwrap().size();
            if let Some(r) = r {
                prop_assert!(a.is_some_and(|a| a <= r), "{id}: {a:?} > {r}");
            }
        }
    }

    #[test]
    fn bool_is_no_harder_than_min(seed in any::<u64>()) {
        let f = random_multilinear_polynomial(3, 3, 3, seed).unwrap();
        let b = min_compute_size(&f, SemiringId::Bool, 5, None).unwrap().size();
        let m = min_compute_size(&f, SemiringId::MinNat, 5, None).unwrap().size();
        let ml = min_multilinear_bool_size(&f, 5).unwrap().size();
        if let Some(m) = m {
            prop_assert!(b.is_some_and(|b| b <= m));
        }
        if let Some(ml) = ml {
            prop_assert!(b.is_some_and(|b| b <= ml));
        }
    }

    #[test]
    fn found_circuits_compute_on_the_grid(seed in any::<u64>(), sr in 0usize..3) {
        let id = [SemiringId::MinNat, SemiringId::MaxNat, SemiringId::Bool][sr];
        let f = random_multilinear_polynomial(3, 3, 2, seed).unwrap();
        let r = min_compute_size(&f, id, 5, None).unwrap();
        if let Some(c) = r.result().and_then(|s| s.circuit.clone()) {
            let h = c.produce_sets(1 << 12).unwrap().remove(0).widen(f.n_vars()).unwrap();
            prop_assert!(agree_exhaustively(&f, &h, id, &oracle_domain(id)));
        }
    }
}

#[test]
fn known_values() {
    // x·y + x·z = x·(y + z)
    let f = poly(3, &[&[0, 1], &[0, 2]]);
    assert_eq!(min_produce_size(&f, 5).unwrap().size, Some(2));
    // PERM_2 = x11·x22 + x12·x21
    assert_eq!(min_produce_size(&gen_perm(2).unwrap(), 5).unwrap().size, Some(3));
    // x + xy is x over (min,+) but needs the product over (max,+)
    let g = poly(2, &[&[0], &[0, 1]]);
    assert_eq!(min_compute_size(&g, SemiringId::MinNat, 5, None).unwrap().size(), Some(0));
    assert_eq!(min_compute_size(&g, SemiringId::MaxNat, 5, None).unwrap().size(), Some(1));
    assert_eq!(min_produce_size(&g, 5).unwrap().size, Some(2));
}

#[test]
fn certificates_never_exceed_the_oracle() {
    let f = gen_perm(2).unwrap();
    let c = max_separated(&f, SchnorrMode::Exact).unwrap();
    let r = verify_certificate(&f, &c, 5).unwrap();
    assert!(r.checkable && !r.violation);
    assert_eq!(r.oracle, Some(OracleValue::Exact(3)));
    assert_eq!(r.measure, MeasureId::ProduceSize);
    let mut inflated = c.clone();
    inflated.value = 9;
    assert!(verify_certificate(&f, &inflated, 5).unwrap().violation);
}

#[test]
fn caps_are_enforced() {
    let e = min_produce_size(&gen_perm(3).unwrap(), 5).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    assert!(min_produce_size(&gen_perm(2).unwrap(), 99).is_err());
}
