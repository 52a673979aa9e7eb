mod common;

use common::*;
use dpbound::circuit::{multilinearity_transfer_check, Cut, WhichEnvelope};
use dpbound::equivalence::default_domain;
use dpbound::generators::random_circuit;
use dpbound::{Circuit, ExtInt, SemiringId};
use proptest::prelude::*;

const CAP: usize = 1 << 16;

fn circuit() -> impl Strategy<Value = Circuit> {
    (1usize..=4, 1usize..=12, any::<bool>(), any::<u64>())
        .prop_map(|(n, g, zero, seed)| random_circuit(n, g, zero, seed).unwrap())
}

fn carrier_sample(id: SemiringId) -> Vec<ExtInt> {
    [ExtInt::NegInf, ExtInt::Fin(-1), ExtInt::Fin(0), ExtInt::Fin(1), ExtInt::Fin(2), ExtInt::PosInf]
        .into_iter()
        .filter(|&v| id.contains(v))
        .collect()
}

proptest! {
    #[test]
    fn produce_matches_reference(c in circuit()) {
        let out = c.outputs()[0];
        let f = c.produce_sets(CAP).unwrap().remove(0);
        prop_assert_eq!(dense_set(&f), produce_naive(&c)[out].clone());
        // the formal polynomial does not depend on a semiring
        let again = c.produce_sets(CAP).unwrap().remove(0);
        prop_assert_eq!(serde_json::to_string(&f).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn evaluation_agrees_with_production(c in circuit(), picks in proptest::collection::vec(0usize..6, 4), sr in 0usize..6) {
        let id = SemiringId::ALL[sr];
        let sample = carrier_sample(id);
        let a: Vec<ExtInt> = (0..c.n_vars()).map(|i| sample[picks[i] % sample.len()]).collect();
        let f = c.produce(CAP).unwrap().remove(0);
        let got = c.eval(id, &a);
        // arithmetic overflow is the only acceptable failure
        if let Ok(v) = got {
            prop_assert_eq!(v[0], f.evaluate(id, &a).unwrap());
            prop_assert_eq!(v[0], eval_naive(&f, id, &a));
        }
    }

    #[test]
    fn gate_split_identity(c in circuit()) {
        let out = c.outputs()[0];
        let whole = produce_naive(&c)[out].clone();
        for g in 0..c.gates().len() {
            let (p, e, rest) = c.gate_split(g, CAP).unwrap();
            let mut u = set_mul(&dense_set(&p), &dense_set(&e));
            u.extend(dense_set(&rest));
            prop_assert_eq!(&u, &whole, "gate {}", g);
            prop_assert_eq!(dense_set(&rest), produce_naive(&c.restrict_gate_zero(g).unwrap())[out].clone());
        }
    }

    #[test]
    fn cut_identity(c in circuit(), mask in any::<u32>()) {
        let out = c.outputs()[0];
        let whole = produce_naive(&c)[out].clone();
        let nodes: Vec<usize> = (0..c.gates().len()).filter(|i| mask >> (i % 32) & 1 == 1).collect();
        let cut = Cut::Node(nodes);
        if c.is_cut(&cut).unwrap() {
            let parts = c.cut_decompose(&cut, CAP).unwrap();
            let u: std::collections::BTreeSet<Dense> =
                parts.iter().flat_map(|p| set_mul(&dense_set(&p.produced), &dense_set(&p.ext))).collect();
            prop_assert_eq!(u, whole);
        } else {
            prop_assert!(c.cut_decompose(&cut, CAP).is_err());
        }
    }

    #[test]
    fn envelope_subcircuits(c in circuit()) {
        let f = c.produce_sets(CAP).unwrap().remove(0);
        prop_assume!(!f.is_empty());
        for which in [WhichEnvelope::Lower, WhichEnvelope::Higher] {
            let e = c.envelope_subcircuit(which).unwrap();
            prop_assert!(e.size() <= c.size());
            let g = e.produce_sets(CAP).unwrap().remove(0);
            prop_assert!(g.is_homogeneous());
            let want = match which {
                WhichEnvelope::Lower => f.lower_envelope().unwrap(),
                WhichEnvelope::Higher => f.higher_envelope().unwrap(),
            };
            prop_assert!(g.set_eq(&want));
        }
    }

    #[test]
    fn multilinear_computation_implies_multilinear_circuit(c in circuit(), sr in 0usize..3) {
        let id = [SemiringId::MaxNat, SemiringId::MinInt, SemiringId::MaxInt][sr];
        let dom: Vec<ExtInt> = default_domain(id).into_iter().filter(|v| v.is_finite()).collect();
        let r = multilinearity_transfer_check(&c, id, &dom, CAP).unwrap();
        prop_assert!(!r.counterexample, "counterexample candidate: {c:?}");
    }

    #[test]
    fn json_round_trip(c in circuit()) {
        let s = serde_json::to_string(&c).unwrap();
        let d: Circuit = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(d, c);
    }
}

#[test]
fn unreachable_gate_split_is_trivial() {
    let mut c = Circuit::builder(2);
    let x = c.var(0);
    let y = c.var(1);
    let dead = c.prod(x, y);
    let out = c.sum(x, y);
    c.set_outputs(vec![out]).unwrap();
    let (p, e, rest) = c.gate_split(dead, CAP).unwrap();
    assert!(p.set_eq(&poly(2, &[&[0, 1]])));
    assert!(e.is_empty());
    assert!(rest.set_eq(&poly(2, &[&[0], &[1]])));
}
