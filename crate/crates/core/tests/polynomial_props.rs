mod common;

use std::collections::BTreeSet;

use common::*;
use dpbound::{ExtInt, Monomial, Polynomial, SemiringId};
use proptest::prelude::*;

fn polynomial(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    (1usize..=4).prop_flat_map(move |n| {
        proptest::collection::btree_set(proptest::collection::vec(0..=max_exp, n), 1..=max_terms)
            .prop_map(move |ms| from_dense(n, &ms))
    })
}

fn multilinear(max_terms: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(1, max_terms)
}

fn assignment(n: usize, domain: Vec<ExtInt>) -> impl Strategy<Value = Vec<ExtInt>> {
    proptest::collection::vec(proptest::sample::select(domain), n)
}

fn min_domain() -> Vec<ExtInt> {
    (0..=4).map(ExtInt::Fin).chain([ExtInt::PosInf]).collect()
}

proptest! {
    #[test]
    fn antichains_are_antichains(f in polynomial(2, 8)) {
        let n = f.n_vars();
        for l in [f.lmin().unwrap(), f.lmax().unwrap()] {
            let ms: Vec<Dense> = dense_set(&l).into_iter().collect();
            for (i, p) in ms.iter().enumerate() {
                for q in &ms[i + 1..] {
                    prop_assert!(!divides(p, q) && !divides(q, p), "{p:?} and {q:?} comparable");
                }
            }
            prop_assert!(dense_set(&l).is_subset(&dense_set(&f)));
            prop_assert_eq!(l.n_vars(), n);
        }
    }

    #[test]
    fn antichains_cover(f in polynomial(2, 8)) {
        let lo = dense_set(&f.lmin().unwrap());
        let hi = dense_set(&f.lmax().unwrap());
        for p in dense_set(&f) {
            prop_assert!(lo.iter().any(|q| divides(q, &p)));
            prop_assert!(hi.iter().any(|q| divides(&p, q)));
        }
    }

    #[test]
    fn lmin_is_min_semantics(
        (f, a) in polynomial(2, 8).prop_flat_map(|f| { let n = f.n_vars(); (Just(f), assignment(n, min_domain())) })
    ) {
        let l = f.lmin().unwrap();
        prop_assert_eq!(f.evaluate(SemiringId::MinNat, &a).unwrap(), l.evaluate(SemiringId::MinNat, &a).unwrap());
        prop_assert_eq!(f.evaluate(SemiringId::MinNat, &a).unwrap(), eval_naive(&f, SemiringId::MinNat, &a));
    }

    #[test]
    fn lmax_is_max_semantics(
        (f, a) in multilinear(8).prop_flat_map(|f| {
            let n = f.n_vars();
            (Just(f), assignment(n, (0..=4).map(ExtInt::Fin).collect()))
        })
    ) {
        let l = f.lmax().unwrap();
        prop_assert_eq!(f.evaluate(SemiringId::MaxNat, &a).unwrap(), l.evaluate(SemiringId::MaxNat, &a).unwrap());
        prop_assert_eq!(f.evaluate(SemiringId::MaxNat, &a).unwrap(), eval_naive(&f, SemiringId::MaxNat, &a));
    }

    #[test]
    fn evaluation_matches_definition(
        (f, id, a) in polynomial(2, 6).prop_flat_map(|f| {
            let n = f.n_vars();
            proptest::sample::select(SemiringId::ALL.to_vec()).prop_flat_map(move |id| {
                let dom: Vec<ExtInt> = [ExtInt::NegInf, ExtInt::Fin(-2), ExtInt::Fin(0), ExtInt::Fin(1), ExtInt::Fin(3), ExtInt::PosInf]
                    .into_iter()
                    .filter(|&v| id.contains(v))
                    .collect();
                (Just(f.clone()), Just(id), assignment(n, dom))
            })
        })
    ) {
        prop_assert_eq!(f.evaluate(id, &a).unwrap(), eval_naive(&f, id, &a));
    }

    #[test]
    fn homogeneous_density_chain(n in 2usize..=5, d in 1u32..=3, mask in any::<u32>()) {
        let d = d.min(n as u32);
        let all: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() == d).collect();
        let picked: Vec<Monomial> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 32) & 1 == 1)
            .map(|(_, s)| Monomial::from_vars((0..n as u32).filter(|i| s >> i & 1 == 1)))
            .collect();
        prop_assume!(!picked.is_empty());
        let f = Polynomial::from_monomials(n, picked).unwrap();
        let dens: Vec<u64> = (0..=d as u64).map(|r| f.factor_density(r).unwrap()).collect();
        prop_assert_eq!(dens[d as usize], 1);
        prop_assert_eq!(dens[0], f.len() as u64);
        prop_assert!(dens.windows(2).all(|w| w[0] >= w[1]), "{dens:?}");
    }

    #[test]
    fn degrees_add_under_products(f in polynomial(2, 5), g in polynomial(2, 5)) {
        let n = f.n_vars().max(g.n_vars());
        let (f, g) = (f.widen(n).unwrap(), g.widen(n).unwrap());
        let h = f.mul(&g, 1 << 16).unwrap();
        let add = |a: ExtInt, b: ExtInt| ExtInt::Fin(a.finite().unwrap() + b.finite().unwrap());
        prop_assert_eq!(h.min_degree(), add(f.min_degree(), g.min_degree()));
        prop_assert_eq!(h.max_degree(), add(f.max_degree(), g.max_degree()));
        prop_assert_eq!(dense_set(&h.to_set()), set_mul(&dense_set(&f), &dense_set(&g)));
    }

    #[test]
    fn products_inside_f_respect_density(f in multilinear(10)) {
        // every A·B ⊆ f with A, B sub-polynomials of small supports
        let ms: Vec<Dense> = dense_set(&f).into_iter().collect();
        let n = f.n_vars();
        let subs: Vec<Dense> = (0u32..1 << n)
            .map(|s| (0..n).map(|i| s >> i & 1).collect())
            .collect();
        let fs: BTreeSet<Dense> = ms.iter().cloned().collect();
        for a_mask in 1u32..(1 << subs.len().min(8)) {
            let a: BTreeSet<Dense> = (0..subs.len().min(8)).filter(|i| a_mask >> i & 1 == 1).map(|i| subs[i].clone()).collect();
            // the largest B with A·B ⊆ f
            let b: BTreeSet<Dense> = subs.iter().filter(|q| a.iter().all(|p| {
                let pq: Dense = p.iter().zip(q.iter()).map(|(x, y)| x + y).collect();
                fs.contains(&pq)
            })).cloned().collect();
            if b.is_empty() {
                continue;
            }
            let prod = set_mul(&a, &b);
            let deg = |s: &BTreeSet<Dense>| s.iter().map(|m| m.iter().sum::<u32>() as u64).max().unwrap();
            let bound = f.factor_density(deg(&a)).unwrap() * f.factor_density(deg(&b)).unwrap();
            prop_assert!(prod.len() as u64 <= bound, "|A·B| = {} > {bound}", prod.len());
        }
    }

    #[test]
    fn json_round_trip(f in polynomial(3, 6)) {
        let s = serde_json::to_string(&f).unwrap();
        let g: Polynomial = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(serde_json::to_string(&g).unwrap(), s);
    }
}

#[test]
fn saturations() {
    let f = poly(2, &[&[0, 1]]);
    let l = f.saturate_low().unwrap();
    assert!(l.set_eq(&poly(2, &[&[0, 1], &[0], &[1]])));
    assert_eq!(l.evaluate(SemiringId::MinNat, &[ExtInt::Fin(5), ExtInt::Fin(9)]).unwrap(), ExtInt::Fin(5));
    let h = poly(3, &[&[0, 1], &[1, 2]]).saturate_high().unwrap();
    assert!(h.contains_monomial(&Monomial::from_vars([0, 1, 2])));
    assert!(poly(2, &[&[0], &[0, 1]]).saturate_low().is_err());
}
