mod common;

use common::*;
use dpbound::generators::*;
use dpbound::{ExtInt, Polynomial, SemiringId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn family_shapes() {
    for n in 2..=5 {
        let p = gen_perm(n).unwrap();
        assert_eq!(p.len() as u64, factorial(n as u64));
        assert!(p.is_multilinear() && p.is_homogeneous());
        let h = gen_hc(n.max(3)).unwrap();
        assert!(h.is_multilinear() && h.is_homogeneous());
        let m = n.max(3);
        let t = gen_spanning_tree(m).unwrap();
        assert_eq!(t.len() as u64, (m as u64).pow(m as u32 - 2));
        assert!(t.is_multilinear() && t.is_homogeneous());
    }
    for n in 3..=7 {
        for k in 2..=3 {
            let c = gen_clique(n, k).unwrap();
            assert_eq!(c.len() as u64, binom(n as u64, k as u64));
            assert!(c.is_multilinear() && c.is_homogeneous());
        }
    }
    for n in 4..=6 {
        let s = gen_stconn(n).unwrap();
        assert!(s.is_multilinear() && !s.is_homogeneous());
    }
    for n in 3..=4 {
        // a formal product of overlapping path sets picks up squares
        let c = gen_conn(n).unwrap();
        assert!(!c.is_multilinear() && !c.is_homogeneous());
        let st = gen_spanning_tree_undirected(n).unwrap();
        assert!(dpbound::equivalence::decide(&st, &c, SemiringId::Bool, None).unwrap().is_equivalent());
    }
    for (n, d) in [(2, 2), (2, 4), (3, 3), (4, 4)] {
        assert_eq!(gen_layered_stconn(n, d).unwrap().len() as u64, (n as u64).pow(d as u32 - 1));
    }
}

#[test]
fn floyd_warshall_matches_simple_paths() {
    for n in 2..=6 {
        let c = build_floyd_warshall(n).unwrap();
        assert_eq!(c.size(), n * (n - 1) * (n - 2));
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..25 {
            let mut w = vec![vec![None; n]; n];
            let mut a = vec![ExtInt::PosInf; c.n_vars()];
            for i in 0..n {
                for j in i + 1..n {
                    let x = rng.gen_bool(0.8).then(|| rng.gen_range(0..10));
                    w[i][j] = x;
                    w[j][i] = x;
                    a[edge_index(n, i as u32, j as u32) as usize] = x.map_or(ExtInt::PosInf, ExtInt::Fin);
                }
            }
            let got = c.eval(SemiringId::MinNat, &a).unwrap();
            let want = apsp_brute(&w);
            let flat: Vec<ExtInt> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| want[i][j].map_or(ExtInt::PosInf, ExtInt::Fin))
                .collect();
            assert_eq!(got, flat);
        }
    }
}

#[test]
fn bellman_ford_lmin_is_stconn() {
    for n in 3..=5 {
        let c = build_bellman_ford(n).unwrap();
        assert_eq!(c.size(), bellman_ford_size(n));
        let f = c.produce_sets(1 << 16).unwrap().remove(0);
        assert!(f.lmin().unwrap().set_eq(&gen_stconn(n).unwrap()), "n = {n}");
    }
}

#[test]
fn parity_polynomial_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=12 {
        let g = random_graph(n, rng.gen_range(0.2..0.8), n as u64);
        let edges: Vec<(u32, u32)> = g.edges().collect();
        let f = gen_fg(&g).unwrap();
        assert_eq!(f.len() as u64, parity_count(n, &edges), "n = {n}");
        for m in f.monomials() {
            let s: u64 = m.vars().map(|v| 1u64 << v).sum();
            let inside = edges.iter().filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1).count();
            assert_eq!(inside % 2, 1);
        }
    }
}

#[test]
fn triangle_counts() {
    let f = gen_triangle(3).unwrap();
    assert_eq!(f.n_vars(), 27);
    assert_eq!(f.len(), 27);
    assert!(f.is_multilinear() && f.is_homogeneous());
}

#[test]
fn naive_circuits_produce_their_polynomial() {
    for seed in 0..30 {
        let f = random_polynomial(4, 5, 3, seed).unwrap();
        let c = build_naive(&f).unwrap();
        let g: Polynomial = c.produce(1 << 16).unwrap().remove(0);
        assert_eq!(g, f, "seed {seed}");
    }
}

#[test]
fn random_generators_are_seeded() {
    assert_eq!(random_polynomial(5, 6, 3, 9).unwrap(), random_polynomial(5, 6, 3, 9).unwrap());
    assert_eq!(random_circuit(4, 10, true, 3).unwrap(), random_circuit(4, 10, true, 3).unwrap());
    assert!(random_multilinear_polynomial(4, 6, 3, 1).unwrap().is_multilinear());
}
