//! Test-side reference implementations. None of these call into the
//! library's algorithms; they only read polynomials through their monomial
//! lists.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dpbound::{ExtInt, Monomial, Polynomial, SemiringId};

/// Dense exponent vector.
pub type Dense = Vec<u32>;

pub fn dense(m: &Monomial, n: usize) -> Dense {
    (0..n as u32).map(|i| m.exp(i)).collect()
}

pub fn dense_terms(f: &Polynomial) -> Vec<(Dense, u128)> {
    f.terms().map(|(m, c)| (dense(m, f.n_vars()), c)).collect()
}

pub fn dense_set(f: &Polynomial) -> BTreeSet<Dense> {
    f.monomials().map(|m| dense(m, f.n_vars())).collect()
}

pub fn poly(n: usize, ms: &[&[u32]]) -> Polynomial {
    Polynomial::from_monomials(n, ms.iter().map(|m| Monomial::from_vars(m.iter().copied()))).unwrap()
}

pub fn from_dense(n: usize, ms: &BTreeSet<Dense>) -> Polynomial {
    Polynomial::from_monomials(n, ms.iter().map(|d| Monomial::from_dense(d))).unwrap()
}

pub fn divides(q: &[u32], p: &[u32]) -> bool {
    q.iter().zip(p).all(|(a, b)| a <= b)
}

fn mul_dense(p: &[u32], q: &[u32]) -> Dense {
    p.iter().zip(q).map(|(a, b)| a + b).collect()
}

/// Direct evaluation from the definition of each semiring, in `i128`.
pub fn eval_naive(f: &Polynomial, id: SemiringId, a: &[ExtInt]) -> ExtInt {
    let terms = dense_terms(f);
    match id {
        SemiringId::NatArith => {
            let mut total: i128 = 0;
            for (e, c) in &terms {
                let mut t = *c as i128;
                for (i, &k) in e.iter().enumerate() {
                    let x = a[i].finite().expect("finite natural") as i128;
                    t *= x.pow(k);
                }
                total += t;
            }
            ExtInt::Fin(total as i64)
        }
        SemiringId::Bool => {
            let on = terms.iter().any(|(e, _)| e.iter().enumerate().all(|(i, &k)| k == 0 || a[i] == ExtInt::Fin(1)));
            ExtInt::Fin(on as i64)
        }
        _ => {
            let (absorbing, better): (ExtInt, fn(ExtInt, ExtInt) -> bool) = if id.is_min() {
                (ExtInt::PosInf, |x, y| x < y)
            } else {
                (ExtInt::NegInf, |x, y| x > y)
            };
            let mut best = absorbing;
            for (e, _) in &terms {
                let mut s: Option<i128> = Some(0);
                for (i, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    match a[i] {
                        ExtInt::Fin(v) => s = s.map(|s| s + k as i128 * v as i128),
                        _ => s = None,
                    }
                }
                let v = s.map_or(absorbing, |s| ExtInt::Fin(s as i64));
                if better(v, best) {
                    best = v;
                }
            }
            best
        }
    }
}

/// Every point of `domain^vars` (other variables at `fill`).
pub fn grid(n: usize, vars: &[u32], domain: &[ExtInt], fill: ExtInt) -> Vec<Vec<ExtInt>> {
    let mut out = vec![vec![fill; n]];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|a| {
                domain.iter().map(move |&d| {
                    let mut b = a.clone();
                    b[v as usize] = d;
                    b
                })
            })
            .collect();
    }
    out
}

pub fn joint_support(f: &Polynomial, h: &Polynomial) -> Vec<u32> {
    f.support().union(&h.support()).copied().collect()
}

/// Whether `f` and `h` agree at every point of the grid.
pub fn agree_exhaustively(f: &Polynomial, h: &Polynomial, id: SemiringId, domain: &[ExtInt]) -> bool {
    let vars = joint_support(f, h);
    grid(f.n_vars(), &vars, domain, domain[0]).iter().all(|a| eval_naive(f, id, a) == eval_naive(h, id, a))
}

/// All-pairs shortest simple paths by enumerating every simple path.
/// `w[i][j] = None` is a missing edge.
pub fn apsp_brute(w: &[Vec<Option<i64>>]) -> Vec<Vec<Option<i64>>> {
    let n = w.len();
    let mut best = vec![vec![None; n]; n];
    fn walk(w: &[Vec<Option<i64>>], from: usize, at: usize, seen: u64, cost: i64, best: &mut [Vec<Option<i64>>]) {
        for next in 0..w.len() {
            if seen >> next & 1 == 1 {
                continue;
            }
            let Some(c) = w[at][next] else { continue };
            let total = cost + c;
            if best[from][next].is_none_or(|b| total < b) {
                best[from][next] = Some(total);
            }
            walk(w, from, next, seen | 1 << next, total, best);
        }
    }
    for s in 0..n {
        walk(w, s, s, 1 << s, 0, &mut best);
    }
    best
}

/// Separatedness straight from the definition: for distinct `p, q ∈ P` no
/// monomial of `f` other than `p`, `q` divides `pq`.
pub fn separated_naive(all: &[Dense], p: &[usize]) -> bool {
    for (a, &i) in p.iter().enumerate() {
        for &j in &p[a + 1..] {
            let pq = mul_dense(&all[i], &all[j]);
            if all.iter().enumerate().any(|(k, r)| k != i && k != j && divides(r, &pq)) {
                return false;
            }
        }
    }
    true
}

/// `ŝ(f)` by trying subsets from the largest size down. Only for small `f`.
pub fn shat_naive(f: &Polynomial) -> u64 {
    let all: Vec<Dense> = dense_set(f).into_iter().collect();
    let m = all.len();
    assert!(m <= 20, "naive search is exponential");
    if m == 0 {
        return 0;
    }
    for size in (1..=m).rev() {
        let mut found = false;
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let p: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            if separated_naive(&all, &p) {
                found = true;
                break;
            }
        }
        if found {
            return size as u64 - 1;
        }
    }
    unreachable!("single monomials are separated")
}

/// Number of node subsets inducing an odd number of edges.
pub fn parity_count(n: usize, edges: &[(u32, u32)]) -> u64 {
    (0u64..1 << n)
        .filter(|s| edges.iter().filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1).count() % 2 == 1)
        .count() as u64
}

/// Minimum number of ⊕/⊗ gates producing exactly the monomial set of `f`
/// from its support variables and the constant 1, by plain enumeration of
/// straight-line programs. `None` if more than `max_gates` are needed.
pub fn min_produce_naive(f: &Polynomial, max_gates: usize) -> Option<usize> {
    let n = f.n_vars();
    let target = dense_set(f);
    let mut nodes: Vec<BTreeSet<Dense>> = vec![[vec![0; n]].into_iter().collect()];
    for v in f.support() {
        let mut e = vec![0; n];
        e[v as usize] = 1;
        nodes.push([e].into_iter().collect());
    }
    if nodes.contains(&target) {
        return Some(0);
    }
    // a monomial that divides no target monomial can never be cancelled
    let useful = |s: &BTreeSet<Dense>| s.iter().all(|m| target.iter().any(|t| divides(m, t)));
    fn go(
        nodes: &mut Vec<BTreeSet<Dense>>,
        left: usize,
        target: &BTreeSet<Dense>,
        useful: &dyn Fn(&BTreeSet<Dense>) -> bool,
    ) -> bool {
        if left == 0 {
            return false;
        }
        let len = nodes.len();
        for a in 0..len {
            for b in a..len {
                for prod in [false, true] {
                    let v: BTreeSet<Dense> = if prod {
                        nodes[a].iter().flat_map(|p| nodes[b].iter().map(move |q| mul_dense(p, q))).collect()
                    } else {
                        nodes[a].union(&nodes[b]).cloned().collect()
                    };
                    if &v == target {
                        return true;
                    }
                    if !useful(&v) || nodes.contains(&v) {
                        continue;
                    }
                    nodes.push(v);
                    let hit = go(nodes, left - 1, target, useful);
                    nodes.pop();
                    if hit {
                        return true;
                    }
                }
            }
        }
        false
    }
    (1..=max_gates).find(|&k| go(&mut nodes.clone(), k, &target, &useful))
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Monomial set produced at every gate, straight from the gate semantics.
pub fn produce_naive(c: &dpbound::Circuit) -> Vec<BTreeSet<Dense>> {
    use dpbound::circuit::Gate;
    let n = c.n_vars();
    let mut vals: Vec<BTreeSet<Dense>> = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        let v = match *g {
            Gate::Var { i } => {
                let mut e = vec![0; n];
                e[i as usize] = 1;
                [e].into_iter().collect()
            }
            Gate::Zero => BTreeSet::new(),
            Gate::One => [vec![0; n]].into_iter().collect(),
            Gate::Sum { l, r } => vals[l].union(&vals[r]).cloned().collect(),
            Gate::Prod { l, r } => set_mul(&vals[l], &vals[r]),
        };
        vals.push(v);
    }
    vals
}

pub fn set_mul(a: &BTreeSet<Dense>, b: &BTreeSet<Dense>) -> BTreeSet<Dense> {
    a.iter().flat_map(|p| b.iter().map(move |q| mul_dense(p, q))).collect()
}
