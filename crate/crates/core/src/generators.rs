//! Benchmark polynomial families and dynamic-programming circuits.
//!
//! Variable layouts (all 0-based):
//!
//! * `K_{n,n}` edges `x_{i,j}`: index `i·n + j`.
//! * `K_n` undirected edges `{i, j}`, `i < j`: lexicographic, see
//!   [`edge_index`].
//! * Rooted spanning trees: directed edges `(i, j)` with `i ≥ 1`, `j ≠ i`,
//!   see [`st_var`]. Node `0` is the root.
//! * Triangle polynomial: `x_{ik}` at `i·n + k`, `y_{kj}` at `n² + k·n + j`,
//!   `z_{ij}` at `2n² + i·n + j`.
//! * Layered st-paths: `s → a` at `a`, layer `ℓ → ℓ+1` at
//!   `n + (ℓ−1)n² + a·n + b`, `a → t` at `n + (d−2)n² + a`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateId};
use crate::error::{Error, Result};
use crate::polynomial::{Monomial, Polynomial, DEFAULT_TERM_CAP};

/// A simple undirected graph on nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        let mut g = Graph::empty(raw.n);
        for (u, v) in raw.edges {
            if !g.add_edge(u, v)? {
                return Err(Error::Input(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                g.edges.insert((i, j));
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<bool> {
        if u == v {
            return Err(Error::Input(format!("loop at node {u}")));
        }
        if u as usize >= self.n || v as usize >= self.n {
            return Err(Error::Input(format!("edge ({u}, {v}) outside {} nodes", self.n)));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Adjacency as bitmasks (`n ≤ 64`).
    pub fn adjacency_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        adj
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency_masks().iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency_masks();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }
}

/// A named list of polynomials over one variable universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyFamily {
    pub name: String,
    pub members: Vec<(String, Polynomial)>,
}

fn range(what: &str, ok: bool, msg: String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::range(format!("{what}: {msg}")))
    }
}

/// Index of the undirected edge `{i, j}` of `K_n` in lexicographic order.
pub fn edge_index(n: usize, i: u32, j: u32) -> u32 {
    let (i, j) = (i.min(j) as usize, i.max(j) as usize);
    debug_assert!(i < j && j < n);
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

pub fn n_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the directed edge `(i, j)`, `i ≥ 1`, `j ≠ i`, of a rooted
/// spanning tree on `n` nodes.
pub fn st_var(n: usize, i: u32, j: u32) -> u32 {
    debug_assert!(i >= 1 && i != j);
    let row = (i - 1) as usize;
    let col = if j < i { j } else { j - 1 } as usize;
    (row * (n - 1) + col) as u32
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| (cur[i] as usize) < n - k + i) else { break };
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
    out
}

/// The permanent polynomial: one monomial `∏ x_{i,π(i)}` per permutation.
pub fn gen_perm(n: usize) -> Result<Polynomial> {
    range("perm", (2..=7).contains(&n), format!("n = {n} not in 2..=7"))?;
    let nn = n as u32;
    Polynomial::from_monomials(
        n * n,
        permutations(n)
            .into_iter()
            .map(|p| Monomial::from_vars(p.iter().enumerate().map(|(i, &j)| i as u32 * nn + j))),
    )
}

/// Hamiltonian cycles of `K_n` over undirected edge variables.
pub fn gen_hc(n: usize) -> Result<Polynomial> {
    range("hc", (3..=8).contains(&n), format!("n = {n} not in 3..=8"))?;
    let mut ms = Vec::new();
    for tail in permutations(n - 1) {
        // cycle 0, t0+1, …, t_last+1; each direction counted once
        if tail[0] > tail[n - 2] {
            continue;
        }
        let cycle: Vec<u32> = std::iter::once(0).chain(tail.iter().map(|&t| t + 1)).collect();
        let edges = (0..n).map(|k| edge_index(n, cycle[k], cycle[(k + 1) % n]));
        ms.push(Monomial::from_vars(edges));
    }
    Polynomial::from_monomials(n_edges(n), ms)
}

/// One monomial per `k`-clique of `K_n`: the product of its edges.
pub fn gen_clique(n: usize, k: usize) -> Result<Polynomial> {
    range("clique", 2 <= k && k <= n && n <= 10, format!("(n, k) = ({n}, {k})"))?;
    Polynomial::from_monomials(
        n_edges(n),
        subsets(n, k).into_iter().map(|s| {
            let mut e = Vec::new();
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    e.push(edge_index(n, s[a], s[b]));
                }
            }
            Monomial::from_vars(e)
        }),
    )
}

/// Parent functions `π: {1..n−1} → [n]` under which every node reaches 0.
fn rooted_trees(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let m = n - 1;
    let total = m.pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let mut parent = vec![0u32; n];
        for i in 1..n {
            let k = (c % m) as u32;
            c /= m;
            parent[i] = if k < i as u32 { k } else { k + 1 };
        }
        let reaches_root = (1..n).all(|start| {
            let mut v = start;
            for _ in 0..n {
                if v == 0 {
                    return true;
                }
                v = parent[v] as usize;
            }
            v == 0
        });
        if reaches_root {
            out.push(parent);
        }
    }
    out
}

/// Spanning trees of `K_n` rooted at node 0 over directed edge variables
/// `x_{i,π(i)}`, `i ≥ 1`: `n^{n−2}` monomials of degree `n − 1`.
pub fn gen_spanning_tree(n: usize) -> Result<Polynomial> {
    range("st", (3..=7).contains(&n), format!("n = {n} not in 3..=7"))?;
    Polynomial::from_monomials(
        (n - 1) * (n - 1),
        rooted_trees(n).into_iter().map(|p| {
            Monomial::from_vars((1..n).map(|i| st_var(n, i as u32, p[i])))
        }),
    )
}

/// Spanning trees of `K_n` over undirected edge variables.
pub fn gen_spanning_tree_undirected(n: usize) -> Result<Polynomial> {
    range("st", (3..=7).contains(&n), format!("n = {n} not in 3..=7"))?;
    Polynomial::from_monomials(
        n_edges(n),
        rooted_trees(n).into_iter().map(|p| {
            Monomial::from_vars((1..n).map(|i| edge_index(n, i as u32, p[i])))
        }),
    )
}

/// Simple paths from `s` to `t` in `K_n` as edge sets.
fn simple_paths(n: usize, s: u32, t: u32) -> Vec<Monomial> {
    fn rec(n: usize, v: u32, t: u32, used: &mut Vec<bool>, edges: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == t {
            out.push(Monomial::from_vars(edges.iter().copied()));
            return;
        }
        for w in 0..n as u32 {
            if !used[w as usize] {
                used[w as usize] = true;
                edges.push(edge_index(n, v, w));
                rec(n, w, t, used, edges, out);
                edges.pop();
                used[w as usize] = false;
            }
        }
    }
    let mut used = vec![false; n];
    used[s as usize] = true;
    let mut out = Vec::new();
    rec(n, s, t, &mut used, &mut Vec::new(), &mut out);
    out
}

/// Simple paths from node 0 to node `n − 1` in `K_n`.
pub fn gen_stconn(n: usize) -> Result<Polynomial> {
    range("stconn", (2..=8).contains(&n), format!("n = {n} not in 2..=8"))?;
    Polynomial::from_monomials(n_edges(n), simple_paths(n, 0, n as u32 - 1))
}

/// Simple paths between `s` and `t` in `K_n`.
pub fn gen_stconn_pair(n: usize, s: u32, t: u32) -> Result<Polynomial> {
    range("stconn", (2..=8).contains(&n) && s != t && (s.max(t) as usize) < n, format!("n = {n}, s = {s}, t = {t}"))?;
    Polynomial::from_monomials(n_edges(n), simple_paths(n, s, t))
}

pub fn layered_n_vars(n: usize, d: usize) -> usize {
    2 * n + (d - 2) * n * n
}

/// st-paths through `d − 1` inner layers of `n` nodes: `n^{d−1}` monomials
/// of degree `d`.
pub fn gen_layered_stconn(n: usize, d: usize) -> Result<Polynomial> {
    range("layered-stconn", n >= 1 && d >= 2, format!("(n, d) = ({n}, {d})"))?;
    let count = (n as u128).checked_pow(d as u32 - 1).unwrap_or(u128::MAX);
    if count > DEFAULT_TERM_CAP as u128 {
        return Err(Error::Cap(format!("{count} layered paths exceed {DEFAULT_TERM_CAP}")));
    }
    let mut ms = Vec::with_capacity(count as usize);
    let mut a = vec![0usize; d - 1];
    loop {
        let mut vars = Vec::with_capacity(d);
        vars.push(a[0] as u32);
        for l in 1..d - 1 {
            vars.push((n + (l - 1) * n * n + a[l - 1] * n + a[l]) as u32);
        }
        vars.push((n + (d - 2) * n * n + a[d - 2]) as u32);
        ms.push(Monomial::from_vars(vars));
        let mut k = 0;
        while k < d - 1 {
            a[k] += 1;
            if a[k] < n {
                break;
            }
            a[k] = 0;
            k += 1;
        }
        if k == d - 1 {
            break;
        }
    }
    Polynomial::from_monomials(layered_n_vars(n, d), ms)
}

/// `Σ_{i,j,k} x_{ik} y_{kj} z_{ij}` over `3n²` variables.
pub fn gen_triangle(n: usize) -> Result<Polynomial> {
    range("triangle", (1..=6).contains(&n), format!("n = {n} not in 1..=6"))?;
    let nn = n as u32;
    let sq = nn * nn;
    let mut ms = Vec::new();
    for i in 0..nn {
        for j in 0..nn {
            for k in 0..nn {
                ms.push(Monomial::from_vars([i * nn + k, sq + k * nn + j, 2 * sq + i * nn + j]));
            }
        }
    }
    Polynomial::from_monomials(3 * n * n, ms)
}

/// The `n²` bilinear forms `f_{ij} = Σ_k x_{ik} y_{kj}` over `2n²` variables.
pub fn gen_mp(n: usize) -> Result<PolyFamily> {
    range("mp", (1..=6).contains(&n), format!("n = {n} not in 1..=6"))?;
    let nn = n as u32;
    let sq = nn * nn;
    let mut members = Vec::new();
    for i in 0..nn {
        for j in 0..nn {
            let f = Polynomial::from_monomials(
                2 * n * n,
                (0..nn).map(|k| Monomial::from_vars([i * nn + k, sq + k * nn + j])),
            )?;
            members.push((format!("f[{i},{j}]"), f));
        }
    }
    Ok(PolyFamily { name: format!("MP_{n}"), members })
}

/// The path polynomials of all node pairs `s < t` of `K_n`; their product
/// is the connectivity polynomial.
pub fn gen_conn_factors(n: usize) -> Result<PolyFamily> {
    range("conn", (2..=8).contains(&n), format!("n = {n} not in 2..=8"))?;
    let mut members = Vec::new();
    for s in 0..n as u32 {
        for t in s + 1..n as u32 {
            members.push((format!("stconn[{s},{t}]"), gen_stconn_pair(n, s, t)?));
        }
    }
    Ok(PolyFamily { name: format!("CONN_{n}"), members })
}

/// The connectivity polynomial as a monomial set (materialized for `n ≤ 4`).
pub fn gen_conn(n: usize) -> Result<Polynomial> {
    range("conn", (2..=4).contains(&n), format!("n = {n} not in 2..=4 (use the factor family)"))?;
    let fam = gen_conn_factors(n)?;
    let mut acc = Polynomial::one(n_edges(n));
    for (_, f) in &fam.members {
        acc = acc.mul_set(f, DEFAULT_TERM_CAP)?;
    }
    Ok(acc)
}

/// `∏_{i∈S} x_i` over all node sets `S` inducing an odd number of edges.
pub fn gen_fg(g: &Graph) -> Result<Polynomial> {
    range("fg", g.n() <= 16, format!("n = {} exceeds 16", g.n()))?;
    let adj = g.adjacency_masks();
    let mut ms = Vec::new();
    for s in 0u64..(1 << g.n()) {
        if induced_edges(&adj, s) % 2 == 1 {
            ms.push(Monomial::from_vars((0..g.n() as u32).filter(|&i| s >> i & 1 == 1)));
        }
    }
    Polynomial::from_monomials(g.n(), ms)
}

/// Number of edges inside the node set `s`.
pub fn induced_edges(adj: &[u64], s: u64) -> u32 {
    let mut total = 0;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += (adj[v] & rest).count_ones();
    }
    total
}

/// Floyd–Warshall over the undirected edge variables of `K_n`:
/// `d_{ij} ← d_{ij} ⊕ d_{ik} ⊗ d_{kj}` for every pair avoiding `k`. Outputs
/// are the pairs `i < j` in lexicographic order. Uses `n(n−1)(n−2)` gates.
pub fn build_floyd_warshall(n: usize) -> Result<Circuit> {
    range("floyd-warshall", (2..=32).contains(&n), format!("n = {n} not in 2..=32"))?;
    let mut c = Circuit::builder(n_edges(n));
    let mut d = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let g = c.var(edge_index(n, i as u32, j as u32));
            d[i][j] = g;
            d[j][i] = g;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if i == k || j == k {
                    continue;
                }
                let via = c.prod(d[i][k], d[k][j]);
                let g = c.sum(d[i][j], via);
                d[i][j] = g;
                d[j][i] = g;
            }
        }
    }
    let mut outputs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            outputs.push(d[i][j]);
        }
    }
    c.set_outputs(outputs)?;
    Ok(c)
}

/// Exact gate count of [`build_floyd_warshall`].
pub fn floyd_warshall_size(n: usize) -> usize {
    n * (n - 1) * (n - 2)
}

/// Bellman–Ford for paths from node 0 to node `n − 1`:
/// `f_j^1 = x_{0j}`, `f_j^k = f_j^{k−1} ⊕ Σ_{i ∉ {0, j}} f_i^{k−1} ⊗ x_{ij}`,
/// output `f_{n−1}^{n−1}`; gates no output depends on are removed.
pub fn build_bellman_ford(n: usize) -> Result<Circuit> {
    range("bellman-ford", (2..=32).contains(&n), format!("n = {n} not in 2..=32"))?;
    let mut c = Circuit::builder(n_edges(n));
    let mut x = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let g = c.var(edge_index(n, i as u32, j as u32));
            x[i][j] = g;
            x[j][i] = g;
        }
    }
    let mut f: Vec<GateId> = (0..n).map(|j| if j == 0 { usize::MAX } else { x[0][j] }).collect();
    for _round in 2..n {
        let mut next = f.clone();
        for j in 1..n {
            let mut acc = f[j];
            for i in 1..n {
                if i == j {
                    continue;
                }
                let t = c.prod(f[i], x[i][j]);
                acc = c.sum(acc, t);
            }
            next[j] = acc;
        }
        f = next;
    }
    c.set_outputs(vec![f[n - 1]])?;
    Ok(c.prune())
}

/// Exact gate count of [`build_bellman_ford`].
pub fn bellman_ford_size(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        (n - 3) * (n - 1) * 2 * (n - 2) + 2 * (n - 2)
    }
}

/// Sum of per-monomial balanced product trees; a coefficient `c` adds
/// `c − 1` sum gates. The empty polynomial becomes a constant-0 output.
pub fn build_naive(f: &Polynomial) -> Result<Circuit> {
    if f.len() > DEFAULT_TERM_CAP {
        return Err(Error::Cap(format!("{} monomials exceed {DEFAULT_TERM_CAP}", f.len())));
    }
    let mut c = Circuit::builder(f.n_vars());
    if f.is_empty() {
        let z = c.zero();
        c.set_outputs(vec![z])?;
        return Ok(c);
    }
    let mut var_gate = std::collections::HashMap::new();
    let mut one = None;
    let mut terms = Vec::with_capacity(f.len());
    for (m, coeff) in f.terms() {
        let mut leaves = Vec::new();
        for &(i, e) in m.pairs() {
            let g = *var_gate.entry(i).or_insert_with(|| c.var(i));
            leaves.extend(std::iter::repeat(g).take(e as usize));
        }
        let p = if leaves.is_empty() {
            *one.get_or_insert_with(|| c.one())
        } else {
            balanced(&mut c, leaves, Gate::Prod { l: 0, r: 0 })
        };
        let mut t = p;
        for _ in 1..coeff {
            t = c.sum(t, p);
        }
        terms.push(t);
    }
    let out = balanced(&mut c, terms, Gate::Sum { l: 0, r: 0 });
    c.set_outputs(vec![out])?;
    Ok(c)
}

fn balanced(c: &mut Circuit, mut layer: Vec<GateId>, kind: Gate) -> GateId {
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        for pair in layer.chunks(2) {
            next.push(match pair {
                [a, b] => match kind {
                    Gate::Sum { .. } => c.sum(*a, *b),
                    _ => c.prod(*a, *b),
                },
                [a] => *a,
                _ => unreachable!(),
            });
        }
        layer = next;
    }
    layer[0]
}

/// Erdős–Rényi graph; deterministic in `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.edges.insert((i, j));
            }
        }
    }
    g
}

/// Up to `terms` distinct monomials of degree `1..=maxdeg` with coefficient
/// one; deterministic in `seed`.
pub fn random_polynomial(n: usize, terms: usize, maxdeg: u32, seed: u64) -> Result<Polynomial> {
    random_poly_impl(n, terms, maxdeg, seed, false)
}

/// As [`random_polynomial`] but multilinear (`maxdeg ≤ n`).
pub fn random_multilinear_polynomial(n: usize, terms: usize, maxdeg: u32, seed: u64) -> Result<Polynomial> {
    random_poly_impl(n, terms, maxdeg.min(n as u32), seed, true)
}

fn random_poly_impl(n: usize, terms: usize, maxdeg: u32, seed: u64, multilinear: bool) -> Result<Polynomial> {
    if n == 0 || maxdeg == 0 {
        return Err(Error::range("random polynomial needs n ≥ 1 and maxdeg ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ms = BTreeSet::new();
    let mut attempts = 0;
    while ms.len() < terms && attempts < 64 * terms.max(1) {
        attempts += 1;
        let deg = rng.gen_range(1..=maxdeg);
        let m = if multilinear {
            let mut vars: Vec<u32> = (0..n as u32).collect();
            for k in 0..deg as usize {
                let t = rng.gen_range(k..n);
                vars.swap(k, t);
            }
            Monomial::from_vars(vars[..deg as usize].iter().copied())
        } else {
            Monomial::from_pairs((0..deg).map(|_| (rng.gen_range(0..n as u32), 1)))?
        };
        ms.insert(m);
    }
    Polynomial::from_monomials(n, ms)
}

/// A random circuit with `n_gates` ⊕/⊗ gates over `n_vars` variables and
/// the constant 1; the last gate is the output. Constant 0 appears when
/// `with_zero` is set.
pub fn random_circuit(n_vars: usize, n_gates: usize, with_zero: bool, seed: u64) -> Result<Circuit> {
    if n_vars == 0 || n_gates == 0 {
        return Err(Error::range("random circuit needs variables and gates"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::builder(n_vars);
    for i in 0..n_vars as u32 {
        c.var(i);
    }
    if rng.gen_bool(0.5) {
        c.one();
    }
    if with_zero && rng.gen_bool(0.3) {
        c.zero();
    }
    for _ in 0..n_gates {
        let len = c.gates().len();
        // bias towards recent gates so the output uses most of the circuit
        let pick = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.6) {
                rng.gen_range(len.saturating_sub(3)..len)
            } else {
                rng.gen_range(0..len)
            }
        };
        let (l, r) = (pick(&mut rng), pick(&mut rng));
        if rng.gen_bool(0.55) {
            c.prod(l, r);
        } else {
            c.sum(l, r);
        }
    }
    let out = c.gates().len() - 1;
    c.set_outputs(vec![out])?;
    Ok(c)
}
