//! Separated sub-polynomials and the progress measure `ŝ(f)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CertKind, Certificate, MeasureId, Witness};
use crate::error::{Error, Result};
use crate::polynomial::{EnrichMode, Monomial, Polynomial};

/// Largest polynomial handled by the exact clique search.
pub const EXACT_CAP: usize = 64;
/// Largest polynomial for which the compatibility graph is built at all.
pub const GREEDY_CAP: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchnorrMode {
    Exact,
    Greedy,
}

/// `pq` contains no monomial of `f` other than `p` and `q`.
fn compatible(f: &[&Monomial], p: &Monomial, q: &Monomial) -> Result<bool> {
    let pq = p.mul(q)?;
    let deg = pq.degree();
    Ok(f.iter().all(|r| *r == p || *r == q || r.degree() > deg || !pq.contains(r)))
}

/// Checks separatedness of `p` within the whole of `f`: for distinct
/// `p, q ∈ P` the product `pq` contains no third monomial of `f`.
pub fn separated_check(f: &Polynomial, p: &[Monomial]) -> Result<bool> {
    if let Some(bad) = p.iter().find(|m| !f.contains_monomial(m)) {
        return Err(Error::precondition(format!("{bad} is not a monomial of the polynomial")));
    }
    let all: Vec<&Monomial> = f.monomials().collect();
    for (a, pa) in p.iter().enumerate() {
        for pb in &p[a + 1..] {
            if pa != pb && !compatible(&all, pa, pb)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Adjacency rows of the compatibility graph over the monomials of `f` in
/// canonical order, as bitsets of `u64` words.
pub fn compatibility_graph(f: &Polynomial) -> Result<Vec<Vec<u64>>> {
    if f.len() > GREEDY_CAP {
        return Err(Error::Cap(format!("{} monomials exceed the separatedness cap {GREEDY_CAP}", f.len())));
    }
    let all: Vec<&Monomial> = f.monomials().collect();
    let n = all.len();
    let words = n.div_ceil(64).max(1);
    let rows: Result<Vec<Vec<u64>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = vec![0u64; words];
            for b in 0..n {
                if a != b && compatible(&all, all[a], all[b])? {
                    row[b / 64] |= 1 << (b % 64);
                }
            }
            Ok(row)
        })
        .collect();
    rows
}

/// Maximum clique of a graph on at most 64 vertices (bitset rows), by
/// branch and bound with a greedy colouring bound. Ties resolve to the
/// clique found first in vertex order.
pub fn max_clique(adj: &[u64]) -> Vec<usize> {
    assert!(adj.len() <= 64, "max_clique handles at most 64 vertices");
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = greedy_clique(adj, all);
    let mut current = Vec::new();
    expand(adj, all, &mut current, &mut best);
    best.sort_unstable();
    best
}

fn greedy_clique(adj: &[u64], mut cand: u64) -> Vec<usize> {
    let mut clique = Vec::new();
    while cand != 0 {
        // highest remaining degree first, lowest index on ties
        let mut pick = cand.trailing_zeros() as usize;
        let mut pick_deg = (adj[pick] & cand).count_ones();
        let mut rest = cand & (cand - 1);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[v] & cand).count_ones();
            if d > pick_deg {
                pick = v;
                pick_deg = d;
            }
        }
        clique.push(pick);
        cand &= adj[pick];
    }
    clique
}

fn expand(adj: &[u64], cand: u64, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    // colour classes give an upper bound on the clique inside `cand`
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut uncoloured = cand;
    let mut colour = 0usize;
    while uncoloured != 0 {
        colour += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= q - 1;
            q &= !adj[v];
            uncoloured &= !(1 << v);
            order.push((v, colour));
        }
    }
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if current.len() + c <= best.len() {
            return;
        }
        current.push(v);
        let next = cand & adj[v];
        if next == 0 {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, next, current, best);
        }
        current.pop();
        cand &= !(1 << v);
    }
}

fn greedy_clique_wide(adj: &[Vec<u64>], n: usize) -> Vec<usize> {
    let degree = |v: usize| adj[v].iter().map(|w| w.count_ones()).sum::<u32>();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[u][v / 64] >> (v % 64) & 1 == 1) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

/// A largest separated sub-polynomial (exact) or a maximal one (greedy).
fn separated_subset(f: &Polynomial, mode: SchnorrMode) -> Result<Vec<Monomial>> {
    if mode == SchnorrMode::Exact && f.len() > EXACT_CAP {
        return Err(Error::Cap(format!(
            "exact separatedness search needs at most {EXACT_CAP} monomials, got {}",
            f.len()
        )));
    }
    let adj = compatibility_graph(f)?;
    let idx = match mode {
        SchnorrMode::Exact => max_clique(&adj.iter().map(|r| r[0]).collect::<Vec<_>>()),
        SchnorrMode::Greedy => greedy_clique_wide(&adj, f.len()),
    };
    let all: Vec<&Monomial> = f.monomials().collect();
    Ok(idx.into_iter().map(|i| all[i].clone()).collect())
}

/// `ŝ(f)`: one less than the size of a largest separated sub-polynomial
/// (zero for the empty polynomial).
pub fn schnorr_measure(f: &Polynomial) -> Result<u64> {
    if f.is_empty() {
        return Ok(0);
    }
    Ok(separated_subset(f, SchnorrMode::Exact)?.len() as u64 - 1)
}

/// Certificate `R[f] ≥ |P| − 1` for a separated `P ⊆ f`.
pub fn max_separated(f: &Polynomial, mode: SchnorrMode) -> Result<Certificate> {
    let p = separated_subset(f, mode)?;
    let value = p.len().saturating_sub(1) as u64;
    Ok(Certificate::new(
        CertKind::Schnorr,
        value,
        MeasureId::ProduceSize,
        f,
        Witness::Schnorr { exact: mode == SchnorrMode::Exact, separated: p },
        match mode {
            SchnorrMode::Exact => "maximum separated sub-polynomial",
            SchnorrMode::Greedy => "maximal separated sub-polynomial found greedily; a valid but possibly weaker bound",
        },
    ))
}

/// One enrichment `x_k ↦ x_i ∘ x_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enrichment {
    pub k: u32,
    pub i: u32,
    pub j: u32,
    pub product: bool,
}

impl Enrichment {
    pub fn mode(&self) -> EnrichMode {
        if self.product {
            EnrichMode::Product
        } else {
            EnrichMode::Sum
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProgressStep {
    pub enrichment: Enrichment,
    pub before: u64,
    pub after: u64,
    /// `after ≤ before + 1` for sums and `after ≤ before` for products.
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProgressReport {
    /// `ŝ(x_i) = 0` for every variable of the universe.
    pub variables_ok: bool,
    pub steps: Vec<ProgressStep>,
    pub violations: usize,
}

/// Samples up to `count` valid enrichments of `g`: `x_k` occurs in `g`,
/// `i, j ≠ k` and `i ≠ j`, half sums and half products.
pub fn random_enrichments(g: &Polynomial, count: usize, seed: u64) -> Vec<Enrichment> {
    let support: Vec<u32> = g.support().into_iter().collect();
    let n = g.n_vars() as u32;
    if support.is_empty() || n < 3 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|t| {
            let k = support[rng.gen_range(0..support.len())];
            let mut pick = |avoid: &[u32]| loop {
                let v = rng.gen_range(0..n);
                if !avoid.contains(&v) {
                    break v;
                }
            };
            let i = pick(&[k]);
            let j = pick(&[k, i]);
            Enrichment { k, i, j, product: t % 2 == 1 }
        })
        .collect()
}

/// Checks that `ŝ` behaves as a progress measure on `g`: zero on variables,
/// growth at most one per sum enrichment and none per product enrichment.
pub fn progress_measure_suite(g: &Polynomial, enrichments: &[Enrichment]) -> Result<ProgressReport> {
    let n = g.n_vars();
    let mut variables_ok = true;
    for i in 0..n as u32 {
        if schnorr_measure(&Polynomial::var(n, i))? != 0 {
            variables_ok = false;
        }
    }
    let before = schnorr_measure(g)?;
    let mut steps = Vec::with_capacity(enrichments.len());
    for &e in enrichments {
        let h = g.enrich(e.k, e.i, e.j, e.mode())?;
        let after = schnorr_measure(&h)?;
        let ok = if e.product { after <= before } else { after <= before + 1 };
        steps.push(ProgressStep { enrichment: e, before, after, ok });
    }
    let violations = steps.iter().filter(|s| !s.ok).count() + usize::from(!variables_ok);
    Ok(ProgressReport { variables_ok, steps, violations })
}
