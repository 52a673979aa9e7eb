//! Matching number, mixedness and the parity-polynomial bound
//! `R[f_G] ≥ 2^{m(G)−2}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CertKind, Certificate, MeasureId, Witness};
use crate::error::{Error, Result};
use crate::generators::{gen_fg, induced_edges, Graph};

pub const MATCHING_CAP: usize = 14;
pub const RECTANGLE_CAP: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingWitness {
    /// `m(G)`.
    pub value: u64,
    /// The side `S` of a minimizing balanced partition.
    pub partition: Vec<u32>,
    /// A largest induced matching of crossing edges for that partition.
    pub matching: Vec<(u32, u32)>,
}

fn balanced(n: usize, size: usize) -> bool {
    3 * size >= n && 3 * size <= 2 * n
}

fn mask_nodes(mask: u64) -> Vec<u32> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Adjacency masks of the crossing edges of the partition `(s, ¬s)`.
fn crossing(adj: &[u64], s: u64) -> Vec<u64> {
    let all = (1u64 << adj.len()) - 1;
    adj.iter()
        .enumerate()
        .map(|(v, &a)| if s >> v & 1 == 1 { a & !s & all } else { a & s })
        .collect()
}

/// Largest induced matching of the graph `h` restricted to `verts`.
pub fn max_induced_matching(h: &[u64], verts: u64) -> Vec<(u32, u32)> {
    let Some(u) = mask_nodes(verts).into_iter().find(|&u| h[u as usize] & verts != 0) else {
        return Vec::new();
    };
    let u = u as usize;
    // either u stays unmatched (and constrains nothing) or it is matched
    let mut best = max_induced_matching(h, verts & !(1 << u));
    let mut nb = h[u] & verts;
    while nb != 0 {
        let v = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        let removed = (1 << u) | (1 << v) | h[u] | h[v];
        let rest = max_induced_matching(h, verts & !removed);
        if rest.len() + 1 > best.len() {
            best = std::iter::once((u as u32, v as u32)).chain(rest).collect();
        }
    }
    best
}

/// `m(G)`: the minimum over balanced partitions (`n/3 ≤ |S| ≤ 2n/3`) of the
/// largest induced matching formed by crossing edges.
pub fn matching_number(g: &Graph) -> Result<MatchingWitness> {
    let n = g.n();
    if !(2..=MATCHING_CAP).contains(&n) {
        return Err(Error::range(format!("matching number needs 2 ≤ n ≤ {MATCHING_CAP}, got {n}")));
    }
    let adj = g.adjacency_masks();
    // partitions are unordered; keep node 0 on the S side
    let best = (0u64..(1 << (n - 1)))
        .into_par_iter()
        .map(|rest| (rest << 1) | 1)
        .filter(|&s| balanced(n, s.count_ones() as usize))
        .map(|s| {
            let h = crossing(&adj, s);
            let m = max_induced_matching(&h, (1 << n) - 1);
            (m.len(), s, m)
        })
        .min_by_key(|(len, s, _)| (*len, *s))
        .ok_or_else(|| Error::Internal("no balanced partition".into()))?;
    let (len, s, m) = best;
    Ok(MatchingWitness {
        value: len as u64,
        partition: mask_nodes(s),
        matching: m.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect(),
    })
}

pub(crate) fn matching_witness_valid(g: &Graph, w: &MatchingWitness) -> bool {
    let n = g.n();
    if w.partition.iter().any(|&v| v as usize >= n) {
        return false;
    }
    let s: u64 = w.partition.iter().map(|&v| 1u64 << v).fold(0, |a, b| a | b);
    if !balanced(n, s.count_ones() as usize) || w.matching.len() as u64 != w.value {
        return false;
    }
    let h = crossing(&g.adjacency_masks(), s);
    let mut used = 0u64;
    for &(u, v) in &w.matching {
        if u as usize >= n || v as usize >= n || h[u as usize] >> v & 1 == 0 {
            return false;
        }
        if used >> u & 1 == 1 || used >> v & 1 == 1 {
            return false;
        }
        used |= (1 << u) | (1 << v);
    }
    // no crossing edge between endpoints of different matching edges
    w.matching.iter().all(|&(u, v)| {
        let others = used & !((1 << u) | (1 << v));
        (h[u as usize] | h[v as usize]) & others == 0
    })
}

/// Every two disjoint `s`-element node sets are joined by an edge.
pub fn mixedness_check(g: &Graph, s: usize) -> Result<bool> {
    let n = g.n();
    if n > MATCHING_CAP {
        return Err(Error::range(format!("mixedness check needs n ≤ {MATCHING_CAP}, got {n}")));
    }
    if s == 0 {
        return Err(Error::range("mixedness needs s ≥ 1"));
    }
    if 2 * s > n {
        return Ok(true);
    }
    let adj = g.adjacency_masks();
    let all = (1u64 << n) - 1;
    for a in 0u64..(1 << n) {
        if a.count_ones() as usize != s {
            continue;
        }
        let mut nb = 0u64;
        for v in mask_nodes(a) {
            nb |= adj[v as usize];
        }
        // an s-set avoiding a and its neighbourhood would be unjoined
        if ((all & !a & !nb).count_ones() as usize) >= s {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn expander_value(m: u64) -> u64 {
    if m >= 2 {
        1 << (m - 2)
    } else {
        1
    }
}

/// `R[f_G] ≥ ⌈2^{m(G)−2}⌉` for a graph with at least one edge.
pub fn expander_bound(g: &Graph) -> Result<Certificate> {
    if g.n_edges() == 0 {
        return Err(Error::precondition("expander bound needs a graph with at least one edge"));
    }
    let matching = matching_number(g)?;
    let f = gen_fg(g)?;
    Ok(Certificate::new(
        CertKind::Expander,
        expander_value(matching.value),
        MeasureId::ProduceSize,
        &f,
        Witness::Expander { graph: g.clone(), matching },
        "every product sub-polynomial has at most 2^{n−m(G)} monomials",
    ))
}

/// Outcome of the exhaustive search for product sub-polynomials
/// `A(Y)·B(Z) ⊆ f_G` over variable partitions with `|Y|, |Z| ≥ n/3`.
#[derive(Clone, Debug, Serialize)]
pub struct RectangleCapReport {
    pub n: usize,
    pub partitions: usize,
    /// Largest `|A·B|` found over all partitions.
    pub max_product: u64,
    /// `2^{n − m(G)}`.
    pub global_cap: u64,
    /// Partitions where `|A·B|` exceeds `2^{n − m_P}`, `m_P` the largest
    /// induced crossing matching of that partition.
    pub violations: usize,
}

pub fn product_rectangle_cap(g: &Graph) -> Result<RectangleCapReport> {
    let n = g.n();
    if !(2..=RECTANGLE_CAP).contains(&n) {
        return Err(Error::range(format!("rectangle search needs 2 ≤ n ≤ {RECTANGLE_CAP}, got {n}")));
    }
    let adj = g.adjacency_masks();
    let phi: Vec<bool> = (0u64..(1 << n)).map(|s| induced_edges(&adj, s) % 2 == 1).collect();
    let global = matching_number(g)?;
    let full = (1u64 << n) - 1;
    let parts: Vec<u64> = (0u64..(1 << (n - 1)))
        .map(|rest| (rest << 1) | 1)
        .filter(|&y| balanced(n, y.count_ones() as usize))
        .collect();
    let results: Vec<(u64, bool)> = parts
        .par_iter()
        .map(|&y| {
            let z = full & !y;
            let (small, large) = if y.count_ones() <= z.count_ones() { (y, z) } else { (z, y) };
            let small_subs = submasks(small);
            let large_subs = submasks(large);
            let rows: Vec<u64> = small_subs
                .iter()
                .map(|&a| {
                    let mut row = 0u64;
                    for (c, &b) in large_subs.iter().enumerate() {
                        if phi[(a | b) as usize] {
                            row |= 1 << c;
                        }
                    }
                    row
                })
                .collect();
            let k = rows.len();
            let mut common = vec![u64::MAX; 1 << k];
            let mut best = 0u64;
            for set in 1usize..(1 << k) {
                let low = set.trailing_zeros() as usize;
                common[set] = common[set & (set - 1)] & rows[low];
                let v = set.count_ones() as u64 * common[set].count_ones() as u64;
                best = best.max(v);
            }
            let m_p = max_induced_matching(&crossing(&adj, y), full).len();
            (best, best > 1u64 << (n - m_p))
        })
        .collect();
    Ok(RectangleCapReport {
        n,
        partitions: parts.len(),
        max_product: results.iter().map(|r| r.0).max().unwrap_or(0),
        global_cap: 1 << (n as u64 - global.value),
        violations: results.iter().filter(|r| r.1).count(),
    })
}

fn submasks(mask: u64) -> Vec<u64> {
    let nodes = mask_nodes(mask);
    (0u64..(1 << nodes.len()))
        .map(|t| nodes.iter().enumerate().filter(|(i, _)| t >> i & 1 == 1).map(|(_, &v)| 1u64 << v).sum())
        .collect()
}
