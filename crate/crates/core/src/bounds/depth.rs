//! Depth lower bounds from factor-density decreases.
//!
//! All arithmetic is exact: decreases are rationals and the logarithm is
//! taken as the ceiling of `log₂` of the final product.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CertKind, Certificate, ExactRational, MeasureId, Witness};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::semiring::ExtInt;

fn min_degree(f: &Polynomial) -> Result<u64> {
    match f.min_degree() {
        ExtInt::Fin(d) => Ok(d as u64),
        _ => Err(Error::precondition("depth bound of the empty polynomial")),
    }
}

/// `d(f, t)` for `t = 0..d`.
fn densities(f: &Polynomial, d: u64) -> Result<Vec<u64>> {
    (0..=d).map(|t| f.factor_density(t)).collect()
}

fn decrease(dens: &[u64], d: u64, r: u64, s: u64) -> BigRational {
    let num = BigInt::from(dens[(d - r) as usize]);
    let den = BigInt::from(dens[(d - s) as usize]) * BigInt::from(dens[(d - r + s) as usize]);
    BigRational::new(num, den)
}

/// `N(f; r, s) = d(f, d−r) / (d(f, d−s) · d(f, d−r+s))` with `d` the minimum
/// degree of `f` and `1 ≤ s < r ≤ d`.
pub fn depth_decrease(f: &Polynomial, r: u64, s: u64) -> Result<BigRational> {
    let d = min_degree(f)?;
    if !(1 <= s && s < r && r <= d) {
        return Err(Error::range(format!("decrease needs 1 ≤ s < r ≤ d = {d}, got r = {r}, s = {s}")));
    }
    let dens = densities(f, d)?;
    Ok(decrease(&dens, d, r, s))
}

/// The smallest integer `k` with `2^k ≥ q`, for `q > 0`.
pub fn ceil_log2(q: &BigRational) -> i64 {
    assert!(q.is_positive(), "log of a non-positive rational");
    let (num, den) = (q.numer().clone(), q.denom().clone());
    let mut k = num.bits() as i64 - den.bits() as i64;
    let holds = |k: i64| {
        if k >= 0 {
            (den.clone() << k as usize) >= num
        } else {
            den >= (num.clone() << (-k) as usize)
        }
    };
    while !holds(k) {
        k += 1;
    }
    while holds(k - 1) {
        k -= 1;
    }
    k
}

/// `⌈log₂ d⌉` for `d ≥ 1`.
fn steps_for(d: u64) -> u64 {
    64 - (d - 1).leading_zeros() as u64
}

/// Product of decreases along an admissible sequence
/// `d = r_0 > r_1 > … > r_m = 1` with `2·r_{i+1} ≥ r_i` and `m = ⌈log₂ d⌉`;
/// `None` if the sequence is not admissible.
pub(crate) fn sequence_product(f: &Polynomial, seq: &[u64]) -> Result<Option<BigRational>> {
    let d = min_degree(f)?;
    let m = steps_for(d);
    if seq.len() as u64 != m + 1 || seq[0] != d || *seq.last().unwrap() != 1 {
        return Ok(None);
    }
    if seq.windows(2).any(|w| !(w[1] < w[0] && 2 * w[1] >= w[0])) {
        return Ok(None);
    }
    let dens = densities(f, d)?;
    Ok(Some(seq.windows(2).fold(BigRational::one(), |acc, w| acc * decrease(&dens, d, w[0], w[1]))))
}

/// `depth(f) ≥ m + ⌈log₂ ∏ N(f; r_i, r_{i+1})⌉`, minimised over all
/// admissible degree sequences by dynamic programming over degree values,
/// since the argument only guarantees that some sequence works.
pub fn depth_lower_bound(f: &Polynomial) -> Result<Certificate> {
    let d = min_degree(f)?;
    if d < 2 {
        return Err(Error::precondition(format!("depth bound needs minimum degree ≥ 2, got {d}")));
    }
    let m = steps_for(d);
    let dens = densities(f, d)?;
    // best[r] = (smallest product reaching degree r after i steps, predecessor chain)
    let mut best: Vec<Option<(BigRational, Vec<u64>)>> = vec![None; d as usize + 1];
    best[d as usize] = Some((BigRational::one(), vec![d]));
    for _ in 0..m {
        let mut next: Vec<Option<(BigRational, Vec<u64>)>> = vec![None; d as usize + 1];
        for r in 2..=d {
            let Some((p, seq)) = &best[r as usize] else { continue };
            for s in r.div_ceil(2)..r {
                let q = p * decrease(&dens, d, r, s);
                let better = match &next[s as usize] {
                    None => true,
                    Some((old, old_seq)) => q < *old || (q == *old && {
                        let mut cand = seq.clone();
                        cand.push(s);
                        cand < *old_seq
                    }),
                };
                if better {
                    let mut cand = seq.clone();
                    cand.push(s);
                    next[s as usize] = Some((q, cand));
                }
            }
        }
        best = next;
    }
    let (product, sequence) = best[1]
        .clone()
        .ok_or_else(|| Error::Internal(format!("no admissible degree sequence from {d}")))?;
    if product.is_zero() {
        return Err(Error::Internal("zero decrease product".into()));
    }
    let log2_ceil = ceil_log2(&product);
    let value = (m as i64 + log2_ceil).max(0) as u64;
    let decreases = sequence.windows(2).map(|w| ExactRational::from(&decrease(&dens, d, w[0], w[1]))).collect();
    Ok(Certificate::new(
        CertKind::Depth,
        value,
        MeasureId::Depth,
        f,
        Witness::Depth {
            degree: d,
            steps: m,
            sequence,
            decreases,
            product: ExactRational::from(&product),
            log2_ceil,
        },
        "minimum over all admissible degree sequences; the argument guarantees only some sequence",
    ))
}
