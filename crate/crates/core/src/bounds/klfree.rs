//! `(k,l)`-freeness: no `A·B ⊆ f` with `|A| > k` and `|B| > l`.
//!
//! For multilinear `f` every such product splits each monomial of `f` it
//! covers into an `A`-part and a `B`-part, so it suffices to look for a
//! `(k+1) × (l+1)` biclique in the relation `{(a, b) : a·b ∈ f}` over all
//! factor splits of the monomials of `f`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{CertKind, Certificate, MeasureId, Witness};
use crate::error::{Error, Result};
use crate::polynomial::{Monomial, Polynomial};

pub const TERM_CAP: usize = 4096;
/// Bound on the number of factor splits examined.
pub const SPLIT_CAP: u64 = 1 << 22;

#[derive(Clone, Debug, Serialize)]
pub struct KlCheck {
    pub free: bool,
    /// A violating pair `(A, B)` with `|A| = k + 1`, `|B| = l + 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Vec<Monomial>, Vec<Monomial>)>,
}

pub fn kl_free_check(f: &Polynomial, k: u64, l: u64) -> Result<KlCheck> {
    if k == 0 || l == 0 {
        return Err(Error::range("k and l must be at least 1"));
    }
    if !f.is_multilinear() {
        return Err(Error::precondition("(k,l)-freeness search needs a multilinear polynomial"));
    }
    if f.len() > TERM_CAP {
        return Err(Error::Cap(format!("{} monomials exceed {TERM_CAP}", f.len())));
    }
    let splits: u64 = f.monomials().map(|m| 1u64 << m.length().min(40)).sum();
    if splits > SPLIT_CAP {
        return Err(Error::Cap(format!("{splits} factor splits exceed {SPLIT_CAP}")));
    }

    // left factor -> sorted ids of cofactors
    let mut right_ids: HashMap<Monomial, usize> = HashMap::new();
    let mut right: Vec<Monomial> = Vec::new();
    let mut nbrs: BTreeMap<Monomial, Vec<usize>> = BTreeMap::new();
    for p in f.monomials() {
        let vars: Vec<u32> = p.vars().collect();
        for mask in 0u64..(1 << vars.len()) {
            let a = Monomial::from_vars((0..vars.len()).filter(|&t| mask >> t & 1 == 1).map(|t| vars[t]));
            let b = Monomial::from_vars((0..vars.len()).filter(|&t| mask >> t & 1 == 0).map(|t| vars[t]));
            let id = *right_ids.entry(b.clone()).or_insert_with(|| {
                right.push(b);
                right.len() - 1
            });
            nbrs.entry(a).or_default().push(id);
        }
    }
    let need_a = (k + 1) as usize;
    let need_b = (l + 1) as usize;
    let left: Vec<(Monomial, Vec<usize>)> = nbrs
        .into_iter()
        .filter(|(_, n)| n.len() >= need_b)
        .map(|(a, mut n)| {
            n.sort_unstable();
            (a, n)
        })
        .collect();

    let mut chosen = Vec::new();
    let found = search(&left, 0, None, need_a, need_b, &mut chosen);
    Ok(match found {
        Some(common) => KlCheck {
            free: false,
            witness: Some((
                chosen.iter().map(|&t| left[t].0.clone()).collect(),
                common[..need_b].iter().map(|&id| right[id].clone()).collect(),
            )),
        },
        None => KlCheck { free: true, witness: None },
    })
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn search(
    left: &[(Monomial, Vec<usize>)],
    from: usize,
    common: Option<&[usize]>,
    need_a: usize,
    need_b: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == need_a {
        return common.map(|c| c.to_vec());
    }
    for t in from..left.len() {
        if left.len() - t < need_a - chosen.len() {
            break;
        }
        let next = match common {
            None => left[t].1.clone(),
            Some(c) => intersect(c, &left[t].1),
        };
        if next.len() < need_b {
            continue;
        }
        chosen.push(t);
        if let Some(found) = search(left, t + 1, Some(&next), need_a, need_b, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

pub(crate) fn kl_value(terms: u64, k: u64, l: u64) -> u64 {
    terms.div_ceil(2 * k * l * l)
}

/// `R[f] ≥ ⌈|f| / (2kl²)⌉` for `(k,l)`-free `f`, `k ≤ l`.
pub fn kl_bound(f: &Polynomial, k: u64, l: u64) -> Result<Certificate> {
    if k > l {
        return Err(Error::precondition(format!("(k,l)-free bound needs k ≤ l, got ({k},{l})")));
    }
    let check = kl_free_check(f, k, l)?;
    if !check.free {
        let (a, b) = check.witness.unwrap_or_default();
        return Err(Error::precondition(format!(
            "not ({k},{l})-free: contains the product of {{{}}} and {{{}}}",
            a.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "),
            b.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(Certificate::new(
        CertKind::KlFree,
        kl_value(f.len() as u64, k, l),
        MeasureId::ProduceSize,
        f,
        Witness::KlFree {
            k,
            l,
            terms: f.len() as u64,
            note: "no (k+1)×(l+1) product found by exhaustive split search".into(),
        },
        "sum of at most 2s products with |A| ≤ k and |B| ≤ l²",
    ))
}
