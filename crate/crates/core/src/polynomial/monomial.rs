use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial `x_{i1}^{a1} ··· x_{ik}^{ak}` stored as `(variable, exponent)`
/// pairs sorted by variable. Exponents are never zero, so the empty list is
/// the constant monomial `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: u32) -> Self {
        Monomial(vec![(i, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self> {
        let mut v: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_unstable_by_key(|&(i, _)| i);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some((j, f)) if *j == i => {
                    *f = f.checked_add(e).ok_or(Error::Overflow("monomial exponent"))?
                }
                _ => out.push((i, e)),
            }
        }
        Ok(Monomial(out))
    }

    /// The multilinear monomial `∏_{i∈vars} x_i`.
    pub fn from_vars<I: IntoIterator<Item = u32>>(vars: I) -> Self {
        let mut v: Vec<u32> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Monomial(v.into_iter().map(|i| (i, 1)).collect())
    }

    /// Builds from a dense exponent vector.
    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u32, e))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|&(i, _)| i)
    }

    pub fn exp(&self, i: u32) -> u32 {
        match self.0.binary_search_by_key(&i, |&(j, _)| j) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    /// Number of distinct variables.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).ok_or(Error::Overflow("monomial exponent"))?;
                    out.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Monomial(out))
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> Result<Monomial> {
        if k == 0 {
            return Ok(Monomial::one());
        }
        let v = self
            .0
            .iter()
            .map(|&(i, e)| e.checked_mul(k).map(|e| (i, e)))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("monomial exponent"))?;
        Ok(Monomial(v))
    }

    /// `self = q · q'` for some monomial `q'`.
    pub fn contains(&self, q: &Monomial) -> bool {
        let mut it = self.0.iter();
        'outer: for &(qi, qe) in &q.0 {
            for &(pi, pe) in it.by_ref() {
                match pi.cmp(&qi) {
                    Ordering::Less => continue,
                    Ordering::Equal if pe >= qe => continue 'outer,
                    _ => return false,
                }
            }
            return false;
        }
        true
    }

    /// `self / q` when `q` divides `self`.
    pub fn divide(&self, q: &Monomial) -> Option<Monomial> {
        if !self.contains(q) {
            return None;
        }
        let out = self
            .0
            .iter()
            .filter_map(|&(i, e)| {
                let r = e - q.exp(i);
                (r > 0).then_some((i, r))
            })
            .collect();
        Some(Monomial(out))
    }

    /// Every exponent clamped to one.
    pub fn multilinearize(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(i, _)| (i, 1)).collect())
    }

    /// Removes `x_i` entirely, returning the dropped exponent.
    pub fn without_var(&self, i: u32) -> (Monomial, u32) {
        let e = self.exp(i);
        (Monomial(self.0.iter().copied().filter(|&(j, _)| j != i).collect()), e)
    }

    /// Calls `visit` once for every divisor of `self` of degree exactly `r`.
    /// Returns the number of divisors visited.
    pub fn for_each_factor_of_degree(&self, r: u64, mut visit: impl FnMut(&Monomial)) -> u64 {
        if r > self.degree() {
            return 0;
        }
        let mut buf: Vec<(u32, u32)> = Vec::with_capacity(self.0.len());
        let mut suffix = vec![0u64; self.0.len() + 1];
        for k in (0..self.0.len()).rev() {
            suffix[k] = suffix[k + 1] + self.0[k].1 as u64;
        }
        let mut count = 0;
        factor_rec(&self.0, &suffix, 0, r, &mut buf, &mut |m| {
            count += 1;
            visit(m)
        });
        count
    }

    /// Number of divisors of degree `r` (without enumerating them).
    pub fn count_factors_of_degree(&self, r: u64) -> u128 {
        // dp[t] = number of ways to pick exponents summing to t
        let r = r as usize;
        let mut dp = vec![0u128; r + 1];
        dp[0] = 1;
        for &(_, e) in &self.0 {
            let mut next = vec![0u128; r + 1];
            for (t, &ways) in dp.iter().enumerate() {
                if ways == 0 {
                    continue;
                }
                for a in 0..=e as usize {
                    if t + a > r {
                        break;
                    }
                    next[t + a] = next[t + a].saturating_add(ways);
                }
            }
            dp = next;
        }
        dp[r]
    }
}

fn factor_rec(
    src: &[(u32, u32)],
    suffix: &[u64],
    k: usize,
    left: u64,
    buf: &mut Vec<(u32, u32)>,
    visit: &mut dyn FnMut(&Monomial),
) {
    if left == 0 {
        let m = Monomial(buf.clone());
        visit(&m);
        return;
    }
    if k == src.len() || suffix[k] < left {
        return;
    }
    let (i, e) = src[k];
    let hi = (e as u64).min(left);
    for a in (0..=hi).rev() {
        if a > 0 {
            buf.push((i, a as u32));
        }
        factor_rec(src, suffix, k + 1, left - a, buf, visit);
        if a > 0 {
            buf.pop();
        }
    }
}

/// Degree first, then the dense exponent vectors `(a_0, a_1, …)` compared
/// lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        // a has a positive exponent where b has zero
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            o => return o,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(i, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
