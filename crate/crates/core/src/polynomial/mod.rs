//! Sparse formal polynomials with positive integer coefficients.
//!
//! Two comparison modes coexist: `==` is coefficient equality (`≐`), while
//! [`Polynomial::set_eq`] compares monomial sets only (`=`).

mod json;
mod monomial;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use monomial::Monomial;

use crate::error::{Error, Result};
use crate::semiring::{ExtInt, SemiringId};

/// Default bound on the number of monomials any single product may create.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// Default bound on the number of sub-factors enumerated by
/// [`Polynomial::factor_density`].
pub const DEFAULT_FACTOR_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnrichMode {
    /// `x_k ↦ x_i + x_j`
    Sum,
    /// `x_k ↦ x_i · x_j`
    Product,
}

impl Polynomial {
    /// The empty polynomial (the additive identity).
    pub fn zero(n_vars: usize) -> Self {
        Polynomial { n_vars, terms: BTreeMap::new() }
    }

    /// The constant polynomial `1`.
    pub fn one(n_vars: usize) -> Self {
        Self::monomial(n_vars, Monomial::one())
    }

    pub fn var(n_vars: usize, i: u32) -> Self {
        Self::monomial(n_vars, Monomial::var(i))
    }

    pub fn monomial(n_vars: usize, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        Polynomial { n_vars, terms }
    }

    /// Builds from `(monomial, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, u128)>,
    {
        let mut p = Polynomial::zero(n_vars);
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    /// A polynomial whose monomials all carry coefficient one.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(n_vars: usize, ms: I) -> Result<Self> {
        let mut p = Polynomial::zero(n_vars);
        for m in ms {
            p.check_monomial(&m)?;
            p.terms.insert(m, 1);
        }
        Ok(p)
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        match m.max_var() {
            Some(v) if v as usize >= self.n_vars => Err(Error::range(format!(
                "variable x{v} outside universe of {} variables",
                self.n_vars
            ))),
            _ => Ok(()),
        }
    }

    /// Adds `c · m`; zero coefficients are ignored.
    pub fn add_term(&mut self, m: Monomial, c: u128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        self.check_monomial(&m)?;
        let slot = self.terms.entry(m).or_insert(0);
        *slot = slot.checked_add(c).ok_or(Error::Overflow("polynomial coefficient"))?;
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Number of distinct monomials, `|f|`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u128)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> u128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    /// Same universe, every coefficient reset to one.
    pub fn to_set(&self) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.keys().map(|m| (m.clone(), 1)).collect(),
        }
    }

    /// Set equality: identical monomial sets, coefficients ignored.
    pub fn set_eq(&self, other: &Polynomial) -> bool {
        self.terms.len() == other.terms.len() && self.terms.keys().eq(other.terms.keys())
    }

    /// Every monomial of `self` occurs in `other`.
    pub fn set_subset(&self, other: &Polynomial) -> bool {
        self.terms.keys().all(|m| other.terms.contains_key(m))
    }

    /// Variables with non-zero degree somewhere in the polynomial.
    pub fn support(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    fn same_universe(&self, other: &Polynomial) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::UniverseMismatch { left: self.n_vars, right: other.n_vars });
        }
        Ok(())
    }

    /// Moves the polynomial into a larger universe.
    pub fn widen(&self, n_vars: usize) -> Result<Polynomial> {
        let mut p = Polynomial::zero(n_vars);
        for (m, c) in self.terms() {
            p.add_term(m.clone(), c)?;
        }
        Ok(p)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_universe(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    /// Set union: a monomial already present keeps its coefficient.
    pub fn union_set(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_universe(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.terms.entry(m.clone()).or_insert(c);
        }
        Ok(out)
    }

    /// Formal product, failing once the result exceeds `cap` monomials.
    pub fn mul(&self, other: &Polynomial, cap: usize) -> Result<Polynomial> {
        self.mul_impl(other, cap, false)
    }

    /// Product of the monomial sets; every coefficient of the result is one.
    pub fn mul_set(&self, other: &Polynomial, cap: usize) -> Result<Polynomial> {
        self.mul_impl(other, cap, true)
    }

    fn mul_impl(&self, other: &Polynomial, cap: usize, set: bool) -> Result<Polynomial> {
        self.same_universe(other)?;
        let estimate = self.len() as u128 * other.len() as u128;
        let explosion = || Error::Explosion { gate: None, cap, estimate };
        let mut acc: HashMap<Monomial, u128> = HashMap::new();
        for (p, cp) in self.terms() {
            for (q, cq) in other.terms() {
                let pq = p.mul(q)?;
                if set {
                    acc.insert(pq, 1);
                } else {
                    let c = cp.checked_mul(cq).ok_or(Error::Overflow("polynomial coefficient"))?;
                    let slot = acc.entry(pq).or_insert(0);
                    *slot = slot.checked_add(c).ok_or(Error::Overflow("polynomial coefficient"))?;
                }
                if acc.len() > cap {
                    return Err(explosion());
                }
            }
        }
        Ok(Polynomial { n_vars: self.n_vars, terms: acc.into_iter().collect() })
    }

    /// Minimum monomial degree; `+∞` for the empty polynomial.
    pub fn min_degree(&self) -> ExtInt {
        self.terms
            .keys()
            .next()
            .map_or(ExtInt::PosInf, |m| ExtInt::Fin(m.degree() as i64))
    }

    /// Maximum monomial degree; `−∞` for the empty polynomial.
    pub fn max_degree(&self) -> ExtInt {
        self.terms
            .keys()
            .next_back()
            .map_or(ExtInt::NegInf, |m| ExtInt::Fin(m.degree() as i64))
    }

    /// Minimum number of distinct variables in a monomial.
    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::length).min()
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(Monomial::is_multilinear)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree() || self.is_empty()
    }

    fn nonempty(&self, what: &str) -> Result<()> {
        if self.is_empty() {
            return Err(Error::precondition(format!("{what} of the empty polynomial")));
        }
        Ok(())
    }

    /// Monomials not containing any other monomial of `self`.
    pub fn lmin(&self) -> Result<Polynomial> {
        self.nonempty("lmin")?;
        // a proper divisor has strictly smaller degree, and the map is
        // ordered by degree
        let mut kept: Vec<&Monomial> = Vec::new();
        let mut out = Polynomial::zero(self.n_vars);
        for (p, c) in self.terms() {
            if !kept.iter().any(|q| q.degree() < p.degree() && p.contains(q)) {
                kept.push(p);
                out.terms.insert(p.clone(), c);
            }
        }
        Ok(out)
    }

    /// Monomials not contained in any other monomial of `self`.
    pub fn lmax(&self) -> Result<Polynomial> {
        self.nonempty("lmax")?;
        let mut kept: Vec<&Monomial> = Vec::new();
        let mut out = Polynomial::zero(self.n_vars);
        for (p, c) in self.terms.iter().rev() {
            if !kept.iter().any(|q| q.degree() > p.degree() && q.contains(p)) {
                kept.push(p);
                out.terms.insert(p.clone(), *c);
            }
        }
        Ok(out)
    }

    /// The monomials of minimum degree.
    pub fn lower_envelope(&self) -> Result<Polynomial> {
        self.nonempty("lower envelope")?;
        let d = self.min_degree();
        Ok(self.filter(|m| ExtInt::Fin(m.degree() as i64) == d))
    }

    /// The monomials of maximum degree.
    pub fn higher_envelope(&self) -> Result<Polynomial> {
        self.nonempty("higher envelope")?;
        let d = self.max_degree();
        Ok(self.filter(|m| ExtInt::Fin(m.degree() as i64) == d))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// `d(f, r)`: the largest number of monomials sharing one degree-`r`
    /// factor, with the default work cap.
    pub fn factor_density(&self, r: u64) -> Result<u64> {
        self.factor_density_capped(r, DEFAULT_FACTOR_CAP)
    }

    pub fn factor_density_capped(&self, r: u64, cap: u64) -> Result<u64> {
        let max = match self.max_degree() {
            ExtInt::Fin(d) => d as u64,
            _ => return Err(Error::range("factor density of the empty polynomial")),
        };
        if r > max {
            return Err(Error::range(format!("r = {r} exceeds max degree {max}")));
        }
        if r == 0 {
            return Ok(self.len() as u64);
        }
        let work: u128 = self.terms.keys().map(|m| m.count_factors_of_degree(r)).sum();
        if work > cap as u128 {
            return Err(Error::Cap(format!(
                "factor density needs {work} enumerations (cap {cap})"
            )));
        }
        let mut counts: HashMap<Monomial, u64> = HashMap::with_capacity(work as usize);
        for p in self.terms.keys() {
            p.for_each_factor_of_degree(r, |q| *counts.entry(q.clone()).or_insert(0) += 1);
        }
        Ok(counts.into_values().max().unwrap_or(0))
    }

    /// The function value of `self` over `id` at `a`. Coefficients matter only
    /// over the arithmetic semiring.
    pub fn evaluate(&self, id: SemiringId, a: &[ExtInt]) -> Result<ExtInt> {
        if a.len() != self.n_vars {
            return Err(Error::UniverseMismatch { left: self.n_vars, right: a.len() });
        }
        for &v in a {
            id.check(v)?;
        }
        let mut acc = id.zero();
        for (m, c) in self.terms() {
            let mut val = id.one();
            for &(i, e) in m.pairs() {
                val = id.mul(val, id.pow(a[i as usize], e)?)?;
            }
            if id == SemiringId::NatArith && c != 1 {
                let c = i64::try_from(c).map_err(|_| Error::Overflow("coefficient"))?;
                val = id.mul(val, ExtInt::Fin(c))?;
            }
            acc = id.add(acc, val)?;
        }
        Ok(acc)
    }

    /// Monomials containing `x_i`, with `x_i` removed. Multilinear input only.
    pub fn partial_derivative(&self, i: u32) -> Result<Polynomial> {
        if !self.is_multilinear() {
            return Err(Error::precondition("derivative of a non-multilinear polynomial"));
        }
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in self.terms() {
            let (rest, e) = m.without_var(i);
            if e > 0 {
                out.add_term(rest, c)?;
            }
        }
        Ok(out)
    }

    fn require_multilinear_homogeneous(&self, what: &str) -> Result<()> {
        if !(self.is_multilinear() && self.is_homogeneous()) {
            return Err(Error::precondition(format!(
                "{what} needs a multilinear homogeneous polynomial"
            )));
        }
        Ok(())
    }

    /// Adds the `n` degree-one monomials `x_1, …, x_n`.
    pub fn saturate_low(&self) -> Result<Polynomial> {
        self.require_multilinear_homogeneous("low saturation")?;
        let mut out = self.clone();
        for i in 0..self.n_vars as u32 {
            out.terms.entry(Monomial::var(i)).or_insert(1);
        }
        Ok(out)
    }

    /// Adds the single monomial `x_1 ··· x_n`.
    pub fn saturate_high(&self) -> Result<Polynomial> {
        self.require_multilinear_homogeneous("high saturation")?;
        let mut out = self.clone();
        out.terms.entry(Monomial::from_vars(0..self.n_vars as u32)).or_insert(1);
        Ok(out)
    }

    /// Replaces `x_k` by `x_i + x_j` or `x_i · x_j` (`i = j` allowed).
    pub fn enrich(&self, k: u32, i: u32, j: u32, mode: EnrichMode) -> Result<Polynomial> {
        if k == i || k == j {
            return Err(Error::precondition("enriched variable must differ from its replacements"));
        }
        if i as usize >= self.n_vars || j as usize >= self.n_vars {
            return Err(Error::range("replacement variable outside universe"));
        }
        if !self.terms.keys().any(|m| m.exp(k) > 0) {
            return Err(Error::precondition(format!("x{k} does not occur")));
        }
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in self.terms() {
            let (rest, e) = m.without_var(k);
            if e == 0 {
                out.add_term(rest, c)?;
                continue;
            }
            match mode {
                EnrichMode::Product => {
                    let r = Monomial::from_pairs([(i, e), (j, e)])?;
                    out.add_term(rest.mul(&r)?, c)?;
                }
                EnrichMode::Sum => {
                    let mut binom: u128 = 1;
                    for a in 0..=e {
                        let r = Monomial::from_pairs([(i, a), (j, e - a)])?;
                        let coeff = c.checked_mul(binom).ok_or(Error::Overflow("binomial"))?;
                        out.add_term(rest.mul(&r)?, coeff)?;
                        binom = binom
                            .checked_mul((e - a) as u128)
                            .ok_or(Error::Overflow("binomial"))?
                            / (a as u128 + 1);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Every exponent clamped to one; coefficients of merged monomials add.
    pub fn bool_multilinearize(&self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in self.terms() {
            out.add_term(m.multilinearize(), c)?;
        }
        Ok(out)
    }

    /// Human-readable rendering such as `2·x0·x1 + x2^3`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.terms()
            .map(|(m, c)| if c == 1 { m.to_string() } else { format!("{c}·{m}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
