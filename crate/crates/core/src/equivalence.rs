//! When do two polynomials define the same function over a semiring?
//!
//! Multilinear cases are decided exactly through antichains: over min-plus
//! a polynomial is equivalent to its `lmin`, over max-plus on ℕ to its
//! `lmax`, and over the integer tropical semirings a multilinear polynomial
//! is determined by its monomial set. Everything else is `Undecided` unless
//! a concrete witness turns up. A negative verdict always carries a witness
//! that has been re-evaluated.
//!
//! Max-plus inputs are finite: with `y = −∞` the pair `{x, xy}` and `{xy}`
//! differ, so equivalence over max-plus is taken over ℕ (or ℤ) proper.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::semiring::{ExtInt, SemiringId};

/// Bound on grid points visited by exhaustive witness searches.
pub const GRID_CAP: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    Inequivalent {
        /// `None` only when no witness was found within the grid cap.
        witness: Option<Witness>,
    },
    Undecided {
        reason: String,
    },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent)
    }

    pub fn is_inequivalent(&self) -> bool {
        matches!(self, Verdict::Inequivalent { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Inequivalent { witness } => witness.as_ref(),
            _ => None,
        }
    }
}

/// An assignment on which the two sides evaluate differently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub assignment: Vec<ExtInt>,
    pub left: ExtInt,
    pub right: ExtInt,
}

/// The evaluation domain used by default for exhaustive checks.
pub fn default_domain(id: SemiringId) -> Vec<ExtInt> {
    use ExtInt::*;
    match id {
        SemiringId::NatArith => vec![Fin(0), Fin(1), Fin(2), Fin(3)],
        SemiringId::Bool => vec![Fin(0), Fin(1)],
        SemiringId::MinNat => vec![Fin(0), Fin(1), Fin(2), Fin(3), PosInf],
        SemiringId::MinInt => vec![Fin(-2), Fin(-1), Fin(0), Fin(1), Fin(2), PosInf],
        SemiringId::MaxNat => vec![Fin(0), Fin(1), Fin(2), Fin(3)],
        SemiringId::MaxInt => vec![Fin(-2), Fin(-1), Fin(0), Fin(1), Fin(2)],
    }
}

/// A grid that provably separates inequivalent polynomials when one side is
/// multilinear (and, for the arithmetic semiring, always).
fn separating_domain(id: SemiringId, f: &Polynomial, h: &Polynomial) -> Vec<ExtInt> {
    use ExtInt::*;
    match id {
        SemiringId::NatArith => {
            let d = [f.max_degree(), h.max_degree()]
                .into_iter()
                .filter_map(ExtInt::finite)
                .max()
                .unwrap_or(1)
                .max(1);
            (0..=d).map(Fin).collect()
        }
        SemiringId::Bool => vec![Fin(0), Fin(1)],
        SemiringId::MinNat => vec![Fin(1), PosInf, Fin(0)],
        SemiringId::MaxNat => vec![Fin(0), Fin(1)],
        SemiringId::MinInt | SemiringId::MaxInt => vec![Fin(-1), Fin(0), Fin(1)],
    }
}

fn same_universe(f: &Polynomial, h: &Polynomial) -> Result<()> {
    if f.n_vars() != h.n_vars() {
        return Err(Error::UniverseMismatch { left: f.n_vars(), right: h.n_vars() });
    }
    Ok(())
}

fn evaluate_pair(f: &Polynomial, h: &Polynomial, id: SemiringId, a: &[ExtInt]) -> Option<Witness> {
    match (f.evaluate(id, a), h.evaluate(id, a)) {
        (Ok(x), Ok(y)) if x != y => Some(Witness { assignment: a.to_vec(), left: x, right: y }),
        _ => None,
    }
}

/// Visits every assignment of `domain` to the variables in `vars` (others
/// fixed at `fill`) until `visit` returns `true`. Returns whether it did,
/// or an error when the grid exceeds `cap` points.
fn for_each_grid_point(
    n_vars: usize,
    vars: &[u32],
    domain: &[ExtInt],
    fill: ExtInt,
    cap: u64,
    mut visit: impl FnMut(&[ExtInt]) -> bool,
) -> Result<bool> {
    let points = (domain.len() as u64).checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
    if points > cap {
        return Err(Error::Cap(format!("grid of {points} points exceeds {cap}")));
    }
    let mut a = vec![fill; n_vars];
    let mut idx = vec![0usize; vars.len()];
    for &v in vars {
        a[v as usize] = domain[0];
    }
    loop {
        if visit(&a) {
            return Ok(true);
        }
        let mut k = 0;
        loop {
            if k == vars.len() {
                return Ok(false);
            }
            idx[k] += 1;
            if idx[k] < domain.len() {
                a[vars[k] as usize] = domain[idx[k]];
                break;
            }
            idx[k] = 0;
            a[vars[k] as usize] = domain[0];
            k += 1;
        }
    }
}

fn joint_support(f: &Polynomial, h: &Polynomial) -> Vec<u32> {
    let s: BTreeSet<u32> = f.support().union(&h.support()).copied().collect();
    s.into_iter().collect()
}

/// Looks for a witness: first the assignments used in the antichain
/// arguments (one per monomial), then the whole `domain` grid over the
/// variables either side uses.
pub fn find_witness(
    f: &Polynomial,
    h: &Polynomial,
    id: SemiringId,
    domain: &[ExtInt],
) -> Result<Option<Witness>> {
    same_universe(f, h)?;
    for a in targeted_assignments(f, h, id) {
        if let Some(w) = evaluate_pair(f, h, id, &a) {
            return Ok(Some(w));
        }
    }
    let vars = joint_support(f, h);
    let fill = domain.first().copied().unwrap_or(id.one());
    let mut found = None;
    for_each_grid_point(f.n_vars(), &vars, domain, fill, GRID_CAP, |a| {
        found = evaluate_pair(f, h, id, a);
        found.is_some()
    })?;
    Ok(found)
}

/// For each monomial `p` of either side, the assignment that is "cheap" on
/// the variables of `p` and "expensive" elsewhere.
fn targeted_assignments(f: &Polynomial, h: &Polynomial, id: SemiringId) -> Vec<Vec<ExtInt>> {
    use ExtInt::*;
    let (inside, outside): (&[ExtInt], &[ExtInt]) = match id {
        SemiringId::NatArith | SemiringId::Bool => (&[Fin(1)], &[Fin(0)]),
        SemiringId::MinNat => (&[Fin(1), Fin(0)], &[PosInf, PosInf]),
        SemiringId::MaxNat => (&[Fin(1)], &[Fin(0)]),
        SemiringId::MinInt => (&[Fin(-1)], &[Fin(1)]),
        SemiringId::MaxInt => (&[Fin(1)], &[Fin(-1)]),
    };
    let n = f.n_vars();
    let mut out = Vec::new();
    for p in f.monomials().chain(h.monomials()) {
        for (&inn, &outv) in inside.iter().zip(outside) {
            let mut a = vec![outv; n];
            for v in p.vars() {
                a[v as usize] = inn;
            }
            out.push(a);
        }
    }
    out
}

fn refute(f: &Polynomial, h: &Polynomial, id: SemiringId) -> Result<Verdict> {
    let domain = separating_domain(id, f, h);
    let witness = match find_witness(f, h, id, &domain) {
        Ok(w) => w,
        Err(Error::Cap(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Verdict::Inequivalent { witness })
}

/// Functional equality over ℕ with `+` and `×` is coefficient equality.
pub fn equivalent_arith(f: &Polynomial, h: &Polynomial) -> Result<Verdict> {
    same_universe(f, h)?;
    if f == h {
        Ok(Verdict::Equivalent)
    } else {
        refute(f, h, SemiringId::NatArith)
    }
}

fn lmin_or_empty(f: &Polynomial) -> Result<Polynomial> {
    if f.is_empty() {
        Ok(f.clone())
    } else {
        Ok(f.lmin()?.to_set())
    }
}

fn lmax_or_empty(f: &Polynomial) -> Result<Polynomial> {
    if f.is_empty() {
        Ok(f.clone())
    } else {
        Ok(f.lmax()?.to_set())
    }
}

/// Decided by comparing `lmin` when either side is multilinear.
pub fn equivalent_min_nat(f: &Polynomial, h: &Polynomial) -> Result<Verdict> {
    same_universe(f, h)?;
    let (lf, lh) = (lmin_or_empty(f)?, lmin_or_empty(h)?);
    if lf.set_eq(&lh) {
        // both are equivalent to their lmin
        return Ok(Verdict::Equivalent);
    }
    if lf.is_multilinear() || lh.is_multilinear() {
        return refute(f, h, SemiringId::MinNat);
    }
    Ok(Verdict::Undecided { reason: "neither lmin is multilinear".into() })
}

/// Decided by comparing `lmax` when either side is multilinear.
pub fn equivalent_max_nat(f: &Polynomial, h: &Polynomial) -> Result<Verdict> {
    same_universe(f, h)?;
    if f.is_multilinear() || h.is_multilinear() {
        let (lf, lh) = (lmax_or_empty(f)?, lmax_or_empty(h)?);
        if f.is_multilinear() && h.is_multilinear() && lf.set_eq(&lh) {
            return Ok(Verdict::Equivalent);
        }
        return refute(f, h, SemiringId::MaxNat);
    }
    if lmax_or_empty(f)?.set_eq(&lmax_or_empty(h)?) {
        return Ok(Verdict::Equivalent);
    }
    Ok(Verdict::Undecided { reason: "neither side is multilinear".into() })
}

/// Over min-plus or max-plus on ℤ, a multilinear polynomial is equivalent
/// only to itself (as a monomial set).
pub fn equal_tropical_int(f: &Polynomial, h: &Polynomial, id: SemiringId) -> Result<Verdict> {
    if !matches!(id, SemiringId::MinInt | SemiringId::MaxInt) {
        return Err(Error::precondition(format!("{id} is not an integer tropical semiring")));
    }
    same_universe(f, h)?;
    if f.set_eq(h) {
        return Ok(Verdict::Equivalent);
    }
    if f.is_multilinear() || h.is_multilinear() {
        return refute(f, h, id);
    }
    Ok(Verdict::Undecided { reason: "neither side is multilinear".into() })
}

/// Boolean equivalence: equal minimal monotone DNFs.
pub fn equivalent_bool(f: &Polynomial, h: &Polynomial) -> Result<Verdict> {
    same_universe(f, h)?;
    let cf = lmin_or_empty(&f.bool_multilinearize()?)?;
    let ch = lmin_or_empty(&h.bool_multilinearize()?)?;
    if cf.set_eq(&ch) {
        Ok(Verdict::Equivalent)
    } else {
        refute(f, h, SemiringId::Bool)
    }
}

/// The structural verdict for `id`, followed by an exhaustive search on
/// `domain` when that verdict is undecided.
pub fn decide(f: &Polynomial, h: &Polynomial, id: SemiringId, domain: Option<&[ExtInt]>) -> Result<Verdict> {
    let v = match id {
        SemiringId::NatArith => equivalent_arith(f, h)?,
        SemiringId::Bool => equivalent_bool(f, h)?,
        SemiringId::MinNat => equivalent_min_nat(f, h)?,
        SemiringId::MaxNat => equivalent_max_nat(f, h)?,
        SemiringId::MinInt | SemiringId::MaxInt => equal_tropical_int(f, h, id)?,
    };
    if let Verdict::Undecided { reason } = &v {
        let default = default_domain(id);
        let domain = domain.unwrap_or(&default);
        return match find_witness(f, h, id, domain) {
            Ok(Some(w)) => Ok(Verdict::Inequivalent { witness: Some(w) }),
            Ok(None) => Ok(Verdict::Undecided {
                reason: format!("{reason}; no witness on a {}-value grid", domain.len()),
            }),
            Err(Error::Cap(msg)) => Ok(Verdict::Undecided { reason: format!("{reason}; {msg}") }),
            Err(e) => Err(e),
        };
    }
    Ok(v)
}

/// Outcome of [`random_equivalence_test`]. Never claims equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum RandomVerdict {
    Falsified { trial: u64, witness: Witness },
    NoWitnessFound { trials: u64 },
}

/// Evaluates both sides on `trials` random assignments from `domain`.
/// Trial `t` draws from its own stream of the generator seeded by `seed`,
/// so the outcome does not depend on scheduling.
pub fn random_equivalence_test(
    f: &Polynomial,
    h: &Polynomial,
    id: SemiringId,
    domain: &[ExtInt],
    trials: u64,
    seed: u64,
) -> Result<RandomVerdict> {
    same_universe(f, h)?;
    if domain.is_empty() {
        return Err(Error::precondition("empty evaluation domain"));
    }
    for &v in domain {
        id.check(v)?;
    }
    let n = f.n_vars();
    let hit = (0..trials).into_par_iter().find_map_first(|t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let a: Vec<ExtInt> = (0..n).map(|_| domain[rng.gen_range(0..domain.len())]).collect();
        evaluate_pair(f, h, id, &a).map(|w| (t, w))
    });
    Ok(match hit {
        Some((trial, witness)) => RandomVerdict::Falsified { trial, witness },
        None => RandomVerdict::NoWitnessFound { trials },
    })
}

/// A representative that every equivalent polynomial shares, where the
/// antichain arguments provide one.
pub fn canonical_form(f: &Polynomial, id: SemiringId) -> Result<Polynomial> {
    let none = || Error::precondition(format!("no canonical form known over {id} for this polynomial"));
    match id {
        SemiringId::NatArith => Ok(f.clone()),
        SemiringId::Bool => lmin_or_empty(&f.bool_multilinearize()?),
        SemiringId::MinNat => {
            let l = lmin_or_empty(f)?;
            if l.is_multilinear() {
                Ok(l)
            } else {
                Err(none())
            }
        }
        SemiringId::MaxNat => {
            if f.is_multilinear() {
                lmax_or_empty(f)
            } else {
                Err(none())
            }
        }
        SemiringId::MinInt | SemiringId::MaxInt => {
            if f.is_multilinear() {
                Ok(f.to_set())
            } else {
                Err(none())
            }
        }
    }
}

/// Whether the single output of `c` agrees with `h` over `id` on every
/// point of the `domain` grid (over the variables either one uses).
pub fn agree_on_grid(c: &Circuit, h: &Polynomial, id: SemiringId, domain: &[ExtInt]) -> Result<bool> {
    if c.n_vars() != h.n_vars() {
        return Err(Error::UniverseMismatch { left: c.n_vars(), right: h.n_vars() });
    }
    let out = c.single_output()?;
    let mut vars: BTreeSet<u32> = h.support();
    for g in c.gates() {
        if let Gate::Var { i } = *g {
            vars.insert(i);
        }
    }
    let vars: Vec<u32> = vars.into_iter().collect();
    let fill = domain.first().copied().unwrap_or(id.one());
    let mut failure: Option<Error> = None;
    let disagreed = for_each_grid_point(c.n_vars(), &vars, domain, fill, GRID_CAP, |a| {
        match (c.eval_all(id, a), h.evaluate(id, a)) {
            (Ok(vals), Ok(y)) => vals[out] != y,
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                true
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(!disagreed)
}
