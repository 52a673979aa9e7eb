//! Exhaustive ground truth for tiny polynomials: the exact minimum number of
//! ⊕/⊗ gates needed to produce or compute `f`.
//!
//! The search enumerates straight-line programs over the variables of `f`
//! and the constant 1 by iterative deepening. Gate values live in a finite
//! abstraction of the polynomial each gate produces; every abstraction below
//! is a semiring homomorphism (or a congruence) whose value decides the
//! target predicate, so two programs with the same abstract gate values are
//! interchangeable.
//!
//! Pruning, each valid for minimal circuits:
//! * no gate repeats the value of an earlier node (merge the two);
//! * the target appears only at the last gate;
//! * every gate but the last is eventually used, and a gate consumes at most
//!   two dangling gates, so `dangling ≤ remaining + 1`;
//! * adjacent independent gates appear in increasing `(j, i, op)` order.
//!   Swapping such a pair keeps both keys and lowers the key sequence
//!   lexicographically, so every circuit has an ordering of this form.
//!
//! The constant 0 is never offered: it annihilates products and is neutral
//! for sums, so a minimal circuit for a non-empty `f` never uses it.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{Certificate, MeasureId};
use crate::circuit::{Circuit, GateId};
use crate::error::{Error, Result};
use crate::polynomial::{Monomial, Polynomial};
use crate::semiring::{ExtInt, SemiringId};

pub const MAX_VARS: usize = 4;
pub const MAX_SIZE: usize = 7;
/// Bound on the divisor universe of the produce abstraction.
pub const DIVISOR_CAP: usize = 128;
/// Bound on grid points for function-table values.
pub const GRID_POINT_CAP: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Op {
    Sum,
    Prod,
}

/// Values of gates under a finite abstraction.
trait Algebra: Sync {
    type V: Clone + Eq + Hash + Send + Sync;
    /// Input nodes with the circuit gate each stands for.
    fn inputs(&self) -> Vec<(Self::V, Input)>;
    fn sum(&self, a: &Self::V, b: &Self::V) -> Option<Self::V>;
    fn prod(&self, a: &Self::V, b: &Self::V) -> Option<Self::V>;
    fn is_target(&self, v: &Self::V) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Input {
    Var(u32),
    One,
}

/// The outcome of one exhaustive search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    /// Minimum size found, `None` if no circuit of at most `max_size` gates exists.
    pub size: Option<usize>,
    pub max_size: usize,
    /// A minimum circuit, when one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit: Option<Circuit>,
    /// Partial programs visited.
    pub visited: u64,
}

impl SearchResult {
    pub fn exceeded(&self) -> bool {
        self.size.is_none()
    }
}

struct Frame<V> {
    nodes: Vec<V>,
    gates: Vec<(Op, usize, usize)>,
    uses: Vec<u32>,
    dangling: usize,
}

struct Search<'a, A: Algebra> {
    alg: &'a A,
    n_inputs: usize,
    size: usize,
    visited: &'a AtomicU64,
}

impl<A: Algebra> Search<'_, A> {
    fn key(gate: &(Op, usize, usize)) -> (usize, usize, Op) {
        (gate.2, gate.1, gate.0)
    }

    /// Candidate gates at the current frame, in canonical order.
    fn candidates(&self, fr: &Frame<A::V>) -> Vec<(Op, usize, usize, A::V)> {
        let n = fr.nodes.len();
        let prev = fr.gates.last().map(|g| (n - 1, Self::key(g)));
        let remaining_after = self.size - fr.gates.len() - 1;
        let mut out = Vec::new();
        for j in 0..n {
            for i in 0..=j {
                for op in [Op::Sum, Op::Prod] {
                    if let Some((p, pkey)) = prev {
                        if i != p && j != p && (j, i, op) <= pkey {
                            continue;
                        }
                    }
                    // dangling count after adding this gate
                    let mut freed = 0;
                    if i >= self.n_inputs && fr.uses[i] == 0 {
                        freed += 1;
                    }
                    if j != i && j >= self.n_inputs && fr.uses[j] == 0 {
                        freed += 1;
                    }
                    if fr.dangling - freed + 1 > remaining_after + 1 {
                        continue;
                    }
                    let v = match op {
                        Op::Sum => self.alg.sum(&fr.nodes[i], &fr.nodes[j]),
                        Op::Prod => self.alg.prod(&fr.nodes[i], &fr.nodes[j]),
                    };
                    let Some(v) = v else { continue };
                    if fr.nodes.contains(&v) {
                        continue;
                    }
                    let last = remaining_after == 0;
                    if self.alg.is_target(&v) != last {
                        continue;
                    }
                    out.push((op, i, j, v));
                }
            }
        }
        out
    }

    fn push(&self, fr: &mut Frame<A::V>, op: Op, i: usize, j: usize, v: A::V) -> usize {
        let mut freed = 0;
        for x in if i == j { vec![i] } else { vec![i, j] } {
            if x >= self.n_inputs && fr.uses[x] == 0 {
                freed += 1;
            }
            fr.uses[x] += 1;
        }
        fr.dangling = fr.dangling - freed + 1;
        fr.nodes.push(v);
        fr.uses.push(0);
        fr.gates.push((op, i, j));
        freed
    }

    fn pop(&self, fr: &mut Frame<A::V>, freed: usize) {
        let (_, i, j) = fr.gates.pop().unwrap();
        fr.nodes.pop();
        fr.uses.pop();
        for x in if i == j { vec![i] } else { vec![i, j] } {
            fr.uses[x] -= 1;
        }
        fr.dangling = fr.dangling + freed - 1;
    }

    fn dfs(&self, fr: &mut Frame<A::V>) -> bool {
        self.visited.fetch_add(1, Ordering::Relaxed);
        if fr.gates.len() == self.size {
            return true;
        }
        for (op, i, j, v) in self.candidates(fr) {
            let freed = self.push(fr, op, i, j, v);
            if self.dfs(fr) {
                return true;
            }
            self.pop(fr, freed);
        }
        false
    }

    fn run(&self) -> Option<Vec<(Op, usize, usize)>> {
        let inputs: Vec<A::V> = self.alg.inputs().into_iter().map(|(v, _)| v).collect();
        let root = Frame { uses: vec![0; inputs.len()], nodes: inputs, gates: Vec::new(), dangling: 0 };
        let first = self.candidates(&root);
        first.into_par_iter().find_map_first(|(op, i, j, v)| {
            let mut fr = Frame {
                nodes: root.nodes.clone(),
                gates: Vec::new(),
                uses: root.uses.clone(),
                dangling: 0,
            };
            self.push(&mut fr, op, i, j, v);
            self.dfs(&mut fr).then(|| fr.gates.clone())
        })
    }
}

fn search<A: Algebra>(alg: &A, n_vars: usize, max_size: usize) -> Result<SearchResult> {
    let inputs = alg.inputs();
    let visited = AtomicU64::new(0);
    let build = |gates: &[(Op, usize, usize)], out: Option<usize>| -> Result<Circuit> {
        let mut c = Circuit::builder(n_vars);
        let mut ids: Vec<GateId> = Vec::new();
        for (_, inp) in &inputs {
            ids.push(match inp {
                Input::Var(i) => c.var(*i),
                Input::One => c.one(),
            });
        }
        for &(op, i, j) in gates {
            ids.push(match op {
                Op::Sum => c.sum(ids[i], ids[j]),
                Op::Prod => c.prod(ids[i], ids[j]),
            });
        }
        c.set_outputs(vec![ids[out.unwrap_or(ids.len() - 1)]])?;
        Ok(c.prune())
    };
    if let Some(k) = inputs.iter().position(|(v, _)| alg.is_target(v)) {
        return Ok(SearchResult { size: Some(0), max_size, circuit: Some(build(&[], Some(k))?), visited: 1 });
    }
    for size in 1..=max_size {
        let s = Search { alg, n_inputs: inputs.len(), size, visited: &visited };
        if let Some(gates) = s.run() {
            return Ok(SearchResult {
                size: Some(size),
                max_size,
                circuit: Some(build(&gates, None)?),
                visited: visited.load(Ordering::Relaxed),
            });
        }
    }
    Ok(SearchResult { size: None, max_size, circuit: None, visited: visited.load(Ordering::Relaxed) })
}

fn check_caps(f: &Polynomial, max_size: usize) -> Result<Vec<u32>> {
    if max_size > MAX_SIZE {
        return Err(Error::Cap(format!("oracle max size {max_size} exceeds {MAX_SIZE}")));
    }
    let vars: Vec<u32> = f.support().into_iter().collect();
    if vars.len() > MAX_VARS {
        return Err(Error::Cap(format!("oracle handles at most {MAX_VARS} variables, f uses {}", vars.len())));
    }
    Ok(vars)
}

fn var_inputs(vars: &[u32]) -> impl Iterator<Item = (usize, u32)> + '_ {
    vars.iter().copied().enumerate()
}

fn local_support(m: &Monomial, vars: &[u32]) -> usize {
    m.vars().map(|v| 1usize << vars.iter().position(|&w| w == v).expect("variable in support")).sum()
}

// ---------------------------------------------------------------------------
// Producing: monomial sets inside the divisor closure of f.

/// Sets of monomials drawn from `D`, the divisors of the monomials of `f`.
/// Every gate of a circuit producing `f` without the constant 0 produces a
/// subset of `D`, since each of its monomials divides a monomial of `f`.
struct Divisors {
    mul: Vec<Vec<Option<u8>>>,
    inputs: Vec<(u128, Input)>,
    target: u128,
}

impl Divisors {
    fn new(f: &Polynomial, vars: &[u32], target_set: &Polynomial) -> Result<Self> {
        let mut ds: BTreeSet<Monomial> = BTreeSet::new();
        for m in f.monomials() {
            let pairs: Vec<(u32, u32)> = m.pairs().to_vec();
            let mut exps = vec![0u32; pairs.len()];
            loop {
                ds.insert(
                    Monomial::from_pairs(pairs.iter().zip(&exps).filter(|(_, &e)| e > 0).map(|(&(v, _), &e)| (v, e)))
                        .expect("valid exponents"),
                );
                if ds.len() > DIVISOR_CAP {
                    return Err(Error::Cap(format!("more than {DIVISOR_CAP} divisors")));
                }
                let mut t = 0;
                while t < exps.len() && exps[t] == pairs[t].1 {
                    exps[t] = 0;
                    t += 1;
                }
                if t == exps.len() {
                    break;
                }
                exps[t] += 1;
            }
        }
        let ds: Vec<Monomial> = ds.into_iter().collect();
        let index: HashMap<&Monomial, u8> = ds.iter().enumerate().map(|(i, m)| (m, i as u8)).collect();
        let mul = ds
            .iter()
            .map(|a| ds.iter().map(|b| a.mul(b).ok().and_then(|p| index.get(&p).copied())).collect())
            .collect();
        let bit = |m: &Monomial| 1u128 << index[m];
        let mut inputs: Vec<(u128, Input)> = var_inputs(vars).map(|(_, v)| (bit(&Monomial::var(v)), Input::Var(v))).collect();
        inputs.push((bit(&Monomial::one()), Input::One));
        let target = target_set.monomials().map(|m| index.get(m).map(|&i| 1u128 << i)).sum::<Option<u128>>();
        let target = target.ok_or_else(|| Error::Internal("target outside the divisor closure".into()))?;
        Ok(Divisors { mul, inputs, target })
    }
}

impl Algebra for Divisors {
    type V = u128;

    fn inputs(&self) -> Vec<(u128, Input)> {
        self.inputs.clone()
    }

    fn sum(&self, a: &u128, b: &u128) -> Option<u128> {
        Some(a | b)
    }

    fn prod(&self, a: &u128, b: &u128) -> Option<u128> {
        let mut out = 0u128;
        let mut x = *a;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            let mut y = *b;
            while y != 0 {
                let j = y.trailing_zeros() as usize;
                y &= y - 1;
                out |= 1u128 << self.mul[i][j]?;
            }
        }
        Some(out)
    }

    fn is_target(&self, v: &u128) -> bool {
        *v == self.target
    }
}

// ---------------------------------------------------------------------------
// Arithmetic semiring: coefficient vectors over D, bounded by f's largest
// coefficient (coefficients never decrease towards the output).

struct Coefficients {
    div: Divisors,
    bound: u16,
    target: Vec<u16>,
    width: usize,
}

impl Coefficients {
    fn new(f: &Polynomial, vars: &[u32]) -> Result<Self> {
        let div = Divisors::new(f, vars, f)?;
        let max = f.terms().map(|(_, c)| c).max().unwrap_or(1);
        if max > u16::MAX as u128 {
            return Err(Error::Cap(format!("coefficient {max} too large for the oracle")));
        }
        let width = div.mul.len();
        // bit positions of the target mask follow the divisor order
        let order: Vec<usize> = (0..width).filter(|&i| div.target >> i & 1 == 1).collect();
        let mut target = vec![0u16; width];
        for ((_, c), &i) in f.terms().zip(&order) {
            target[i] = c as u16;
        }
        Ok(Coefficients { div, bound: max as u16, target, width })
    }

    fn unit(&self, mask: u128) -> Vec<u16> {
        (0..self.width).map(|i| (mask >> i & 1) as u16).collect()
    }
}

impl Algebra for Coefficients {
    type V = Vec<u16>;

    fn inputs(&self) -> Vec<(Vec<u16>, Input)> {
        self.div.inputs.iter().map(|&(m, inp)| (self.unit(m), inp)).collect()
    }

    fn sum(&self, a: &Vec<u16>, b: &Vec<u16>) -> Option<Vec<u16>> {
        a.iter().zip(b).map(|(&x, &y)| (x + y <= self.bound).then_some(x + y)).collect()
    }

    fn prod(&self, a: &Vec<u16>, b: &Vec<u16>) -> Option<Vec<u16>> {
        let mut out = vec![0u32; self.width];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x > 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y > 0) {
                let k = self.div.mul[i][j]? as usize;
                out[k] += x as u32 * y as u32;
                if out[k] > self.bound as u32 {
                    return None;
                }
            }
        }
        Some(out.into_iter().map(|c| c as u16).collect())
    }

    fn is_target(&self, v: &Vec<u16>) -> bool {
        *v == self.target
    }
}

// ---------------------------------------------------------------------------
// Min-plus over ℕ, f with multilinear lmin: antichains of (support, flag),
// flag = "some monomial with this support is multilinear".
//
// F ≡ f iff the minimal supports of F are the monomials of lmin f and each
// of them is carried by a multilinear monomial of F. Entries above a
// strictly smaller support, and non-multilinear duplicates of a multilinear
// entry, never influence this profile in any context, so they are dropped.

struct MinProfiles {
    inputs: Vec<(u32, Input)>,
    target: u32,
}

fn profile_bit(supp: usize, ml: bool) -> u32 {
    1 << (2 * supp + ml as usize)
}

fn normalize_min(v: u32) -> u32 {
    let mut out = v;
    for s in 0..16 {
        if v >> (2 * s) & 3 == 0 {
            continue;
        }
        for t in 0..16 {
            if t != s && t & s == s {
                out &= !(3 << (2 * t));
            }
        }
        if v >> (2 * s + 1) & 1 == 1 {
            out &= !(1 << (2 * s));
        }
    }
    out
}

impl MinProfiles {
    fn new(l: &Polynomial, vars: &[u32]) -> Self {
        let mut inputs: Vec<(u32, Input)> = var_inputs(vars).map(|(k, v)| (profile_bit(1 << k, true), Input::Var(v))).collect();
        inputs.push((profile_bit(0, true), Input::One));
        let target = l.monomials().map(|m| profile_bit(local_support(m, vars), true)).fold(0, |a, b| a | b);
        MinProfiles { inputs, target }
    }
}

impl Algebra for MinProfiles {
    type V = u32;

    fn inputs(&self) -> Vec<(u32, Input)> {
        self.inputs.clone()
    }

    fn sum(&self, a: &u32, b: &u32) -> Option<u32> {
        Some(normalize_min(a | b))
    }

    fn prod(&self, a: &u32, b: &u32) -> Option<u32> {
        let mut out = 0;
        for s in (0..16).filter(|s| a >> (2 * s) & 3 != 0) {
            for t in (0..16).filter(|t| b >> (2 * t) & 3 != 0) {
                let ml = a >> (2 * s + 1) & 1 == 1 && b >> (2 * t + 1) & 1 == 1 && s & t == 0;
                out |= profile_bit(s | t, ml);
            }
        }
        Some(normalize_min(out))
    }

    fn is_target(&self, v: &u32) -> bool {
        *v == self.target
    }
}

// ---------------------------------------------------------------------------
// Max-plus over ℕ, multilinear f: a circuit computing f produces a
// multilinear F with lmax F = lmax f, so every gate is multilinear and only
// its maximal supports matter (antichain of subsets, as a 16-bit set).

fn antichain_max(v: u16) -> u16 {
    let mut out = v;
    for s in (0..16).filter(|s| v >> s & 1 == 1) {
        for t in 0..16 {
            if t != s && t & s == t {
                out &= !(1 << t);
            }
        }
    }
    out
}

fn antichain_min(v: u16) -> u16 {
    let mut out = v;
    for s in (0..16).filter(|s| v >> s & 1 == 1) {
        for t in 0..16 {
            if t != s && t & s == s {
                out &= !(1 << t);
            }
        }
    }
    out
}

struct MaxProfiles {
    inputs: Vec<(u16, Input)>,
    target: u16,
}

impl Algebra for MaxProfiles {
    type V = u16;

    fn inputs(&self) -> Vec<(u16, Input)> {
        self.inputs.clone()
    }

    fn sum(&self, a: &u16, b: &u16) -> Option<u16> {
        Some(antichain_max(a | b))
    }

    fn prod(&self, a: &u16, b: &u16) -> Option<u16> {
        let mut out = 0u16;
        for s in (0..16).filter(|s| a >> s & 1 == 1) {
            for t in (0..16).filter(|t| b >> t & 1 == 1) {
                if s & t != 0 {
                    return None;
                }
                out |= 1 << (s | t);
            }
        }
        Some(antichain_max(out))
    }

    fn is_target(&self, v: &u16) -> bool {
        *v == self.target
    }
}

// ---------------------------------------------------------------------------
// Boolean: a monotone boolean function is its set of minimal supports. The
// multilinear variant also tracks the full variable support and refuses
// products of overlapping supports.

struct BoolProfiles {
    inputs: Vec<((u16, u8), Input)>,
    target: u16,
    multilinear: bool,
}

impl BoolProfiles {
    fn new(f: &Polynomial, vars: &[u32], multilinear: bool) -> Self {
        let mut inputs: Vec<((u16, u8), Input)> =
            var_inputs(vars).map(|(k, v)| ((1u16 << (1 << k), 1u8 << k), Input::Var(v))).collect();
        inputs.push(((1, 0), Input::One));
        let target = antichain_min(f.monomials().map(|m| 1u16 << local_support(m, vars)).fold(0, |a, b| a | b));
        BoolProfiles { inputs, target, multilinear }
    }
}

impl Algebra for BoolProfiles {
    type V = (u16, u8);

    fn inputs(&self) -> Vec<((u16, u8), Input)> {
        self.inputs.clone()
    }

    fn sum(&self, a: &(u16, u8), b: &(u16, u8)) -> Option<(u16, u8)> {
        Some((antichain_min(a.0 | b.0), if self.multilinear { a.1 | b.1 } else { 0 }))
    }

    fn prod(&self, a: &(u16, u8), b: &(u16, u8)) -> Option<(u16, u8)> {
        if self.multilinear && a.1 & b.1 != 0 {
            return None;
        }
        let mut out = 0u16;
        for s in (0..16).filter(|s| a.0 >> s & 1 == 1) {
            for t in (0..16).filter(|t| b.0 >> t & 1 == 1) {
                out |= 1 << (s | t);
            }
        }
        Some((antichain_min(out), if self.multilinear { a.1 | b.1 } else { 0 }))
    }

    fn is_target(&self, v: &(u16, u8)) -> bool {
        v.0 == self.target
    }
}

// ---------------------------------------------------------------------------
// Function tables on a finite grid: exact only relative to the grid.

struct Tables {
    id: SemiringId,
    inputs: Vec<(Vec<ExtInt>, Input)>,
    target: Vec<ExtInt>,
}

impl Tables {
    fn new(f: &Polynomial, vars: &[u32], id: SemiringId, domain: &[ExtInt]) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::Input("empty evaluation domain".into()));
        }
        for &a in domain {
            id.check(a)?;
        }
        let k = vars.len() as u32;
        let points = domain.len().checked_pow(k).filter(|&p| p <= GRID_POINT_CAP);
        let points = points.ok_or_else(|| Error::Cap(format!("grid exceeds {GRID_POINT_CAP} points")))?;
        let mut grid = Vec::with_capacity(points);
        let mut assignment = vec![id.one(); f.n_vars()];
        for p in 0..points {
            let mut r = p;
            for &v in vars {
                assignment[v as usize] = domain[r % domain.len()];
                r /= domain.len();
            }
            grid.push(assignment.clone());
        }
        let target = grid.iter().map(|a| f.evaluate(id, a)).collect::<Result<Vec<_>>>()?;
        let mut inputs: Vec<(Vec<ExtInt>, Input)> =
            vars.iter().map(|&v| (grid.iter().map(|a| a[v as usize]).collect(), Input::Var(v))).collect();
        inputs.push((vec![id.one(); points], Input::One));
        Ok(Tables { id, inputs, target })
    }
}

impl Algebra for Tables {
    type V = Vec<ExtInt>;

    fn inputs(&self) -> Vec<(Vec<ExtInt>, Input)> {
        self.inputs.clone()
    }

    fn sum(&self, a: &Vec<ExtInt>, b: &Vec<ExtInt>) -> Option<Vec<ExtInt>> {
        a.iter().zip(b).map(|(&x, &y)| self.id.add(x, y).ok()).collect()
    }

    fn prod(&self, a: &Vec<ExtInt>, b: &Vec<ExtInt>) -> Option<Vec<ExtInt>> {
        a.iter().zip(b).map(|(&x, &y)| self.id.mul(x, y).ok()).collect()
    }

    fn is_target(&self, v: &Vec<ExtInt>) -> bool {
        *v == self.target
    }
}

// ---------------------------------------------------------------------------

/// `R[f]`: the minimum size of a circuit producing exactly the monomial set
/// of `f` (the same over every semiring).
pub fn min_produce_size(f: &Polynomial, max_size: usize) -> Result<SearchResult> {
    let vars = check_caps(f, max_size)?;
    if f.is_empty() {
        let mut c = Circuit::builder(f.n_vars());
        let z = c.zero();
        c.set_outputs(vec![z])?;
        return Ok(SearchResult { size: Some(0), max_size, circuit: Some(c), visited: 0 });
    }
    search(&Divisors::new(f, &vars, f)?, f.n_vars(), max_size)
}

/// How a compute-mode size was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComputePath {
    /// Agreement decided by an exact canonical form of the produced polynomial.
    Canonical,
    /// Agreement on every point of the domain grid only.
    Grid,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComputeReport {
    pub semiring: SemiringId,
    /// Restricted to multilinear boolean circuits.
    pub multilinear_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<SearchResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<SearchResult>,
    pub domain: Vec<ExtInt>,
    /// True when the reported size rests on the grid path alone.
    pub relative_to_domain: bool,
}

impl ComputeReport {
    /// The size to rely on: the canonical path when available.
    pub fn size(&self) -> Option<usize> {
        self.canonical.as_ref().or(self.grid.as_ref()).and_then(|r| r.size)
    }

    pub fn result(&self) -> Option<&SearchResult> {
        self.canonical.as_ref().or(self.grid.as_ref())
    }
}

/// Grids used by the compute-mode function-table path.
pub fn oracle_domain(id: SemiringId) -> Vec<ExtInt> {
    use ExtInt::*;
    match id {
        SemiringId::MinNat => vec![Fin(0), Fin(1), Fin(2), PosInf],
        SemiringId::MaxNat | SemiringId::NatArith => vec![Fin(0), Fin(1), Fin(2)],
        SemiringId::MinInt | SemiringId::MaxInt => vec![Fin(-1), Fin(0), Fin(1)],
        SemiringId::Bool => vec![Fin(0), Fin(1)],
    }
}

fn canonical_search(f: &Polynomial, vars: &[u32], id: SemiringId, max_size: usize) -> Result<Option<SearchResult>> {
    let n = f.n_vars();
    Ok(match id {
        SemiringId::NatArith => Some(search(&Coefficients::new(f, vars)?, n, max_size)?),
        SemiringId::Bool => Some(search(&BoolProfiles::new(f, vars, false), n, max_size)?),
        SemiringId::MinNat => {
            let l = f.lmin()?;
            if l.is_multilinear() {
                Some(search(&MinProfiles::new(&l, vars), n, max_size)?)
            } else {
                None
            }
        }
        SemiringId::MaxNat => {
            if f.is_multilinear() {
                let mut inputs: Vec<(u16, Input)> =
                    var_inputs(vars).map(|(k, v)| (1u16 << (1 << k), Input::Var(v))).collect();
                inputs.push((1, Input::One));
                let target = f.lmax()?.monomials().map(|m| 1u16 << local_support(m, vars)).fold(0, |a, b| a | b);
                Some(search(&MaxProfiles { inputs, target }, n, max_size)?)
            } else {
                None
            }
        }
        // a polynomial computing a multilinear f over the integer tropical
        // semirings has exactly the monomial set of f, since the 0/1 points
        // of the Newton polytope of f are all vertices
        SemiringId::MinInt | SemiringId::MaxInt => {
            if f.is_multilinear() {
                Some(search(&Divisors::new(f, vars, f)?, n, max_size)?)
            } else {
                None
            }
        }
    })
}

/// `A(f)`: the minimum size of a circuit computing `f` over `id`.
///
/// The canonical path runs whenever an exact canonical form applies; the
/// grid path runs when `domain` is given or no canonical form applies.
pub fn min_compute_size(f: &Polynomial, id: SemiringId, max_size: usize, domain: Option<&[ExtInt]>) -> Result<ComputeReport> {
    let vars = check_caps(f, max_size)?;
    if f.is_empty() {
        return Err(Error::precondition("compute size of the empty polynomial"));
    }
    let canonical = canonical_search(f, &vars, id, max_size)?;
    let dom = domain.map(|d| d.to_vec()).unwrap_or_else(|| oracle_domain(id));
    let grid = if domain.is_some() || canonical.is_none() {
        Some(search(&Tables::new(f, &vars, id, &dom)?, f.n_vars(), max_size)?)
    } else {
        None
    };
    Ok(ComputeReport { semiring: id, multilinear_only: false, relative_to_domain: canonical.is_none(), canonical, grid, domain: dom })
}

/// `Mult_B(f)`: the minimum size of a multilinear monotone boolean circuit
/// computing `f` (product gates join disjoint variable sets).
pub fn min_multilinear_bool_size(f: &Polynomial, max_size: usize) -> Result<ComputeReport> {
    let vars = check_caps(f, max_size)?;
    if f.is_empty() {
        return Err(Error::precondition("compute size of the empty polynomial"));
    }
    let r = search(&BoolProfiles::new(f, &vars, true), f.n_vars(), max_size)?;
    Ok(ComputeReport {
        semiring: SemiringId::Bool,
        multilinear_only: true,
        canonical: Some(r),
        grid: None,
        domain: oracle_domain(SemiringId::Bool),
        relative_to_domain: false,
    })
}

/// The oracle's exact answer for a measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum OracleValue {
    Exact(u64),
    /// No circuit of at most this many gates exists.
    Exceeds(u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub measure: MeasureId,
    pub checkable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleValue>,
    pub cert_value: u64,
    /// `oracle − certificate` when the oracle value is exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<i64>,
    pub violation: bool,
    pub relative_to_domain: bool,
}

/// The oracle value of `measure` for `f`.
pub fn measure_value(f: &Polynomial, measure: MeasureId, max_size: usize) -> Result<(OracleValue, bool)> {
    let (size, relative) = match measure {
        MeasureId::ProduceSize => (min_produce_size(f, max_size)?.size, false),
        MeasureId::MinSize | MeasureId::MaxSize | MeasureId::BoolSize => {
            let id = match measure {
                MeasureId::MinSize => SemiringId::MinNat,
                MeasureId::MaxSize => SemiringId::MaxNat,
                _ => SemiringId::Bool,
            };
            let r = min_compute_size(f, id, max_size, None)?;
            (r.size(), r.relative_to_domain)
        }
        MeasureId::MultilinearBoolSize => (min_multilinear_bool_size(f, max_size)?.size(), false),
        MeasureId::Depth => return Err(Error::Cap("the oracle searches by size, not depth".into())),
    };
    Ok((size.map_or(OracleValue::Exceeds(max_size as u64), |s| OracleValue::Exact(s as u64)), relative))
}

/// Compares a certificate with the oracle's exact value of its measure.
pub fn verify_certificate(f: &Polynomial, cert: &Certificate, max_size: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        measure: cert.applies_to,
        checkable: false,
        reason: None,
        oracle: None,
        cert_value: cert.value,
        slack: None,
        violation: false,
        relative_to_domain: false,
    };
    if !cert.is_about(f) {
        return Err(Error::precondition("certificate is about a different polynomial"));
    }
    match measure_value(f, cert.applies_to, max_size) {
        Err(Error::Cap(msg)) => {
            report.reason = Some(format!("not oracle-checkable: {msg}"));
            Ok(report)
        }
        Err(e) => Err(e),
        Ok((value, relative)) => {
            report.oracle = Some(value);
            report.relative_to_domain = relative;
            match value {
                OracleValue::Exact(v) => {
                    report.checkable = true;
                    report.slack = Some(v as i64 - cert.value as i64);
                    report.violation = cert.value > v;
                }
                // the true value exceeds max_size, so any bound up to
                // max_size + 1 is consistent
                OracleValue::Exceeds(m) => {
                    report.checkable = cert.value <= m + 1;
                    if !report.checkable {
                        report.reason = Some("not oracle-checkable: oracle exceeded its size cap".into());
                    }
                }
            }
            Ok(report)
        }
    }
}
