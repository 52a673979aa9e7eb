//! Gate splits, cut decompositions, balanced sum-of-products and envelopes.
//!
//! All polynomials here are monomial sets: coefficients are one.

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, GateId};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::semiring::ExtInt;

/// Which size measure drives the balanced-gate walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// Minimum degree of the produced polynomial.
    Degree,
    /// Minimum number of distinct variables in a produced monomial.
    Length,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WhichEnvelope {
    Lower,
    Higher,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cut {
    Node(Vec<GateId>),
    /// Wires `(u, v)` with `u` an input of `v`; parallel wires are covered
    /// together.
    Edge(Vec<(GateId, GateId)>),
}

/// One term `produce(u) · ext` of a cut decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct CutPart {
    pub node: GateId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consumer: Option<GateId>,
    pub produced: Polynomial,
    pub ext: Polynomial,
}

/// One balanced product-polynomial `A · B` with `A = A_l · A_r`.
#[derive(Clone, Debug, Serialize)]
pub struct SopPart {
    pub gate: GateId,
    /// Measure of `A` (minimum degree or length).
    pub measure: u64,
    pub a: Polynomial,
    pub b: Polynomial,
    pub a_left: Polynomial,
    pub a_right: Polynomial,
}

impl Circuit {
    /// `ext(g)` for every gate, by the path formula: a sum gate passes its
    /// own ext to both inputs, a product gate `u ⊗ w` passes
    /// `produce(w) · ext` to `u` and vice versa. Gates with no path to the
    /// output get the empty polynomial.
    pub fn ext_all(&self, cap: usize) -> Result<Vec<Polynomial>> {
        let out = self.single_output()?;
        let prods = self.produce_gates(cap, true)?;
        self.ext_from(out, &prods, cap)
    }

    fn ext_from(&self, out: GateId, prods: &[Option<Polynomial>], cap: usize) -> Result<Vec<Polynomial>> {
        let n = self.n_vars;
        let mut ext = vec![Polynomial::zero(n); self.gates.len()];
        ext[out] = Polynomial::one(n);
        for v in (0..=out).rev() {
            if ext[v].is_empty() {
                continue;
            }
            match self.gates[v] {
                Gate::Sum { l, r } => {
                    for u in [l, r] {
                        ext[u] = ext[u].union_set(&ext[v])?;
                    }
                }
                Gate::Prod { l, r } => {
                    let to_l = prod_of(prods, r).mul_set(&ext[v], cap).map_err(at(v))?;
                    let to_r = prod_of(prods, l).mul_set(&ext[v], cap).map_err(at(v))?;
                    ext[l] = ext[l].union_set(&to_l)?;
                    ext[r] = ext[r].union_set(&to_r)?;
                }
                _ => {}
            }
        }
        Ok(ext)
    }

    pub fn ext_polynomial(&self, g: GateId, cap: usize) -> Result<Polynomial> {
        self.gate(g)?;
        Ok(self.ext_all(cap)?.swap_remove(g))
    }

    /// `Ext(v, u)`: `ext(v)` if `v` is a sum gate, `produce(w) · ext(v)` if
    /// `v = u ⊗ w`.
    pub fn edge_ext(&self, u: GateId, v: GateId, cap: usize) -> Result<Polynomial> {
        let out = self.single_output()?;
        let prods = self.produce_gates(cap, true)?;
        let ext = self.ext_from(out, &prods, cap)?;
        self.edge_ext_with(u, v, &prods, &ext, cap)
    }

    fn edge_ext_with(
        &self,
        u: GateId,
        v: GateId,
        prods: &[Option<Polynomial>],
        ext: &[Polynomial],
        cap: usize,
    ) -> Result<Polynomial> {
        match self.gate(v)? {
            Gate::Sum { l, r } if l == u || r == u => Ok(ext[v].clone()),
            Gate::Prod { l, r } if l == u || r == u => {
                if ext[v].is_empty() {
                    return Ok(Polynomial::zero(self.n_vars));
                }
                let w = if l == u { r } else { l };
                prod_of(prods, w).mul_set(&ext[v], cap)
            }
            _ => Err(Error::precondition(format!("({u}, {v}) is not a wire"))),
        }
    }

    /// Split at gate `g`: returns `(produce(g), ext(g), F_{g=0})`,
    /// whose combination `produce(g)·ext(g) ∪ F_{g=0}` is the produced set.
    pub fn gate_split(&self, g: GateId, cap: usize) -> Result<(Polynomial, Polynomial, Polynomial)> {
        let out = self.single_output()?;
        self.gate(g)?;
        let prods = self.produce_gates(cap, true)?;
        let ext = self.ext_from(out, &prods, cap)?;
        let rest = self.restrict_gate_zero(g)?.produce_sets(cap)?.remove(0);
        Ok((self.produced_at(&prods, g, cap)?, ext[g].clone(), rest))
    }

    /// `produce(g)`, also for gates the output does not depend on (whose
    /// ext is empty).
    fn produced_at(&self, prods: &[Option<Polynomial>], g: GateId, cap: usize) -> Result<Polynomial> {
        match &prods[g] {
            Some(p) => Ok(p.clone()),
            None => {
                let mut alone = self.clone();
                alone.set_outputs(vec![g])?;
                Ok(alone.produce_sets(cap)?.remove(0))
            }
        }
    }

    /// Zeroing `g` leaves the produced set unchanged.
    pub fn is_redundant_gate(&self, g: GateId, cap: usize) -> Result<bool> {
        let f = self.produce_sets(cap)?;
        let h = self.restrict_gate_zero(g)?.produce_sets(cap)?;
        Ok(f.iter().zip(&h).all(|(a, b)| a.set_eq(b)))
    }

    /// Whether every input-to-output path meets the cut. Constant gates
    /// count as inputs.
    pub fn is_cut(&self, cut: &Cut) -> Result<bool> {
        let out = self.single_output()?;
        let len = self.gates.len();
        let mut node_cut = vec![false; len];
        let mut edge_cut = std::collections::HashSet::new();
        match cut {
            Cut::Node(us) => {
                for &u in us {
                    self.gate(u)?;
                    node_cut[u] = true;
                }
            }
            Cut::Edge(es) => {
                for &(u, v) in es {
                    match self.gate(v)?.inputs() {
                        Some((l, r)) if l == u || r == u => {
                            edge_cut.insert((u, v));
                        }
                        _ => return Err(Error::precondition(format!("({u}, {v}) is not a wire"))),
                    }
                }
            }
        }
        // reach[v]: some input reaches v avoiding the cut
        let mut reach = vec![false; len];
        for (v, g) in self.gates.iter().enumerate() {
            if node_cut[v] {
                continue;
            }
            reach[v] = match g.inputs() {
                None => true,
                Some((l, r)) => {
                    (reach[l] && !edge_cut.contains(&(l, v))) || (reach[r] && !edge_cut.contains(&(r, v)))
                }
            };
        }
        Ok(!reach[out])
    }

    /// Writes the produced set as a union of `produce(u) · ext(u)` over a
    /// node cut, or of `produce(u) · Ext(v, u)` over an edge cut.
    pub fn cut_decompose(&self, cut: &Cut, cap: usize) -> Result<Vec<CutPart>> {
        if !self.is_cut(cut)? {
            return Err(Error::precondition("not a cut: some input-output path avoids it"));
        }
        let out = self.single_output()?;
        let prods = self.produce_gates(cap, true)?;
        let ext = self.ext_from(out, &prods, cap)?;
        let mut parts = Vec::new();
        match cut {
            Cut::Node(us) => {
                for &u in us {
                    parts.push(CutPart {
                        node: u,
                        consumer: None,
                        produced: self.produced_at(&prods, u, cap)?,
                        ext: ext[u].clone(),
                    });
                }
            }
            Cut::Edge(es) => {
                for &(u, v) in es {
                    parts.push(CutPart {
                        node: u,
                        consumer: Some(v),
                        produced: self.produced_at(&prods, u, cap)?,
                        ext: self.edge_ext_with(u, v, &prods, &ext, cap)?,
                    });
                }
            }
        }
        Ok(parts)
    }

    /// Measure of every gate; `+∞` for gates producing nothing.
    fn measures(&self, measure: Measure, prods: &[Option<Polynomial>]) -> Vec<ExtInt> {
        match measure {
            Measure::Degree => self.gate_min_degrees(),
            Measure::Length => prods
                .iter()
                .map(|p| match p.as_ref().and_then(Polynomial::min_length) {
                    Some(l) => ExtInt::Fin(l as i64),
                    None => ExtInt::PosInf,
                })
                .collect(),
        }
    }

    /// A product gate whose minimum degree lies in `[⌈m/3⌉, ⌊2m/3⌋]`,
    /// found by walking down from the output: through a sum gate towards
    /// the input of smaller degree, through a product gate towards the
    /// input of larger degree (left on ties), until a product gate of
    /// degree at most `2m/3` is reached.
    pub fn find_balanced_product_gate(&self, m: u64) -> Result<GateId> {
        let mu = self.gate_min_degrees();
        self.balanced_walk(&mu, m)
    }

    fn balanced_walk(&self, mu: &[ExtInt], m: u64) -> Result<GateId> {
        let out = self.single_output()?;
        if m < 3 {
            return Err(Error::precondition(format!("balanced gate needs m ≥ 3, got {m}")));
        }
        let m_i = m as i64;
        match mu[out] {
            ExtInt::Fin(d) if d >= m_i => {}
            d => {
                return Err(Error::precondition(format!(
                    "output measure {d} is below m = {m}"
                )))
            }
        }
        let mut v = out;
        loop {
            let here = match mu[v] {
                ExtInt::Fin(d) => d,
                _ => return Err(Error::Internal("walk entered an empty gate".into())),
            };
            match self.gates[v] {
                Gate::Prod { .. } if 3 * here <= 2 * m_i => {
                    if 3 * here < m_i {
                        return Err(Error::Internal(format!("gate {v} fell below m/3")));
                    }
                    return Ok(v);
                }
                Gate::Prod { l, r } => v = if mu[l] >= mu[r] { l } else { r },
                Gate::Sum { l, r } => v = if mu[l] <= mu[r] { l } else { r },
                _ => return Err(Error::Internal(format!("walk reached input gate {v}"))),
            }
        }
    }

    /// Repeatedly finds a balanced product gate `g`, emits
    /// `produce(g) · ext(g)`, and zeroes `g`, until nothing is produced.
    /// `m` is the output's measure and must be at least 3.
    pub fn sum_of_products_decompose(&self, measure: Measure, cap: usize) -> Result<Vec<SopPart>> {
        let out = self.single_output()?;
        let mut cur = self.clone();
        let first = cur.produce_gates(cap, true)?;
        let m = match cur.measures(measure, &first)[out] {
            ExtInt::Fin(d) => d as u64,
            _ => return Err(Error::precondition("the circuit produces the empty polynomial")),
        };
        let mut parts = Vec::new();
        let mut prods = first;
        loop {
            if prod_of(&prods, out).is_empty() {
                break;
            }
            let mu = cur.measures(measure, &prods);
            let g = cur.balanced_walk(&mu, m)?;
            let ext = cur.ext_from(out, &prods, cap)?;
            let (l, r) = cur.gates[g].inputs().expect("walk returns product gates");
            parts.push(SopPart {
                gate: g,
                measure: mu[g].finite().unwrap_or_default() as u64,
                a: prod_of(&prods, g),
                b: ext[g].clone(),
                a_left: prod_of(&prods, l),
                a_right: prod_of(&prods, r),
            });
            cur = cur.restrict_gate_zero(g)?;
            prods = cur.produce_gates(cap, true)?;
        }
        Ok(parts)
    }

    /// A circuit of no larger size producing the lower (or higher) envelope
    /// of the produced polynomial. Every sum gate whose inputs differ in
    /// minimum (maximum) degree keeps only the input of smaller (larger)
    /// degree; empty inputs are always dropped.
    pub fn envelope_subcircuit(&self, which: WhichEnvelope) -> Result<Circuit> {
        let out = self.single_output()?;
        let deg = match which {
            WhichEnvelope::Lower => self.gate_min_degrees(),
            WhichEnvelope::Higher => self.gate_max_degrees(),
        };
        if !self.gate_nonempty()[out] {
            return Err(Error::precondition("envelope of the empty polynomial"));
        }
        let mut c = Circuit::builder(self.n_vars);
        let mut map = vec![0usize; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            map[id] = match *g {
                Gate::Sum { l, r } if deg[l] != deg[r] => {
                    let keep = match which {
                        WhichEnvelope::Lower => if deg[l] < deg[r] { l } else { r },
                        WhichEnvelope::Higher => if deg[l] > deg[r] { l } else { r },
                    };
                    map[keep]
                }
                Gate::Sum { l, r } => c.sum(map[l], map[r]),
                Gate::Prod { l, r } => c.prod(map[l], map[r]),
                other => c.push(other)?,
            };
        }
        c.set_outputs(vec![map[out]])?;
        Ok(c.prune())
    }
}

fn prod_of(prods: &[Option<Polynomial>], g: GateId) -> Polynomial {
    prods[g].clone().expect("gate produced before use")
}

fn at(gate: GateId) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Explosion { cap, estimate, .. } => Error::Explosion { gate: Some(gate), cap, estimate },
        other => other,
    }
}
