//! Formal production and parse graphs.

use serde::Serialize;

use super::{Circuit, Gate, GateId};
use crate::error::{Error, Result};
use crate::polynomial::{Monomial, Polynomial};

impl Circuit {
    /// The formal polynomial of every output, with coefficients counting
    /// parse graphs. Fails when a gate would exceed `cap` monomials.
    pub fn produce(&self, cap: usize) -> Result<Vec<Polynomial>> {
        let all = self.produce_gates(cap, false)?;
        Ok(self.outputs.iter().map(|&o| all[o].clone().expect("output is reachable")).collect())
    }

    /// Like [`Circuit::produce`] but with every coefficient set to one.
    pub fn produce_sets(&self, cap: usize) -> Result<Vec<Polynomial>> {
        let all = self.produce_gates(cap, true)?;
        Ok(self.outputs.iter().map(|&o| all[o].clone().expect("output is reachable")).collect())
    }

    /// Produced polynomial at every gate an output depends on; `None` for
    /// the others.
    pub fn produce_gates(&self, cap: usize, set: bool) -> Result<Vec<Option<Polynomial>>> {
        let need = self.reachable();
        let n = self.n_vars;
        let mut out: Vec<Option<Polynomial>> = vec![None; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            if !need[id] {
                continue;
            }
            let p = match *g {
                Gate::Var { i } => Polynomial::var(n, i),
                Gate::Zero => Polynomial::zero(n),
                Gate::One => Polynomial::one(n),
                Gate::Sum { l, r } => {
                    let (a, b) = (out[l].as_ref().unwrap(), out[r].as_ref().unwrap());
                    let s = if set { a.union_set(b)? } else { a.add(b)? };
                    if s.len() > cap {
                        return Err(Error::Explosion {
                            gate: Some(id),
                            cap,
                            estimate: (a.len() + b.len()) as u128,
                        });
                    }
                    s
                }
                Gate::Prod { l, r } => {
                    let (a, b) = (out[l].as_ref().unwrap(), out[r].as_ref().unwrap());
                    let res = if set { a.mul_set(b, cap) } else { a.mul(b, cap) };
                    res.map_err(|e| match e {
                        Error::Explosion { cap, estimate, .. } => {
                            Error::Explosion { gate: Some(id), cap, estimate }
                        }
                        other => other,
                    })?
                }
            };
            out[id] = Some(p);
        }
        Ok(out)
    }
}

/// One occurrence of a gate in the tree unfolding of a parse graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseNode {
    pub gate: GateId,
    /// Indices into [`ParseGraph::nodes`]: one child for a sum gate (the
    /// chosen input), two for a product gate, none for an input.
    pub children: Vec<usize>,
    /// For a sum gate, whether the left (`0`) or right (`1`) wire was taken.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wire: Option<u8>,
    /// The sub-monomial produced below this node is not `1`.
    #[serde(skip)]
    nonconstant: bool,
}

/// A parse graph in tree-unfolded form; node `0` is the root and children
/// follow their parent. Gates reused by the parse graph appear once per use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseGraph {
    pub root: GateId,
    pub nodes: Vec<ParseNode>,
    pub monomial: Monomial,
}

impl ParseGraph {
    /// No gate is used twice, ignoring repeated uses that contribute only
    /// the constant monomial.
    pub fn is_tree(&self) -> bool {
        let mut used = std::collections::HashSet::new();
        self.nodes.iter().filter(|n| n.nonconstant).all(|n| used.insert(n.gate))
    }
}

impl Circuit {
    /// Number of parse graphs rooted at every gate (saturating).
    pub fn parse_graph_counts(&self) -> Vec<u128> {
        let mut c = vec![0u128; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            c[id] = match *g {
                Gate::Var { .. } | Gate::One => 1,
                Gate::Zero => 0,
                Gate::Sum { l, r } => c[l].saturating_add(c[r]),
                Gate::Prod { l, r } => c[l].saturating_mul(c[r]),
            };
        }
        c
    }

    /// All parse graphs of the single output, failing when there are more
    /// than `limit`.
    pub fn parse_graphs(&self, limit: usize) -> Result<Vec<ParseGraph>> {
        let root = self.single_output()?;
        let count = self.parse_graph_counts()[root];
        if count > limit as u128 {
            return Err(Error::Cap(format!("{count} parse graphs exceed the limit {limit}")));
        }
        let mut out = Vec::with_capacity(count as usize);
        for tree in self.unfold(root) {
            out.push(tree);
        }
        Ok(out)
    }

    fn unfold(&self, g: GateId) -> Vec<ParseGraph> {
        match self.gates[g] {
            Gate::Var { i } => vec![leaf(g, Monomial::var(i))],
            Gate::One => vec![leaf(g, Monomial::one())],
            Gate::Zero => Vec::new(),
            Gate::Sum { l, r } => {
                let mut v = Vec::new();
                for (wire, child) in [(0u8, l), (1u8, r)] {
                    for sub in self.unfold(child) {
                        v.push(graft(g, Some(wire), vec![sub]));
                    }
                }
                v
            }
            Gate::Prod { l, r } => {
                let left = self.unfold(l);
                let right = self.unfold(r);
                let mut v = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        v.push(graft(g, None, vec![a.clone(), b.clone()]));
                    }
                }
                v
            }
        }
    }
}

fn leaf(g: GateId, m: Monomial) -> ParseGraph {
    let nonconstant = !m.is_one();
    ParseGraph {
        root: g,
        nodes: vec![ParseNode { gate: g, children: Vec::new(), wire: None, nonconstant }],
        monomial: m,
    }
}

fn graft(g: GateId, wire: Option<u8>, subs: Vec<ParseGraph>) -> ParseGraph {
    let mut nodes = vec![ParseNode { gate: g, children: Vec::new(), wire, nonconstant: false }];
    let mut monomial = Monomial::one();
    for sub in subs {
        let offset = nodes.len();
        nodes[0].children.push(offset);
        for mut node in sub.nodes {
            for c in &mut node.children {
                *c += offset;
            }
            nodes.push(node);
        }
        monomial = monomial.mul(&sub.monomial).expect("exponents fit in u32");
    }
    nodes[0].nonconstant = !monomial.is_one();
    ParseGraph { root: g, nodes, monomial }
}
