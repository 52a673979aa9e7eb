use std::fmt::Write;

use super::{Circuit, Gate};

impl Circuit {
    /// Graphviz rendering: ⊕ gates as ellipses, ⊗ gates as boxes, outputs
    /// double-bordered.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph circuit {\n  rankdir=BT;\n");
        for (id, g) in self.gates.iter().enumerate() {
            let (label, shape) = match *g {
                Gate::Var { i } => (format!("x{i}"), "plaintext"),
                Gate::Zero => ("0".to_string(), "plaintext"),
                Gate::One => ("1".to_string(), "plaintext"),
                Gate::Sum { .. } => ("⊕".to_string(), "ellipse"),
                Gate::Prod { .. } => ("⊗".to_string(), "box"),
            };
            let peripheries = if self.outputs.contains(&id) { ", peripheries=2" } else { "" };
            let _ = writeln!(s, "  g{id} [label=\"{label}\", shape={shape}{peripheries}];");
        }
        for (id, g) in self.gates.iter().enumerate() {
            if let Some((l, r)) = g.inputs() {
                let _ = writeln!(s, "  g{l} -> g{id};");
                let _ = writeln!(s, "  g{r} -> g{id};");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let mut c = Circuit::builder(2);
        let x = c.var(0);
        let y = c.var(1);
        let s = c.sum(x, y);
        let p = c.prod(s, x);
        c.set_outputs(vec![p]).unwrap();
        let dot = c.to_dot();
        assert!(dot.contains("g2 [label=\"⊕\", shape=ellipse]"));
        assert!(dot.contains("g3 [label=\"⊗\", shape=box, peripheries=2]"));
        assert!(dot.contains("g2 -> g3;"));
    }
}
