//! Graphviz output, one undirected graph per network.

use crate::classify::StabilityRow;
use crate::network::PlayerSet;

/// DOT text for one classified network; nodes are `1..n`, edges in canonical order.
pub fn network_dot(ps: &PlayerSet, row: &StabilityRow) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph \"{}\" {{\n", ps.display(row.network)));
    out.push_str(&format!("  label=\"{}\";\n", row.summary()));
    for i in ps.players() {
        out.push_str(&format!("  {};\n", i + 1));
    }
    for l in ps.links(row.network) {
        out.push_str(&format!("  {} -- {};\n", l.i + 1, l.j + 1));
    }
    out.push_str("}\n");
    out
}

/// `g<bitmask>.dot`, zero-padded so files sort in bitmask order.
pub fn file_name(ps: &PlayerSet, row: &StabilityRow) -> String {
    let width = ps.num_networks().saturating_sub(1).to_string().len();
    format!("g{:0width$}.dot", row.network.bits(), width = width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, Concept};
    use crate::model::Model;
    use crate::payoff::NetworkPayoff;

    #[test]
    fn dot_shape() {
        let ps = PlayerSet::new(3).unwrap();
        let rows = classify(&Model::new(NetworkPayoff::zero(&ps)), &[Concept::Slap]).unwrap();
        let last = rows.last().unwrap();
        let text = network_dot(&ps, last);
        assert!(text.starts_with("graph \"gN\" {\n  label=\"slap\";"));
        assert!(text.contains("  1 -- 2;\n  1 -- 3;\n  2 -- 3;\n"));
        assert_eq!(file_name(&ps, &rows[0]), "g0.dot");
        assert!(network_dot(&ps, &rows[0]).contains("label=\"none\""));
    }
}
