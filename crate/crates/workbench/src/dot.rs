//! DOT export: Max vertices as boxes, Min as diamonds, terminals as circles
//! labeled with their payoff; network arcs carry their capacity.

use std::fmt::Write;

use srg_core::game::{Srg, VertexKind};
use srg_core::interdiction::Network;

pub fn srg_to_dot(game: &Srg) -> String {
    let mut s = String::new();
    writeln!(s, "digraph srg {{").unwrap();
    for v in game.vertex_ids() {
        let attrs = match game.kind(v).unwrap() {
            VertexKind::Max => format!("shape=box, label=\"{v}\""),
            VertexKind::Min => format!("shape=diamond, label=\"{v}\""),
            VertexKind::Terminal(p) => format!("shape=circle, label=\"{p}\""),
        };
        let start = if game.start() == Some(v) { ", penwidth=2" } else { "" };
        writeln!(s, "  v{v} [{attrs}{start}];").unwrap();
    }
    for a in game.arcs() {
        writeln!(s, "  v{} -> v{};", a.tail, a.head).unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

pub fn network_to_dot(net: &Network) -> String {
    let mut s = String::new();
    writeln!(s, "digraph network {{").unwrap();
    for v in 0..net.vertex_count() {
        let mark = if v == net.source() {
            ", label=\"s\""
        } else if v == net.sink() {
            ", label=\"t\""
        } else {
            ""
        };
        let budget = net.budget(v);
        if budget > 0 {
            writeln!(s, "  v{v} [shape=circle{mark}, xlabel=\"k={budget}\"];").unwrap();
        } else {
            writeln!(s, "  v{v} [shape=circle{mark}];").unwrap();
        }
    }
    for a in net.arcs() {
        writeln!(s, "  v{} -> v{} [label=\"{}\"];", a.tail, a.head, a.capacity).unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Minimal structural check of the emitted DOT: one digraph block,
    /// node statements before use, balanced braces/brackets, each
    /// statement `;`-terminated.
    pub fn looks_like_dot(text: &str) -> bool {
        let mut lines = text.lines();
        if lines.next() != Some("digraph srg {") && !text.starts_with("digraph") {
            return false;
        }
        let opens = text.matches('{').count();
        let closes = text.matches('}').count();
        let lb = text.matches('[').count();
        let rb = text.matches(']').count();
        opens == closes
            && lb == rb
            && text
                .lines()
                .skip(1)
                .take_while(|l| *l != "}")
                .all(|l| l.trim_end().ends_with(';'))
    }

    #[test]
    fn game_dot_is_well_formed() {
        // the equal-value pitfall game, exported and sanity-parsed
        let g = Srg::new(
            vec![VertexKind::Max, VertexKind::Max, VertexKind::Terminal(1.0)],
            vec![(0, 1), (0, 2), (1, 0)],
            Some(0),
        )
        .validate()
        .unwrap();
        let dot = srg_to_dot(&g);
        assert!(looks_like_dot(&dot), "bad dot:\n{dot}");
        assert!(dot.contains("shape=box"));
        assert!(dot.contains("shape=circle"));
        assert!(dot.contains("v0 -> v1;"));
    }

    #[test]
    fn network_dot_carries_capacities() {
        let net = Network::new(2, vec![(0, 1, 2.5)], vec![1, 0], 0, 1).validate().unwrap();
        let dot = network_to_dot(&net);
        assert!(looks_like_dot(&dot), "bad dot:\n{dot}");
        assert!(dot.contains("label=\"2.5\""));
        assert!(dot.contains("k=1"));
    }
}
