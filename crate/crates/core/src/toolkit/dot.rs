//! Graphviz export of braid and 3×3 diagrams.
//!
//! Nodes carry symbolic object names; edge labels name the morphisms.
//! Anticommuting squares get a `⊖` marker node placed inside them.

use std::fmt::Write;

/// Id, label and optional pinned position.
type Node = (String, String, Option<(i32, i32)>);

#[derive(Clone, Debug, Default)]
pub struct DotGraph {
    name: String,
    nodes: Vec<Node>,
    edges: Vec<(String, String, String)>,
    markers: Vec<(String, (i32, i32))>,
}

impl DotGraph {
    pub fn new(name: &str) -> Self {
        DotGraph { name: name.to_string(), ..Default::default() }
    }

    /// Adds a node once; later calls with the same id are ignored.
    pub fn node(&mut self, id: &str, label: &str, pos: Option<(i32, i32)>) {
        if !self.nodes.iter().any(|(n, _, _)| n == id) {
            self.nodes.push((id.to_string(), label.to_string(), pos));
        }
    }

    pub fn edge(&mut self, from: &str, to: &str, label: &str) {
        self.edges.push((from.to_string(), to.to_string(), label.to_string()));
    }

    /// A `⊖` marker at `pos`, for an anticommuting square.
    pub fn anticommutes(&mut self, pos: (i32, i32)) {
        let id = format!("anti{}", self.markers.len());
        self.markers.push((id, pos));
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(&self.name));
        let _ = writeln!(s, "  node [shape=plaintext];");
        for (id, label, pos) in &self.nodes {
            let _ = match pos {
                Some((x, y)) => writeln!(s, "  \"{}\" [label=\"{}\", pos=\"{},{}!\"];", escape(id), escape(label), x, y),
                None => writeln!(s, "  \"{}\" [label=\"{}\"];", escape(id), escape(label)),
            };
        }
        for (id, (x, y)) in &self.markers {
            let _ = writeln!(s, "  \"{id}\" [label=\"⊖\", pos=\"{x},{y}!\"];");
        }
        for (a, b, label) in &self.edges {
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", escape(a), escape(b), escape(label));
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The 4×4 lattice of a 3×3 completion, with the corner square marked.
pub fn grid_dot() -> DotGraph {
    let objs = [
        ["X", "Y", "C_f", "ΣX"],
        ["X'", "Y'", "C_h", "ΣX'"],
        ["C_g", "C_k", "C_m", "ΣC_g"],
        ["ΣX", "ΣY", "ΣC_f", "Σ²X"],
    ];
    let row_maps = [["f", "f'", "f''"], ["h", "h'", "h''"], ["j", "j'", "j''"], ["Σf", "Σf'", "Σf''"]];
    let col_maps = [["g", "g'", "g''"], ["k", "k'", "k''"], ["m", "m'", "m''"], ["Σg", "Σg'", "Σg''"]];
    let id = |r: usize, c: usize| format!("r{r}c{c}");
    let mut g = DotGraph::new("3x3");
    for (r, row) in objs.iter().enumerate() {
        for (c, label) in row.iter().enumerate() {
            g.node(&id(r, c), label, Some((2 * c as i32, -2 * r as i32)));
        }
    }
    for r in 0..4 {
        for c in 0..3 {
            g.edge(&id(r, c), &id(r, c + 1), row_maps[r][c]);
            g.edge(&id(c, r), &id(c + 1, r), col_maps[r][c]);
        }
    }
    g.anticommutes((5, -5));
    g
}

/// The braid of the four triangles of an octahedron on `X --f--> Y --g--> Z`.
pub fn braid_dot() -> DotGraph {
    let mut g = DotGraph::new("braid");
    let strands: [(&str, [&str; 4], [&str; 3]); 4] = [
        ("f", ["X", "Y", "C_f", "ΣX"], ["f", "f'", "f''"]),
        ("g", ["Y", "Z", "C_g", "ΣY"], ["g", "g'", "g''"]),
        ("h", ["X", "Z", "C_h", "ΣX"], ["h", "h'", "h''"]),
        ("k", ["C_f", "C_h", "C_g", "ΣC_f"], ["k", "k'", "k''"]),
    ];
    for (_, objs, maps) in &strands {
        for o in objs {
            g.node(o, o, None);
        }
        for i in 0..3 {
            g.edge(objs[i], objs[i + 1], maps[i]);
        }
    }
    g.node("ΣY", "ΣY", None);
    g.edge("ΣX", "ΣY", "Σf");
    g.edge("ΣY", "ΣC_f", "Σf'");
    g
}
