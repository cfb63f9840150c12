//! Open-graph representation of ZX diagrams.
//!
//! A diagram is a multigraph of Z/X spiders, Hadamard boxes and ordered
//! boundary nodes. Parallel edges and self-loops are allowed; only the
//! topology carries meaning, so no geometry is stored. Node ids are
//! opaque and structural equality is decided up to relabeling.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::phase::Phase;

pub type NodeId = u64;

/// The kind of a diagram node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Z(Phase),
    X(Phase),
    H,
    /// Input boundary with its wire position.
    In(usize),
    /// Output boundary with its wire position.
    Out(usize),
}

impl NodeKind {
    pub fn is_boundary(&self) -> bool {
        matches!(self, NodeKind::In(_) | NodeKind::Out(_))
    }

    pub fn is_spider(&self) -> bool {
        matches!(self, NodeKind::Z(_) | NodeKind::X(_))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported document version")]
    BadVersion,
    #[error("duplicate node id {0}")]
    DuplicateNodeId(NodeId),
    #[error("phase forbidden on {kind} node {node}")]
    PhaseForbidden { node: NodeId, kind: &'static str },
    #[error("phase missing on spider node {node}")]
    PhaseMissing { node: NodeId },
    #[error("phase out of range on node {node}")]
    BadPhaseValue { node: NodeId },
    #[error("index forbidden on non-boundary node {node}")]
    IndexForbidden { node: NodeId },
    #[error("index missing on boundary node {node}")]
    IndexMissing { node: NodeId },
    #[error("{kind} boundary indices are not exactly 0..{count}")]
    BadBoundaryIndices { kind: &'static str, count: usize },
    #[error("edge {edge} references missing node {endpoint}")]
    DanglingEdge { edge: usize, endpoint: NodeId },
    #[error("node {node} has degree {found}, expected {expected}")]
    BadDegree {
        node: NodeId,
        expected: usize,
        found: usize,
    },
    #[error("arity mismatch: first has {first_outputs} outputs, second has {second_inputs} inputs")]
    ArityMismatch {
        first_outputs: usize,
        second_inputs: usize,
    },
}

/// An open ZX diagram. Edges are stored normalized (smaller id first)
/// and sorted, so equal structures with equal ids are equal values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagram {
    nodes: BTreeMap<NodeId, NodeKind>,
    edges: Vec<(NodeId, NodeId)>,
    next_id: NodeId,
}

impl Diagram {
    pub fn new() -> Diagram {
        Diagram::default()
    }

    pub fn add_node(&mut self, kind: NodeKind) -> NodeId {
        let id = self.next_id;
        self.next_id += 1;
        self.nodes.insert(id, kind);
        id
    }

    /// Inserts a node with a caller-chosen id (used by the parser).
    pub fn add_node_with_id(&mut self, id: NodeId, kind: NodeKind) -> Result<(), DiagramError> {
        if self.nodes.contains_key(&id) {
            return Err(DiagramError::DuplicateNodeId(id));
        }
        self.nodes.insert(id, kind);
        self.next_id = self.next_id.max(id + 1);
        Ok(())
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        let e = if a <= b { (a, b) } else { (b, a) };
        let pos = self.edges.partition_point(|x| *x <= e);
        self.edges.insert(pos, e);
    }

    pub fn remove_edge_at(&mut self, index: usize) -> (NodeId, NodeId) {
        self.edges.remove(index)
    }

    /// Removes one edge equal to `(a, b)` if present.
    pub fn remove_edge(&mut self, a: NodeId, b: NodeId) -> bool {
        let e = if a <= b { (a, b) } else { (b, a) };
        if let Ok(pos) = self.edges.binary_search(&e) {
            self.edges.remove(pos);
            true
        } else {
            false
        }
    }

    /// Removes a node together with all incident edges.
    pub fn remove_node(&mut self, v: NodeId) {
        self.nodes.remove(&v);
        self.edges.retain(|&(a, b)| a != v && b != v);
    }

    pub fn kind(&self, v: NodeId) -> Option<NodeKind> {
        self.nodes.get(&v).copied()
    }

    pub fn set_kind(&mut self, v: NodeId, kind: NodeKind) {
        self.nodes.insert(v, kind);
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, NodeKind)> + '_ {
        self.nodes.iter().map(|(&id, &k)| (id, k))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Degree with self-loops counting twice.
    pub fn degree(&self, v: NodeId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Multiset of neighbours; a self-loop contributes `v` twice.
    pub fn neighbors(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            }
            if b == v {
                out.push(a);
            }
        }
        out
    }

    /// Number of edges between `a` and `b` (or self-loops when `a == b`).
    pub fn edge_multiplicity(&self, a: NodeId, b: NodeId) -> usize {
        let e = if a <= b { (a, b) } else { (b, a) };
        self.edges.iter().filter(|&&x| x == e).count()
    }

    pub fn n_inputs(&self) -> usize {
        self.nodes
            .values()
            .filter(|k| matches!(k, NodeKind::In(_)))
            .count()
    }

    pub fn n_outputs(&self) -> usize {
        self.nodes
            .values()
            .filter(|k| matches!(k, NodeKind::Out(_)))
            .count()
    }

    /// Input node ids ordered by boundary index. Only meaningful on a
    /// validated diagram.
    pub fn inputs(&self) -> Vec<NodeId> {
        let mut v: Vec<(usize, NodeId)> = self
            .nodes
            .iter()
            .filter_map(|(&id, &k)| match k {
                NodeKind::In(i) => Some((i, id)),
                _ => None,
            })
            .collect();
        v.sort();
        v.into_iter().map(|(_, id)| id).collect()
    }

    /// Output node ids ordered by boundary index.
    pub fn outputs(&self) -> Vec<NodeId> {
        let mut v: Vec<(usize, NodeId)> = self
            .nodes
            .iter()
            .filter_map(|(&id, &k)| match k {
                NodeKind::Out(i) => Some((i, id)),
                _ => None,
            })
            .collect();
        v.sort();
        v.into_iter().map(|(_, id)| id).collect()
    }

    /// Checks every structural invariant: edge endpoints exist, H boxes
    /// have degree 2, boundaries degree 1, boundary indices contiguous.
    pub fn validate(&self) -> Result<(), DiagramError> {
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for endpoint in [a, b] {
                if !self.nodes.contains_key(&endpoint) {
                    return Err(DiagramError::DanglingEdge { edge: i, endpoint });
                }
            }
        }
        let mut in_indices = Vec::new();
        let mut out_indices = Vec::new();
        for (&id, &kind) in &self.nodes {
            match kind {
                NodeKind::H => {
                    let d = self.degree(id);
                    if d != 2 {
                        return Err(DiagramError::BadDegree {
                            node: id,
                            expected: 2,
                            found: d,
                        });
                    }
                }
                NodeKind::In(i) | NodeKind::Out(i) => {
                    let d = self.degree(id);
                    if d != 1 {
                        return Err(DiagramError::BadDegree {
                            node: id,
                            expected: 1,
                            found: d,
                        });
                    }
                    match kind {
                        NodeKind::In(_) => in_indices.push(i),
                        _ => out_indices.push(i),
                    }
                }
                NodeKind::Z(_) | NodeKind::X(_) => {}
            }
        }
        for (kind, mut indices) in [("input", in_indices), ("output", out_indices)] {
            let count = indices.len();
            indices.sort();
            if indices.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(DiagramError::BadBoundaryIndices { kind, count });
            }
        }
        Ok(())
    }

    /// Parses the version-1 JSON diagram format and validates the result.
    pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| DiagramError::Json("top level must be an object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "version" | "nodes" | "edges") {
                return Err(DiagramError::Json(format!("unknown field {key:?}")));
            }
        }
        if obj.get("version").and_then(|v| v.as_u64()) != Some(1) {
            return Err(DiagramError::BadVersion);
        }
        let nodes = obj
            .get("nodes")
            .and_then(|v| v.as_array())
            .ok_or_else(|| DiagramError::Json("missing nodes array".into()))?;
        let mut d = Diagram::new();
        for n in nodes {
            let n = n
                .as_object()
                .ok_or_else(|| DiagramError::Json("node must be an object".into()))?;
            for key in n.keys() {
                if !matches!(key.as_str(), "id" | "kind" | "phase" | "index") {
                    return Err(DiagramError::Json(format!("unknown node field {key:?}")));
                }
            }
            let id = n
                .get("id")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| DiagramError::Json("node id must be a non-negative integer".into()))?;
            let kind_str = n
                .get("kind")
                .and_then(|v| v.as_str())
                .ok_or_else(|| DiagramError::Json(format!("node {id} has no kind")))?;
            let phase = n.get("phase");
            let index = n.get("index");
            let kind = match kind_str {
                "Z" | "X" => {
                    if index.is_some() {
                        return Err(DiagramError::IndexForbidden { node: id });
                    }
                    let p = phase
                        .ok_or(DiagramError::PhaseMissing { node: id })?
                        .as_u64()
                        .filter(|&k| k <= 3)
                        .ok_or(DiagramError::BadPhaseValue { node: id })?;
                    let p = Phase::new(p as i64);
                    if kind_str == "Z" {
                        NodeKind::Z(p)
                    } else {
                        NodeKind::X(p)
                    }
                }
                "H" => {
                    if phase.is_some() {
                        return Err(DiagramError::PhaseForbidden { node: id, kind: "H" });
                    }
                    if index.is_some() {
                        return Err(DiagramError::IndexForbidden { node: id });
                    }
                    NodeKind::H
                }
                "in" | "out" => {
                    if phase.is_some() {
                        return Err(DiagramError::PhaseForbidden {
                            node: id,
                            kind: "boundary",
                        });
                    }
                    let i = index
                        .ok_or(DiagramError::IndexMissing { node: id })?
                        .as_u64()
                        .ok_or_else(|| DiagramError::Json(format!("bad index on node {id}")))?
                        as usize;
                    if kind_str == "in" {
                        NodeKind::In(i)
                    } else {
                        NodeKind::Out(i)
                    }
                }
                other => return Err(DiagramError::Json(format!("unknown kind {other:?}"))),
            };
            d.add_node_with_id(id, kind)?;
        }
        let edges = obj
            .get("edges")
            .and_then(|v| v.as_array())
            .ok_or_else(|| DiagramError::Json("missing edges array".into()))?;
        for (i, e) in edges.iter().enumerate() {
            let pair = e
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| DiagramError::Json(format!("edge {i} must be a pair")))?;
            let a = pair[0]
                .as_u64()
                .ok_or_else(|| DiagramError::Json(format!("edge {i} endpoint must be an id")))?;
            let b = pair[1]
                .as_u64()
                .ok_or_else(|| DiagramError::Json(format!("edge {i} endpoint must be an id")))?;
            for endpoint in [a, b] {
                if !d.nodes.contains_key(&endpoint) {
                    return Err(DiagramError::DanglingEdge { edge: i, endpoint });
                }
            }
            d.add_edge(a, b);
        }
        d.validate()?;
        Ok(d)
    }

    /// Canonical serialization: nodes sorted by id, edges normalized and
    /// sorted lexicographically; byte-identical for equal values.
    pub fn serialize(&self) -> String {
        let mut out = String::from("{\"version\":1,\"nodes\":[");
        for (i, (&id, &kind)) in self.nodes.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match kind {
                NodeKind::Z(p) => {
                    write!(out, "{{\"id\":{id},\"kind\":\"Z\",\"phase\":{}}}", p.k()).unwrap()
                }
                NodeKind::X(p) => {
                    write!(out, "{{\"id\":{id},\"kind\":\"X\",\"phase\":{}}}", p.k()).unwrap()
                }
                NodeKind::H => write!(out, "{{\"id\":{id},\"kind\":\"H\"}}").unwrap(),
                NodeKind::In(idx) => {
                    write!(out, "{{\"id\":{id},\"kind\":\"in\",\"index\":{idx}}}").unwrap()
                }
                NodeKind::Out(idx) => {
                    write!(out, "{{\"id\":{id},\"kind\":\"out\",\"index\":{idx}}}").unwrap()
                }
            }
        }
        out.push_str("],\"edges\":[");
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "[{a},{b}]").unwrap();
        }
        out.push_str("]}");
        out
    }

    /// Serial composition: output `i` of `first` is fused with input `i`
    /// of `second`.
    pub fn compose_seq(first: &Diagram, second: &Diagram) -> Result<Diagram, DiagramError> {
        if first.n_outputs() != second.n_inputs() {
            return Err(DiagramError::ArityMismatch {
                first_outputs: first.n_outputs(),
                second_inputs: second.n_inputs(),
            });
        }
        let mut out = Diagram::new();
        let mut map_first = HashMap::new();
        let mut map_second = HashMap::new();
        for (id, kind) in first.nodes() {
            map_first.insert(id, out.add_node(kind));
        }
        for (id, kind) in second.nodes() {
            // Inputs of `second` are about to be fused away; keep them as
            // placeholders while rebuilding the edges.
            map_second.insert(id, out.add_node(kind));
        }
        for &(a, b) in first.edges() {
            out.add_edge(map_first[&a], map_first[&b]);
        }
        for &(a, b) in second.edges() {
            out.add_edge(map_second[&a], map_second[&b]);
        }
        let outs: Vec<NodeId> = first.outputs().iter().map(|id| map_first[id]).collect();
        let ins: Vec<NodeId> = second.inputs().iter().map(|id| map_second[id]).collect();
        for (&o, &i) in outs.iter().zip(&ins) {
            let u = out.sole_neighbor(o);
            let v = out.sole_neighbor(i);
            out.remove_node(o);
            out.remove_node(i);
            // A fused pair pointing at each other is a closed loop; it
            // only contributes a scalar, which is ignored.
            if !(u == i && v == o) {
                out.add_edge(u, v);
            }
        }
        // Retype: the glued outputs of `second` keep their indices, the
        // inputs of `first` keep theirs; nothing else changes.
        Ok(out)
    }

    fn sole_neighbor(&self, v: NodeId) -> NodeId {
        let n = self.neighbors(v);
        debug_assert_eq!(n.len(), 1, "boundary {v} must have exactly one neighbour");
        n[0]
    }

    /// Parallel composition: disjoint union with `b`'s boundary indices
    /// shifted past `a`'s.
    pub fn tensor(a: &Diagram, b: &Diagram) -> Diagram {
        let mut out = Diagram::new();
        let mut map_a = HashMap::new();
        let mut map_b = HashMap::new();
        let (ni, no) = (a.n_inputs(), a.n_outputs());
        for (id, kind) in a.nodes() {
            map_a.insert(id, out.add_node(kind));
        }
        for (id, kind) in b.nodes() {
            let shifted = match kind {
                NodeKind::In(i) => NodeKind::In(i + ni),
                NodeKind::Out(i) => NodeKind::Out(i + no),
                k => k,
            };
            map_b.insert(id, out.add_node(shifted));
        }
        for &(x, y) in a.edges() {
            out.add_edge(map_a[&x], map_a[&y]);
        }
        for &(x, y) in b.edges() {
            out.add_edge(map_b[&x], map_b[&y]);
        }
        out
    }

    /// Choi bending: every input becomes an output. Bent inputs occupy
    /// output positions `0..n` in former input order; the original
    /// outputs follow, shifted by `n`.
    pub fn bend_inputs(&self) -> Diagram {
        let n = self.n_inputs();
        let mut out = self.clone();
        let ids: Vec<(NodeId, NodeKind)> = out.nodes().collect();
        for (id, kind) in ids {
            match kind {
                NodeKind::In(i) => out.set_kind(id, NodeKind::Out(i)),
                NodeKind::Out(i) => out.set_kind(id, NodeKind::Out(i + n)),
                _ => {}
            }
        }
        out
    }

    /// Deterministic DOT rendering: Z green, X red, H yellow boxes,
    /// boundaries as points.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph zx {\n  edge [dir=none];\n");
        for (id, kind) in self.nodes() {
            let attrs = match kind {
                NodeKind::Z(p) => format!(
                    "shape=circle,style=filled,fillcolor=green,label=\"{}\"",
                    p
                ),
                NodeKind::X(p) => {
                    format!("shape=circle,style=filled,fillcolor=red,label=\"{}\"", p)
                }
                NodeKind::H => {
                    "shape=box,style=filled,fillcolor=yellow,label=\"H\"".to_string()
                }
                NodeKind::In(i) => format!("shape=point,xlabel=\"in{i}\""),
                NodeKind::Out(i) => format!("shape=point,xlabel=\"out{i}\""),
            };
            writeln!(out, "  n{id} [{attrs}];").unwrap();
        }
        for &(a, b) in self.edges() {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Structural equality up to node relabeling: an exact isomorphism
    /// search pruned by iterated neighbourhood refinement. Boundary
    /// indices, kinds, phases and edge multiplicities must all match.
    pub fn structural_eq(&self, other: &Diagram) -> bool {
        if self.node_count() != other.node_count() || self.edges.len() != other.edges.len() {
            return false;
        }
        let my_colors = self.wl_colors();
        let their_colors = other.wl_colors();
        let mut my_sorted: Vec<u64> = my_colors.values().copied().collect();
        let mut their_sorted: Vec<u64> = their_colors.values().copied().collect();
        my_sorted.sort();
        their_sorted.sort();
        if my_sorted != their_sorted {
            return false;
        }
        // Most-constrained-first: rare colors first, then high degree.
        let mut order: Vec<NodeId> = self.nodes.keys().copied().collect();
        let mut color_count: HashMap<u64, usize> = HashMap::new();
        for c in my_colors.values() {
            *color_count.entry(*c).or_insert(0) += 1;
        }
        order.sort_by_key(|id| (color_count[&my_colors[id]], usize::MAX - self.degree(*id)));
        let mut mapping: HashMap<NodeId, NodeId> = HashMap::new();
        let mut used: HashMap<NodeId, bool> = other.nodes.keys().map(|&k| (k, false)).collect();
        self.iso_search(other, &order, 0, &my_colors, &their_colors, &mut mapping, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_search(
        &self,
        other: &Diagram,
        order: &[NodeId],
        pos: usize,
        my_colors: &HashMap<NodeId, u64>,
        their_colors: &HashMap<NodeId, u64>,
        mapping: &mut HashMap<NodeId, NodeId>,
        used: &mut HashMap<NodeId, bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let candidates: Vec<NodeId> = other
            .nodes
            .keys()
            .copied()
            .filter(|w| {
                !used[w] && other.nodes[w] == self.nodes[&v] && their_colors[w] == my_colors[&v]
            })
            .collect();
        'cand: for w in candidates {
            // adjacency (with multiplicity) to already-mapped nodes must agree
            for (&mv, &mw) in mapping.iter() {
                if self.edge_multiplicity(v, mv) != other.edge_multiplicity(w, mw) {
                    continue 'cand;
                }
            }
            if self.edge_multiplicity(v, v) != other.edge_multiplicity(w, w) {
                continue 'cand;
            }
            mapping.insert(v, w);
            used.insert(w, true);
            if self.iso_search(other, order, pos + 1, my_colors, their_colors, mapping, used) {
                return true;
            }
            mapping.remove(&v);
            used.insert(w, false);
        }
        false
    }

    fn wl_colors(&self) -> HashMap<NodeId, u64> {
        // Colors must be comparable across diagrams, so they are stable
        // hashes of (own color, sorted neighbour colors) seeded with the
        // node kind, not palette indices.
        fn mix(mut h: u64, v: u64) -> u64 {
            h ^= v.wrapping_add(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(h << 6)
                .wrapping_add(h >> 2);
            h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            h ^ (h >> 27)
        }
        let mut colors: HashMap<NodeId, u64> = self
            .nodes()
            .map(|(id, kind)| (id, mix(0xC0FF_EE00, kind_code(kind))))
            .collect();
        for _ in 0..self.node_count() {
            let mut next_colors = HashMap::new();
            for (id, _) in self.nodes() {
                let mut sig: Vec<u64> = self.neighbors(id).iter().map(|n| colors[n]).collect();
                sig.sort();
                let mut h = mix(0xABCD_1234, colors[&id]);
                for s in sig {
                    h = mix(h, s);
                }
                next_colors.insert(id, h);
            }
            if next_colors == colors {
                break;
            }
            colors = next_colors;
        }
        colors
    }

    /// Deterministic relabeling to ids `0..n`, ordered by refinement
    /// color with traversal-order tie-breaking.
    pub fn canonicalized(&self) -> Diagram {
        let colors = self.wl_colors();
        let mut order: Vec<NodeId> = self.nodes.keys().copied().collect();
        order.sort_by_key(|id| (colors[id], *id));
        let mut map = HashMap::new();
        let mut out = Diagram::new();
        for id in order {
            map.insert(id, out.add_node(self.nodes[&id]));
        }
        for &(a, b) in self.edges() {
            out.add_edge(map[&a], map[&b]);
        }
        out
    }

    // ---- builders -------------------------------------------------

    /// A single bare wire.
    pub fn wire() -> Diagram {
        let mut d = Diagram::new();
        let i = d.add_node(NodeKind::In(0));
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(i, o);
        d
    }

    pub fn h_gate() -> Diagram {
        let mut d = Diagram::new();
        let i = d.add_node(NodeKind::In(0));
        let h = d.add_node(NodeKind::H);
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(i, h);
        d.add_edge(h, o);
        d
    }

    pub fn z_phase_gate(p: Phase) -> Diagram {
        let mut d = Diagram::new();
        let i = d.add_node(NodeKind::In(0));
        let z = d.add_node(NodeKind::Z(p));
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(i, z);
        d.add_edge(z, o);
        d
    }

    pub fn x_phase_gate(p: Phase) -> Diagram {
        let mut d = Diagram::new();
        let i = d.add_node(NodeKind::In(0));
        let x = d.add_node(NodeKind::X(p));
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(i, x);
        d.add_edge(x, o);
        d
    }

    /// Controlled-X with the control on wire 0: a green node on the
    /// control wire joined to a red node on the target wire.
    pub fn cnot() -> Diagram {
        let mut d = Diagram::new();
        let i0 = d.add_node(NodeKind::In(0));
        let i1 = d.add_node(NodeKind::In(1));
        let z = d.add_node(NodeKind::Z(Phase::ZERO));
        let x = d.add_node(NodeKind::X(Phase::ZERO));
        let o0 = d.add_node(NodeKind::Out(0));
        let o1 = d.add_node(NodeKind::Out(1));
        d.add_edge(i0, z);
        d.add_edge(z, o0);
        d.add_edge(i1, x);
        d.add_edge(x, o1);
        d.add_edge(z, x);
        d
    }

    /// Controlled-Z: the green–red encoding with Hadamards around the
    /// red node on the second wire.
    pub fn cz() -> Diagram {
        let mut d = Diagram::new();
        let i0 = d.add_node(NodeKind::In(0));
        let i1 = d.add_node(NodeKind::In(1));
        let z = d.add_node(NodeKind::Z(Phase::ZERO));
        let h1 = d.add_node(NodeKind::H);
        let x = d.add_node(NodeKind::X(Phase::ZERO));
        let h2 = d.add_node(NodeKind::H);
        let o0 = d.add_node(NodeKind::Out(0));
        let o1 = d.add_node(NodeKind::Out(1));
        d.add_edge(i0, z);
        d.add_edge(z, o0);
        d.add_edge(i1, h1);
        d.add_edge(h1, x);
        d.add_edge(x, h2);
        d.add_edge(h2, o1);
        d.add_edge(z, x);
        d
    }

    /// |0⟩^⊗n as a row of red phase-0 states.
    pub fn ket0(n: usize) -> Diagram {
        let mut d = Diagram::new();
        for q in 0..n {
            let x = d.add_node(NodeKind::X(Phase::ZERO));
            let o = d.add_node(NodeKind::Out(q));
            d.add_edge(x, o);
        }
        d
    }

    /// |+⟩ as a single green phase-0 state.
    pub fn plus_state() -> Diagram {
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::Z(Phase::ZERO));
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(z, o);
        d
    }
}

fn kind_code(kind: NodeKind) -> u64 {
    match kind {
        NodeKind::Z(p) => 0x1_0000 + p.k() as u64,
        NodeKind::X(p) => 0x2_0000 + p.k() as u64,
        NodeKind::H => 0x3_0000,
        NodeKind::In(i) => 0x4_0000 + i as u64,
        NodeKind::Out(i) => 0x5_0000 + i as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus_json() -> &'static str {
        r#"{"version":1,"nodes":[{"id":0,"kind":"Z","phase":0},{"id":1,"kind":"out","index":0}],"edges":[[0,1]]}"#
    }

    #[test]
    fn parse_minimal_state() {
        let d = Diagram::parse(plus_json()).unwrap();
        assert_eq!(d.n_inputs(), 0);
        assert_eq!(d.n_outputs(), 1);
        assert_eq!(d.serialize(), plus_json());
    }

    #[test]
    fn phase_forbidden_on_h() {
        let doc = r#"{"version":1,"nodes":[{"id":0,"kind":"H","phase":1},{"id":1,"kind":"in","index":0},{"id":2,"kind":"out","index":0}],"edges":[[0,1],[0,2]]}"#;
        assert_eq!(
            Diagram::parse(doc),
            Err(DiagramError::PhaseForbidden { node: 0, kind: "H" })
        );
    }

    #[test]
    fn duplicate_id_rejected() {
        let doc = r#"{"version":1,"nodes":[{"id":0,"kind":"Z","phase":0},{"id":0,"kind":"Z","phase":1}],"edges":[]}"#;
        assert_eq!(Diagram::parse(doc), Err(DiagramError::DuplicateNodeId(0)));
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(matches!(
            Diagram::parse("{not json"),
            Err(DiagramError::Json(_))
        ));
        assert_eq!(
            Diagram::parse(r#"{"version":7,"nodes":[],"edges":[]}"#),
            Err(DiagramError::BadVersion)
        );
    }

    #[test]
    fn dangling_edge_rejected() {
        let doc = r#"{"version":1,"nodes":[{"id":0,"kind":"Z","phase":0}],"edges":[[0,7]]}"#;
        assert!(matches!(
            Diagram::parse(doc),
            Err(DiagramError::DanglingEdge { endpoint: 7, .. })
        ));
    }

    #[test]
    fn noncontiguous_boundaries_rejected() {
        let doc = r#"{"version":1,"nodes":[{"id":0,"kind":"Z","phase":0},{"id":1,"kind":"out","index":1}],"edges":[[0,1]]}"#;
        assert!(matches!(
            Diagram::parse(doc),
            Err(DiagramError::BadBoundaryIndices { .. })
        ));
    }

    #[test]
    fn serialization_is_canonical() {
        // Same structure entered in a different order serializes identically.
        let doc =
            r#"{"edges":[[1,0]],"nodes":[{"id":1,"kind":"out","index":0},{"id":0,"kind":"Z","phase":0}],"version":1}"#;
        let d = Diagram::parse(doc).unwrap();
        assert_eq!(d.serialize(), plus_json());
    }

    #[test]
    fn compose_with_identity_is_identity() {
        let d = Diagram::cnot();
        let c = Diagram::compose_seq(
            &Diagram::tensor(&Diagram::wire(), &Diagram::wire()),
            &d,
        )
        .unwrap();
        assert!(c.structural_eq(&d));
        let c2 = Diagram::compose_seq(
            &d,
            &Diagram::tensor(&Diagram::wire(), &Diagram::wire()),
        )
        .unwrap();
        assert!(c2.structural_eq(&d));
    }

    #[test]
    fn compose_arity_mismatch() {
        assert!(matches!(
            Diagram::compose_seq(&Diagram::plus_state(), &Diagram::cnot()),
            Err(DiagramError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn tensor_empty_is_identity() {
        let d = Diagram::cz();
        assert!(Diagram::tensor(&Diagram::new(), &d).structural_eq(&d));
        assert!(Diagram::tensor(&d, &Diagram::new()).structural_eq(&d));
    }

    #[test]
    fn tensor_of_states_counts_outputs() {
        let t = Diagram::tensor(&Diagram::plus_state(), &Diagram::plus_state());
        assert_eq!(t.n_outputs(), 2);
        t.validate().unwrap();
    }

    #[test]
    fn bend_identity_shape() {
        let b = Diagram::wire().bend_inputs();
        assert_eq!(b.n_inputs(), 0);
        assert_eq!(b.n_outputs(), 2);
        b.validate().unwrap();
        // bending a 0-input diagram changes nothing
        let s = Diagram::plus_state();
        assert_eq!(s.bend_inputs(), s);
    }

    #[test]
    fn structural_eq_respects_phases() {
        let a = Diagram::z_phase_gate(Phase::QUARTER);
        let b = Diagram::z_phase_gate(Phase::HALF);
        assert!(!a.structural_eq(&b));
        assert!(a.structural_eq(&a.canonicalized()));
    }

    #[test]
    fn dot_output_is_deterministic() {
        let a = Diagram::cz().export_dot();
        let b = Diagram::cz().export_dot();
        assert_eq!(a, b);
        assert!(a.starts_with("digraph zx {"));
        assert!(a.contains("fillcolor=green"));
        assert!(a.contains("fillcolor=red"));
    }

    #[test]
    fn closed_loop_compose() {
        // cap ∘ cup is a scalar diagram: no nodes survive.
        let cup = Diagram::wire().bend_inputs(); // 0 → 2
        let mut cap = Diagram::new(); // 2 → 0
        let i0 = cap.add_node(NodeKind::In(0));
        let i1 = cap.add_node(NodeKind::In(1));
        cap.add_edge(i0, i1);
        let scalar = Diagram::compose_seq(&cup, &cap).unwrap();
        assert_eq!(scalar.n_inputs(), 0);
        assert_eq!(scalar.n_outputs(), 0);
        scalar.validate().unwrap();
    }
}
