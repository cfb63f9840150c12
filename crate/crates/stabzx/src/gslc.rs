//! Graph states with local Clifford vertex operators (GS-LC form).
//!
//! A state is a simple graph plus one [`C1`] per vertex, or the
//! distinguished zero state. The three equivalence transformations
//! (local complementation about a vertex, the fixpoint operation, and
//! local complementation along an edge) rewrite a GS-LC state into an
//! equal one; their vertex-operator updates are right-compositions
//! under the fixed "outer after inner" convention, with signs pinned by
//! the oracle-checked semantic-preservation tests.

use std::fmt::Write as _;

use thiserror::Error;

use crate::clifford::{compose, C1, PauliLetter};
use crate::diagram::{Diagram, NodeKind};
use crate::phase::Phase;

/// A simple undirected graph on `n` vertices as a symmetric bit matrix
/// with zero diagonal. Rows are u64-packed so local complementation is
/// a masked row XOR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.set_edge(a, b, true);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.row(a)[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn set_edge(&mut self, a: usize, b: usize, on: bool) {
        assert!(a != b, "no self-loops in a simple graph");
        assert!(a < self.n && b < self.n);
        for (x, y) in [(a, b), (b, a)] {
            let w = &mut self.rows[x * self.words + y / 64];
            if on {
                *w |= 1 << (y % 64);
            } else {
                *w &= !(1 << (y % 64));
            }
        }
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        self.set_edge(a, b, !self.has_edge(a, b));
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(v, u)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// G ⋆ v: toggles every edge among the neighbours of `v`.
    pub fn local_complement(&mut self, v: usize) {
        let vrow = self.row(v).to_vec();
        let nbrs = self.neighbors(v);
        for &u in &nbrs {
            for (w, &bits) in vrow.iter().enumerate() {
                self.rows[u * self.words + w] ^= bits;
            }
            // the XOR set the diagonal bit of u (u is a neighbour of v)
            self.rows[u * self.words + u / 64] &= !(1 << (u % 64));
        }
    }

    /// Appends an isolated vertex, returning its index.
    pub fn add_vertex(&mut self) -> usize {
        let mut g = Graph::new(self.n + 1);
        for (a, b) in self.edges() {
            g.set_edge(a, b, true);
        }
        *self = g;
        self.n - 1
    }

    /// Removes vertex `v`; higher indices shift down by one.
    pub fn remove_vertex(&mut self, v: usize) {
        let old = self.clone();
        let mut g = Graph::new(self.n - 1);
        let map = |x: usize| if x > v { x - 1 } else { x };
        for (a, b) in old.edges() {
            if a != v && b != v {
                g.set_edge(map(a), map(b), true);
            }
        }
        *self = g;
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GslcError {
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("{{{0},{1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("operand vertices must differ")]
    EqualOperands,
    #[error("malformed GS-LC JSON: {0}")]
    Json(String),
}

/// A graph state with one vertex operator per qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsLc {
    pub(crate) graph: Graph,
    pub(crate) ops: Vec<C1>,
}

/// A GS-LC state or the zero state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GslcState {
    State(GsLc),
    Zero,
}

impl GslcState {
    pub fn as_state(&self) -> Option<&GsLc> {
        match self {
            GslcState::State(s) => Some(s),
            GslcState::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GslcState::Zero)
    }

    /// Canonical JSON: `{"n":..,"edges":[[u,v],..],"ops":[..]}` with
    /// edges sorted and u < v, or `{"zero":true}`.
    pub fn to_json(&self) -> String {
        match self {
            GslcState::Zero => "{\"zero\":true}".to_string(),
            GslcState::State(s) => {
                let mut out = String::new();
                write!(out, "{{\"n\":{},\"edges\":[", s.n()).unwrap();
                for (i, (a, b)) in s.graph.edges().into_iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write!(out, "[{a},{b}]").unwrap();
                }
                out.push_str("],\"ops\":[");
                for (i, op) in s.ops.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write!(out, "\"{}\"", op.name()).unwrap();
                }
                out.push_str("]}");
                out
            }
        }
    }

    pub fn from_json(text: &str) -> Result<GslcState, GslcError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| GslcError::Json(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| GslcError::Json("top level must be an object".into()))?;
        if obj.get("zero").and_then(|z| z.as_bool()) == Some(true) {
            return Ok(GslcState::Zero);
        }
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| GslcError::Json("missing qubit count".into()))? as usize;
        let mut graph = Graph::new(n);
        for e in obj
            .get("edges")
            .and_then(|x| x.as_array())
            .ok_or_else(|| GslcError::Json("missing edges".into()))?
        {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| GslcError::Json("edge must be a pair".into()))?;
            let a = pair[0].as_u64().ok_or_else(|| GslcError::Json("bad edge".into()))? as usize;
            let b = pair[1].as_u64().ok_or_else(|| GslcError::Json("bad edge".into()))? as usize;
            if a >= n || b >= n || a == b {
                return Err(GslcError::Json(format!("bad edge [{a},{b}]")));
            }
            graph.set_edge(a, b, true);
        }
        let ops_val = obj
            .get("ops")
            .and_then(|x| x.as_array())
            .ok_or_else(|| GslcError::Json("missing ops".into()))?;
        if ops_val.len() != n {
            return Err(GslcError::Json("ops length must equal n".into()));
        }
        let mut ops = Vec::with_capacity(n);
        for o in ops_val {
            let name = o
                .as_str()
                .ok_or_else(|| GslcError::Json("op must be a string".into()))?;
            ops.push(C1::from_name(name).map_err(GslcError::Json)?);
        }
        Ok(GslcState::State(GsLc { graph, ops }))
    }
}

impl GsLc {
    /// The graph state of `graph` with identity vertex operators.
    pub fn graph_state(graph: Graph) -> GsLc {
        let n = graph.n();
        GsLc {
            graph,
            ops: vec![C1::identity(); n],
        }
    }

    pub fn new(graph: Graph, ops: Vec<C1>) -> GsLc {
        assert_eq!(graph.n(), ops.len());
        GsLc { graph, ops }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_mut(&mut self) -> &mut Graph {
        &mut self.graph
    }

    pub fn ops(&self) -> &[C1] {
        &self.ops
    }

    pub fn ops_mut(&mut self) -> &mut [C1] {
        &mut self.ops
    }

    /// Right-composes `u` under the vertex operator of `q`, i.e. on the
    /// graph side.
    pub(crate) fn compose_under(&mut self, q: usize, u: C1) {
        self.ops[q] = compose(self.ops[q], u);
    }

    /// Local complementation about `v`: the graph becomes G⋆v, `v`
    /// gains X(−π/2) and each neighbour gains Z(π/2) on the graph side.
    pub fn local_complement(&mut self, v: usize) -> Result<(), GslcError> {
        if v >= self.n() {
            return Err(GslcError::IndexOutOfRange(v));
        }
        let nbrs = self.graph.neighbors(v);
        self.graph.local_complement(v);
        self.compose_under(v, C1::x_rot(Phase::THREE_QUARTER));
        for u in nbrs {
            self.compose_under(u, C1::z_rot(Phase::QUARTER));
        }
        Ok(())
    }

    /// The fixpoint operation at `v`: graph unchanged, `v` gains X(π)
    /// and each neighbour gains Z(π).
    pub fn fixpoint(&mut self, v: usize) -> Result<(), GslcError> {
        if v >= self.n() {
            return Err(GslcError::IndexOutOfRange(v));
        }
        self.compose_under(v, C1::x_rot(Phase::HALF));
        for u in self.graph.neighbors(v) {
            self.compose_under(u, C1::z_rot(Phase::HALF));
        }
        Ok(())
    }

    /// Local complementation along the edge {v,w}: the graph becomes
    /// ((G⋆v)⋆w)⋆v, the operands gain Z(π/2)·X(−π/2)·Z(π/2) and every
    /// other neighbour of `v` or `w` gains Z(π).
    pub fn edge_local_complement(&mut self, v: usize, w: usize) -> Result<(), GslcError> {
        if v == w {
            return Err(GslcError::EqualOperands);
        }
        if v >= self.n() || w >= self.n() {
            return Err(GslcError::IndexOutOfRange(v.max(w)));
        }
        if !self.graph.has_edge(v, w) {
            return Err(GslcError::NotAnEdge(v, w));
        }
        let affected: Vec<usize> = (0..self.n())
            .filter(|&j| j != v && j != w && (self.graph.has_edge(j, v) || self.graph.has_edge(j, w)))
            .collect();
        self.graph.local_complement(v);
        self.graph.local_complement(w);
        self.graph.local_complement(v);
        let t = compose(
            C1::z_rot(Phase::QUARTER),
            compose(C1::x_rot(Phase::THREE_QUARTER), C1::z_rot(Phase::QUARTER)),
        );
        self.compose_under(v, t);
        self.compose_under(w, t);
        for j in affected {
            self.compose_under(j, C1::z_rot(Phase::HALF));
        }
        Ok(())
    }

    /// Renders the state as a diagram: a green node with one output per
    /// vertex, an H box per edge, and the vertex operators as phase
    /// spiders on the output wires (rightmost rotation nearest the
    /// graph).
    pub fn to_diagram(&self) -> Diagram {
        let mut d = Diagram::new();
        let spiders: Vec<_> = (0..self.n())
            .map(|_| d.add_node(NodeKind::Z(Phase::ZERO)))
            .collect();
        for (a, b) in self.graph.edges() {
            let h = d.add_node(NodeKind::H);
            d.add_edge(spiders[a], h);
            d.add_edge(h, spiders[b]);
        }
        for (q, &spider) in spiders.iter().enumerate() {
            let mut below = spider;
            let word = self.ops[q].normal_word();
            for &(axis, p) in word.iter().rev() {
                let node = match axis {
                    crate::clifford::Axis::Z => d.add_node(NodeKind::Z(p)),
                    crate::clifford::Axis::X => d.add_node(NodeKind::X(p)),
                };
                d.add_edge(below, node);
                below = node;
            }
            let out = d.add_node(NodeKind::Out(q));
            d.add_edge(below, out);
        }
        d
    }

    pub(crate) fn add_isolated_vertex(&mut self, op: C1) -> usize {
        let v = self.graph.add_vertex();
        self.ops.push(op);
        v
    }

    pub(crate) fn remove_vertex(&mut self, v: usize) {
        self.graph.remove_vertex(v);
        self.ops.remove(v);
    }

    /// Moves the vertex at `from` to position `to`, shifting the ones
    /// in between. Pure index bookkeeping.
    pub(crate) fn move_vertex(&mut self, from: usize, to: usize) {
        if from == to {
            return;
        }
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        let v = order.remove(from);
        order.insert(to, v);
        // order[i] = old index of the vertex now at position i
        let mut graph = Graph::new(n);
        for a in 0..n {
            for b in (a + 1)..n {
                if self.graph.has_edge(order[a], order[b]) {
                    graph.set_edge(a, b, true);
                }
            }
        }
        let ops = order.iter().map(|&o| self.ops[o]).collect();
        self.graph = graph;
        self.ops = ops;
    }
}

/// True iff every vertex operator lies in the six-element set R and no
/// edge joins two red-topped operators.
pub fn is_reduced(s: &GsLc) -> bool {
    use crate::clifford::RClass;
    if s.ops.iter().any(|op| op.r_class() == RClass::NotInR) {
        return false;
    }
    s.graph.edges().iter().all(|&(a, b)| {
        !(s.ops[a].r_class() == RClass::RedTopped && s.ops[b].r_class() == RClass::RedTopped)
    })
}

/// A GS-LC state known to satisfy the reduced-form constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RGsLc {
    inner: GsLc,
}

impl RGsLc {
    pub fn new(inner: GsLc) -> Result<RGsLc, GsLc> {
        if is_reduced(&inner) {
            Ok(RGsLc { inner })
        } else {
            Err(inner)
        }
    }

    pub fn as_gslc(&self) -> &GsLc {
        &self.inner
    }

    pub fn into_gslc(self) -> GsLc {
        self.inner
    }
}

/// A reduced GS-LC state or the zero state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RGslcState {
    State(RGsLc),
    Zero,
}

impl RGslcState {
    pub fn to_gslc_state(&self) -> GslcState {
        match self {
            RGslcState::State(r) => GslcState::State(r.as_gslc().clone()),
            RGslcState::Zero => GslcState::Zero,
        }
    }
}

/// The designated zero diagram: a single scalar green π node.
pub fn zero_diagram() -> Diagram {
    let mut d = Diagram::new();
    d.add_node(NodeKind::Z(Phase::HALF));
    d
}

/// Renders either a GS-LC diagram or the zero diagram.
pub fn state_to_diagram(s: &GslcState) -> Diagram {
    match s {
        GslcState::State(g) => g.to_diagram(),
        GslcState::Zero => zero_diagram(),
    }
}

/// A signed Pauli product, used to express stabilizer generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliProduct {
    pub negative: bool,
    pub letters: Vec<PauliLetter>,
}

impl PauliProduct {
    /// True iff the products commute: the number of positions with
    /// distinct non-identity letters is even.
    pub fn commutes_with(&self, other: &PauliProduct) -> bool {
        let anti = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| **a != PauliLetter::I && **b != PauliLetter::I && a != b)
            .count();
        anti % 2 == 0
    }
}

/// The generator X_v ⊗ Z^{θ_uv} for each vertex v.
pub fn stabilizer_generators(g: &Graph) -> Vec<PauliProduct> {
    (0..g.n())
        .map(|v| {
            let letters = (0..g.n())
                .map(|u| {
                    if u == v {
                        PauliLetter::X
                    } else if g.has_edge(u, v) {
                        PauliLetter::Z
                    } else {
                        PauliLetter::I
                    }
                })
                .collect();
            PauliProduct {
                negative: false,
                letters,
            }
        })
        .collect()
}
