//! Normalization of state diagrams into (reduced) GS-LC form.
//!
//! Any 0-input diagram decomposes into a sequence of primitive steps:
//! fresh |+⟩ qubits, single-qubit Cliffords, ⟨+| effects, and the
//! 1→2 / 2→1 phase-free green spiders. Folding those steps through a
//! GS-LC state yields the normal form; a second pass reduces every
//! vertex operator into the six-element set R and separates adjacent
//! red-topped vertices.
//!
//! Vertex-operator steering (needed by effects, splits and joins) walks
//! the 24-element Clifford group with the two moves available in a
//! graph state — a local complementation at the operand composes
//! X(−π/2) under its operator, one at a neighbour composes Z(π/2) — via
//! a shortest-word search.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::clifford::{compose, C1, PauliLetter, PlusStateClass, RClass, SignedPauli};
use crate::diagram::{Diagram, NodeId, NodeKind};
use crate::gslc::{Graph, GsLc, GslcState, RGsLc, RGslcState};
use crate::phase::Phase;

/// One primitive step over a live list of qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitive {
    /// Append a fresh |+⟩ qubit at the end of the live list.
    NewQubit,
    /// Apply a single-qubit Clifford to qubit `q`.
    ApplyClifford(usize, C1),
    /// Apply ⟨+| to qubit `q`, removing it from the live list.
    PlusEffect(usize),
    /// Apply the 1→2 phase-free green spider to qubit `q`; the first
    /// output stays at `q`, the second is appended at the end.
    Split(usize),
    /// Apply the 2→1 phase-free green spider to qubits `a` and `b`; the
    /// result sits at `min(a,b)` and the other slot disappears.
    Join(usize, usize),
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::NewQubit => write!(f, "NEW"),
            Primitive::ApplyClifford(q, u) => write!(f, "CLIFF {q} {}", u.name()),
            Primitive::PlusEffect(q) => write!(f, "EFF {q}"),
            Primitive::Split(q) => write!(f, "SPLIT {q}"),
            Primitive::Join(a, b) => write!(f, "JOIN {a} {b}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("diagram has {0} inputs; only states can be decomposed")]
    HasInputs(usize),
}

// ---------------------------------------------------------------------
// Decomposition of a diagram into primitives
// ---------------------------------------------------------------------

#[derive(Clone, Copy)]
struct WEdge {
    a: NodeId,
    b: NodeId,
    h: bool,
}

/// Internal working form: green spiders and outputs only, with
/// Hadamards pushed onto edge flags.
struct Working {
    /// spider id → phase, after colour conversion and loop absorption
    phases: HashMap<NodeId, Phase>,
    /// processing order: original ids ascending, synthesized ids after
    order: Vec<NodeId>,
    out_index: HashMap<NodeId, usize>,
    edges: Vec<WEdge>,
}

fn build_working(d: &Diagram) -> Working {
    let mut phases: HashMap<NodeId, Phase> = HashMap::new();
    let mut out_index = HashMap::new();
    let mut hboxes: Vec<NodeId> = Vec::new();
    let mut xspiders: Vec<NodeId> = Vec::new();
    let mut next_id = 0;
    for (id, kind) in d.nodes() {
        next_id = next_id.max(id + 1);
        match kind {
            NodeKind::Z(p) => {
                phases.insert(id, p);
            }
            NodeKind::X(p) => {
                phases.insert(id, p);
                xspiders.push(id);
            }
            NodeKind::H => hboxes.push(id),
            NodeKind::Out(i) => {
                out_index.insert(id, i);
            }
            NodeKind::In(_) => unreachable!("checked by decompose"),
        }
    }
    let mut edges: Vec<Option<WEdge>> = d
        .edges()
        .iter()
        .map(|&(a, b)| Some(WEdge { a, b, h: false }))
        .collect();

    // Convert X spiders: each endpoint at an X spider toggles the flag
    // (a colour change puts an H on every leg).
    for e in edges.iter_mut().flatten() {
        let ta = xspiders.contains(&e.a);
        let tb = xspiders.contains(&e.b);
        if ta != tb {
            e.h = !e.h;
        }
    }

    // Eliminate H boxes, collapsing them into edge flags.
    for h in hboxes {
        let slots: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_some_and(|e| e.a == h || e.b == h))
            .map(|(i, _)| i)
            .collect();
        let loop_slot = slots
            .iter()
            .copied()
            .find(|&i| edges[i].is_some_and(|e| e.a == h && e.b == h));
        if let Some(i) = loop_slot {
            // A closed loop through this H box: trace(H·H^f).
            let flagged = edges[i].unwrap().h;
            edges[i] = None;
            if !flagged {
                // trace(H) = 0: synthesize a zero marker, a green spider
                // with a flagged self-loop (phase flip on no legs).
                let v = next_id;
                next_id += 1;
                phases.insert(v, Phase::ZERO);
                edges.push(Some(WEdge { a: v, b: v, h: true }));
            }
            continue;
        }
        assert_eq!(slots.len(), 2, "H boxes have exactly two legs");
        let (i1, i2) = (slots[0], slots[1]);
        let e1 = edges[i1].unwrap();
        let e2 = edges[i2].unwrap();
        let x = if e1.a == h { e1.b } else { e1.a };
        let y = if e2.a == h { e2.b } else { e2.a };
        let flag = e1.h ^ e2.h ^ true;
        edges[i1] = None;
        edges[i2] = None;
        edges.push(Some(WEdge { a: x, b: y, h: flag }));
    }

    // Absorb self-loops on spiders: a flagged loop flips the phase by π,
    // a plain loop is an exact factor of one.
    let mut final_edges = Vec::new();
    for e in edges.into_iter().flatten() {
        if e.a == e.b {
            if e.h {
                let p = phases.get_mut(&e.a).expect("loops occur on spiders");
                *p += Phase::HALF;
            }
        } else {
            final_edges.push(e);
        }
    }

    let mut order: Vec<NodeId> = phases.keys().copied().collect();
    order.sort();
    Working {
        phases,
        order,
        out_index,
        edges: final_edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WireTag {
    Edge(usize),
    Output(usize),
    Teleport,
}

/// Decomposes a 0-input diagram into the primitive sequence whose
/// replay prepares the same state up to a nonzero scalar (or the zero
/// state exactly when the diagram denotes zero). Deterministic: spiders
/// are visited in ascending node id.
pub fn decompose(d: &Diagram) -> Result<Vec<Primitive>, NormalizeError> {
    if d.n_inputs() > 0 {
        return Err(NormalizeError::HasInputs(d.n_inputs()));
    }
    let w = build_working(d);
    let mut prims = Vec::new();
    let mut wires: Vec<WireTag> = Vec::new();
    let pos_of = |wires: &[WireTag], tag: WireTag| -> usize {
        wires
            .iter()
            .position(|&t| t == tag)
            .expect("wire bookkeeping out of sync")
    };

    let is_spider = |id: NodeId| w.phases.contains_key(&id);
    let mut processed: Vec<NodeId> = Vec::new();
    for &v in &w.order {
        let mut existing = Vec::new();
        let mut future = Vec::new();
        for (ei, e) in w.edges.iter().enumerate() {
            let other = if e.a == v {
                e.b
            } else if e.b == v {
                e.a
            } else {
                continue;
            };
            if is_spider(other) && processed.contains(&other) {
                existing.push(ei);
            } else {
                future.push(ei);
            }
        }
        // gather the hub wire
        let mut hub = if existing.is_empty() {
            prims.push(Primitive::NewQubit);
            wires.push(WireTag::Teleport);
            wires.len() - 1
        } else {
            pos_of(&wires, WireTag::Edge(existing[0]))
        };
        for &ei in existing.iter().skip(1) {
            let other = pos_of(&wires, WireTag::Edge(ei));
            prims.push(Primitive::Join(hub, other));
            let gone = hub.max(other);
            hub = hub.min(other);
            wires.remove(gone);
        }
        let phase = w.phases[&v];
        if !phase.is_zero() {
            prims.push(Primitive::ApplyClifford(hub, C1::z_rot(phase)));
        }
        if future.is_empty() {
            prims.push(Primitive::PlusEffect(hub));
            wires.remove(hub);
        } else {
            let tag_for = |ei: usize| {
                let e = &w.edges[ei];
                let other = if e.a == v { e.b } else { e.a };
                match w.out_index.get(&other) {
                    Some(&i) => WireTag::Output(i),
                    None => WireTag::Edge(ei),
                }
            };
            wires[hub] = tag_for(future[0]);
            for &ei in &future[1..] {
                prims.push(Primitive::Split(hub));
                wires.push(tag_for(ei));
            }
            // a flagged leg carries a Hadamard on its fresh wire
            for &ei in &future {
                if w.edges[ei].h {
                    let p = pos_of(&wires, tag_for(ei));
                    prims.push(Primitive::ApplyClifford(p, C1::hadamard()));
                }
            }
        }
        processed.push(v);
    }

    // direct output–output edges are bare cups
    for e in &w.edges {
        let (Some(&ia), Some(&ib)) = (w.out_index.get(&e.a), w.out_index.get(&e.b)) else {
            continue;
        };
        prims.push(Primitive::NewQubit);
        wires.push(WireTag::Output(ia));
        let p1 = wires.len() - 1;
        prims.push(Primitive::Split(p1));
        wires.push(WireTag::Output(ib));
        if e.h {
            prims.push(Primitive::ApplyClifford(p1, C1::hadamard()));
        }
    }

    // Re-order the live list into boundary order by teleporting wires to
    // the back through fresh cups (a cap against one half of a cup
    // routes the state to the other half).
    let m = wires.len();
    debug_assert_eq!(m, d.n_outputs());
    for i in 0..m {
        let sorted = wires
            .iter()
            .enumerate()
            .all(|(p, &t)| t == WireTag::Output(p));
        if sorted {
            break;
        }
        let wpos = pos_of(&wires, WireTag::Output(i));
        let tag = wires[wpos];
        prims.push(Primitive::NewQubit);
        wires.push(WireTag::Teleport);
        let a = wires.len() - 1;
        prims.push(Primitive::Split(a));
        wires.push(WireTag::Teleport);
        prims.push(Primitive::Join(wpos, a));
        wires.remove(a);
        prims.push(Primitive::PlusEffect(wpos));
        wires.remove(wpos);
        *wires.last_mut().unwrap() = tag;
    }
    debug_assert!(wires
        .iter()
        .enumerate()
        .all(|(p, &t)| t == WireTag::Output(p)));
    Ok(prims)
}

// ---------------------------------------------------------------------
// The fold: applying primitives to a GS-LC state
// ---------------------------------------------------------------------

/// Adds a fresh isolated |+⟩ vertex.
pub fn apply_new_qubit(mut s: GsLc) -> GsLc {
    s.add_isolated_vertex(C1::identity());
    s
}

/// Composes `u` on the wire side of qubit `q`'s vertex operator.
pub fn apply_clifford(mut s: GsLc, q: usize, u: C1) -> GsLc {
    s.ops_mut()[q] = compose(u, s.ops()[q]);
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SteerMove {
    AtOperand,
    AtPartner,
}

/// Shortest word over the two steering moves taking `start` into the
/// goal set. The moves together generate all of C₁, so the search
/// always succeeds within the 24-element group.
fn steer_word(start: C1, goal: impl Fn(&C1) -> bool) -> Vec<SteerMove> {
    let lq = C1::x_rot(Phase::THREE_QUARTER);
    let lp = C1::z_rot(Phase::QUARTER);
    let mut queue = std::collections::VecDeque::new();
    let mut seen: HashMap<C1, (C1, SteerMove)> = HashMap::new();
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        if goal(&u) {
            let mut word = Vec::new();
            let mut cur = u;
            while cur != start {
                let (prev, mv) = seen[&cur];
                word.push(mv);
                cur = prev;
            }
            word.reverse();
            return word;
        }
        for (mv, gen) in [(SteerMove::AtOperand, lq), (SteerMove::AtPartner, lp)] {
            let v = compose(u, gen);
            if v != start && !seen.contains_key(&v) {
                seen.insert(v, (u, mv));
                queue.push_back(v);
            }
        }
    }
    unreachable!("the steering moves generate C1, every goal set is reachable")
}

/// Steers the vertex operator of `q` into the goal set by local
/// complementations about `q` and its swapping partner: the
/// lowest-index neighbour, skipping `exclude`.
fn steer(s: &mut GsLc, q: usize, exclude: Option<usize>, goal: impl Fn(&C1) -> bool) {
    let partner = s
        .graph()
        .neighbors(q)
        .into_iter()
        .find(|&u| Some(u) != exclude)
        .expect("steering requires a usable neighbour");
    let word = steer_word(s.ops()[q], &goal);
    for mv in word {
        match mv {
            SteerMove::AtOperand => s.local_complement(q).unwrap(),
            SteerMove::AtPartner => s.local_complement(partner).unwrap(),
        }
        // the operand–partner edge survives both kinds of move
        debug_assert!(s.graph().has_edge(q, partner));
    }
    debug_assert!(goal(&s.ops()[q]));
}

fn is_green(u: &C1) -> bool {
    u.r_class() == RClass::GreenOnly
}

/// Applies ⟨+| to qubit `q`. Zero exactly when the effect annihilates
/// the state.
pub fn apply_plus_effect(mut s: GsLc, q: usize) -> GslcState {
    let minus_x = SignedPauli::new(PauliLetter::X, true);
    if s.graph().degree(q) == 0 {
        // ⟨+|U|+⟩ = 0 iff U|+⟩ ∝ |−⟩ iff U X U† = −X
        if s.ops()[q].image_x() == minus_x {
            return GslcState::Zero;
        }
        s.remove_vertex(q);
        return GslcState::State(s);
    }
    // steer until ⟨+|∘op_q is a Z-basis effect: op_q Z op_q† = ±X
    steer(&mut s, q, None, |u| u.image_z().letter == PauliLetter::X);
    let one_outcome = s.ops()[q].image_z().negative;
    if one_outcome {
        // a ⟨1| measurement leaves a Z on every neighbour
        for u in s.graph().neighbors(q) {
            let op = compose(s.ops()[u], C1::z_rot(Phase::HALF));
            s.ops_mut()[u] = op;
        }
    }
    s.remove_vertex(q);
    GslcState::State(s)
}

/// Applies the 1→2 green spider to qubit `q`: the first output stays at
/// `q`, the second is appended.
pub fn apply_split(mut s: GsLc, q: usize) -> GsLc {
    if s.graph().degree(q) == 0 {
        match s.ops()[q].plus_state_class() {
            PlusStateClass::Green(phase) => {
                s.ops_mut()[q] = C1::z_rot(phase);
                let w = s.add_isolated_vertex(C1::hadamard());
                s.graph_mut().set_edge(q, w, true);
            }
            PlusStateClass::KetZero => {
                // |0⟩ copies into two disconnected |0⟩ vertices
                s.ops_mut()[q] = C1::hadamard();
                s.add_isolated_vertex(C1::hadamard());
            }
            PlusStateClass::KetOne => {
                let one = compose(C1::hadamard(), C1::z_rot(Phase::HALF));
                s.ops_mut()[q] = one;
                s.add_isolated_vertex(one);
            }
        }
        return s;
    }
    steer(&mut s, q, None, is_green);
    // under a green operator, splitting is a fresh vertex joined by one
    // edge carrying an H on its wire
    let w = s.add_isolated_vertex(C1::hadamard());
    s.graph_mut().set_edge(q, w, true);
    s
}

/// Lookup tables for the closed join cases, derived from the exact
/// matrices once and re-checked on construction.
struct JoinTables {
    /// For M = op_a ∘ H ∘ op_bᵀ on a cup pair: the green phase of the
    /// resulting state, or None when it vanishes.
    cup: Vec<Option<Phase>>,
    /// For a pendant operand with operator V: the phase θ with
    /// diag(⟨0|V|+⟩, ⟨1|V|−⟩) ∝ Z(θ), or None when both entries vanish.
    pendant: Vec<Option<Phase>>,
}

fn join_tables() -> &'static JoinTables {
    static TABLES: OnceLock<JoinTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        use crate::semantics::RingElem;
        let phase_ratio = |t0: &RingElem, t1: &RingElem| -> Option<Phase> {
            if t0.is_zero() && t1.is_zero() {
                return None;
            }
            assert!(
                !t0.is_zero() && !t1.is_zero(),
                "join outcomes vanish together or not at all"
            );
            let theta = Phase::all()
                .into_iter()
                .find(|&p| &(&RingElem::from_phase(p) * t0) == t1)
                .expect("join outcome ratio is a power of i");
            Some(theta)
        };
        let cup = C1::all()
            .iter()
            .map(|m| {
                let mat = m.to_matrix();
                phase_ratio(mat.entry(0, 0), mat.entry(1, 1))
            })
            .collect();
        let pendant = C1::all()
            .iter()
            .map(|v| {
                let mat = v.to_matrix();
                // ⟨0|V|+⟩ and ⟨1|V|−⟩
                let t0 = mat.entry(0, 0) + mat.entry(0, 1);
                let t1 = &mat.entry(1, 0).clone() - mat.entry(1, 1);
                // both vanish exactly when V|+⟩ ∝ |1⟩, i.e. V X V† = −Z
                let minus_z = SignedPauli::new(PauliLetter::Z, true);
                let out = phase_ratio(&t0, &t1);
                assert_eq!(out.is_none(), v.image_x() == minus_z);
                out
            })
            .collect();
        JoinTables { cup, pendant }
    })
}

/// After removing original index `removed` from `0..n`, moves the
/// surviving operand (originally at `survivor`) to slot
/// `min(survivor, removed)`, matching the join position convention.
fn fix_join_position(s: &mut GsLc, survivor: usize, removed: usize) {
    let cur = if survivor > removed {
        survivor - 1
    } else {
        survivor
    };
    let target = survivor.min(removed);
    s.move_vertex(cur, target);
}

/// Applies the 2→1 green spider to qubits `a` and `b`; the result sits
/// at `min(a,b)`. Zero exactly when the contraction annihilates the
/// state.
pub fn apply_join(mut s: GsLc, a: usize, b: usize) -> GslcState {
    assert_ne!(a, b, "join operands must differ");
    for _ in 0..8 {
        let nbrs_a: Vec<usize> = s.graph().neighbors(a);
        let nbrs_b: Vec<usize> = s.graph().neighbors(b);
        // one operand isolated: the join degenerates to a phase or a
        // postselection on the other operand
        if nbrs_b.is_empty() {
            return join_with_isolated(s, a, b);
        }
        if nbrs_a.is_empty() {
            return join_with_isolated(s, b, a);
        }
        // connected only to each other: a closed cup pair
        if nbrs_a == [b] && nbrs_b == [a] {
            return join_cup_pair(s, a, b);
        }
        // pendant cases: one operand hangs off the other
        if nbrs_b == [a] {
            steer(&mut s, a, Some(b), is_green);
            if s.graph().neighbors(b) == [a] {
                return join_pendant(s, a, b);
            }
            continue;
        }
        if nbrs_a == [b] {
            steer(&mut s, b, Some(a), is_green);
            if s.graph().neighbors(a) == [b] {
                return join_pendant(s, b, a);
            }
            continue;
        }
        // both operands have non-operand neighbours
        steer(&mut s, a, Some(b), is_green);
        let has_other = |s: &GsLc, x: usize, y: usize| {
            s.graph().neighbors(x).iter().any(|&u| u != y)
        };
        if !has_other(&s, a, b) || !has_other(&s, b, a) {
            continue;
        }
        steer(&mut s, b, Some(a), is_green);
        if !is_green(&s.ops()[a]) || !has_other(&s, a, b) || !has_other(&s, b, a) {
            continue;
        }
        return join_merge(s, a, b);
    }
    unreachable!("join case dispatch settles once both operators are green")
}

/// Join with `b` isolated: plugging the state of `b` into the spider.
fn join_with_isolated(mut s: GsLc, a: usize, b: usize) -> GslcState {
    match s.ops()[b].plus_state_class() {
        PlusStateClass::Green(beta) => {
            // joining against Z(β)|+⟩ is the phase gate Z(β) on the other wire
            s.ops_mut()[a] = compose(C1::z_rot(beta), s.ops()[a]);
            s.remove_vertex(b);
            fix_join_position(&mut s, a, b);
            GslcState::State(s)
        }
        class @ (PlusStateClass::KetZero | PlusStateClass::KetOne) => {
            // joining against |z⟩ projects the other wire: |z⟩⟨z|
            let (effect, fresh) = match class {
                PlusStateClass::KetZero => (C1::hadamard(), C1::hadamard()),
                _ => (
                    compose(C1::z_rot(Phase::HALF), C1::hadamard()),
                    compose(C1::hadamard(), C1::z_rot(Phase::HALF)),
                ),
            };
            s.ops_mut()[a] = compose(effect, s.ops()[a]);
            match apply_plus_effect(s, a) {
                GslcState::Zero => GslcState::Zero,
                GslcState::State(mut s2) => {
                    // reuse b's vertex as the fresh |z⟩ carrier
                    let b2 = if b > a { b - 1 } else { b };
                    debug_assert_eq!(s2.graph().degree(b2), 0);
                    s2.ops_mut()[b2] = fresh;
                    s2.move_vertex(b2, a.min(b));
                    GslcState::State(s2)
                }
            }
        }
    }
}

/// Join of a pair connected only to each other.
fn join_cup_pair(mut s: GsLc, a: usize, b: usize) -> GslcState {
    let m = compose(compose(s.ops()[a], C1::hadamard()), s.ops()[b].transpose());
    match join_tables().cup[m.index()] {
        None => GslcState::Zero,
        Some(theta) => {
            let keep = a.min(b);
            let gone = a.max(b);
            s.remove_vertex(gone);
            s.ops_mut()[keep] = C1::z_rot(theta);
            debug_assert_eq!(s.graph().degree(keep), 0);
            GslcState::State(s)
        }
    }
}

/// Join where `b` hangs off `a` only, `a` has other neighbours, and
/// `op_a` is already green.
fn join_pendant(mut s: GsLc, a: usize, b: usize) -> GslcState {
    debug_assert!(is_green(&s.ops()[a]));
    match join_tables().pendant[s.ops()[b].index()] {
        None => GslcState::Zero,
        Some(theta) => {
            s.ops_mut()[a] = compose(C1::z_rot(theta), s.ops()[a]);
            s.remove_vertex(b);
            fix_join_position(&mut s, a, b);
            GslcState::State(s)
        }
    }
}

/// Join of two green-operator vertices that both keep non-operand
/// neighbours: merge them, cancelling doubled edges, with an extra π
/// when the operands were adjacent.
fn join_merge(mut s: GsLc, a: usize, b: usize) -> GslcState {
    let pa = s.ops()[a].green_phase().expect("operand a steered green");
    let pb = s.ops()[b].green_phase().expect("operand b steered green");
    let mut phi = pa + pb;
    if s.graph().has_edge(a, b) {
        phi += Phase::HALF;
    }
    let keep = a.min(b);
    let gone = a.max(b);
    let sym: Vec<usize> = (0..s.n())
        .filter(|&u| u != a && u != b && (s.graph().has_edge(u, a) ^ s.graph().has_edge(u, b)))
        .collect();
    for u in s.graph().neighbors(a) {
        s.graph_mut().set_edge(a, u, false);
    }
    for u in s.graph().neighbors(b) {
        s.graph_mut().set_edge(b, u, false);
    }
    for &u in &sym {
        s.graph_mut().set_edge(keep, u, true);
    }
    s.ops_mut()[keep] = C1::z_rot(phi);
    s.remove_vertex(gone);
    GslcState::State(s)
}

/// One step of the fold; Zero is absorbing.
pub fn apply_primitive(state: GslcState, p: &Primitive) -> GslcState {
    match state {
        GslcState::Zero => GslcState::Zero,
        GslcState::State(s) => match *p {
            Primitive::NewQubit => GslcState::State(apply_new_qubit(s)),
            Primitive::ApplyClifford(q, u) => GslcState::State(apply_clifford(s, q, u)),
            Primitive::PlusEffect(q) => apply_plus_effect(s, q),
            Primitive::Split(q) => GslcState::State(apply_split(s, q)),
            Primitive::Join(a, b) => apply_join(s, a, b),
        },
    }
}

/// Decomposes and folds: any 0-input diagram becomes a GS-LC state (or
/// Zero), equal to the diagram up to a nonzero scalar.
pub fn to_gslc(d: &Diagram) -> Result<GslcState, NormalizeError> {
    let prims = decompose(d)?;
    let mut state = GslcState::State(GsLc::graph_state(Graph::new(0)));
    for p in &prims {
        state = apply_primitive(state, p);
    }
    Ok(state)
}

/// Operation counters from [`reduce_with_stats`], for the termination
/// bounds: at most 2n local complementations to bring every operator
/// into R, at most ⌊n/2⌋ edge complementations to separate red pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReduceStats {
    pub local_comps: usize,
    pub edge_comps: usize,
}

/// Brings a GS-LC state into reduced form.
pub fn reduce(state: &GslcState) -> RGslcState {
    reduce_with_stats(state).0
}

pub fn reduce_with_stats(state: &GslcState) -> (RGslcState, ReduceStats) {
    let mut stats = ReduceStats::default();
    let s = match state {
        GslcState::Zero => return (RGslcState::Zero, stats),
        GslcState::State(s) => s,
    };
    let mut s = s.clone();
    let n = s.n();

    // Condition (i): remove the graph-side X rotation of each operator.
    // One local complementation cancels an X(π/2), a fixpoint cancels an
    // X(π); an X(−π/2) takes one of each. Every vertex is handled at
    // most twice — a red-topped operator can be pushed out of R once by
    // a neighbour's complementation and then settles on a green — so at
    // most 2n local complementations happen.
    let mut guard = 0;
    while let Some(v) = (0..n).find(|&v| s.ops()[v].r_class() == RClass::NotInR) {
        let x = s.ops()[v].graph_side_x_phase();
        match x.k() {
            1 => {
                s.local_complement(v).unwrap();
                stats.local_comps += 1;
            }
            2 => {
                s.fixpoint(v).unwrap();
            }
            3 => {
                s.local_complement(v).unwrap();
                stats.local_comps += 1;
                s.fixpoint(v).unwrap();
            }
            _ => unreachable!("an operator outside R ends in a graph-side X rotation"),
        }
        debug_assert_ne!(s.ops()[v].r_class(), RClass::NotInR);
        guard += 1;
        assert!(guard <= 2 * n, "condition (i) exceeded its 2n bound");
    }

    // Condition (ii): separate adjacent red-topped pairs. Each edge
    // complementation plus fixpoints turns both operands green, so the
    // red count drops by two per step.
    loop {
        let pair = s.graph().edges().into_iter().find(|&(u, v)| {
            s.ops()[u].r_class() == RClass::RedTopped && s.ops()[v].r_class() == RClass::RedTopped
        });
        let Some((u, v)) = pair else { break };
        s.edge_local_complement(u, v).unwrap();
        for w in [u, v] {
            if s.ops()[w].r_class() == RClass::NotInR {
                s.fixpoint(w).unwrap();
            }
            debug_assert_eq!(s.ops()[w].r_class(), RClass::GreenOnly);
        }
        stats.edge_comps += 1;
        assert!(
            stats.edge_comps <= n / 2,
            "condition (ii) exceeded its n/2 bound"
        );
    }

    let r = RGsLc::new(s).expect("reduction must produce a reduced state");
    (RGslcState::State(r), stats)
}
