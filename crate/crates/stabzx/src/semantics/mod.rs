//! Exact interpretation of diagrams — the semantics oracle.
//!
//! [`interpret`] contracts a diagram to a dense [`ExactMatrix`] over
//! the ring Z[ω], ω = e^{iπ/4}, with a global √2 divisor. Everything is
//! exact; the oracle is meant for desk-scale cross-checking (a dozen
//! qubits), not simulation.

mod ring;

pub use ring::{scalar_equal, ExactMatrix, RingElem};

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, NodeId, NodeKind};
use crate::phase::Phase;

/// Default cap on `n_inputs + n_outputs` (and on intermediate open
/// wires) during contraction.
pub const DEFAULT_MAX_QUBITS: usize = 12;

#[derive(Debug, Error)]
pub enum SemanticsError {
    #[error("oracle bound exceeded: {open} open wires, bound {bound}")]
    BoundExceeded { open: usize, bound: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SlotTag {
    /// An edge with exactly one endpoint contracted so far.
    Pending(usize),
    /// A wire ending at a boundary node.
    External(Ext),
    /// A direct boundary–boundary edge: one slot serves both ends.
    Pair(Ext, Ext),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ext {
    In(usize),
    Out(usize),
}

struct Contraction {
    slots: Vec<SlotTag>,
    vec: Vec<RingElem>,
    sqrt2_exp: i64,
    bound: usize,
}

impl Contraction {
    fn new(bound: usize) -> Contraction {
        Contraction {
            slots: Vec::new(),
            vec: vec![RingElem::one()],
            sqrt2_exp: 0,
            bound,
        }
    }

    fn check_bound(&self) -> Result<(), SemanticsError> {
        if self.slots.len() > self.bound {
            Err(SemanticsError::BoundExceeded {
                open: self.slots.len(),
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    fn bit(idx: usize, pos: usize) -> usize {
        (idx >> pos) & 1
    }

    /// Contracts one node: consumes the slots in `pending` (positions
    /// into `self.slots`) and appends `fresh` new pending slots, using
    /// the node-kind contraction formula.
    fn contract_node(
        &mut self,
        kind: NodeKind,
        pending: &[usize],
        fresh: &[usize],
        plain_self_loops: usize,
    ) -> Result<(), SemanticsError> {
        let keep: Vec<usize> = (0..self.slots.len())
            .filter(|p| !pending.contains(p))
            .collect();
        let new_len = keep.len() + fresh.len();
        let mut out = vec![RingElem::zero(); 1 << new_len];

        match kind {
            NodeKind::Z(p) | NodeKind::X(p) => {
                let is_z = matches!(kind, NodeKind::Z(_));
                if is_z {
                    // All legs equal z; z=1 carries the phase. Plain
                    // self-loops contribute a factor of one.
                    let _ = plain_self_loops;
                    for old_idx in 0..self.vec.len() {
                        if self.vec[old_idx].is_zero() {
                            continue;
                        }
                        let rest: usize = keep
                            .iter()
                            .enumerate()
                            .map(|(j, &p)| Self::bit(old_idx, p) << j)
                            .sum();
                        for z in 0..2usize {
                            if pending.iter().any(|&p| Self::bit(old_idx, p) != z) {
                                continue;
                            }
                            let mut amp = self.vec[old_idx].clone();
                            if z == 1 {
                                amp = &amp * &RingElem::from_phase(p);
                            }
                            let fresh_bits: usize = (0..fresh.len()).map(|j| z << (keep.len() + j)).sum();
                            out[rest | fresh_bits] += &amp;
                        }
                    }
                } else {
                    // X spider: entry 1 + e^{iα}(−1)^{|b|}, divisor √2^d.
                    // Self-loops cancel exactly against their own
                    // normalization, so they are skipped and not counted.
                    let d = pending.len() + fresh.len();
                    self.sqrt2_exp += d as i64;
                    let omega_p = RingElem::from_phase(p);
                    // S0[rest] = Σ old, S1[rest] = Σ (−1)^{|b_P|} old
                    let mut s0 = vec![RingElem::zero(); 1 << keep.len()];
                    let mut s1 = vec![RingElem::zero(); 1 << keep.len()];
                    for old_idx in 0..self.vec.len() {
                        if self.vec[old_idx].is_zero() {
                            continue;
                        }
                        let rest: usize = keep
                            .iter()
                            .enumerate()
                            .map(|(j, &p)| Self::bit(old_idx, p) << j)
                            .sum();
                        let parity: usize = pending
                            .iter()
                            .map(|&p| Self::bit(old_idx, p))
                            .sum::<usize>()
                            % 2;
                        s0[rest] += &self.vec[old_idx];
                        if parity == 0 {
                            s1[rest] += &self.vec[old_idx];
                        } else {
                            s1[rest] = &s1[rest] - &self.vec[old_idx];
                        }
                    }
                    for rest in 0..s0.len() {
                        for f in 0..(1usize << fresh.len()) {
                            let fparity = (f.count_ones() % 2) as i64;
                            let mut term = &omega_p * &s1[rest];
                            if fparity == 1 {
                                term = -&term;
                            }
                            let val = &s0[rest] + &term;
                            out[rest | (f << keep.len())] = val;
                        }
                    }
                }
            }
            NodeKind::H => {
                self.sqrt2_exp += 1;
                // legs: pending then fresh, two in total
                let h = |a: usize, b: usize| -> i64 { if a == 1 && b == 1 { -1 } else { 1 } };
                for old_idx in 0..self.vec.len() {
                    if self.vec[old_idx].is_zero() {
                        continue;
                    }
                    let rest: usize = keep
                        .iter()
                        .enumerate()
                        .map(|(j, &p)| Self::bit(old_idx, p) << j)
                        .sum();
                    match (pending.len(), fresh.len()) {
                        (2, 0) => {
                            let a = Self::bit(old_idx, pending[0]);
                            let b = Self::bit(old_idx, pending[1]);
                            if h(a, b) == 1 {
                                out[rest] += &self.vec[old_idx];
                            } else {
                                out[rest] = &out[rest] - &self.vec[old_idx];
                            }
                        }
                        (1, 1) => {
                            let a = Self::bit(old_idx, pending[0]);
                            for b in 0..2usize {
                                let target = rest | (b << keep.len());
                                if h(a, b) == 1 {
                                    out[target] += &self.vec[old_idx];
                                } else {
                                    out[target] = &out[target] - &self.vec[old_idx];
                                }
                            }
                        }
                        (0, 2) => {
                            for a in 0..2usize {
                                for b in 0..2usize {
                                    let target = rest | (a << keep.len()) | (b << (keep.len() + 1));
                                    if h(a, b) == 1 {
                                        out[target] += &self.vec[old_idx];
                                    } else {
                                        out[target] = &out[target] - &self.vec[old_idx];
                                    }
                                }
                            }
                        }
                        _ => unreachable!("H box has exactly two legs"),
                    }
                }
            }
            NodeKind::In(_) | NodeKind::Out(_) => unreachable!("boundaries are not contracted"),
        }

        let kept_tags: Vec<SlotTag> = keep.iter().map(|&p| self.slots[p]).collect();
        self.slots = kept_tags;
        for &e in fresh {
            self.slots.push(SlotTag::Pending(e));
        }
        self.vec = out;
        self.check_bound()
    }
}

/// Interprets a diagram with the default qubit bound.
pub fn interpret(d: &Diagram) -> Result<ExactMatrix, SemanticsError> {
    interpret_bounded(d, DEFAULT_MAX_QUBITS)
}

/// Tensor-network contraction of the diagram, visiting non-boundary
/// nodes in ascending id order. Exact and deterministic.
pub fn interpret_bounded(d: &Diagram, max_qubits: usize) -> Result<ExactMatrix, SemanticsError> {
    d.validate()?;
    let (n_in, n_out) = (d.n_inputs(), d.n_outputs());
    if n_in + n_out > max_qubits {
        return Err(SemanticsError::BoundExceeded {
            open: n_in + n_out,
            bound: max_qubits,
        });
    }
    // The frontier may transiently exceed the external qubit count;
    // give it headroom, but still fail rather than blow up.
    let bound = max_qubits.max(n_in + n_out) + 10;
    let mut ctx = Contraction::new(bound);

    let ext_of = |id: NodeId| -> Option<Ext> {
        match d.kind(id) {
            Some(NodeKind::In(i)) => Some(Ext::In(i)),
            Some(NodeKind::Out(i)) => Some(Ext::Out(i)),
            _ => None,
        }
    };

    // Contraction order: repeatedly take the node that minimizes the
    // number of open wires afterwards, ties broken by node id. Strict
    // id order blows up the frontier on dense graph-state diagrams.
    let mut processed: std::collections::HashSet<NodeId> = std::collections::HashSet::new();
    let internal: Vec<(NodeId, NodeKind)> =
        d.nodes().filter(|(_, k)| !k.is_boundary()).collect();
    let legs = |v: NodeId, processed: &std::collections::HashSet<NodeId>| {
        let mut consumed = 0usize;
        let mut created = 0usize;
        for &(a, b) in d.edges() {
            if a == v && b == v {
                continue;
            }
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if processed.contains(&other) {
                consumed += 1;
            } else {
                created += 1;
            }
        }
        (consumed, created)
    };
    while processed.len() < internal.len() {
        let (&(v, kind), ..) = internal
            .iter()
            .filter(|(id, _)| !processed.contains(id))
            .map(|nk| {
                let (consumed, created) = legs(nk.0, &processed);
                (nk, ctx.slots.len() - consumed + created)
            })
            .min_by_key(|&(nk, open_after)| (open_after, nk.0))
            .expect("an unprocessed node exists");
        let mut pending_positions = Vec::new();
        let mut fresh_edges = Vec::new();
        let mut h_self_loop = false;
        let mut plain_self_loops = 0;
        for (ei, &(a, b)) in d.edges().iter().enumerate() {
            if a == v && b == v {
                if kind == NodeKind::H {
                    h_self_loop = true;
                } else {
                    plain_self_loops += 1;
                }
                continue;
            }
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if processed.contains(&other) {
                let pos = ctx
                    .slots
                    .iter()
                    .position(|t| *t == SlotTag::Pending(ei))
                    .expect("edge to a processed node must be pending");
                pending_positions.push(pos);
            } else {
                fresh_edges.push(ei);
            }
        }
        if h_self_loop {
            // tr(H) = 0: the whole diagram denotes zero.
            for e in &mut ctx.vec {
                *e = RingElem::zero();
            }
        }
        ctx.contract_node(kind, &pending_positions, &fresh_edges, plain_self_loops)?;
        processed.insert(v);
    }

    // Remaining pending slots end at boundaries; boundary–boundary edges
    // never became pending and appear as fresh paired slots.
    let mut final_slots: Vec<SlotTag> = Vec::new();
    for tag in &ctx.slots {
        let SlotTag::Pending(ei) = tag else {
            unreachable!()
        };
        let (a, b) = d.edges()[*ei];
        let endpoint = if processed.contains(&a) { b } else { a };
        let ext = ext_of(endpoint).expect("pending edge must end at a boundary");
        final_slots.push(SlotTag::External(ext));
    }
    ctx.slots = final_slots;
    for &(a, b) in d.edges() {
        if let (Some(ea), Some(eb)) = (ext_of(a), ext_of(b)) {
            ctx.slots.push(SlotTag::Pair(ea, eb));
            let mut doubled = vec![RingElem::zero(); ctx.vec.len() * 2];
            for (i, e) in ctx.vec.iter().enumerate() {
                doubled[i] = e.clone();
                doubled[i + ctx.vec.len()] = e.clone();
            }
            ctx.vec = doubled;
            ctx.check_bound()?;
        }
    }

    // Assemble: rows big-endian by output index, columns by input index.
    let mut m = ExactMatrix::zeros(1 << n_out, 1 << n_in);
    m.set_sqrt2_exp(ctx.sqrt2_exp);
    for idx in 0..ctx.vec.len() {
        if ctx.vec[idx].is_zero() {
            continue;
        }
        let mut row = 0usize;
        let mut col = 0usize;
        for (pos, tag) in ctx.slots.iter().enumerate() {
            let bit = Contraction::bit(idx, pos);
            let mut apply = |ext: Ext| match ext {
                Ext::Out(i) => row |= bit << (n_out - 1 - i),
                Ext::In(i) => col |= bit << (n_in - 1 - i),
            };
            match tag {
                SlotTag::External(e) => apply(*e),
                SlotTag::Pair(e1, e2) => {
                    apply(*e1);
                    apply(*e2);
                }
                SlotTag::Pending(_) => unreachable!(),
            }
        }
        *m.entry_mut(row, col) = &m.entry(row, col).clone() + &ctx.vec[idx];
    }
    Ok(m)
}

/// Splitmix64: the fixed PRNG behind [`random_stabilizer_diagram`].
/// State advances by the golden-ratio increment; each output is the
/// finalizer of the new state. Chosen for stability across releases.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// A single-qubit gate on wire `q` of an `n`-wire identity layer.
fn gate_layer(n: usize, q: usize, kind: NodeKind) -> Diagram {
    let mut d = Diagram::new();
    for i in 0..n {
        let inp = d.add_node(NodeKind::In(i));
        let out = d.add_node(NodeKind::Out(i));
        if i == q {
            let g = d.add_node(kind);
            d.add_edge(inp, g);
            d.add_edge(g, out);
        } else {
            d.add_edge(inp, out);
        }
    }
    d
}

/// A CNOT with control `c` and target `t` on an `n`-wire layer.
fn cnot_layer(n: usize, c: usize, t: usize) -> Diagram {
    let mut d = Diagram::new();
    let mut ctrl = None;
    let mut targ = None;
    for i in 0..n {
        let inp = d.add_node(NodeKind::In(i));
        let out = d.add_node(NodeKind::Out(i));
        if i == c {
            let z = d.add_node(NodeKind::Z(Phase::ZERO));
            d.add_edge(inp, z);
            d.add_edge(z, out);
            ctrl = Some(z);
        } else if i == t {
            let x = d.add_node(NodeKind::X(Phase::ZERO));
            d.add_edge(inp, x);
            d.add_edge(x, out);
            targ = Some(x);
        } else {
            d.add_edge(inp, out);
        }
    }
    d.add_edge(ctrl.unwrap(), targ.unwrap());
    d
}

/// A random stabilizer state diagram: |0⟩^⊗n followed by `depth` gates
/// drawn from {H, S, CNOT} with Splitmix64. Identical seeds give
/// byte-identical serializations.
pub fn random_stabilizer_diagram(qubits: usize, depth: usize, seed: u64) -> Diagram {
    assert!(qubits >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut d = Diagram::ket0(qubits);
    for _ in 0..depth {
        let choice = if qubits >= 2 { rng.below(3) } else { rng.below(2) };
        let layer = match choice {
            0 => gate_layer(qubits, rng.below(qubits as u64) as usize, NodeKind::H),
            1 => gate_layer(
                qubits,
                rng.below(qubits as u64) as usize,
                NodeKind::Z(Phase::QUARTER),
            ),
            _ => {
                let c = rng.below(qubits as u64) as usize;
                let mut t = rng.below(qubits as u64 - 1) as usize;
                if t >= c {
                    t += 1;
                }
                cnot_layer(qubits, c, t)
            }
        };
        d = Diagram::compose_seq(&d, &layer).expect("layer arity always matches");
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> RingElem {
        RingElem::one()
    }

    #[test]
    fn wire_is_identity() {
        let m = interpret(&Diagram::wire()).unwrap();
        assert!(m.value_eq(&ExactMatrix::identity(2)));
    }

    #[test]
    fn plus_state_vector() {
        let m = interpret(&Diagram::plus_state()).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 1);
        assert_eq!(*m.entry(0, 0), one());
        assert_eq!(*m.entry(1, 0), one());
    }

    #[test]
    fn ket0_vector() {
        let m = interpret(&Diagram::ket0(1)).unwrap();
        assert!(!m.entry(0, 0).is_zero());
        assert!(m.entry(1, 0).is_zero());
    }

    #[test]
    fn hadamard_matrix() {
        let m = interpret(&Diagram::h_gate()).unwrap();
        let mut expect = ExactMatrix::zeros(2, 2);
        *expect.entry_mut(0, 0) = one();
        *expect.entry_mut(0, 1) = one();
        *expect.entry_mut(1, 0) = one();
        *expect.entry_mut(1, 1) = -&one();
        expect.set_sqrt2_exp(1);
        assert!(m.value_eq(&expect));
    }

    #[test]
    fn hh_is_identity_up_to_scalar() {
        let hh = Diagram::compose_seq(&Diagram::h_gate(), &Diagram::h_gate()).unwrap();
        let m = interpret(&hh).unwrap();
        assert!(scalar_equal(&m, &ExactMatrix::identity(2)));
    }

    #[test]
    fn minus_state_from_z_gate() {
        let d = Diagram::compose_seq(&Diagram::plus_state(), &Diagram::z_phase_gate(Phase::HALF))
            .unwrap();
        let m = interpret(&d).unwrap();
        let mut expect = ExactMatrix::zeros(2, 1);
        *expect.entry_mut(0, 0) = one();
        *expect.entry_mut(1, 0) = -&one();
        assert!(scalar_equal(&m, &expect));
    }

    #[test]
    fn cnot_is_the_controlled_x_permutation() {
        let m = interpret(&Diagram::cnot()).unwrap();
        let mut expect = ExactMatrix::zeros(4, 4);
        for (r, c) in [(0, 0), (1, 1), (3, 2), (2, 3)] {
            *expect.entry_mut(r, c) = one();
        }
        assert!(scalar_equal(&m, &expect));
    }

    #[test]
    fn cz_is_diagonal() {
        let m = interpret(&Diagram::cz()).unwrap();
        let mut expect = ExactMatrix::zeros(4, 4);
        *expect.entry_mut(0, 0) = one();
        *expect.entry_mut(1, 1) = one();
        *expect.entry_mut(2, 2) = one();
        *expect.entry_mut(3, 3) = -&one();
        assert!(scalar_equal(&m, &expect));
    }

    #[test]
    fn bend_of_cz_is_the_reshaped_matrix() {
        // bent inputs take output positions 0..2, the original outputs
        // follow: the state vector at row (a,b,c,d) is CZ[(c,d),(a,b)]
        let cz = interpret(&Diagram::cz()).unwrap();
        let bent = interpret(&Diagram::cz().bend_inputs()).unwrap();
        assert_eq!(bent.rows(), 16);
        let mut reshaped = ExactMatrix::zeros(16, 1);
        reshaped.set_sqrt2_exp(cz.sqrt2_exp());
        for col in 0..4 {
            for row in 0..4 {
                *reshaped.entry_mut((col << 2) | row, 0) = cz.entry(row, col).clone();
            }
        }
        assert!(scalar_equal(&bent, &reshaped));
    }

    #[test]
    fn bend_of_wire_is_cup() {
        let m = interpret(&Diagram::wire().bend_inputs()).unwrap();
        assert_eq!(m.rows(), 4);
        assert!(!m.entry(0, 0).is_zero());
        assert!(m.entry(1, 0).is_zero());
        assert!(m.entry(2, 0).is_zero());
        assert_eq!(m.entry(3, 0), m.entry(0, 0));
    }

    #[test]
    fn zero_scalar_detected() {
        // ⟨−|+⟩ = 0: plus state followed by the minus effect.
        let mut eff = Diagram::new();
        let i = eff.add_node(NodeKind::In(0));
        let z = eff.add_node(NodeKind::Z(Phase::HALF));
        eff.add_edge(i, z);
        let d = Diagram::compose_seq(&Diagram::plus_state(), &eff).unwrap();
        let m = interpret(&d).unwrap();
        assert!(m.is_zero());
        let m2 = interpret(&Diagram::plus_state()).unwrap();
        assert!(!m2.is_zero());
    }

    #[test]
    fn bound_enforced() {
        let d = Diagram::ket0(4);
        assert!(matches!(
            interpret_bounded(&d, 3),
            Err(SemanticsError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn random_diagram_is_deterministic_and_nonzero() {
        let a = random_stabilizer_diagram(3, 20, 42);
        let b = random_stabilizer_diagram(3, 20, 42);
        assert_eq!(a.serialize(), b.serialize());
        let c = random_stabilizer_diagram(3, 20, 43);
        assert_ne!(a.serialize(), c.serialize());
        assert!(!interpret(&a).unwrap().is_zero());
        assert_eq!(
            random_stabilizer_diagram(2, 0, 7).serialize(),
            Diagram::ket0(2).serialize()
        );
    }

    #[test]
    fn compose_matches_matmul() {
        let a = Diagram::cnot();
        let b = Diagram::cz();
        let ab = Diagram::compose_seq(&a, &b).unwrap();
        let m = interpret(&ab).unwrap();
        let prod = interpret(&b).unwrap().matmul(&interpret(&a).unwrap());
        assert!(scalar_equal(&m, &prod));
    }

    #[test]
    fn tensor_matches_kron() {
        let a = Diagram::h_gate();
        let b = Diagram::z_phase_gate(Phase::QUARTER);
        let t = Diagram::tensor(&a, &b);
        let m = interpret(&t).unwrap();
        let k = interpret(&a).unwrap().kron(&interpret(&b).unwrap());
        assert!(scalar_equal(&m, &k));
    }
}
