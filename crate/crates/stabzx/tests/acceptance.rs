//! Acceptance suite: one test per criterion, each printing a verdict
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use stabzx::clifford::{compose, C1, PauliLetter, RClass};
use stabzx::diagram::{Diagram, NodeKind};
use stabzx::equality::{equal_diagrams, equal_states, is_simplified, simplify_pair};
use stabzx::gslc::{
    state_to_diagram, stabilizer_generators, Graph, GsLc, GslcState, RGsLc, RGslcState,
};
use stabzx::normalize::{
    apply_primitive, decompose, reduce, reduce_with_stats, to_gslc, Primitive,
};
use stabzx::phase::Phase;
use stabzx::semantics::{
    interpret, random_stabilizer_diagram, scalar_equal, ExactMatrix, RingElem, SplitMix64,
};

fn oracle(d: &Diagram) -> ExactMatrix {
    interpret(d).expect("desk-scale diagrams stay within the oracle bound")
}

fn state_oracle(s: &GslcState) -> ExactMatrix {
    oracle(&state_to_diagram(s))
}

// ---------------------------------------------------------------------
// 1. Exhaustive rule soundness
// ---------------------------------------------------------------------

#[test]
fn criterion_1_rule_soundness() {
    let instances = stabzx::rules::soundness_instances();
    assert!(instances.len() < 1000);
    for inst in &instances {
        assert!(
            scalar_equal(&oracle(&inst.lhs), &oracle(&inst.rhs)),
            "rule {} ({:?}, phases {:?}) is unsound",
            inst.rule.cli_name(),
            inst.colour,
            inst.phases
        );
    }
    println!(
        "criterion 1: PASS - all {} rule instances sound",
        instances.len()
    );
}

// ---------------------------------------------------------------------
// 2. The worked controlled-Z example
// ---------------------------------------------------------------------

/// The first controlled-Z encoding: two controlled-X pairs with the
/// phase gates S ⊗ S after and Z(−π/2) on the target wire in between.
fn cz_encoding_one() -> Diagram {
    let mut d = Diagram::new();
    let i0 = d.add_node(NodeKind::In(0));
    let i1 = d.add_node(NodeKind::In(1));
    // wire 0, bottom to top: two green CNOT dots, then S
    let g1 = d.add_node(NodeKind::Z(Phase::ZERO));
    let g2 = d.add_node(NodeKind::Z(Phase::ZERO));
    let s0 = d.add_node(NodeKind::Z(Phase::QUARTER));
    let o0 = d.add_node(NodeKind::Out(0));
    // wire 1, bottom to top: X, Z(−π/2), X, S
    let x1 = d.add_node(NodeKind::X(Phase::ZERO));
    let zm = d.add_node(NodeKind::Z(Phase::THREE_QUARTER));
    let x2 = d.add_node(NodeKind::X(Phase::ZERO));
    let s1 = d.add_node(NodeKind::Z(Phase::QUARTER));
    let o1 = d.add_node(NodeKind::Out(1));
    d.add_edge(i0, g1);
    d.add_edge(g1, g2);
    d.add_edge(g2, s0);
    d.add_edge(s0, o0);
    d.add_edge(i1, x1);
    d.add_edge(x1, zm);
    d.add_edge(zm, x2);
    d.add_edge(x2, s1);
    d.add_edge(s1, o1);
    d.add_edge(g1, x1);
    d.add_edge(g2, x2);
    d
}

/// The second encoding: a green–red pair with Hadamards around the red
/// node, i.e. the library's controlled-Z builder.
fn cz_encoding_two() -> Diagram {
    Diagram::cz()
}

#[test]
fn criterion_2_worked_example() {
    let d1 = cz_encoding_one();
    let d2 = cz_encoding_two();
    // both really are the controlled-Z operator
    let mut cz = ExactMatrix::zeros(4, 4);
    for i in 0..4 {
        *cz.entry_mut(i, i) = if i == 3 {
            -&RingElem::one()
        } else {
            RingElem::one()
        };
    }
    assert!(scalar_equal(&oracle(&d1), &cz));
    assert!(scalar_equal(&oracle(&d2), &cz));

    assert!(equal_diagrams(&d1, &d2).unwrap(), "the two encodings must be decided equal");

    // their reduced forms, simplified as a pair, must be identical and
    // serialize to identical bytes
    let s1 = to_gslc(&d1.bend_inputs()).unwrap();
    let s2 = to_gslc(&d2.bend_inputs()).unwrap();
    let RGslcState::State(r1) = reduce(&s1) else { panic!() };
    let RGslcState::State(r2) = reduce(&s2) else { panic!() };
    let pair = simplify_pair(r1, r2).unwrap();
    assert!(pair.identical());
    let left = GslcState::State(pair.left.as_gslc().clone()).to_json();
    let right = GslcState::State(pair.right.as_gslc().clone()).to_json();
    assert_eq!(left, right, "simplified pair must serialize identically");
    println!("criterion 2: PASS - controlled-Z encodings equal, simplified pair byte-identical");
}

// ---------------------------------------------------------------------
// 3. Decision procedure agrees with the oracle on 1000 pairs
// ---------------------------------------------------------------------

fn one_qubit_layer(n: usize, q: usize, kind: NodeKind) -> Diagram {
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

/// A state diagram with a random post-selected effect on one wire; the
/// survivors keep their order.
fn post_select(d: &Diagram, rng: &mut SplitMix64) -> Diagram {
    let n = d.n_outputs();
    if n == 0 {
        return d.clone();
    }
    let target = rng.below(n as u64) as usize;
    let mut eff = Diagram::new();
    let mut out_pos = 0;
    for i in 0..n {
        let inp = eff.add_node(NodeKind::In(i));
        if i == target {
            let kind = match rng.below(4) {
                0 => NodeKind::Z(Phase::ZERO),
                1 => NodeKind::Z(Phase::HALF),
                2 => NodeKind::X(Phase::ZERO),
                _ => NodeKind::X(Phase::HALF),
            };
            let e = eff.add_node(kind);
            eff.add_edge(inp, e);
        } else {
            let out = eff.add_node(NodeKind::Out(out_pos));
            out_pos += 1;
            eff.add_edge(inp, out);
        }
    }
    Diagram::compose_seq(d, &eff).unwrap()
}

/// A random n-wire Clifford map (no state preparation).
fn random_map(n: usize, depth: usize, seed: u64) -> Diagram {
    let prep = random_stabilizer_diagram(n, depth, seed);
    // strip the |0⟩ row: rebuild as layers only
    let mut rng = SplitMix64::new(seed ^ 0xD1A6);
    let mut d = one_qubit_layer(n, 0, NodeKind::Z(Phase::ZERO));
    let _ = prep;
    for _ in 0..depth {
        let layer = match rng.below(if n >= 2 { 3 } else { 2 }) {
            0 => one_qubit_layer(n, rng.below(n as u64) as usize, NodeKind::H),
            1 => one_qubit_layer(
                n,
                rng.below(n as u64) as usize,
                NodeKind::Z(Phase::QUARTER),
            ),
            _ => {
                let c = rng.below(n as u64) as usize;
                let mut t = rng.below(n as u64 - 1) as usize;
                if t >= c {
                    t += 1;
                }
                let mut l = Diagram::new();
                let mut zn = None;
                let mut xn = None;
                for i in 0..n {
                    let inp = l.add_node(NodeKind::In(i));
                    let out = l.add_node(NodeKind::Out(i));
                    if i == c {
                        let z = l.add_node(NodeKind::Z(Phase::ZERO));
                        l.add_edge(inp, z);
                        l.add_edge(z, out);
                        zn = Some(z);
                    } else if i == t {
                        let x = l.add_node(NodeKind::X(Phase::ZERO));
                        l.add_edge(inp, x);
                        l.add_edge(x, out);
                        xn = Some(x);
                    } else {
                        l.add_edge(inp, out);
                    }
                }
                l.add_edge(zn.unwrap(), xn.unwrap());
                l
            }
        };
        d = Diagram::compose_seq(&d, &layer).unwrap();
    }
    d
}

fn zero_scalar() -> Diagram {
    let mut d = Diagram::new();
    d.add_node(NodeKind::Z(Phase::HALF));
    d
}

#[test]
fn criterion_3_oracle_agreement_1000_pairs() {
    let mut rng = SplitMix64::new(0xACCE97);
    let mut equal_count = 0;
    for i in 0..1000u64 {
        let (d1, d2) = match i % 6 {
            0 => {
                // the same state from different-looking circuits
                let n = 1 + (rng.below(4) as usize);
                let base = random_stabilizer_diagram(n, 10, i);
                let mut padded = base.clone();
                let q = rng.below(n as u64) as usize;
                for _ in 0..2 {
                    padded =
                        Diagram::compose_seq(&padded, &one_qubit_layer(n, q, NodeKind::H))
                            .unwrap();
                }
                (base, padded)
            }
            1 => {
                // independent circuits over the same wires
                let n = 1 + (rng.below(4) as usize);
                (
                    random_stabilizer_diagram(n, 10, i),
                    random_stabilizer_diagram(n, 10, i + 100_000),
                )
            }
            2 => {
                // perturbed: one extra gate
                let n = 1 + (rng.below(4) as usize);
                let base = random_stabilizer_diagram(n, 10, i);
                let q = rng.below(n as u64) as usize;
                let extra = one_qubit_layer(n, q, NodeKind::Z(Phase::QUARTER));
                let other = Diagram::compose_seq(&base, &extra).unwrap();
                (base, other)
            }
            3 => {
                // both zero on the same wires
                let n = 1 + (rng.below(3) as usize);
                let a = Diagram::tensor(&random_stabilizer_diagram(n, 8, i), &zero_scalar());
                let b = Diagram::tensor(
                    &random_stabilizer_diagram(n, 8, i + 7),
                    &zero_scalar(),
                );
                (a, b)
            }
            4 => {
                // zero against nonzero
                let n = 1 + (rng.below(3) as usize);
                let a = random_stabilizer_diagram(n, 8, i);
                let b = Diagram::tensor(&a, &zero_scalar());
                (a.clone(), b)
            }
            _ => {
                // proper maps via bending: 1- or 2-qubit Cliffords,
                // sometimes post-selected states
                if rng.below(2) == 0 {
                    let n = 1 + (rng.below(2) as usize);
                    (random_map(n, 6, i), random_map(n, 6, i + 55_000))
                } else {
                    let n = 2 + (rng.below(3) as usize);
                    let a = post_select(&random_stabilizer_diagram(n, 10, i), &mut rng);
                    let b = post_select(&random_stabilizer_diagram(n, 10, i + 1), &mut rng);
                    if a.n_outputs() != b.n_outputs() {
                        (a.clone(), a)
                    } else {
                        (a, b)
                    }
                }
            }
        };
        assert!(d1.n_inputs() + d1.n_outputs() <= 5);
        let decided = equal_diagrams(&d1, &d2).unwrap();
        let m1 = oracle(&d1);
        let m2 = oracle(&d2);
        let truth = scalar_equal(&m1, &m2);
        assert_eq!(decided, truth, "disagreement with the oracle at pair {i}");
        if truth {
            equal_count += 1;
        }
    }
    assert!(equal_count > 150, "the mix should contain many equal pairs");
    assert!(
        equal_count < 850,
        "the mix should contain many unequal pairs"
    );
    println!("criterion 3: PASS - 1000/1000 verdicts agree with the oracle ({equal_count} equal)");
}

// ---------------------------------------------------------------------
// 4 & 7. Stepwise pipeline preservation and termination bounds
// ---------------------------------------------------------------------

fn plus_vector() -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2, 1);
    *m.entry_mut(0, 0) = RingElem::one();
    *m.entry_mut(1, 0) = RingElem::one();
    m
}

fn bit(x: usize, pos_from_left: usize, width: usize) -> usize {
    (x >> (width - 1 - pos_from_left)) & 1
}

/// Independent matrix semantics of a primitive on an n-qubit vector.
fn primitive_matrix(p: &Primitive, n: usize) -> ExactMatrix {
    match *p {
        Primitive::NewQubit => unreachable!("handled by kron"),
        Primitive::ApplyClifford(q, u) => {
            let mut m = ExactMatrix::identity(1);
            for i in 0..n {
                let f = if i == q {
                    u.to_matrix()
                } else {
                    ExactMatrix::identity(2)
                };
                m = m.kron(&f);
            }
            m
        }
        Primitive::PlusEffect(q) => {
            let mut m = ExactMatrix::zeros(1 << (n - 1), 1 << n);
            for c in 0..(1 << n) {
                let mut r = 0;
                for i in 0..n {
                    if i != q {
                        r = (r << 1) | bit(c, i, n);
                    }
                }
                *m.entry_mut(r, c) = &m.entry(r, c).clone() + &RingElem::one();
            }
            m
        }
        Primitive::Split(q) => {
            let mut m = ExactMatrix::zeros(1 << (n + 1), 1 << n);
            for c in 0..(1 << n) {
                let r = (c << 1) | bit(c, q, n);
                *m.entry_mut(r, c) = RingElem::one();
            }
            m
        }
        Primitive::Join(a, b) => {
            let mut m = ExactMatrix::zeros(1 << (n - 1), 1 << n);
            let gone = a.max(b);
            for c in 0..(1 << n) {
                if bit(c, a, n) != bit(c, b, n) {
                    continue;
                }
                let mut r = 0;
                for i in 0..n {
                    if i != gone {
                        r = (r << 1) | bit(c, i, n);
                    }
                }
                *m.entry_mut(r, c) = RingElem::one();
            }
            m
        }
    }
}

fn qubits_of(state: &GslcState) -> usize {
    match state {
        GslcState::State(s) => s.n(),
        GslcState::Zero => 0,
    }
}

#[test]
fn criterion_4_and_7_pipeline_preservation_and_bounds() {
    let mut rng = SplitMix64::new(0xF01D);
    let mut zero_cases = 0;
    for i in 0..1000u64 {
        let n = 1 + (rng.below(5) as usize);
        let mut d = random_stabilizer_diagram(n, 8 + (rng.below(8) as usize), i);
        if i % 3 == 2 {
            d = post_select(&d, &mut rng);
            if i % 9 == 8 && d.n_outputs() >= 1 {
                d = post_select(&d, &mut rng);
            }
        }
        let prims = decompose(&d).unwrap();

        // replay on both routes, comparing after every step
        let mut state = GslcState::State(GsLc::graph_state(Graph::new(0)));
        let mut vec = ExactMatrix::identity(1);
        for p in &prims {
            let width = qubits_of(&state);
            state = apply_primitive(state, p);
            if let GslcState::Zero = state {
                assert!(
                    matches!(p, Primitive::PlusEffect(_) | Primitive::Join(..)),
                    "only effects and joins can produce zero"
                );
            }
            vec = match p {
                Primitive::NewQubit => vec.kron(&plus_vector()),
                other => primitive_matrix(other, width).matmul(&vec),
            };
            match &state {
                GslcState::Zero => {
                    assert!(vec.is_zero(), "pair {i}: state went zero, oracle did not");
                    break;
                }
                st => {
                    assert!(!vec.is_zero(), "pair {i}: oracle went zero, state did not");
                    assert!(
                        scalar_equal(&state_oracle(st), &vec),
                        "pair {i}: step {p} diverged from the oracle"
                    );
                }
            }
        }

        // whole-pipeline checks: to_gslc and reduce preserve semantics
        let st = to_gslc(&d).unwrap();
        let truth = oracle(&d);
        assert_eq!(st.is_zero(), truth.is_zero(), "pair {i}");
        if st.is_zero() {
            zero_cases += 1;
        } else {
            assert!(scalar_equal(&state_oracle(&st), &truth), "pair {i}");
        }
        let (r, stats) = reduce_with_stats(&st);
        match r {
            RGslcState::Zero => assert!(truth.is_zero()),
            RGslcState::State(r) => {
                let m = r.as_gslc().n();
                assert!(
                    stats.local_comps <= 2 * m,
                    "pair {i}: condition (i) exceeded 2n"
                );
                assert!(
                    stats.edge_comps <= m / 2,
                    "pair {i}: condition (ii) exceeded n/2"
                );
                assert!(stabzx::gslc::is_reduced(r.as_gslc()));
                assert!(scalar_equal(
                    &state_oracle(&GslcState::State(r.as_gslc().clone())),
                    &truth
                ));
            }
        }
    }
    assert!(zero_cases > 20, "the corpus should include zero states");
    println!("criterion 4: PASS - 1000 pipelines preserve semantics stepwise ({zero_cases} zero states)");
    println!("criterion 7: PASS - reduction counters stayed within 2n and n/2");
}

// ---------------------------------------------------------------------
// 5. The line-graph local complementation sequence
// ---------------------------------------------------------------------

#[test]
fn criterion_5_line_graph_sequence() {
    // vertices 1..4 as 0-based 0..3; start from the path 1–2–3–4
    let mut g = Graph::with_edges(4, &[(0, 1), (1, 2), (2, 3)]);
    assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    g.local_complement(2);
    assert_eq!(g.edges(), vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
    g.local_complement(1);
    assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
    println!("criterion 5: PASS - line-graph complementation sequence reproduced");
}

// ---------------------------------------------------------------------
// 6. Graph-state stabilization, exhaustively for n ≤ 4
// ---------------------------------------------------------------------

#[test]
fn criterion_6_graph_state_stabilizers() {
    let mut checked = 0;
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect();
        for mask in 0..(1u32 << pairs.len()) {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::with_edges(n, &chosen);
            let psi = state_oracle(&GslcState::State(GsLc::graph_state(g.clone())));
            for gen in stabilizer_generators(&g) {
                assert!(!gen.negative);
                let mut m = ExactMatrix::identity(1);
                for &letter in &gen.letters {
                    let factor = match letter {
                        PauliLetter::I => Diagram::wire(),
                        PauliLetter::X => Diagram::x_phase_gate(Phase::HALF),
                        PauliLetter::Z => Diagram::z_phase_gate(Phase::HALF),
                        PauliLetter::Y => unreachable!("graph-state generators are X/Z/I"),
                    };
                    m = m.kron(&oracle(&factor));
                }
                let image = m.matmul(&psi);
                assert!(
                    image.value_eq(&psi),
                    "graph n={n} mask={mask}: not a +1 eigenvector"
                );
                checked += 1;
            }
        }
    }
    println!("criterion 6: PASS - {checked} generator checks, all +1 eigenvectors");
}

// ---------------------------------------------------------------------
// 8. Brute-force state counts: 6 single-qubit, 60 two-qubit classes
// ---------------------------------------------------------------------

#[test]
fn criterion_8_state_counts() {
    // single-qubit: all 24 vertex operators on |+⟩
    let singles: Vec<GsLc> = C1::all()
        .iter()
        .map(|&u| {
            let mut s = GsLc::graph_state(Graph::new(1));
            s.ops_mut()[0] = u;
            s
        })
        .collect();
    // first dedupe by the independent oracle
    let mut oracle_classes: Vec<ExactMatrix> = Vec::new();
    for s in &singles {
        let m = state_oracle(&GslcState::State(s.clone()));
        if !oracle_classes.iter().any(|c| scalar_equal(c, &m)) {
            oracle_classes.push(m);
        }
    }
    assert_eq!(oracle_classes.len(), 6, "six single-qubit stabilizer states");
    // then by the decision procedure, cross-checking the partitions
    let mut classes: Vec<GslcState> = Vec::new();
    for s in &singles {
        let st = GslcState::State(s.clone());
        let mine = classes
            .iter()
            .position(|c| equal_states(c, &st).unwrap());
        let oracles = oracle_classes
            .iter()
            .position(|c| scalar_equal(c, &state_oracle(&st)));
        match mine {
            None => {
                classes.push(st);
            }
            Some(k) => {
                // the two partitions must agree
                let rep = &classes[k];
                assert!(scalar_equal(
                    &state_oracle(rep),
                    &oracle_classes[oracles.unwrap()]
                ));
            }
        }
    }
    assert_eq!(classes.len(), 6);

    // two-qubit: 5000 random circuits must produce exactly 60 classes
    let mut oracle_reps: Vec<ExactMatrix> = Vec::new();
    let mut decision_reps: Vec<(GslcState, usize)> = Vec::new();
    for seed in 0..5000u64 {
        let d = random_stabilizer_diagram(2, 8 + (seed % 8) as usize, seed);
        let m = oracle(&d);
        let ocls = match oracle_reps.iter().position(|c| scalar_equal(c, &m)) {
            Some(k) => k,
            None => {
                oracle_reps.push(m);
                oracle_reps.len() - 1
            }
        };
        let st = to_gslc(&d).unwrap();
        match decision_reps
            .iter()
            .position(|(c, _)| equal_states(c, &st).unwrap())
        {
            Some(k) => assert_eq!(
                decision_reps[k].1, ocls,
                "decision and oracle partitions diverged at seed {seed}"
            ),
            None => decision_reps.push((st, ocls)),
        }
    }
    assert_eq!(oracle_reps.len(), 60, "sixty two-qubit stabilizer states");
    assert_eq!(decision_reps.len(), 60);
    println!("criterion 8: PASS - 6 single-qubit and 60 two-qubit classes, partitions agree");
}

// ---------------------------------------------------------------------
// 9. Unpaired red nodes imply inequality
// ---------------------------------------------------------------------

#[test]
fn criterion_9_unpaired_red_spot_check() {
    let mut rng = SplitMix64::new(0x9A17);
    let red_top = compose(C1::x_rot(Phase::QUARTER), C1::z_rot(Phase::QUARTER));
    let mut done = 0;
    let mut attempt = 0u64;
    while done < 200 {
        attempt += 1;
        let n = 1 + (rng.below(4) as usize);
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.below(2) == 1 {
                    g.set_edge(a, b, true);
                }
            }
        }
        // all-green operators, then one artificial red top on the left
        let mut left = GsLc::graph_state(g.clone());
        let mut right = GsLc::graph_state(g);
        for v in 0..n {
            let p = Phase::new(rng.below(4) as i64);
            left.ops_mut()[v] = C1::z_rot(p);
            right.ops_mut()[v] = C1::z_rot(p);
        }
        let v = rng.below(n as u64) as usize;
        left.ops_mut()[v] = compose(red_top, left.ops_mut()[v]);
        if left.ops()[v].r_class() != RClass::RedTopped {
            continue;
        }
        let lr = RGsLc::new(left.clone()).expect("one red top is always reduced");
        let rr = RGsLc::new(right.clone()).expect("green states are reduced");
        let pair = stabzx::equality::SimplifiedPair {
            left: lr,
            right: rr,
        };
        assert!(
            is_simplified(&pair),
            "a one-sided red node is already simplified"
        );
        assert!(
            !equal_states(&GslcState::State(left.clone()), &GslcState::State(right.clone()))
                .unwrap(),
            "attempt {attempt}: unpaired red node must imply inequality"
        );
        let ml = state_oracle(&GslcState::State(left));
        let mr = state_oracle(&GslcState::State(right));
        assert!(
            !scalar_equal(&ml, &mr),
            "attempt {attempt}: the oracle must confirm inequality"
        );
        done += 1;
    }
    println!("criterion 9: PASS - 200 unpaired-red pairs all decided unequal, oracle agrees");
}
