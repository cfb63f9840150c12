//! Stress coverage past the desk-scale defaults: wider and deeper
//! circuits, and maps with unequal input/output arities.
use stabzx::diagram::{Diagram, NodeKind};
use stabzx::equality::equal_diagrams;
use stabzx::phase::Phase;
use stabzx::semantics::{interpret_bounded, random_stabilizer_diagram, scalar_equal, SplitMix64};

#[test]
fn stress_large_scale_oracle_agreement() {
    let mut rng = SplitMix64::new(0x57AE55);
    let mut eq = 0;
    for i in 0..120u64 {
        let n = 4 + (rng.below(3) as usize); // 4..=6 qubits
        let depth = 20 + (rng.below(20) as usize);
        let d1 = random_stabilizer_diagram(n, depth, i);
        let d2 = match i % 3 {
            0 => {
                let mut padded = d1.clone();
                for _ in 0..2 {
                    let mut layer = Diagram::new();
                    let q = rng.below(n as u64) as usize;
                    for w in 0..n {
                        let inp = layer.add_node(NodeKind::In(w));
                        let out = layer.add_node(NodeKind::Out(w));
                        if w == q {
                            let h = layer.add_node(NodeKind::H);
                            layer.add_edge(inp, h);
                            layer.add_edge(h, out);
                        } else {
                            layer.add_edge(inp, out);
                        }
                    }
                    padded = Diagram::compose_seq(&padded, &layer).unwrap();
                }
                padded
            }
            1 => random_stabilizer_diagram(n, depth, i + 31337),
            _ => {
                let mut layer = Diagram::new();
                let q = rng.below(n as u64) as usize;
                for w in 0..n {
                    let inp = layer.add_node(NodeKind::In(w));
                    let out = layer.add_node(NodeKind::Out(w));
                    if w == q {
                        let z = layer.add_node(NodeKind::Z(Phase::QUARTER));
                        layer.add_edge(inp, z);
                        layer.add_edge(z, out);
                    } else {
                        layer.add_edge(inp, out);
                    }
                }
                Diagram::compose_seq(&d1, &layer).unwrap()
            }
        };
        let decided = equal_diagrams(&d1, &d2).unwrap();
        let m1 = interpret_bounded(&d1, 8).unwrap();
        let m2 = interpret_bounded(&d2, 8).unwrap();
        let truth = scalar_equal(&m1, &m2);
        assert_eq!(decided, truth, "seed {i} n {n}");
        if truth { eq += 1; }
    }
    println!("stress: 120/120 agree at 4-6 qubits ({eq} equal)");
}

#[test]
fn stress_unbalanced_maps() {
    // maps with 2 inputs, 1 output via post-selection, checked by bending
    let mut rng = SplitMix64::new(0xBEEF);
    for i in 0..60u64 {
        let n = 3;
        let base1 = random_stabilizer_diagram(n, 15, i);
        let base2 = random_stabilizer_diagram(n, 15, i + 555);
        // post-select wire 2 in both, then bend output 0 into an input:
        // gives 1-in 1-out maps from 3-qubit states
        let ps = |d: &Diagram, rng: &mut SplitMix64| {
            let mut eff = Diagram::new();
            let kind = match rng.below(4) {
                0 => NodeKind::Z(Phase::ZERO),
                1 => NodeKind::Z(Phase::HALF),
                2 => NodeKind::X(Phase::ZERO),
                _ => NodeKind::X(Phase::HALF),
            };
            let i0 = eff.add_node(NodeKind::In(0));
            let i1 = eff.add_node(NodeKind::In(1));
            let i2 = eff.add_node(NodeKind::In(2));
            let o0 = eff.add_node(NodeKind::Out(0));
            let o1 = eff.add_node(NodeKind::Out(1));
            let e = eff.add_node(kind);
            eff.add_edge(i0, o0);
            eff.add_edge(i1, o1);
            eff.add_edge(i2, e);
            Diagram::compose_seq(d, &eff).unwrap()
        };
        let s1 = ps(&base1, &mut rng);
        let s2 = ps(&base2, &mut rng);
        // turn output 0 into an input by JSON surgery
        let unbend = |d: &Diagram| {
            let mut v: serde_json::Value = serde_json::from_str(&d.serialize()).unwrap();
            for node in v["nodes"].as_array_mut().unwrap() {
                if node["kind"] == "out" {
                    let idx = node["index"].as_u64().unwrap();
                    if idx == 0 {
                        node["kind"] = "in".into();
                    } else {
                        node["index"] = (idx - 1).into();
                    }
                }
            }
            Diagram::parse(&serde_json::to_string(&v).unwrap()).unwrap()
        };
        let m1d = unbend(&s1);
        let m2d = unbend(&s2);
        assert_eq!(m1d.n_inputs(), 1);
        assert_eq!(m1d.n_outputs(), 1);
        let decided = equal_diagrams(&m1d, &m2d).unwrap();
        let truth = scalar_equal(
            &interpret_bounded(&m1d, 8).unwrap(),
            &interpret_bounded(&m2d, 8).unwrap(),
        );
        assert_eq!(decided, truth, "seed {i}");
    }
    println!("stress: 60/60 unbalanced maps agree");
}
