//! The individual rewrite rules as executable local rewrites.
//!
//! Each rule has a matcher and an applier; matches are only valid on
//! the exact diagram value they were found on. Colour-swapped variants
//! are always included. The full soundness suite enumerates every rule,
//! direction, colour variant and phase assignment as closed LHS/RHS
//! diagram pairs for the oracle to compare.

use thiserror::Error;

use crate::diagram::{Diagram, NodeId, NodeKind};
use crate::phase::Phase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Colour {
    Green,
    Red,
}

impl Colour {
    pub fn flipped(self) -> Colour {
        match self {
            Colour::Green => Colour::Red,
            Colour::Red => Colour::Green,
        }
    }

    pub fn spider(self, p: Phase) -> NodeKind {
        match self {
            Colour::Green => NodeKind::Z(p),
            Colour::Red => NodeKind::X(p),
        }
    }
}

/// The colour and phase of a spider node, if it is one.
fn as_spider(k: NodeKind) -> Option<(Colour, Phase)> {
    match k {
        NodeKind::Z(p) => Some((Colour::Green, p)),
        NodeKind::X(p) => Some((Colour::Red, p)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    SpiderFuse,
    IdentityRemove,
    Bialgebra,
    Hopf,
    Copy,
    PiCopy,
    PiCommute,
    ColorChange,
    EulerH,
    HHCancel,
}

impl RuleKind {
    pub const ALL: [RuleKind; 10] = [
        RuleKind::SpiderFuse,
        RuleKind::IdentityRemove,
        RuleKind::Bialgebra,
        RuleKind::Hopf,
        RuleKind::Copy,
        RuleKind::PiCopy,
        RuleKind::PiCommute,
        RuleKind::ColorChange,
        RuleKind::EulerH,
        RuleKind::HHCancel,
    ];

    fn cli_stem(self) -> &'static str {
        match self {
            RuleKind::SpiderFuse => "spider",
            RuleKind::IdentityRemove => "id",
            RuleKind::Bialgebra => "bialg",
            RuleKind::Hopf => "hopf",
            RuleKind::Copy => "copy",
            RuleKind::PiCopy => "picopy",
            RuleKind::PiCommute => "picomm",
            RuleKind::ColorChange => "color",
            RuleKind::EulerH => "euler",
            RuleKind::HHCancel => "hh",
        }
    }
}

/// A rule together with a direction. For π-commutation the backward
/// rule is the forward one with swapped sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleId {
    pub kind: RuleKind,
    pub backward: bool,
}

impl RuleId {
    pub fn forward(kind: RuleKind) -> RuleId {
        RuleId {
            kind,
            backward: false,
        }
    }

    pub fn backward(kind: RuleKind) -> RuleId {
        RuleId {
            kind,
            backward: true,
        }
    }

    pub fn cli_name(&self) -> String {
        if self.backward {
            format!("{}-rev", self.kind.cli_stem())
        } else {
            self.kind.cli_stem().to_string()
        }
    }

    pub fn from_cli_name(name: &str) -> Option<RuleId> {
        let (stem, backward) = match name.strip_suffix("-rev") {
            Some(s) => (s, true),
            None => (name, false),
        };
        RuleKind::ALL
            .iter()
            .find(|k| k.cli_stem() == stem)
            .map(|&kind| RuleId { kind, backward })
    }
}

/// A bound occurrence of a rule's left-hand pattern: anchor nodes, the
/// edge indices it consumes, and the colour variant where the rewrite
/// has to create nodes. Valid only on the diagram value it was found on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub rule: RuleId,
    pub colour: Option<Colour>,
    pub nodes: Vec<NodeId>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("stale match: pattern no longer present")]
    StaleMatch,
}

/// All matches of a rule in a diagram, sorted by anchors.
pub fn find_matches(d: &Diagram, rule: RuleId) -> Vec<Match> {
    let mut out = if rule.backward {
        find_backward(d, rule.kind)
    } else {
        find_forward(d, rule.kind)
    };
    for m in &mut out {
        m.rule = rule;
    }
    out.sort_by(|a, b| {
        (&a.nodes, &a.edges, format!("{:?}", a.colour)).cmp(&(
            &b.nodes,
            &b.edges,
            format!("{:?}", b.colour),
        ))
    });
    out
}

/// Applies a match found on exactly this diagram value.
pub fn apply(d: &Diagram, m: &Match) -> Result<Diagram, RuleError> {
    let current = find_matches(d, m.rule);
    if !current.contains(m) {
        return Err(RuleError::StaleMatch);
    }
    let mut out = d.clone();
    apply_unchecked(&mut out, m);
    debug_assert_eq!(out.validate(), Ok(()));
    Ok(out)
}

fn other_endpoint(e: (NodeId, NodeId), v: NodeId) -> NodeId {
    if e.0 == v {
        e.1
    } else {
        e.0
    }
}

fn incident_edges(d: &Diagram, v: NodeId) -> Vec<usize> {
    d.edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a == v || b == v)
        .map(|(ei, _)| ei)
        .collect()
}

/// For a degree-2 node `v` with one leg at edge index `ei`, the far
/// endpoint of its other leg (or `v` itself if both legs are parallel).
fn other_endpoint_of_other_leg(d: &Diagram, v: NodeId, ei: usize) -> NodeId {
    let legs = incident_edges(d, v);
    match legs.into_iter().find(|&x| x != ei) {
        Some(o) => other_endpoint(d.edges()[o], v),
        None => v,
    }
}

fn find_forward(d: &Diagram, kind: RuleKind) -> Vec<Match> {
    let mut out = Vec::new();
    match kind {
        RuleKind::SpiderFuse => {
            for (ei, &(u, v)) in d.edges().iter().enumerate() {
                if u == v {
                    continue;
                }
                if let (Some((cu, _)), Some((cv, _))) =
                    (d.kind(u).and_then(as_spider), d.kind(v).and_then(as_spider))
                {
                    if cu == cv {
                        out.push(Match {
                            rule: RuleId::forward(kind),
                            colour: None,
                            nodes: vec![u, v],
                            edges: vec![ei],
                        });
                    }
                }
            }
        }
        RuleKind::IdentityRemove => {
            for (v, k) in d.nodes() {
                if let Some((_, p)) = as_spider(k) {
                    if p.is_zero() && d.degree(v) == 2 {
                        out.push(Match {
                            rule: RuleId::forward(kind),
                            colour: None,
                            nodes: vec![v],
                            edges: incident_edges(d, v),
                        });
                    }
                }
            }
        }
        RuleKind::Hopf => {
            let spiders: Vec<(NodeId, Colour)> = d
                .nodes()
                .filter_map(|(v, k)| as_spider(k).map(|(c, _)| (v, c)))
                .collect();
            for i in 0..spiders.len() {
                for j in (i + 1)..spiders.len() {
                    let (u, cu) = spiders[i];
                    let (v, cv) = spiders[j];
                    if cu != cv && d.edge_multiplicity(u, v) == 2 {
                        let edges: Vec<usize> = d
                            .edges()
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e == (u.min(v), u.max(v)))
                            .map(|(ei, _)| ei)
                            .collect();
                        out.push(Match {
                            rule: RuleId::forward(kind),
                            colour: None,
                            nodes: vec![u, v],
                            edges,
                        });
                    }
                }
            }
        }
        RuleKind::Copy => {
            // a phase-0 state of one colour into a phase-0 spider of the other
            for (s, k) in d.nodes() {
                let Some((c, p)) = as_spider(k) else { continue };
                if !p.is_zero() || d.degree(s) != 1 {
                    continue;
                }
                let t = d.neighbors(s)[0];
                let Some((ct, pt)) = d.kind(t).and_then(as_spider) else {
                    continue;
                };
                if ct == c.flipped() && pt.is_zero() && d.edge_multiplicity(t, t) == 0 {
                    out.push(Match {
                        rule: RuleId::forward(kind),
                        colour: Some(c),
                        nodes: vec![s, t],
                        edges: incident_edges(d, s),
                    });
                }
            }
        }
        RuleKind::PiCopy => {
            // a π phase operator (degree 2) entering a phase-0 spider of
            // the other colour
            for (r, k) in d.nodes() {
                let Some((c, p)) = as_spider(k) else { continue };
                if p != Phase::HALF || d.degree(r) != 2 || d.edge_multiplicity(r, r) != 0 {
                    continue;
                }
                let mut seen = Vec::new();
                for t in d.neighbors(r) {
                    if seen.contains(&t) {
                        continue;
                    }
                    seen.push(t);
                    if d.edge_multiplicity(r, t) != 1 {
                        continue;
                    }
                    let Some((ct, pt)) = d.kind(t).and_then(as_spider) else {
                        continue;
                    };
                    if ct == c.flipped() && pt.is_zero() && d.edge_multiplicity(t, t) == 0 {
                        out.push(Match {
                            rule: RuleId::forward(kind),
                            colour: Some(c),
                            nodes: vec![r, t],
                            edges: incident_edges(d, r),
                        });
                    }
                }
            }
        }
        RuleKind::PiCommute => {
            for (ei, &(a, b)) in d.edges().iter().enumerate() {
                if a == b {
                    continue;
                }
                for (r, g) in [(a, b), (b, a)] {
                    let Some((cr, pr)) = d.kind(r).and_then(as_spider) else {
                        continue;
                    };
                    let Some((cg, _)) = d.kind(g).and_then(as_spider) else {
                        continue;
                    };
                    if pr == Phase::HALF
                        && cg == cr.flipped()
                        && d.degree(r) == 2
                        && d.degree(g) == 2
                        && d.edge_multiplicity(r, g) == 1
                        && d.edge_multiplicity(r, r) == 0
                        && d.edge_multiplicity(g, g) == 0
                    {
                        out.push(Match {
                            rule: RuleId::forward(kind),
                            colour: None,
                            nodes: vec![r, g],
                            edges: vec![ei],
                        });
                    }
                }
            }
        }
        RuleKind::ColorChange => {
            for (v, k) in d.nodes() {
                if as_spider(k).is_some() {
                    out.push(Match {
                        rule: RuleId::forward(kind),
                        colour: None,
                        nodes: vec![v],
                        edges: incident_edges(d, v),
                    });
                }
            }
        }
        RuleKind::EulerH => {
            for (h, k) in d.nodes() {
                if k == NodeKind::H && d.edge_multiplicity(h, h) == 0 {
                    for colour in [Colour::Green, Colour::Red] {
                        out.push(Match {
                            rule: RuleId::forward(kind),
                            colour: Some(colour),
                            nodes: vec![h],
                            edges: incident_edges(d, h),
                        });
                    }
                }
            }
        }
        RuleKind::HHCancel => {
            for (ei, &(a, b)) in d.edges().iter().enumerate() {
                if a == b || d.kind(a) != Some(NodeKind::H) || d.kind(b) != Some(NodeKind::H) {
                    continue;
                }
                match d.edge_multiplicity(a, b) {
                    1 => out.push(Match {
                        rule: RuleId::forward(kind),
                        colour: None,
                        nodes: vec![a, b],
                        edges: vec![ei],
                    }),
                    2 => {
                        // a closed H–H circle; match it once
                        let edges: Vec<usize> = d
                            .edges()
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e == (a.min(b), a.max(b)))
                            .map(|(i, _)| i)
                            .collect();
                        if ei == edges[0] {
                            out.push(Match {
                                rule: RuleId::forward(kind),
                                colour: None,
                                nodes: vec![a, b],
                                edges,
                            });
                        }
                    }
                    _ => {}
                }
            }
        }
        RuleKind::Bialgebra => {
            let eligible = |v: NodeId, want: Colour| {
                d.kind(v).and_then(as_spider).is_some_and(|(c, p)| {
                    c == want && p.is_zero() && d.degree(v) == 3 && d.edge_multiplicity(v, v) == 0
                })
            };
            let greens: Vec<NodeId> = d
                .nodes()
                .filter(|&(v, _)| eligible(v, Colour::Green))
                .map(|(v, _)| v)
                .collect();
            let reds: Vec<NodeId> = d
                .nodes()
                .filter(|&(v, _)| eligible(v, Colour::Red))
                .map(|(v, _)| v)
                .collect();
            for i in 0..greens.len() {
                for j in (i + 1)..greens.len() {
                    for k in 0..reds.len() {
                        for l in (k + 1)..reds.len() {
                            let (g1, g2, r1, r2) = (greens[i], greens[j], reds[k], reds[l]);
                            if [g1, g2]
                                .iter()
                                .all(|&g| [r1, r2].iter().all(|&r| d.edge_multiplicity(g, r) == 1))
                            {
                                let mut edges = Vec::new();
                                for (ei, &(a, b)) in d.edges().iter().enumerate() {
                                    let pat =
                                        |x: NodeId, y: NodeId| (a, b) == (x.min(y), x.max(y));
                                    if pat(g1, r1) || pat(g1, r2) || pat(g2, r1) || pat(g2, r2) {
                                        edges.push(ei);
                                    }
                                }
                                out.push(Match {
                                    rule: RuleId::forward(kind),
                                    colour: None,
                                    nodes: vec![g1, g2, r1, r2],
                                    edges,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn find_backward(d: &Diagram, kind: RuleKind) -> Vec<Match> {
    let mut out = Vec::new();
    match kind {
        RuleKind::SpiderFuse => {
            // unfuse: split a phase-0 stub off any spider
            for (v, k) in d.nodes() {
                if as_spider(k).is_some() {
                    out.push(Match {
                        rule: RuleId::backward(kind),
                        colour: None,
                        nodes: vec![v],
                        edges: vec![],
                    });
                }
            }
        }
        RuleKind::IdentityRemove => {
            for (ei, _) in d.edges().iter().enumerate() {
                for colour in [Colour::Green, Colour::Red] {
                    out.push(Match {
                        rule: RuleId::backward(kind),
                        colour: Some(colour),
                        nodes: vec![],
                        edges: vec![ei],
                    });
                }
            }
        }
        RuleKind::Hopf => {
            let spiders: Vec<(NodeId, Colour)> = d
                .nodes()
                .filter_map(|(v, k)| as_spider(k).map(|(c, _)| (v, c)))
                .collect();
            for i in 0..spiders.len() {
                for j in (i + 1)..spiders.len() {
                    let (u, cu) = spiders[i];
                    let (v, cv) = spiders[j];
                    if cu != cv && d.edge_multiplicity(u, v) == 0 {
                        out.push(Match {
                            rule: RuleId::backward(kind),
                            colour: None,
                            nodes: vec![u, v],
                            edges: vec![],
                        });
                    }
                }
            }
        }
        RuleKind::Copy => {
            // two same-colour phase-0 states merge back through a copier
            let states: Vec<(NodeId, Colour)> = d
                .nodes()
                .filter_map(|(v, k)| {
                    as_spider(k)
                        .and_then(|(c, p)| (p.is_zero() && d.degree(v) == 1).then_some((v, c)))
                })
                .collect();
            for i in 0..states.len() {
                for j in (i + 1)..states.len() {
                    let (s1, c1) = states[i];
                    let (s2, c2) = states[j];
                    if c1 != c2 {
                        continue;
                    }
                    let x1 = d.neighbors(s1)[0];
                    let x2 = d.neighbors(s2)[0];
                    if x1 == s2 || x2 == s1 {
                        continue;
                    }
                    out.push(Match {
                        rule: RuleId::backward(kind),
                        colour: Some(c1),
                        nodes: vec![s1, s2],
                        edges: [incident_edges(d, s1), incident_edges(d, s2)].concat(),
                    });
                }
            }
        }
        RuleKind::PiCopy => {
            // collapse π operators sitting on all but one leg of a
            // phase-0 spider
            for (t, k) in d.nodes() {
                let Some((ct, pt)) = as_spider(k) else { continue };
                if !pt.is_zero() || d.edge_multiplicity(t, t) != 0 || d.degree(t) < 2 {
                    continue;
                }
                let c = ct.flipped();
                let legs = incident_edges(d, t);
                let mut pi_ops = Vec::new();
                let mut free = Vec::new();
                for &ei in &legs {
                    let r = other_endpoint(d.edges()[ei], t);
                    let is_pi_op = d.kind(r).and_then(as_spider).is_some_and(|(cr, pr)| {
                        cr == c
                            && pr == Phase::HALF
                            && d.degree(r) == 2
                            && d.edge_multiplicity(r, r) == 0
                            && d.edge_multiplicity(r, t) == 1
                            && other_endpoint_of_other_leg(d, r, ei) != t
                    });
                    if is_pi_op {
                        pi_ops.push(r);
                    } else {
                        free.push(ei);
                    }
                }
                if free.len() != 1 || pi_ops.is_empty() {
                    continue;
                }
                pi_ops.sort();
                pi_ops.dedup();
                if pi_ops.len() != legs.len() - 1 {
                    continue;
                }
                let mut nodes = vec![t];
                nodes.extend(pi_ops);
                out.push(Match {
                    rule: RuleId::backward(kind),
                    colour: Some(c),
                    nodes,
                    edges: free,
                });
            }
        }
        RuleKind::PiCommute => {
            // the rule is an involution; same pattern both ways
            out = find_forward(d, kind);
        }
        RuleKind::ColorChange => {
            for (v, k) in d.nodes() {
                if as_spider(k).is_none() || d.edge_multiplicity(v, v) != 0 {
                    continue;
                }
                let legs = incident_edges(d, v);
                let mut hs = Vec::new();
                let mut ok = true;
                for &ei in &legs {
                    let h = other_endpoint(d.edges()[ei], v);
                    let good = d.kind(h) == Some(NodeKind::H)
                        && d.edge_multiplicity(h, h) == 0
                        && d.edge_multiplicity(v, h) == 1
                        && other_endpoint_of_other_leg(d, h, ei) != v;
                    if good {
                        hs.push(h);
                    } else {
                        ok = false;
                    }
                }
                let mut deduped = hs.clone();
                deduped.sort();
                deduped.dedup();
                if ok && deduped.len() == legs.len() {
                    let mut nodes = vec![v];
                    hs.sort();
                    nodes.extend(hs);
                    out.push(Match {
                        rule: RuleId::backward(kind),
                        colour: None,
                        nodes,
                        edges: legs,
                    });
                }
            }
        }
        RuleKind::EulerH => {
            // a Z(π/2)–X(π/2)–Z(π/2) chain (or colour-swapped) becomes H
            for (mid, k) in d.nodes() {
                let Some((cm, pm)) = as_spider(k) else { continue };
                if pm != Phase::QUARTER || d.degree(mid) != 2 || d.edge_multiplicity(mid, mid) != 0
                {
                    continue;
                }
                let legs = incident_edges(d, mid);
                let a = other_endpoint(d.edges()[legs[0]], mid);
                let b = other_endpoint(d.edges()[legs[1]], mid);
                if a == b || a == mid || b == mid {
                    continue;
                }
                let outer_ok = |v: NodeId| {
                    d.kind(v).and_then(as_spider).is_some_and(|(c, p)| {
                        c == cm.flipped()
                            && p == Phase::QUARTER
                            && d.degree(v) == 2
                            && d.edge_multiplicity(v, v) == 0
                    })
                };
                if outer_ok(a) && outer_ok(b) {
                    out.push(Match {
                        rule: RuleId::backward(kind),
                        colour: Some(cm.flipped()),
                        nodes: vec![a.min(b), mid, a.max(b)],
                        edges: legs,
                    });
                }
            }
        }
        RuleKind::HHCancel => {
            for (ei, _) in d.edges().iter().enumerate() {
                out.push(Match {
                    rule: RuleId::backward(kind),
                    colour: None,
                    nodes: vec![],
                    edges: vec![ei],
                });
            }
        }
        RuleKind::Bialgebra => {
            for (ei, &(a, b)) in d.edges().iter().enumerate() {
                if a == b {
                    continue;
                }
                for (g, r) in [(a, b), (b, a)] {
                    let gk = d.kind(g).and_then(as_spider);
                    let rk = d.kind(r).and_then(as_spider);
                    let (Some((cg, pg)), Some((cr, pr))) = (gk, rk) else {
                        continue;
                    };
                    if cg != Colour::Green
                        || cr != Colour::Red
                        || !pg.is_zero()
                        || !pr.is_zero()
                        || d.degree(g) != 3
                        || d.degree(r) != 3
                        || d.edge_multiplicity(g, r) != 1
                        || d.edge_multiplicity(g, g) != 0
                        || d.edge_multiplicity(r, r) != 0
                    {
                        continue;
                    }
                    let outer_clear = |v: NodeId, o: NodeId| {
                        d.neighbors(v).into_iter().filter(|&n| n != o).count() == 2
                    };
                    if outer_clear(g, r) && outer_clear(r, g) {
                        out.push(Match {
                            rule: RuleId::backward(kind),
                            colour: None,
                            nodes: vec![g, r],
                            edges: vec![ei],
                        });
                    }
                }
            }
        }
    }
    out
}

fn apply_unchecked(d: &mut Diagram, m: &Match) {
    if m.rule.backward {
        apply_backward(d, m, m.rule.kind);
    } else {
        apply_forward(d, m, m.rule.kind);
    }
}

fn apply_forward(d: &mut Diagram, m: &Match, kind: RuleKind) {
    match kind {
        RuleKind::SpiderFuse => {
            let (u, v) = (m.nodes[0], m.nodes[1]);
            let (cu, pu) = as_spider(d.kind(u).unwrap()).unwrap();
            let (_, pv) = as_spider(d.kind(v).unwrap()).unwrap();
            d.remove_edge_at(m.edges[0]);
            let v_edges: Vec<(NodeId, NodeId)> = d
                .edges()
                .iter()
                .copied()
                .filter(|&(a, b)| a == v || b == v)
                .collect();
            for (a, b) in v_edges {
                d.remove_edge(a, b);
                if a == v && b == v {
                    d.add_edge(u, u);
                } else {
                    let x = other_endpoint((a, b), v);
                    d.add_edge(u, x);
                }
            }
            d.remove_node(v);
            d.set_kind(u, cu.spider(pu + pv));
            // companion cleanup: a plain self-loop on a spider is an
            // exact identity
            while d.remove_edge(u, u) {}
        }
        RuleKind::IdentityRemove => {
            let v = m.nodes[0];
            let nbrs = d.neighbors(v);
            d.remove_node(v);
            if nbrs.len() == 2 && nbrs[0] != v && nbrs[1] != v {
                d.add_edge(nbrs[0], nbrs[1]);
            }
            // a looped identity spider was a closed circle: pure scalar
        }
        RuleKind::Hopf => {
            let (u, v) = (m.nodes[0], m.nodes[1]);
            d.remove_edge(u, v);
            d.remove_edge(u, v);
        }
        RuleKind::Copy => {
            let (s, t) = (m.nodes[0], m.nodes[1]);
            let c = m.colour.unwrap();
            let legs: Vec<(NodeId, NodeId)> = d
                .edges()
                .iter()
                .copied()
                .filter(|&(a, b)| (a == t || b == t) && (a, b) != (s.min(t), s.max(t)))
                .collect();
            d.remove_node(s);
            d.remove_node(t);
            for e in legs {
                let x = other_endpoint(e, t);
                let copy = d.add_node(c.spider(Phase::ZERO));
                d.add_edge(copy, x);
            }
        }
        RuleKind::PiCopy => {
            let (r, t) = (m.nodes[0], m.nodes[1]);
            let c = m.colour.unwrap();
            let x = d
                .neighbors(r)
                .into_iter()
                .find(|&n| n != t)
                .expect("π operator has a far endpoint");
            let legs: Vec<(NodeId, NodeId)> = d
                .edges()
                .iter()
                .copied()
                .filter(|&(a, b)| (a == t || b == t) && (a, b) != (r.min(t), r.max(t)))
                .collect();
            d.remove_node(r);
            d.add_edge(x, t);
            for e in legs {
                let y = other_endpoint(e, t);
                d.remove_edge(e.0, e.1);
                let op = d.add_node(c.spider(Phase::HALF));
                d.add_edge(t, op);
                d.add_edge(op, y);
            }
        }
        RuleKind::PiCommute => {
            let (r, g) = (m.nodes[0], m.nodes[1]);
            let (cg, pg) = as_spider(d.kind(g).unwrap()).unwrap();
            let x = d.neighbors(r).into_iter().find(|&n| n != g).unwrap();
            let y = d.neighbors(g).into_iter().find(|&n| n != r).unwrap();
            d.remove_edge(x, r);
            d.remove_edge(g, y);
            d.add_edge(x, g);
            d.add_edge(r, y);
            d.set_kind(g, cg.spider(-pg));
        }
        RuleKind::ColorChange => {
            let v = m.nodes[0];
            let (c, p) = as_spider(d.kind(v).unwrap()).unwrap();
            d.set_kind(v, c.flipped().spider(p));
            let legs: Vec<(NodeId, NodeId)> = d
                .edges()
                .iter()
                .copied()
                .filter(|&(a, b)| a == v || b == v)
                .collect();
            for e in legs {
                d.remove_edge(e.0, e.1);
                if e.0 == v && e.1 == v {
                    let h1 = d.add_node(NodeKind::H);
                    let h2 = d.add_node(NodeKind::H);
                    d.add_edge(v, h1);
                    d.add_edge(h1, h2);
                    d.add_edge(h2, v);
                } else {
                    let x = other_endpoint(e, v);
                    let h = d.add_node(NodeKind::H);
                    d.add_edge(v, h);
                    d.add_edge(h, x);
                }
            }
        }
        RuleKind::EulerH => {
            let h = m.nodes[0];
            let c = m.colour.unwrap();
            let nbrs = d.neighbors(h);
            let (x, y) = (nbrs[0], nbrs[1]);
            d.remove_node(h);
            let s1 = d.add_node(c.spider(Phase::QUARTER));
            let s2 = d.add_node(c.flipped().spider(Phase::QUARTER));
            let s3 = d.add_node(c.spider(Phase::QUARTER));
            d.add_edge(x, s1);
            d.add_edge(s1, s2);
            d.add_edge(s2, s3);
            d.add_edge(s3, y);
        }
        RuleKind::HHCancel => {
            let (h1, h2) = (m.nodes[0], m.nodes[1]);
            if m.edges.len() == 2 {
                // a closed H–H circle is a nonzero scalar
                d.remove_node(h1);
                d.remove_node(h2);
            } else {
                let x = d.neighbors(h1).into_iter().find(|&n| n != h2).unwrap();
                let y = d.neighbors(h2).into_iter().find(|&n| n != h1).unwrap();
                d.remove_node(h1);
                d.remove_node(h2);
                d.add_edge(x, y);
            }
        }
        RuleKind::Bialgebra => {
            let (g1, g2, r1, r2) = (m.nodes[0], m.nodes[1], m.nodes[2], m.nodes[3]);
            let outer = |d: &Diagram, v: NodeId, others: [NodeId; 2]| -> NodeId {
                d.neighbors(v)
                    .into_iter()
                    .find(|n| !others.contains(n))
                    .expect("pattern node has one outer leg")
            };
            let xg1 = outer(d, g1, [r1, r2]);
            let xg2 = outer(d, g2, [r1, r2]);
            let xr1 = outer(d, r1, [g1, g2]);
            let xr2 = outer(d, r2, [g1, g2]);
            for v in [g1, g2, r1, r2] {
                d.remove_node(v);
            }
            let ng = d.add_node(Colour::Green.spider(Phase::ZERO));
            let nr = d.add_node(Colour::Red.spider(Phase::ZERO));
            // the greens' outer legs move to the new red node and the
            // reds' outer legs to the new green node
            d.add_edge(nr, xg1);
            d.add_edge(nr, xg2);
            d.add_edge(ng, xr1);
            d.add_edge(ng, xr2);
            d.add_edge(ng, nr);
        }
    }
}

fn apply_backward(d: &mut Diagram, m: &Match, kind: RuleKind) {
    match kind {
        RuleKind::SpiderFuse => {
            let v = m.nodes[0];
            let (c, _) = as_spider(d.kind(v).unwrap()).unwrap();
            let stub = d.add_node(c.spider(Phase::ZERO));
            d.add_edge(v, stub);
        }
        RuleKind::IdentityRemove => {
            let e = d.edges()[m.edges[0]];
            let c = m.colour.unwrap();
            d.remove_edge_at(m.edges[0]);
            let id = d.add_node(c.spider(Phase::ZERO));
            d.add_edge(e.0, id);
            d.add_edge(id, e.1);
        }
        RuleKind::Hopf => {
            let (u, v) = (m.nodes[0], m.nodes[1]);
            d.add_edge(u, v);
            d.add_edge(u, v);
        }
        RuleKind::Copy => {
            let (s1, s2) = (m.nodes[0], m.nodes[1]);
            let c = m.colour.unwrap();
            let x1 = d.neighbors(s1)[0];
            let x2 = d.neighbors(s2)[0];
            d.remove_node(s1);
            d.remove_node(s2);
            let t = d.add_node(c.flipped().spider(Phase::ZERO));
            let s = d.add_node(c.spider(Phase::ZERO));
            d.add_edge(s, t);
            d.add_edge(t, x1);
            d.add_edge(t, x2);
        }
        RuleKind::PiCopy => {
            let t = m.nodes[0];
            let pis = &m.nodes[1..];
            let c = m.colour.unwrap();
            let free_edge = d.edges()[m.edges[0]];
            let x = other_endpoint(free_edge, t);
            for &r in pis {
                let y = d.neighbors(r).into_iter().find(|&n| n != t).unwrap();
                d.remove_node(r);
                d.add_edge(t, y);
            }
            d.remove_edge(t.min(x), t.max(x));
            let r = d.add_node(c.spider(Phase::HALF));
            d.add_edge(t, r);
            d.add_edge(r, x);
        }
        RuleKind::PiCommute => {
            apply_forward(d, m, kind);
        }
        RuleKind::ColorChange => {
            let v = m.nodes[0];
            let hs = &m.nodes[1..];
            let (c, p) = as_spider(d.kind(v).unwrap()).unwrap();
            d.set_kind(v, c.flipped().spider(p));
            for &h in hs {
                let x = d.neighbors(h).into_iter().find(|&n| n != v).unwrap();
                d.remove_node(h);
                d.add_edge(v, x);
            }
        }
        RuleKind::EulerH => {
            let (a, mid, b) = (m.nodes[0], m.nodes[1], m.nodes[2]);
            let x = d.neighbors(a).into_iter().find(|&n| n != mid).unwrap();
            let y = d.neighbors(b).into_iter().find(|&n| n != mid).unwrap();
            d.remove_node(a);
            d.remove_node(mid);
            d.remove_node(b);
            let h = d.add_node(NodeKind::H);
            d.add_edge(x, h);
            d.add_edge(h, y);
        }
        RuleKind::HHCancel => {
            let e = d.edges()[m.edges[0]];
            d.remove_edge_at(m.edges[0]);
            let h1 = d.add_node(NodeKind::H);
            let h2 = d.add_node(NodeKind::H);
            d.add_edge(e.0, h1);
            d.add_edge(h1, h2);
            d.add_edge(h2, e.1);
        }
        RuleKind::Bialgebra => {
            let (g, r) = (m.nodes[0], m.nodes[1]);
            let g_legs: Vec<NodeId> = d.neighbors(g).into_iter().filter(|&n| n != r).collect();
            let r_legs: Vec<NodeId> = d.neighbors(r).into_iter().filter(|&n| n != g).collect();
            d.remove_node(g);
            d.remove_node(r);
            let r1 = d.add_node(Colour::Red.spider(Phase::ZERO));
            let r2 = d.add_node(Colour::Red.spider(Phase::ZERO));
            let gg1 = d.add_node(Colour::Green.spider(Phase::ZERO));
            let gg2 = d.add_node(Colour::Green.spider(Phase::ZERO));
            d.add_edge(r1, g_legs[0]);
            d.add_edge(r2, g_legs[1]);
            d.add_edge(gg1, r_legs[0]);
            d.add_edge(gg2, r_legs[1]);
            for rr in [r1, r2] {
                for gg in [gg1, gg2] {
                    d.add_edge(rr, gg);
                }
            }
        }
    }
}

/// One closed instance of a rule: both sides as diagrams with matching
/// boundaries, ready for the oracle.
#[derive(Debug, Clone)]
pub struct SoundnessInstance {
    pub rule: RuleId,
    pub colour: Colour,
    pub phases: Vec<Phase>,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

/// Every rule, both directions, both colour variants, all phase
/// assignments over the four stabilizer phases. A couple of hundred
/// instances in total.
pub fn soundness_instances() -> Vec<SoundnessInstance> {
    let mut out = Vec::new();
    let mut push =
        |rule: RuleKind, colour: Colour, phases: Vec<Phase>, lhs: Diagram, rhs: Diagram| {
            out.push(SoundnessInstance {
                rule: RuleId::forward(rule),
                colour,
                phases: phases.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            });
            out.push(SoundnessInstance {
                rule: RuleId::backward(rule),
                colour,
                phases,
                lhs: rhs,
                rhs: lhs,
            });
        };

    for c in [Colour::Green, Colour::Red] {
        // spider fusion: 1 input, 2 outputs split across the two spiders
        for a in Phase::all() {
            for b in Phase::all() {
                let mut lhs = Diagram::new();
                let i0 = lhs.add_node(NodeKind::In(0));
                let s1 = lhs.add_node(c.spider(a));
                let s2 = lhs.add_node(c.spider(b));
                let o0 = lhs.add_node(NodeKind::Out(0));
                let o1 = lhs.add_node(NodeKind::Out(1));
                lhs.add_edge(i0, s1);
                lhs.add_edge(s1, s2);
                lhs.add_edge(s2, o0);
                lhs.add_edge(s2, o1);
                let mut rhs = Diagram::new();
                let i0 = rhs.add_node(NodeKind::In(0));
                let s = rhs.add_node(c.spider(a + b));
                let o0 = rhs.add_node(NodeKind::Out(0));
                let o1 = rhs.add_node(NodeKind::Out(1));
                rhs.add_edge(i0, s);
                rhs.add_edge(s, o0);
                rhs.add_edge(s, o1);
                push(RuleKind::SpiderFuse, c, vec![a, b], lhs, rhs);
            }
        }

        // identity removal
        {
            let mut lhs = Diagram::new();
            let i0 = lhs.add_node(NodeKind::In(0));
            let v = lhs.add_node(c.spider(Phase::ZERO));
            let o0 = lhs.add_node(NodeKind::Out(0));
            lhs.add_edge(i0, v);
            lhs.add_edge(v, o0);
            push(RuleKind::IdentityRemove, c, vec![], lhs, Diagram::wire());
        }

        // Hopf: a doubled edge between opposite-colour spiders vanishes
        for a in Phase::all() {
            for b in Phase::all() {
                let build = |edges: usize| {
                    let mut d = Diagram::new();
                    let i0 = d.add_node(NodeKind::In(0));
                    let u = d.add_node(c.spider(a));
                    let v = d.add_node(c.flipped().spider(b));
                    let o0 = d.add_node(NodeKind::Out(0));
                    d.add_edge(i0, u);
                    d.add_edge(v, o0);
                    for _ in 0..edges {
                        d.add_edge(u, v);
                    }
                    d
                };
                push(RuleKind::Hopf, c, vec![a, b], build(2), build(0));
            }
        }

        // copy: a phase-0 state through a phase-0 spider of the other colour
        {
            let mut lhs = Diagram::new();
            let s = lhs.add_node(c.spider(Phase::ZERO));
            let t = lhs.add_node(c.flipped().spider(Phase::ZERO));
            let o0 = lhs.add_node(NodeKind::Out(0));
            let o1 = lhs.add_node(NodeKind::Out(1));
            lhs.add_edge(s, t);
            lhs.add_edge(t, o0);
            lhs.add_edge(t, o1);
            let mut rhs = Diagram::new();
            let s1 = rhs.add_node(c.spider(Phase::ZERO));
            let s2 = rhs.add_node(c.spider(Phase::ZERO));
            let o0 = rhs.add_node(NodeKind::Out(0));
            let o1 = rhs.add_node(NodeKind::Out(1));
            rhs.add_edge(s1, o0);
            rhs.add_edge(s2, o1);
            push(RuleKind::Copy, c, vec![], lhs, rhs);
        }

        // π-copy: a π operator through a phase-0 spider
        {
            let mut lhs = Diagram::new();
            let i0 = lhs.add_node(NodeKind::In(0));
            let r = lhs.add_node(c.spider(Phase::HALF));
            let t = lhs.add_node(c.flipped().spider(Phase::ZERO));
            let o0 = lhs.add_node(NodeKind::Out(0));
            let o1 = lhs.add_node(NodeKind::Out(1));
            lhs.add_edge(i0, r);
            lhs.add_edge(r, t);
            lhs.add_edge(t, o0);
            lhs.add_edge(t, o1);
            let mut rhs = Diagram::new();
            let i0 = rhs.add_node(NodeKind::In(0));
            let t = rhs.add_node(c.flipped().spider(Phase::ZERO));
            let r1 = rhs.add_node(c.spider(Phase::HALF));
            let r2 = rhs.add_node(c.spider(Phase::HALF));
            let o0 = rhs.add_node(NodeKind::Out(0));
            let o1 = rhs.add_node(NodeKind::Out(1));
            rhs.add_edge(i0, t);
            rhs.add_edge(t, r1);
            rhs.add_edge(r1, o0);
            rhs.add_edge(t, r2);
            rhs.add_edge(r2, o1);
            push(RuleKind::PiCopy, c, vec![], lhs, rhs);
        }

        // π-commutation flips the phase sign
        for a in Phase::all() {
            let mut lhs = Diagram::new();
            let i0 = lhs.add_node(NodeKind::In(0));
            let r = lhs.add_node(c.spider(Phase::HALF));
            let g = lhs.add_node(c.flipped().spider(a));
            let o0 = lhs.add_node(NodeKind::Out(0));
            lhs.add_edge(i0, r);
            lhs.add_edge(r, g);
            lhs.add_edge(g, o0);
            let mut rhs = Diagram::new();
            let i0 = rhs.add_node(NodeKind::In(0));
            let g2 = rhs.add_node(c.flipped().spider(-a));
            let r2 = rhs.add_node(c.spider(Phase::HALF));
            let o0 = rhs.add_node(NodeKind::Out(0));
            rhs.add_edge(i0, g2);
            rhs.add_edge(g2, r2);
            rhs.add_edge(r2, o0);
            push(RuleKind::PiCommute, c, vec![a], lhs, rhs);
        }

        // colour change on a 1-in 2-out spider
        for a in Phase::all() {
            let mut lhs = Diagram::new();
            let i0 = lhs.add_node(NodeKind::In(0));
            let v = lhs.add_node(c.spider(a));
            let o0 = lhs.add_node(NodeKind::Out(0));
            let o1 = lhs.add_node(NodeKind::Out(1));
            lhs.add_edge(i0, v);
            lhs.add_edge(v, o0);
            lhs.add_edge(v, o1);
            let mut rhs = Diagram::new();
            let i0 = rhs.add_node(NodeKind::In(0));
            let v2 = rhs.add_node(c.flipped().spider(a));
            let o0 = rhs.add_node(NodeKind::Out(0));
            let o1 = rhs.add_node(NodeKind::Out(1));
            let h1 = rhs.add_node(NodeKind::H);
            let h2 = rhs.add_node(NodeKind::H);
            let h3 = rhs.add_node(NodeKind::H);
            rhs.add_edge(i0, h1);
            rhs.add_edge(h1, v2);
            rhs.add_edge(v2, h2);
            rhs.add_edge(h2, o0);
            rhs.add_edge(v2, h3);
            rhs.add_edge(h3, o1);
            push(RuleKind::ColorChange, c, vec![a], lhs, rhs);
        }

        // Euler decomposition of H
        {
            let mut rhs = Diagram::new();
            let i0 = rhs.add_node(NodeKind::In(0));
            let s1 = rhs.add_node(c.spider(Phase::QUARTER));
            let s2 = rhs.add_node(c.flipped().spider(Phase::QUARTER));
            let s3 = rhs.add_node(c.spider(Phase::QUARTER));
            let o0 = rhs.add_node(NodeKind::Out(0));
            rhs.add_edge(i0, s1);
            rhs.add_edge(s1, s2);
            rhs.add_edge(s2, s3);
            rhs.add_edge(s3, o0);
            push(RuleKind::EulerH, c, vec![], Diagram::h_gate(), rhs);
        }

        // bialgebra: the complete bipartite 2+2 pattern collapses
        {
            let mut lhs = Diagram::new();
            let i0 = lhs.add_node(NodeKind::In(0));
            let i1 = lhs.add_node(NodeKind::In(1));
            let b1 = lhs.add_node(c.spider(Phase::ZERO));
            let b2 = lhs.add_node(c.spider(Phase::ZERO));
            let t1 = lhs.add_node(c.flipped().spider(Phase::ZERO));
            let t2 = lhs.add_node(c.flipped().spider(Phase::ZERO));
            let o0 = lhs.add_node(NodeKind::Out(0));
            let o1 = lhs.add_node(NodeKind::Out(1));
            lhs.add_edge(i0, b1);
            lhs.add_edge(i1, b2);
            for bb in [b1, b2] {
                for tt in [t1, t2] {
                    lhs.add_edge(bb, tt);
                }
            }
            lhs.add_edge(t1, o0);
            lhs.add_edge(t2, o1);
            let mut rhs = Diagram::new();
            let i0 = rhs.add_node(NodeKind::In(0));
            let i1 = rhs.add_node(NodeKind::In(1));
            let bot = rhs.add_node(c.flipped().spider(Phase::ZERO));
            let top = rhs.add_node(c.spider(Phase::ZERO));
            let o0 = rhs.add_node(NodeKind::Out(0));
            let o1 = rhs.add_node(NodeKind::Out(1));
            rhs.add_edge(i0, bot);
            rhs.add_edge(i1, bot);
            rhs.add_edge(bot, top);
            rhs.add_edge(top, o0);
            rhs.add_edge(top, o1);
            push(RuleKind::Bialgebra, c, vec![], lhs, rhs);
        }
    }

    // H–H cancellation is colourless
    {
        let mut lhs = Diagram::new();
        let i0 = lhs.add_node(NodeKind::In(0));
        let h1 = lhs.add_node(NodeKind::H);
        let h2 = lhs.add_node(NodeKind::H);
        let o0 = lhs.add_node(NodeKind::Out(0));
        lhs.add_edge(i0, h1);
        lhs.add_edge(h1, h2);
        lhs.add_edge(h2, o0);
        push(RuleKind::HHCancel, Colour::Green, vec![], lhs, Diagram::wire());
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{interpret, scalar_equal};

    #[test]
    fn empty_diagram_has_no_matches() {
        let d = Diagram::new();
        for kind in RuleKind::ALL {
            assert!(find_matches(&d, RuleId::forward(kind)).is_empty());
        }
    }

    #[test]
    fn two_adjacent_z_spiders_fuse() {
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::Z(Phase::QUARTER));
        let b = d.add_node(NodeKind::Z(Phase::QUARTER));
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(a, b);
        d.add_edge(b, o);
        let ms = find_matches(&d, RuleId::forward(RuleKind::SpiderFuse));
        assert_eq!(ms.len(), 1);
        let fused = apply(&d, &ms[0]).unwrap();
        let spiders: Vec<_> = fused
            .nodes()
            .filter_map(|(_, k)| match k {
                NodeKind::Z(p) => Some(p),
                _ => None,
            })
            .collect();
        assert_eq!(spiders, vec![Phase::HALF]);
        assert!(scalar_equal(
            &interpret(&d).unwrap(),
            &interpret(&fused).unwrap()
        ));
    }

    #[test]
    fn hopf_pattern_matches_once() {
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::Z(Phase::ZERO));
        let x = d.add_node(NodeKind::X(Phase::ZERO));
        let o0 = d.add_node(NodeKind::Out(0));
        let o1 = d.add_node(NodeKind::Out(1));
        d.add_edge(z, x);
        d.add_edge(z, x);
        d.add_edge(z, o0);
        d.add_edge(x, o1);
        let ms = find_matches(&d, RuleId::forward(RuleKind::Hopf));
        assert_eq!(ms.len(), 1);
        let applied = apply(&d, &ms[0]).unwrap();
        assert_eq!(applied.edge_multiplicity(z, x), 0);
        assert!(scalar_equal(
            &interpret(&d).unwrap(),
            &interpret(&applied).unwrap()
        ));
    }

    #[test]
    fn hh_cancel_gives_bare_wire() {
        let mut d = Diagram::new();
        let i0 = d.add_node(NodeKind::In(0));
        let h1 = d.add_node(NodeKind::H);
        let h2 = d.add_node(NodeKind::H);
        let o0 = d.add_node(NodeKind::Out(0));
        d.add_edge(i0, h1);
        d.add_edge(h1, h2);
        d.add_edge(h2, o0);
        let ms = find_matches(&d, RuleId::forward(RuleKind::HHCancel));
        assert_eq!(ms.len(), 1);
        let w = apply(&d, &ms[0]).unwrap();
        assert!(w.structural_eq(&Diagram::wire()));
    }

    #[test]
    fn euler_forward_is_scalar_equal() {
        let d = Diagram::h_gate();
        let ms = find_matches(&d, RuleId::forward(RuleKind::EulerH));
        assert_eq!(ms.len(), 2); // both colour variants
        for m in &ms {
            let e = apply(&d, m).unwrap();
            assert!(scalar_equal(
                &interpret(&d).unwrap(),
                &interpret(&e).unwrap()
            ));
        }
    }

    #[test]
    fn stale_match_rejected() {
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::Z(Phase::ZERO));
        let b = d.add_node(NodeKind::Z(Phase::ZERO));
        let o0 = d.add_node(NodeKind::Out(0));
        d.add_edge(a, b);
        d.add_edge(b, o0);
        let ms = find_matches(&d, RuleId::forward(RuleKind::SpiderFuse));
        let once = apply(&d, &ms[0]).unwrap();
        assert_eq!(apply(&once, &ms[0]), Err(RuleError::StaleMatch));
    }

    #[test]
    fn fusion_through_parallel_edge_stays_sound() {
        // doubly connected same-colour spiders: fusing turns the second
        // edge into a self-loop, which the companion cleanup removes
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::Z(Phase::QUARTER));
        let b = d.add_node(NodeKind::Z(Phase::HALF));
        let o = d.add_node(NodeKind::Out(0));
        d.add_edge(a, b);
        d.add_edge(a, b);
        d.add_edge(a, o);
        let ms = find_matches(&d, RuleId::forward(RuleKind::SpiderFuse));
        let fused = apply(&d, &ms[0]).unwrap();
        fused.validate().unwrap();
        assert!(scalar_equal(
            &interpret(&d).unwrap(),
            &interpret(&fused).unwrap()
        ));
    }

    #[test]
    fn applying_first_matches_preserves_soundness_on_fuzzed_diagrams() {
        let base = crate::semantics::random_stabilizer_diagram(3, 10, 99);
        for kind in RuleKind::ALL {
            for dir in [RuleId::forward(kind), RuleId::backward(kind)] {
                let ms = find_matches(&base, dir);
                if let Some(m) = ms.first() {
                    let applied = apply(&base, m).unwrap();
                    applied.validate().unwrap();
                    assert!(
                        scalar_equal(&interpret(&base).unwrap(), &interpret(&applied).unwrap()),
                        "{} must be sound on fuzzed diagrams",
                        dir.cli_name()
                    );
                }
            }
        }
    }

    #[test]
    fn random_rewrite_sequences_keep_invariants() {
        // fuzz: long chains of randomly chosen rule applications never
        // break the diagram invariants and never change the semantics
        let mut rng = crate::semantics::SplitMix64::new(0xF422);
        for round in 0..6u64 {
            let mut d = crate::semantics::random_stabilizer_diagram(
                2 + (round as usize % 2),
                8,
                round,
            );
            let reference = interpret(&d).unwrap();
            for _ in 0..12 {
                let kind = RuleKind::ALL[rng.below(10) as usize];
                let dir = if rng.below(2) == 0 {
                    RuleId::forward(kind)
                } else {
                    RuleId::backward(kind)
                };
                let ms = find_matches(&d, dir);
                if ms.is_empty() {
                    continue;
                }
                let m = &ms[rng.below(ms.len() as u64) as usize];
                d = apply(&d, m).unwrap();
                d.validate().unwrap();
            }
            assert!(
                scalar_equal(&reference, &interpret(&d).unwrap()),
                "round {round}: a rewrite chain changed the semantics"
            );
        }
    }

    #[test]
    fn cli_names_round_trip() {
        for kind in RuleKind::ALL {
            for dir in [RuleId::forward(kind), RuleId::backward(kind)] {
                assert_eq!(RuleId::from_cli_name(&dir.cli_name()), Some(dir));
            }
        }
        assert_eq!(RuleId::from_cli_name("nope"), None);
    }

    #[test]
    fn instance_count_is_small() {
        let n = soundness_instances().len();
        assert!(n < 1000, "instance count {n} must stay below 10^3");
        assert!(n > 100);
    }

    #[test]
    fn all_instances_sound() {
        for inst in soundness_instances() {
            let lhs = interpret(&inst.lhs).unwrap();
            let rhs = interpret(&inst.rhs).unwrap();
            assert!(
                scalar_equal(&lhs, &rhs),
                "{} instance {:?}/{:?} unsound",
                inst.rule.cli_name(),
                inst.colour,
                inst.phases
            );
        }
    }

    #[test]
    fn lhs_templates_are_matched_by_their_own_rule() {
        for inst in soundness_instances() {
            let ms = find_matches(&inst.lhs, inst.rule);
            assert!(
                !ms.is_empty(),
                "{} finds no match on its own template",
                inst.rule.cli_name()
            );
        }
    }
}
