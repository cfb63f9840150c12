//! The equality decision procedure.
//!
//! Two state diagrams are equal exactly when their reduced GS-LC forms,
//! after simplifying them as a pair, are identical — same graph, same
//! vertex operators, qubit by qubit. Maps are handled by bending their
//! inputs into outputs first. No residual case analysis is needed: an
//! unpaired red node after simplification already implies inequality,
//! and identicality subsumes that check.

use thiserror::Error;

use crate::clifford::RClass;
use crate::diagram::{Diagram, DiagramError};
use crate::gslc::{GsLc, GslcState, RGsLc, RGslcState};
use crate::normalize::{reduce, to_gslc};
use crate::phase::Phase;

#[derive(Debug, Error)]
pub enum EqualityError {
    #[error("states have different qubit counts: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A pair of reduced states with no transferable red node left: there
/// are no adjacent qubits p, q where p carries a red top only on the
/// left and q only on the right.
#[derive(Debug, Clone)]
pub struct SimplifiedPair {
    pub left: RGsLc,
    pub right: RGsLc,
}

impl SimplifiedPair {
    /// Both sides are identical: same graph and same operator vector.
    pub fn identical(&self) -> bool {
        self.left.as_gslc() == self.right.as_gslc()
    }
}

fn red(s: &GsLc, v: usize) -> bool {
    s.ops()[v].r_class() == RClass::RedTopped
}

/// Moves the red top from `p` to its green neighbour `q` inside one
/// diagram: two local complementations when q's phase is 0 or π, one
/// complementation along the edge when it is ±π/2, then fixpoints on
/// whichever operand needs one to land back in R.
fn transfer_red(s: &mut GsLc, p: usize, q: usize) {
    debug_assert!(red(s, p));
    debug_assert!(s.graph().has_edge(p, q));
    let b = s.ops()[q]
        .green_phase()
        .expect("the target of a transfer carries a green operator");
    if b == Phase::ZERO || b == Phase::HALF {
        s.local_complement(q).unwrap();
        s.local_complement(p).unwrap();
    } else {
        s.edge_local_complement(p, q).unwrap();
    }
    for w in [p, q] {
        if s.ops()[w].r_class() == RClass::NotInR {
            s.fixpoint(w).unwrap();
        }
    }
    debug_assert!(s.ops()[p].r_class() == RClass::GreenOnly);
    debug_assert!(red(s, q));
    debug_assert!(crate::gslc::is_reduced(s));
}

/// Simplifies a pair of reduced states: while some qubit pair (p, q)
/// has a red top on p only on the left, on q only on the right, and is
/// adjacent in either diagram, transfer the red inside the diagram
/// where they are adjacent (left first on ties). Terminates in fewer
/// than n steps; the per-side red-node count never changes.
pub fn simplify_pair(a: RGsLc, b: RGsLc) -> Result<SimplifiedPair, EqualityError> {
    let mut left = a.into_gslc();
    let mut right = b.into_gslc();
    let n = left.n();
    if n != right.n() {
        return Err(EqualityError::SizeMismatch {
            left: n,
            right: right.n(),
        });
    }
    let mut steps = 0;
    'outer: loop {
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                let transferable =
                    red(&left, p) && !red(&right, p) && red(&right, q) && !red(&left, q);
                if !transferable {
                    continue;
                }
                if left.graph().has_edge(p, q) {
                    transfer_red(&mut left, p, q);
                } else if right.graph().has_edge(p, q) {
                    transfer_red(&mut right, q, p);
                } else {
                    continue;
                }
                steps += 1;
                assert!(steps < n.max(1), "pair simplification exceeded n steps");
                continue 'outer;
            }
        }
        break;
    }
    let pair = SimplifiedPair {
        left: RGsLc::new(left).expect("transfers preserve reduced form"),
        right: RGsLc::new(right).expect("transfers preserve reduced form"),
    };
    debug_assert!(is_simplified(&pair));
    Ok(pair)
}

/// The defining invariant of a simplified pair.
pub fn is_simplified(pair: &SimplifiedPair) -> bool {
    let (l, r) = (pair.left.as_gslc(), pair.right.as_gslc());
    let n = l.n();
    for p in 0..n {
        for q in 0..n {
            if p != q
                && red(l, p)
                && !red(r, p)
                && red(r, q)
                && !red(l, q)
                && (l.graph().has_edge(p, q) || r.graph().has_edge(p, q))
            {
                return false;
            }
        }
    }
    true
}

/// Decides equality of two states given in GS-LC-or-zero form.
pub fn equal_states(a: &GslcState, b: &GslcState) -> Result<bool, EqualityError> {
    match (a, b) {
        (GslcState::Zero, GslcState::Zero) => Ok(true),
        (GslcState::Zero, _) | (_, GslcState::Zero) => Ok(false),
        (GslcState::State(x), GslcState::State(y)) => {
            if x.n() != y.n() {
                return Err(EqualityError::SizeMismatch {
                    left: x.n(),
                    right: y.n(),
                });
            }
            let RGslcState::State(rx) = reduce(a) else {
                unreachable!("reduction never produces zero from a state")
            };
            let RGslcState::State(ry) = reduce(b) else {
                unreachable!("reduction never produces zero from a state")
            };
            Ok(simplify_pair(rx, ry)?.identical())
        }
    }
}

/// Decides equality of two arbitrary diagrams. Diagrams with different
/// boundary signatures are never equal; otherwise both are bent into
/// states and decided there.
pub fn equal_diagrams(d1: &Diagram, d2: &Diagram) -> Result<bool, EqualityError> {
    d1.validate()?;
    d2.validate()?;
    if (d1.n_inputs(), d1.n_outputs()) != (d2.n_inputs(), d2.n_outputs()) {
        return Ok(false);
    }
    let s1 = to_gslc(&d1.bend_inputs()).expect("bent diagrams have no inputs");
    let s2 = to_gslc(&d2.bend_inputs()).expect("bent diagrams have no inputs");
    equal_states(&s1, &s2)
}
