//! The single-qubit Clifford group C₁ modulo global phase.
//!
//! Elements are represented by their conjugation action on X and Z,
//! i.e. the signed Paulis `U X U†` and `U Z U†`. This quotients global
//! phase automatically and makes equality exact. There are exactly 24
//! such elements; a composition table is built once and checked against
//! the exact 2×2 matrices before use.

use std::fmt;
use std::sync::OnceLock;

use crate::phase::Phase;
use crate::semantics::{ExactMatrix, RingElem};

/// A Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

/// A Pauli with a ±1 sign. Products of the images of X and Z under
/// Clifford conjugation only ever produce ±1 signs, never ±i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub letter: PauliLetter,
    pub negative: bool,
}

impl SignedPauli {
    pub const fn new(letter: PauliLetter, negative: bool) -> SignedPauli {
        SignedPauli { letter, negative }
    }

    pub fn negated(self) -> SignedPauli {
        SignedPauli {
            letter: self.letter,
            negative: !self.negative,
        }
    }

    fn encode(self) -> u8 {
        let l = match self.letter {
            PauliLetter::I => 0,
            PauliLetter::X => 1,
            PauliLetter::Y => 2,
            PauliLetter::Z => 3,
        };
        l * 2 + self.negative as u8
    }
}

/// `P·Q = i^k · R` for Pauli letters; returns `(R, k)` with `k` mod 4.
pub fn letter_mul(p: PauliLetter, q: PauliLetter) -> (PauliLetter, u8) {
    use PauliLetter::*;
    match (p, q) {
        (I, r) | (r, I) => (r, 0),
        (X, X) | (Y, Y) | (Z, Z) => (I, 0),
        (X, Y) => (Z, 1),
        (Y, X) => (Z, 3),
        (Y, Z) => (X, 1),
        (Z, Y) => (X, 3),
        (Z, X) => (Y, 1),
        (X, Z) => (Y, 3),
    }
}

/// An element of C₁ (mod global phase), stored as the conjugation
/// images of X and Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct C1 {
    image_x: SignedPauli,
    image_z: SignedPauli,
}

/// Rotation axis for [`PhaseWord`] entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Z,
    X,
}

/// A product of Z/X rotations, leftmost outermost (the rightmost entry
/// is applied first). Consecutive entries never share an axis and no
/// entry carries phase zero.
pub type PhaseWord = Vec<(Axis, Phase)>;

/// Classification against the six-element vertex-operator set R.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RClass {
    /// A green phase Z(a).
    GreenOnly,
    /// X(π/2)·Z(±π/2), the two operators whose normal form starts with
    /// a red π/2 node.
    RedTopped,
    NotInR,
}

impl C1 {
    pub fn identity() -> C1 {
        C1 {
            image_x: SignedPauli::new(PauliLetter::X, false),
            image_z: SignedPauli::new(PauliLetter::Z, false),
        }
    }

    /// The rotation Z(p) = diag(1, e^{ip}).
    pub fn z_rot(p: Phase) -> C1 {
        // S: X ↦ Y, Z ↦ Z.
        let s = C1 {
            image_x: SignedPauli::new(PauliLetter::Y, false),
            image_z: SignedPauli::new(PauliLetter::Z, false),
        };
        s.pow(p.k())
    }

    /// The rotation X(p) = H·Z(p)·H.
    pub fn x_rot(p: Phase) -> C1 {
        // R_X: X ↦ X, Z ↦ −Y.
        let rx = C1 {
            image_x: SignedPauli::new(PauliLetter::X, false),
            image_z: SignedPauli::new(PauliLetter::Y, true),
        };
        rx.pow(p.k())
    }

    pub fn hadamard() -> C1 {
        C1 {
            image_x: SignedPauli::new(PauliLetter::Z, false),
            image_z: SignedPauli::new(PauliLetter::X, false),
        }
    }

    fn pow(self, k: u8) -> C1 {
        // compose_direct, not compose: this runs while the tables are
        // still being built.
        let mut acc = C1::identity();
        for _ in 0..k {
            acc = compose_direct(acc, self);
        }
        acc
    }

    pub fn image_x(&self) -> SignedPauli {
        self.image_x
    }

    pub fn image_z(&self) -> SignedPauli {
        self.image_z
    }

    /// The image of an arbitrary signed Pauli under conjugation.
    pub fn apply(&self, p: SignedPauli) -> SignedPauli {
        let base = match p.letter {
            PauliLetter::I => SignedPauli::new(PauliLetter::I, false),
            PauliLetter::X => self.image_x,
            PauliLetter::Z => self.image_z,
            PauliLetter::Y => {
                // Y = i·X·Z, so U Y U† = i·(U X U†)(U Z U†).
                let (letter, k) = letter_mul(self.image_x.letter, self.image_z.letter);
                let k = (k + 1) % 4;
                debug_assert!(k == 0 || k == 2, "Y image must have a real sign");
                SignedPauli {
                    letter,
                    negative: (k == 2) ^ self.image_x.negative ^ self.image_z.negative,
                }
            }
        };
        if p.negative {
            base.negated()
        } else {
            base
        }
    }

    /// Index of this element in the fixed enumeration of all 24.
    pub fn index(&self) -> usize {
        tables().index_of(self)
    }

    pub fn inverse(&self) -> C1 {
        tables().inverse[self.index()]
    }

    /// The transpose in the computational basis, as an element of C₁.
    pub fn transpose(&self) -> C1 {
        tables().transpose[self.index()]
    }

    /// The rotation normal form: either Z(α)·X(β) or
    /// X(π/2)·Z(±π/2)·X(γ), as a word with zero-phase entries dropped.
    pub fn normal_word(&self) -> PhaseWord {
        tables().normal_word[self.index()].clone()
    }

    /// Phase of the rightmost (graph-side) X rotation of the normal
    /// form, or zero if the word ends in a Z rotation or is empty.
    pub fn graph_side_x_phase(&self) -> Phase {
        match self.normal_word().last() {
            Some((Axis::X, p)) => *p,
            _ => Phase::ZERO,
        }
    }

    pub fn r_class(&self) -> RClass {
        let w = self.normal_word();
        match w.as_slice() {
            [] => RClass::GreenOnly,
            [(Axis::Z, _)] => RClass::GreenOnly,
            [(Axis::X, p1), (Axis::Z, _)] if *p1 == Phase::QUARTER => RClass::RedTopped,
            _ => RClass::NotInR,
        }
    }

    pub fn is_green(&self) -> bool {
        self.r_class() == RClass::GreenOnly
    }

    /// For a green element Z(a), the phase a.
    pub fn green_phase(&self) -> Option<Phase> {
        match self.normal_word().as_slice() {
            [] => Some(Phase::ZERO),
            [(Axis::Z, p)] => Some(*p),
            _ => None,
        }
    }

    /// Exact 2×2 matrix, fixed per element (a definite global phase is
    /// chosen by the normal-form rotation product).
    pub fn to_matrix(&self) -> ExactMatrix {
        tables().matrix[self.index()].clone()
    }

    /// Canonical textual name, e.g. `I`, `Z2`, `Z1*X2`, `X1*Z3`.
    pub fn name(&self) -> String {
        render_word(&self.normal_word())
    }

    /// Parses any word over the name grammar
    /// `I | (Z|X)<k>("*"(Z|X)<k>)*` with k in 1..=3 and returns the
    /// element it denotes.
    pub fn from_name(name: &str) -> Result<C1, String> {
        if name == "I" {
            return Ok(C1::identity());
        }
        let mut word = PhaseWord::new();
        for part in name.split('*') {
            let mut chars = part.chars();
            let axis = match chars.next() {
                Some('Z') => Axis::Z,
                Some('X') => Axis::X,
                _ => return Err(format!("bad operator name {name:?}")),
            };
            let k: u8 = match chars.as_str() {
                "1" => 1,
                "2" => 2,
                "3" => 3,
                _ => return Err(format!("bad operator name {name:?}")),
            };
            word.push((axis, Phase::new(k)));
        }
        Ok(from_word(&word))
    }

    /// All 24 elements in the fixed enumeration order.
    pub fn all() -> &'static [C1] {
        &tables().elements
    }

    /// Classifies the single-qubit state `u|+⟩` by its stabilizer
    /// `u X u†`: a green-phase state Z(φ)|+⟩, or a computational basis
    /// state.
    pub fn plus_state_class(&self) -> PlusStateClass {
        match (self.image_x.letter, self.image_x.negative) {
            (PauliLetter::X, false) => PlusStateClass::Green(Phase::ZERO),
            (PauliLetter::Y, false) => PlusStateClass::Green(Phase::QUARTER),
            (PauliLetter::X, true) => PlusStateClass::Green(Phase::HALF),
            (PauliLetter::Y, true) => PlusStateClass::Green(Phase::THREE_QUARTER),
            (PauliLetter::Z, false) => PlusStateClass::KetZero,
            (PauliLetter::Z, true) => PlusStateClass::KetOne,
            (PauliLetter::I, _) => unreachable!("image of X is never the identity"),
        }
    }
}

/// Which of the six single-qubit stabilizer states `u|+⟩` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlusStateClass {
    /// Z(φ)|+⟩ — the X/Y-plane states.
    Green(Phase),
    KetZero,
    KetOne,
}

/// `compose(outer, inner)` is "outer after inner": in a diagram read
/// bottom to top, `inner` sits nearest the graph state.
pub fn compose(outer: C1, inner: C1) -> C1 {
    let t = tables();
    t.compose[outer.index() * 24 + inner.index()]
}

/// Composition computed directly from the conjugation action. Used to
/// build the table; `compose` is the table lookup.
fn compose_direct(outer: C1, inner: C1) -> C1 {
    C1 {
        image_x: outer.apply(inner.image_x),
        image_z: outer.apply(inner.image_z),
    }
}

/// The product of a word of rotations, rightmost applied first.
pub fn from_word(word: &[(Axis, Phase)]) -> C1 {
    let mut acc = C1::identity();
    for &(axis, p) in word {
        let rot = match axis {
            Axis::Z => C1::z_rot(p),
            Axis::X => C1::x_rot(p),
        };
        acc = compose_direct(acc, rot);
    }
    acc
}

/// The unique normal-form word for `u`; inverse of [`from_word`] on
/// normal forms.
pub fn to_normal_word(u: &C1) -> PhaseWord {
    u.normal_word()
}

fn render_word(word: &PhaseWord) -> String {
    if word.is_empty() {
        return "I".to_string();
    }
    word.iter()
        .map(|&(axis, p)| {
            let a = match axis {
                Axis::Z => 'Z',
                Axis::X => 'X',
            };
            format!("{}{}", a, p.k())
        })
        .collect::<Vec<_>>()
        .join("*")
}

struct Tables {
    elements: Vec<C1>,
    // encode(image_x)*8 + encode(image_z) → index
    index: [usize; 64],
    compose: Vec<C1>,
    inverse: Vec<C1>,
    transpose: Vec<C1>,
    normal_word: Vec<PhaseWord>,
    matrix: Vec<ExactMatrix>,
}

impl Tables {
    fn index_of(&self, u: &C1) -> usize {
        let key = u.image_x.encode() as usize * 8 + u.image_z.encode() as usize;
        let idx = self.index[key];
        debug_assert!(idx < 24, "not a valid C1 element: {u:?}");
        idx
    }
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

fn rotation_matrix(axis: Axis, p: Phase) -> ExactMatrix {
    match axis {
        Axis::Z => {
            let mut m = ExactMatrix::zeros(2, 2);
            *m.entry_mut(0, 0) = RingElem::one();
            *m.entry_mut(1, 1) = RingElem::from_phase(p);
            m
        }
        Axis::X => {
            let h = hadamard_matrix();
            h.matmul(&rotation_matrix(Axis::Z, p)).matmul(&h)
        }
    }
}

fn hadamard_matrix() -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2, 2);
    *m.entry_mut(0, 0) = RingElem::one();
    *m.entry_mut(0, 1) = RingElem::one();
    *m.entry_mut(1, 0) = RingElem::one();
    *m.entry_mut(1, 1) = -&RingElem::one();
    m.set_sqrt2_exp(1);
    m
}

fn adjoint(m: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(m.cols(), m.rows(), m.sqrt2_exp(), |r, c| m.entry(c, r).conj())
}

fn signed_pauli_matrix(p: SignedPauli) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2, 2);
    match p.letter {
        PauliLetter::I => {
            *m.entry_mut(0, 0) = RingElem::one();
            *m.entry_mut(1, 1) = RingElem::one();
        }
        PauliLetter::X => {
            *m.entry_mut(0, 1) = RingElem::one();
            *m.entry_mut(1, 0) = RingElem::one();
        }
        PauliLetter::Y => {
            *m.entry_mut(0, 1) = -&RingElem::omega_pow(2);
            *m.entry_mut(1, 0) = RingElem::omega_pow(2);
        }
        PauliLetter::Z => {
            *m.entry_mut(0, 0) = RingElem::one();
            *m.entry_mut(1, 1) = -&RingElem::one();
        }
    }
    if p.negative {
        ExactMatrix::from_fn(2, 2, m.sqrt2_exp(), |r, c| -m.entry(r, c))
    } else {
        m
    }
}

fn build_tables() -> Tables {
    // Enumerate the group by closing {S, R_X} under composition.
    let mut elements = vec![C1::identity()];
    let gens = [C1::z_rot(Phase::QUARTER), C1::x_rot(Phase::QUARTER)];
    let mut frontier = elements.clone();
    while let Some(u) = frontier.pop() {
        for g in gens {
            let v = compose_direct(g, u);
            if !elements.contains(&v) {
                elements.push(v);
                frontier.push(v);
            }
        }
    }
    assert_eq!(elements.len(), 24, "C1 must have 24 elements");
    elements.sort_by_key(|u| (u.image_x.encode(), u.image_z.encode()));

    let mut index = [usize::MAX; 64];
    for (i, u) in elements.iter().enumerate() {
        index[u.image_x.encode() as usize * 8 + u.image_z.encode() as usize] = i;
    }

    // Normal words: 16 of the form Z(α)X(β), 8 of the form X(π/2)Z(±π/2)X(γ).
    let mut normal_word: Vec<Option<PhaseWord>> = vec![None; 24];
    let mut count_first = 0;
    let mut count_second = 0;
    for a in Phase::all() {
        for b in Phase::all() {
            let mut w = PhaseWord::new();
            if !a.is_zero() {
                w.push((Axis::Z, a));
            }
            if !b.is_zero() {
                w.push((Axis::X, b));
            }
            let u = from_word(&w);
            let i = index[u.image_x.encode() as usize * 8 + u.image_z.encode() as usize];
            assert!(normal_word[i].is_none(), "normal forms must be distinct");
            normal_word[i] = Some(w);
            count_first += 1;
        }
    }
    for d in [Phase::QUARTER, Phase::THREE_QUARTER] {
        for g in Phase::all() {
            let mut w: PhaseWord = vec![(Axis::X, Phase::QUARTER), (Axis::Z, d)];
            if !g.is_zero() {
                w.push((Axis::X, g));
            }
            let u = from_word(&w);
            let i = index[u.image_x.encode() as usize * 8 + u.image_z.encode() as usize];
            assert!(normal_word[i].is_none(), "normal forms must be distinct");
            normal_word[i] = Some(w);
            count_second += 1;
        }
    }
    assert_eq!((count_first, count_second), (16, 8));
    let normal_word: Vec<PhaseWord> = normal_word.into_iter().map(Option::unwrap).collect();

    // Matrices from the normal words, then verify the conjugation action.
    let matrix: Vec<ExactMatrix> = normal_word
        .iter()
        .map(|w| {
            let mut m = ExactMatrix::identity(2);
            for &(axis, p) in w {
                m = m.matmul(&rotation_matrix(axis, p));
            }
            m
        })
        .collect();
    for (i, u) in elements.iter().enumerate() {
        let m = &matrix[i];
        let madj = adjoint(m);
        for (pauli, img) in [
            (PauliLetter::X, u.image_x),
            (PauliLetter::Z, u.image_z),
        ] {
            let conj = m
                .matmul(&signed_pauli_matrix(SignedPauli::new(pauli, false)))
                .matmul(&madj);
            let expect = signed_pauli_matrix(img);
            assert!(
                conj.value_eq(&expect),
                "conjugation table disagrees with matrices at element {i}"
            );
        }
    }

    // Composition table, verified against matrix products up to scalar.
    let mut compose_tab = Vec::with_capacity(24 * 24);
    for a in &elements {
        for b in &elements {
            let c = compose_direct(*a, *b);
            let prod = matrix[index
                [a.image_x.encode() as usize * 8 + a.image_z.encode() as usize]]
            .matmul(
                &matrix[index[b.image_x.encode() as usize * 8 + b.image_z.encode() as usize]],
            );
            let ci = index[c.image_x.encode() as usize * 8 + c.image_z.encode() as usize];
            assert!(
                crate::semantics::scalar_equal(&prod, &matrix[ci]),
                "composition table disagrees with matrix product"
            );
            compose_tab.push(c);
        }
    }

    // Inverses by exhaustive search.
    let inverse: Vec<C1> = elements
        .iter()
        .map(|u| {
            *elements
                .iter()
                .find(|v| compose_direct(*u, **v) == C1::identity())
                .expect("every element has an inverse")
        })
        .collect();

    // Transpose: Vᵀ = (V†)^*, and complex conjugation flips the sign of
    // Y images. Verified against the actual matrix transpose.
    let transpose: Vec<C1> = elements
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let inv = inverse[i];
            let flip = |p: SignedPauli| {
                if p.letter == PauliLetter::Y {
                    p.negated()
                } else {
                    p
                }
            };
            let t = C1 {
                image_x: flip(inv.image_x),
                image_z: flip(inv.image_z),
            };
            let mt = ExactMatrix::from_fn(2, 2, matrix[i].sqrt2_exp(), |r, c| {
                matrix[i].entry(c, r).clone()
            });
            let ti = index[t.image_x.encode() as usize * 8 + t.image_z.encode() as usize];
            assert!(
                crate::semantics::scalar_equal(&mt, &matrix[ti]),
                "transpose table disagrees with matrix transpose"
            );
            t
        })
        .collect();

    Tables {
        elements,
        index,
        compose: compose_tab,
        inverse,
        transpose,
        normal_word,
        matrix,
    }
}

impl fmt::Display for C1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
