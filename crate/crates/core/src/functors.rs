//! The four recursion functors as local tables on elementary slices, the
//! state-sum expansion of a closed word into weighted colored words, and the
//! global recursion check.
//!
//! A state of a strand is written directly as the target boundary point it
//! becomes: a recolored oriented point for the φ functors, an oriented
//! `t` point or an unoriented `s` point for ψ and χ.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Chirality, CrossKind, DiagramError, MorseWord, Orient, Point, Slice};
use crate::scalar::{LaurentPoly, Scalar, Var};
use crate::skein::{SkeinContext, SkeinError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error("{functor} has no entry for {slice:?} on {ins:?}")]
    NoEntry { functor: FunctorId, slice: Slice, ins: Vec<Point> },
    #[error("{0} needs a closed word")]
    NotClosed(FunctorId),
    #[error("unknown functor `{0}`")]
    Unknown(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctorId {
    #[serde(rename = "phi_tq")]
    PhiTq,
    #[serde(rename = "phi_su")]
    PhiSu,
    #[serde(rename = "psi")]
    Psi,
    #[serde(rename = "chi")]
    Chi,
}

impl FunctorId {
    pub const ALL: [FunctorId; 4] = [FunctorId::PhiTq, FunctorId::PhiSu, FunctorId::Psi, FunctorId::Chi];

    pub fn name(self) -> &'static str {
        match self {
            FunctorId::PhiTq => "phi_tq",
            FunctorId::PhiSu => "phi_su",
            FunctorId::Psi => "psi",
            FunctorId::Chi => "chi",
        }
    }

    pub fn from_name(name: &str) -> Result<FunctorId, FunctorError> {
        FunctorId::ALL.into_iter().find(|f| f.name() == name).ok_or_else(|| FunctorError::Unknown(name.to_string()))
    }
}

impl fmt::Display for FunctorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn mono(powers: &[(Var, i32)]) -> Scalar {
    Scalar::mono(powers)
}

fn unit(powers: &[(Var, i32)]) -> LaurentPoly {
    Scalar::mono(powers).numerator().clone()
}

/// A functor together with its source category and target coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctorSpec {
    pub id: FunctorId,
}

impl FunctorSpec {
    pub fn new(id: FunctorId) -> Self {
        FunctorSpec { id }
    }

    pub fn all() -> Vec<FunctorSpec> {
        FunctorId::ALL.into_iter().map(FunctorSpec::new).collect()
    }

    /// True when the source category is oriented HOMFLY.
    pub fn oriented_source(&self) -> bool {
        matches!(self.id, FunctorId::PhiTq | FunctorId::PhiSu)
    }

    /// Framing variable of the source category before the binding.
    pub fn source_var(&self) -> Var {
        if self.oriented_source() {
            Var::T
        } else {
            Var::S
        }
    }

    /// Substitution applied to the source invariant: `t -> tq`, `t -> su`,
    /// `s -> t^2 q^-1`, and `s -> s t^2` followed by `s -> a^2 q^-1`.
    pub fn source_binding(&self) -> Vec<(Var, LaurentPoly)> {
        use Var::*;
        match self.id {
            FunctorId::PhiTq => vec![(T, unit(&[(T, 1), (Q, 1)]))],
            FunctorId::PhiSu => vec![(T, unit(&[(S, 1), (U, 1)]))],
            FunctorId::Psi => vec![(S, unit(&[(T, 2), (Q, -1)]))],
            FunctorId::Chi => vec![(S, unit(&[(A, 2), (Q, -1), (T, 2)]))],
        }
    }

    /// Substitution applied to the target side before comparing.
    pub fn target_binding(&self) -> Vec<(Var, LaurentPoly)> {
        match self.id {
            FunctorId::Chi => vec![(Var::S, unit(&[(Var::A, 2), (Var::Q, -1)]))],
            _ => Vec::new(),
        }
    }

    /// (big, small) colors of the φ functors.
    fn phi_colors(&self) -> Option<(Var, Var)> {
        match self.id {
            FunctorId::PhiTq => Some((Var::T, Var::Q)),
            FunctorId::PhiSu => Some((Var::S, Var::U)),
            _ => None,
        }
    }

    /// Target states a source point can take.
    pub fn alphabet(&self, src: Point) -> Vec<Point> {
        match self.id {
            FunctorId::PhiTq | FunctorId::PhiSu => {
                let (x, y) = self.phi_colors().unwrap();
                vec![Point::new(src.orient, x), Point::new(src.orient, y)]
            }
            FunctorId::Psi => vec![Point::up(Var::T), Point::down(Var::T)],
            FunctorId::Chi => vec![Point::up(Var::T), Point::down(Var::T), Point::unoriented(Var::S)],
        }
    }

    /// Brings a word into the form the tables are written for: φ needs
    /// upward crossings, ψ and χ need unoriented strands colored `s`.
    pub fn prepare_source(&self, word: &MorseWord) -> Result<MorseWord, FunctorError> {
        if self.oriented_source() {
            Ok(word.with_upward_crossings()?)
        } else {
            Ok(word.unoriented(Var::S))
        }
    }
}

/// One term of a local image: a coefficient, a replacement fragment placed
/// at the slice position, and the states it leaves on top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTerm {
    pub coeff: Scalar,
    pub fragment: Vec<Slice>,
    pub out: Vec<Point>,
}

fn term(coeff: Scalar, fragment: Vec<Slice>, out: Vec<Point>) -> LocalTerm {
    LocalTerm { coeff, fragment, out }
}

fn cross_term(kind: CrossKind, l: Point, r: Point) -> LocalTerm {
    term(Scalar::one(), vec![Slice::Cross { pos: 0, kind }], vec![r, l])
}

fn id_term(coeff: Scalar, l: Point, r: Point) -> LocalTerm {
    term(coeff, vec![], vec![l, r])
}

/// Cap on `(l, r)` followed by a cup producing `out`.
fn turnback(coeff: Scalar, (l, r): (Point, Point), out: (Point, Point)) -> LocalTerm {
    term(
        coeff,
        vec![
            Slice::Cap { pos: 0, chirality: Chirality::from_ends(l.orient, r.orient) },
            Slice::Cup { pos: 0, chirality: Chirality::from_ends(out.0.orient, out.1.orient), color: out.0.color },
        ],
        vec![out.0, out.1],
    )
}

fn cup_term(coeff: Scalar, l: Point, r: Point) -> LocalTerm {
    term(
        coeff,
        vec![Slice::Cup { pos: 0, chirality: Chirality::from_ends(l.orient, r.orient), color: l.color }],
        vec![l, r],
    )
}

fn cap_term(coeff: Scalar, l: Point, r: Point) -> LocalTerm {
    term(coeff, vec![Slice::Cap { pos: 0, chirality: Chirality::from_ends(l.orient, r.orient) }], vec![])
}

/// All terms of the image of `slice` acting on input states `ins` (the
/// states of the strands entering the slice from below).
pub fn local_terms(spec: &FunctorSpec, slice: &Slice, ins: &[Point]) -> Result<Vec<LocalTerm>, FunctorError> {
    let no_entry = || FunctorError::NoEntry { functor: spec.id, slice: *slice, ins: ins.to_vec() };
    let z = Scalar::z();
    let out = match spec.id {
        FunctorId::PhiTq | FunctorId::PhiSu => {
            let (x, y) = spec.phi_colors().unwrap();
            match *slice {
                Slice::Cup { chirality: Some(ch), .. } => [x, y]
                    .into_iter()
                    .map(|c| {
                        let coeff = match (ch, c == x) {
                            (Chirality::Cw, true) => Scalar::var(y),
                            (Chirality::Cw, false) => Scalar::var_pow(x, -1),
                            (Chirality::Ccw, _) => Scalar::one(),
                        };
                        let (lo, ro) = ch.ends();
                        cup_term(coeff, Point::new(lo, c), Point::new(ro, c))
                    })
                    .collect(),
                Slice::Cap { chirality: Some(ch), .. } => {
                    let (l, r) = (ins[0], ins[1]);
                    if l.color != r.color {
                        vec![]
                    } else {
                        let coeff = match (ch, l.color == x) {
                            (Chirality::Ccw, true) => Scalar::var_pow(y, -1),
                            (Chirality::Ccw, false) => Scalar::var(x),
                            (Chirality::Cw, _) => Scalar::one(),
                        };
                        vec![cap_term(coeff, l, r)]
                    }
                }
                Slice::Cross { kind, .. } => {
                    let (l, r) = (ins[0], ins[1]);
                    if l.orient != Orient::Up || r.orient != Orient::Up {
                        return Err(no_entry());
                    }
                    let mut v = vec![cross_term(kind, l, r)];
                    match kind {
                        CrossKind::Pos if l.color == y && r.color == x => v.push(id_term(z, l, r)),
                        CrossKind::Neg if l.color == x && r.color == y => v.push(id_term(-z, l, r)),
                        _ => {}
                    }
                    v
                }
                _ => return Err(no_entry()),
            }
        }
        FunctorId::Psi => {
            use Var::*;
            let (p, m) = (Point::up(T), Point::down(T));
            match *slice {
                Slice::Cup { chirality: None, .. } => {
                    vec![cup_term(Scalar::one(), p, m), cup_term(mono(&[(T, 1), (Q, -1)]), m, p)]
                }
                Slice::Cap { chirality: None, .. } => match (ins[0], ins[1]) {
                    (l, r) if (l, r) == (p, m) => vec![cap_term(mono(&[(T, -1), (Q, 1)]), l, r)],
                    (l, r) if (l, r) == (m, p) => vec![cap_term(Scalar::one(), l, r)],
                    _ => vec![],
                },
                Slice::Cross { kind, .. } => {
                    let (l, r) = (ins[0], ins[1]);
                    let mut v = vec![cross_term(kind, l, r)];
                    match kind {
                        CrossKind::Pos if (l, r) == (p, m) => {
                            v.push(id_term(z.clone(), l, r));
                            v.push(turnback(-z * mono(&[(T, -1), (Q, 1)]), (l, r), (p, m)));
                        }
                        CrossKind::Neg if (l, r) == (m, p) => {
                            v.push(id_term(-z.clone(), l, r));
                            v.push(turnback(z * mono(&[(T, 1), (Q, -1)]), (l, r), (m, p)));
                        }
                        _ => {}
                    }
                    v
                }
                _ => return Err(no_entry()),
            }
        }
        FunctorId::Chi => {
            use Var::*;
            let (p, m, o) = (Point::up(T), Point::down(T), Point::unoriented(S));
            match *slice {
                Slice::Cup { chirality: None, .. } => vec![
                    cup_term(mono(&[(T, -1), (A, -1)]), p, m),
                    cup_term(mono(&[(A, 1), (Q, -1)]), m, p),
                    cup_term(mono(&[(T, -1)]), o, o),
                ],
                Slice::Cap { chirality: None, .. } => {
                    let (l, r) = (ins[0], ins[1]);
                    let coeff = if (l, r) == (p, m) {
                        mono(&[(A, -1), (Q, 1)])
                    } else if (l, r) == (m, p) {
                        mono(&[(A, 1), (T, 1)])
                    } else if (l, r) == (o, o) {
                        mono(&[(T, 1)])
                    } else {
                        return Ok(vec![]);
                    };
                    vec![cap_term(coeff, l, r)]
                }
                Slice::Cross { kind, .. } => {
                    let (l, r) = (ins[0], ins[1]);
                    let mut v = vec![cross_term(kind, l, r)];
                    let pair = (l, r);
                    match kind {
                        CrossKind::Pos => {
                            if pair == (p, m) {
                                v.push(id_term(z.clone(), l, r));
                                // s^-1 t^-1 with s = a^2 q^-1
                                v.push(turnback(-z.clone() * mono(&[(A, -2), (Q, 1), (T, -1)]), pair, (p, m)));
                                v.push(turnback(-z * mono(&[(A, -1), (Q, 1), (T, -1)]), pair, (o, o)));
                            } else if pair == (p, o) || pair == (o, m) {
                                v.push(id_term(z, l, r));
                            } else if pair == (o, o) {
                                v.push(turnback(-z * mono(&[(A, -1)]), pair, (p, m)));
                            }
                        }
                        CrossKind::Neg => {
                            if pair == (m, p) {
                                v.push(id_term(-z.clone(), l, r));
                                v.push(turnback(z.clone() * mono(&[(A, 2), (Q, -1), (T, 1)]), pair, (m, p)));
                                v.push(turnback(z * mono(&[(A, 1)]), pair, (o, o)));
                            } else if pair == (o, p) || pair == (m, o) {
                                v.push(id_term(-z, l, r));
                            } else if pair == (o, o) {
                                v.push(turnback(z * mono(&[(T, 1), (A, 1), (Q, -1)]), pair, (m, p)));
                            }
                        }
                    }
                    v
                }
                _ => return Err(no_entry()),
            }
        }
    };
    Ok(out)
}

/// The table entry from input states `ins` to output states `outs`:
/// coefficient and fragment pairs, empty for a zero entry.
pub fn local_image(
    spec: &FunctorSpec,
    slice: &Slice,
    ins: &[Point],
    outs: &[Point],
) -> Result<Vec<(Scalar, Vec<Slice>)>, FunctorError> {
    Ok(local_terms(spec, slice, ins)?.into_iter().filter(|t| t.out == outs).map(|t| (t.coeff, t.fragment)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub weight: Scalar,
    pub colored: MorseWord,
}

fn input_width(slice: &Slice) -> usize {
    match slice {
        Slice::Cup { .. } => 0,
        Slice::Cap { .. } | Slice::Cross { .. } => 2,
    }
}

/// Complete state sum of a closed word, which must already be in the
/// functor's source form (see [`FunctorSpec::prepare_source`]). Terms with
/// equal colored words are merged and zero weights dropped; the result is
/// sorted by colored word.
pub fn expand(spec: &FunctorSpec, word: &MorseWord) -> Result<Vec<ExpansionTerm>, FunctorError> {
    if !word.source.is_empty() {
        return Err(FunctorError::NotClosed(spec.id));
    }
    word.levels()?;
    let mut partial: HashMap<(Vec<Point>, Vec<Slice>), Scalar> = HashMap::new();
    partial.insert((Vec::new(), Vec::new()), Scalar::one());
    for slice in &word.slices {
        let pos = slice.pos();
        let w = input_width(slice);
        let mut next: HashMap<(Vec<Point>, Vec<Slice>), Scalar> = HashMap::new();
        for ((states, slices), weight) in partial {
            for t in local_terms(spec, slice, &states[pos..pos + w])? {
                let mut st = Vec::with_capacity(states.len() + 2);
                st.extend_from_slice(&states[..pos]);
                st.extend_from_slice(&t.out);
                st.extend_from_slice(&states[pos + w..]);
                let mut sl = slices.clone();
                sl.extend(t.fragment.iter().map(|f| f.shifted(pos)));
                let wt = &weight * &t.coeff;
                let e = next.entry((st, sl)).or_insert_with(Scalar::zero);
                *e = &*e + &wt;
            }
        }
        next.retain(|_, w| !w.is_zero());
        partial = next;
    }
    let mut terms: Vec<ExpansionTerm> = partial
        .into_iter()
        .map(|((_, slices), weight)| ExpansionTerm { weight, colored: MorseWord::closed(slices) })
        .collect();
    terms.sort_by(|a, b| a.colored.slices.cmp(&b.colored.slices));
    Ok(terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub functor: FunctorId,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub equal: bool,
    pub term_count: usize,
    pub elapsed_ms: u128,
}

/// Flat record for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub functor: String,
    pub link: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub term_count: usize,
    pub elapsed_ms: u128,
}

impl RecursionReport {
    pub fn record(&self, link: &str) -> ReportRecord {
        ReportRecord {
            functor: self.functor.name().to_string(),
            link: link.to_string(),
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            equal: self.equal,
            term_count: self.term_count,
            elapsed_ms: self.elapsed_ms,
        }
    }
}

fn bind(x: &Scalar, b: &[(Var, LaurentPoly)]) -> Scalar {
    if b.is_empty() {
        x.clone()
    } else {
        x.substitute(b).expect("bindings are unit monomials")
    }
}

/// Source invariant of the source form of `word`, with the source binding
/// applied.
pub fn source_invariant(spec: &FunctorSpec, source: &MorseWord) -> Result<Scalar, FunctorError> {
    let ctx = if spec.oriented_source() { SkeinContext::homfly(Var::T) } else { SkeinContext::kauffman(Var::S) };
    Ok(bind(&ctx.eval(source)?, &spec.source_binding()))
}

/// Checks `F(L)` against the weighted sum of mixed evaluations of its
/// expansion. Oriented words are made unoriented for ψ and χ.
pub fn verify_recursion(spec: &FunctorSpec, word: &MorseWord) -> Result<RecursionReport, FunctorError> {
    let start = Instant::now();
    let source = spec.prepare_source(word)?;
    let lhs = source_invariant(spec, &source)?;
    let terms = expand(spec, &source)?;
    let ctx = SkeinContext::mixed();
    let values: Vec<Result<Scalar, SkeinError>> =
        terms.par_iter().map(|t| ctx.eval(&t.colored).map(|v| &t.weight * &v)).collect();
    let mut rhs = Scalar::zero();
    for v in values {
        rhs = rhs + v?;
    }
    let tb = spec.target_binding();
    let rhs = bind(&rhs, &tb);
    let lhs = bind(&lhs, &tb);
    Ok(RecursionReport {
        functor: spec.id,
        equal: lhs == rhs,
        lhs,
        rhs,
        term_count: terms.len(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{find_link, link_table};
    use crate::skein::delta_homfly;

    fn spec(id: FunctorId) -> FunctorSpec {
        FunctorSpec::new(id)
    }

    #[test]
    fn phi_cup_column() {
        let s = spec(FunctorId::PhiTq);
        let cup = Slice::Cup { pos: 0, chirality: Some(Chirality::Cw), color: Var::T };
        let terms = local_terms(&s, &cup, &[]).unwrap();
        let coeffs: Vec<String> = terms.iter().map(|t| t.coeff.to_string()).collect();
        assert_eq!(coeffs, ["q", "t^-1"]);
        let tt = [Point::up(Var::T), Point::up(Var::T)];
        let x = Slice::Cross { pos: 0, kind: CrossKind::Pos };
        assert_eq!(local_image(&s, &x, &tt, &tt).unwrap(), vec![(Scalar::one(), vec![x])]);
    }

    #[test]
    fn chi_cup_column() {
        let s = spec(FunctorId::Chi);
        let cup = Slice::Cup { pos: 0, chirality: None, color: Var::S };
        let coeffs: Vec<String> = local_terms(&s, &cup, &[]).unwrap().iter().map(|t| t.coeff.to_string()).collect();
        assert_eq!(coeffs, ["t^-1*a^-1", "q^-1*a", "t^-1"]);
    }

    #[test]
    fn unknot_expansions() {
        let u = find_link("unknot").unwrap();
        let phi = spec(FunctorId::PhiTq);
        let terms = expand(&phi, &phi.prepare_source(u.word()).unwrap()).unwrap();
        assert_eq!(terms.len(), 2);
        let psi = spec(FunctorId::Psi);
        let terms = expand(&psi, &psi.prepare_source(u.word()).unwrap()).unwrap();
        let weights: Vec<String> = terms.iter().map(|t| t.weight.to_string()).collect();
        assert_eq!(weights.len(), 2);
        assert!(weights.contains(&"q*t^-1".to_string()) && weights.contains(&"q^-1*t".to_string()), "{:?}", weights);
        let chi = spec(FunctorId::Chi);
        assert_eq!(expand(&chi, &chi.prepare_source(u.word()).unwrap()).unwrap().len(), 3);
        let r = verify_recursion(&phi, u.word()).unwrap();
        assert!(r.equal);
        let expected = Scalar::var(Var::Q) * delta_homfly(Var::T) + Scalar::var_pow(Var::T, -1);
        assert_eq!(r.rhs, expected);
    }

    #[test]
    fn recursion_on_small_links() {
        for name in ["unknot", "unknot+curl", "unknot-curl", "unlink2", "hopf"] {
            let e = find_link(name).unwrap();
            for s in FunctorSpec::all() {
                for p in &e.presentations {
                    let r = verify_recursion(&s, p).unwrap();
                    assert!(r.equal, "{} {}: {} vs {}", s.id, name, r.lhs, r.rhs);
                }
            }
        }
        assert!(link_table().len() >= 7);
    }

    #[test]
    fn recursion_on_knots() {
        for name in ["trefoil", "figure-eight"] {
            let e = find_link(name).unwrap();
            for s in FunctorSpec::all() {
                for p in &e.presentations {
                    let r = verify_recursion(&s, p).unwrap();
                    assert!(r.equal, "{} {}: {} vs {}", s.id, name, r.lhs, r.rhs);
                }
            }
        }
    }

    #[test]
    fn phi_weights_are_polynomials() {
        for e in link_table() {
            for id in [FunctorId::PhiTq, FunctorId::PhiSu] {
                let s = spec(id);
                for t in expand(&s, &s.prepare_source(e.word()).unwrap()).unwrap() {
                    assert!(t.weight.is_laurent(), "{} {}: {}", id, e.name, t.weight);
                }
            }
        }
    }
}
