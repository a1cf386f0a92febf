//! Exact 2-strand skein algebras and machine checks of the functor
//! relations.
//!
//! A 2-strand morphism between pairs of boundary points is written in the
//! basis {identity, positive crossing, turnback}. Which basis elements exist
//! depends on the pair: the identity needs equal input and output, the
//! crossing needs swapped output, and the turnback needs both pairs to be
//! closable by a cap. Negative crossings are rewritten as
//! `N = P + alpha * 1 + beta * E` using the skein relation of the pair.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::diagram::{Chirality, CrossKind, Orient, Point, Slice};
use crate::functors::{local_terms, FunctorError, FunctorId, FunctorSpec};
use crate::scalar::{LaurentPoly, Scalar, Var};
use crate::skein::{delta_homfly, delta_kauffman};

pub type Pair = (Point, Point);

fn swap((l, r): Pair) -> Pair {
    (r, l)
}

/// Whether a cap can join the two points.
fn closable((l, r): Pair) -> bool {
    l.color == r.color
        && match (l.orient, r.orient) {
            (Orient::Unoriented, Orient::Unoriented) => true,
            (a, b) => Chirality::from_ends(a, b).is_some(),
        }
}

/// Framing variable of a strand.
fn framing(p: Point) -> Var {
    p.color
}

/// Value of a circle in state `p`.
pub fn circle(p: Point) -> Scalar {
    if p.orient.is_oriented() {
        delta_homfly(p.color)
    } else {
        delta_kauffman(p.color)
    }
}

/// `(alpha, beta)` with `N = P + alpha * 1 + beta * E(in -> swap(in))`.
pub fn negative_crossing_coeffs(input: Pair) -> (Scalar, Scalar) {
    let (l, r) = input;
    let z = Scalar::z();
    if l.color != r.color {
        (Scalar::zero(), Scalar::zero())
    } else if !l.orient.is_oriented() {
        (-z.clone(), z)
    } else if l.orient == r.orient {
        (-z, Scalar::zero())
    } else {
        (Scalar::zero(), z)
    }
}

/// Coefficients on identity, positive crossing and turnback.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalElement {
    pub id: Scalar,
    pub cross: Scalar,
    pub turnback: Scalar,
}

impl LocalElement {
    pub fn zero() -> Self {
        LocalElement { id: Scalar::zero(), cross: Scalar::zero(), turnback: Scalar::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.id.is_zero() && self.cross.is_zero() && self.turnback.is_zero()
    }

    fn scale(&self, c: &Scalar) -> Self {
        LocalElement { id: &self.id * c, cross: &self.cross * c, turnback: &self.turnback * c }
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        LocalElement { id: f(&self.id), cross: f(&self.cross), turnback: f(&self.turnback) }
    }
}

impl Add for &LocalElement {
    type Output = LocalElement;
    fn add(self, o: &LocalElement) -> LocalElement {
        LocalElement { id: &self.id + &o.id, cross: &self.cross + &o.cross, turnback: &self.turnback + &o.turnback }
    }
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]*1 + [{}]*X + [{}]*E", self.id, self.cross, self.turnback)
    }
}

/// Morphism between direct sums of pairs, keyed by (input, output).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockMatrix {
    pub blocks: BTreeMap<(Pair, Pair), LocalElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Basis {
    Id,
    Cross,
    Turnback,
}

impl BlockMatrix {
    pub fn zero() -> Self {
        BlockMatrix::default()
    }

    pub fn identity(pairs: &[Pair]) -> Self {
        let mut m = BlockMatrix::zero();
        for &p in pairs {
            m.add_basis(p, p, Basis::Id, Scalar::one());
        }
        m
    }

    pub fn get(&self, input: Pair, output: Pair) -> LocalElement {
        self.blocks.get(&(input, output)).cloned().unwrap_or_else(LocalElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|e| e.is_zero())
    }

    fn add_basis(&mut self, input: Pair, output: Pair, b: Basis, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(match b {
            Basis::Id => input == output,
            Basis::Cross => output == swap(input),
            Basis::Turnback => closable(input) && closable(output),
        });
        let e = self.blocks.entry((input, output)).or_insert_with(LocalElement::zero);
        match b {
            Basis::Id => e.id = &e.id + &c,
            Basis::Cross => e.cross = &e.cross + &c,
            Basis::Turnback => e.turnback = &e.turnback + &c,
        }
        if e.is_zero() {
            self.blocks.remove(&(input, output));
        }
    }

    /// Adds `c` times a crossing of the given kind on `input`.
    fn add_crossing(&mut self, input: Pair, kind: CrossKind, c: Scalar) {
        self.add_basis(input, swap(input), Basis::Cross, c.clone());
        if kind == CrossKind::Neg {
            let (alpha, beta) = negative_crossing_coeffs(input);
            self.add_basis(input, input, Basis::Id, &c * &alpha);
            if !beta.is_zero() {
                self.add_basis(input, swap(input), Basis::Turnback, c * beta);
            }
        }
    }

    fn terms(&self) -> Vec<(Pair, Pair, Basis, Scalar)> {
        let mut out = Vec::new();
        for (&(i, o), e) in &self.blocks {
            for (b, c) in [(Basis::Id, &e.id), (Basis::Cross, &e.cross), (Basis::Turnback, &e.turnback)] {
                if !c.is_zero() {
                    out.push((i, o, b, c.clone()));
                }
            }
        }
        out
    }

    /// `self` stacked on top of `below`.
    pub fn after(&self, below: &BlockMatrix) -> BlockMatrix {
        let mut out = BlockMatrix::zero();
        let upper = self.terms();
        for (i, m, bl, cl) in below.terms() {
            for (m2, o, bu, cu) in upper.iter().cloned() {
                if m2 != m {
                    continue;
                }
                let c = &cl * &cu;
                match (bl, bu) {
                    (Basis::Id, b) => out.add_basis(i, o, b, c),
                    (b, Basis::Id) => out.add_basis(i, o, b, c),
                    (Basis::Cross, Basis::Cross) => {
                        let (alpha, beta) = negative_crossing_coeffs(m);
                        let vinv = Scalar::var_pow(framing(i.0), -1);
                        out.add_basis(i, o, Basis::Id, c.clone());
                        out.add_basis(i, m, Basis::Cross, -(&c * &alpha));
                        if !beta.is_zero() {
                            out.add_basis(i, o, Basis::Turnback, -(c * beta * vinv));
                        }
                    }
                    (Basis::Turnback, Basis::Cross) => {
                        out.add_basis(i, o, Basis::Turnback, c * Scalar::var_pow(framing(m.0), -1))
                    }
                    (Basis::Cross, Basis::Turnback) => {
                        out.add_basis(i, o, Basis::Turnback, c * Scalar::var_pow(framing(i.0), -1))
                    }
                    (Basis::Turnback, Basis::Turnback) => out.add_basis(i, o, Basis::Turnback, c * circle(m.0)),
                }
            }
        }
        out
    }

    fn scaled(&self, c: &Scalar) -> BlockMatrix {
        BlockMatrix {
            blocks: self.blocks.iter().map(|(k, e)| (*k, e.scale(c))).filter(|(_, e)| !e.is_zero()).collect(),
        }
    }

    pub fn substituted(&self, b: &[(Var, LaurentPoly)]) -> BlockMatrix {
        if b.is_empty() {
            return self.clone();
        }
        let f = |x: &Scalar| x.substitute(b).expect("unit monomial binding");
        BlockMatrix { blocks: self.blocks.iter().map(|(k, e)| (*k, e.map(f))).filter(|(_, e)| !e.is_zero()).collect() }
    }
}

impl Add for &BlockMatrix {
    type Output = BlockMatrix;
    fn add(self, o: &BlockMatrix) -> BlockMatrix {
        let mut out = self.clone();
        for (k, e) in &o.blocks {
            let sum = &out.get(k.0, k.1) + e;
            if sum.is_zero() {
                out.blocks.remove(k);
            } else {
                out.blocks.insert(*k, sum);
            }
        }
        out
    }
}

impl Sub for &BlockMatrix {
    type Output = BlockMatrix;
    fn sub(self, o: &BlockMatrix) -> BlockMatrix {
        self + &o.scaled(&Scalar::from_int(-1))
    }
}

fn point_name(p: &Point) -> String {
    let o = match p.orient {
        Orient::Up => '+',
        Orient::Down => '-',
        Orient::Unoriented => '0',
    };
    format!("{}{}", o, p.color)
}

impl fmt::Display for BlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, o), e) in &self.blocks {
            writeln!(
                f,
                "({} {}) -> ({} {}): {}",
                point_name(&i.0),
                point_name(&i.1),
                point_name(&o.0),
                point_name(&o.1),
                e
            )?;
        }
        Ok(())
    }
}

/// Hecke algebra on two parallel strands of one color: `c_id + c_x X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hecke2 {
    pub c_id: Scalar,
    pub c_x: Scalar,
}

impl Hecke2 {
    pub fn x() -> Self {
        Hecke2 { c_id: Scalar::zero(), c_x: Scalar::one() }
    }

    /// `X^-1 = X - (q - q^-1)`.
    pub fn x_inv() -> Self {
        Hecke2 { c_id: -Scalar::z(), c_x: Scalar::one() }
    }
}

impl Mul for &Hecke2 {
    type Output = Hecke2;
    fn mul(self, o: &Hecke2) -> Hecke2 {
        // X^2 = (q - q^-1) X + 1
        let xx = &self.c_x * &o.c_x;
        Hecke2 { c_id: &self.c_id * &o.c_id + &xx, c_x: &self.c_id * &o.c_x + &self.c_x * &o.c_id + xx * Scalar::z() }
    }
}

/// Two-strand unoriented algebra with framing variable `s`:
/// `c_id + c_x X + c_e e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bmw2 {
    pub c_id: Scalar,
    pub c_x: Scalar,
    pub c_e: Scalar,
}

impl Bmw2 {
    pub fn x() -> Self {
        Bmw2 { c_id: Scalar::zero(), c_x: Scalar::one(), c_e: Scalar::zero() }
    }

    pub fn e() -> Self {
        Bmw2 { c_id: Scalar::zero(), c_x: Scalar::zero(), c_e: Scalar::one() }
    }

    /// `X^-1 = X - (q - q^-1)(1 - e)`.
    pub fn x_inv() -> Self {
        let z = Scalar::z();
        Bmw2 { c_id: -z.clone(), c_x: Scalar::one(), c_e: z }
    }
}

impl Mul for &Bmw2 {
    type Output = Bmw2;
    fn mul(self, o: &Bmw2) -> Bmw2 {
        // X^2 = 1 + z X - z s^-1 e, X e = e X = s^-1 e, e^2 = delta e
        let z = Scalar::z();
        let sinv = Scalar::var_pow(Var::S, -1);
        let xx = &self.c_x * &o.c_x;
        let c_id = &self.c_id * &o.c_id + &xx;
        let c_x = &self.c_id * &o.c_x + &self.c_x * &o.c_id + &xx * &z;
        let c_e = &self.c_id * &o.c_e
            + &self.c_e * &o.c_id
            + (&self.c_x * &o.c_e + &self.c_e * &o.c_x) * &sinv
            + &self.c_e * &o.c_e * delta_kauffman(Var::S)
            - xx * z * sinv;
        Bmw2 { c_id, c_x, c_e }
    }
}

/// Two strands of different colors; crossings between them are
/// transparent, so the algebra is one-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedPair2 {
    pub c_id: Scalar,
}

impl Mul for &MixedPair2 {
    type Output = MixedPair2;
    fn mul(self, o: &MixedPair2) -> MixedPair2 {
        MixedPair2 { c_id: &self.c_id * &o.c_id }
    }
}

impl Neg for Hecke2 {
    type Output = Hecke2;
    fn neg(self) -> Hecke2 {
        Hecke2 { c_id: -self.c_id, c_x: -self.c_x }
    }
}

/// 2-strand source generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    PosCross,
    NegCross,
    Identity,
    Turnback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Skein,
    PosTwist,
    NegTwist,
    Invertibility,
    Zigzag,
}

impl Relation {
    pub const ALL: [Relation; 5] =
        [Relation::Skein, Relation::PosTwist, Relation::NegTwist, Relation::Invertibility, Relation::Zigzag];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Skein => "skein",
            Relation::PosTwist => "pos_twist",
            Relation::NegTwist => "neg_twist",
            Relation::Invertibility => "invertibility",
            Relation::Zigzag => "zigzag",
        }
    }

    pub fn from_name(name: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.name() == name)
    }
}

/// Source points of the 2-strand generators: upward `t` strands for φ,
/// unoriented `s` strands otherwise.
fn source_point(spec: &FunctorSpec) -> Point {
    if spec.oriented_source() {
        Point::up(Var::T)
    } else {
        Point::unoriented(Var::S)
    }
}

fn input_pairs(spec: &FunctorSpec) -> Vec<Pair> {
    let a = spec.alphabet(source_point(spec));
    let mut out = Vec::new();
    for &x in &a {
        for &y in &a {
            out.push((x, y));
        }
    }
    out
}

fn add_terms(m: &mut BlockMatrix, input: Pair, terms: Vec<crate::functors::LocalTerm>, scale: &Scalar) {
    for t in terms {
        let out = (t.out[0], t.out[1]);
        let c = &t.coeff * scale;
        match t.fragment.as_slice() {
            [] => m.add_basis(input, out, Basis::Id, c),
            [Slice::Cross { kind, .. }] => m.add_crossing(input, *kind, c),
            [Slice::Cap { .. }, Slice::Cup { .. }] => m.add_basis(input, out, Basis::Turnback, c),
            other => panic!("unexpected fragment {:?}", other),
        }
    }
}

fn cup_slice(spec: &FunctorSpec, ends: Option<Chirality>) -> Slice {
    let color = if spec.oriented_source() { Var::T } else { Var::S };
    Slice::Cup { pos: 0, chirality: if spec.oriented_source() { ends } else { None }, color }
}

fn cap_slice(spec: &FunctorSpec, ends: Option<Chirality>) -> Slice {
    Slice::Cap { pos: 0, chirality: if spec.oriented_source() { ends } else { None } }
}

/// Image of a 2-strand source generator as a block matrix.
pub fn functor_block(spec: &FunctorSpec, generator: Generator) -> Result<BlockMatrix, FunctorError> {
    let pairs = input_pairs(spec);
    let mut m = BlockMatrix::zero();
    match generator {
        Generator::Identity => return Ok(BlockMatrix::identity(&pairs)),
        Generator::PosCross | Generator::NegCross => {
            let kind = if generator == Generator::PosCross { CrossKind::Pos } else { CrossKind::Neg };
            let slice = Slice::Cross { pos: 0, kind };
            for &p in &pairs {
                add_terms(&mut m, p, local_terms(spec, &slice, &[p.0, p.1])?, &Scalar::one());
            }
        }
        Generator::Turnback => {
            if spec.oriented_source() {
                // Upward parallel strands cannot be capped.
                return Ok(m);
            }
            let cups = local_terms(spec, &cup_slice(spec, None), &[])?;
            for &p in &pairs {
                for cap in local_terms(spec, &cap_slice(spec, None), &[p.0, p.1])? {
                    for cup in &cups {
                        m.add_basis(p, (cup.out[0], cup.out[1]), Basis::Turnback, &cap.coeff * &cup.coeff);
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Right partial trace of a block matrix, closing the right strand with
/// the functor image of a cup below and a cap above. Returns the 1-strand
/// result as a map from state to scalar.
fn right_trace(spec: &FunctorSpec, m: &BlockMatrix) -> Result<BTreeMap<(Point, Point), Scalar>, FunctorError> {
    // The closing arc carries the upward strand on its left.
    let cup = cup_slice(spec, Some(Chirality::Cw));
    let cap = cap_slice(spec, Some(Chirality::Cw));
    let mut out: BTreeMap<(Point, Point), Scalar> = BTreeMap::new();
    for cup_t in local_terms(spec, &cup, &[])? {
        let (y, w) = (cup_t.out[0], cup_t.out[1]);
        let cap_c: Scalar = local_terms(spec, &cap, &[y, w])?.into_iter().map(|t| t.coeff).sum();
        if cap_c.is_zero() {
            continue;
        }
        let arc = &cup_t.coeff * &cap_c;
        for (&(i, o), e) in &m.blocks {
            if i.1 != y || o.1 != y {
                continue;
            }
            let (x, x2) = (i.0, o.0);
            let mut v = Scalar::zero();
            if x == x2 {
                v = v + &e.id * circle(y);
            }
            if x == y && x2 == y {
                v = v + &e.cross * Scalar::var(framing(y));
            }
            if closable(i) && closable(o) {
                v = v + e.turnback.clone();
            }
            let entry = out.entry((x, x2)).or_insert_with(Scalar::zero);
            *entry = &*entry + &(&arc * &v);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Composite of a cap at `cap_pos` and a cup at `cup_pos` applied to one
/// strand in state `x`: the two snake identities.
fn snakes(spec: &FunctorSpec, x: Point) -> Result<Vec<BTreeMap<Point, Scalar>>, FunctorError> {
    let src = if spec.oriented_source() { x.orient } else { Orient::Unoriented };
    let rev = src.reversed();
    let mut res = Vec::new();
    // Cup to the right, cap on the left pair.
    let cup = cup_slice(spec, Chirality::from_ends(rev, src));
    let cap = cap_slice(spec, Chirality::from_ends(src, rev));
    let mut m = BTreeMap::new();
    for c in local_terms(spec, &cup, &[])? {
        for k in local_terms(spec, &cap, &[x, c.out[0]])? {
            let e = m.entry(c.out[1]).or_insert_with(Scalar::zero);
            *e = &*e + &(&c.coeff * &k.coeff);
        }
    }
    res.push(m);
    // Cup to the left, cap on the right pair.
    let cup = cup_slice(spec, Chirality::from_ends(src, rev));
    let cap = cap_slice(spec, Chirality::from_ends(rev, src));
    let mut m = BTreeMap::new();
    for c in local_terms(spec, &cup, &[])? {
        for k in local_terms(spec, &cap, &[c.out[1], x])? {
            let e = m.entry(c.out[0]).or_insert_with(Scalar::zero);
            *e = &*e + &(&c.coeff * &k.coeff);
        }
    }
    res.push(m);
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub functor: FunctorId,
    pub relation: Relation,
    pub holds: bool,
    pub residual: BlockMatrix,
    /// Nonzero residual entries of 1-strand checks, as text.
    pub residual_1: Vec<String>,
}

/// Flat record for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub functor: String,
    pub relation: String,
    pub holds: bool,
    pub residual: Vec<String>,
}

impl RelationReport {
    pub fn record(&self) -> RelationRecord {
        let mut residual: Vec<String> = self.residual.to_string().lines().map(str::to_string).collect();
        residual.extend(self.residual_1.iter().cloned());
        RelationRecord {
            functor: self.functor.name().to_string(),
            relation: self.relation.name().to_string(),
            holds: self.holds,
            residual,
        }
    }
}

/// Source framing value after the source binding.
fn source_framing(spec: &FunctorSpec) -> Scalar {
    let v = Scalar::var(spec.source_var());
    v.substitute(&spec.source_binding()).expect("unit monomial binding")
}

/// Checks one defining relation of the source category on the functor's
/// image, exactly.
pub fn check_relation(spec: &FunctorSpec, relation: Relation) -> Result<RelationReport, FunctorError> {
    let tb = spec.target_binding();
    let pos = functor_block(spec, Generator::PosCross)?;
    let neg = functor_block(spec, Generator::NegCross)?;
    let id = functor_block(spec, Generator::Identity)?;
    let z = Scalar::z();
    let mut residual_1 = Vec::new();
    let residual = match relation {
        Relation::Skein => {
            let rhs = if spec.oriented_source() {
                id.scaled(&z)
            } else {
                (&id - &functor_block(spec, Generator::Turnback)?).scaled(&z)
            };
            &(&pos - &neg) - &rhs
        }
        Relation::Invertibility => {
            let a = &pos.after(&neg) - &id;
            let b = &neg.after(&pos) - &id;
            &a + &b
        }
        Relation::PosTwist | Relation::NegTwist => {
            let (m, v) = if relation == Relation::PosTwist {
                (&pos, source_framing(spec))
            } else {
                (&neg, monomial_inverse(&source_framing(spec)))
            };
            let tr = right_trace(spec, m)?;
            for x in spec.alphabet(source_point(spec)) {
                let got = tr.get(&(x, x)).cloned().unwrap_or_else(Scalar::zero);
                let diff = got - v.clone();
                let diff = if tb.is_empty() { diff } else { diff.substitute(&tb).expect("unit monomial binding") };
                if !diff.is_zero() {
                    residual_1.push(format!("{}: {}", point_name(&x), diff));
                }
            }
            for ((x, x2), val) in &tr {
                if x != x2 {
                    residual_1.push(format!("{} -> {}: {}", point_name(x), point_name(x2), val));
                }
            }
            BlockMatrix::zero()
        }
        Relation::Zigzag => {
            let mut states = spec.alphabet(source_point(spec));
            if spec.oriented_source() {
                states.extend(spec.alphabet(Point::down(Var::T)));
            }
            for x in states {
                for m in snakes(spec, x)? {
                    for (w, c) in m {
                        let expected = if w == x { Scalar::one() } else { Scalar::zero() };
                        let diff = c - expected;
                        if !diff.is_zero() {
                            residual_1.push(format!("{} -> {}: {}", point_name(&x), point_name(&w), diff));
                        }
                    }
                }
            }
            BlockMatrix::zero()
        }
    };
    let residual = residual.substituted(&tb);
    Ok(RelationReport {
        functor: spec.id,
        relation,
        holds: residual.is_zero() && residual_1.is_empty(),
        residual,
        residual_1,
    })
}

/// Inverse of a unit monomial.
fn monomial_inverse(x: &Scalar) -> Scalar {
    let (sign, m) = x.numerator().as_unit_monomial().expect("unit monomial");
    let powers: Vec<(Var, i32)> =
        [Var::Q, Var::T, Var::S, Var::U, Var::A].into_iter().map(|v| (v, -m.exp(v))).collect();
    Scalar::from_int(sign as i64) * Scalar::mono(&powers)
}
