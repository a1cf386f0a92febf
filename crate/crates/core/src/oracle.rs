//! Jones polynomial by the Kauffman bracket state sum, kept independent of
//! the skein evaluator: every crossing of a word is resolved both ways and
//! loops are counted directly, with plain integer arithmetic in `A`.

use std::collections::BTreeMap;

use crate::diagram::{CrossKind, DiagramError, MorseWord, Slice};
use crate::scalar::{LaurentPoly, Monomial, Scalar, Var};
use crate::skein::{normalize_unframed, SkeinError};

/// Laurent polynomial in `A`, exponent to coefficient.
pub type APoly = BTreeMap<i32, i64>;

fn add_term(p: &mut APoly, e: i32, c: i64) {
    let x = p.entry(e).or_insert(0);
    *x += c;
    if *x == 0 {
        p.remove(&e);
    }
}

fn mul(a: &APoly, b: &APoly) -> APoly {
    let mut out = APoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_term(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

fn pow(a: &APoly, n: usize) -> APoly {
    (0..n).fold(APoly::from([(0, 1)]), |acc, _| mul(&acc, a))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Number of loops after resolving crossing `i` by the identity smoothing
/// when bit `i` of `state` is 0 and by the turnback when it is 1.
fn loops(word: &MorseWord, widths: &[usize], offsets: &[usize], state: u64) -> usize {
    let n = offsets[widths.len()];
    let mut uf = UnionFind((0..n).collect());
    let mut crossing = 0;
    for (k, slice) in word.slices.iter().enumerate() {
        let (lo, hi) = (offsets[k], offsets[k + 1]);
        let w = widths[k];
        match *slice {
            Slice::Cup { pos, .. } => {
                for j in 0..w {
                    uf.union(lo + j, hi + if j < pos { j } else { j + 2 });
                }
                uf.union(hi + pos, hi + pos + 1);
            }
            Slice::Cap { pos, .. } => {
                for j in 0..w {
                    if j < pos {
                        uf.union(lo + j, hi + j);
                    } else if j > pos + 1 {
                        uf.union(lo + j, hi + j - 2);
                    }
                }
                uf.union(lo + pos, lo + pos + 1);
            }
            Slice::Cross { pos, .. } => {
                let turnback = state >> crossing & 1 == 1;
                crossing += 1;
                for j in 0..w {
                    if !turnback || (j != pos && j != pos + 1) {
                        uf.union(lo + j, hi + j);
                    }
                }
                if turnback {
                    uf.union(lo + pos, lo + pos + 1);
                    uf.union(hi + pos, hi + pos + 1);
                }
            }
        }
    }
    (0..n).filter(|&x| uf.find(x) == x).count()
}

/// The bracket `<D>` with every loop (including the last) weighted by
/// `-A^2 - A^-2`.
pub fn bracket(word: &MorseWord) -> Result<APoly, DiagramError> {
    if !word.source.is_empty() {
        return Err(DiagramError::NotClosed);
    }
    let widths: Vec<usize> = word.levels()?.iter().map(|l| l.len()).collect();
    let mut offsets = vec![0];
    for w in &widths {
        offsets.push(offsets.last().unwrap() + w);
    }
    let kinds: Vec<CrossKind> = word
        .slices
        .iter()
        .filter_map(|s| match s {
            Slice::Cross { kind, .. } => Some(*kind),
            _ => None,
        })
        .collect();
    let delta = APoly::from([(-2, -1), (2, -1)]);
    let mut total = APoly::new();
    for state in 0..1u64 << kinds.len() {
        let mut a_exp = 0;
        for (i, kind) in kinds.iter().enumerate() {
            let turnback = state >> i & 1 == 1;
            // The A-smoothing of a positive slice is the identity.
            let is_a = turnback == (*kind == CrossKind::Neg);
            a_exp += if is_a { 1 } else { -1 };
        }
        let l = loops(word, &widths, &offsets, state);
        for (e, c) in pow(&delta, l) {
            add_term(&mut total, e + a_exp, c);
        }
    }
    Ok(total)
}

/// How `A^2` maps to the Jones variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketConvention {
    /// `A^2 -> -q`
    Plus,
    /// `A^2 -> -q^-1`
    Minus,
}

/// `(-A^3)^(-w) <D>` rewritten in `q`. Fails if an odd power of `A`
/// survives, which cannot happen for a consistent writhe.
pub fn jones(word: &MorseWord, conv: BracketConvention) -> Result<Scalar, SkeinError> {
    let w = word.validate()?.writhe();
    let b = bracket(word)?;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let mut out = Scalar::zero();
    for (e, c) in b {
        let e = e - 3 * w;
        assert!(e % 2 == 0, "odd power of A in normalized bracket");
        let k = e / 2;
        let coeff = c * sign * if k % 2 == 0 { 1 } else { -1 };
        let qe = match conv {
            BracketConvention::Plus => k,
            BracketConvention::Minus => -k,
        };
        out = out + Scalar::monomial(coeff, Monomial::var(Var::Q, qe));
    }
    Ok(out)
}

/// Normalized HOMFLY in `t` with `t -> q^2`.
pub fn homfly_at_jones(word: &MorseWord) -> Result<Scalar, SkeinError> {
    let h = normalize_unframed(word, Var::T)?;
    Ok(h.substitute(&[(Var::T, LaurentPoly::term(1, Monomial::var(Var::Q, 2)))]).expect("unit monomial binding"))
}

/// A pinned comparison convention: bracket variable map plus a sign
/// `sign^(components - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pinned {
    pub conv: BracketConvention,
    pub component_sign: i64,
}

impl Pinned {
    pub fn oracle(&self, word: &MorseWord) -> Result<Scalar, SkeinError> {
        let c = word.validate()?.len();
        let j = jones(word, self.conv)?;
        let s = if c % 2 == 1 { 1 } else { self.component_sign };
        Ok(Scalar::from_int(s) * j)
    }

    pub fn matches(&self, word: &MorseWord) -> Result<bool, SkeinError> {
        Ok(self.oracle(word)? == homfly_at_jones(word)?)
    }
}

/// The unique convention under which the oracle agrees with the skein
/// evaluator on every pinning word, or `None`.
pub fn pin_convention(pinning: &[MorseWord]) -> Result<Option<Pinned>, SkeinError> {
    let mut found = None;
    for conv in [BracketConvention::Plus, BracketConvention::Minus] {
        for component_sign in [1, -1] {
            let p = Pinned { conv, component_sign };
            let mut ok = true;
            for w in pinning {
                ok &= p.matches(w)?;
            }
            if ok {
                if found.is_some() {
                    return Ok(None);
                }
                found = Some(p);
            }
        }
    }
    Ok(found)
}
