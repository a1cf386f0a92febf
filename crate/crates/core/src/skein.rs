//! Exact evaluation of closed words in the HOMFLY, Kauffman and mixed
//! skeins.
//!
//! Both evaluators use the descending-diagram recursion: walk the components
//! in a fixed order from fixed base points, switch the first crossing met
//! from below, and add the smoothing terms required by the skein relation.
//! A word without such crossings is a stacked framed unlink.

use std::collections::{BTreeMap, HashMap};

use parking_lot::Mutex;
use thiserror::Error;

use crate::diagram::{Chirality, ComponentMap, DiagramError, Layout, MorseWord, Orient, Point, Slice};
use crate::scalar::{LaurentPoly, Scalar, Var};

pub const DEFAULT_MAX_CROSSINGS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("word is not closed")]
    NotClosed,
    #[error("expected oriented strands only")]
    UnorientedStrand,
    #[error("expected unoriented strands only")]
    OrientedStrand,
    #[error("expected a single color, found {0:?}")]
    MixedColors(Vec<Var>),
    #[error("color {0} mixes oriented and unoriented strands or contradicts the context")]
    KindMismatch(Var),
    #[error("{count} crossings exceeds the limit of {limit} (SKEIN_MAX_CROSSINGS)")]
    TooManyCrossings { count: usize, limit: usize },
    #[error("framing variable must differ from q")]
    FramingIsQ,
}

/// Which skein a strand of a given color lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrandKind {
    Homfly,
    Kauffman,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeinKind {
    Homfly(Var),
    Kauffman(Var),
    /// Kinds per color; colors not listed take their kind from the strand
    /// orientation.
    Mixed(BTreeMap<Var, StrandKind>),
}

/// Order in which components are traversed when looking for bad crossings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pivot {
    /// Components by smallest node, each walked from that node.
    #[default]
    Ascending,
    /// Components in reverse, each walked backwards.
    Descending,
}

type MemoKey = (MorseWord, StrandKind, Var);

pub struct SkeinContext {
    pub kind: SkeinKind,
    pub pivot: Pivot,
    pub max_crossings: usize,
    memo: Mutex<HashMap<MemoKey, Scalar>>,
}

/// `(v - v^-1)/(q - q^-1)`: the circle value forced by the skein relation
/// applied to a curl.
pub fn delta_homfly(v: Var) -> Scalar {
    (Scalar::var(v) - Scalar::var_pow(v, -1)) * Scalar::inv_z_pow(1)
}

/// `1 + (s - s^-1)/(q - q^-1)`: the circle value forced by the four-term
/// relation applied to a curl.
pub fn delta_kauffman(s: Var) -> Scalar {
    Scalar::one() + delta_homfly(s)
}

pub fn max_crossings_from_env() -> usize {
    std::env::var("SKEIN_MAX_CROSSINGS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CROSSINGS)
}

impl SkeinContext {
    pub fn new(kind: SkeinKind) -> Self {
        SkeinContext {
            kind,
            pivot: Pivot::default(),
            max_crossings: max_crossings_from_env(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn homfly(v: Var) -> Self {
        Self::new(SkeinKind::Homfly(v))
    }

    pub fn kauffman(s: Var) -> Self {
        Self::new(SkeinKind::Kauffman(s))
    }

    pub fn mixed() -> Self {
        Self::new(SkeinKind::Mixed(BTreeMap::new()))
    }

    pub fn with_pivot(mut self, pivot: Pivot) -> Self {
        self.pivot = pivot;
        self
    }

    pub fn with_max_crossings(mut self, max: usize) -> Self {
        self.max_crossings = max;
        self
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().len()
    }

    /// Evaluates a closed word according to the context kind.
    pub fn eval(&self, word: &MorseWord) -> Result<Scalar, SkeinError> {
        if !word.source.is_empty() {
            return Err(SkeinError::NotClosed);
        }
        let levels = word.levels()?;
        let count = word.crossing_count();
        if count > self.max_crossings {
            return Err(SkeinError::TooManyCrossings { count, limit: self.max_crossings });
        }
        let points: Vec<Point> = levels.into_iter().flatten().collect();
        match &self.kind {
            SkeinKind::Homfly(v) => {
                check_framing(*v)?;
                if points.iter().any(|p| !p.orient.is_oriented()) {
                    return Err(SkeinError::UnorientedStrand);
                }
                single_color(&points)?;
                self.eval_mono(word, StrandKind::Homfly, *v)
            }
            SkeinKind::Kauffman(s) => {
                check_framing(*s)?;
                if points.iter().any(|p| p.orient.is_oriented()) {
                    return Err(SkeinError::OrientedStrand);
                }
                single_color(&points)?;
                self.eval_mono(word, StrandKind::Kauffman, *s)
            }
            SkeinKind::Mixed(kinds) => {
                let mut total = Scalar::one();
                for color in word.colors()? {
                    let oriented = points.iter().filter(|p| p.color == color).map(|p| p.orient.is_oriented());
                    let (mut any_o, mut any_u) = (false, false);
                    for o in oriented {
                        any_o |= o;
                        any_u |= !o;
                    }
                    let kind = if any_o { StrandKind::Homfly } else { StrandKind::Kauffman };
                    if (any_o && any_u) || kinds.get(&color).is_some_and(|k| *k != kind) {
                        return Err(SkeinError::KindMismatch(color));
                    }
                    let sub = word.subdiagram_by_color(color)?;
                    total = total * self.eval_mono(&sub, kind, color)?;
                }
                Ok(total)
            }
        }
    }

    fn eval_mono(&self, word: &MorseWord, kind: StrandKind, v: Var) -> Result<Scalar, SkeinError> {
        let key = (word.clone(), kind, v);
        if let Some(x) = self.memo.lock().get(&key) {
            return Ok(x.clone());
        }
        let layout = Layout::new(word)?;
        let cmap = layout.component_map();
        let value = match first_bad_crossing(&layout, &cmap, self.pivot) {
            None => {
                let delta = match kind {
                    StrandKind::Homfly => delta_homfly(v),
                    StrandKind::Kauffman => delta_kauffman(v),
                };
                delta.pow(cmap.len() as u32) * Scalar::var_pow(v, cmap.total_self_writhe())
            }
            Some(c) => {
                let info = layout.crossings[c];
                let k = info.slice;
                let levels = word.levels()?;
                let (l, r) = (levels[k][info.pos], levels[k][info.pos + 1]);
                let switched = replace_slice(word, k, &[Slice::Cross { pos: info.pos, kind: info.kind.flipped() }]);
                let z = Scalar::z();
                match kind {
                    StrandKind::Homfly => {
                        let smoothed = if l.orient == r.orient {
                            replace_slice(word, k, &[])
                        } else {
                            replace_slice(word, k, &turnback(info.pos, l, r))
                        };
                        let sign = Scalar::from_int(cmap.crossing_signs[c] as i64);
                        let (a, b) =
                            rayon::join(|| self.eval_mono(&switched, kind, v), || self.eval_mono(&smoothed, kind, v));
                        a? + sign * z * b?
                    }
                    StrandKind::Kauffman => {
                        let id = replace_slice(word, k, &[]);
                        let e = replace_slice(word, k, &turnback(info.pos, l, r));
                        let (a, (b, c)) = rayon::join(
                            || self.eval_mono(&switched, kind, v),
                            || rayon::join(|| self.eval_mono(&id, kind, v), || self.eval_mono(&e, kind, v)),
                        );
                        let sign = Scalar::from_int(info.kind.sign() as i64);
                        a? + sign * z * (b? - c?)
                    }
                }
            }
        };
        self.memo.lock().insert(key, value.clone());
        Ok(value)
    }
}

fn check_framing(v: Var) -> Result<(), SkeinError> {
    if v == Var::Q {
        Err(SkeinError::FramingIsQ)
    } else {
        Ok(())
    }
}

fn single_color(points: &[Point]) -> Result<(), SkeinError> {
    let mut colors: Vec<Var> = points.iter().map(|p| p.color).collect();
    colors.sort();
    colors.dedup();
    if colors.len() > 1 {
        Err(SkeinError::MixedColors(colors))
    } else {
        Ok(())
    }
}

/// Cap joining the two bottom points of a crossing followed by a cup
/// producing its two top points.
fn turnback(pos: usize, l: Point, r: Point) -> [Slice; 2] {
    [
        Slice::Cap { pos, chirality: Chirality::from_ends(l.orient, r.orient) },
        Slice::Cup { pos, chirality: Chirality::from_ends(r.orient, l.orient), color: l.color },
    ]
}

fn replace_slice(word: &MorseWord, k: usize, with: &[Slice]) -> MorseWord {
    let mut slices = Vec::with_capacity(word.slices.len() + with.len());
    slices.extend_from_slice(&word.slices[..k]);
    slices.extend_from_slice(with);
    slices.extend_from_slice(&word.slices[k + 1..]);
    MorseWord::new(word.source.clone(), slices)
}

/// Crossings met along a closed strand, as `(crossing, passes over)`.
fn crossing_visits(layout: &Layout, start: usize, upward: bool) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    let (mut cur, mut dir) = (start, upward);
    loop {
        let edge = if dir { layout.up[cur] } else { layout.down[cur] };
        let next = edge.to.expect("closed word");
        out.extend(edge.crossing);
        let (l0, l1) = (layout.level_of[cur], layout.level_of[next]);
        dir = if l0 == l1 { !dir } else { l1 > l0 };
        cur = next;
        if cur == start {
            return out;
        }
    }
}

fn first_bad_crossing(layout: &Layout, cmap: &ComponentMap, pivot: Pivot) -> Option<usize> {
    let mut seen = vec![false; layout.crossings.len()];
    let mut order: Vec<usize> = (0..cmap.len()).collect();
    if pivot == Pivot::Descending {
        order.reverse();
    }
    for c in order {
        let start = cmap.components[c].nodes[0];
        let mut upward = layout.points[start].orient != Orient::Down;
        if pivot == Pivot::Descending {
            upward = !upward;
        }
        for (x, over) in crossing_visits(layout, start, upward) {
            if !seen[x] {
                if !over {
                    return Some(x);
                }
                seen[x] = true;
            }
        }
    }
    None
}

pub fn eval_homfly(word: &MorseWord, v: Var) -> Result<Scalar, SkeinError> {
    SkeinContext::homfly(v).eval(word)
}

/// Kauffman invariant with framing variable `s`.
pub fn eval_kauffman(word: &MorseWord) -> Result<Scalar, SkeinError> {
    SkeinContext::kauffman(Var::S).eval(word)
}

pub fn eval_mixed(word: &MorseWord, ctx: &SkeinContext) -> Result<Scalar, SkeinError> {
    ctx.eval(word)
}

/// `v^(-writhe)` times the framed invariant; unchanged by adding curls.
pub fn normalize_unframed(word: &MorseWord, v: Var) -> Result<Scalar, SkeinError> {
    let h = eval_homfly(word, v)?;
    let writhe = word.validate()?.writhe();
    Ok(Scalar::var_pow(v, -writhe) * h)
}

/// Binds `v` to `q`.
pub fn specialize_to_q(x: &Scalar, v: Var) -> Scalar {
    x.substitute(&[(v, LaurentPoly::var(Var::Q))]).expect("unit monomial binding")
}
