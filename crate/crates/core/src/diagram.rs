//! Morse presentations of framed tangles.
//!
//! A [`MorseWord`] is read bottom to top: a source boundary followed by
//! elementary slices. Every point between two slices carries an
//! orientation (up, down or unoriented) and a color, which doubles as the
//! framing variable of the skein it is evaluated in.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Var;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orient {
    Up,
    Down,
    Unoriented,
}

impl Orient {
    pub fn reversed(self) -> Orient {
        match self {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
            Orient::Unoriented => Orient::Unoriented,
        }
    }

    pub fn is_oriented(self) -> bool {
        self != Orient::Unoriented
    }
}

/// One entry of a boundary object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub orient: Orient,
    pub color: Var,
}

impl Point {
    pub fn new(orient: Orient, color: Var) -> Self {
        Point { orient, color }
    }

    pub fn up(color: Var) -> Self {
        Point::new(Orient::Up, color)
    }

    pub fn down(color: Var) -> Self {
        Point::new(Orient::Down, color)
    }

    pub fn unoriented(color: Var) -> Self {
        Point::new(Orient::Unoriented, color)
    }
}

/// Orientation of a cup or cap, as seen when the arc is traversed.
///
/// A clockwise cup has its left end going up and its right end going
/// down; a clockwise cap receives the upgoing strand on its left. The
/// counterclockwise variants are the reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Chirality {
    Cw,
    Ccw,
}

impl Chirality {
    /// Orientations of the (left, right) ends.
    pub fn ends(self) -> (Orient, Orient) {
        match self {
            Chirality::Cw => (Orient::Up, Orient::Down),
            Chirality::Ccw => (Orient::Down, Orient::Up),
        }
    }

    pub fn from_ends(left: Orient, right: Orient) -> Option<Chirality> {
        match (left, right) {
            (Orient::Up, Orient::Down) => Some(Chirality::Cw),
            (Orient::Down, Orient::Up) => Some(Chirality::Ccw),
            _ => None,
        }
    }
}

/// Crossing type of a slice. `Pos` means the strand entering bottom-left
/// (and leaving top-right) passes over; with both strands going up this is
/// a positive crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CrossKind {
    Pos,
    Neg,
}

impl CrossKind {
    pub fn flipped(self) -> CrossKind {
        match self {
            CrossKind::Pos => CrossKind::Neg,
            CrossKind::Neg => CrossKind::Pos,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            CrossKind::Pos => 1,
            CrossKind::Neg => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Slice {
    /// Local minimum creating points `pos, pos + 1`. `None` chirality makes
    /// an unoriented pair.
    Cup { pos: usize, chirality: Option<Chirality>, color: Var },
    /// Local maximum joining points `pos, pos + 1`.
    Cap { pos: usize, chirality: Option<Chirality> },
    /// Crossing of the strands at `pos, pos + 1`.
    Cross { pos: usize, kind: CrossKind },
}

impl Slice {
    pub fn pos(&self) -> usize {
        match *self {
            Slice::Cup { pos, .. } | Slice::Cap { pos, .. } | Slice::Cross { pos, .. } => pos,
        }
    }

    pub fn with_pos(self, pos: usize) -> Slice {
        match self {
            Slice::Cup { chirality, color, .. } => Slice::Cup { pos, chirality, color },
            Slice::Cap { chirality, .. } => Slice::Cap { pos, chirality },
            Slice::Cross { kind, .. } => Slice::Cross { pos, kind },
        }
    }

    pub fn shifted(self, by: usize) -> Slice {
        self.with_pos(self.pos() + by)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("slice {slice}: position {pos} out of range for width {width}")]
    Width { slice: usize, pos: usize, width: usize },
    #[error("slice {slice}: orientation mismatch")]
    Orientation { slice: usize },
    #[error("slice {slice}: color mismatch ({left} vs {right})")]
    Color { slice: usize, left: Var, right: Var },
    #[error("boundary mismatch when composing")]
    Boundary,
    #[error("word is not closed")]
    NotClosed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorseWord {
    pub source: Vec<Point>,
    pub slices: Vec<Slice>,
}

impl MorseWord {
    pub fn new(source: Vec<Point>, slices: Vec<Slice>) -> Self {
        MorseWord { source, slices }
    }

    pub fn closed(slices: Vec<Slice>) -> Self {
        MorseWord { source: Vec::new(), slices }
    }

    pub fn empty() -> Self {
        MorseWord::default()
    }

    pub fn crossing_count(&self) -> usize {
        self.slices.iter().filter(|s| matches!(s, Slice::Cross { .. })).count()
    }

    /// Runs the orientation and color bookkeeping and returns every level.
    pub fn levels(&self) -> Result<Vec<Vec<Point>>, DiagramError> {
        let mut levels = Vec::with_capacity(self.slices.len() + 1);
        let mut cur = self.source.clone();
        levels.push(cur.clone());
        for (k, slice) in self.slices.iter().enumerate() {
            let width = cur.len();
            match *slice {
                Slice::Cup { pos, chirality, color } => {
                    if pos > width {
                        return Err(DiagramError::Width { slice: k, pos, width });
                    }
                    let (l, r) = match chirality {
                        Some(c) => c.ends(),
                        None => (Orient::Unoriented, Orient::Unoriented),
                    };
                    cur.splice(pos..pos, [Point::new(l, color), Point::new(r, color)]);
                }
                Slice::Cap { pos, chirality } => {
                    if pos + 1 >= width {
                        return Err(DiagramError::Width { slice: k, pos, width });
                    }
                    let (l, r) = (cur[pos], cur[pos + 1]);
                    if l.color != r.color {
                        return Err(DiagramError::Color { slice: k, left: l.color, right: r.color });
                    }
                    let ok = match chirality {
                        Some(c) => c.ends() == (l.orient, r.orient),
                        None => l.orient == Orient::Unoriented && r.orient == Orient::Unoriented,
                    };
                    if !ok {
                        return Err(DiagramError::Orientation { slice: k });
                    }
                    cur.drain(pos..pos + 2);
                }
                Slice::Cross { pos, .. } => {
                    if pos + 1 >= width {
                        return Err(DiagramError::Width { slice: k, pos, width });
                    }
                    cur.swap(pos, pos + 1);
                }
            }
            levels.push(cur.clone());
        }
        Ok(levels)
    }

    pub fn target(&self) -> Result<Vec<Point>, DiagramError> {
        Ok(self.levels()?.pop().unwrap_or_default())
    }

    pub fn is_closed(&self) -> bool {
        self.source.is_empty() && matches!(self.target(), Ok(t) if t.is_empty())
    }

    pub fn validate(&self) -> Result<ComponentMap, DiagramError> {
        Ok(Layout::new(self)?.component_map())
    }

    /// Stacks `top` on `bottom`.
    pub fn compose(top: &MorseWord, bottom: &MorseWord) -> Result<MorseWord, DiagramError> {
        if bottom.target()? != top.source {
            return Err(DiagramError::Boundary);
        }
        top.levels()?;
        let mut slices = bottom.slices.clone();
        slices.extend_from_slice(&top.slices);
        Ok(MorseWord { source: bottom.source.clone(), slices })
    }

    /// Disjoint union of two closed words, placed one above the other.
    pub fn disjoint_union(a: &MorseWord, b: &MorseWord) -> Result<MorseWord, DiagramError> {
        if !a.is_closed() || !b.is_closed() {
            return Err(DiagramError::NotClosed);
        }
        let mut slices = a.slices.clone();
        slices.extend_from_slice(&b.slices);
        Ok(MorseWord::closed(slices))
    }

    pub fn mirror(&self) -> MorseWord {
        let slices = self
            .slices
            .iter()
            .map(|s| match *s {
                Slice::Cross { pos, kind } => Slice::Cross { pos, kind: kind.flipped() },
                other => other,
            })
            .collect();
        MorseWord { source: self.source.clone(), slices }
    }

    /// Forgets orientations and recolors every strand with `color`.
    pub fn unoriented(&self, color: Var) -> MorseWord {
        let source = self.source.iter().map(|_| Point::unoriented(color)).collect();
        let slices = self
            .slices
            .iter()
            .map(|s| match *s {
                Slice::Cup { pos, .. } => Slice::Cup { pos, chirality: None, color },
                Slice::Cap { pos, .. } => Slice::Cap { pos, chirality: None },
                other => other,
            })
            .collect();
        MorseWord { source, slices }
    }

    /// Recolors every strand, keeping orientations.
    pub fn recolored(&self, color: Var) -> MorseWord {
        let source = self.source.iter().map(|p| Point::new(p.orient, color)).collect();
        let slices = self
            .slices
            .iter()
            .map(|s| match *s {
                Slice::Cup { pos, chirality, .. } => Slice::Cup { pos, chirality, color },
                other => other,
            })
            .collect();
        MorseWord { source, slices }
    }

    /// The closed word made of the components of one color. Slices touching
    /// other strands are dropped, which turns mixed crossings into
    /// identities.
    pub fn subdiagram_by_color(&self, color: Var) -> Result<MorseWord, DiagramError> {
        if !self.source.is_empty() {
            return Err(DiagramError::NotClosed);
        }
        let levels = self.levels()?;
        let mut slices = Vec::new();
        for (k, slice) in self.slices.iter().enumerate() {
            let below = &levels[k];
            let above = &levels[k + 1];
            let kept_before = |lvl: &[Point], pos: usize| lvl[..pos].iter().filter(|p| p.color == color).count();
            match *slice {
                Slice::Cup { pos, color: c, .. } => {
                    if c == color {
                        slices.push(slice.with_pos(kept_before(above, pos)));
                    }
                }
                Slice::Cap { pos, .. } => {
                    if below[pos].color == color {
                        slices.push(slice.with_pos(kept_before(below, pos)));
                    }
                }
                Slice::Cross { pos, .. } => {
                    if below[pos].color == color && below[pos + 1].color == color {
                        slices.push(slice.with_pos(kept_before(below, pos)));
                    }
                }
            }
        }
        Ok(MorseWord::closed(slices))
    }

    /// Colors present on the word's strands, sorted.
    pub fn colors(&self) -> Result<Vec<Var>, DiagramError> {
        let mut cs: Vec<Var> = self.levels()?.into_iter().flatten().map(|p| p.color).collect();
        cs.sort();
        cs.dedup();
        Ok(cs)
    }

    /// Inserts a curl of writhe `kind.sign()` on the left strand of the
    /// first cup. The word must start with a cup.
    pub fn with_curl(&self, kind: CrossKind) -> Result<MorseWord, DiagramError> {
        let levels = self.levels()?;
        let Some(&Slice::Cup { pos, .. }) = self.slices.first() else {
            return Err(DiagramError::NotClosed);
        };
        let p = levels[1][pos];
        let chirality = Chirality::from_ends(p.orient, p.orient.reversed());
        let mut slices = vec![self.slices[0]];
        slices.extend([
            Slice::Cup { pos: pos + 1, chirality, color: p.color },
            Slice::Cross { pos, kind },
            Slice::Cap { pos: pos + 1, chirality },
        ]);
        slices.extend_from_slice(&self.slices[1..]);
        Ok(MorseWord { source: self.source.clone(), slices })
    }

    /// Rewrites every crossing whose strands are not both going up into an
    /// upward crossing conjugated by cups and caps. The result is planar
    /// isotopic to the input, so framed invariants are unchanged.
    pub fn with_upward_crossings(&self) -> Result<MorseWord, DiagramError> {
        let levels = self.levels()?;
        let mut slices = Vec::with_capacity(self.slices.len());
        for (k, slice) in self.slices.iter().enumerate() {
            let Slice::Cross { pos: i, kind } = *slice else {
                slices.push(*slice);
                continue;
            };
            let (l, r) = (levels[k][i], levels[k][i + 1]);
            let (cl, cr) = (l.color, r.color);
            use Chirality::*;
            use Orient::*;
            match (l.orient, r.orient) {
                (Up, Up) | (Unoriented, _) | (_, Unoriented) => slices.push(*slice),
                (Up, Down) => slices.extend([
                    Slice::Cup { pos: i, chirality: Some(Ccw), color: cr },
                    Slice::Cross { pos: i + 1, kind: kind.flipped() },
                    Slice::Cap { pos: i + 2, chirality: Some(Cw) },
                ]),
                (Down, Up) => slices.extend([
                    Slice::Cup { pos: i + 2, chirality: Some(Cw), color: cl },
                    Slice::Cross { pos: i + 1, kind: kind.flipped() },
                    Slice::Cap { pos: i, chirality: Some(Ccw) },
                ]),
                (Down, Down) => slices.extend([
                    Slice::Cup { pos: i + 2, chirality: Some(Cw), color: cl },
                    Slice::Cup { pos: i + 3, chirality: Some(Cw), color: cr },
                    Slice::Cross { pos: i + 2, kind },
                    Slice::Cap { pos: i + 1, chirality: Some(Ccw) },
                    Slice::Cap { pos: i, chirality: Some(Ccw) },
                ]),
            }
        }
        Ok(MorseWord { source: self.source.clone(), slices })
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::render_morse(self))
    }
}

/// A step of a strand walk arriving at a crossing slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub to: Option<usize>,
    /// `(crossing index, passes over)` when the edge runs through a crossing.
    pub crossing: Option<(usize, bool)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub slice: usize,
    pub pos: usize,
    pub kind: CrossKind,
    /// Node ids at the bottom-left and bottom-right of the crossing.
    pub lower_left: usize,
    pub lower_right: usize,
}

/// Node graph of a Morse word: one node per point per level, each with one
/// edge leaving upward and one leaving downward.
#[derive(Clone, Debug)]
pub struct Layout {
    pub points: Vec<Point>,
    pub level_of: Vec<usize>,
    offsets: Vec<usize>,
    pub up: Vec<Edge>,
    pub down: Vec<Edge>,
    pub crossings: Vec<CrossingInfo>,
}

/// A visit to a node during a walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub node: usize,
    pub upward: bool,
    pub crossing: Option<(usize, bool)>,
}

impl Layout {
    pub fn new(word: &MorseWord) -> Result<Layout, DiagramError> {
        let levels = word.levels()?;
        let mut offsets = Vec::with_capacity(levels.len() + 1);
        let mut points = Vec::new();
        let mut level_of = Vec::new();
        for (l, lvl) in levels.iter().enumerate() {
            offsets.push(points.len());
            points.extend_from_slice(lvl);
            level_of.extend(std::iter::repeat_n(l, lvl.len()));
        }
        offsets.push(points.len());
        let n = points.len();
        let none = Edge { to: None, crossing: None };
        let mut up = vec![none; n];
        let mut down = vec![none; n];
        let mut crossings = Vec::new();
        let node = |lvl: usize, pos: usize| offsets[lvl] + pos;
        let link = |a: usize, b: usize, crossing: Option<(usize, bool)>, up: &mut Vec<Edge>, down: &mut Vec<Edge>| {
            up[a] = Edge { to: Some(b), crossing };
            down[b] = Edge { to: Some(a), crossing };
        };
        for (k, slice) in word.slices.iter().enumerate() {
            let width = levels[k].len();
            let (lo, hi) = (k, k + 1);
            match *slice {
                Slice::Cup { pos, .. } => {
                    for j in 0..width {
                        let to = if j < pos { j } else { j + 2 };
                        link(node(lo, j), node(hi, to), None, &mut up, &mut down);
                    }
                    let (a, b) = (node(hi, pos), node(hi, pos + 1));
                    down[a] = Edge { to: Some(b), crossing: None };
                    down[b] = Edge { to: Some(a), crossing: None };
                }
                Slice::Cap { pos, .. } => {
                    for j in 0..width {
                        if j == pos || j == pos + 1 {
                            continue;
                        }
                        let to = if j < pos { j } else { j - 2 };
                        link(node(lo, j), node(hi, to), None, &mut up, &mut down);
                    }
                    let (a, b) = (node(lo, pos), node(lo, pos + 1));
                    up[a] = Edge { to: Some(b), crossing: None };
                    up[b] = Edge { to: Some(a), crossing: None };
                }
                Slice::Cross { pos, kind } => {
                    let c = crossings.len();
                    crossings.push(CrossingInfo {
                        slice: k,
                        pos,
                        kind,
                        lower_left: node(lo, pos),
                        lower_right: node(lo, pos + 1),
                    });
                    let ll_over = kind == CrossKind::Pos;
                    for j in 0..width {
                        if j == pos {
                            link(node(lo, j), node(hi, j + 1), Some((c, ll_over)), &mut up, &mut down);
                        } else if j == pos + 1 {
                            link(node(lo, j), node(hi, j - 1), Some((c, !ll_over)), &mut up, &mut down);
                        } else {
                            link(node(lo, j), node(hi, j), None, &mut up, &mut down);
                        }
                    }
                }
            }
        }
        Ok(Layout { points, level_of, offsets, up, down, crossings })
    }

    pub fn node(&self, level: usize, pos: usize) -> usize {
        self.offsets[level] + pos
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    /// Walks a strand from `start`, leaving upward or downward, until it
    /// returns to `start` or runs off the boundary. The first step is the
    /// start node itself.
    pub fn walk(&self, start: usize, upward: bool) -> Vec<Step> {
        let mut steps = vec![Step { node: start, upward, crossing: None }];
        let (mut cur, mut dir) = (start, upward);
        loop {
            let edge = if dir { self.up[cur] } else { self.down[cur] };
            let Some(next) = edge.to else { break };
            let (l0, l1) = (self.level_of[cur], self.level_of[next]);
            dir = if l0 == l1 { !dir } else { l1 > l0 };
            cur = next;
            if cur == start {
                break;
            }
            steps.push(Step { node: cur, upward: dir, crossing: edge.crossing });
        }
        steps
    }

    /// Splits the nodes into components (arcs first traced from their
    /// boundary end, then closed loops), each with a traversal direction
    /// for every node.
    fn trace_components(&self) -> Vec<Vec<Step>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        // Arcs start from a source node going up or a target node going down.
        let mut starts: Vec<(usize, bool)> = Vec::new();
        for i in 0..n {
            if self.down[i].to.is_none() {
                starts.push((i, true));
            }
            if self.up[i].to.is_none() {
                starts.push((i, false));
            }
        }
        for i in 0..n {
            starts.push((i, true));
        }
        for (s, dir) in starts {
            if seen[s] {
                continue;
            }
            let p = self.points[s];
            // Oriented strands are walked along their orientation.
            let dir = match p.orient {
                Orient::Up => true,
                Orient::Down => false,
                Orient::Unoriented => dir,
            };
            let back = self.walk(s, !dir);
            let walk = if self.walk_is_closed(&back) {
                self.walk(s, dir)
            } else {
                let last = *back.last().unwrap();
                self.walk(last.node, !last.upward)
            };
            for st in &walk {
                seen[st.node] = true;
            }
            comps.push(walk);
        }
        comps
    }

    fn walk_is_closed(&self, walk: &[Step]) -> bool {
        let last = walk.last().unwrap();
        let e = if last.upward { self.up[last.node] } else { self.down[last.node] };
        e.to == Some(walk[0].node)
    }

    pub fn component_map(&self) -> ComponentMap {
        let comps = self.trace_components();
        let n = self.node_count();
        let mut component_of = vec![0; n];
        let mut direction = vec![true; n];
        for (c, walk) in comps.iter().enumerate() {
            for st in walk {
                component_of[st.node] = c;
                direction[st.node] = st.upward;
            }
        }
        let mut components: Vec<Component> = comps
            .iter()
            .map(|w| {
                let p = self.points[w[0].node];
                let closed = self.walk_is_closed(w);
                Component {
                    color: p.color,
                    oriented: p.orient.is_oriented(),
                    closed,
                    self_writhe: 0,
                    nodes: w.iter().map(|s| s.node).collect(),
                }
            })
            .collect();
        let mut crossing_signs = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let d = |node: usize| if direction[node] { 1 } else { -1 };
            let sign = c.kind.sign() * d(c.lower_left) * d(c.lower_right);
            crossing_signs.push(sign);
            let (a, b) = (component_of[c.lower_left], component_of[c.lower_right]);
            if a == b {
                components[a].self_writhe += sign;
            }
        }
        ComponentMap { components, component_of, crossing_signs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub color: Var,
    pub oriented: bool,
    pub closed: bool,
    pub self_writhe: i32,
    /// Nodes in traversal order.
    pub nodes: Vec<usize>,
}

/// Partition of a word's strand segments into link components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMap {
    pub components: Vec<Component>,
    pub component_of: Vec<usize>,
    /// Sign of each crossing (in slice order) under the traversal
    /// orientation; unoriented components use their walk direction.
    pub crossing_signs: Vec<i32>,
}

impl ComponentMap {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_self_writhe(&self) -> i32 {
        self.components.iter().map(|c| c.self_writhe).sum()
    }

    /// Sum of all crossing signs, including crossings between components.
    pub fn writhe(&self) -> i32 {
        self.crossing_signs.iter().sum()
    }

    pub fn colors(&self) -> Vec<Var> {
        let mut cs: Vec<Var> = self.components.iter().map(|c| c.color).collect();
        cs.sort();
        cs.dedup();
        cs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cup(pos: usize, c: Chirality) -> Slice {
        Slice::Cup { pos, chirality: Some(c), color: Var::T }
    }

    fn cap(pos: usize, c: Chirality) -> Slice {
        Slice::Cap { pos, chirality: Some(c) }
    }

    fn x(pos: usize, kind: CrossKind) -> Slice {
        Slice::Cross { pos, kind }
    }

    /// Closure of sigma_1^k on two strands, both going up on the right.
    fn two_braid(k: usize, kind: CrossKind) -> MorseWord {
        let mut s = vec![cup(0, Chirality::Ccw), cup(1, Chirality::Ccw)];
        s.extend(std::iter::repeat_n(x(2, kind), k));
        s.extend([cap(1, Chirality::Ccw), cap(0, Chirality::Ccw)]);
        MorseWord::closed(s)
    }

    #[test]
    fn unknot_has_one_component() {
        let w = MorseWord::closed(vec![cup(0, Chirality::Ccw), cap(0, Chirality::Ccw)]);
        let m = w.validate().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.components[0].self_writhe, 0);
        assert!(m.components[0].closed);
    }

    #[test]
    fn trefoil_closure_writhe() {
        let m = two_braid(3, CrossKind::Pos).validate().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.components[0].self_writhe, 3);
        let m = two_braid(2, CrossKind::Pos).validate().unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.total_self_writhe(), 0);
        assert_eq!(m.writhe(), 2);
    }

    #[test]
    fn width_errors() {
        let w = MorseWord::closed(vec![cup(0, Chirality::Ccw), cup(0, Chirality::Ccw)]);
        assert!(w.validate().is_ok());
        assert!(!w.is_closed());
        let w = MorseWord::closed(vec![cup(0, Chirality::Ccw), x(1, CrossKind::Pos)]);
        assert!(matches!(w.validate(), Err(DiagramError::Width { slice: 1, .. })));
        let w = MorseWord::closed(vec![cup(0, Chirality::Ccw), cap(0, Chirality::Cw)]);
        assert!(matches!(w.validate(), Err(DiagramError::Orientation { slice: 1 })));
        let w = MorseWord::closed(vec![
            cup(0, Chirality::Ccw),
            Slice::Cup { pos: 2, chirality: Some(Chirality::Cw), color: Var::Q },
            cap(1, Chirality::Cw),
        ]);
        assert!(matches!(w.validate(), Err(DiagramError::Color { .. })));
    }

    #[test]
    fn composition() {
        let cupw = MorseWord::closed(vec![cup(0, Chirality::Ccw)]);
        let capw = MorseWord::new(vec![Point::down(Var::T), Point::up(Var::T)], vec![cap(0, Chirality::Ccw)]);
        let circle = MorseWord::compose(&capw, &cupw).unwrap();
        assert!(circle.is_closed());
        let id = MorseWord::new(cupw.target().unwrap(), vec![]);
        assert_eq!(MorseWord::compose(&id, &cupw).unwrap(), cupw);
        let wrong = MorseWord::new(vec![Point::up(Var::T), Point::down(Var::T)], vec![cap(0, Chirality::Cw)]);
        assert_eq!(MorseWord::compose(&wrong, &cupw), Err(DiagramError::Boundary));
    }

    #[test]
    fn mirror_flips_writhe() {
        let w = two_braid(3, CrossKind::Pos);
        assert_eq!(w.mirror(), two_braid(3, CrossKind::Neg));
        assert_eq!(w.mirror().mirror(), w);
        assert_eq!(w.mirror().validate().unwrap().components[0].self_writhe, -3);
    }

    #[test]
    fn color_extraction() {
        let mut hopf = two_braid(2, CrossKind::Pos);
        // recolor the inner circle q
        hopf.slices[1] = Slice::Cup { pos: 1, chirality: Some(Chirality::Ccw), color: Var::Q };
        let m = hopf.validate().unwrap();
        assert_eq!(m.colors(), vec![Var::Q, Var::T]);
        let t = hopf.subdiagram_by_color(Var::T).unwrap();
        assert_eq!(t.crossing_count(), 0);
        assert_eq!(t.validate().unwrap().len(), 1);
        assert!(t.is_closed());
        assert_eq!(hopf.subdiagram_by_color(Var::S).unwrap(), MorseWord::empty());
    }

    #[test]
    fn upward_rewrite_preserves_components_and_writhe() {
        // Hopf link with antiparallel strands in the crossings.
        let w = MorseWord::closed(vec![
            cup(0, Chirality::Cw),
            cup(2, Chirality::Ccw),
            x(1, CrossKind::Pos),
            x(1, CrossKind::Pos),
            cap(2, Chirality::Ccw),
            cap(0, Chirality::Cw),
        ]);
        let m = w.validate().unwrap();
        let r = w.with_upward_crossings().unwrap();
        let mr = r.validate().unwrap();
        assert_eq!(mr.len(), m.len());
        assert_eq!(mr.writhe(), m.writhe());
        assert_eq!(mr.crossing_count_up(&r), r.crossing_count());
    }

    #[test]
    fn curls_change_writhe_only() {
        let w = MorseWord::closed(vec![cup(0, Chirality::Ccw), cap(0, Chirality::Ccw)]);
        for kind in [CrossKind::Pos, CrossKind::Neg] {
            let c = w.with_curl(kind).unwrap();
            let m = c.validate().unwrap();
            assert_eq!(m.len(), 1);
            assert_eq!(m.writhe(), kind.sign());
            assert_eq!(c.crossing_count(), 1);
        }
        let u = w.unoriented(Var::S).with_curl(CrossKind::Neg).unwrap();
        assert_eq!(u.validate().unwrap().len(), 1);
        assert!(MorseWord::empty().with_curl(CrossKind::Pos).is_err());
    }

    impl ComponentMap {
        fn crossing_count_up(&self, w: &MorseWord) -> usize {
            let lay = Layout::new(w).unwrap();
            lay.crossings
                .iter()
                .filter(|c| {
                    lay.points[c.lower_left].orient == Orient::Up && lay.points[c.lower_right].orient == Orient::Up
                })
                .count()
        }
    }
}
