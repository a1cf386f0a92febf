//! Text formats (Morse words, braid words) and the built-in link table.
//!
//! Morse text, one slice per line, bottom to top:
//!
//! ```text
//! src: +t -t
//! cup 0 ccw
//! x+ 1
//! cap 2 cw
//! ```
//!
//! Boundary points are `+c`, `-c` (oriented up/down) or `0c` (unoriented)
//! with color `c`. Cups are `cup <pos> [cw|ccw] [color]`; leaving out the
//! chirality makes an unoriented cup. The color defaults to `t` for
//! oriented and `s` for unoriented cups and is only written when it differs.

use thiserror::Error;

use crate::diagram::{Chirality, CrossKind, DiagramError, MorseWord, Orient, Point, Slice};
use crate::scalar::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {err}")]
    Invalid { line: usize, err: DiagramError },
    #[error("braid: {0}")]
    Braid(String),
}

fn default_color(oriented: bool) -> Var {
    if oriented {
        Var::T
    } else {
        Var::S
    }
}

fn render_point(p: &Point) -> String {
    let o = match p.orient {
        Orient::Up => '+',
        Orient::Down => '-',
        Orient::Unoriented => '0',
    };
    format!("{}{}", o, p.color)
}

fn chirality_name(c: Chirality) -> &'static str {
    match c {
        Chirality::Cw => "cw",
        Chirality::Ccw => "ccw",
    }
}

pub fn render_slice(s: &Slice) -> String {
    match *s {
        Slice::Cup { pos, chirality, color } => {
            let mut out = format!("cup {}", pos);
            if let Some(c) = chirality {
                out.push(' ');
                out.push_str(chirality_name(c));
            }
            if color != default_color(chirality.is_some()) {
                out.push(' ');
                out.push_str(color.name());
            }
            out
        }
        Slice::Cap { pos, chirality } => match chirality {
            Some(c) => format!("cap {} {}", pos, chirality_name(c)),
            None => format!("cap {}", pos),
        },
        Slice::Cross { pos, kind: CrossKind::Pos } => format!("x+ {}", pos),
        Slice::Cross { pos, kind: CrossKind::Neg } => format!("x- {}", pos),
    }
}

/// Renders a word in Morse text; every line, including the last, ends in
/// a newline.
pub fn render_morse(w: &MorseWord) -> String {
    let mut out = String::from("src:");
    for p in &w.source {
        out.push(' ');
        out.push_str(&render_point(p));
    }
    out.push('\n');
    for s in &w.slices {
        out.push_str(&render_slice(s));
        out.push('\n');
    }
    out
}

fn parse_point(tok: &str, line: usize) -> Result<Point, ParseError> {
    let err = || ParseError::Syntax { line, msg: format!("bad boundary point `{}`", tok) };
    let mut chars = tok.chars();
    let orient = match chars.next() {
        Some('+') => Orient::Up,
        Some('-') => Orient::Down,
        Some('0') => Orient::Unoriented,
        _ => return Err(err()),
    };
    let color = Var::from_name(chars.as_str()).ok_or_else(err)?;
    Ok(Point::new(orient, color))
}

fn parse_pos(tok: Option<&str>, line: usize) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::Syntax { line, msg: "missing position".into() })?;
    tok.parse().map_err(|_| ParseError::Syntax { line, msg: format!("bad position `{}`", tok) })
}

/// Parses and validates Morse text. Blank lines and `#` comments are
/// skipped.
pub fn parse_morse(text: &str) -> Result<MorseWord, ParseError> {
    let mut source = None;
    let mut slices = Vec::new();
    let mut slice_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("src:") {
            if source.is_some() || !slices.is_empty() {
                return Err(ParseError::Syntax { line, msg: "`src:` must come first, once".into() });
            }
            source = Some(rest.split_whitespace().map(|t| parse_point(t, line)).collect::<Result<Vec<_>, _>>()?);
            continue;
        }
        if source.is_none() {
            return Err(ParseError::Syntax { line, msg: "missing `src:` header".into() });
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap();
        let slice = match head {
            "cup" => {
                let pos = parse_pos(toks.next(), line)?;
                let mut chirality = None;
                let mut color = None;
                for t in toks.by_ref() {
                    match t {
                        "cw" if chirality.is_none() && color.is_none() => chirality = Some(Chirality::Cw),
                        "ccw" if chirality.is_none() && color.is_none() => chirality = Some(Chirality::Ccw),
                        _ if color.is_none() => {
                            color =
                                Some(Var::from_name(t).ok_or_else(|| ParseError::Syntax {
                                    line,
                                    msg: format!("unknown color `{}`", t),
                                })?)
                        }
                        _ => return Err(ParseError::Syntax { line, msg: format!("unexpected `{}`", t) }),
                    }
                }
                Slice::Cup { pos, chirality, color: color.unwrap_or(default_color(chirality.is_some())) }
            }
            "cap" => {
                let pos = parse_pos(toks.next(), line)?;
                let chirality = match toks.next() {
                    None => None,
                    Some("cw") => Some(Chirality::Cw),
                    Some("ccw") => Some(Chirality::Ccw),
                    Some(t) => return Err(ParseError::Syntax { line, msg: format!("unexpected `{}`", t) }),
                };
                Slice::Cap { pos, chirality }
            }
            "x+" | "x-" => {
                let pos = parse_pos(toks.next(), line)?;
                let kind = if head == "x+" { CrossKind::Pos } else { CrossKind::Neg };
                Slice::Cross { pos, kind }
            }
            _ => return Err(ParseError::Syntax { line, msg: format!("unknown slice `{}`", head) }),
        };
        if let Some(t) = toks.next() {
            return Err(ParseError::Syntax { line, msg: format!("unexpected `{}`", t) });
        }
        slices.push(slice);
        slice_lines.push(line);
    }
    let source = source.ok_or(ParseError::Syntax { line: 1, msg: "missing `src:` header".into() })?;
    let word = MorseWord::new(source, slices);
    word.levels().map_err(|err| {
        let line = match &err {
            DiagramError::Width { slice, .. }
            | DiagramError::Orientation { slice }
            | DiagramError::Color { slice, .. } => slice_lines[*slice],
            _ => 0,
        };
        ParseError::Invalid { line, err }
    })?;
    Ok(word)
}

/// A braid on `strands` strands; generator `k > 0` is a positive crossing
/// of strands `k, k + 1`, `-k` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub generators: Vec<i32>,
}

/// Parses `n; k1 k2 ... km`.
pub fn parse_braid(text: &str) -> Result<BraidWord, ParseError> {
    let (n, rest) = text.split_once(';').ok_or_else(|| ParseError::Braid("expected `n; k1 ... km`".into()))?;
    let strands: usize = n.trim().parse().map_err(|_| ParseError::Braid(format!("bad strand count `{}`", n.trim())))?;
    if strands < 2 {
        return Err(ParseError::Braid("need at least 2 strands".into()));
    }
    let mut generators = Vec::new();
    for tok in rest.split_whitespace() {
        let k: i32 = tok.parse().map_err(|_| ParseError::Braid(format!("bad generator `{}`", tok)))?;
        if k == 0 || k.unsigned_abs() as usize >= strands {
            return Err(ParseError::Braid(format!("generator {} out of range for {} strands", k, strands)));
        }
        generators.push(k);
    }
    Ok(BraidWord { strands, generators })
}

/// Which side the closing arcs of a braid closure run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureSide {
    Left,
    Right,
}

/// Trace closure: `n` nested cups, the braid on upward strands, `n`
/// nested caps. With `ClosureSide::Left` the returning arcs run on the
/// left of the braid.
pub fn braid_to_morse(b: &BraidWord, side: ClosureSide) -> MorseWord {
    let n = b.strands;
    let (chirality, offset) = match side {
        ClosureSide::Left => (Chirality::Ccw, n),
        ClosureSide::Right => (Chirality::Cw, 0),
    };
    let mut slices: Vec<Slice> =
        (0..n).map(|k| Slice::Cup { pos: k, chirality: Some(chirality), color: Var::T }).collect();
    for &g in &b.generators {
        let kind = if g > 0 { CrossKind::Pos } else { CrossKind::Neg };
        slices.push(Slice::Cross { pos: offset + g.unsigned_abs() as usize - 1, kind });
    }
    slices.extend((0..n).map(|k| Slice::Cap { pos: n - 1 - k, chirality: Some(chirality) }));
    MorseWord::closed(slices)
}

#[derive(Clone, Debug)]
pub struct LinkEntry {
    pub name: &'static str,
    pub presentations: Vec<MorseWord>,
    pub components: usize,
    pub writhe: i32,
}

impl LinkEntry {
    pub fn word(&self) -> &MorseWord {
        &self.presentations[0]
    }
}

fn braid(text: &str, side: ClosureSide) -> MorseWord {
    braid_to_morse(&parse_braid(text).expect("built-in braid"), side)
}

fn morse(text: &str) -> MorseWord {
    parse_morse(text).expect("built-in morse word")
}

fn entry(name: &'static str, presentations: Vec<MorseWord>) -> LinkEntry {
    let m = presentations[0].validate().expect("built-in link validates");
    LinkEntry { name, components: m.len(), writhe: m.writhe(), presentations }
}

/// Built-in links, all oriented and colored `t`.
pub fn link_table() -> Vec<LinkEntry> {
    use ClosureSide::*;
    vec![
        entry(
            "unknot",
            vec![
                morse("src:\ncup 0 ccw\ncap 0 ccw\n"),
                morse("src:\ncup 0 cw\ncap 0 cw\n"),
                morse("src:\ncup 0 ccw\ncup 1 cw\ncap 0 ccw\ncap 0 ccw\n"),
            ],
        ),
        entry(
            "unknot+curl",
            vec![braid("2; 1", Left), morse("src:\ncup 0 ccw\ncup 2 cw\nx+ 1\ncap 2 cw\ncap 0 ccw\n")],
        ),
        entry(
            "unknot-curl",
            vec![braid("2; -1", Left), morse("src:\ncup 0 ccw\ncup 2 cw\nx- 1\ncap 2 cw\ncap 0 ccw\n")],
        ),
        entry(
            "unlink2",
            vec![
                braid("2;", Left),
                morse("src:\ncup 0 ccw\ncap 0 ccw\ncup 0 ccw\ncap 0 ccw\n"),
                braid("2; 1 -1", Left),
            ],
        ),
        entry(
            "hopf",
            vec![
                braid("2; 1 1", Left),
                braid("2; 1 1", Right),
                morse("src:\ncup 0 cw\ncup 2 ccw\nx+ 1\nx+ 1\ncap 2 ccw\ncap 0 cw\n"),
            ],
        ),
        entry("trefoil", vec![braid("2; 1 1 1", Left), braid("2; 1 1 1", Right)]),
        entry("figure-eight", vec![braid("3; 1 -2 1 -2", Left), braid("3; 1 -2 1 -2", Right)]),
    ]
}

pub fn find_link(name: &str) -> Option<LinkEntry> {
    link_table().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_grammar() {
        assert_eq!(parse_braid("2; 1 1 1").unwrap(), BraidWord { strands: 2, generators: vec![1, 1, 1] });
        assert_eq!(parse_braid("3; 1 -2 1 -2").unwrap().generators, vec![1, -2, 1, -2]);
        assert!(parse_braid("2; 5").is_err());
        assert!(parse_braid("2; 2").is_err());
        assert!(parse_braid("1;").is_err());
        assert!(parse_braid("2; x").is_err());
        assert!(parse_braid("2 1").is_err());
        assert!(parse_braid("2; 0").is_err());
    }

    #[test]
    fn braid_closures() {
        let hopf = braid("2; 1 1", ClosureSide::Left).validate().unwrap();
        assert_eq!((hopf.len(), hopf.writhe()), (2, 2));
        let tre = braid("2; 1 1 1", ClosureSide::Right).validate().unwrap();
        assert_eq!((tre.len(), tre.writhe()), (1, 3));
        let unlink = braid("2;", ClosureSide::Left).validate().unwrap();
        assert_eq!((unlink.len(), unlink.writhe()), (2, 0));
    }

    #[test]
    fn morse_text() {
        let w = parse_morse("src:\ncup 0 ccw\ncap 0 ccw").unwrap();
        assert_eq!(w.validate().unwrap().len(), 1);
        let err = parse_morse("src: +t -t\ncap 0 cw\nx+ 3\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid { line: 3, .. }), "{:?}", err);
        let err = parse_morse("src: +t +t\nx+ 3\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid { line: 2, .. }));
        assert!(parse_morse("cup 0 ccw\n").is_err());
        assert!(parse_morse("src:\ncup 0 ccw q r\n").is_err());
        assert!(parse_morse("src:\nfoo 0\n").is_err());
        let w = parse_morse("src: 0s\ncup 1 q\n").unwrap();
        assert_eq!(w.slices[0], Slice::Cup { pos: 1, chirality: None, color: Var::Q });
    }

    #[test]
    fn table_is_consistent() {
        for e in link_table() {
            for p in &e.presentations {
                assert!(p.is_closed(), "{}", e.name);
                let m = p.validate().unwrap();
                assert_eq!(m.len(), e.components, "{}", e.name);
                assert_eq!(m.writhe(), e.writhe, "{}", e.name);
                assert_eq!(&parse_morse(&render_morse(p)).unwrap(), p);
            }
        }
        assert!(find_link("trefoil").is_some());
        assert!(find_link("nope").is_none());
    }
}
