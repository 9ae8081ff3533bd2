//! Text formats: `smap 1` for maps and `orient 1` for orientations.
//!
//! ```text
//! smap 1
//! darts 6
//! v 0: 0 2
//! e 0: 0 1 +
//! ```
//!
//! `#` starts a comment anywhere on a line.

use std::fmt::Write as _;

use crate::error::MapError;
use crate::orientation::Orientation;
use crate::surface_map::{Dart, Sign, SurfaceMap};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> MapError {
    MapError::Parse { line, message: message.into() }
}

fn parse_num(line: usize, tok: &str) -> Result<usize, MapError> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))
}

/// Parses `<kind> <id>:` and returns the id.
fn parse_label(line: usize, toks: &[&str]) -> Result<(usize, usize), MapError> {
    let Some(tok) = toks.get(1) else {
        return Err(parse_err(line, "missing id"));
    };
    if let Some(id) = tok.strip_suffix(':') {
        return Ok((parse_num(line, id)?, 2));
    }
    if toks.get(2) == Some(&":") {
        return Ok((parse_num(line, tok)?, 3));
    }
    Err(parse_err(line, "expected `<id>:`"))
}

pub fn parse_smap(text: &str) -> Result<SurfaceMap, MapError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t == ["smap", "1"] => {}
        Some((l, _)) => return Err(parse_err(l, "expected header `smap 1`")),
        None => return Err(parse_err(0, "empty input")),
    }
    let darts = match lines.next() {
        Some((l, t)) if t.len() == 2 && t[0] == "darts" => parse_num(l, t[1])?,
        Some((l, _)) => return Err(parse_err(l, "expected `darts <count>`")),
        None => return Err(parse_err(0, "missing dart count")),
    };
    let mut rotations: Vec<Option<Vec<Dart>>> = Vec::new();
    let mut edges: Vec<Option<(Dart, Dart, Sign)>> = Vec::new();
    for (l, toks) in lines {
        let (id, rest) = parse_label(l, &toks)?;
        match toks[0] {
            "v" => {
                let rot = toks[rest..].iter().map(|t| parse_num(l, t).map(Dart)).collect::<Result<Vec<_>, _>>()?;
                if rotations.len() <= id {
                    rotations.resize(id + 1, None);
                }
                if rotations[id].replace(rot).is_some() {
                    return Err(parse_err(l, format!("vertex {id} listed twice")));
                }
            }
            "e" => {
                if toks.len() != rest + 3 {
                    return Err(parse_err(l, "expected `e <id>: <dart> <dart> <+|->`"));
                }
                let a = Dart(parse_num(l, toks[rest])?);
                let b = Dart(parse_num(l, toks[rest + 1])?);
                let s = match toks[rest + 2] {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    other => return Err(parse_err(l, format!("bad sign `{other}`"))),
                };
                if edges.len() <= id {
                    edges.resize(id + 1, None);
                }
                if edges[id].replace((a, b, s)).is_some() {
                    return Err(parse_err(l, format!("edge {id} listed twice")));
                }
            }
            other => return Err(parse_err(l, format!("unknown record `{other}`"))),
        }
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| parse_err(0, format!("vertex {i} missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| parse_err(0, format!("edge {i} missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    if darts != 2 * edges.len() {
        return Err(MapError::DartSetMismatch(format!("header declares {darts} darts, edges use {}", 2 * edges.len())));
    }
    SurfaceMap::from_parts(rotations, edges)
}

pub fn write_smap(map: &SurfaceMap) -> String {
    let mut out = String::new();
    writeln!(out, "smap 1").unwrap();
    writeln!(out, "darts {}", map.num_darts()).unwrap();
    for v in 0..map.num_vertices() {
        write!(out, "v {v}:").unwrap();
        for d in map.rotation(v) {
            write!(out, " {d}").unwrap();
        }
        out.push('\n');
    }
    for e in 0..map.num_edges() {
        let [a, b] = map.edge_darts(e);
        writeln!(out, "e {e}: {a} {b} {}", map.sign(e).symbol()).unwrap();
    }
    out
}

/// Parses an orientation; the result may be partial.
pub fn parse_orientation(map: &SurfaceMap, text: &str) -> Result<Orientation, MapError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t == ["orient", "1"] => {}
        Some((l, _)) => return Err(parse_err(l, "expected header `orient 1`")),
        None => return Err(parse_err(0, "empty input")),
    }
    let mut o = Orientation::new(map);
    for (l, toks) in lines {
        if toks.len() != 3 || toks[0] != "o" {
            return Err(parse_err(l, "expected `o <edge> <tail>`"));
        }
        let e = parse_num(l, toks[1])?;
        let tail = parse_num(l, toks[2])?;
        if e >= map.num_edges() {
            return Err(parse_err(l, format!("unknown edge {e}")));
        }
        if !map.endpoints(e).contains(&tail) {
            return Err(parse_err(l, format!("vertex {tail} is not an end of edge {e}")));
        }
        if o.tail(e).is_some() {
            return Err(parse_err(l, format!("edge {e} oriented twice")));
        }
        o.set(e, tail);
    }
    Ok(o)
}

pub fn write_orientation(o: &Orientation) -> String {
    let mut out = String::from("orient 1\n");
    for (e, t) in o.tails().iter().enumerate() {
        if let Some(t) = t {
            writeln!(out, "o {e} {t}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str = include_str!("../fixtures/tetrahedron.smap");

    #[test]
    fn smap_round_trip_is_exact() {
        let m = parse_smap(TETRA).unwrap();
        let text = write_smap(&m);
        let again = write_smap(&parse_smap(&text).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn comments_and_spacing_are_tolerated() {
        let text = "# sphere\nsmap 1 # header\ndarts 2\nv 0 : 0\nv 1: 1\ne 0: 0 1 +\n";
        let m = parse_smap(text).unwrap();
        assert_eq!(m.num_vertices(), 2);
        assert_eq!(m.num_faces(), 1);
    }

    #[test]
    fn bad_sign_reports_line() {
        let text = "smap 1\ndarts 2\nv 0: 0\nv 1: 1\ne 0: 0 1 *\n";
        assert!(matches!(parse_smap(text), Err(MapError::Parse { line: 5, .. })));
    }

    #[test]
    fn dart_count_must_match() {
        let text = "smap 1\ndarts 4\nv 0: 0\nv 1: 1\ne 0: 0 1 +\n";
        assert!(matches!(parse_smap(text), Err(MapError::DartSetMismatch(_))));
    }

    #[test]
    fn orientation_round_trip() {
        let m = parse_smap(TETRA).unwrap();
        let mut o = Orientation::new(&m);
        for e in 0..m.num_edges() {
            o.set(e, m.endpoints(e)[e % 2]);
        }
        let text = write_orientation(&o);
        assert_eq!(parse_orientation(&m, &text).unwrap(), o);
    }

    #[test]
    fn orientation_rejects_foreign_tail() {
        let m = parse_smap(TETRA).unwrap();
        let [a, b] = m.endpoints(0);
        let other = (0..4).find(|v| *v != a && *v != b).unwrap();
        let text = format!("orient 1\no 0 {other}\n");
        assert!(parse_orientation(&m, &text).is_err());
    }
}
