//! OFF reading and writing with exact coordinates.
//!
//! Coordinates may be integers, fractions (`1/3`) or decimals (`0.25`,
//! `1e-3`); all are read exactly. `#` starts a comment. The counts may share
//! the header line (`OFF 8 6 0`), and the edge count is ignored.

use std::fmt::{self, Write as _};

use tetrify_core::polyhedron::PolyhedronError;
use tetrify_core::{Point3, Polyhedron, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OffError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] PolyhedronError),
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Non-empty lines split into tokens, comments removed.
fn lines(text: &str) -> Vec<Vec<Token<'_>>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices().chain([(content.len(), ' ')]) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push(Token {
                            text: &content[s..pos],
                            line: i + 1,
                            column: content[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(tokens)
        })
        .collect()
}

fn error_at(tok: &Token<'_>, message: impl Into<String>) -> ParseError {
    ParseError {
        line: tok.line,
        column: tok.column,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(tok: &Token<'_>, what: &str) -> Result<T, ParseError> {
    tok.text
        .parse()
        .map_err(|_| error_at(tok, format!("expected {what}, found `{}`", tok.text)))
}

/// Parses OFF text without validating the surface.
pub fn parse_off_unchecked(text: &str) -> Result<Polyhedron, ParseError> {
    let lines = lines(text);
    let mut rows = lines.iter();
    let end = |message: &str| ParseError {
        line: text.lines().count().max(1),
        column: 1,
        message: message.into(),
    };
    let header = rows.next().ok_or_else(|| end("empty input, expected `OFF`"))?;
    if header[0].text != "OFF" {
        return Err(error_at(&header[0], format!("expected `OFF`, found `{}`", header[0].text)));
    }
    let counts: &[Token<'_>] = if header.len() > 1 {
        &header[1..]
    } else {
        rows.next().ok_or_else(|| end("missing vertex and face counts"))?
    };
    if counts.len() != 3 {
        let tok = counts.first().unwrap_or(&header[0]);
        return Err(error_at(tok, "expected three counts `V F E`"));
    }
    let nv: usize = number(&counts[0], "a vertex count")?;
    let nf: usize = number(&counts[1], "a face count")?;
    let _: usize = number(&counts[2], "an edge count")?;

    let mut vertices = Vec::with_capacity(nv);
    for k in 0..nv {
        let row = rows.next().ok_or_else(|| end(&format!("expected {nv} vertices, found {k}")))?;
        if row.len() != 3 {
            return Err(error_at(&row[0], format!("a vertex needs 3 coordinates, found {}", row.len())));
        }
        let c: Vec<Rat> = row.iter().map(|t| number(t, "a coordinate")).collect::<Result<_, _>>()?;
        let [x, y, z]: [Rat; 3] = c.try_into().expect("three coordinates");
        vertices.push(Point3::new(x, y, z));
    }
    let mut faces = Vec::with_capacity(nf);
    for k in 0..nf {
        let row = rows.next().ok_or_else(|| end(&format!("expected {nf} faces, found {k}")))?;
        let len: usize = number(&row[0], "a face size")?;
        if row.len() != len + 1 {
            return Err(error_at(&row[0], format!("face announces {len} indices, found {}", row.len() - 1)));
        }
        let face = row[1..].iter().map(|t| number(t, "a vertex index")).collect::<Result<Vec<usize>, _>>()?;
        faces.push(face);
    }
    if let Some(extra) = rows.next() {
        return Err(error_at(&extra[0], "unexpected content after the last face"));
    }
    Ok(Polyhedron::new(vertices, faces))
}

/// Parses OFF text and rejects anything that does not validate.
pub fn parse_off(text: &str) -> Result<Polyhedron, OffError> {
    let p = parse_off_unchecked(text)?;
    p.ensure_valid()?;
    Ok(p)
}

pub fn write_off(p: &Polyhedron) -> String {
    let mut out = String::new();
    write_to(&mut out, p).expect("writing to a String cannot fail");
    out
}

fn write_to(out: &mut String, p: &Polyhedron) -> fmt::Result {
    writeln!(out, "OFF")?;
    writeln!(out, "{} {} 0", p.vertex_count(), p.face_count())?;
    for v in p.vertices() {
        writeln!(out, "{} {} {}", v.x, v.y, v.z)?;
    }
    for f in p.faces() {
        write!(out, "{}", f.len())?;
        for i in f {
            write!(out, " {i}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
