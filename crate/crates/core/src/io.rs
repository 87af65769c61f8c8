//! Reading and writing graphs.
//!
//! * graph6: the printable-ASCII interchange format used by small-graph
//!   corpora (upper triangle by columns, six bits per byte, offset 63).
//! * edge lists: a header line `n <count>` followed by `u v` lines; `#` starts
//!   a comment.
//! * graph specs: a tiny expression language, `C6`, `K2*C6`, `g6:Dhc`,
//!   `@graph.g6`, where `*` is the left-associative lexicographic product.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest order representable with the four-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 258_047;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6: empty input")]
    EmptyGraph6,
    #[error("graph6: byte {byte:#04x} at offset {offset} is outside 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6: malformed length header")]
    BadHeader,
    #[error("graph6: expected {expected} data bytes for {order} vertices, found {found}")]
    Length {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph6: nonzero padding bits in the last byte")]
    TrailingBits,
    #[error("graph6: order {0} exceeds the format limit")]
    TooLarge(usize),
    #[error("edge list: missing `n <count>` header")]
    MissingHeader,
    #[error("edge list line {line}: {message}")]
    EdgeLine { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Encodes `g` as a graph6 string (no `>>graph6<<` header, no newline).
pub fn write_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= GRAPH6_MAX_ORDER {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        return Err(FormatError::TooLarge(n));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

/// Decodes one graph6 record. Surrounding whitespace and an optional
/// `>>graph6<<` prefix are ignored.
pub fn parse_graph6(input: &[u8]) -> Result<Graph, FormatError> {
    let input = input.trim_ascii();
    let input = input.strip_prefix(b">>graph6<<").unwrap_or(input);
    if input.is_empty() {
        return Err(FormatError::EmptyGraph6);
    }
    if let Some(offset) = input.iter().position(|b| !(63..=126).contains(b)) {
        return Err(FormatError::InvalidByte {
            offset,
            byte: input[offset],
        });
    }
    let (n, data) = if input[0] != 126 {
        ((input[0] - 63) as usize, &input[1..])
    } else {
        if input.len() < 4 || input[1] == 126 {
            return Err(FormatError::BadHeader);
        }
        let n = input[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n <= 62 {
            return Err(FormatError::BadHeader);
        }
        (n, &input[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(FormatError::Length {
            order: n,
            expected,
            found: data.len(),
        });
    }
    let pad = expected * 6 - bits;
    if pad > 0 && (data[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(FormatError::TrailingBits);
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Parses the `n <count>` / `u v` edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut order = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let bad = |message: String| FormatError::EdgeLine { line, message };
        let number = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| bad(format!("`{tok}` is not a vertex index")))
        };
        match order {
            None => {
                if tokens.len() != 2 || tokens[0] != "n" {
                    return Err(FormatError::MissingHeader);
                }
                order = Some(number(tokens[1])?);
            }
            Some(n) => {
                if tokens.len() != 2 {
                    return Err(bad(format!(
                        "expected `u v`, found {} tokens",
                        tokens.len()
                    )));
                }
                let (u, v) = (number(tokens[0])?, number(tokens[1])?);
                if u == v {
                    return Err(bad(format!("self-loop at vertex {u}")));
                }
                if u >= n || v >= n {
                    return Err(bad(format!("vertex {} out of range for n = {n}", u.max(v))));
                }
                edges.push((u, v));
            }
        }
    }
    let n = order.ok_or(FormatError::MissingHeader)?;
    Ok(Graph::from_edges(n, edges)?)
}

/// Parses graph file contents: an edge list when the first meaningful line
/// starts with `n`, otherwise the first non-blank line as graph6.
pub fn parse_graph_text(text: &str) -> Result<Graph, FormatError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.split_whitespace().next() == Some("n") => parse_edge_list(text),
        Some(_) => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("");
            parse_graph6(line.as_bytes())
        }
        None => Err(FormatError::EmptyGraph6),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax(String),
    UnknownAtom(String),
    Graph(GraphError),
    Format(FormatError),
    Io { path: String, message: String },
}

/// A graph-spec failure annotated with the byte offset where it occurred.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SpecError {
    pub offset: usize,
    pub kind: SpecErrorKind,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: ", self.offset)?;
        match &self.kind {
            SpecErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            SpecErrorKind::UnknownAtom(a) => write!(f, "unknown atom `{a}`"),
            SpecErrorKind::Graph(e) => write!(f, "{e}"),
            SpecErrorKind::Format(e) => write!(f, "{e}"),
            SpecErrorKind::Io { path, message } => write!(f, "cannot read `{path}`: {message}"),
        }
    }
}

/// Parses a graph spec, reading `@path` atoms from the filesystem.
pub fn parse_spec(s: &str) -> Result<Graph, SpecError> {
    parse_spec_with(s, |path| {
        std::fs::read_to_string(path).map_err(|e| e.to_string())
    })
}

/// Parses a graph spec with a caller-supplied loader for `@path` atoms.
pub fn parse_spec_with<F>(s: &str, mut load: F) -> Result<Graph, SpecError>
where
    F: FnMut(&Path) -> Result<String, String>,
{
    let mut result: Option<Graph> = None;
    let mut start = 0;
    for piece in s.split('*') {
        let lead = piece.len() - piece.trim_start().len();
        let offset = start + lead;
        let atom = parse_atom(piece.trim(), offset, &mut load)?;
        result = Some(match result {
            None => atom,
            Some(acc) => acc.lex_product(&atom),
        });
        start += piece.len() + 1;
    }
    Ok(result.expect("split yields at least one piece"))
}

fn parse_atom<F>(atom: &str, offset: usize, load: &mut F) -> Result<Graph, SpecError>
where
    F: FnMut(&Path) -> Result<String, String>,
{
    let err = |kind| SpecError { offset, kind };
    if atom.is_empty() {
        return Err(err(SpecErrorKind::Syntax("expected an atom".into())));
    }
    if let Some(code) = atom.strip_prefix("g6:") {
        return parse_graph6(code.as_bytes()).map_err(|e| err(SpecErrorKind::Format(e)));
    }
    if let Some(path) = atom.strip_prefix('@') {
        if path.is_empty() {
            return Err(err(SpecErrorKind::Syntax(
                "expected a file path after `@`".into(),
            )));
        }
        let text = load(Path::new(path)).map_err(|message| {
            err(SpecErrorKind::Io {
                path: path.to_string(),
                message,
            })
        })?;
        return parse_graph_text(&text).map_err(|e| err(SpecErrorKind::Format(e)));
    }
    let family = atom.chars().next().expect("nonempty");
    let digits = &atom[family.len_utf8()..];
    if !matches!(family, 'C' | 'K' | 'E' | 'P') {
        return Err(err(SpecErrorKind::UnknownAtom(atom.to_string())));
    }
    let size: usize = match digits.parse() {
        Ok(n) if digits.bytes().all(|b| b.is_ascii_digit()) => n,
        _ => {
            return Err(SpecError {
                offset: offset + 1,
                kind: SpecErrorKind::Syntax(format!(
                    "expected a vertex count after `{family}`, found `{digits}`"
                )),
            })
        }
    };
    let graph = match family {
        'C' => Graph::cycle(size),
        'K' => Graph::complete(size),
        'E' => Graph::empty(size),
        _ => Graph::path(size),
    };
    graph.map_err(|e| err(SpecErrorKind::Graph(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_encodings() {
        // frozen from an independent encoder
        let cases = [
            (Graph::empty(2).unwrap(), "A?"),
            (Graph::empty(1).unwrap(), "@"),
            (Graph::complete(2).unwrap(), "A_"),
            (Graph::path(3).unwrap(), "Bg"),
            (Graph::complete(4).unwrap(), "C~"),
            (Graph::cycle(5).unwrap(), "Dhc"),
            (Graph::cycle(8).unwrap(), "GhCGKC"),
            (Graph::complete(8).unwrap(), "G~~~~{"),
            (parse_spec("K2*C6").unwrap(), "K~KwW[B?}@wF"),
        ];
        for (g, code) in cases {
            assert_eq!(write_graph6(&g).unwrap(), code);
            assert_eq!(parse_graph6(code.as_bytes()).unwrap(), g);
        }
    }

    #[test]
    fn graph6_long_header_round_trip() {
        let g = Graph::cycle(70).unwrap();
        let code = write_graph6(&g).unwrap();
        assert!(code.starts_with("~?@E"));
        assert_eq!(parse_graph6(code.as_bytes()).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert_eq!(parse_graph6(b""), Err(FormatError::EmptyGraph6));
        assert_eq!(
            parse_graph6(b"A"),
            Err(FormatError::Length {
                order: 2,
                expected: 1,
                found: 0
            })
        );
        assert_eq!(
            parse_graph6(b"A??"),
            Err(FormatError::Length {
                order: 2,
                expected: 1,
                found: 2
            })
        );
        assert_eq!(parse_graph6(b"A@"), Err(FormatError::TrailingBits));
        assert_eq!(
            parse_graph6(b"A "),
            Err(FormatError::Length {
                order: 2,
                expected: 1,
                found: 0
            })
        );
        assert_eq!(
            parse_graph6(b"A\x7f"),
            Err(FormatError::InvalidByte {
                offset: 1,
                byte: 0x7f
            })
        );
        assert_eq!(
            parse_graph6(b"?"),
            Err(FormatError::Graph(GraphError::Empty))
        );
        assert_eq!(parse_graph6(b"~??"), Err(FormatError::BadHeader));
        assert!(parse_graph6(b">>graph6<<A_\n").is_ok());
    }

    #[test]
    fn edge_list_examples() {
        assert_eq!(
            parse_edge_list("n 3\n0 1\n1 2\n2 0").unwrap(),
            Graph::complete(3).unwrap()
        );
        assert!(matches!(
            parse_edge_list("n 2\n0 0"),
            Err(FormatError::EdgeLine { line: 2, .. })
        ));
        assert_eq!(parse_edge_list("n 4\n0 1\n0 1").unwrap().edge_count(), 1);
        assert!(matches!(
            parse_edge_list("n 2\n0 2"),
            Err(FormatError::EdgeLine { line: 2, .. })
        ));
        assert_eq!(parse_edge_list("0 1"), Err(FormatError::MissingHeader));
        let commented = "# triangle\n  n   3 \n\n0 1 # first\n1\t2\n0 2\n";
        assert_eq!(
            parse_edge_list(commented).unwrap(),
            Graph::complete(3).unwrap()
        );
    }

    #[test]
    fn spec_examples() {
        let g = parse_spec("K2*C6").unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(
            g,
            Graph::complete(2)
                .unwrap()
                .lex_product(&Graph::cycle(6).unwrap())
        );
        assert_eq!(parse_spec("E3").unwrap(), Graph::empty(3).unwrap());
        assert_eq!(
            parse_spec("C2"),
            Err(SpecError {
                offset: 0,
                kind: SpecErrorKind::Graph(GraphError::CycleTooSmall(2))
            })
        );
    }

    #[test]
    fn spec_is_left_associative() {
        let (a, b, c) = (
            Graph::path(3).unwrap(),
            Graph::complete(2).unwrap(),
            Graph::cycle(4).unwrap(),
        );
        assert_eq!(
            parse_spec("P3*K2*C4").unwrap(),
            a.lex_product(&b).lex_product(&c)
        );
        assert_eq!(parse_spec(" P3 * g6:A_ ").unwrap(), a.lex_product(&b));
    }

    #[test]
    fn spec_error_offsets() {
        assert_eq!(parse_spec("K2**C3").unwrap_err().offset, 3);
        assert_eq!(parse_spec("K2*").unwrap_err().offset, 3);
        let e = parse_spec("K2*X4").unwrap_err();
        assert_eq!(
            e,
            SpecError {
                offset: 3,
                kind: SpecErrorKind::UnknownAtom("X4".into())
            }
        );
        let e = parse_spec("C6*Kx").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(matches!(e.kind, SpecErrorKind::Syntax(_)));
        assert!(parse_spec("K+3").is_err());
        assert!(matches!(
            parse_spec("g6:A@").unwrap_err().kind,
            SpecErrorKind::Format(FormatError::TrailingBits)
        ));
        assert_eq!(
            parse_spec("E0").unwrap_err().kind,
            SpecErrorKind::Graph(GraphError::Empty)
        );
        assert!(e.to_string().starts_with("at byte 4:"));
    }

    #[test]
    fn spec_file_atoms() {
        let load = |p: &Path| match p.to_str() {
            Some("tri.txt") => Ok("n 3\n0 1\n1 2\n0 2\n".to_string()),
            Some("c5.g6") => Ok(">>graph6<<Dhc\n".to_string()),
            _ => Err("not found".to_string()),
        };
        assert_eq!(
            parse_spec_with("@tri.txt", load).unwrap(),
            Graph::complete(3).unwrap()
        );
        assert_eq!(
            parse_spec_with("K2*@c5.g6", load).unwrap(),
            Graph::complete(2)
                .unwrap()
                .lex_product(&Graph::cycle(5).unwrap())
        );
        let e = parse_spec_with("K2*@nope", load).unwrap_err();
        assert_eq!(e.offset, 3);
        assert!(matches!(e.kind, SpecErrorKind::Io { .. }));
    }
}
