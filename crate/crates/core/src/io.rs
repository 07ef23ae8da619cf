//! Line-oriented text format for restricted Lie algebras.
//!
//! ```text
//! format_version 1
//! name F6
//! dim 6
//! field_degree 1
//! bracket 0 3 = 0 0 0 1 0 0
//! square 0 = 1 0 0 0 0 0
//! end
//! ```
//!
//! A field element is written as its `k` polynomial coefficients, lowest
//! degree first (so `01` is `x` in GF(4)). Only brackets with `i < j` are
//! stored; missing brackets and squares are zero. `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::vector;
use crate::restricted::TwoMap;

pub const FORMAT_VERSION: u32 = 1;

fn write_element(out: &mut String, x: Fe, k: u32) {
    for b in 0..k {
        out.push(if x.0 >> b & 1 == 1 { '1' } else { '0' });
    }
}

fn write_vector(out: &mut String, v: &[Fe], k: u32) {
    for (i, &x) in v.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write_element(out, x, k);
    }
}

/// Serialize; the output parses back to an identical algebra.
pub fn to_text(g: &LieAlgebra, tm: &TwoMap) -> String {
    let n = g.dim();
    let k = g.field().degree();
    let mut out = String::new();
    writeln!(out, "format_version {FORMAT_VERSION}").unwrap();
    writeln!(out, "name {}", g.name().unwrap_or("unnamed")).unwrap();
    writeln!(out, "dim {n}").unwrap();
    writeln!(out, "field_degree {k}").unwrap();
    for i in 0..n {
        for j in i + 1..n {
            let v = g.structure(i, j);
            if !vector::is_zero(v) {
                write!(out, "bracket {i} {j} = ").unwrap();
                write_vector(&mut out, v, k);
                out.push('\n');
            }
        }
    }
    for i in 0..n {
        write!(out, "square {i} = ").unwrap();
        write_vector(&mut out, tm.image(i), k);
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

struct Header {
    name: Option<String>,
    dim: Option<usize>,
    degree: Option<u32>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, "missing index"))?
        .parse()
        .map_err(|_| parse_err(line, "index is not a non-negative integer"))
}

fn parse_vector(toks: &[&str], n: usize, k: u32, line: usize) -> Result<Vec<Fe>> {
    if toks.len() != n {
        return Err(parse_err(line, format!("expected {n} coefficients, found {}", toks.len())));
    }
    toks.iter()
        .enumerate()
        .map(|(pos, t)| {
            if t.len() != k as usize {
                return Err(parse_err(line, format!("coefficient {pos} must have {k} bits")));
            }
            t.chars().enumerate().try_fold(0u16, |acc, (b, c)| match c {
                '0' => Ok(acc),
                '1' => Ok(acc | 1 << b),
                _ => Err(parse_err(line, format!("coefficient {pos} is not a bit string"))),
            })
        })
        .map(|r| r.map(Fe))
        .collect()
}

/// Parse the text format.
pub fn from_text(text: &str) -> Result<(LieAlgebra, TwoMap)> {
    let mut version_seen = false;
    let mut header = Header { name: None, dim: None, degree: None };
    let mut state: Option<(LieAlgebra, Vec<Vec<Fe>>, Vec<bool>)> = None;
    let mut seen_pairs = std::collections::HashSet::new();
    let mut ended = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if ended {
            return Err(parse_err(line, "content after `end`"));
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        if !version_seen {
            if key != "format_version" {
                return Err(parse_err(line, "file must start with `format_version`"));
            }
            let v: u32 = rest.parse().map_err(|_| parse_err(line, "bad version number"))?;
            if v != FORMAT_VERSION {
                return Err(Error::UnsupportedVersion(v));
            }
            version_seen = true;
            continue;
        }
        match key {
            "name" => header.name = Some(rest.to_string()),
            "dim" => header.dim = Some(rest.parse().map_err(|_| parse_err(line, "bad dim"))?),
            "field_degree" => {
                let k: u32 = rest.parse().map_err(|_| parse_err(line, "bad field_degree"))?;
                Field::new(k).map_err(|e| parse_err(line, e.to_string()))?;
                header.degree = Some(k);
            }
            "bracket" | "square" => {
                if state.is_none() {
                    let n = header.dim.ok_or_else(|| parse_err(line, "`dim` must precede data"))?;
                    let k = header.degree.ok_or_else(|| parse_err(line, "`field_degree` must precede data"))?;
                    let f = Field::new(k).expect("validated");
                    state = Some((LieAlgebra::abelian(f, n), vec![vector::zero(n); n], vec![false; n]));
                }
                let (g, squares, square_seen) = state.as_mut().expect("initialised");
                let n = g.dim();
                let k = g.field().degree();
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(line, "missing `=`"))?;
                let mut idx_toks = lhs.split_whitespace();
                let vals: Vec<&str> = rhs.split_whitespace().collect();
                if key == "bracket" {
                    let i = parse_index(idx_toks.next(), line)?;
                    let j = parse_index(idx_toks.next(), line)?;
                    if idx_toks.next().is_some() {
                        return Err(parse_err(line, "bracket takes two indices"));
                    }
                    if i >= n || j >= n {
                        return Err(parse_err(line, format!("index out of range for dim {n}")));
                    }
                    let v = parse_vector(&vals, n, k, line)?;
                    if i == j {
                        if !vector::is_zero(&v) {
                            return Err(Error::AlternatingViolation { line, index: i });
                        }
                        continue;
                    }
                    if i > j {
                        return Err(Error::NonSymmetricEntry { line, i, j });
                    }
                    if !seen_pairs.insert((i, j)) {
                        return Err(parse_err(line, format!("duplicate bracket ({i}, {j})")));
                    }
                    g.set_bracket(i, j, &v)?;
                    g.set_bracket(j, i, &v)?;
                } else {
                    let i = parse_index(idx_toks.next(), line)?;
                    if idx_toks.next().is_some() {
                        return Err(parse_err(line, "square takes one index"));
                    }
                    if i >= n {
                        return Err(parse_err(line, format!("index out of range for dim {n}")));
                    }
                    if square_seen[i] {
                        return Err(parse_err(line, format!("duplicate square {i}")));
                    }
                    square_seen[i] = true;
                    squares[i] = parse_vector(&vals, n, k, line)?;
                }
            }
            "end" => ended = true,
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    if !version_seen {
        return Err(parse_err(0, "empty file"));
    }
    if !ended {
        return Err(parse_err(text.lines().count(), "missing `end`"));
    }
    let (g, squares) = match state {
        Some((g, squares, _)) => (g, squares),
        None => {
            let n = header.dim.ok_or_else(|| parse_err(0, "missing `dim`"))?;
            let k = header.degree.ok_or_else(|| parse_err(0, "missing `field_degree`"))?;
            (LieAlgebra::abelian(Field::new(k)?, n), vec![vector::zero(n); n])
        }
    };
    let g = match header.name {
        Some(name) => g.with_name(name),
        None => g,
    };
    Ok((g, TwoMap::new(squares)))
}

pub fn load(path: impl AsRef<Path>) -> Result<(LieAlgebra, TwoMap)> {
    from_text(&std::fs::read_to_string(path)?)
}

pub fn save(g: &LieAlgebra, tm: &TwoMap, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_text(g, tm))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixtures() {
        for name in ["F6", "F6n", "gl:3", "witt:2", "U2"] {
            let (g, tm) = fixtures::by_name(name).unwrap();
            let (g2, tm2) = from_text(&to_text(&g, &tm)).unwrap();
            assert_eq!(g, g2, "{name}");
            assert_eq!(tm, tm2, "{name}");
        }
    }

    #[test]
    fn round_trip_extension_field() {
        let (g, tm) = fixtures::gl(2).unwrap();
        let f = Field::new(3).unwrap();
        let emb = Field::GF2.embedding_into(f).unwrap();
        let mut g3 = g.extend_scalars(f).unwrap();
        let mut v = vector::zero(4);
        v[0] = Fe(0b110);
        g3.set_bracket(0, 3, &v).unwrap();
        g3.set_bracket(3, 0, &v).unwrap();
        let tm3 = tm.extend_scalars(&emb);
        let text = to_text(&g3, &tm3);
        assert!(text.contains("bracket 0 3 = 011 000 000 000"));
        let (g4, tm4) = from_text(&text).unwrap();
        assert_eq!((g3, tm3), (g4, tm4));
    }

    const HEADER: &str = "format_version 1\nname t\ndim 2\nfield_degree 1\n";

    #[test]
    fn rejects_diagonal_entry() {
        let text = format!("{HEADER}bracket 1 1 = 1 0\nend\n");
        assert_eq!(from_text(&text).unwrap_err(), Error::AlternatingViolation { line: 5, index: 1 });
        let zero = format!("{HEADER}bracket 1 1 = 0 0\nend\n");
        assert!(from_text(&zero).is_ok());
    }

    #[test]
    fn rejects_lower_entry_and_bad_version() {
        let text = format!("{HEADER}bracket 1 0 = 1 0\nend\n");
        assert_eq!(from_text(&text).unwrap_err(), Error::NonSymmetricEntry { line: 5, i: 1, j: 0 });
        assert_eq!(from_text("format_version 999\n").unwrap_err(), Error::UnsupportedVersion(999));
    }

    #[test]
    fn malformed_lines_report_their_number() {
        let cases = [
            format!("{HEADER}bracket 0 1 = 1\nend\n"),
            format!("{HEADER}bracket 0 1 = 1 x\nend\n"),
            format!("{HEADER}square 5 = 1 0\nend\n"),
            format!("{HEADER}frobnicate\nend\n"),
        ];
        for text in cases {
            assert!(matches!(from_text(&text), Err(Error::Parse { line: 5, .. })), "{text}");
        }
        assert!(matches!(from_text(HEADER), Err(Error::Parse { .. })));
        assert!(matches!(from_text("dim 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# header\n{HEADER}\nbracket 0 1 = 1 0 # comment\nend\n");
        let (g, _) = from_text(&text).unwrap();
        assert_eq!(g.structure(1, 0), &[Fe::ONE, Fe::ZERO]);
    }
}
