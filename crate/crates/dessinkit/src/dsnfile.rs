//! The dessin text format:
//!
//! ```text
//! # any number of comment lines
//! degree 12
//! x (1 2 3 7 8 9)(6 12)
//! y (1 4)(2 5)(7 10)(8 11)(3 6 9 12)
//! ```
//!
//! Cycle syntax is shared with the rest of the tool: whitespace- or
//! comma-separated points, fixed points omissible, `()` or `id` for the
//! identity. Parse failures carry the line number.

use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Parses a dessin file, returning the dessin and the comment lines.
pub fn parse(text: &str) -> Result<(Dessin, Vec<String>)> {
    let mut degree: Option<(usize, usize)> = None; // (value, line)
    let mut x: Option<(String, usize)> = None;
    let mut y: Option<(String, usize)> = None;
    let mut comments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(stripped) = line.strip_prefix('#') {
            comments.push(stripped.trim().to_string());
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate 'degree' line".into(),
                    });
                }
                let n: usize = rest.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad degree '{}'", rest),
                })?;
                if n == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "degree must be at least 1".into(),
                    });
                }
                degree = Some((n, line_no));
            }
            "x" | "y" => {
                let slot = if key == "x" { &mut x } else { &mut y };
                if slot.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("duplicate '{}' line", key),
                    });
                }
                *slot = Some((rest.to_string(), line_no));
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown key '{}'", other),
                });
            }
        }
    }
    let (n, _) = degree.ok_or(Error::Parse {
        line: 0,
        msg: "missing 'degree' line".into(),
    })?;
    let parse_perm = |slot: Option<(String, usize)>, name: &str| -> Result<Permutation> {
        let (text, line) = slot.ok_or(Error::Parse {
            line: 0,
            msg: format!("missing '{}' line", name),
        })?;
        Permutation::parse(&text, n).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })
    };
    let px = parse_perm(x, "x")?;
    let py = parse_perm(y, "y")?;
    let d = Dessin::with_degree(n, px, py)?;
    Ok((d, comments))
}

/// Serializes a dessin (with optional comment lines) so that parsing the
/// output yields an identical dessin.
pub fn serialize(d: &Dessin, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("degree {}\n", d.degree()));
    out.push_str(&format!("x {}\n", d.x()));
    out.push_str(&format!("y {}\n", d.y()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const D0: &str = "# the degree-12 torus dessin\ndegree 12\nx (1 2 3 7 8 9)(6 12)\ny (1 4)(2 5)(7 10)(8 11)(3 6 9 12)\n";

    #[test]
    fn parse_and_round_trip() {
        let (d, comments) = parse(D0).unwrap();
        assert_eq!(d.degree(), 12);
        assert_eq!(comments.len(), 1);
        let text = serialize(&d, &comments);
        let (d2, _) = parse(&text).unwrap();
        assert_eq!(d, d2);
    }

    #[test]
    fn identity_generators() {
        let (d, _) = parse("degree 1\nx id\ny ()\n").unwrap();
        assert_eq!(d.degree(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("degree 12\nx (1 2\ny id\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse("degree 2\nx (1 3)\ny id\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse("x id\ny id\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 0, .. }));
        let e = parse("degree 2\nx id\ny id\n").unwrap_err();
        assert!(matches!(e, Error::NotTransitive { .. }));
        let e = parse("degree 0\nx id\ny id\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse("degree 2\nfoo bar\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }
}
