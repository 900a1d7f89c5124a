//! Line-oriented text format shared by every tool in the crate.
//!
//! ```text
//! c free-form comment
//! h <n> <k> <m>
//! e v1 v2 ... vk
//! ```
//!
//! One header line, then exactly `m` edge lines with strictly increasing
//! 1-based labels. Designs use the same format plus a structured comment
//! `c design t=<t> lambda=<l>` ahead of the header. Parsers reject wrong
//! arity, out-of-range labels, duplicate edges and an edge-count mismatch,
//! reporting 1-based line numbers.

use std::fs;
use std::path::Path;

use crate::designs::{Design, DesignSpec};
use crate::error::{Error, Result};
use crate::hypergraph::{Bijection, Hypergraph, Vertex, VertexSet};

/// Design parameters carried by a `c design` comment line.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DesignMeta {
    pub t: usize,
    pub lambda: usize,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the shared hypergraph format, returning any design metadata seen
/// in the comments.
pub fn parse_hypergraph(input: &str) -> Result<(Hypergraph, Option<DesignMeta>)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut meta: Option<DesignMeta> = None;
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut seen: std::collections::HashSet<VertexSet> = std::collections::HashSet::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("c") => {
                if let Some(m) = parse_design_comment(line) {
                    meta = Some(m?);
                }
            }
            Some("h") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "second header line"));
                }
                let nums: Vec<&str> = tokens.collect();
                if nums.len() != 3 {
                    return Err(parse_err(lineno, "header must be `h <n> <k> <m>`"));
                }
                let parse = |s: &str, what: &str| {
                    s.parse::<usize>()
                        .map_err(|_| parse_err(lineno, format!("bad {what} `{s}`")))
                };
                header = Some((
                    parse(nums[0], "vertex count")?,
                    parse(nums[1], "uniformity")?,
                    parse(nums[2], "edge count")?,
                ));
            }
            Some("e") => {
                let (n, k, m) = header.ok_or_else(|| parse_err(lineno, "edge before header"))?;
                let mut verts: Vec<Vertex> = Vec::with_capacity(k);
                for tok in tokens {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad vertex `{tok}`")))?;
                    verts.push(v);
                }
                if verts.len() != k {
                    return Err(parse_err(
                        lineno,
                        format!("edge has {} vertices, expected {k}", verts.len()),
                    ));
                }
                if verts.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(parse_err(lineno, "labels must be strictly increasing"));
                }
                if verts.first().is_some_and(|&v| v == 0) || verts.iter().any(|&v| v > n) {
                    return Err(parse_err(lineno, format!("label outside 1..={n}")));
                }
                let edge = VertexSet::new(verts).map_err(|e| parse_err(lineno, e.to_string()))?;
                if !seen.insert(edge.clone()) {
                    return Err(parse_err(lineno, format!("duplicate edge {edge}")));
                }
                if edges.len() == m {
                    return Err(parse_err(lineno, format!("more than {m} edges")));
                }
                edges.push(edge);
            }
            Some(tag) => {
                return Err(parse_err(lineno, format!("unknown line tag `{tag}`")));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }

    let (n, k, m) = header.ok_or_else(|| parse_err(input.lines().count(), "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(
            input.lines().count(),
            format!("header claims {m} edges, file has {}", edges.len()),
        ));
    }
    Ok((Hypergraph::new(n, k, edges)?, meta))
}

fn parse_design_comment(line: &str) -> Option<Result<DesignMeta>> {
    let rest = line.strip_prefix("c")?.trim_start();
    let rest = rest.strip_prefix("design")?.trim_start();
    let mut t = None;
    let mut lambda = None;
    for tok in rest.split_whitespace() {
        if let Some(v) = tok.strip_prefix("t=") {
            t = v.parse::<usize>().ok();
        } else if let Some(v) = tok.strip_prefix("lambda=") {
            lambda = v.parse::<usize>().ok();
        }
    }
    match (t, lambda) {
        (Some(t), Some(lambda)) => Some(Ok(DesignMeta { t, lambda })),
        _ => Some(Err(Error::Parse {
            line: 0,
            msg: format!("malformed design comment `{line}`"),
        })),
    }
}

/// Renders a hypergraph in the shared format. A design comment line is
/// emitted first when `meta` is given.
pub fn write_hypergraph(h: &Hypergraph, meta: Option<DesignMeta>) -> String {
    let mut out = String::new();
    if let Some(m) = meta {
        out.push_str(&format!("c design t={} lambda={}\n", m.t, m.lambda));
    }
    out.push_str(&format!("h {} {} {}\n", h.n(), h.k(), h.edge_count()));
    for e in h.edges() {
        out.push('e');
        for v in e.iter() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

pub fn write_design(d: &Design) -> String {
    let h = crate::designs::design_to_hypergraph(d);
    write_hypergraph(
        &h,
        Some(DesignMeta {
            t: d.spec.t,
            lambda: d.spec.lambda,
        }),
    )
}

/// Reads a hypergraph file from disk.
pub fn read_hypergraph_file(path: &Path) -> Result<(Hypergraph, Option<DesignMeta>)> {
    parse_hypergraph(&fs::read_to_string(path)?)
}

/// Reads a design file: hypergraph format plus a `c design` comment, or an
/// explicit spec overriding/checking the file metadata.
pub fn read_design_file(path: &Path, spec: Option<DesignSpec>) -> Result<Design> {
    let (h, meta) = read_hypergraph_file(path)?;
    let spec = match (spec, meta) {
        (Some(s), _) => s,
        (None, Some(m)) => DesignSpec::new(m.t, h.n(), h.k(), m.lambda)?,
        (None, None) => {
            return Err(Error::Parse {
                line: 0,
                msg: "design file lacks a `c design t=.. lambda=..` comment".into(),
            })
        }
    };
    Design::new(spec, h.edges().to_vec())
}

/// Permutation map format written by the packer: one `v -> f(v)` line per
/// vertex.
pub fn write_bijection(f: &Bijection) -> String {
    f.to_string()
}

/// Parses the `v -> f(v)` permutation format.
pub fn parse_bijection(input: &str) -> Result<Bijection> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let parts: Vec<&str> = line.split("->").collect();
        if parts.len() != 2 {
            return Err(parse_err(lineno, "expected `v -> f(v)`"));
        }
        let v: usize = parts[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, "bad source vertex"))?;
        let img: usize = parts[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, "bad image vertex"))?;
        pairs.push((v, img));
    }
    let n = pairs.len();
    let mut map = vec![0usize; n];
    for (v, img) in pairs {
        if v == 0 || v > n {
            return Err(Error::NotAPermutation {
                n,
                reason: format!("source vertex {v} out of range"),
            });
        }
        if map[v - 1] != 0 {
            return Err(Error::NotAPermutation {
                n,
                reason: format!("vertex {v} mapped twice"),
            });
        }
        map[v - 1] = img;
    }
    Bijection::from_map(map)
}

/// Writes a file, creating parent directories as needed.
pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let text = "c a triangle\nh 4 3 1\ne 1 2 3\n";
        let (h, meta) = parse_hypergraph(text).unwrap();
        assert_eq!((h.n(), h.k(), h.edge_count()), (4, 3, 1));
        assert!(meta.is_none());
    }

    #[test]
    fn round_trips_canonically() {
        let h = Hypergraph::complete(5, 3).unwrap();
        let text = write_hypergraph(&h, None);
        let (back, _) = parse_hypergraph(&text).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn design_comment_round_trip() {
        let d = crate::designs::construct_sts(7).unwrap();
        let text = write_design(&d);
        assert!(text.starts_with("c design t=2 lambda=1\n"));
        let (h, meta) = parse_hypergraph(&text).unwrap();
        assert_eq!(meta, Some(DesignMeta { t: 2, lambda: 1 }));
        assert_eq!(h.edge_count(), 7);
    }

    #[test]
    fn rejects_malformed_inputs_with_line_numbers() {
        let cases: &[(&str, usize)] = &[
            ("h 4 3 1\ne 1 2\n", 2),            // wrong arity
            ("h 4 3 1\ne 1 2 5\n", 2),          // out of range
            ("h 4 3 1\ne 2 1 3\n", 2),          // not increasing
            ("h 4 3 2\ne 1 2 3\ne 1 2 3\n", 3), // duplicate
            ("e 1 2 3\nh 4 3 1\n", 1),          // edge before header
            ("h 4 3 2\ne 1 2 3\n", 2),          // count mismatch -> last line
            ("h 4 3\n", 1),                     // short header
            ("x 1 2\n", 1),                     // unknown tag
        ];
        for (text, want_line) in cases {
            match parse_hypergraph(text) {
                Err(Error::Parse { line, .. }) => {
                    assert_eq!(line, *want_line, "wrong line for {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn bijection_round_trip() {
        let f = Bijection::from_map(vec![3, 1, 4, 2]).unwrap();
        let text = write_bijection(&f);
        let back = parse_bijection(&text).unwrap();
        assert_eq!(f, back);
        assert!(parse_bijection("1 -> 2\n1 -> 3\n").is_err());
        assert!(parse_bijection("1 -> 2\n2 -> 2\n").is_err());
    }
}
