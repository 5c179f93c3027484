//! Facet file format.
//!
//! UTF-8 text. The first nonblank, non-comment line is `n <count>`; every
//! following nonblank line is one facet as space-separated positive vertex
//! labels. Lines starting with `#` are ignored. A file with no facet lines
//! encodes the void complex.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub fn parse_facet_file(text: &str) -> Result<SimplicialComplex> {
    let mut n: Option<usize> = None;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        match n {
            None => {
                let mut it = line.split_whitespace();
                if it.next() != Some("n") {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected header `n <count>`".into(),
                    });
                }
                let count =
                    it.next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or(Error::Parse {
                            line: lineno,
                            msg: "expected a vertex count after `n`".into(),
                        })?;
                if it.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "trailing tokens after the header".into(),
                    });
                }
                n = Some(count);
            }
            Some(_) => {
                let verts = line
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("bad vertex label {t:?}"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                facets.push(verts);
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing header `n <count>`".into(),
    })?;
    SimplicialComplex::from_facets(n, &facets)
}

/// Inverse of `parse_facet_file` for the canonical facet order.
pub fn format_facet_file(k: &SimplicialComplex) -> String {
    let mut out = format!("n {}\n", k.n());
    for f in k.facets() {
        let verts: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&verts.join(" "));
        out.push('\n');
    }
    out
}
