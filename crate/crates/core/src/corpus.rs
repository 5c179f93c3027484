//! Named complexes for the CLI and the test suites.

use crate::complex::{
    cycle, isolated_points, nat_example, path, rp2_6, simplex_boundary, solid_simplex, torus7,
    SimplicialComplex,
};
use crate::error::{Error, Result};

/// Entries accepted by `resolve`. Parameterized names take a `:k` suffix.
pub fn corpus_names() -> Vec<String> {
    vec![
        "rp2_6".into(),
        "torus7".into(),
        "nat".into(),
        "path:<m>".into(),
        "cycle:<m>".into(),
        "points:<m>".into(),
        "sphere:<k>".into(),
        "simplex:<k>".into(),
        "irrelevant".into(),
    ]
}

pub fn resolve(name: &str) -> Result<SimplicialComplex> {
    let unknown = || Error::UnknownCorpus(name.to_string());
    match name {
        "rp2_6" => return Ok(rp2_6()),
        "torus7" => return Ok(torus7()),
        "nat" => return Ok(nat_example()),
        "irrelevant" => return Ok(SimplicialComplex::irrelevant(1)),
        _ => {}
    }
    let (kind, arg) = name.split_once(':').ok_or_else(unknown)?;
    let m: usize = arg.parse().map_err(|_| unknown())?;
    match kind {
        "path" if m >= 1 => Ok(path(m)),
        "cycle" if m >= 3 => Ok(cycle(m)),
        "points" if m >= 1 => Ok(isolated_points(m)),
        "sphere" if m >= 1 => Ok(simplex_boundary(m)),
        "simplex" if m >= 1 => Ok(solid_simplex(m)),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_named_and_parameterized() {
        assert_eq!(resolve("rp2_6").unwrap().facets().len(), 10);
        assert_eq!(resolve("torus7").unwrap().facets().len(), 14);
        assert_eq!(resolve("nat").unwrap().facets().len(), 28);
        assert_eq!(resolve("path:3").unwrap().facets().len(), 3);
        assert_eq!(resolve("cycle:5").unwrap().facets().len(), 5);
        assert_eq!(resolve("points:4").unwrap().facets().len(), 4);
        assert_eq!(resolve("sphere:2").unwrap().facets().len(), 3);
        assert!(resolve("cycle:2").is_err());
        assert!(resolve("moebius").is_err());
    }
}
