//! Differential testing beyond the exhaustive range: seeded random
//! complexes on 6 vertices, plus handpicked 6-vertex spheres, run through
//! both engines. Wherever the classification applies the oracle must agree;
//! where it does not, the oracle must refuse the power-of-maximal pattern.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use srtrace_core::classifier::{trace_class, TraceClass};
use srtrace_core::complex::{cycle, SimplicialComplex};
use srtrace_core::field::FieldSpec;
use srtrace_core::oracle::{crosscheck, CrosscheckStatus, OracleOptions};

fn fields() -> [FieldSpec; 3] {
    [
        FieldSpec::Rationals,
        FieldSpec::prime_field(2).unwrap(),
        FieldSpec::prime_field(3).unwrap(),
    ]
}

fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let facet_count = rng.gen_range(1..=6);
    let raw: Vec<Vec<usize>> = (0..facet_count)
        .map(|_| {
            let size = rng.gen_range(1..=4usize);
            (0..size).map(|_| rng.gen_range(1..=n)).collect()
        })
        .collect();
    SimplicialComplex::from_facets(n, &raw).unwrap()
}

/// Boundary of the 3-dimensional cross-polytope: the octahedron, with
/// opposite vertex pairs (1,2), (3,4), (5,6).
fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_facets(6, &facets).unwrap()
}

/// Suspension: join with two fresh apex points.
fn suspension_of_square() -> SimplicialComplex {
    let base = {
        let raw: Vec<Vec<usize>> = cycle(4).facets().iter().map(|f| f.vertices()).collect();
        SimplicialComplex::from_facets(6, &raw).unwrap()
    };
    let north = SimplicialComplex::from_facets(6, &[vec![5]]).unwrap();
    let south = SimplicialComplex::from_facets(6, &[vec![6]]).unwrap();
    base.join(&north)
        .unwrap()
        .union_with(&base.join(&south).unwrap())
}

fn run_both_engines(k: &SimplicialComplex, opts: &OracleOptions) {
    for field in fields() {
        let class = trace_class(k, field).unwrap();
        match class {
            TraceClass::NotCohenMacaulay => {}
            _ => {
                let r = crosscheck(k, field, opts).unwrap();
                assert!(
                    r.passed(),
                    "{} over {field}: {}",
                    k.canonical_encoding(),
                    r.detail
                );
                match class {
                    TraceClass::NotPuncturedGorenstein => {
                        assert_eq!(r.status, CrosscheckStatus::OracleConfirmsOther)
                    }
                    _ => assert_eq!(r.status, CrosscheckStatus::Agree),
                }
            }
        }
    }
}

#[test]
fn six_vertex_spheres_are_gorenstein_by_both_engines() {
    let opts = OracleOptions::default();
    for k in [octahedron(), suspension_of_square()] {
        for field in fields() {
            assert_eq!(trace_class(&k, field).unwrap(), TraceClass::TrUnit);
        }
        run_both_engines(&k, &opts);
    }
}

#[test]
fn random_six_vertex_complexes_agree_across_engines() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1ff);
    let opts = OracleOptions {
        max_dim: 6,
        ..OracleOptions::default()
    };
    let mut oracle_exercised = 0usize;
    for _ in 0..800 {
        let k = random_complex(&mut rng, 6);
        if k.is_void() {
            continue;
        }
        if fields()
            .iter()
            .any(|&f| trace_class(&k, f).unwrap() != TraceClass::NotCohenMacaulay)
        {
            oracle_exercised += 1;
        }
        run_both_engines(&k, &opts);
    }
    assert!(
        oracle_exercised > 30,
        "deck too degenerate: {oracle_exercised}"
    );
}
