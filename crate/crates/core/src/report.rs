//! The JSON report contract: one `ClassificationReport` per input complex,
//! with one entry per requested field. Serialization order is fixed by the
//! struct layout and sorted containers, so a report is byte-deterministic
//! for a fixed input and configuration (`schema` is bumped on any change).

use serde::Serialize;

use crate::classifier::{
    almost_gorenstein_class, is_cohen_macaulay, is_gorenstein, is_gorenstein_on_punctured_spectrum,
    is_nearly_gorenstein, module_generators, trace_class, AlmostGorenstein, OmegaGenerators,
    TraceClass,
};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::{is_homology_manifold, is_homology_sphere, is_k_orientable, is_orientable_z};
use crate::oracle::{crosscheck, CrosscheckStatus, OracleOptions, TraceComponents};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ComplexSummary {
    pub id: String,
    pub n: usize,
    pub dim: Option<i32>,
    pub f_vector: Vec<u64>,
    pub support: Vec<usize>,
    pub facets: Vec<Face>,
    pub encoding: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Flags {
    pub pure: bool,
    pub connected: bool,
    pub strongly_connected: bool,
    pub normal: bool,
    pub pseudomanifold: bool,
    pub homology_manifold: bool,
    pub homology_sphere: bool,
    /// Only defined for pseudomanifolds.
    pub orientable_z: Option<bool>,
    pub k_orientable: Option<bool>,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub punctured_gorenstein: bool,
    /// Only defined under Cohen-Macaulayness.
    pub nearly_gorenstein: Option<bool>,
    pub level: Option<bool>,
    /// The generator analysis found a single generator at the empty face,
    /// i.e. the module data is free of rank one (Gorenstein-like without
    /// assuming CM).
    pub quasi_gorenstein_candidate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceMultiplicity {
    pub face: Face,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleGeneratorsReport {
    /// True when the complex is Cohen-Macaulay over this field, in which
    /// case the data below describes the canonical module; otherwise it is
    /// generator data of the same graded module but not ω.
    pub is_omega_data: bool,
    pub total: usize,
    pub degrees: Vec<usize>,
    pub by_face: Vec<FaceMultiplicity>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub trace: Option<TraceComponents>,
    pub crosscheck: CrosscheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldReport {
    pub field: FieldSpec,
    pub flags: Flags,
    pub cm_type: Option<usize>,
    pub module_generators: ModuleGeneratorsReport,
    pub trace_class: TraceClass,
    pub almost_gorenstein: Option<AlmostGorenstein>,
    pub oracle: Option<OracleReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub complex: ComplexSummary,
    pub reports: Vec<FieldReport>,
}

#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    pub oracle: bool,
    pub debug_all_faces: bool,
    pub oracle_options: OracleOptions,
}

fn generators_report(gens: &OmegaGenerators, is_omega: bool) -> ModuleGeneratorsReport {
    ModuleGeneratorsReport {
        is_omega_data: is_omega,
        total: gens.total,
        degrees: gens.degrees.iter().copied().collect(),
        by_face: gens
            .multiplicities
            .iter()
            .map(|(face, &multiplicity)| FaceMultiplicity {
                face: *face,
                multiplicity,
            })
            .collect(),
    }
}

/// Assemble the full report for one complex over one field.
pub fn classify_field(
    k: &SimplicialComplex,
    field: FieldSpec,
    opts: &ClassifyOptions,
) -> Result<FieldReport> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let mut notes = Vec::new();
    let dim = k.dim().unwrap();

    let pure = k.is_pure()?;
    let connected = k.is_connected()?;
    let strongly_connected = k.is_strongly_connected()?;
    let normal = k.is_normal()?;
    let pseudomanifold = k.is_pseudomanifold()?;
    if dim < 1 {
        notes.push("pseudomanifold is defined false in dimension <= 0".to_string());
    }
    let (orientable_z, k_orientable) = if pseudomanifold {
        (Some(is_orientable_z(k)?), Some(is_k_orientable(k, field)?))
    } else {
        (None, None)
    };

    let homology_sphere = is_homology_sphere(k, field)?;
    let homology_manifold = is_homology_manifold(k, field)?;
    let cohen_macaulay = is_cohen_macaulay(k, field)?;
    let gorenstein = is_gorenstein(k, field)?;
    let punctured_gorenstein = is_gorenstein_on_punctured_spectrum(k, field, false)?;
    if opts.debug_all_faces {
        let exhaustive = is_gorenstein_on_punctured_spectrum(k, field, true)?;
        if exhaustive != punctured_gorenstein {
            return Err(Error::TheoremViolation(format!(
                "vertex-link shortcut disagrees with the all-faces check on {}",
                k.canonical_encoding()
            )));
        }
        notes.push("punctured-Gorenstein verified against all faces".to_string());
    }

    let nearly_gorenstein = if cohen_macaulay {
        Some(is_nearly_gorenstein(k, field)?)
    } else {
        notes.push("nearly Gorenstein undefined here (not Cohen-Macaulay)".to_string());
        None
    };

    let gens = module_generators(k, field)?;
    let quasi_gorenstein_candidate = gens.unit_at_empty();
    let (level, cm_type) = if cohen_macaulay {
        (Some(gens.single_degree()), Some(gens.total))
    } else {
        notes.push("level/type undefined here (not Cohen-Macaulay)".to_string());
        (None, None)
    };

    let class = trace_class(k, field)?;
    let almost_gorenstein = if cohen_macaulay {
        Some(almost_gorenstein_class(k, field)?)
    } else {
        None
    };

    let oracle = if opts.oracle {
        match crosscheck(k, field, &opts.oracle_options) {
            Ok(r) => Some(OracleReport {
                trace: r.oracle,
                crosscheck: r.status,
                detail: r.detail,
            }),
            Err(Error::OracleCap(msg)) => {
                notes.push(format!("oracle skipped: {msg}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let report = FieldReport {
        field,
        flags: Flags {
            pure,
            connected,
            strongly_connected,
            normal,
            pseudomanifold,
            homology_manifold,
            homology_sphere,
            orientable_z,
            k_orientable,
            cohen_macaulay,
            gorenstein,
            punctured_gorenstein,
            nearly_gorenstein,
            level,
            quasi_gorenstein_candidate,
        },
        cm_type,
        module_generators: generators_report(&gens, cohen_macaulay),
        trace_class: class,
        almost_gorenstein,
        oracle,
        notes,
    };
    validate_field_report(&report, k)?;
    Ok(report)
}

/// Logical implications every report must satisfy; a failure here is an
/// internal inconsistency, not an input error.
fn validate_field_report(r: &FieldReport, k: &SimplicialComplex) -> Result<()> {
    let f = &r.flags;
    let fail = |what: &str| {
        Err(Error::TheoremViolation(format!(
            "{what} violated on {}",
            k.canonical_encoding()
        )))
    };
    if f.gorenstein && f.nearly_gorenstein == Some(false) {
        return fail("Gorenstein implies nearly Gorenstein");
    }
    if f.nearly_gorenstein == Some(true) && !f.punctured_gorenstein {
        return fail("nearly Gorenstein implies punctured-Gorenstein");
    }
    if f.strongly_connected && !f.pure {
        return fail("strongly connected implies pure");
    }
    if f.normal && !f.pure {
        return fail("normal implies pure");
    }
    let in_tower = matches!(
        r.trace_class,
        TraceClass::TrUnit | TraceClass::TrMaximal | TraceClass::TrMaxSquared
    );
    if in_tower != (f.cohen_macaulay && f.punctured_gorenstein) {
        return fail("trace classes must coincide with CM + punctured-Gorenstein");
    }
    if r.trace_class == TraceClass::TrUnit && !f.gorenstein {
        return fail("TrUnit must mean Gorenstein");
    }
    Ok(())
}

/// Report for one complex over several fields.
pub fn classify_complex(
    k: &SimplicialComplex,
    id: &str,
    fields: &[FieldSpec],
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let reports = fields
        .iter()
        .map(|&f| classify_field(k, f, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        schema: SCHEMA_VERSION,
        complex: ComplexSummary {
            id: id.to_string(),
            n: k.n(),
            dim: k.dim(),
            f_vector: k.f_vector()?,
            support: k.vertex_list(),
            facets: k.facets().to_vec(),
            encoding: k.canonical_encoding(),
        },
        reports,
    })
}

/// Canonical serialization of any report value.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{isolated_points, nat_example, path, rp2_6, SimplicialComplex};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn report_for_rp2_over_gf3_with_oracle() {
        let opts = ClassifyOptions {
            oracle: true,
            ..Default::default()
        };
        let r = classify_complex(&rp2_6(), "rp2_6", &[gf(3)], &opts).unwrap();
        let fr = &r.reports[0];
        assert_eq!(fr.trace_class, TraceClass::TrMaxSquared);
        assert_eq!(fr.flags.k_orientable, Some(false));
        assert_eq!(fr.cm_type, Some(6));
        assert_eq!(fr.flags.level, Some(true));
        let oracle = fr.oracle.as_ref().unwrap();
        assert_eq!(oracle.crosscheck, CrosscheckStatus::Agree);
        assert_eq!(oracle.trace.as_ref().unwrap().tr_dims, [0, 0, 21]);
    }

    #[test]
    fn report_for_nat_fails_punctured_gorenstein() {
        for field in [q(), gf(2), gf(3)] {
            let r = classify_complex(&nat_example(), "nat", &[field], &Default::default()).unwrap();
            let fr = &r.reports[0];
            assert!(fr.flags.strongly_connected);
            assert!(fr.flags.normal);
            assert!(fr.flags.pseudomanifold);
            assert!(!fr.flags.homology_manifold);
            assert!(!fr.flags.punctured_gorenstein);
        }
    }

    #[test]
    fn irrelevant_complex_is_gorenstein() {
        let k = SimplicialComplex::irrelevant(1);
        let r = classify_complex(&k, "irrelevant", &[q()], &Default::default()).unwrap();
        assert_eq!(r.reports[0].trace_class, TraceClass::TrUnit);
        assert_eq!(r.reports[0].cm_type, Some(1));
    }

    #[test]
    fn oracle_confirms_other_off_the_punctured_locus() {
        // cone over a path: CM but the apex link is not Gorenstein
        let cone =
            SimplicialComplex::from_facets(5, &[vec![1, 2, 5], vec![2, 3, 5], vec![3, 4, 5]])
                .unwrap();
        let opts = ClassifyOptions {
            oracle: true,
            ..Default::default()
        };
        let r = classify_complex(&cone, "fan", &[q()], &opts).unwrap();
        assert_eq!(r.reports[0].trace_class, TraceClass::NotPuncturedGorenstein);
        let oracle = r.reports[0].oracle.as_ref().unwrap();
        assert_eq!(oracle.crosscheck, CrosscheckStatus::OracleConfirmsOther);
    }

    #[test]
    fn json_output_is_deterministic() {
        let opts = ClassifyOptions {
            oracle: true,
            ..Default::default()
        };
        let a =
            to_canonical_json(&classify_complex(&path(3), "path:3", &[q(), gf(2)], &opts).unwrap());
        let b =
            to_canonical_json(&classify_complex(&path(3), "path:3", &[q(), gf(2)], &opts).unwrap());
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": 1"));
    }

    #[test]
    fn debug_all_faces_mode_is_consistent() {
        let opts = ClassifyOptions {
            debug_all_faces: true,
            ..Default::default()
        };
        for k in [rp2_6(), nat_example(), isolated_points(4)] {
            classify_complex(&k, "x", &[q()], &opts).unwrap();
        }
    }
}
