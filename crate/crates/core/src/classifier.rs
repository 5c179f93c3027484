//! Ring-theoretic predicates of the Stanley-Reisner ring `k[Δ]`, decided
//! combinatorially, and the trace classification.
//!
//! The route for each predicate:
//! * Cohen-Macaulay: Reisner's criterion, every link has vanishing reduced
//!   homology below its own dimension.
//! * Gorenstein: Hochster's criterion, the link of the maximal cone face is a homology
//!   sphere. ({∅} stands for the ground field and is Gorenstein.)
//! * Gorenstein on the punctured spectrum: all links of nonempty faces are
//!   Gorenstein; the default checks vertex links only (links of larger faces
//!   are iterated vertex links), and an all-faces mode exists for
//!   cross-validation.
//! * Nearly Gorenstein: Gorenstein, or one of the two exceptional
//!   one-dimensional families: m >= 3 isolated vertices, or a path with
//!   m >= 3 edges.
//! * Levelness and type: from the minimal generators of the canonical
//!   module, read off the relative cycle spaces H_d(Δ, cost σ) and the maps
//!   between them: new generators at a squarefree degree σ are the cokernel
//!   of the combined maps from the σ∖{l}.
//!
//! The final `trace_class` decides where tr(ω) sits: the whole ring, the
//! maximal ideal, or its square; it asserts, rather than assumes, that the
//! last case only happens for non-orientable homology manifolds.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::{
    has_sphere_profile, iota_star_on_bases, is_homology_manifold, is_k_orientable, reduced_betti,
    relative_top_cycles, RelativeCycleBasis,
};
use crate::matrix::ExactMatrix;

/// Where the canonical trace sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TraceClass {
    /// Reisner's criterion fails; the classification does not apply.
    NotCohenMacaulay,
    /// Some proper link is not Gorenstein; tr(ω) is not a power of the
    /// maximal ideal.
    NotPuncturedGorenstein,
    /// tr(ω) = R: Gorenstein.
    TrUnit,
    /// tr(ω) = 𝔪: nearly Gorenstein but not Gorenstein.
    TrMaximal,
    /// tr(ω) = 𝔪²: Gorenstein on the punctured spectrum but not nearly
    /// Gorenstein.
    TrMaxSquared,
}

/// Almost-Gorenstein conclusion; only decided on the punctured-Gorenstein
/// locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlmostGorenstein {
    Yes,
    No,
    Undetermined,
}

/// Minimal generator data of the graded module attached to the complex:
/// for each squarefree degree σ, the number of new generators (cokernel
/// dimension of the combined maps from the subfaces σ∖{l}).
///
/// For Cohen-Macaulay complexes this is the canonical module ω; otherwise
/// it is still well-defined module data but not ω, and is reported under a
/// separate label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaGenerators {
    /// Faces with at least one new generator, with multiplicities.
    pub multiplicities: BTreeMap<Face, usize>,
    /// Total minimal generator count.
    pub total: usize,
    /// Distinct generator degrees |σ|.
    pub degrees: BTreeSet<usize>,
}

impl OmegaGenerators {
    /// Generated in a single degree.
    pub fn single_degree(&self) -> bool {
        self.degrees.len() == 1
    }

    /// Exactly one generator, sitting at the empty face.
    pub fn unit_at_empty(&self) -> bool {
        self.total == 1 && self.multiplicities.get(&Face::EMPTY) == Some(&1)
    }
}

/// Reisner's criterion: β̃_i(lk σ) = 0 for all i < dim lk σ, every σ ∈ Δ
/// (including ∅).
pub fn is_cohen_macaulay(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    for sigma in k.all_faces()? {
        let link = k.link(&sigma)?;
        let d = link.dim().unwrap();
        let betti = reduced_betti(&link, field)?;
        for i in -1..d {
            if betti.get(i) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hochster's criterion: the link of the maximal cone face is a homology
/// sphere over the field.
pub fn is_gorenstein(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let core = k.cone_face()?;
    let link = k.link(&core)?;
    // the sphere condition must hold at every face of the link
    for sigma in link.all_faces()? {
        if !has_sphere_profile(&link.link(&sigma)?, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All localizations away from the maximal ideal Gorenstein, decided through
/// links. `all_faces` switches from the vertex-link shortcut to the
/// exhaustive check.
pub fn is_gorenstein_on_punctured_spectrum(
    k: &SimplicialComplex,
    field: FieldSpec,
    all_faces: bool,
) -> Result<bool> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if all_faces {
        for sigma in k.all_faces()? {
            if sigma.is_empty() {
                continue;
            }
            if !is_gorenstein(&k.link(&sigma)?, field)? {
                return Ok(false);
            }
        }
    } else {
        for v in k.vertex_list() {
            let sigma = Face::from_vertices([v], k.n())?;
            if !is_gorenstein(&k.link(&sigma)?, field)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// m >= 3 isolated vertices.
pub fn is_points_pattern(k: &SimplicialComplex) -> bool {
    !k.is_void() && k.facets().len() >= 3 && k.facets().iter().all(|f| f.card() == 1)
}

/// A path with m >= 3 edges: pure 1-dimensional, connected, a tree, with
/// maximal vertex degree 2.
pub fn is_path_pattern(k: &SimplicialComplex) -> bool {
    if k.is_void() || !k.facets().iter().all(|f| f.card() == 2) {
        return false;
    }
    let edges = k.facets().len();
    if edges < 3 {
        return false;
    }
    let vertices = k.support().card();
    if edges != vertices - 1 {
        return false;
    }
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for f in k.facets() {
        for v in f.vertices() {
            *degree.entry(v).or_insert(0) += 1;
        }
    }
    if degree.values().any(|&d| d > 2) {
        return false;
    }
    matches!(k.is_connected(), Ok(true))
}

/// tr(ω) ⊇ 𝔪. Presupposes Cohen-Macaulay; errors otherwise.
pub fn is_nearly_gorenstein(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if !is_cohen_macaulay(k, field)? {
        return Err(Error::NotCohenMacaulay {
            op: "nearly Gorenstein",
        });
    }
    Ok(is_gorenstein(k, field)? || is_points_pattern(k) || is_path_pattern(k))
}

/// Minimal generator analysis of the graded module ⊕_a H_d(Δ, cost s(a)).
/// Available without the Cohen-Macaulay hypothesis; only then does it
/// describe ω.
pub fn module_generators(k: &SimplicialComplex, field: FieldSpec) -> Result<OmegaGenerators> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let faces = k.all_faces()?;
    let mut cycles: HashMap<Face, RelativeCycleBasis> = HashMap::new();
    for sigma in &faces {
        cycles.insert(*sigma, relative_top_cycles(k, sigma, field)?);
    }
    let mut multiplicities = BTreeMap::new();
    let mut total = 0usize;
    let mut degrees = BTreeSet::new();
    for sigma in &faces {
        let target = &cycles[sigma];
        if target.dim() == 0 {
            continue;
        }
        let mult = if sigma.is_empty() {
            target.dim()
        } else {
            let mut columns: Vec<Vec<_>> = Vec::new();
            for v in sigma.vertices() {
                let tau = sigma.without_vertex(v);
                let m = iota_star_on_bases(&cycles[&tau], target)?;
                for c in 0..m.cols() {
                    columns.push(m.column(c));
                }
            }
            let combined = ExactMatrix::from_columns(field, target.dim(), &columns);
            target.dim() - combined.rank()
        };
        if mult > 0 {
            multiplicities.insert(*sigma, mult);
            total += mult;
            degrees.insert(sigma.card());
        }
    }
    Ok(OmegaGenerators {
        multiplicities,
        total,
        degrees,
    })
}

/// ω generator data; guarded by Cohen-Macaulayness so the result really is
/// canonical-module data.
pub fn omega_min_generators(k: &SimplicialComplex, field: FieldSpec) -> Result<OmegaGenerators> {
    if !is_cohen_macaulay(k, field)? {
        return Err(Error::NotCohenMacaulay {
            op: "omega generator analysis",
        });
    }
    let gens = module_generators(k, field)?;
    debug_assert!(gens.total >= 1, "ω of a CM ring has a generator");
    Ok(gens)
}

/// ω generated in a single degree.
pub fn is_level(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    Ok(omega_min_generators(k, field)?.single_degree())
}

/// Cohen-Macaulay type: minimal generator count of ω.
pub fn cm_type(k: &SimplicialComplex, field: FieldSpec) -> Result<usize> {
    Ok(omega_min_generators(k, field)?.total)
}

/// The trace classification. The 𝔪² branch is not taken on faith: the
/// complex is checked to actually be a non-orientable homology manifold, and
/// an inconsistency surfaces as an error.
pub fn trace_class(k: &SimplicialComplex, field: FieldSpec) -> Result<TraceClass> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if !is_cohen_macaulay(k, field)? {
        return Ok(TraceClass::NotCohenMacaulay);
    }
    if !is_gorenstein_on_punctured_spectrum(k, field, false)? {
        return Ok(TraceClass::NotPuncturedGorenstein);
    }
    if is_gorenstein(k, field)? {
        return Ok(TraceClass::TrUnit);
    }
    if is_points_pattern(k) || is_path_pattern(k) {
        return Ok(TraceClass::TrMaximal);
    }
    let manifold = is_homology_manifold(k, field)?;
    let orientable = k.is_pseudomanifold()? && is_k_orientable(k, field)?;
    if !manifold || orientable {
        return Err(Error::TheoremViolation(format!(
            "tr = m^2 branch reached on {} (homology manifold: {manifold}, orientable: {orientable})",
            k.canonical_encoding()
        )));
    }
    Ok(TraceClass::TrMaxSquared)
}

/// Almost-Gorenstein conclusion: trivially yes for Gorenstein rings; on the
/// punctured-Gorenstein locus it coincides with the nearly-Gorenstein
/// families; elsewhere undecided here.
pub fn almost_gorenstein_class(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<AlmostGorenstein> {
    if !is_cohen_macaulay(k, field)? {
        return Err(Error::NotCohenMacaulay {
            op: "almost Gorenstein",
        });
    }
    if is_gorenstein(k, field)? {
        return Ok(AlmostGorenstein::Yes);
    }
    if is_gorenstein_on_punctured_spectrum(k, field, false)? {
        if is_points_pattern(k) || is_path_pattern(k) {
            Ok(AlmostGorenstein::Yes)
        } else {
            Ok(AlmostGorenstein::No)
        }
    } else {
        Ok(AlmostGorenstein::Undetermined)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cycle, isolated_points, nat_example, path, rp2_6, solid_simplex, torus7};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn reisner_on_the_corpus() {
        assert!(is_cohen_macaulay(&rp2_6(), q()).unwrap());
        assert!(is_cohen_macaulay(&rp2_6(), gf(3)).unwrap());
        assert!(!is_cohen_macaulay(&rp2_6(), gf(2)).unwrap());
        for f in [q(), gf(2), gf(3)] {
            assert!(!is_cohen_macaulay(&torus7(), f).unwrap());
        }
        assert!(is_cohen_macaulay(&path(3), q()).unwrap());
        assert!(is_cohen_macaulay(&isolated_points(4), gf(2)).unwrap());
    }

    #[test]
    fn gorenstein_examples() {
        assert!(is_gorenstein(&cycle(6), q()).unwrap());
        assert!(!is_gorenstein(&rp2_6(), gf(2)).unwrap());
        assert!(is_gorenstein(&solid_simplex(3), q()).unwrap());
        assert!(is_gorenstein(&crate::complex::SimplicialComplex::irrelevant(1), q()).unwrap());
        // a 2-edge path is a cone over two points, hence Gorenstein
        assert!(is_gorenstein(&path(2), q()).unwrap());
        assert!(!is_gorenstein(&path(3), q()).unwrap());
    }

    #[test]
    fn punctured_gorenstein_examples() {
        assert!(is_gorenstein_on_punctured_spectrum(&rp2_6(), q(), false).unwrap());
        assert!(is_gorenstein_on_punctured_spectrum(&rp2_6(), q(), true).unwrap());
        for f in [q(), gf(2), gf(3)] {
            assert!(!is_gorenstein_on_punctured_spectrum(&nat_example(), f, false).unwrap());
        }
        assert!(is_gorenstein_on_punctured_spectrum(&path(3), q(), false).unwrap());
    }

    #[test]
    fn nearly_gorenstein_families() {
        assert!(is_nearly_gorenstein(&isolated_points(3), q()).unwrap());
        assert!(is_nearly_gorenstein(&path(3), q()).unwrap());
        // the 2-edge path is nearly Gorenstein through Gorensteinness
        assert!(is_nearly_gorenstein(&path(2), q()).unwrap());
        assert!(!is_nearly_gorenstein(&rp2_6(), q()).unwrap());
        // 2 points form a 0-sphere: Gorenstein, hence nearly Gorenstein
        assert!(is_nearly_gorenstein(&isolated_points(2), q()).unwrap());
        assert!(is_nearly_gorenstein(&rp2_6(), gf(2)).is_err()); // not CM
    }

    #[test]
    fn pattern_matchers() {
        assert!(is_points_pattern(&isolated_points(3)));
        assert!(!is_points_pattern(&isolated_points(2)));
        assert!(is_path_pattern(&path(3)));
        assert!(!is_path_pattern(&path(2)));
        assert!(!is_path_pattern(&cycle(4)));
        // relabeled path still matches
        let relabeled = path(4).relabel(&[3, 5, 1, 4, 2]).unwrap();
        assert!(is_path_pattern(&relabeled));
    }

    #[test]
    fn omega_generators_examples() {
        // three points: two generators at ∅, level of type 2
        let g = omega_min_generators(&isolated_points(3), q()).unwrap();
        assert_eq!(g.total, 2);
        assert_eq!(g.multiplicities.get(&Face::EMPTY), Some(&2));
        assert!(g.single_degree());

        // projective plane over ℚ: one generator per vertex
        let g = omega_min_generators(&rp2_6(), q()).unwrap();
        assert_eq!(g.total, 6);
        assert!(g.single_degree());
        assert_eq!(g.degrees.iter().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(g.multiplicities.len(), 6);
        assert!(g.multiplicities.values().all(|&m| m == 1));

        // Gorenstein: single generator
        for k in [cycle(4), solid_simplex(2), path(2)] {
            let g = omega_min_generators(&k, q()).unwrap();
            assert_eq!(g.total, 1);
        }

        // char 2, projective plane (not CM there): module data still exists
        // and is free of rank one at the empty face
        let g = module_generators(&rp2_6(), gf(2)).unwrap();
        assert!(g.unit_at_empty());
    }

    #[test]
    fn orientable_manifold_module_is_free_of_rank_one() {
        // the torus is an orientable homology manifold, so the module data
        // concentrates in a single generator at the empty face over every
        // field, CM or not
        for field in [q(), gf(2), gf(3)] {
            let g = module_generators(&torus7(), field).unwrap();
            assert!(g.unit_at_empty(), "{field}: {:?}", g.multiplicities);
        }
    }

    #[test]
    fn levelness_and_type() {
        assert!(is_level(&rp2_6(), q()).unwrap());
        assert_eq!(cm_type(&rp2_6(), q()).unwrap(), 6);
        assert_eq!(cm_type(&cycle(5), q()).unwrap(), 1);
        assert_eq!(cm_type(&isolated_points(4), gf(3)).unwrap(), 3);
        assert!(cm_type(&torus7(), q()).is_err());
    }

    #[test]
    fn trace_classification_examples() {
        assert_eq!(
            trace_class(&rp2_6(), gf(3)).unwrap(),
            TraceClass::TrMaxSquared
        );
        assert_eq!(
            trace_class(&rp2_6(), q()).unwrap(),
            TraceClass::TrMaxSquared
        );
        assert_eq!(
            trace_class(&rp2_6(), gf(2)).unwrap(),
            TraceClass::NotCohenMacaulay
        );
        assert_eq!(trace_class(&path(4), q()).unwrap(), TraceClass::TrMaximal);
        assert_eq!(trace_class(&cycle(5), q()).unwrap(), TraceClass::TrUnit);
        assert_eq!(
            trace_class(&nat_example(), q()).unwrap(),
            TraceClass::NotCohenMacaulay
        );
        assert_eq!(
            trace_class(&torus7(), gf(2)).unwrap(),
            TraceClass::NotCohenMacaulay
        );
    }

    #[test]
    fn almost_gorenstein_examples() {
        assert_eq!(
            almost_gorenstein_class(&path(3), q()).unwrap(),
            AlmostGorenstein::Yes
        );
        assert_eq!(
            almost_gorenstein_class(&rp2_6(), q()).unwrap(),
            AlmostGorenstein::No
        );
        assert!(almost_gorenstein_class(&torus7(), q()).is_err());
    }
}
