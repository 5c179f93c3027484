//! Property tests: structural identities and relabeling invariance on
//! randomly generated complexes.

use proptest::prelude::*;

use srtrace_core::classifier::{
    is_cohen_macaulay, is_gorenstein, is_gorenstein_on_punctured_spectrum, module_generators,
    trace_class,
};
use srtrace_core::complex::{Face, SimplicialComplex};
use srtrace_core::field::FieldSpec;
use srtrace_core::homology::{euler_identity_holds, reduced_betti};

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=6).prop_flat_map(|n| {
        let facet = prop::collection::vec(1usize..=n, 1..=n);
        prop::collection::vec(facet, 1..=6)
            .prop_map(move |raw| SimplicialComplex::from_facets(n, &raw).unwrap())
    })
}

fn arb_complex_and_perm() -> impl Strategy<Value = (SimplicialComplex, Vec<usize>)> {
    arb_complex().prop_flat_map(|k| {
        let n = k.n();
        (Just(k), Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn face_set(k: &SimplicialComplex) -> Vec<Face> {
    k.all_faces().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The textbook identity lk σ = st σ ∩ cost σ holds verbatim at
    // vertices (τ ⊉ {v} is the same as τ ∩ {v} = ∅); for larger σ the
    // right-hand side is strictly bigger (any τ meeting σ without
    // containing it), so the general statement is only a containment.
    #[test]
    fn link_is_star_intersect_costar(k in arb_complex()) {
        for sigma in face_set(&k) {
            let lk = face_set(&k.link(&sigma).unwrap());
            let st = face_set(&k.star(&sigma).unwrap());
            let cost = face_set(&k.costar(&sigma).unwrap());
            let intersect: Vec<Face> = st.iter().filter(|f| cost.contains(f)).copied().collect();
            if sigma.card() == 1 {
                prop_assert_eq!(lk, intersect, "σ = {}", sigma);
            } else if !sigma.is_empty() {
                prop_assert!(lk.iter().all(|f| intersect.contains(f)), "σ = {}", sigma);
            }
        }
    }

    #[test]
    fn rebuilding_from_facets_is_identity(k in arb_complex()) {
        let raw: Vec<Vec<usize>> = k.facets().iter().map(|f| f.vertices()).collect();
        prop_assert_eq!(SimplicialComplex::from_facets(k.n(), &raw).unwrap(), k);
    }

    #[test]
    fn strongly_connected_implies_pure(k in arb_complex()) {
        if k.is_strongly_connected().unwrap() {
            prop_assert!(k.is_pure().unwrap());
        }
        if k.is_normal().unwrap() {
            prop_assert!(k.is_pure().unwrap());
        }
    }

    #[test]
    fn euler_identity_over_all_fields(k in arb_complex()) {
        for field in [FieldSpec::Rationals, FieldSpec::prime_field(2).unwrap()] {
            prop_assert!(euler_identity_holds(&k, field).unwrap());
        }
    }

    #[test]
    fn predicates_are_relabeling_invariant((k, perm) in arb_complex_and_perm()) {
        let relabeled = k.relabel(&perm).unwrap();
        prop_assert_eq!(k.is_pure().unwrap(), relabeled.is_pure().unwrap());
        prop_assert_eq!(k.is_connected().unwrap(), relabeled.is_connected().unwrap());
        prop_assert_eq!(
            k.is_strongly_connected().unwrap(),
            relabeled.is_strongly_connected().unwrap()
        );
        prop_assert_eq!(k.is_normal().unwrap(), relabeled.is_normal().unwrap());
        prop_assert_eq!(k.is_pseudomanifold().unwrap(), relabeled.is_pseudomanifold().unwrap());
        prop_assert_eq!(k.cone_face().unwrap().card(), relabeled.cone_face().unwrap().card());
        prop_assert_eq!(k.f_vector().unwrap(), relabeled.f_vector().unwrap());

        let field = FieldSpec::prime_field(3).unwrap();
        let betti_a = reduced_betti(&k, field).unwrap();
        let betti_b = reduced_betti(&relabeled, field).unwrap();
        prop_assert_eq!(betti_a.dims(), betti_b.dims());
        prop_assert_eq!(
            is_cohen_macaulay(&k, field).unwrap(),
            is_cohen_macaulay(&relabeled, field).unwrap()
        );
        prop_assert_eq!(
            is_gorenstein(&k, field).unwrap(),
            is_gorenstein(&relabeled, field).unwrap()
        );
        prop_assert_eq!(
            is_gorenstein_on_punctured_spectrum(&k, field, false).unwrap(),
            is_gorenstein_on_punctured_spectrum(&relabeled, field, false).unwrap()
        );
        prop_assert_eq!(
            trace_class(&k, field).unwrap(),
            trace_class(&relabeled, field).unwrap()
        );
        let a = module_generators(&k, field).unwrap();
        let b = module_generators(&relabeled, field).unwrap();
        prop_assert_eq!(a.total, b.total);
        prop_assert_eq!(a.degrees, b.degrees);
    }
}
