//! Exhaustive sweep over every labeled complex on a small ground set,
//! checking the classification theorems and the supporting lemmas on each
//! one, with the trace oracle cross-validating the classifier wherever the
//! classification applies.
//!
//! Checks per complex and field:
//! * classifier/oracle agreement on Cohen-Macaulay punctured-Gorenstein
//!   complexes (and `Other` confirmation on CM complexes that are not);
//! * punctured-Gorenstein CM rings are level;
//! * the homology-manifold implications (connected + dim >= 2 +
//!   punctured-Gorenstein + non-Gorenstein; the pseudomanifold variant; the
//!   cone-point trichotomy);
//! * characteristic 2: the module data of every normal pseudomanifold is
//!   free of rank one at the empty face;
//! * the vertex-link shortcut for punctured-Gorensteinness agrees with the
//!   all-faces check;
//! * the alternating-sum identity between the f-vector and the Betti
//!   numbers, the link/relative-cycle dimension match at every face, and
//!   the rank-one/isomorphism facts for normal pseudomanifolds;
//! * nearly Gorenstein in dimension >= 2 forces Gorenstein;
//! * levelness-based regular-element criterion: for level CM rings with at
//!   least as many canonical-module generators as vertices, Gorenstein iff
//!   the degree-1 trace part contains a nonzero divisor.
//!
//! Orientability is cross-validated per complex over the three standard
//! fields: sign-walk success, top Betti number 1 over ℚ and over GF(3) all
//! coincide, and the top Betti number over GF(2) is 1 for every
//! pseudomanifold.

use std::collections::BTreeMap;

use rayon::iter::{ParallelBridge, ParallelIterator};
use serde::Serialize;

use crate::classifier::{
    is_cohen_macaulay, is_gorenstein, is_gorenstein_on_punctured_spectrum, is_nearly_gorenstein,
    module_generators, trace_class,
};
use crate::complex::{enumerate_complexes, SimplicialComplex};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::homology::{
    euler_identity_holds, iota_star_on_bases, is_homology_manifold, orientable_sign_walk,
    reduced_betti, relative_top_cycles, top_betti,
};
use crate::oracle::{
    monomial_basis, span_contains_nonzero_divisor, trace_components, OracleOptions, OracleVerdict,
};
use crate::report::SCHEMA_VERSION;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_n: usize,
    pub fields: Vec<FieldSpec>,
    pub oracle: bool,
}

impl SweepConfig {
    pub fn new(max_n: usize) -> Self {
        SweepConfig {
            max_n,
            fields: vec![
                FieldSpec::Rationals,
                FieldSpec::prime_field(2).unwrap(),
                FieldSpec::prime_field(3).unwrap(),
            ],
            oracle: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub complex: String,
    pub field: String,
    pub rule: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub schema: u32,
    pub max_n: usize,
    pub fields: Vec<FieldSpec>,
    pub total_complexes: u64,
    pub classified: u64,
    pub oracle_runs: u64,
    /// Trace-class tallies per field.
    pub counts: BTreeMap<String, BTreeMap<String, u64>>,
    /// Empty on a healthy run.
    pub violations: Vec<Violation>,
}

#[derive(Default)]
struct Outcome {
    total: u64,
    classified: u64,
    oracle_runs: u64,
    counts: BTreeMap<String, BTreeMap<String, u64>>,
    violations: Vec<Violation>,
}

impl Outcome {
    fn merge(mut self, other: Outcome) -> Outcome {
        self.total += other.total;
        self.classified += other.classified;
        self.oracle_runs += other.oracle_runs;
        for (field, classes) in other.counts {
            let entry = self.counts.entry(field).or_default();
            for (class, n) in classes {
                *entry.entry(class).or_insert(0) += n;
            }
        }
        self.violations.extend(other.violations);
        self
    }
}

/// Run the sweep; the summary reports zero violations on a healthy build.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary> {
    let outcome = enumerate_complexes(config.max_n)?
        .par_bridge()
        .map(|k| check_complex(&k, config))
        .reduce(Outcome::default, Outcome::merge);
    let mut violations = outcome.violations;
    violations.sort();
    Ok(SweepSummary {
        schema: SCHEMA_VERSION,
        max_n: config.max_n,
        fields: config.fields.clone(),
        total_complexes: outcome.total,
        classified: outcome.classified,
        oracle_runs: outcome.oracle_runs,
        counts: outcome.counts,
        violations,
    })
}

fn check_complex(k: &SimplicialComplex, config: &SweepConfig) -> Outcome {
    let mut out = Outcome {
        total: 1,
        ..Default::default()
    };
    if k.is_void() {
        return out;
    }
    out.classified = 1;
    let enc = k.canonical_encoding();
    let violate = |rule: &str, field: String, detail: String, out: &mut Outcome| {
        out.violations.push(Violation {
            complex: enc.clone(),
            field,
            rule: rule.to_string(),
            detail,
        });
    };

    // run the whole complex under catch-all so one broken case does not
    // abort the sweep; errors become violations
    let result = (|| -> Result<()> {
        let dim = k.dim().unwrap();
        let pure = k.is_pure()?;
        let connected = k.is_connected()?;
        let strongly_connected = k.is_strongly_connected()?;
        let normal = k.is_normal()?;
        let pseudomanifold = k.is_pseudomanifold()?;

        if strongly_connected && !pure {
            violate(
                "strongly_connected_implies_pure",
                "-".into(),
                String::new(),
                &mut out,
            );
        }
        if normal && !pure {
            violate("normal_implies_pure", "-".into(), String::new(), &mut out);
        }
        if normal && dim >= 1 && !connected {
            violate(
                "normal_implies_connected",
                "-".into(),
                String::new(),
                &mut out,
            );
        }

        // orientability cross-validation over the three standard fields
        if pseudomanifold {
            let walk = orientable_sign_walk(k)?.is_some();
            let bq = top_betti(k, FieldSpec::Rationals)?;
            let b3 = top_betti(k, FieldSpec::prime_field(3).unwrap())?;
            let b2 = top_betti(k, FieldSpec::prime_field(2).unwrap())?;
            if walk != (bq == 1) || (bq == 1) != (b3 == 1) {
                violate(
                    "orientability_equivalence",
                    "-".into(),
                    format!("walk {walk}, betti_q {bq}, betti_gf3 {b3}"),
                    &mut out,
                );
            }
            if b2 != 1 {
                violate(
                    "char2_orientability",
                    "gf:2".into(),
                    format!("top betti over GF(2) is {b2}"),
                    &mut out,
                );
            }
        }

        for &field in &config.fields {
            check_field(k, field, config, &mut out, &enc)?;
        }
        Ok(())
    })();
    if let Err(e) = result {
        out.violations.push(Violation {
            complex: enc,
            field: "-".into(),
            rule: "internal_error".into(),
            detail: e.to_string(),
        });
    }
    out
}

fn check_field(
    k: &SimplicialComplex,
    field: FieldSpec,
    config: &SweepConfig,
    out: &mut Outcome,
    enc: &str,
) -> Result<()> {
    let violate = |rule: &str, detail: String, out: &mut Outcome| {
        out.violations.push(Violation {
            complex: enc.to_string(),
            field: field.to_string(),
            rule: rule.to_string(),
            detail,
        });
    };
    let dim = k.dim().unwrap();
    let connected = k.is_connected()?;
    let pseudomanifold = k.is_pseudomanifold()?;
    let normal = k.is_normal()?;

    let cm = is_cohen_macaulay(k, field)?;
    let gorenstein = is_gorenstein(k, field)?;
    let pg = is_gorenstein_on_punctured_spectrum(k, field, false)?;
    let pg_all = is_gorenstein_on_punctured_spectrum(k, field, true)?;
    if pg != pg_all {
        violate(
            "punctured_gorenstein_shortcut",
            format!("vertex links say {pg}, all faces say {pg_all}"),
            out,
        );
    }
    if gorenstein && !pg {
        violate("gorenstein_implies_punctured", String::new(), out);
    }

    if !euler_identity_holds(k, field)? {
        violate("euler_identity", String::new(), out);
    }

    // relative cycle dimensions must match the link homology at every face
    for sigma in k.all_faces()? {
        let rel = relative_top_cycles(k, &sigma, field)?;
        let link = k.link(&sigma)?;
        let expected = reduced_betti(&link, field)?.get(dim - sigma.card() as i32);
        if rel.dim() != expected {
            violate(
                "relative_cycles_vs_link",
                format!("σ = {sigma}: relative {} vs link {expected}", rel.dim()),
                out,
            );
        }
        if normal && pseudomanifold {
            if rel.dim() > 1 {
                violate(
                    "normal_pseudomanifold_rank_one",
                    format!("σ = {sigma}: dim {}", rel.dim()),
                    out,
                );
            }
            for v in sigma.vertices() {
                let tau = sigma.without_vertex(v);
                let source = relative_top_cycles(k, &tau, field)?;
                if source.dim() == 0 {
                    continue;
                }
                let m = iota_star_on_bases(&source, &rel)?;
                if m.rows() != m.cols() || m.rank() != m.rows() {
                    violate(
                        "normal_pseudomanifold_iota_iso",
                        format!("{tau} -> {sigma} has rank {}", m.rank()),
                        out,
                    );
                }
            }
        }
    }

    let gens = module_generators(k, field)?;
    if field.characteristic() == 2 && normal && pseudomanifold && !gens.unit_at_empty() {
        violate(
            "char2_normal_pseudomanifold_free_module",
            format!("generators {:?}", gens.multiplicities),
            out,
        );
    }
    if field.characteristic() != 2 && pseudomanifold && is_homology_manifold(k, field)? {
        // non-orientable homology manifolds generate exactly at the vertices
        let orientable = top_betti(k, field)? != 0;
        if !orientable {
            let vertex_count = k.support().card();
            let all_vertices = gens.total == vertex_count
                && gens.multiplicities.keys().all(|f| f.card() == 1)
                && gens.multiplicities.values().all(|&m| m == 1);
            if !all_vertices {
                violate(
                    "nonorientable_manifold_vertex_generators",
                    format!("generators {:?}", gens.multiplicities),
                    out,
                );
            }
        }
    }

    if connected && dim >= 2 && pg && !gorenstein && !is_homology_manifold(k, field)? {
        violate("punctured_gorenstein_manifold", String::new(), out);
    }
    if pg && connected && pseudomanifold && !is_homology_manifold(k, field)? {
        violate("pseudomanifold_manifold", String::new(), out);
    }
    if pg && connected {
        let trichotomy = dim <= 1 || !k.cone_face()?.is_empty() || is_homology_manifold(k, field)?;
        if !trichotomy {
            violate("cone_point_trichotomy", String::new(), out);
        }
    }

    let class = trace_class(k, field)?;
    *out.counts
        .entry(field.to_string())
        .or_default()
        .entry(format!("{class:?}"))
        .or_insert(0) += 1;

    if cm {
        let nearly = is_nearly_gorenstein(k, field)?;
        if gorenstein && !nearly {
            violate("gorenstein_implies_nearly", String::new(), out);
        }
        if nearly && dim >= 2 && !gorenstein {
            violate("nearly_gorenstein_dim3_gorenstein", String::new(), out);
        }
        if pg && !gens.single_degree() {
            violate(
                "punctured_gorenstein_level",
                format!("generator degrees {:?}", gens.degrees),
                out,
            );
        }

        // levelness-based regular-element criterion needs the oracle even
        // off the punctured-Gorenstein locus
        let dim_r1 = monomial_basis(k, 1)?.len();
        let wednesday_trigger = gens.single_degree() && gens.total >= dim_r1 && dim_r1 > 0;

        if config.oracle && (pg || wednesday_trigger) {
            // the sweep universe is tiny; lift the dimension cap to it
            let opts = OracleOptions {
                max_dim: k.n() as i32,
                ..OracleOptions::default()
            };
            match trace_components(k, field, &opts) {
                Ok(tc) => {
                    out.oracle_runs += 1;
                    let verdict = tc.components.verdict;
                    if pg {
                        if !verdict.matches(class) {
                            violate(
                                "trace_crosscheck",
                                format!(
                                    "classifier {class:?} vs oracle {verdict:?} dims {:?}",
                                    tc.components.tr_dims
                                ),
                                out,
                            );
                        }
                    } else if verdict != OracleVerdict::Other {
                        violate(
                            "trace_not_power_of_maximal",
                            format!(
                                "not punctured-Gorenstein but oracle found {verdict:?} dims {:?}",
                                tc.components.tr_dims
                            ),
                            out,
                        );
                    }
                    if wednesday_trigger {
                        let has_nzd = span_contains_nonzero_divisor(&tc.tr1_basis, k)?;
                        if has_nzd != gorenstein {
                            violate(
                                "level_trace_regular_element",
                                format!("tr1 nzd {has_nzd} vs gorenstein {gorenstein}"),
                                out,
                            );
                        }
                    }
                }
                Err(e) => {
                    violate("oracle_failure", e.to_string(), out);
                }
            }
        }
    }
    Ok(())
}
