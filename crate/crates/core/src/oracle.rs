//! Brute-force computation of the canonical trace in degrees 0, 1, 2 via
//! fractional-ideal arithmetic inside the Stanley-Reisner ring, independent
//! of the combinatorial classifier it verifies.
//!
//! The route: embed the top relative cycle spaces into R by
//! Σ a_τ 1_τ ↦ Σ a_τ x_τ x_σ, let J be the ideal these images generate,
//! find a homogeneous nonzero divisor f ∈ J, and compute
//!
//!   tr = J · J⁻¹,   J⁻¹ = (1/f) · (fR :_R J),
//!
//! degree by degree with exact linear algebra. Degrees 0..2 suffice for the
//! verdict: R is standard graded, so R_1·R_d = R_{d+1} for d >= 1; an ideal
//! with unit part is R, one with zero part in degree 0 and full degree-1
//! part is exactly 𝔪, and one with zero parts in degrees <= 1 and full
//! degree-2 part is exactly 𝔪².
//!
//! The identity J⁻¹ = (1/f)(fR : J) needs f ∈ J (for x ∈ J⁻¹, xf lands in R
//! only because f ∈ J), so the nonzero-divisor search works inside J: pad
//! the generators to a common degree by monomial multiples and search
//! k-combinations, escalating the degree when the base degree has no
//! nonzero divisor over a small field.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classifier::{is_cohen_macaulay, module_generators, trace_class, TraceClass};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::homology::relative_top_cycles;
use crate::matrix::{ExactMatrix, SpanBasis};

/// Exponent vector of a monomial, one entry per ground-set vertex.
pub type ExpVec = Vec<u32>;

fn exp_support(exp: &[u32]) -> Face {
    let mut mask = 0u64;
    for (i, &e) in exp.iter().enumerate() {
        if e > 0 {
            mask |= 1 << i;
        }
    }
    Face(mask)
}

fn exp_degree(exp: &[u32]) -> usize {
    exp.iter().map(|&e| e as usize).sum()
}

/// A homogeneous element of `k[Δ]` as a sparse exponent-vector map. Monomials
/// whose support is a non-face are zero in the ring and never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedPoly {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<ExpVec, Scalar>,
}

impl GradedPoly {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        GradedPoly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// Build from terms, dropping zero coefficients and non-face supports.
    pub fn from_terms<I>(n: usize, field: FieldSpec, k: &SimplicialComplex, iter: I) -> Self
    where
        I: IntoIterator<Item = (ExpVec, Scalar)>,
    {
        let mut terms: BTreeMap<ExpVec, Scalar> = BTreeMap::new();
        for (exp, c) in iter {
            if field.is_zero(&c) || !k.contains(&exp_support(&exp)) {
                continue;
            }
            let entry = terms.entry(exp).or_insert_with(|| field.zero());
            *entry = field.add(entry, &c);
        }
        terms.retain(|_, c| !field.is_zero(c));
        GradedPoly { n, field, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Scalar)> {
        self.terms.iter()
    }

    /// Common degree of the terms; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|e| exp_degree(e));
        let first = degs.next()?;
        debug_assert!(degs.all(|d| d == first), "inhomogeneous polynomial");
        Some(first)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if self.field.is_zero(c) {
            return GradedPoly::zero(self.n, self.field);
        }
        GradedPoly {
            n: self.n,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), self.field.mul(v, c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let field = self.field;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(|| field.zero());
            *entry = field.add(entry, c);
        }
        terms.retain(|_, c| !field.is_zero(c));
        GradedPoly {
            n: self.n,
            field,
            terms,
        }
    }

    /// Multiply by a monomial inside `k[Δ]`: terms falling outside the face
    /// lattice vanish.
    pub fn mul_monomial(&self, exp: &[u32], k: &SimplicialComplex) -> Self {
        let field = self.field;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let sum: ExpVec = e.iter().zip(exp).map(|(a, b)| a + b).collect();
            if k.contains(&exp_support(&sum)) {
                terms.insert(sum, c.clone());
            }
        }
        GradedPoly {
            n: self.n,
            field,
            terms,
        }
    }

    /// Full product inside `k[Δ]`.
    pub fn mul(&self, other: &Self, k: &SimplicialComplex) -> Self {
        let field = self.field;
        let mut acc = GradedPoly::zero(self.n, field);
        for (e, c) in &other.terms {
            acc = acc.add(&self.mul_monomial(e, k).scale(c));
        }
        acc
    }

    /// Coordinates against an indexed monomial basis; every term must be a
    /// basis monomial.
    pub fn coords(&self, index: &BTreeMap<ExpVec, usize>, len: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); len];
        for (e, c) in &self.terms {
            let i = *index
                .get(e)
                .unwrap_or_else(|| panic!("monomial outside basis: {e:?}"));
            out[i] = c.clone();
        }
        out
    }

    /// Facet-coverage test for zero-divisor detection: f is a nonzero
    /// divisor iff its image survives in every `k[facet]`, i.e. for every
    /// facet some term has support inside it.
    pub fn covers_facet(&self, facet: &Face) -> bool {
        self.terms
            .keys()
            .any(|e| exp_support(e).is_subset_of(facet))
    }
}

/// All exponent vectors of total degree `deg` with face support, in
/// lexicographic order.
pub fn monomial_basis(k: &SimplicialComplex, deg: usize) -> Result<Vec<ExpVec>> {
    let n = k.n();
    if deg == 0 {
        return Ok(if k.is_void() {
            Vec::new()
        } else {
            vec![vec![0; n]]
        });
    }
    let mut out = Vec::new();
    for sigma in k.all_faces()? {
        let card = sigma.card();
        if card == 0 || card > deg {
            continue;
        }
        let verts = sigma.vertices();
        let mut prefix = Vec::with_capacity(card);
        positive_compositions(deg, card, &mut prefix, &mut |comp| {
            let mut exp = vec![0u32; n];
            for (i, &v) in verts.iter().enumerate() {
                exp[v - 1] = comp[i];
            }
            out.push(exp);
        });
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// All ways to write `total` as `parts` positive summands, in order.
fn positive_compositions(
    total: usize,
    parts: usize,
    prefix: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if parts == 1 {
        prefix.push(total as u32);
        emit(prefix);
        prefix.pop();
        return;
    }
    for first in 1..=total - (parts - 1) {
        prefix.push(first as u32);
        positive_compositions(total - first, parts - 1, prefix, emit);
        prefix.pop();
    }
}

fn basis_index(basis: &[ExpVec]) -> BTreeMap<ExpVec, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect()
}

/// One generator of the embedded ideal: the image of a relative cycle.
#[derive(Debug, Clone)]
pub struct GrabeGenerator {
    pub sigma: Face,
    pub cycle_index: usize,
    pub degree: usize,
    pub poly: GradedPoly,
}

/// The ideal k(Δ) ⊂ R generated by the embedded cycle spaces.
#[derive(Debug, Clone)]
pub struct GrabeIdeal {
    pub field: FieldSpec,
    pub n: usize,
    pub gens: Vec<GrabeGenerator>,
}

/// Oracle verdict derived from the trace dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleVerdict {
    TrUnit,
    TrMaximal,
    TrMaxSquared,
    Other,
}

impl OracleVerdict {
    pub fn matches(&self, class: TraceClass) -> bool {
        matches!(
            (self, class),
            (OracleVerdict::TrUnit, TraceClass::TrUnit)
                | (OracleVerdict::TrMaximal, TraceClass::TrMaximal)
                | (OracleVerdict::TrMaxSquared, TraceClass::TrMaxSquared)
        )
    }
}

/// Trace dimensions in degrees 0..2 plus the reference dimensions of R.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceComponents {
    pub tr_dims: [usize; 3],
    pub dim_r1: usize,
    pub dim_r2: usize,
    pub verdict: OracleVerdict,
    pub nzd_degree: usize,
}

/// Full oracle output: the serializable summary plus the degree-1 trace
/// basis (used by the regular-element cross-checks).
#[derive(Debug, Clone)]
pub struct TraceComputation {
    pub components: TraceComponents,
    pub tr1_basis: Vec<GradedPoly>,
}

/// Which nonzero divisor to run the colon computation against. The
/// alternate choice multiplies the found one by the sum of the vertex
/// variables (a nonzero divisor in any reduced Stanley-Reisner ring), which
/// stays inside J and moves up one degree; trace dimensions must not care.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NzdStrategy {
    #[default]
    Search,
    SearchTimesLinearForm,
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub max_vertices: usize,
    pub max_dim: i32,
    /// Keep every nonzero component as a generator instead of pruning the
    /// ones hit isomorphically from below.
    pub all_components: bool,
    /// Run on non-Cohen-Macaulay input; the result is then ideal data of
    /// k(Δ), not canonical-module data.
    pub allow_non_cm: bool,
    pub nzd: NzdStrategy,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_vertices: 9,
            max_dim: 3,
            all_components: false,
            allow_non_cm: false,
            nzd: NzdStrategy::Search,
        }
    }
}

/// Generators of k(Δ): for each face σ with nonzero top relative cycle
/// space, the embedded basis cycles Σ a_τ x_τ x_σ of degree (d+1) + |σ|.
/// By default components hit surjectively from proper subfaces are pruned
/// (they add no minimal generators and the ideal is unchanged);
/// `all_components` keeps everything.
pub fn grabe_ideal(
    k: &SimplicialComplex,
    field: FieldSpec,
    all_components: bool,
) -> Result<GrabeIdeal> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let d = k.dim().unwrap();
    let keep: Option<BTreeMap<Face, usize>> = if all_components {
        None
    } else {
        Some(module_generators(k, field)?.multiplicities)
    };
    let mut gens = Vec::new();
    for sigma in k.all_faces()? {
        if let Some(keep) = &keep {
            if !keep.contains_key(&sigma) {
                continue;
            }
        }
        let cycles = relative_top_cycles(k, &sigma, field)?;
        if cycles.dim() == 0 {
            continue;
        }
        let degree = (d + 1) as usize + sigma.card();
        for (ci, cyc) in cycles.cycles.iter().enumerate() {
            let terms = cycles.top_faces.iter().zip(cyc).map(|(tau, c)| {
                let mut exp = vec![0u32; k.n()];
                for v in tau.vertices() {
                    exp[v - 1] += 1;
                }
                for v in sigma.vertices() {
                    exp[v - 1] += 1;
                }
                (exp, c.clone())
            });
            let poly = GradedPoly::from_terms(k.n(), field, k, terms);
            debug_assert!(!poly.is_zero());
            debug_assert_eq!(poly.degree(), Some(degree));
            gens.push(GrabeGenerator {
                sigma,
                cycle_index: ci,
                degree,
                poly,
            });
        }
    }
    Ok(GrabeIdeal {
        field,
        n: k.n(),
        gens,
    })
}

/// f is a nonzero divisor of `k[Δ]` iff for every facet F some monomial of f
/// has support inside F (f avoids every minimal prime).
pub fn is_nonzero_divisor(f: &GradedPoly, k: &SimplicialComplex) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::NzdSearchFailed("zero polynomial queried".into()));
    }
    Ok(k.facets().iter().all(|facet| f.covers_facet(facet)))
}

/// Deterministic search for a homogeneous nonzero divisor inside J.
///
/// At each target degree D (base = largest generator degree, escalating a
/// few steps) the candidate space is spanned by monomial multiples of the
/// generators. Single candidates are tried first, then a greedy facet-cover
/// combination, then small exhaustive schedules. Escalation matters over
/// small fields: the lowest graded piece of J can consist entirely of zero
/// divisors even for Cohen-Macaulay input.
pub fn find_nonzero_divisor(ideal: &GrabeIdeal, k: &SimplicialComplex) -> Result<GradedPoly> {
    if ideal.gens.is_empty() {
        return Err(Error::NzdSearchFailed("ideal has no generators".into()));
    }
    let field = ideal.field;
    let base = ideal.gens.iter().map(|g| g.degree).max().unwrap();
    let escalation = k.n() + 2;
    for target in base..=base + escalation {
        let mut spanning: Vec<GradedPoly> = Vec::new();
        for g in &ideal.gens {
            for b in monomial_basis(k, target - g.degree)? {
                let w = g.poly.mul_monomial(&b, k);
                if !w.is_zero() {
                    spanning.push(w);
                }
            }
        }
        if let Some(f) = search_nzd_in_span(&spanning, k, field) {
            return Ok(f);
        }
    }
    Err(Error::NzdSearchFailed(format!(
        "no nonzero divisor found in degrees {base}..={} of J on {}",
        base + escalation,
        k.canonical_encoding()
    )))
}

fn coverage(f: &GradedPoly, k: &SimplicialComplex) -> Vec<bool> {
    k.facets().iter().map(|fac| f.covers_facet(fac)).collect()
}

fn search_nzd_in_span(
    spanning: &[GradedPoly],
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Option<GradedPoly> {
    let full = |cov: &[bool]| cov.iter().all(|&c| c);
    // singles
    for w in spanning {
        if full(&coverage(w, k)) {
            return Some(w.clone());
        }
    }
    // greedy cover: extend facet by facet, re-checking that no previously
    // covered facet cancels away
    let coeff_range: Vec<i64> = match field {
        FieldSpec::Rationals => (1..=16).collect(),
        FieldSpec::PrimeField(p) => (1..p.min(17) as i64).collect(),
    };
    let facet_count = k.facets().len();
    let mut current = GradedPoly::zero(k.n(), field);
    let mut covered = vec![false; facet_count];
    'facets: for fi in 0..facet_count {
        if covered[fi] {
            continue;
        }
        let facet = k.facets()[fi];
        for w in spanning {
            if !w.covers_facet(&facet) {
                continue;
            }
            for &c in &coeff_range {
                let candidate = current.add(&w.scale(&field.from_i64(c)));
                let cov = coverage(&candidate, k);
                if cov[fi] && covered.iter().zip(&cov).all(|(&old, &new)| !old || new) {
                    current = candidate;
                    covered = cov;
                    continue 'facets;
                }
            }
        }
        // greedy stuck on this facet
        current = GradedPoly::zero(k.n(), field);
        covered.clear();
        break;
    }
    if !covered.is_empty() && covered.iter().all(|&c| c) && !current.is_zero() {
        return Some(current);
    }
    // exhaustive tuples over a small prime field, bounded
    if let FieldSpec::PrimeField(p) = field {
        let m = spanning.len().min(14);
        if (p as u128).pow(m as u32) <= 1 << 16 {
            let mut tuple = vec![0u64; m];
            loop {
                // increment base-p counter
                let mut i = 0;
                while i < m {
                    tuple[i] += 1;
                    if tuple[i] < p {
                        break;
                    }
                    tuple[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
                let mut candidate = GradedPoly::zero(k.n(), field);
                for (w, &c) in spanning.iter().zip(&tuple) {
                    if c != 0 {
                        candidate = candidate.add(&w.scale(&field.from_i64(c as i64)));
                    }
                }
                if !candidate.is_zero() && full(&coverage(&candidate, k)) {
                    return Some(candidate);
                }
            }
        }
    } else {
        // geometric coefficient schedule over ℚ: (1, c, c², ...) hits a
        // nonzero divisor for some small c whenever the span contains one
        let bound = (facet_count * spanning.len() + 1) as i64;
        for c in 1..=bound {
            let mut candidate = GradedPoly::zero(k.n(), field);
            let mut coeff = field.one();
            let step = field.from_i64(c);
            for w in spanning {
                candidate = candidate.add(&w.scale(&coeff));
                coeff = field.mul(&coeff, &step);
            }
            if !candidate.is_zero() && full(&coverage(&candidate, k)) {
                return Some(candidate);
            }
        }
    }
    None
}

/// Basis of { h ∈ R_{e+D} : h g_j ∈ f R for every generator g_j }, the
/// numerator space of the degree-e part of J⁻¹ (D = deg f). Imposing
/// membership in f·R degreewise is one exact linear condition per
/// generator.
pub fn colon_component(
    f: &GradedPoly,
    ideal: &GrabeIdeal,
    e: i64,
    k: &SimplicialComplex,
) -> Result<Vec<GradedPoly>> {
    let field = ideal.field;
    let capd = f.degree().expect("nonzero divisor") as i64;
    if e + capd < 0 {
        return Ok(Vec::new());
    }
    let h_basis = monomial_basis(k, (e + capd) as usize)?;
    if h_basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut constraint_rows: Vec<Vec<Scalar>> = Vec::new();
    for g in &ideal.gens {
        let t = e + capd + g.degree as i64; // degree of h·g_j
        debug_assert!(t >= 0);
        let target = monomial_basis(k, t as usize)?;
        let index = basis_index(&target);
        // span of f·R_{e + deg g} inside degree t
        let mut span = SpanBasis::new(field, target.len());
        let mult_deg = e + g.degree as i64;
        if mult_deg >= 0 {
            for m in monomial_basis(k, mult_deg as usize)? {
                let fm = f.mul_monomial(&m, k);
                if !fm.is_zero() {
                    span.insert(&fm.coords(&index, target.len()));
                }
            }
        }
        // residuals of h_k · g_j modulo that span: linear constraints on h
        let mut residuals: Vec<Vec<Scalar>> = Vec::new();
        for h in &h_basis {
            let hg = g.poly.mul_monomial(h, k);
            residuals.push(span.reduce(&hg.coords(&index, target.len())));
        }
        for row in 0..target.len() {
            if residuals.iter().all(|r| field.is_zero(&r[row])) {
                continue;
            }
            constraint_rows.push(residuals.iter().map(|r| r[row].clone()).collect());
        }
    }
    let kernel = if constraint_rows.is_empty() {
        ExactMatrix::zeros(field, 1, h_basis.len()).kernel_basis()
    } else {
        ExactMatrix::from_rows(field, h_basis.len(), &constraint_rows).kernel_basis()
    };
    Ok(kernel
        .into_iter()
        .map(|v| GradedPoly::from_terms(k.n(), field, k, h_basis.iter().cloned().zip(v)))
        .collect())
}

/// The degree-0..2 trace dimensions and the verdict they force.
pub fn trace_components(
    k: &SimplicialComplex,
    field: FieldSpec,
    opts: &OracleOptions,
) -> Result<TraceComputation> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if k.support().card() > opts.max_vertices {
        return Err(Error::OracleCap(format!(
            "{} vertices exceed the oracle cap {}",
            k.support().card(),
            opts.max_vertices
        )));
    }
    if k.dim().unwrap() > opts.max_dim {
        return Err(Error::OracleCap(format!(
            "dimension {} exceeds the oracle cap {}",
            k.dim().unwrap(),
            opts.max_dim
        )));
    }
    if !opts.allow_non_cm && !is_cohen_macaulay(k, field)? {
        return Err(Error::NotCohenMacaulay { op: "trace oracle" });
    }
    let ideal = grabe_ideal(k, field, opts.all_components)?;
    let mut f = find_nonzero_divisor(&ideal, k)?;
    if opts.nzd == NzdStrategy::SearchTimesLinearForm {
        let linear = GradedPoly::from_terms(
            k.n(),
            field,
            k,
            k.vertex_list().into_iter().map(|v| {
                let mut exp = vec![0u32; k.n()];
                exp[v - 1] = 1;
                (exp, field.one())
            }),
        );
        f = f.mul(&linear, k);
        if !is_nonzero_divisor(&f, k)? {
            return Err(Error::TheoremViolation(
                "product of nonzero divisors failed the facet cover test".into(),
            ));
        }
    }
    let capd = f.degree().expect("nonzero divisor") as i64;

    let mut colon_cache: BTreeMap<i64, Vec<GradedPoly>> = BTreeMap::new();
    let mut tr_dims = [0usize; 3];
    let mut tr1_basis = Vec::new();
    for deg in 0..=2usize {
        let basis = monomial_basis(k, deg)?;
        // multiplication by f from R_deg, for the exact division step
        let target = monomial_basis(k, deg + capd as usize)?;
        let tindex = basis_index(&target);
        let mult_f_cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|m| f.mul_monomial(m, k).coords(&tindex, target.len()))
            .collect();
        let mult_f = ExactMatrix::from_columns(field, target.len(), &mult_f_cols);
        let mut span = SpanBasis::new(field, basis.len());
        for g in &ideal.gens {
            let e = deg as i64 - g.degree as i64;
            if let std::collections::btree_map::Entry::Vacant(slot) = colon_cache.entry(e) {
                slot.insert(colon_component(&f, &ideal, e, k)?);
            }
            for h in &colon_cache[&e] {
                let hg = h.mul(&g.poly, k);
                if hg.is_zero() {
                    continue;
                }
                let w = hg.coords(&tindex, target.len());
                let q = mult_f
                    .solve(&w)?
                    .expect("h g lies in f R by the colon condition");
                span.insert(&q);
            }
        }
        tr_dims[deg] = span.rank();
        if deg == 1 {
            tr1_basis = span
                .rows()
                .iter()
                .map(|v| {
                    GradedPoly::from_terms(
                        k.n(),
                        field,
                        k,
                        basis.iter().cloned().zip(v.iter().cloned()),
                    )
                })
                .collect();
        }
    }
    let dim_r1 = monomial_basis(k, 1)?.len();
    let dim_r2 = monomial_basis(k, 2)?.len();
    let verdict = if tr_dims[0] == 1 {
        OracleVerdict::TrUnit
    } else if tr_dims[0] == 0 && dim_r1 > 0 && tr_dims[1] == dim_r1 {
        OracleVerdict::TrMaximal
    } else if tr_dims[0] == 0 && tr_dims[1] == 0 && dim_r2 > 0 && tr_dims[2] == dim_r2 {
        OracleVerdict::TrMaxSquared
    } else {
        OracleVerdict::Other
    };
    Ok(TraceComputation {
        components: TraceComponents {
            tr_dims,
            dim_r1,
            dim_r2,
            verdict,
            nzd_degree: capd as usize,
        },
        tr1_basis,
    })
}

/// Exact decision: does the span of these degree-1 elements contain a
/// nonzero divisor? Over ℚ a union of proper subspaces cannot cover the
/// span, so facet-by-facet coverage by some basis vector suffices; over a
/// small prime field the span is enumerated outright.
pub fn span_contains_nonzero_divisor(basis: &[GradedPoly], k: &SimplicialComplex) -> Result<bool> {
    if basis.is_empty() {
        return Ok(false);
    }
    let field = basis[0].field;
    match field {
        FieldSpec::Rationals => Ok(k
            .facets()
            .iter()
            .all(|f| basis.iter().any(|b| b.covers_facet(f)))),
        FieldSpec::PrimeField(p) => {
            let m = basis.len();
            if (p as u128).pow(m as u32) > 1 << 20 {
                return Err(Error::OracleCap(
                    "span too large to enumerate over GF(p)".into(),
                ));
            }
            let mut tuple = vec![0u64; m];
            loop {
                let mut i = 0;
                while i < m {
                    tuple[i] += 1;
                    if tuple[i] < p {
                        break;
                    }
                    tuple[i] = 0;
                    i += 1;
                }
                if i == m {
                    return Ok(false);
                }
                let mut candidate = GradedPoly::zero(k.n(), field);
                for (b, &c) in basis.iter().zip(&tuple) {
                    if c != 0 {
                        candidate = candidate.add(&b.scale(&field.from_i64(c as i64)));
                    }
                }
                if !candidate.is_zero() && is_nonzero_divisor(&candidate, k)? {
                    return Ok(true);
                }
            }
        }
    }
}

/// Agreement status between the classifier and the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CrosscheckStatus {
    /// Both engines name the same trace class.
    Agree,
    /// Classifier says not punctured-Gorenstein; oracle confirms the trace
    /// is no power of the maximal ideal.
    OracleConfirmsOther,
    /// Oracle not applicable (non-Cohen-Macaulay input); dims may still be
    /// recorded as ideal data.
    OracleSkipped,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub trace_class: TraceClass,
    pub oracle: Option<TraceComponents>,
    pub status: CrosscheckStatus,
    pub detail: String,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.status != CrosscheckStatus::Mismatch
    }
}

/// Run both engines and compare. A Cohen-Macaulay punctured-Gorenstein
/// complex must get the same class from both; a Cohen-Macaulay complex that
/// is not punctured-Gorenstein must get `Other` from the oracle; non-CM
/// input skips the oracle (optionally recording the raw ideal data).
pub fn crosscheck(
    k: &SimplicialComplex,
    field: FieldSpec,
    opts: &OracleOptions,
) -> Result<CrosscheckReport> {
    let class = trace_class(k, field)?;
    if class == TraceClass::NotCohenMacaulay {
        let oracle = if opts.allow_non_cm {
            Some(trace_components(k, field, opts)?.components)
        } else {
            None
        };
        return Ok(CrosscheckReport {
            trace_class: class,
            oracle,
            status: CrosscheckStatus::OracleSkipped,
            detail: "not Cohen-Macaulay: the embedded ideal is not canonical-module data".into(),
        });
    }
    let oracle = trace_components(k, field, opts)?;
    let comp = oracle.components.clone();
    let (status, detail) = match class {
        TraceClass::NotPuncturedGorenstein => {
            if comp.verdict == OracleVerdict::Other {
                (
                    CrosscheckStatus::OracleConfirmsOther,
                    "trace is not a power of the maximal ideal, as classified".to_string(),
                )
            } else {
                (
                    CrosscheckStatus::Mismatch,
                    format!(
                        "classifier says not punctured-Gorenstein but oracle found {:?} with dims {:?}",
                        comp.verdict, comp.tr_dims
                    ),
                )
            }
        }
        _ => {
            if comp.verdict.matches(class) {
                (CrosscheckStatus::Agree, String::new())
            } else {
                (
                    CrosscheckStatus::Mismatch,
                    format!(
                        "classifier {class:?} vs oracle {:?} with dims {:?} (R1 = {}, R2 = {})",
                        comp.verdict, comp.tr_dims, comp.dim_r1, comp.dim_r2
                    ),
                )
            }
        }
    };
    Ok(CrosscheckReport {
        trace_class: class,
        oracle: Some(comp),
        status,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cycle, isolated_points, path, rp2_6, simplex_boundary, solid_simplex};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn monomial_basis_counts() {
        assert_eq!(monomial_basis(&rp2_6(), 2).unwrap().len(), 21); // 6 squares + 15 edges
        assert_eq!(monomial_basis(&path(3), 1).unwrap().len(), 4);
        assert_eq!(monomial_basis(&path(3), 0).unwrap().len(), 1);
        assert_eq!(monomial_basis(&path(3), 2).unwrap().len(), 7); // 4 squares + 3 edges
        assert_eq!(monomial_basis(&isolated_points(3), 2).unwrap().len(), 3);
        // degrees distribute over a triangle: x², xy-type, xyz-type supports
        assert_eq!(monomial_basis(&solid_simplex(2), 3).unwrap().len(), 10);
    }

    #[test]
    fn grabe_generators_examples() {
        // 4-cycle: a single fundamental-cycle generator in degree 2
        let ideal = grabe_ideal(&cycle(4), q(), false).unwrap();
        assert_eq!(ideal.gens.len(), 1);
        assert_eq!(ideal.gens[0].degree, 2);
        assert_eq!(ideal.gens[0].sigma, Face::EMPTY);
        assert_eq!(ideal.gens[0].poly.terms().count(), 4);

        // projective plane over GF(3): one generator per vertex, degree 4
        let ideal = grabe_ideal(&rp2_6(), gf(3), false).unwrap();
        assert_eq!(ideal.gens.len(), 6);
        assert!(ideal.gens.iter().all(|g| g.degree == 4));
        assert!(ideal.gens.iter().all(|g| g.sigma.card() == 1));

        // three points: two degree-1 generators from the reduced 0-cycles
        let ideal = grabe_ideal(&isolated_points(3), q(), false).unwrap();
        assert_eq!(ideal.gens.len(), 2);
        assert!(ideal.gens.iter().all(|g| g.degree == 1));
    }

    #[test]
    fn colon_spaces_of_a_principal_ideal_are_full() {
        // Gorenstein 4-cycle: J = (g) with g a nonzero divisor, so the
        // colon condition h·g ∈ g·R is vacuous and the colon space in each
        // degree is all of R
        let k = cycle(4);
        let field = q();
        let ideal = grabe_ideal(&k, field, false).unwrap();
        assert_eq!(ideal.gens.len(), 1);
        let f = find_nonzero_divisor(&ideal, &k).unwrap();
        for e in -1..=1i64 {
            let colon = colon_component(&f, &ideal, e, &k).unwrap();
            let expected = monomial_basis(&k, (e + 2) as usize).unwrap().len();
            assert_eq!(colon.len(), expected, "e = {e}");
        }
    }

    #[test]
    fn nonzero_divisor_detection() {
        let k = rp2_6();
        // sum of all facet monomials covers every facet
        let f = GradedPoly::from_terms(
            k.n(),
            q(),
            &k,
            k.facets().iter().map(|fac| {
                let mut exp = vec![0u32; k.n()];
                for v in fac.vertices() {
                    exp[v - 1] = 1;
                }
                (exp, q().one())
            }),
        );
        assert!(is_nonzero_divisor(&f, &k).unwrap());

        // a single vertex variable misses the facets not containing it
        let pts = isolated_points(3);
        let x1 = GradedPoly::from_terms(3, q(), &pts, [(vec![1, 0, 0], q().one())]);
        assert!(!is_nonzero_divisor(&x1, &pts).unwrap());
    }

    #[test]
    fn nzd_search_on_corpus() {
        // the 4-cycle's single generator is already a nonzero divisor
        let k = cycle(4);
        let ideal = grabe_ideal(&k, q(), false).unwrap();
        let f = find_nonzero_divisor(&ideal, &k).unwrap();
        assert_eq!(f.degree(), Some(2));
        assert!(is_nonzero_divisor(&f, &k).unwrap());

        // three isolated points: over ℚ and GF(3) a degree-1 combination
        // works; over GF(2) the search must escalate to degree 2
        for field in [q(), gf(3), gf(2)] {
            let k = isolated_points(3);
            let ideal = grabe_ideal(&k, field, false).unwrap();
            let f = find_nonzero_divisor(&ideal, &k).unwrap();
            assert!(is_nonzero_divisor(&f, &k).unwrap());
            if field == gf(2) {
                assert_eq!(f.degree(), Some(2));
            } else {
                assert_eq!(f.degree(), Some(1));
            }
        }
    }

    #[test]
    fn nzd_multiplication_is_injective() {
        let k = rp2_6();
        let field = gf(3);
        let ideal = grabe_ideal(&k, field, false).unwrap();
        let f = find_nonzero_divisor(&ideal, &k).unwrap();
        for deg in 0..=2usize {
            let basis = monomial_basis(&k, deg).unwrap();
            let target = monomial_basis(&k, deg + f.degree().unwrap()).unwrap();
            let tindex = basis_index(&target);
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|m| f.mul_monomial(m, &k).coords(&tindex, target.len()))
                .collect();
            let m = ExactMatrix::from_columns(field, target.len(), &cols);
            assert_eq!(m.rank(), basis.len());
        }
    }

    #[test]
    fn colon_contains_f_in_degree_zero() {
        // f/f = 1 certifies 1 ∈ J⁻¹: the colon space at e = 0 contains f
        let k = cycle(4);
        let field = q();
        let ideal = grabe_ideal(&k, field, false).unwrap();
        let f = find_nonzero_divisor(&ideal, &k).unwrap();
        let colon = colon_component(&f, &ideal, 0, &k).unwrap();
        let dim = colon.len();
        assert!(dim >= 1);
        let basis = monomial_basis(&k, f.degree().unwrap()).unwrap();
        let index = basis_index(&basis);
        let mut span = SpanBasis::new(field, basis.len());
        for h in &colon {
            span.insert(&h.coords(&index, basis.len()));
        }
        assert!(span.contains(&f.coords(&index, basis.len())));
    }

    #[test]
    fn trace_of_gorenstein_complexes_is_unit() {
        for k in [cycle(4), cycle(5), simplex_boundary(2), solid_simplex(2)] {
            for field in [q(), gf(2), gf(3)] {
                let t = trace_components(&k, field, &OracleOptions::default()).unwrap();
                assert_eq!(t.components.verdict, OracleVerdict::TrUnit, "{k:?} {field}");
                assert_eq!(t.components.tr_dims[0], 1);
            }
        }
    }

    #[test]
    fn trace_of_path3_is_maximal() {
        let k = path(3);
        for field in [q(), gf(2), gf(3)] {
            let t = trace_components(&k, field, &OracleOptions::default()).unwrap();
            assert_eq!(t.components.tr_dims, [0, 4, 7], "{field}");
            assert_eq!(t.components.dim_r1, 4);
            assert_eq!(t.components.verdict, OracleVerdict::TrMaximal);
        }
    }

    #[test]
    fn trace_of_rp2_is_m_squared() {
        for field in [gf(3), q()] {
            let t = trace_components(&rp2_6(), field, &OracleOptions::default()).unwrap();
            assert_eq!(t.components.tr_dims, [0, 0, 21]);
            assert_eq!(t.components.dim_r2, 21);
            assert_eq!(t.components.verdict, OracleVerdict::TrMaxSquared);
        }
    }

    #[test]
    fn trace_dims_do_not_depend_on_the_nonzero_divisor() {
        let k = isolated_points(3);
        for field in [q(), gf(2)] {
            let a = trace_components(&k, field, &OracleOptions::default()).unwrap();
            let b = trace_components(
                &k,
                field,
                &OracleOptions {
                    nzd: NzdStrategy::SearchTimesLinearForm,
                    ..OracleOptions::default()
                },
            )
            .unwrap();
            assert_eq!(a.components.tr_dims, b.components.tr_dims);
            assert!(b.components.nzd_degree > a.components.nzd_degree);
        }
    }

    #[test]
    fn crosscheck_agrees_on_small_corpus() {
        let opts = OracleOptions::default();
        for (k, field) in [
            (cycle(4), q()),
            (cycle(6), gf(2)),
            (path(4), gf(3)),
            (isolated_points(5), q()),
            (rp2_6(), gf(3)),
            (simplex_boundary(3), q()),
        ] {
            let r = crosscheck(&k, field, &opts).unwrap();
            assert!(r.passed(), "{}: {}", k.canonical_encoding(), r.detail);
            assert_eq!(r.status, CrosscheckStatus::Agree);
        }
    }

    #[test]
    fn crosscheck_confirms_other_when_not_punctured_gorenstein() {
        // cone over a 3-edge path: Cohen-Macaulay, but the apex link is a
        // path, which is not Gorenstein
        let cone =
            SimplicialComplex::from_facets(5, &[vec![1, 2, 5], vec![2, 3, 5], vec![3, 4, 5]])
                .unwrap();
        for field in [q(), gf(2), gf(3)] {
            let r = crosscheck(&cone, field, &OracleOptions::default()).unwrap();
            assert_eq!(r.trace_class, TraceClass::NotPuncturedGorenstein);
            assert_eq!(
                r.status,
                CrosscheckStatus::OracleConfirmsOther,
                "{}",
                r.detail
            );
        }
    }

    #[test]
    fn crosscheck_records_ideal_data_on_non_cm_input() {
        // the doubled torus cone is not CM, so the classification does not
        // apply; the forced run records the raw ideal data. The complex is
        // an orientable normal pseudomanifold, so the embedded module is
        // free of rank one and the ideal trace is the whole ring.
        let k = crate::complex::nat_example();
        let opts = OracleOptions {
            allow_non_cm: true,
            ..Default::default()
        };
        let r = crosscheck(&k, gf(3), &opts).unwrap();
        assert_eq!(r.trace_class, TraceClass::NotCohenMacaulay);
        assert_eq!(r.status, CrosscheckStatus::OracleSkipped);
        assert!(r.passed());
        let dims = r.oracle.unwrap();
        assert_eq!(dims.tr_dims, [1, 9, 44]);
        assert_eq!((dims.dim_r1, dims.dim_r2), (9, 44));
    }

    #[test]
    fn oracle_caps_are_enforced() {
        let big = isolated_points(10);
        assert!(matches!(
            trace_components(&big, q(), &OracleOptions::default()),
            Err(Error::OracleCap(_))
        ));
        let torus = crate::complex::torus7();
        assert!(matches!(
            trace_components(&torus, q(), &OracleOptions::default()),
            Err(Error::NotCohenMacaulay { .. })
        ));
    }
}
