//! Simplicial chain complexes, reduced and relative homology, induced maps,
//! and orientability of pseudomanifolds, all over an exact field.
//!
//! Conventions, fixed once and used everywhere:
//! * Chain bases are ordered by face bitset value; the boundary of a face
//!   {a_0 < ... < a_d} is Σ_k (-1)^k (face minus a_k), the sign omitting the
//!   k-th smallest vertex.
//! * Homology is reduced: the augmented complex has the empty face in
//!   degree -1, so the irrelevant complex {∅} has β̃_{-1} = 1 and nothing
//!   else.
//! * Relative chains mod the costar of σ use the faces containing σ as a
//!   basis. For σ = ∅ every face (including ∅ itself) contains σ, which is
//!   exactly the augmented complex again: H_d(Δ, cost ∅) is the *reduced*
//!   top homology. This is forced by the isomorphism with the reduced
//!   homology of the link and changes the answer for disconnected complexes
//!   in dimension 0, e.g. isolated points.
//!
//! Cycle bases are kernels in reduced echelon form, so induced-map matrices
//! are reproducible across runs.

use std::collections::HashMap;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;

/// Reduced Betti numbers β̃_{-1}, β̃_0, ..., β̃_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBetti {
    dims: Vec<usize>,
}

impl ReducedBetti {
    /// β̃_i, zero outside the stored range.
    pub fn get(&self, i: i32) -> usize {
        if i < -1 {
            return 0;
        }
        self.dims.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Entries starting at dimension -1.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

/// Boundary matrix ∂: faces of cardinality `c` -> cardinality `c-1`, with
/// both bases restricted to faces containing `sigma` (use ∅ for the absolute
/// augmented complex).
fn boundary_matrix(field: FieldSpec, upper: &[Face], lower: &[Face], sigma: &Face) -> ExactMatrix {
    let index: HashMap<Face, usize> = lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut m = ExactMatrix::zeros(field, lower.len(), upper.len());
    for (j, tau) in upper.iter().enumerate() {
        for (k, v) in tau.vertices().into_iter().enumerate() {
            let target = tau.without_vertex(v);
            if !sigma.is_subset_of(&target) {
                continue;
            }
            let row = *index.get(&target).expect("faces are downward closed");
            let sign = field.from_i64(if k % 2 == 0 { 1 } else { -1 });
            let cur = m.get(row, j).clone();
            m.set(row, j, field.add(&cur, &sign));
        }
    }
    m
}

/// Reduced Betti numbers of a nonvoid complex via the augmented chain
/// complex.
pub fn reduced_betti(k: &SimplicialComplex, field: FieldSpec) -> Result<ReducedBetti> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let by_card = k.faces_by_card()?;
    let d = k.dim().unwrap();
    // boundary ranks, ∂_i for chain degree i = card - 1
    let mut ranks = vec![0usize; (d + 3) as usize]; // ranks[c] = rank of ∂ from card c
    let boundaries: Vec<ExactMatrix> = (1..by_card.len())
        .map(|c| boundary_matrix(field, &by_card[c], &by_card[c - 1], &Face::EMPTY))
        .collect();
    #[cfg(debug_assertions)]
    for w in boundaries.windows(2) {
        debug_assert!(
            w[0].mul(&w[1]).unwrap().is_zero(),
            "boundary squared must vanish"
        );
    }
    for (c, b) in boundaries.iter().enumerate() {
        ranks[c + 1] = b.rank();
    }
    let mut dims = Vec::with_capacity((d + 2) as usize);
    for c in 0..by_card.len() {
        let cycles = by_card[c].len() - ranks[c];
        let boundaries_in = ranks.get(c + 1).copied().unwrap_or(0);
        dims.push(cycles - boundaries_in);
    }
    Ok(ReducedBetti { dims })
}

/// Alternating-sum consistency between the f-vector and the Betti numbers:
/// Σ (-1)^i f_i equals Σ (-1)^i β̃_i with both sums starting at the empty
/// face. Holds over every field; cheap cross-check of the whole engine.
pub fn euler_identity_holds(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    let f = k.f_vector()?;
    let b = reduced_betti(k, field)?;
    let lhs: i64 = f
        .iter()
        .enumerate()
        .map(|(c, &n)| if c % 2 == 0 { -(n as i64) } else { n as i64 })
        .sum();
    let rhs: i64 = b
        .dims()
        .iter()
        .enumerate()
        .map(|(c, &n)| if c % 2 == 0 { -(n as i64) } else { n as i64 })
        .sum();
    Ok(lhs == rhs)
}

/// A basis of the top relative cycle space H_d(Δ, cost σ): kernel of the
/// boundary on d-chains supported on facets of dimension d containing σ,
/// with boundary terms not containing σ discarded.
#[derive(Debug, Clone)]
pub struct RelativeCycleBasis {
    pub sigma: Face,
    /// The d-faces containing σ, in bitset order: the chain basis.
    pub top_faces: Vec<Face>,
    /// Cycle vectors in coordinates over `top_faces`, reduced echelon form.
    pub cycles: Vec<Vec<Scalar>>,
    pub field: FieldSpec,
}

impl RelativeCycleBasis {
    pub fn dim(&self) -> usize {
        self.cycles.len()
    }
}

/// Compute H_d(Δ, cost σ) where d = dim Δ. Kernel only: there are no
/// (d+1)-chains, so every relative cycle is a homology class.
pub fn relative_top_cycles(
    k: &SimplicialComplex,
    sigma: &Face,
    field: FieldSpec,
) -> Result<RelativeCycleBasis> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if !k.contains(sigma) {
        return Err(Error::FaceNotInComplex(sigma.to_string()));
    }
    let d = k.dim().unwrap();
    let by_card = k.faces_by_card()?;
    let filter = |faces: &[Face]| -> Vec<Face> {
        faces
            .iter()
            .filter(|f| sigma.is_subset_of(f))
            .copied()
            .collect()
    };
    let top = filter(&by_card[(d + 1) as usize]);
    let lower = if d >= 0 {
        filter(&by_card[d as usize])
    } else {
        Vec::new()
    };
    let boundary = boundary_matrix(field, &top, &lower, sigma);
    let cycles = boundary.kernel_basis();
    Ok(RelativeCycleBasis {
        sigma: *sigma,
        top_faces: top,
        cycles,
        field,
    })
}

/// Matrix of the induced map H_d(Δ, cost τ) -> H_d(Δ, cost σ) for τ ⊆ σ,
/// in the cycle bases: a chain-level projection (facets not containing σ are
/// sent to zero) followed by coordinates against the target basis.
pub fn iota_star(
    k: &SimplicialComplex,
    tau: &Face,
    sigma: &Face,
    field: FieldSpec,
) -> Result<ExactMatrix> {
    if !tau.is_subset_of(sigma) {
        return Err(Error::NotASubface {
            needle: tau.to_string(),
            haystack: sigma.to_string(),
        });
    }
    let source = relative_top_cycles(k, tau, field)?;
    let target = relative_top_cycles(k, sigma, field)?;
    iota_star_on_bases(&source, &target)
}

/// Same as [`iota_star`] with the two cycle bases already at hand.
pub fn iota_star_on_bases(
    source: &RelativeCycleBasis,
    target: &RelativeCycleBasis,
) -> Result<ExactMatrix> {
    let field = source.field;
    let target_index: HashMap<Face, usize> = target
        .top_faces
        .iter()
        .enumerate()
        .map(|(i, f)| (*f, i))
        .collect();
    // project each source cycle onto the target chain basis
    let mut projected = Vec::with_capacity(source.cycles.len());
    for cyc in &source.cycles {
        let mut v = vec![field.zero(); target.top_faces.len()];
        for (j, face) in source.top_faces.iter().enumerate() {
            if let Some(&i) = target_index.get(face) {
                v[i] = cyc[j].clone();
            }
        }
        projected.push(v);
    }
    if target.cycles.is_empty() {
        let all_zero = projected.iter().all(|v| v.iter().all(|x| field.is_zero(x)));
        if !all_zero {
            return Err(Error::TheoremViolation(
                "projected relative cycle escapes the target cycle space".into(),
            ));
        }
        return Ok(ExactMatrix::zeros(field, 0, source.cycles.len()));
    }
    let basis = ExactMatrix::from_columns(field, target.top_faces.len(), &target.cycles);
    let rhs = ExactMatrix::from_columns(field, target.top_faces.len(), &projected);
    match basis.solve_columns(&rhs)? {
        Some(x) => Ok(x),
        None => Err(Error::TheoremViolation(
            "projected relative cycle escapes the target cycle space".into(),
        )),
    }
}

/// Does the reduced homology of `k` look like a sphere of its own dimension:
/// β̃_i = 1 exactly at i = dim, zero elsewhere? ({∅} qualifies as the
/// (-1)-sphere: β̃_{-1} = 1.)
pub fn has_sphere_profile(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    let d = match k.dim() {
        None => return Err(Error::VoidComplex),
        Some(d) => d,
    };
    let betti = reduced_betti(k, field)?;
    for i in -1..=d {
        let expect = usize::from(i == d);
        if betti.get(i) != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Condition (∗) at every face including ∅: every link has the reduced
/// homology of a sphere of the link's dimension.
pub fn is_homology_sphere(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    for sigma in k.all_faces()? {
        if !has_sphere_profile(&k.link(&sigma)?, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Connected, and condition (∗) at every nonempty face.
pub fn is_homology_manifold(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if !k.is_connected()? {
        return Ok(false);
    }
    for sigma in k.all_faces()? {
        if sigma.is_empty() {
            continue;
        }
        if !has_sphere_profile(&k.link(&sigma)?, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Top reduced Betti number; for a pseudomanifold this is 0 or 1.
pub fn top_betti(k: &SimplicialComplex, field: FieldSpec) -> Result<usize> {
    let d = match k.dim() {
        None => return Err(Error::VoidComplex),
        Some(d) => d,
    };
    let by_card = k.faces_by_card()?;
    let top = &by_card[(d + 1) as usize];
    let lower = if d >= 0 {
        by_card[d as usize].clone()
    } else {
        Vec::new()
    };
    let boundary = boundary_matrix(field, top, &lower, &Face::EMPTY);
    Ok(top.len() - boundary.rank())
}

/// k-orientability of a pseudomanifold: nonvanishing top homology over the
/// field.
pub fn is_k_orientable(k: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    require_pseudomanifold(k)?;
    Ok(top_betti(k, field)? != 0)
}

/// Orientability over the integers, decided without integer arithmetic:
/// for pseudomanifolds it coincides with orientability over ℚ.
pub fn is_orientable_z(k: &SimplicialComplex) -> Result<bool> {
    is_k_orientable(k, FieldSpec::Rationals)
}

fn require_pseudomanifold(k: &SimplicialComplex) -> Result<()> {
    if !k.is_pseudomanifold()? {
        return Err(Error::NotAPseudomanifold);
    }
    Ok(())
}

/// Propagate facet signs across ridge adjacencies. Starting from +1 on the
/// first facet, a neighbor across a shared ridge gets (-1)^{k+h+1} times the
/// known sign, where k and h are the positions of the omitted vertices. The
/// assignment exists globally iff the pseudomanifold is orientable; any
/// inconsistent ridge returns None.
pub fn orientable_sign_walk(k: &SimplicialComplex) -> Result<Option<Vec<i8>>> {
    require_pseudomanifold(k)?;
    let facets = k.facets();
    // ridge -> (facet index, position of the omitted vertex)
    let mut ridges: HashMap<Face, Vec<(usize, usize)>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for (pos, v) in f.vertices().into_iter().enumerate() {
            ridges
                .entry(f.without_vertex(v))
                .or_default()
                .push((i, pos));
        }
    }
    let mut sign = vec![0i8; facets.len()];
    sign[0] = 1;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for (pos, v) in facets[i].vertices().into_iter().enumerate() {
            let ridge = facets[i].without_vertex(v);
            for &(j, jpos) in &ridges[&ridge] {
                if j != i && sign[j] == 0 {
                    let flip = if (pos + jpos + 1) % 2 == 0 { 1 } else { -1 };
                    sign[j] = flip * sign[i];
                    stack.push(j);
                }
            }
        }
    }
    debug_assert!(sign.iter().all(|&s| s != 0), "walk must reach every facet");
    // global consistency: each ridge's two incidences must cancel
    for incidences in ridges.values() {
        debug_assert_eq!(incidences.len(), 2);
        let (i, kpos) = incidences[0];
        let (j, hpos) = incidences[1];
        let a = if kpos % 2 == 0 { 1 } else { -1 } * sign[i] as i32;
        let b = if hpos % 2 == 0 { 1 } else { -1 } * sign[j] as i32;
        if a + b != 0 {
            return Ok(None);
        }
    }
    Ok(Some(sign))
}
