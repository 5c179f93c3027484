//! Simplicial complexes on labeled vertices 1..=n, n <= 64.
//!
//! A complex is stored as its facet antichain; downward closure is implicit
//! (σ is a face iff σ is contained in some facet). Faces are fixed-width
//! bitsets, so subset and intersection tests are single machine operations.
//!
//! Two degenerate complexes are representable and behave differently
//! everywhere downstream:
//! * the void complex (no faces at all, empty facet list), and
//! * the irrelevant complex {∅} (one empty facet), whose Stanley-Reisner
//!   ring is the ground field.
//!
//! Vertex labels are 1-based in the API and files; bit i-1 of a mask encodes
//! vertex i. Links keep their original labels (sparse ground set) rather
//! than compacting, which keeps provenance in reports.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on the ground set: faces are u64 bitsets.
pub const MAX_VERTICES: usize = 64;

/// Cap on how many faces we are willing to enumerate explicitly.
const MAX_FACE_ENUM: u64 = 1 << 22;

/// A face: set of vertices from 1..=n as a bitset. The empty face is valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(pub u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Build from 1-based vertex labels.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I, n: usize) -> Result<Face> {
        let mut mask = 0u64;
        for v in vertices {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask |= 1 << (v - 1);
        }
        Ok(Face(mask))
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.card());
        let mut m = self.0;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            out.push(b + 1);
            m &= m - 1;
        }
        out
    }

    pub fn card(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Dimension |σ| - 1; the empty face has dimension -1.
    pub fn dim(&self) -> i32 {
        self.card() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        (1..=64).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn union(&self, other: &Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersect(&self, other: &Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn without_vertex(&self, v: usize) -> Face {
        Face(self.0 & !(1 << (v - 1)))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(" "))
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

/// A simplicial complex: ground set size plus the facet antichain, sorted by
/// bitset value. Immutable after construction and safe to share.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// The complex generated by `raw`: dominated sets are pruned to an
    /// antichain, duplicates removed. An empty list yields the void complex;
    /// `[{}]` yields the irrelevant complex {∅}.
    pub fn from_facets(n: usize, raw: &[Vec<usize>]) -> Result<SimplicialComplex> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let faces: Vec<Face> = raw
            .iter()
            .map(|vs| Face::from_vertices(vs.iter().copied(), n))
            .collect::<Result<_>>()?;
        Ok(Self::from_faces(n, faces))
    }

    /// Same, from already-built faces.
    pub fn from_faces(n: usize, mut faces: Vec<Face>) -> SimplicialComplex {
        assert!(n <= MAX_VERTICES);
        faces.sort_unstable();
        faces.dedup();
        let facets: Vec<Face> = faces
            .iter()
            .filter(|f| !faces.iter().any(|g| *f != g && f.is_subset_of(g)))
            .copied()
            .collect();
        SimplicialComplex { n, facets }
    }

    pub fn void(n: usize) -> SimplicialComplex {
        SimplicialComplex {
            n,
            facets: Vec::new(),
        }
    }

    pub fn irrelevant(n: usize) -> SimplicialComplex {
        SimplicialComplex {
            n,
            facets: vec![Face::EMPTY],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// None for the void complex, Some(-1) for {∅}, otherwise max |F| - 1.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.dim()).max()
    }

    /// Vertices actually used by some face (the ring only sees these).
    pub fn support(&self) -> Face {
        Face(self.facets.iter().fold(0, |m, f| m | f.0))
    }

    pub fn vertex_list(&self) -> Vec<usize> {
        self.support().vertices()
    }

    pub fn contains(&self, sigma: &Face) -> bool {
        self.facets.iter().any(|f| sigma.is_subset_of(f))
    }

    /// All faces, sorted by bitset value. Includes ∅ when the complex is
    /// nonvoid. Errors when the downward closure is too large to enumerate.
    pub fn all_faces(&self) -> Result<Vec<Face>> {
        let bound: u64 = self.facets.iter().map(|f| 1u64 << f.card().min(63)).sum();
        if bound > MAX_FACE_ENUM {
            return Err(Error::FaceEnumerationTooLarge(bound));
        }
        let mut set = BTreeSet::new();
        for f in &self.facets {
            // iterate all submasks of f, including 0
            let m = f.0;
            let mut s = m;
            loop {
                set.insert(Face(s));
                if s == 0 {
                    break;
                }
                s = (s - 1) & m;
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Faces grouped by cardinality: entry c lists the faces with |σ| = c,
    /// sorted by bitset value. For a nonvoid complex entry 0 is [∅].
    pub fn faces_by_card(&self) -> Result<Vec<Vec<Face>>> {
        let d = match self.dim() {
            None => return Ok(Vec::new()),
            Some(d) => d,
        };
        let mut out = vec![Vec::new(); (d + 2) as usize];
        for f in self.all_faces()? {
            out[f.card()].push(f);
        }
        Ok(out)
    }

    /// f-vector (f_{-1}, f_0, ..., f_d) = face counts by dimension, with the
    /// leading 1 counting the empty face.
    pub fn f_vector(&self) -> Result<Vec<u64>> {
        Ok(self
            .faces_by_card()?
            .iter()
            .map(|v| v.len() as u64)
            .collect())
    }

    /// lk σ = {τ : τ ∪ σ ∈ Δ, τ ∩ σ = ∅}, keeping the original labels.
    pub fn link(&self, sigma: &Face) -> Result<SimplicialComplex> {
        self.require_face(sigma)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset_of(f))
            .map(|f| f.minus(sigma))
            .collect();
        Ok(SimplicialComplex {
            n: self.n,
            facets: sorted(facets),
        })
    }

    /// st σ = {τ : τ ∪ σ ∈ Δ}: the complex generated by the facets ⊇ σ.
    pub fn star(&self, sigma: &Face) -> Result<SimplicialComplex> {
        self.require_face(sigma)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset_of(f))
            .copied()
            .collect();
        Ok(SimplicialComplex {
            n: self.n,
            facets: sorted(facets),
        })
    }

    /// cost σ = {τ ∈ Δ : τ ⊉ σ}. For σ = ∅ this is the void complex.
    pub fn costar(&self, sigma: &Face) -> Result<SimplicialComplex> {
        self.require_face(sigma)?;
        if sigma.is_empty() {
            return Ok(SimplicialComplex::void(self.n));
        }
        let mut candidates = Vec::new();
        for f in &self.facets {
            if !sigma.is_subset_of(f) {
                candidates.push(*f);
            } else {
                for v in sigma.vertices() {
                    candidates.push(f.without_vertex(v));
                }
            }
        }
        Ok(SimplicialComplex::from_faces(self.n, candidates))
    }

    fn require_face(&self, sigma: &Face) -> Result<()> {
        if !self.contains(sigma) {
            return Err(Error::FaceNotInComplex(sigma.to_string()));
        }
        Ok(())
    }

    fn require_nonvoid(&self) -> Result<()> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        Ok(())
    }

    pub fn is_pure(&self) -> Result<bool> {
        self.require_nonvoid()?;
        let d = self.facets[0].card();
        Ok(self.facets.iter().all(|f| f.card() == d))
    }

    /// Connectivity of the 1-skeleton: exactly one component of the support
    /// under "lie in a common facet". {∅} has no vertices and counts as
    /// disconnected.
    pub fn is_connected(&self) -> Result<bool> {
        self.require_nonvoid()?;
        let support = self.support().vertices();
        if support.is_empty() {
            return Ok(false);
        }
        let mut comp: Vec<u64> = self.facets.iter().map(|f| f.0).collect();
        // merge facet masks that intersect until stable
        loop {
            let mut merged = false;
            'outer: for i in 0..comp.len() {
                for j in (i + 1)..comp.len() {
                    if comp[i] & comp[j] != 0 {
                        comp[i] |= comp[j];
                        comp.swap_remove(j);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        comp.retain(|m| *m != 0);
        Ok(comp.len() == 1)
    }

    /// Facet-adjacency connectivity: facets adjacent iff their intersection
    /// has dimension dim Δ - 1. Requires purity.
    pub fn is_strongly_connected(&self) -> Result<bool> {
        self.require_nonvoid()?;
        if !self.is_pure()? {
            return Ok(false);
        }
        let d1 = self.facets[0].card(); // |facet| = d + 1
        let m = self.facets.len();
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if !seen[j] && self.facets[i].intersect(&self.facets[j]).card() + 1 == d1 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        Ok(seen.iter().all(|&s| s))
    }

    /// The maximal cone face: vertices lying in every facet (possibly ∅).
    pub fn cone_face(&self) -> Result<Face> {
        self.require_nonvoid()?;
        Ok(Face(self.facets.iter().fold(u64::MAX, |m, f| m & f.0)))
    }

    /// Strongly connected and every (d-1)-face lies in exactly two facets.
    /// Queries in dimension <= 0 are defined false (see the report notes).
    pub fn is_pseudomanifold(&self) -> Result<bool> {
        self.require_nonvoid()?;
        let d = self.dim().unwrap();
        if d < 1 {
            return Ok(false);
        }
        if !self.is_strongly_connected()? {
            return Ok(false);
        }
        let ridges: Vec<Face> = self
            .faces_by_card()?
            .get(d as usize)
            .cloned()
            .unwrap_or_default();
        Ok(ridges
            .iter()
            .all(|r| self.facets.iter().filter(|f| r.is_subset_of(f)).count() == 2))
    }

    /// lk σ connected for every i-face with i <= dim Δ - 2. Purely
    /// combinatorial; the field parameter elsewhere in the pipeline plays no
    /// role here.
    pub fn is_normal(&self) -> Result<bool> {
        self.require_nonvoid()?;
        let d = self.dim().unwrap();
        for sigma in self.all_faces()? {
            if sigma.dim() <= d - 2 && !self.link(&sigma)?.is_connected()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Join: faces are σ ∪ τ. Vertex supports must be disjoint.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let overlap = self.support().intersect(&other.support());
        if !overlap.is_empty() {
            return Err(Error::OverlappingJoin(overlap.to_string()));
        }
        let n = self.n.max(other.n);
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                facets.push(f.union(g));
            }
        }
        Ok(SimplicialComplex {
            n,
            facets: sorted(facets),
        })
    }

    /// Union of face sets (facet lists merged and re-pruned).
    pub fn union_with(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut facets = self.facets.clone();
        facets.extend_from_slice(&other.facets);
        SimplicialComplex::from_faces(self.n.max(other.n), facets)
    }

    /// Apply a vertex bijection `perm` (1-based: vertex v maps to perm[v-1]).
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let facets: Vec<Face> = self
            .facets
            .iter()
            .map(|f| Face::from_vertices(f.vertices().iter().map(|&v| perm[v - 1]), self.n))
            .collect::<Result<_>>()?;
        Ok(SimplicialComplex {
            n: self.n,
            facets: sorted(facets),
        })
    }

    /// Canonical one-line encoding, used for cache keys and report ids.
    /// The empty facet is written `-` so that {∅} stays distinct from the
    /// void complex.
    pub fn canonical_encoding(&self) -> String {
        let facets: Vec<String> = self
            .facets
            .iter()
            .map(|f| {
                if f.is_empty() {
                    "-".to_string()
                } else {
                    f.vertices()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        format!("n={};facets=[{}]", self.n, facets.join(","))
    }
}

fn sorted(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable();
    faces.dedup();
    faces
}

/// Streaming enumeration of every simplicial complex on labeled vertices
/// 1..=n, i.e. every antichain of subsets of the power set, each exactly
/// once. Includes the void complex and {∅}. Refuses n > 6: the count grows
/// like the Dedekind numbers.
pub fn enumerate_complexes(n: usize) -> Result<ComplexEnumeration> {
    const CAP: usize = 6;
    if n > CAP {
        return Err(Error::EnumerationCap { n, cap: CAP });
    }
    Ok(ComplexEnumeration {
        n,
        limit: 1u64 << n,
        chain: Vec::new(),
        next: 0,
        emitted_root: false,
        done: false,
    })
}

/// Depth-first iterator over facet antichains in lexicographic order by
/// bitset value; every prefix of an antichain is an antichain, so each DFS
/// node yields one complex.
pub struct ComplexEnumeration {
    n: usize,
    limit: u64,
    chain: Vec<u64>,
    next: u64,
    emitted_root: bool,
    done: bool,
}

impl Iterator for ComplexEnumeration {
    type Item = SimplicialComplex;

    fn next(&mut self) -> Option<SimplicialComplex> {
        if self.done {
            return None;
        }
        if !self.emitted_root {
            self.emitted_root = true;
            return Some(SimplicialComplex::void(self.n));
        }
        loop {
            // try to extend with the next mask incomparable to the chain
            let mut cand = self.next;
            let mut found = None;
            while cand < self.limit {
                let incomparable = self.chain.iter().all(|&m| m & !cand != 0 && cand & !m != 0);
                if incomparable {
                    found = Some(cand);
                    break;
                }
                cand += 1;
            }
            match found {
                Some(c) => {
                    self.chain.push(c);
                    self.next = c + 1;
                    let facets = self.chain.iter().map(|&m| Face(m)).collect();
                    return Some(SimplicialComplex {
                        n: self.n,
                        facets: sorted(facets),
                    });
                }
                None => match self.chain.pop() {
                    Some(last) => {
                        self.next = last + 1;
                    }
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

// ------------------------------------------------------------------
// Builders for the complexes the classification results talk about.
// ------------------------------------------------------------------

/// Boundary of the k-simplex: all k-subsets of {1..k+1}. A (k-1)-sphere.
pub fn simplex_boundary(k: usize) -> SimplicialComplex {
    assert!(k >= 1);
    let n = k + 1;
    let all: Vec<usize> = (1..=n).collect();
    let facets: Vec<Vec<usize>> = (1..=n)
        .map(|omit| all.iter().copied().filter(|&v| v != omit).collect())
        .collect();
    SimplicialComplex::from_facets(n, &facets).unwrap()
}

/// The solid k-simplex on {1..k+1}.
pub fn solid_simplex(k: usize) -> SimplicialComplex {
    assert!(k >= 1);
    let n = k + 1;
    SimplicialComplex::from_facets(n, &[(1..=n).collect()]).unwrap()
}

/// Path with m edges on vertices {1..m+1}.
pub fn path(m: usize) -> SimplicialComplex {
    assert!(m >= 1);
    let facets: Vec<Vec<usize>> = (1..=m).map(|i| vec![i, i + 1]).collect();
    SimplicialComplex::from_facets(m + 1, &facets).unwrap()
}

/// m isolated vertices.
pub fn isolated_points(m: usize) -> SimplicialComplex {
    assert!(m >= 1);
    let facets: Vec<Vec<usize>> = (1..=m).map(|i| vec![i]).collect();
    SimplicialComplex::from_facets(m, &facets).unwrap()
}

/// Cycle with m vertices and m edges (m >= 3).
pub fn cycle(m: usize) -> SimplicialComplex {
    assert!(m >= 3);
    let facets: Vec<Vec<usize>> = (1..=m)
        .map(|i| vec![i, if i == m { 1 } else { i + 1 }])
        .collect();
    SimplicialComplex::from_facets(m, &facets).unwrap()
}

/// The 6-vertex triangulation of the real projective plane:
/// f-vector (1, 6, 15, 10), complete 1-skeleton, Euler characteristic 1.
pub fn rp2_6() -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = vec![
        vec![1, 2, 5],
        vec![1, 2, 6],
        vec![1, 3, 4],
        vec![1, 3, 6],
        vec![1, 4, 5],
        vec![2, 3, 4],
        vec![2, 3, 5],
        vec![2, 4, 6],
        vec![3, 5, 6],
        vec![4, 5, 6],
    ];
    SimplicialComplex::from_facets(6, &facets).unwrap()
}

/// The 7-vertex torus: facets {i, i+1, i+3} and {i, i+2, i+3}, indices mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::with_capacity(14);
    for i in 0..7usize {
        facets.push(vec![i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1]);
        facets.push(vec![i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1]);
    }
    SimplicialComplex::from_facets(7, &facets).unwrap()
}

/// (torus7 ∗ {8}) ∪ (torus7 ∗ {9}): a normal pseudomanifold on 9 vertices
/// that is not a homology manifold (both cone points have torus links).
pub fn nat_example() -> SimplicialComplex {
    let t = {
        // re-ground the torus on 9 vertices so joins share the universe
        let facets: Vec<Vec<usize>> = torus7().facets().iter().map(|f| f.vertices()).collect();
        SimplicialComplex::from_facets(9, &facets).unwrap()
    };
    let apex8 = SimplicialComplex::from_facets(9, &[vec![8]]).unwrap();
    let apex9 = SimplicialComplex::from_facets(9, &[vec![9]]).unwrap();
    t.join(&apex8).unwrap().union_with(&t.join(&apex9).unwrap())
}
