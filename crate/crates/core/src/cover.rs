//! Closed covering families on a triangulation and their witnesses: the
//! min-index labelling, rainbow simplices, the cyclic transform turning an
//! unpaired (d+2)-family into d+1 antipode-free pairs, and the
//! Lusternik–Schnirelmann-style non-covering check.
//!
//! A "closed set" is discretized as the full subcomplex spanned by a vertex
//! subset, and a family covers the complex when every facet lies inside some
//! single member. Covering all vertices is strictly weaker and is not
//! enough: on the octahedron the two sets `{e1,e2,e3}`, `{-e1,-e2,-e3}`
//! touch every vertex but only two of the eight facets.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::{Complex, Simplex, Subdivision, VertexId};
use crate::error::Error;
use crate::involution::Involution;
use crate::labels::{complementary_edges, Labelling, Signature};
use crate::Result;

/// A named vertex subset of a complex, standing for the full subcomplex it
/// spans.
#[derive(Clone, Debug)]
pub struct ClosedSet {
    complex: Arc<Complex>,
    pub name: String,
    vertices: BTreeSet<VertexId>,
}

impl ClosedSet {
    pub fn new<S: AsRef<str>>(
        complex: Arc<Complex>,
        name: impl Into<String>,
        members: impl IntoIterator<Item = S>,
    ) -> Result<ClosedSet> {
        let mut vertices = BTreeSet::new();
        for member in members {
            vertices.insert(complex.require_vertex(member.as_ref())?);
        }
        Ok(ClosedSet {
            complex,
            name: name.into(),
            vertices,
        })
    }

    pub fn from_ids(
        complex: Arc<Complex>,
        name: impl Into<String>,
        vertices: BTreeSet<VertexId>,
    ) -> ClosedSet {
        ClosedSet {
            complex,
            name: name.into(),
            vertices,
        }
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        s.vertices().iter().all(|v| self.contains(*v))
    }

    /// The simplices of the spanned full subcomplex.
    pub fn induced_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for dim_faces in self.complex.faces() {
            for face in dim_faces {
                if self.contains_simplex(face) {
                    out.push(face.clone());
                }
            }
        }
        out
    }

    /// Image set `A(S)` under an involution of the same complex.
    pub fn image(&self, a: &Involution, name: impl Into<String>) -> ClosedSet {
        ClosedSet {
            complex: Arc::clone(&self.complex),
            name: name.into(),
            vertices: self.vertices.iter().map(|v| a.apply(*v)).collect(),
        }
    }

    /// A vertex `v` with both `v` and `A(v)` in the set, if any.
    pub fn antipodal_pair_witness(&self, a: &Involution) -> Option<(VertexId, VertexId)> {
        self.vertices
            .iter()
            .find(|v| self.vertices.contains(&a.apply(**v)))
            .map(|v| (*v, a.apply(*v)))
    }

    pub fn is_antipodal_pair_free(&self, a: &Involution) -> bool {
        self.antipodal_pair_witness(a).is_none()
    }

    /// Transport to a barycentric subdivision: the lifted set holds the
    /// barycenters of all faces spanned by the original set, i.e. the vertex
    /// set of the subdivided full subcomplex.
    pub fn lift(&self, sd: &Subdivision) -> ClosedSet {
        let mut vertices = BTreeSet::new();
        for dim_faces in sd.parent.faces() {
            for face in dim_faces {
                if self.contains_simplex(face) {
                    vertices.insert(sd.vertex_of_face(face).expect("face has a barycenter"));
                }
            }
        }
        ClosedSet {
            complex: Arc::clone(&sd.complex),
            name: self.name.clone(),
            vertices,
        }
    }

    fn disjoint_witness(&self, other: &ClosedSet) -> Option<VertexId> {
        self.vertices.intersection(&other.vertices).next().copied()
    }
}

/// `None` when every facet lies inside some member; otherwise the first
/// uncovered facet.
pub fn verify_cover(complex: &Complex, sets: &[&ClosedSet]) -> Option<Simplex> {
    complex
        .facets()
        .iter()
        .find(|facet| !sets.iter().any(|set| set.contains_simplex(facet)))
        .cloned()
}

/// A family `{B_i, B_{-i}}`, `i = 1..=len`, with `B_i ∩ B_{-i} = ∅`.
#[derive(Debug)]
pub struct PairedCover {
    complex: Arc<Complex>,
    pairs: Vec<(ClosedSet, ClosedSet)>,
}

impl PairedCover {
    pub fn new(complex: Arc<Complex>, pairs: Vec<(ClosedSet, ClosedSet)>) -> Result<PairedCover> {
        for (plus, minus) in &pairs {
            if let Some(v) = plus.disjoint_witness(minus) {
                return Err(Error::PairNotDisjoint(
                    plus.name.clone(),
                    minus.name.clone(),
                    complex.name(v).to_string(),
                ));
            }
        }
        Ok(PairedCover { complex, pairs })
    }

    /// The preimage cover `B_ℓ := L^{-1}(ℓ)` of a labelling into `Π_n`.
    pub fn from_labelling(labelling: &Labelling, n: u32) -> Result<PairedCover> {
        labelling.check_alphabet(n)?;
        let complex = Arc::clone(labelling.complex());
        let pairs = (1..=n as i32)
            .map(|i| {
                let collect = |target: i32| {
                    complex
                        .vertex_ids()
                        .filter(|v| labelling.value(*v) == target)
                        .collect::<BTreeSet<_>>()
                };
                (
                    ClosedSet::from_ids(Arc::clone(&complex), format!("B{i}"), collect(i)),
                    ClosedSet::from_ids(Arc::clone(&complex), format!("B-{i}"), collect(-i)),
                )
            })
            .collect();
        PairedCover::new(complex, pairs)
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    /// Number of pairs (the largest usable absolute label).
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Member `B_k` for signed index `k`.
    pub fn member(&self, k: i32) -> &ClosedSet {
        let pair = &self.pairs[(k.unsigned_abs() as usize) - 1];
        if k > 0 {
            &pair.0
        } else {
            &pair.1
        }
    }

    pub fn members(&self) -> impl Iterator<Item = &ClosedSet> {
        self.pairs.iter().flat_map(|(p, m)| [p, m])
    }

    /// Whether `B_{-i} = A(B_i)` for every pair; returns the offending pair
    /// name otherwise.
    pub fn pairing_witness(&self, a: &Involution) -> Option<String> {
        for (plus, minus) in &self.pairs {
            let image: BTreeSet<VertexId> = plus.vertices.iter().map(|v| a.apply(*v)).collect();
            if image != minus.vertices {
                return Some(plus.name.clone());
            }
        }
        None
    }

    pub fn lift(&self, sd: &Subdivision) -> Result<PairedCover> {
        PairedCover::new(
            Arc::clone(&sd.complex),
            self.pairs
                .iter()
                .map(|(p, m)| (p.lift(sd), m.lift(sd)))
                .collect(),
        )
    }
}

/// The labelling `L(v) = ℓ` where `|ℓ|` is minimal with `v ∈ B_ℓ`. Well
/// defined because paired sets are disjoint: at the minimal absolute value
/// the sign is unique. Antipodal whenever the cover is `A`-paired.
pub fn min_index_labelling(cover: &PairedCover) -> Result<Labelling> {
    let complex = cover.complex();
    let mut values = vec![0i32; complex.vertex_count()];
    'vertices: for v in complex.vertex_ids() {
        for i in 1..=cover.len() as i32 {
            for k in [i, -i] {
                if cover.member(k).contains(v) {
                    values[v.index()] = k;
                    continue 'vertices;
                }
            }
        }
        return Err(Error::VertexUncovered(complex.name(v).to_string()));
    }
    Labelling::new(Arc::clone(complex), values)
}

/// Outcome of a rainbow-simplex search.
#[derive(Debug)]
pub enum RainbowOutcome {
    /// A facet whose vertices lie respectively in `B_{k_1}, …, B_{k_{d+1}}`.
    Witness(Simplex),
    /// The min-index labelling has a complementary edge: the triangulation
    /// is too coarse for the disjoint closed pairs. Refine and retry.
    ComplementaryEdge(Simplex),
    /// No facet carries the requested signature at this resolution.
    NoWitness,
}

/// Searches for a facet labelled by the signature under the cover's
/// min-index labelling. Each witness vertex membership is re-verified
/// against the raw sets before returning.
pub fn find_rainbow_simplex(cover: &PairedCover, signature: &Signature) -> Result<RainbowOutcome> {
    let complex = cover.complex();
    if signature.len() != complex.dim() + 1 {
        return Err(Error::SignatureDimensionMismatch(
            signature.len(),
            complex.dim() + 1,
        ));
    }
    if (cover.len() as usize) < signature.len() {
        return Err(Error::Contract(format!(
            "cover has {} pairs but the signature needs {}",
            cover.len(),
            signature.len()
        )));
    }
    let labelling = min_index_labelling(cover)?;
    if let Some(edge) = complementary_edges(&labelling).into_iter().next() {
        return Ok(RainbowOutcome::ComplementaryEdge(edge));
    }
    let mut target: Vec<i32> = signature.values().to_vec();
    target.sort_unstable();
    for facet in complex.facets() {
        let mut labels: Vec<i32> = facet
            .vertices()
            .iter()
            .map(|v| labelling.value(*v))
            .collect();
        labels.sort_unstable();
        if labels == target {
            for v in facet.vertices() {
                if !cover.member(labelling.value(*v)).contains(*v) {
                    return Err(Error::Contract(format!(
                        "witness vertex `{}` fails membership in B_{}",
                        complex.name(*v),
                        labelling.value(*v)
                    )));
                }
            }
            return Ok(RainbowOutcome::Witness(facet.clone()));
        }
    }
    Ok(RainbowOutcome::NoWitness)
}

/// Turns `d+2` antipode-free closed sets covering the complex into the
/// paired family `B_1..B_{d+1}`:
///
/// ```text
/// B_i = C_i ∩ (C_{-(i+1)} ∪ … ∪ C_{-(i+m)} ∪ C_{-(d+2)}),   m = ⌈d/2⌉,
/// ```
///
/// indices `i+1..i+m` cycling in `1..=d+1`, `C_{-j} := A(C_j)` and
/// `B_{-i} := A(B_i)`. The output family covers the complex facet-wise and
/// has disjoint pairs; both identities are verified before returning.
pub fn fan_transform(a: &Involution, sets: &[ClosedSet]) -> Result<PairedCover> {
    let complex = a.complex();
    let d = complex.dim();
    if sets.len() != d + 2 {
        return Err(Error::Contract(format!(
            "need d+2 = {} sets for a {}-dimensional complex, got {}",
            d + 2,
            d,
            sets.len()
        )));
    }
    for set in sets {
        if let Some((v, w)) = set.antipodal_pair_witness(a) {
            return Err(Error::InputNotAntipodeFree(
                set.name.clone(),
                complex.name(v).to_string(),
                complex.name(w).to_string(),
            ));
        }
    }
    let refs: Vec<&ClosedSet> = sets.iter().collect();
    if let Some(facet) = verify_cover(complex, &refs) {
        return Err(Error::InputNotCovering(complex.simplex_names(&facet)));
    }

    let m = d.div_ceil(2);
    let negated: Vec<ClosedSet> = sets
        .iter()
        .map(|c| c.image(a, format!("{}~", c.name)))
        .collect();
    let cyc = |x: usize| ((x - 1) % (d + 1)) + 1;
    let mut pairs = Vec::with_capacity(d + 1);
    for i in 1..=d + 1 {
        let mut window: BTreeSet<VertexId> = negated[d + 1].vertices().clone();
        for j in 1..=m {
            window.extend(negated[cyc(i + j) - 1].vertices().iter().copied());
        }
        let plus_vertices: BTreeSet<VertexId> = sets[i - 1]
            .vertices()
            .intersection(&window)
            .copied()
            .collect();
        let plus = ClosedSet::from_ids(Arc::clone(complex), format!("B{i}"), plus_vertices);
        let minus = plus.image(a, format!("B-{i}"));
        pairs.push((plus, minus));
    }
    let cover = PairedCover::new(Arc::clone(complex), pairs)?;
    // Both displayed identities must hold for valid inputs; a failure here
    // means a bug or a violated precondition upstream.
    let members: Vec<&ClosedSet> = cover.members().collect();
    if let Some(facet) = verify_cover(complex, &members) {
        return Err(Error::Contract(format!(
            "transformed family fails to cover facet {{{}}}",
            complex.simplex_names(&facet)
        )));
    }
    Ok(cover)
}

/// Verified conclusion of the covering theorem for `d+2` sets: a vertex `x`
/// lying in the first `k` sets whose image `A(x)` lies in the remaining
/// `d+2-k`.
#[derive(Debug)]
pub struct FanWitness {
    pub vertex: VertexId,
    /// Rainbow facet produced by the paired-family pipeline, when one exists
    /// at this resolution.
    pub rainbow: Option<Simplex>,
    /// Whether the roles of `x` and `A(x)` were swapped to normalize
    /// `k ≥ (d+2)/2`.
    pub flipped: bool,
}

/// Runs the full pipeline: normalizes `k`, applies [`fan_transform`], looks
/// for the rainbow facet with signature `(+1..+k, -(k+1)..-(d+1))`, and
/// finally brute-force scans vertices for the theorem's stated witness. The
/// rainbow facet is evidence; the vertex witness is the verdict.
pub fn verify_fan_cover_theorem(
    a: &Involution,
    sets: &[ClosedSet],
    k: usize,
) -> Result<FanWitness> {
    let complex = a.complex();
    let d = complex.dim();
    if k == 0 || k >= d + 2 {
        return Err(Error::Contract(format!(
            "k must satisfy 0 < k < d+2 = {}, got {k}",
            d + 2
        )));
    }
    // Normalize so the pipeline runs with k' >= (d+2)/2, swapping roles of
    // x and A(x) when necessary.
    let flipped = 2 * k < d + 2;
    let (ordered, k_norm): (Vec<ClosedSet>, usize) = if flipped {
        let mut reordered: Vec<ClosedSet> = sets[k..].to_vec();
        reordered.extend_from_slice(&sets[..k]);
        (reordered, d + 2 - k)
    } else {
        (sets.to_vec(), k)
    };
    let fan = fan_transform(a, &ordered)?;
    let signature = Signature::new(
        (1..=d as i32 + 1)
            .map(|i| if i as usize <= k_norm { i } else { -i })
            .collect(),
    )?;
    let rainbow = match find_rainbow_simplex(&fan, &signature)? {
        RainbowOutcome::Witness(facet) => Some(facet),
        _ => None,
    };
    // The theorem's conclusion, checked directly against the raw sets.
    let witness = complex.vertex_ids().find(|x| {
        sets[..k].iter().all(|c| c.contains(*x))
            && sets[k..].iter().all(|c| c.contains(a.apply(*x)))
    });
    match witness {
        Some(vertex) => Ok(FanWitness {
            vertex,
            rainbow,
            flipped,
        }),
        None => Err(Error::NoWitnessAtThisResolution),
    }
}

/// Covering report for the Lusternik–Schnirelmann-style corollary.
#[derive(Debug)]
pub struct LsReport {
    /// Whether the family covers the complex — for at most d+1 antipode-free
    /// closed sets on a sound input this must be false.
    pub covers: bool,
    pub uncovered_facet: Option<Simplex>,
}

/// Asserts that at most `d+1` antipode-free closed sets do not cover. A
/// covering family is returned as a violation report (`covers == true`),
/// signalling a non-sound input or a bug, not an error.
pub fn ls_corollary_check(a: &Involution, sets: &[ClosedSet]) -> Result<LsReport> {
    let complex = a.complex();
    let d = complex.dim();
    if sets.len() > d + 1 {
        return Err(Error::Contract(format!(
            "the corollary concerns at most d+1 = {} sets, got {}",
            d + 1,
            sets.len()
        )));
    }
    for set in sets {
        if let Some((v, w)) = set.antipodal_pair_witness(a) {
            return Err(Error::InputNotAntipodeFree(
                set.name.clone(),
                complex.name(v).to_string(),
                complex.name(w).to_string(),
            ));
        }
    }
    if sets.is_empty() {
        return Ok(LsReport {
            covers: false,
            uncovered_facet: complex.facets().first().cloned(),
        });
    }
    let refs: Vec<&ClosedSet> = sets.iter().collect();
    let uncovered = verify_cover(complex, &refs);
    Ok(LsReport {
        covers: uncovered.is_none(),
        uncovered_facet: uncovered,
    })
}
