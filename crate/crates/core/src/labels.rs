//! Vertex labellings into `Π_n = {+1,−1,…,+n,−n}`, complementary edges,
//! the induced map into a crosspolytope boundary, and the parity counters
//! behind the Tucker/Shashkin/Ky Fan verdicts.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{Complex, Simplex, Subdivision, VertexId};
use crate::degree::{degree_mod2, DegreeReport, SimplicialMap};
use crate::error::Error;
use crate::generators;
use crate::involution::Involution;
use crate::Result;

/// A total labelling `L: V(T) → Π_n` by nonzero integers.
#[derive(Clone, Debug)]
pub struct Labelling {
    complex: Arc<Complex>,
    values: Vec<i32>,
}

impl Labelling {
    pub fn new(complex: Arc<Complex>, values: Vec<i32>) -> Result<Labelling> {
        if values.len() != complex.vertex_count() {
            return Err(Error::Contract(format!(
                "labelling covers {} of {} vertices",
                values.len(),
                complex.vertex_count()
            )));
        }
        for (i, value) in values.iter().enumerate() {
            if *value == 0 {
                return Err(Error::Contract(format!(
                    "label of `{}` is 0; labels are nonzero",
                    complex.name(VertexId(i as u32))
                )));
            }
        }
        Ok(Labelling { complex, values })
    }

    pub fn from_pairs<S: AsRef<str>>(
        complex: Arc<Complex>,
        pairs: &[(S, i32)],
    ) -> Result<Labelling> {
        let mut values: Vec<Option<i32>> = vec![None; complex.vertex_count()];
        for (name, value) in pairs {
            let v = complex.require_vertex(name.as_ref())?;
            if let Some(old) = values[v.index()] {
                if old != *value {
                    return Err(Error::Contract(format!(
                        "conflicting labels for `{}`: {} and {}",
                        name.as_ref(),
                        old,
                        value
                    )));
                }
            }
            values[v.index()] = Some(*value);
        }
        let mut dense = Vec::with_capacity(values.len());
        for (i, slot) in values.iter().enumerate() {
            match slot {
                Some(v) => dense.push(*v),
                None => {
                    return Err(Error::Contract(format!(
                        "vertex `{}` has no label",
                        complex.name(VertexId(i as u32))
                    )))
                }
            }
        }
        Labelling::new(complex, dense)
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn value(&self, v: VertexId) -> i32 {
        self.values[v.index()]
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn max_abs(&self) -> u32 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Errors unless every label lies in `Π_n`.
    pub fn check_alphabet(&self, n: u32) -> Result<()> {
        for v in self.complex.vertex_ids() {
            let value = self.value(v);
            if value.unsigned_abs() > n {
                return Err(Error::LabelOutOfRange(
                    self.complex.name(v).to_string(),
                    value,
                    n,
                ));
            }
        }
        Ok(())
    }

    /// Label multiset of a facet, sorted.
    fn facet_labels(&self, facet: &Simplex) -> Vec<i32> {
        let mut labels: Vec<i32> = facet.vertices().iter().map(|v| self.value(*v)).collect();
        labels.sort_unstable();
        labels
    }
}

/// A set of labels `{ℓ_1, …, ℓ_m}` with `|ℓ_i| = i`: one sign choice per
/// absolute value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Signature(Vec<i32>);

impl Signature {
    /// Validates that the values have absolute values exactly `1..=m`.
    pub fn new(mut values: Vec<i32>) -> Result<Signature> {
        values.sort_unstable_by_key(|v| v.abs());
        for (i, value) in values.iter().enumerate() {
            if value.unsigned_abs() as usize != i + 1 {
                return Err(Error::Contract(format!(
                    "signature needs one label per absolute value 1..={}, got {:?}",
                    values.len(),
                    values
                )));
            }
        }
        Ok(Signature(values))
    }

    /// Values sorted by absolute value.
    pub fn values(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Signature {
        Signature(self.0.iter().map(|v| -v).collect())
    }

    /// All `2^(d+1)` signatures for facets of a d-complex, in canonical
    /// order: the sign of the smallest absolute value toggles fastest, plus
    /// before minus.
    pub fn all_for_dim(d: usize) -> Vec<Signature> {
        let m = d + 1;
        (0u32..(1 << m))
            .map(|bits| {
                Signature(
                    (1..=m as i32)
                        .map(|i| if bits >> (i - 1) & 1 == 0 { i } else { -i })
                        .collect(),
                )
            })
            .collect()
    }

    /// One representative per class `{Λ, −Λ}`, the one containing `+1`,
    /// in the same canonical order.
    pub fn pair_classes_for_dim(d: usize) -> Vec<Signature> {
        Signature::all_for_dim(d)
            .into_iter()
            .filter(|sig| sig.values()[0] == 1)
            .collect()
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", body.join(","))
    }
}

/// First vertex violating `L(A(v)) = −L(v)`, or `None` when antipodal.
pub fn antipodal_witness(labelling: &Labelling, a: &Involution) -> Result<Option<VertexId>> {
    if !Arc::ptr_eq(labelling.complex(), a.complex())
        && !labelling.complex().same_structure(a.complex())
    {
        return Err(Error::Contract(
            "labelling and involution refer to different complexes".into(),
        ));
    }
    for v in labelling.complex().vertex_ids() {
        if labelling.value(a.apply(v)) != -labelling.value(v) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub fn is_antipodal_labelling(labelling: &Labelling, a: &Involution) -> Result<bool> {
    Ok(antipodal_witness(labelling, a)?.is_none())
}

/// First boundary vertex violating `L(A(v)) = −L(v)`, where `a` lives on the
/// boundary complex of the labelled complex. `None` means boundary-antipodal;
/// interior vertices are ignored.
pub fn boundary_antipodal_witness(
    labelling: &Labelling,
    a: &Involution,
) -> Result<Option<VertexId>> {
    let t = labelling.complex();
    let boundary = a.complex();
    for v in boundary.vertex_ids() {
        let v_in_t = t.require_vertex(boundary.name(v))?;
        let image_in_t = t.require_vertex(boundary.name(a.apply(v)))?;
        if labelling.value(image_in_t) != -labelling.value(v_in_t) {
            return Ok(Some(v_in_t));
        }
    }
    Ok(None)
}

/// All edges `{u,v}` with `L(u) = −L(v)`, in canonical order.
pub fn complementary_edges(labelling: &Labelling) -> Vec<Simplex> {
    labelling
        .complex()
        .edges()
        .filter(|edge| {
            let vs = edge.vertices();
            labelling.value(vs[0]) == -labelling.value(vs[1])
        })
        .cloned()
        .collect()
}

/// Outcome of a Tucker check: the promised complementary edge, or a
/// counterexample report when none exists (a non-BUT input or a bug for
/// genuinely BUT inputs).
#[derive(Debug)]
pub enum TuckerOutcome {
    ComplementaryEdge(Simplex),
    Counterexample(TuckerCounterexample),
}

#[derive(Debug)]
pub struct TuckerCounterexample {
    pub vertex_count: usize,
    pub facet_count: usize,
    pub alphabet: u32,
    /// Labels echoed back as `(vertex name, label)` for reproduction.
    pub labelling: Vec<(String, i32)>,
}

fn tucker_counterexample(labelling: &Labelling, n: u32) -> TuckerCounterexample {
    let t = labelling.complex();
    TuckerCounterexample {
        vertex_count: t.vertex_count(),
        facet_count: t.facets().len(),
        alphabet: n,
        labelling: t
            .vertex_ids()
            .map(|v| (t.name(v).to_string(), labelling.value(v)))
            .collect(),
    }
}

/// Tucker check for a closed antipodal triangulation: an antipodal labelling
/// into `Π_d` must produce a complementary edge.
pub fn verify_tucker(labelling: &Labelling, a: &Involution) -> Result<TuckerOutcome> {
    let t = labelling.complex();
    let d = t.dim();
    labelling.check_alphabet(d as u32)?;
    if !t.is_closed_pseudomanifold() {
        return Err(Error::NotClosed);
    }
    if let Some(witness) = a.freeness_witness() {
        return Err(Error::InvolutionNotFree(witness));
    }
    if let Some(v) = antipodal_witness(labelling, a)? {
        return Err(Error::LabellingNotAntipodal(t.name(v).to_string()));
    }
    Ok(match complementary_edges(labelling).into_iter().next() {
        Some(edge) => TuckerOutcome::ComplementaryEdge(edge),
        None => TuckerOutcome::Counterexample(tucker_counterexample(labelling, d as u32)),
    })
}

/// Tucker check for a manifold with boundary: `a` lives on the boundary
/// complex and the labelling only needs to be antipodal there.
pub fn verify_tucker_with_boundary(
    labelling: &Labelling,
    a: &Involution,
) -> Result<TuckerOutcome> {
    let t = labelling.complex();
    let d = t.dim();
    labelling.check_alphabet(d as u32)?;
    let report = t.manifold_check();
    if !report.is_pseudomanifold_with_boundary || report.boundary_ridges.is_empty() {
        return Err(Error::NotManifoldWithBoundary);
    }
    if let Some(witness) = a.freeness_witness() {
        return Err(Error::InvolutionNotFree(witness));
    }
    if let Some(v) = boundary_antipodal_witness(labelling, a)? {
        return Err(Error::LabellingNotAntipodal(t.name(v).to_string()));
    }
    Ok(match complementary_edges(labelling).into_iter().next() {
        Some(edge) => TuckerOutcome::ComplementaryEdge(edge),
        None => TuckerOutcome::Counterexample(tucker_counterexample(labelling, d as u32)),
    })
}

/// The simplicial map `f_L` into the boundary of the n-crosspolytope induced
/// by a complementary-edge-free labelling: `v ↦ sign(L(v))·e_{|L(v)|}`.
///
/// The target is [`generators::crosspolytope_sphere`]`(n-1)` with its vertex
/// named by the signed label value.
pub fn induced_map(labelling: &Labelling, n: u32) -> Result<SimplicialMap> {
    labelling.check_alphabet(n)?;
    if let Some(edge) = complementary_edges(labelling).into_iter().next() {
        return Err(Error::ComplementaryEdgePresent(
            labelling.complex().simplex_names(&edge),
        ));
    }
    let (target, _) = generators::crosspolytope_sphere(n as usize - 1);
    let src = labelling.complex();
    let map: Vec<VertexId> = src
        .vertex_ids()
        .map(|v| target.require_vertex(&labelling.value(v).to_string()))
        .collect::<Result<_>>()?;
    SimplicialMap::new(Arc::clone(src), target, map)
}

/// Transports a labelling to a barycentric subdivision: the new vertex
/// `b(σ)` inherits the label of one vertex of `σ`.
///
/// Complementary edges never appear: the two faces of a subdivision edge are
/// nested, so their selected vertices are adjacent in the parent complex.
/// When `symmetric_part` is given (an involution on the whole complex or on
/// a subcomplex such as the boundary), selections are made orbit-by-orbit so
/// that `selected(A(σ)) = A(selected(σ))`; a labelling antipodal over that
/// part stays antipodal over its subdivision.
pub fn lift_labelling(
    labelling: &Labelling,
    sd: &Subdivision,
    symmetric_part: Option<&Involution>,
) -> Result<Labelling> {
    let parent = &sd.parent;
    if !Arc::ptr_eq(labelling.complex(), parent)
        && !labelling.complex().same_structure(parent)
    {
        return Err(Error::Contract(
            "labelling does not live on the subdivided complex".into(),
        ));
    }
    // Image of a parent face under the symmetric-part involution, when the
    // face lies in its domain subcomplex.
    let sym_image = |face: &Simplex| -> Option<Simplex> {
        let a = symmetric_part?;
        let domain = a.complex();
        let in_domain: Option<Vec<VertexId>> = face
            .vertices()
            .iter()
            .map(|v| domain.vertex_id(parent.name(*v)))
            .collect();
        let ids = in_domain?;
        if !domain.has_simplex(&ids) {
            return None;
        }
        let image: Option<Vec<VertexId>> = ids
            .iter()
            .map(|v| parent.vertex_id(domain.name(a.apply(*v))))
            .collect();
        image.map(Simplex::new)
    };
    let sym_vertex = |v: VertexId| -> Option<VertexId> {
        let a = symmetric_part?;
        let in_domain = a.complex().vertex_id(parent.name(v))?;
        parent.vertex_id(a.complex().name(a.apply(in_domain)))
    };

    let mut selected: BTreeMap<Simplex, VertexId> = BTreeMap::new();
    let mut values = vec![0i32; sd.complex.vertex_count()];
    for dim_faces in parent.faces() {
        for face in dim_faces {
            let choice = match sym_image(face) {
                Some(image) if &image != face => match selected.get(&image) {
                    Some(u) => sym_vertex(*u).expect("partner selection stays in domain"),
                    None => face.vertices()[0],
                },
                _ => face.vertices()[0],
            };
            selected.insert(face.clone(), choice);
            let new_vertex = sd.vertex_of_face(face).expect("face has a barycenter");
            values[new_vertex.index()] = labelling.value(choice);
        }
    }
    Labelling::new(Arc::clone(&sd.complex), values)
}

/// Number of facets whose label multiset equals the signature. Facets with
/// repeated absolute values never match any signature.
pub fn count_signature(labelling: &Labelling, signature: &Signature) -> Result<u64> {
    let t = labelling.complex();
    if signature.len() != t.dim() + 1 {
        return Err(Error::SignatureDimensionMismatch(signature.len(), t.dim() + 1));
    }
    let mut target: Vec<i32> = signature.values().to_vec();
    target.sort_unstable();
    Ok(t.facets()
        .iter()
        .filter(|facet| labelling.facet_labels(facet) == target)
        .count() as u64)
}

/// Facets labelled by the signature or its negation: the quantity Shashkin's
/// boundary-case verdict is about.
pub fn count_signature_pair(labelling: &Labelling, signature: &Signature) -> Result<u64> {
    Ok(count_signature(labelling, signature)?
        + count_signature(labelling, &signature.negated())?)
}

/// Per-sequence alternating counts: for each `k_0 < k_1 < … < k_d ≤ n` the
/// number of facets labelled exactly `{+k_0, −k_1, +k_2, …}`.
#[derive(Debug)]
pub struct AlternatingReport {
    pub per_sequence: Vec<(Vec<u32>, u64)>,
    pub total: u64,
    /// Whether `n ≥ d+1` (labellings without complementary edges force it).
    pub alphabet_large_enough: bool,
}

pub fn count_alternating(labelling: &Labelling, n: u32) -> Result<AlternatingReport> {
    labelling.check_alphabet(n)?;
    let t = labelling.complex();
    let d = t.dim();
    let mut per_sequence: Vec<(Vec<u32>, u64)> = Vec::new();
    let mut counts: BTreeMap<Vec<i32>, u64> = BTreeMap::new();
    for facet in t.facets() {
        *counts.entry(labelling.facet_labels(facet)).or_default() += 1;
    }
    for combo in increasing_sequences(n, d + 1) {
        let mut pattern: Vec<i32> = combo
            .iter()
            .enumerate()
            .map(|(i, k)| if i % 2 == 0 { *k as i32 } else { -(*k as i32) })
            .collect();
        pattern.sort_unstable();
        let count = counts.get(&pattern).copied().unwrap_or(0);
        per_sequence.push((combo, count));
    }
    let total = per_sequence.iter().map(|(_, c)| c).sum();
    Ok(AlternatingReport {
        per_sequence,
        total,
        alphabet_large_enough: n as usize >= d + 1,
    })
}

fn increasing_sequences(n: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(start: u32, n: u32, len: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for k in start..=n {
            current.push(k);
            rec(k + 1, n, len, current, out);
            current.pop();
        }
    }
    rec(1, n, len, &mut current, &mut out);
    out
}

/// Full signature-count table with parity verdicts.
#[derive(Debug)]
pub struct ShashkinReport {
    /// `true` for the with-boundary variant, where rows are `{Λ, −Λ}`
    /// classes; `false` for the closed variant with all `2^(d+1)` rows.
    pub boundary_mode: bool,
    pub rows: Vec<(Signature, u64)>,
    pub all_odd: bool,
    /// Closed mode only: mod-2 degree of the induced map and whether every
    /// count matches its parity.
    pub degree_crosscheck: Option<DegreeCrosscheck>,
}

#[derive(Debug)]
pub struct DegreeCrosscheck {
    pub report: DegreeReport,
    pub counts_match_degree: bool,
}

/// Closed case: checks the labelling is antipodal with no complementary
/// edges, counts every signature, and cross-checks all parities against
/// `deg₂(f_L)`.
pub fn shashkin_report_closed(labelling: &Labelling, a: &Involution) -> Result<ShashkinReport> {
    let t = labelling.complex();
    let d = t.dim();
    let n = d as u32 + 1;
    labelling.check_alphabet(n)?;
    if !t.is_closed_pseudomanifold() {
        return Err(Error::NotClosed);
    }
    if let Some(witness) = a.freeness_witness() {
        return Err(Error::InvolutionNotFree(witness));
    }
    if let Some(v) = antipodal_witness(labelling, a)? {
        return Err(Error::LabellingNotAntipodal(t.name(v).to_string()));
    }
    if let Some(edge) = complementary_edges(labelling).into_iter().next() {
        return Err(Error::ComplementaryEdgePresent(t.simplex_names(&edge)));
    }
    let mut rows = Vec::new();
    let mut all_odd = true;
    for signature in Signature::all_for_dim(d) {
        let count = count_signature(labelling, &signature)?;
        all_odd &= count % 2 == 1;
        rows.push((signature, count));
    }
    let map = induced_map(labelling, n)?;
    let degree = degree_mod2(&map)?;
    let counts_match_degree = degree.consistent
        && degree
            .deg2
            .map(|deg| rows.iter().all(|(_, c)| (c % 2) as u8 == deg))
            .unwrap_or(false);
    Ok(ShashkinReport {
        boundary_mode: false,
        rows,
        all_odd,
        degree_crosscheck: Some(DegreeCrosscheck {
            report: degree,
            counts_match_degree,
        }),
    })
}

/// With-boundary case: the involution lives on the boundary complex, the
/// labelling must be antipodal there and complementary-edge-free; rows count
/// facets labelled by `Λ` or `−Λ`.
pub fn shashkin_report_boundary(labelling: &Labelling, a: &Involution) -> Result<ShashkinReport> {
    let t = labelling.complex();
    let d = t.dim();
    labelling.check_alphabet(d as u32 + 1)?;
    let report = t.manifold_check();
    if !report.is_pseudomanifold_with_boundary || report.boundary_ridges.is_empty() {
        return Err(Error::NotManifoldWithBoundary);
    }
    if let Some(witness) = a.freeness_witness() {
        return Err(Error::BoundaryInvolutionNotFree(witness));
    }
    if let Some(v) = boundary_antipodal_witness(labelling, a)? {
        return Err(Error::LabellingNotAntipodal(t.name(v).to_string()));
    }
    if let Some(edge) = complementary_edges(labelling).into_iter().next() {
        return Err(Error::ComplementaryEdgePresent(t.simplex_names(&edge)));
    }
    let mut rows = Vec::new();
    let mut all_odd = true;
    for signature in Signature::pair_classes_for_dim(d) {
        let count = count_signature_pair(labelling, &signature)?;
        all_odd &= count % 2 == 1;
        rows.push((signature, count));
    }
    Ok(ShashkinReport {
        boundary_mode: true,
        rows,
        all_odd,
        degree_crosscheck: None,
    })
}
