//! Simplicial maps between complexes and the mod-2 degree.

use std::sync::Arc;

use crate::complex::{Complex, Simplex, VertexId};
use crate::error::Error;
use crate::involution::Involution;
use crate::Result;

/// A vertex map `f: V(src) → V(dst)` sending simplices to simplices.
/// Degenerate images (lower dimension) are allowed.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    src: Arc<Complex>,
    dst: Arc<Complex>,
    map: Vec<VertexId>,
}

impl SimplicialMap {
    pub fn new(src: Arc<Complex>, dst: Arc<Complex>, map: Vec<VertexId>) -> Result<SimplicialMap> {
        if map.len() != src.vertex_count() {
            return Err(Error::Contract(format!(
                "vertex map covers {} of {} vertices",
                map.len(),
                src.vertex_count()
            )));
        }
        let f = SimplicialMap { src, dst, map };
        for facet in f.src.facets() {
            let image = f.image_vertices(facet);
            if !f.dst.has_simplex(&image) {
                return Err(Error::NotSimplicial(f.src.simplex_names(facet)));
            }
        }
        Ok(f)
    }

    pub fn from_pairs<S: AsRef<str>>(
        src: Arc<Complex>,
        dst: Arc<Complex>,
        pairs: &[(S, S)],
    ) -> Result<SimplicialMap> {
        let mut map: Vec<Option<VertexId>> = vec![None; src.vertex_count()];
        for (a, b) in pairs {
            let v = src.require_vertex(a.as_ref())?;
            let w = dst.require_vertex(b.as_ref())?;
            if let Some(old) = map[v.index()] {
                if old != w {
                    return Err(Error::Contract(format!(
                        "conflicting images for `{}`",
                        a.as_ref()
                    )));
                }
            }
            map[v.index()] = Some(w);
        }
        let mut dense = Vec::with_capacity(map.len());
        for (i, slot) in map.iter().enumerate() {
            match slot {
                Some(w) => dense.push(*w),
                None => {
                    return Err(Error::Contract(format!(
                        "vertex `{}` has no image",
                        src.name(VertexId(i as u32))
                    )))
                }
            }
        }
        SimplicialMap::new(src, dst, dense)
    }

    pub fn src(&self) -> &Arc<Complex> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Complex> {
        &self.dst
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[v.index()]
    }

    /// Distinct image vertices of a simplex, sorted. Shorter than the input
    /// when the simplex collapses.
    pub fn image_vertices(&self, s: &Simplex) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = s.vertices().iter().map(|v| self.apply(*v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Preimage counts per target facet and the resulting parity.
///
/// `counts[i]` is the number of source facets mapped bijectively onto the
/// i-th target facet (canonical facet order). Degenerate facets contribute
/// nowhere. For maps between closed strongly-connected pseudomanifolds all
/// parities agree; if they do not, `consistent` is false and `deg2` is
/// `None` rather than an arbitrary pick.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub counts: Vec<u64>,
    pub deg2: Option<u8>,
    pub consistent: bool,
}

/// Mod-2 degree of a simplicial map between closed pseudomanifolds of equal
/// dimension with strongly connected target.
pub fn degree_mod2(f: &SimplicialMap) -> Result<DegreeReport> {
    let src = f.src();
    let dst = f.dst();
    if src.dim() != dst.dim() {
        return Err(Error::DimensionMismatch(src.dim(), dst.dim()));
    }
    if !src.is_closed_pseudomanifold() || !dst.is_closed_pseudomanifold() {
        return Err(Error::NotClosed);
    }
    if !dst.manifold_check().is_strongly_connected {
        return Err(Error::TargetNotStronglyConnected);
    }
    let mut counts = vec![0u64; dst.facets().len()];
    for facet in src.facets() {
        let image = f.image_vertices(facet);
        if image.len() != facet.vertices().len() {
            continue; // collapsed facet
        }
        let image = Simplex::new(image);
        let idx = dst
            .facet_index(&image)
            .expect("full-dimensional image simplex is a facet");
        counts[idx] += 1;
    }
    let parity = counts.first().map(|c| (c % 2) as u8);
    let consistent = counts.iter().all(|c| Some((c % 2) as u8) == parity);
    Ok(DegreeReport {
        deg2: if consistent { parity } else { None },
        counts,
        consistent,
    })
}

/// First vertex violating `f(A_src(v)) = A_dst(f(v))`, or `None` when the
/// map is antipodal (equivariant).
pub fn antipodal_map_witness(
    f: &SimplicialMap,
    a_src: &Involution,
    a_dst: &Involution,
) -> Result<Option<VertexId>> {
    if !a_src.complex().same_structure(f.src()) || !a_dst.complex().same_structure(f.dst()) {
        return Err(Error::Contract(
            "involutions do not act on the map's source and target".into(),
        ));
    }
    for v in f.src().vertex_ids() {
        if f.apply(a_src.apply(v)) != a_dst.apply(f.apply(v)) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub fn is_antipodal_map(
    f: &SimplicialMap,
    a_src: &Involution,
    a_dst: &Involution,
) -> Result<bool> {
    Ok(antipodal_map_witness(f, a_src, a_dst)?.is_none())
}

/// Verdict of the odd-mapping check: an antipodal map between the test
/// family's closed symmetric complexes must have odd degree.
#[derive(Debug)]
pub struct OddMapVerdict {
    pub report: DegreeReport,
    /// Whether `deg₂ = 1` with a consistent count table.
    pub verdict: bool,
}

pub fn verify_odd_mapping(
    f: &SimplicialMap,
    a_src: &Involution,
    a_dst: &Involution,
) -> Result<OddMapVerdict> {
    if let Some(v) = antipodal_map_witness(f, a_src, a_dst)? {
        return Err(Error::MapNotAntipodal(f.src().name(v).to_string()));
    }
    let report = degree_mod2(f)?;
    let verdict = report.consistent && report.deg2 == Some(1);
    Ok(OddMapVerdict { report, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn polygon(prefix: &str, n: usize) -> Arc<Complex> {
        Complex::from_named_facets(
            (0..n).map(|i| vec![format!("{prefix}{i}"), format!("{prefix}{}", (i + 1) % n)]),
        )
        .unwrap()
    }

    fn identity_map(c: &Arc<Complex>) -> SimplicialMap {
        SimplicialMap::new(Arc::clone(c), Arc::clone(c), c.vertex_ids().collect()).unwrap()
    }

    #[test]
    fn identity_on_octahedron_has_degree_one() {
        let (c, _) = generators::crosspolytope_sphere(2);
        let report = degree_mod2(&identity_map(&c)).unwrap();
        assert!(report.consistent);
        assert_eq!(report.deg2, Some(1));
        assert!(report.counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn constant_map_has_degree_zero() {
        let (c, _) = generators::crosspolytope_sphere(2);
        let v0 = c.vertex_ids().next().unwrap();
        let map = vec![v0; c.vertex_count()];
        let f = SimplicialMap::new(Arc::clone(&c), Arc::clone(&c), map).unwrap();
        let report = degree_mod2(&f).unwrap();
        assert!(report.consistent);
        assert_eq!(report.deg2, Some(0));
        assert!(report.counts.iter().all(|&c| c == 0));
    }

    #[test]
    fn winding_map_counts_three_preimages() {
        for k in 3..7 {
            let src = polygon("s", 3 * k);
            let dst = polygon("t", k);
            let pairs: Vec<(String, String)> = (0..3 * k)
                .map(|i| (format!("s{i}"), format!("t{}", i % k)))
                .collect();
            let f = SimplicialMap::from_pairs(Arc::clone(&src), Arc::clone(&dst), &pairs)
                .unwrap();
            let report = degree_mod2(&f).unwrap();
            assert!(report.consistent);
            assert_eq!(report.deg2, Some(1));
            assert!(report.counts.iter().all(|&c| c == 3), "k = {k}");
        }
    }

    #[test]
    fn winding_composed_with_itself_counts_nine() {
        let src = polygon("s", 27);
        let mid = polygon("m", 9);
        let dst = polygon("t", 3);
        let f: Vec<(String, String)> = (0..27)
            .map(|i| (format!("s{i}"), format!("m{}", i % 9)))
            .collect();
        let g: Vec<(String, String)> = (0..9)
            .map(|i| (format!("m{i}"), format!("t{}", i % 3)))
            .collect();
        let f = SimplicialMap::from_pairs(Arc::clone(&src), Arc::clone(&mid), &f).unwrap();
        let g = SimplicialMap::from_pairs(Arc::clone(&mid), Arc::clone(&dst), &g).unwrap();
        let composed: Vec<VertexId> = src.vertex_ids().map(|v| g.apply(f.apply(v))).collect();
        let h = SimplicialMap::new(src, dst, composed).unwrap();
        let report = degree_mod2(&h).unwrap();
        assert!(report.counts.iter().all(|&c| c == 9));
        assert_eq!(report.deg2, Some(1));
    }

    #[test]
    fn non_simplicial_map_rejected() {
        // Map an edge onto two non-adjacent octahedron vertices.
        let edge = Complex::from_named_facets(vec![vec!["a", "b"]]).unwrap();
        let (dst, _) = generators::crosspolytope_sphere(2);
        let err = SimplicialMap::from_pairs(
            Arc::clone(&edge),
            Arc::clone(&dst),
            &[("a", "1"), ("b", "-1")],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotSimplicial(_)));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let (oct, _) = generators::crosspolytope_sphere(2);
        let square = polygon("p", 4);
        let v0 = square.vertex_ids().next().unwrap();
        let f =
            SimplicialMap::new(Arc::clone(&oct), Arc::clone(&square), vec![v0; 6]).unwrap();
        assert!(matches!(
            degree_mod2(&f).unwrap_err(),
            Error::DimensionMismatch(2, 1)
        ));
    }

    #[test]
    fn open_source_complex_rejected() {
        let tri = Complex::from_named_facets(vec![vec!["a", "b", "c"]]).unwrap();
        let (dst, _) = generators::crosspolytope_sphere(2);
        let one = dst.vertex_ids().next().unwrap();
        let f = SimplicialMap::new(Arc::clone(&tri), Arc::clone(&dst), vec![one; 3]).unwrap();
        assert!(matches!(degree_mod2(&f).unwrap_err(), Error::NotClosed));
    }

    #[test]
    fn antipodal_identity_is_detected() {
        let (c, a) = generators::crosspolytope_sphere(2);
        let f = identity_map(&c);
        assert!(is_antipodal_map(&f, &a, &a).unwrap());
        let verdict = verify_odd_mapping(&f, &a, &a).unwrap();
        assert!(verdict.verdict);
    }

    #[test]
    fn perturbed_map_yields_witness() {
        let (c, a) = generators::crosspolytope_sphere(2);
        // Send 3 to -3 while keeping -3 in place: f(A(3)) = -3 but
        // A(f(3)) = 3. (Swapping both ±3 images would stay equivariant.)
        let mut map: Vec<VertexId> = c.vertex_ids().collect();
        let v3 = c.vertex_id("3").unwrap();
        let m3 = c.vertex_id("-3").unwrap();
        map[v3.index()] = m3;
        let f = SimplicialMap::new(Arc::clone(&c), Arc::clone(&c), map).unwrap();
        assert!(antipodal_map_witness(&f, &a, &a).unwrap().is_some());
    }

    #[test]
    fn degenerate_facets_never_contribute() {
        // Collapse the octahedron onto one triangle: 3 -> -3 keeps some
        // facets non-degenerate; check collapsed ones are skipped.
        let (c, _) = generators::crosspolytope_sphere(2);
        let mut map: Vec<VertexId> = c.vertex_ids().collect();
        let v3 = c.vertex_id("3").unwrap();
        let m3 = c.vertex_id("-3").unwrap();
        map[v3.index()] = m3;
        let f = SimplicialMap::new(Arc::clone(&c), Arc::clone(&c), map).unwrap();
        let report = degree_mod2(&f).unwrap();
        // Facets containing +3 now map onto facets containing -3: those
        // target facets get 2 preimages, the +3 ones get 0. Parities agree.
        assert!(report.consistent);
        assert_eq!(report.deg2, Some(0));
    }
}
