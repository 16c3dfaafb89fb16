//! Doubling a pseudomanifold-with-boundary along a free boundary involution.
//!
//! Two copies of `M` are glued along `∂M` by `A`: an interior vertex `v`
//! gets copies `v+`/`v-` swapped by the glued involution `Ã`, a boundary
//! vertex `w` appears once with `Ã(w) = A(w)`. The result is a closed
//! pseudomanifold with a free involution that restricts to `A` on the
//! boundary image.
//!
//! The gluing is only a simplicial complex when the boundary is a *full*
//! subcomplex of `M` (no simplex outside `∂M` has all its vertices on the
//! boundary). A square disk split by a diagonal violates this: its chord
//! joins two boundary vertices. When fullness fails, one barycentric
//! subdivision is applied first — subdivision always makes the boundary
//! full — and the involution is lifted along with it. The complex that was
//! actually doubled is exposed as [`Doubling::base`].

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::{Complex, Subdivision, VertexId};
use crate::error::Error;
use crate::involution::Involution;
use crate::labels::Labelling;
use crate::Result;

/// Result of [`double`].
#[derive(Debug)]
pub struct Doubling {
    /// The closed double `M̃`.
    pub complex: Arc<Complex>,
    /// The free involution `Ã` on the double.
    pub involution: Involution,
    /// The complex that was doubled: the input, or its barycentric
    /// subdivision when the boundary was not full. `complex` has exactly
    /// twice as many facets as `base`.
    pub base: Arc<Complex>,
    /// Boundary of `base`.
    pub base_boundary: Arc<Complex>,
    /// The boundary involution on `base_boundary` (the input involution,
    /// lifted when a subdivision was necessary).
    pub base_involution: Involution,
    /// Whether a subdivision step was necessary.
    pub subdivided: bool,
    /// The subdivision step, when one was necessary; `base` is then its
    /// complex. Lets labellings and vertex sets be lifted onto `base`.
    pub subdivision: Option<Subdivision>,
    /// Inclusion of the first copy: vertex of `base` to vertex of `complex`.
    pub inclusion: Vec<VertexId>,
    /// Identification of the boundary: vertex of `base_boundary` to vertex
    /// of `complex`.
    pub boundary_inclusion: Vec<VertexId>,
}

/// Glues two copies of `m` along its boundary via the free involution `a`
/// (given on `m.boundary_complex()`, matched by vertex names).
pub fn double(m: &Arc<Complex>, a: &Involution) -> Result<Doubling> {
    let report = m.manifold_check();
    if !report.is_pseudomanifold_with_boundary || report.boundary_ridges.is_empty() {
        return Err(Error::NotManifoldWithBoundary);
    }
    let boundary = m.boundary_complex()?;
    if !a.complex().same_structure(&boundary) {
        return Err(Error::Contract(
            "involution is not defined on the boundary of the complex".into(),
        ));
    }
    if let Some(witness) = a.freeness_witness() {
        return Err(Error::BoundaryInvolutionNotFree(witness));
    }

    if boundary_is_full(m, &boundary) {
        glue(m, &boundary, a, None)
    } else {
        let sd = m.subdivide();
        let sd_boundary = sd.complex.boundary_complex()?;
        let lifted = lift_boundary_involution(a, &sd_boundary)?;
        if let Some(witness) = lifted.freeness_witness() {
            return Err(Error::BoundaryInvolutionNotFree(witness));
        }
        let complex = Arc::clone(&sd.complex);
        glue(&complex, &sd_boundary, &lifted, Some(sd))
    }
}

/// Whether every simplex of `m` with all vertices on the boundary belongs to
/// the boundary complex.
fn boundary_is_full(m: &Arc<Complex>, boundary: &Arc<Complex>) -> bool {
    let boundary_vertices: BTreeSet<&str> = boundary.names().iter().map(|s| s.as_str()).collect();
    for dim_faces in m.faces() {
        for face in dim_faces {
            let all_on_boundary = face
                .vertices()
                .iter()
                .all(|v| boundary_vertices.contains(m.name(*v)));
            if !all_on_boundary {
                continue;
            }
            let in_boundary = boundary
                .vertex_id(m.name(face.vertices()[0]))
                .map(|_| {
                    let ids: Option<Vec<VertexId>> = face
                        .vertices()
                        .iter()
                        .map(|v| boundary.vertex_id(m.name(*v)))
                        .collect();
                    ids.map(|ids| boundary.has_simplex(&ids)).unwrap_or(false)
                })
                .unwrap_or(false);
            if !in_boundary {
                return false;
            }
        }
    }
    true
}

/// Transports a boundary involution to the boundary of the subdivision.
/// Subdivision vertex names are barycenter names (sorted parent names joined
/// by `.`), so the image of `b(σ)` is the barycenter name of `A(σ)`.
pub fn lift_boundary_involution(
    a: &Involution,
    sd_boundary: &Arc<Complex>,
) -> Result<Involution> {
    let parent_boundary = a.complex();
    let sd_of_parent_boundary = parent_boundary.subdivide();
    if !sd_of_parent_boundary.complex.same_structure(sd_boundary) {
        return Err(Error::Contract(
            "boundary of the subdivision does not match the subdivided boundary".into(),
        ));
    }
    let lifted = crate::involution::lift_involution(a, &sd_of_parent_boundary)?;
    // Re-key by name onto the caller's boundary complex.
    let pairs: Vec<(String, String)> = lifted
        .complex()
        .vertex_ids()
        .map(|v| {
            (
                lifted.complex().name(v).to_string(),
                lifted.complex().name(lifted.apply(v)).to_string(),
            )
        })
        .collect();
    Involution::from_pairs(Arc::clone(sd_boundary), &pairs)
}

fn glue(
    m: &Arc<Complex>,
    boundary: &Arc<Complex>,
    a: &Involution,
    subdivision: Option<Subdivision>,
) -> Result<Doubling> {
    let boundary_names: BTreeSet<&str> = boundary.names().iter().map(|s| s.as_str()).collect();
    let used: BTreeSet<&str> = m.names().iter().map(|s| s.as_str()).collect();
    let tag = |name: &str, sign: char| -> String {
        let mut candidate = format!("{name}{sign}");
        while used.contains(candidate.as_str()) {
            candidate.push(sign);
        }
        candidate
    };

    let plus_name = |name: &str| -> String {
        if boundary_names.contains(name) {
            name.to_string()
        } else {
            tag(name, '+')
        }
    };
    let minus_name = |name: &str| -> String {
        if boundary_names.contains(name) {
            a.apply_name(name).expect("boundary vertex").to_string()
        } else {
            tag(name, '-')
        }
    };

    let mut facets: Vec<Vec<String>> = Vec::with_capacity(2 * m.facets().len());
    for facet in m.facets() {
        facets.push(
            facet
                .vertices()
                .iter()
                .map(|v| plus_name(m.name(*v)))
                .collect(),
        );
    }
    for facet in m.facets() {
        facets.push(
            facet
                .vertices()
                .iter()
                .map(|v| minus_name(m.name(*v)))
                .collect(),
        );
    }
    let double = Complex::from_named_facets(facets)?;
    if double.facets().len() != 2 * m.facets().len() {
        return Err(Error::Contract(
            "copies of the complex collide; boundary is not full".into(),
        ));
    }

    // Ã: v+ <-> v-, w -> A(w) on glued boundary vertices.
    let pairs: Vec<(String, String)> = m
        .vertex_ids()
        .map(|v| {
            let name = m.name(v);
            (plus_name(name), minus_name(name))
        })
        .collect();
    let involution = Involution::from_pairs(Arc::clone(&double), &pairs)?;
    if let Some(witness) = involution.freeness_witness() {
        return Err(Error::Contract(format!(
            "glued involution is unexpectedly not free: {witness}"
        )));
    }
    if !double.is_closed_pseudomanifold() {
        return Err(Error::Contract("double is unexpectedly not closed".into()));
    }

    let inclusion: Vec<VertexId> = m
        .vertex_ids()
        .map(|v| double.require_vertex(&plus_name(m.name(v))))
        .collect::<Result<_>>()?;
    let boundary_inclusion: Vec<VertexId> = boundary
        .vertex_ids()
        .map(|v| double.require_vertex(boundary.name(v)))
        .collect::<Result<_>>()?;

    Ok(Doubling {
        complex: double,
        involution,
        base: Arc::clone(m),
        base_boundary: Arc::clone(boundary),
        base_involution: a.clone(),
        subdivided: subdivision.is_some(),
        subdivision,
        inclusion,
        boundary_inclusion,
    })
}

/// Extends a boundary-antipodal labelling of the doubled base over the whole
/// double: the first copy keeps its labels, the second copy is negated. The
/// result is antipodal under the glued involution and inherits the absence
/// of complementary edges.
///
/// The labelling must live on [`Doubling::base`]; when the doubling
/// subdivided, lift the labelling through [`Doubling::subdivision`] first
/// (see `labels::lift_labelling`).
pub fn extend_labelling(labelling: &Labelling, doubling: &Doubling) -> Result<Labelling> {
    if !Arc::ptr_eq(labelling.complex(), &doubling.base)
        && !labelling.complex().same_structure(&doubling.base)
    {
        return Err(Error::Contract(
            "labelling does not live on the doubled base complex".into(),
        ));
    }
    let double = &doubling.complex;
    let mut values = vec![0i32; double.vertex_count()];
    for v in doubling.base.vertex_ids() {
        values[doubling.inclusion[v.index()].index()] = labelling.value(v);
    }
    for v in doubling.base.vertex_ids() {
        let plus = doubling.inclusion[v.index()];
        let minus = doubling.involution.apply(plus);
        if values[minus.index()] == 0 {
            values[minus.index()] = -labelling.value(v);
        } else if values[minus.index()] != -labelling.value(v) {
            // A glued boundary vertex whose partner label disagrees: the
            // input was not antipodal on the boundary.
            return Err(Error::LabellingNotAntipodal(
                doubling.base.name(v).to_string(),
            ));
        }
    }
    Labelling::new(Arc::clone(double), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn square_disk() -> (Arc<Complex>, Involution) {
        // Two triangles sharing the diagonal 1-3; boundary is the 4-gon.
        let c = Complex::from_named_facets(vec![vec!["1", "2", "3"], vec!["1", "3", "4"]])
            .unwrap();
        let b = c.boundary_complex().unwrap();
        let a =
            Involution::from_pairs(Arc::clone(&b), &[("1", "3"), ("2", "4")]).unwrap();
        (c, a)
    }

    #[test]
    fn triangle_boundary_has_no_free_involution() {
        let c = Complex::from_named_facets(vec![vec!["1", "2", "3"]]).unwrap();
        let b = c.boundary_complex().unwrap();
        // The only involutions of a 3-cycle fix a vertex.
        let a = Involution::from_pairs(Arc::clone(&b), &[("1", "2"), ("3", "3")]).unwrap();
        let err = double(&c, &a).unwrap_err();
        assert!(matches!(err, Error::BoundaryInvolutionNotFree(_)));
    }

    #[test]
    fn square_disk_doubles_to_a_sphere_after_subdivision() {
        let (c, a) = square_disk();
        let d = double(&c, &a).unwrap();
        assert!(d.subdivided, "the diagonal chord forces a subdivision");
        assert_eq!(d.complex.euler_characteristic(), 2);
        assert!(d.complex.is_closed_pseudomanifold());
        assert!(d.complex.manifold_check().is_strongly_connected);
        assert!(d.involution.is_free());
        assert_eq!(d.complex.facets().len(), 2 * d.base.facets().len());
    }

    #[test]
    fn fan_disk_doubles_exactly() {
        for k in 2..6 {
            let (c, a) = generators::disk(k);
            let d = double(&c, &a).unwrap();
            assert!(!d.subdivided, "fan disks have full boundary");
            assert_eq!(d.complex.euler_characteristic(), 2);
            assert!(d.complex.is_closed_pseudomanifold());
            assert!(d.involution.is_free());
            assert_eq!(d.complex.facets().len(), 2 * c.facets().len());
        }
    }

    #[test]
    fn euler_characteristic_identity_holds() {
        // χ(M̃) = 2χ(M) − χ(∂M) for every doubled base.
        let (c, a) = square_disk();
        let d = double(&c, &a).unwrap();
        let chi_base = d.base.euler_characteristic();
        let chi_boundary = d.base_boundary.euler_characteristic();
        assert_eq!(d.complex.euler_characteristic(), 2 * chi_base - chi_boundary);
    }

    #[test]
    fn doubled_involution_restricts_to_boundary_involution() {
        let (c, a) = generators::disk(3);
        let d = double(&c, &a).unwrap();
        for v in d.base_boundary.vertex_ids() {
            let in_double = d.boundary_inclusion[v.index()];
            let image = d.involution.apply(in_double);
            let expected = d.boundary_inclusion[d.base_involution.apply(v).index()];
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn inclusion_is_injective_and_name_faithful() {
        let (c, a) = generators::disk(2);
        let d = double(&c, &a).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for v in d.base.vertex_ids() {
            assert!(seen.insert(d.inclusion[v.index()]));
        }
        assert_eq!(seen.len(), d.base.vertex_count());
    }

    #[test]
    fn closed_input_is_rejected() {
        let (c, a_full) = generators::crosspolytope_sphere(2);
        let err = double(&c, &a_full).unwrap_err();
        assert!(matches!(err, Error::NotManifoldWithBoundary));
    }

    #[test]
    fn path_doubles_to_a_cycle() {
        let c =
            Complex::from_named_facets(vec![vec!["1", "2"], vec!["2", "3"]]).unwrap();
        let b = c.boundary_complex().unwrap();
        let a = Involution::from_pairs(Arc::clone(&b), &[("1", "3")]).unwrap();
        let d = double(&c, &a).unwrap();
        assert_eq!(d.complex.euler_characteristic(), 0);
        assert!(d.complex.is_closed_pseudomanifold());
        assert_eq!(d.complex.facets().len(), 4);
    }
}
