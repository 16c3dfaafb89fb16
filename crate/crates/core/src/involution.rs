//! Simplicial involutions of a complex and their freeness.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{Complex, Simplex, Subdivision, VertexId};
use crate::error::Error;
use crate::Result;

/// An order-2 simplicial vertex permutation `A` of a complex.
///
/// Construction validates `A∘A = id` and that every facet maps to a facet
/// (which makes `A` simplicial on all faces). Freeness — no fixed vertex and
/// no setwise-fixed simplex — is a separate, reported property: the identity
/// permutation is a valid involution that simply fails [`Involution::is_free`].
#[derive(Clone, Debug)]
pub struct Involution {
    complex: Arc<Complex>,
    map: Vec<VertexId>,
}

/// Outcome of a freeness check, with witnesses on failure.
#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub is_free: bool,
    pub fixed_vertices: Vec<VertexId>,
    pub fixed_simplices: Vec<Simplex>,
}

impl Involution {
    /// Builds an involution from a dense vertex map (index = source vertex).
    pub fn from_vertex_map(complex: Arc<Complex>, map: Vec<VertexId>) -> Result<Involution> {
        if map.len() != complex.vertex_count() {
            return Err(Error::Contract(format!(
                "vertex map covers {} of {} vertices",
                map.len(),
                complex.vertex_count()
            )));
        }
        for v in complex.vertex_ids() {
            let image = map[v.index()];
            if image.index() >= map.len() {
                return Err(Error::Contract(format!(
                    "vertex map image {} out of range",
                    image
                )));
            }
            let back = map[image.index()];
            if back != v {
                return Err(Error::NotOrderTwo(
                    complex.name(v).to_string(),
                    complex.name(back).to_string(),
                ));
            }
        }
        let inv = Involution { complex, map };
        for facet in inv.complex.facets() {
            let image = inv.apply_simplex(facet);
            if inv.complex.facet_index(&image).is_none() {
                return Err(Error::NotSimplicial(inv.complex.simplex_names(facet)));
            }
        }
        Ok(inv)
    }

    /// Builds an involution from `(v, A(v))` name pairs; both directions are
    /// implied. Every vertex must be assigned exactly once.
    pub fn from_pairs<S: AsRef<str>>(
        complex: Arc<Complex>,
        pairs: &[(S, S)],
    ) -> Result<Involution> {
        let mut map: Vec<Option<VertexId>> = vec![None; complex.vertex_count()];
        let mut set = |v: VertexId, w: VertexId| -> Result<()> {
            match map[v.index()] {
                None => {
                    map[v.index()] = Some(w);
                    Ok(())
                }
                Some(old) if old == w => Ok(()),
                Some(old) => Err(Error::Contract(format!(
                    "conflicting images for `{}`: `{}` and `{}`",
                    complex.name(v),
                    complex.name(old),
                    complex.name(w)
                ))),
            }
        };
        for (a, b) in pairs {
            let v = complex.require_vertex(a.as_ref())?;
            let w = complex.require_vertex(b.as_ref())?;
            set(v, w)?;
            set(w, v)?;
        }
        let mut dense = Vec::with_capacity(map.len());
        for (i, slot) in map.iter().enumerate() {
            match slot {
                Some(w) => dense.push(*w),
                None => {
                    return Err(Error::Contract(format!(
                        "vertex `{}` has no image",
                        complex.name(VertexId(i as u32))
                    )))
                }
            }
        }
        Involution::from_vertex_map(complex, dense)
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[v.index()]
    }

    /// Image of a vertex given by name, if present.
    pub fn apply_name(&self, name: &str) -> Option<&str> {
        let v = self.complex.vertex_id(name)?;
        Some(self.complex.name(self.apply(v)))
    }

    pub fn apply_simplex(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.apply(*v)).collect())
    }

    /// Vertex orbits as `(rep, partner)` with `rep <= partner`; fixed
    /// vertices appear as `(v, v)`.
    pub fn orbits(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for v in self.complex.vertex_ids() {
            let w = self.apply(v);
            if v <= w {
                out.push((v, w));
            }
        }
        out
    }

    /// Checks freeness over every face of the complex: no fixed vertex, no
    /// setwise-fixed simplex. A simplex can be setwise fixed without fixed
    /// vertices (an edge swapped end-for-end), so faces of all dimensions
    /// are examined, not just facets.
    pub fn freeness(&self) -> FreenessReport {
        let mut fixed_vertices = Vec::new();
        for v in self.complex.vertex_ids() {
            if self.apply(v) == v {
                fixed_vertices.push(v);
            }
        }
        let mut fixed_simplices = Vec::new();
        for dim_faces in self.complex.faces().iter().skip(1) {
            for face in dim_faces {
                if &self.apply_simplex(face) == face {
                    fixed_simplices.push(face.clone());
                }
            }
        }
        FreenessReport {
            is_free: fixed_vertices.is_empty() && fixed_simplices.is_empty(),
            fixed_vertices,
            fixed_simplices,
        }
    }

    pub fn is_free(&self) -> bool {
        self.freeness().is_free
    }

    /// Short human-readable witness of non-freeness, for error messages.
    pub fn freeness_witness(&self) -> Option<String> {
        let report = self.freeness();
        if report.is_free {
            return None;
        }
        if let Some(v) = report.fixed_vertices.first() {
            return Some(format!("fixed vertex `{}`", self.complex.name(*v)));
        }
        report
            .fixed_simplices
            .first()
            .map(|s| format!("setwise-fixed simplex {{{}}}", self.complex.simplex_names(s)))
    }
}

/// Lifts an involution of the parent to its barycentric subdivision via
/// `b(σ) ↦ b(A(σ))`. The lift of a free involution is free.
pub fn lift_involution(a: &Involution, sd: &Subdivision) -> Result<Involution> {
    if !Arc::ptr_eq(a.complex(), &sd.parent) && !a.complex().same_structure(&sd.parent) {
        return Err(Error::Contract(
            "involution and subdivision refer to different complexes".into(),
        ));
    }
    let mut map: Vec<VertexId> = vec![VertexId(0); sd.complex.vertex_count()];
    let assignments: HashMap<VertexId, VertexId> = sd
        .faces()
        .map(|(face, vertex)| {
            let image_face = a.apply_simplex(face);
            let image_vertex = sd
                .vertex_of_face(&image_face)
                .expect("image of a face is a face");
            (vertex, image_vertex)
        })
        .collect();
    for (v, w) in assignments {
        map[v.index()] = w;
    }
    Involution::from_vertex_map(Arc::clone(&sd.complex), map)
}
