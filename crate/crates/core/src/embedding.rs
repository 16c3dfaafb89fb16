//! Vertex embedding of a complex into a crosspolytope boundary, centrally
//! symmetric on a chosen subcomplex.
//!
//! Paired vertices of the symmetric subcomplex `Y` go to `±e_k` for
//! `k = 1..m`; the remaining vertices go to distinct `e_k` with `k > m`, so
//! every vertex outside `Y` has positive coordinate sum beyond the first `m`
//! axes. Coordinates are exact integers.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::{Complex, VertexId};
use crate::error::Error;
use crate::involution::Involution;
use crate::Result;

/// Coordinate assignment `V(X) → {±e_1, …, ±e_n}`.
#[derive(Debug)]
pub struct CrosspolytopeEmbedding {
    complex: Arc<Complex>,
    /// Per vertex: 1-based axis and sign.
    assignment: Vec<(usize, i8)>,
    /// Number of symmetric vertex pairs (axes `1..=m` carry them).
    pub pairs: usize,
    /// Total ambient dimension.
    pub dim: usize,
}

impl CrosspolytopeEmbedding {
    /// Axis (1-based) and sign of a vertex image.
    pub fn axis_sign(&self, v: VertexId) -> (usize, i8) {
        self.assignment[v.index()]
    }

    /// Dense integer coordinate vector of a vertex image.
    pub fn vector(&self, v: VertexId) -> Vec<i64> {
        let (axis, sign) = self.assignment[v.index()];
        let mut out = vec![0i64; self.dim];
        out[axis - 1] = sign as i64;
        out
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }
}

/// Builds the embedding for `x` with symmetric subcomplex `Y = a.complex()`.
/// `a` must be free on `Y`, `Y`'s vertices and facets must belong to `x`,
/// and no simplex of `x` may contain a pair `{y, A(y)}` — such a simplex
/// would map onto a crosspolytope diagonal. Pass `None` to embed with no
/// symmetric part: every vertex then gets its own positive axis.
pub fn crosspolytope_embedding(
    x: &Arc<Complex>,
    a: Option<&Involution>,
) -> Result<CrosspolytopeEmbedding> {
    let mut assignment: Vec<Option<(usize, i8)>> = vec![None; x.vertex_count()];
    let mut pairs = 0usize;

    if let Some(a) = a {
        let y = a.complex();
        for facet in y.facets() {
            let ids: Vec<VertexId> = facet
                .vertices()
                .iter()
                .map(|v| x.require_vertex(y.name(*v)))
                .collect::<Result<_>>()?;
            if !x.has_simplex(&ids) {
                return Err(Error::Contract(format!(
                    "subcomplex facet {{{}}} is not a simplex of the ambient complex",
                    y.simplex_names(facet)
                )));
            }
        }
        if let Some(witness) = a.freeness_witness() {
            return Err(Error::InvolutionNotFree(witness));
        }
        // No simplex of X may carry an orbit pair; checking facets suffices.
        for facet in x.facets() {
            let names: BTreeSet<&str> =
                facet.vertices().iter().map(|v| x.name(*v)).collect();
            for name in &names {
                if let Some(image) = a.apply_name(name) {
                    if image != *name && names.contains(image) {
                        return Err(Error::AntipodalPairInSimplex(x.simplex_names(facet)));
                    }
                }
            }
        }
        for (rep, partner) in a.orbits() {
            pairs += 1;
            let rep_in_x = x.require_vertex(y.name(rep))?;
            let partner_in_x = x.require_vertex(y.name(partner))?;
            assignment[rep_in_x.index()] = Some((pairs, 1));
            assignment[partner_in_x.index()] = Some((pairs, -1));
        }
    }

    let mut next_axis = pairs;
    for v in x.vertex_ids() {
        if assignment[v.index()].is_none() {
            next_axis += 1;
            assignment[v.index()] = Some((next_axis, 1));
        }
    }
    let embedding = CrosspolytopeEmbedding {
        complex: Arc::clone(x),
        assignment: assignment.into_iter().map(|slot| slot.unwrap()).collect(),
        pairs,
        dim: next_axis,
    };

    // Antipodality on Y and positivity outside it, by construction; verify.
    if let Some(a) = a {
        let y = a.complex();
        for v in y.vertex_ids() {
            let v_in_x = x.require_vertex(y.name(v))?;
            let image_in_x = x.require_vertex(y.name(a.apply(v)))?;
            let (axis, sign) = embedding.axis_sign(v_in_x);
            let (axis2, sign2) = embedding.axis_sign(image_in_x);
            if axis != axis2 || sign != -sign2 {
                return Err(Error::Contract(
                    "embedding violates F(A(y)) = -F(y)".into(),
                ));
            }
        }
    }
    for v in x.vertex_ids() {
        let (axis, sign) = embedding.axis_sign(v);
        let in_y = axis <= pairs;
        if !in_y && (sign != 1 || axis <= pairs) {
            return Err(Error::Contract(
                "embedding violates positivity outside the symmetric part".into(),
            ));
        }
    }
    Ok(embedding)
}
