//! Canonical test objects: crosspolytope spheres, a worked 4×4 grid fixture,
//! fan disks, the punctured torus and its genus-2 double, plus seeded
//! labelling generators. Everything is deterministic for fixed parameters
//! and seeds.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, VertexId};
use crate::doubling::{double, Doubling};
use crate::error::Error;
use crate::involution::Involution;
use crate::labels::Labelling;
use crate::Result;

/// Planar coordinates per vertex name, used by the SVG renderer.
pub type Layout = BTreeMap<String, (f64, f64)>;

/// Boundary complex of the (d+1)-crosspolytope: vertices `±1, …, ±(d+1)`
/// named by their signed axis, facets all `2^(d+1)` sign patterns, with the
/// antipodal involution `i ↔ -i`.
pub fn crosspolytope_sphere(d: usize) -> (Arc<Complex>, Involution) {
    let n = d + 1;
    let mut facets = Vec::with_capacity(1 << n);
    for bits in 0u32..(1 << n) {
        facets.push(
            (1..=n as i32)
                .map(|i| {
                    if bits >> (i - 1) & 1 == 0 {
                        i.to_string()
                    } else {
                        (-i).to_string()
                    }
                })
                .collect::<Vec<_>>(),
        );
    }
    let complex = Complex::from_named_facets(facets).expect("crosspolytope facets are valid");
    let pairs: Vec<(String, String)> = (1..=n as i32)
        .map(|i| (i.to_string(), (-i).to_string()))
        .collect();
    let involution =
        Involution::from_pairs(Arc::clone(&complex), &pairs).expect("antipodal map is valid");
    (complex, involution)
}

/// Fixed drawing coordinates for the low-dimensional crosspolytope spheres:
/// a square for d = 1, a Schlegel-style diagram for the octahedron.
pub fn crosspolytope_layout(d: usize) -> Option<Layout> {
    let mut layout = Layout::new();
    match d {
        1 => {
            layout.insert("1".into(), (100.0, 0.0));
            layout.insert("2".into(), (0.0, 100.0));
            layout.insert("-1".into(), (-100.0, 0.0));
            layout.insert("-2".into(), (0.0, -100.0));
            Some(layout)
        }
        2 => {
            // Outer triangle 1,2,3; inner (projected) triangle -1,-2,-3
            // placed opposite their antipodes.
            for (name, angle_deg, radius) in [
                ("1", 90.0, 200.0),
                ("2", 210.0, 200.0),
                ("3", 330.0, 200.0),
                ("-1", 270.0, 90.0),
                ("-2", 30.0, 90.0),
                ("-3", 150.0, 90.0),
            ] {
                let angle = (angle_deg as f64).to_radians();
                layout.insert(name.into(), (radius * angle.cos(), radius * angle.sin()));
            }
            Some(layout)
        }
        _ => None,
    }
}

/// The worked grid example: a 4×4 vertex grid, every cell split along its
/// bottom-left-to-top-right diagonal, the committed labelling, and the
/// central symmetry of the boundary 12-gon.
pub struct Fig2 {
    pub complex: Arc<Complex>,
    /// Central symmetry on the boundary complex.
    pub involution: Involution,
    pub labelling: Labelling,
    pub layout: Layout,
}

/// Vertex `v{c}{r}` sits at grid column `c`, row `r` (bottom-to-top).
/// Column labels bottom-to-top: `(2,1,3,-1)`, `(3,3,1,2)`, `(-2,-1,-2,-3)`,
/// `(1,-3,-1,-2)`. The labelling is antipodal on the boundary and has no
/// complementary edges.
pub fn fig2_grid() -> Fig2 {
    const LABELS: [[i32; 4]; 4] = [
        [2, 1, 3, -1],
        [3, 3, 1, 2],
        [-2, -1, -2, -3],
        [1, -3, -1, -2],
    ];
    let name = |c: usize, r: usize| format!("v{c}{r}");
    let mut facets = Vec::with_capacity(18);
    for c in 0..3 {
        for r in 0..3 {
            // Cell corners: BL, BR, TR, TL; diagonal BL-TR.
            facets.push(vec![name(c, r), name(c + 1, r), name(c + 1, r + 1)]);
            facets.push(vec![name(c, r), name(c + 1, r + 1), name(c, r + 1)]);
        }
    }
    let complex = Complex::from_named_facets(facets).expect("grid facets are valid");
    let boundary = complex.boundary_complex().expect("grid has a boundary");
    let pairs: Vec<(String, String)> = (0..4)
        .flat_map(|c| (0..4).map(move |r| (c, r)))
        .filter(|(c, r)| *c == 0 || *c == 3 || *r == 0 || *r == 3)
        .map(|(c, r)| (name(c, r), name(3 - c, 3 - r)))
        .collect();
    let involution = Involution::from_pairs(Arc::clone(&boundary), &pairs)
        .expect("central symmetry is simplicial on the boundary");
    let label_pairs: Vec<(String, i32)> = (0..4)
        .flat_map(|c| (0..4).map(move |r| (name(c, r), LABELS[c][r])))
        .collect();
    let labelling =
        Labelling::from_pairs(Arc::clone(&complex), &label_pairs).expect("labels are nonzero");
    let mut layout = Layout::new();
    for c in 0..4 {
        for r in 0..4 {
            layout.insert(name(c, r), (c as f64 * 60.0, r as f64 * 40.0));
        }
    }
    Fig2 {
        complex,
        involution,
        labelling,
        layout,
    }
}

/// Fan-triangulated 2k-gon disk: boundary `b0..b{2k-1}` around a hub `c`,
/// with the free rotation-by-k involution on the boundary circle. The
/// boundary is a full subcomplex, so the double of a disk never needs a
/// subdivision step.
pub fn disk(k: usize) -> (Arc<Complex>, Involution) {
    assert!(k >= 2, "disk needs a 2k-gon boundary with k >= 2");
    let n = 2 * k;
    let facets: Vec<Vec<String>> = (0..n)
        .map(|i| vec!["c".to_string(), format!("b{i}"), format!("b{}", (i + 1) % n)])
        .collect();
    let complex = Complex::from_named_facets(facets).expect("fan facets are valid");
    let boundary = complex.boundary_complex().expect("disk has a boundary");
    let pairs: Vec<(String, String)> = (0..n)
        .map(|i| (format!("b{i}"), format!("b{}", (i + k) % n)))
        .collect();
    let involution = Involution::from_pairs(Arc::clone(&boundary), &pairs)
        .expect("rotation by k is simplicial");
    (complex, involution)
}

pub fn disk_layout(k: usize) -> Layout {
    let n = 2 * k;
    let mut layout = Layout::new();
    layout.insert("c".into(), (0.0, 0.0));
    for i in 0..n {
        let angle = std::f64::consts::TAU * i as f64 / n as f64;
        layout.insert(format!("b{i}"), (150.0 * angle.cos(), 150.0 * angle.sin()));
    }
    layout
}

/// A 4×4 grid torus with one cell's two triangles removed. The hole is a
/// 4-gon (the removed cell's rim; its diagonal disappears with the facets),
/// carrying the free rotation-by-2 involution. χ = −1, and the boundary is
/// full, so doubling is exact.
pub fn punctured_torus() -> (Arc<Complex>, Involution) {
    let name = |i: usize, j: usize| format!("t{}{}", i % 4, j % 4);
    let mut facets = Vec::with_capacity(30);
    for i in 0..4 {
        for j in 0..4 {
            if i == 0 && j == 0 {
                continue; // the puncture
            }
            facets.push(vec![name(i, j), name(i + 1, j), name(i + 1, j + 1)]);
            facets.push(vec![name(i, j), name(i + 1, j + 1), name(i, j + 1)]);
        }
    }
    let complex = Complex::from_named_facets(facets).expect("torus facets are valid");
    let boundary = complex.boundary_complex().expect("puncture has a rim");
    let pairs = [
        (name(0, 0), name(1, 1)),
        (name(1, 0), name(0, 1)),
    ];
    let involution = Involution::from_pairs(Arc::clone(&boundary), &pairs)
        .expect("rim rotation is simplicial");
    (complex, involution)
}

/// Closed genus-2 surface with a free involution, built by doubling the
/// punctured torus across its rim.
pub fn genus2_surface() -> (Arc<Complex>, Involution) {
    let d = genus2_doubling();
    (d.complex, d.involution)
}

/// The full doubling record behind [`genus2_surface`], for tests that need
/// the inclusion maps.
pub fn genus2_doubling() -> Doubling {
    let (torus, rim) = punctured_torus();
    double(&torus, &rim).expect("punctured torus doubles cleanly")
}

/// Seeded antipodal labelling: one uniform draw from `Π_n` per vertex
/// orbit; the partner vertex gets the negated label.
pub fn random_antipodal_labelling(
    a: &Involution,
    n: u32,
    seed: u64,
) -> Result<Labelling> {
    if let Some(witness) = a.freeness_witness() {
        return Err(Error::InvolutionNotFree(witness));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let complex = a.complex();
    let mut values = vec![0i32; complex.vertex_count()];
    for (rep, partner) in a.orbits() {
        let magnitude = rng.random_range(1..=n as i32);
        let label = if rng.random_bool(0.5) { magnitude } else { -magnitude };
        values[rep.index()] = label;
        values[partner.index()] = -label;
    }
    Labelling::new(Arc::clone(complex), values)
}

/// Outcome of [`search_complementary_free`].
pub enum SearchOutcome {
    Found(Labelling, SearchStats),
    Exhausted(SearchStats),
}

#[derive(Clone, Copy, Debug)]
pub struct SearchStats {
    /// Candidate assignments tried.
    pub steps: u64,
    pub budget: u64,
}

/// Backtracking search for an antipodal labelling into `Π_n` without
/// complementary edges: orbits are labelled one at a time in a seeded
/// candidate order, rejecting a candidate as soon as it closes a
/// complementary edge. Exceeding the step budget is reported, not an error.
pub fn search_complementary_free(
    a: &Involution,
    n: u32,
    seed: u64,
    budget: u64,
) -> Result<SearchOutcome> {
    if let Some(witness) = a.freeness_witness() {
        return Err(Error::InvolutionNotFree(witness));
    }
    let complex = a.complex();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orbits = a.orbits();

    let mut neighbours: Vec<Vec<VertexId>> = vec![Vec::new(); complex.vertex_count()];
    for edge in complex.edges() {
        let vs = edge.vertices();
        neighbours[vs[0].index()].push(vs[1]);
        neighbours[vs[1].index()].push(vs[0]);
    }

    let alphabet: Vec<i32> = (1..=n as i32).flat_map(|i| [i, -i]).collect();
    let candidate_orders: Vec<Vec<i32>> = orbits
        .iter()
        .map(|_| {
            let mut order = alphabet.clone();
            order.shuffle(&mut rng);
            order
        })
        .collect();

    let mut values: Vec<i32> = vec![0; complex.vertex_count()];
    let mut steps = 0u64;

    fn conflicts(values: &[i32], neighbours: &[Vec<VertexId>], v: VertexId, label: i32) -> bool {
        neighbours[v.index()]
            .iter()
            .any(|w| values[w.index()] == -label)
    }

    fn assign(
        idx: usize,
        orbits: &[(VertexId, VertexId)],
        orders: &[Vec<i32>],
        neighbours: &[Vec<VertexId>],
        values: &mut Vec<i32>,
        steps: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if idx == orbits.len() {
            return Some(true);
        }
        let (rep, partner) = orbits[idx];
        for &label in &orders[idx] {
            *steps += 1;
            if *steps > budget {
                return None;
            }
            if conflicts(values, neighbours, rep, label)
                || conflicts(values, neighbours, partner, -label)
            {
                continue;
            }
            values[rep.index()] = label;
            values[partner.index()] = -label;
            match assign(idx + 1, orbits, orders, neighbours, values, steps, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            values[rep.index()] = 0;
            values[partner.index()] = 0;
        }
        Some(false)
    }

    let outcome = assign(
        0,
        &orbits,
        &candidate_orders,
        &neighbours,
        &mut values,
        &mut steps,
        budget,
    );
    let stats = SearchStats { steps, budget };
    match outcome {
        Some(true) => Ok(SearchOutcome::Found(
            Labelling::new(Arc::clone(complex), values)?,
            stats,
        )),
        _ => Ok(SearchOutcome::Exhausted(stats)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels;

    #[test]
    fn crosspolytope_counts() {
        let (square, a1) = crosspolytope_sphere(1);
        assert_eq!(square.vertex_count(), 4);
        assert_eq!(square.facets().len(), 4);
        assert_eq!(square.euler_characteristic(), 0);
        assert!(a1.is_free());

        let (oct, a2) = crosspolytope_sphere(2);
        assert_eq!(oct.vertex_count(), 6);
        assert_eq!(oct.facets().len(), 8);
        assert_eq!(oct.euler_characteristic(), 2);
        assert!(a2.is_free());

        let (cell16, a3) = crosspolytope_sphere(3);
        assert_eq!(cell16.vertex_count(), 8);
        assert_eq!(cell16.facets().len(), 16);
        assert_eq!(cell16.euler_characteristic(), 0);
        assert!(a3.is_free());
        assert!(cell16.is_closed_pseudomanifold());
    }

    #[test]
    fn fig2_grid_shape() {
        let fig2 = fig2_grid();
        assert_eq!(fig2.complex.vertex_count(), 16);
        assert_eq!(fig2.complex.facets().len(), 18);
        let boundary = fig2.involution.complex();
        assert_eq!(boundary.vertex_count(), 12);
        assert_eq!(boundary.facets().len(), 12);
        assert!(fig2.involution.is_free());
    }

    #[test]
    fn fig2_is_boundary_antipodal_without_complementary_edges() {
        let fig2 = fig2_grid();
        assert!(labels::boundary_antipodal_witness(&fig2.labelling, &fig2.involution)
            .unwrap()
            .is_none());
        assert!(labels::complementary_edges(&fig2.labelling).is_empty());
    }

    #[test]
    fn disks_are_manifolds_with_free_boundary_involution() {
        for k in 2..6 {
            let (c, a) = disk(k);
            let report = c.manifold_check();
            assert!(report.is_pseudomanifold_with_boundary);
            assert_eq!(report.boundary_ridges.len(), 2 * k);
            assert!(a.is_free());
            assert_eq!(c.euler_characteristic(), 1);
        }
    }

    #[test]
    fn punctured_torus_shape() {
        let (c, a) = punctured_torus();
        assert_eq!(c.euler_characteristic(), -1);
        let report = c.manifold_check();
        assert!(report.is_pseudomanifold_with_boundary);
        assert!(report.is_strongly_connected);
        assert_eq!(report.boundary_ridges.len(), 4);
        assert!(a.is_free());
        assert_eq!(c.facets().len(), 30);
    }

    #[test]
    fn genus2_surface_shape() {
        let (c, a) = genus2_surface();
        assert_eq!(c.euler_characteristic(), -2);
        assert!(c.is_closed_pseudomanifold());
        assert!(c.manifold_check().is_strongly_connected);
        assert!(a.is_free());
    }

    #[test]
    fn genus2_doubles_facet_count_exactly() {
        let (torus, _) = punctured_torus();
        let (genus2, _) = genus2_surface();
        assert_eq!(genus2.facets().len(), 2 * torus.facets().len());
    }

    #[test]
    fn random_labelling_is_antipodal_and_seed_stable() {
        let (_, a) = crosspolytope_sphere(2);
        let l1 = random_antipodal_labelling(&a, 3, 17).unwrap();
        let l2 = random_antipodal_labelling(&a, 3, 17).unwrap();
        assert_eq!(l1.values(), l2.values());
        assert!(labels::is_antipodal_labelling(&l1, &a).unwrap());
        let l3 = random_antipodal_labelling(&a, 3, 18).unwrap();
        // Different seeds disagree somewhere for this complex and alphabet.
        assert_ne!(l1.values(), l3.values());
    }

    #[test]
    fn search_finds_labelling_on_octahedron() {
        let (_, a) = crosspolytope_sphere(2);
        match search_complementary_free(&a, 3, 1, 10_000).unwrap() {
            SearchOutcome::Found(l, _) => {
                assert!(labels::complementary_edges(&l).is_empty());
                assert!(labels::is_antipodal_labelling(&l, &a).unwrap());
            }
            SearchOutcome::Exhausted(stats) => {
                panic!("search failed after {} steps", stats.steps)
            }
        }
    }

    #[test]
    fn search_with_too_small_alphabet_fails() {
        // n = d: a complementary edge is unavoidable, so the search must
        // exhaust. Small enough to enumerate completely within the budget.
        let (_, a) = crosspolytope_sphere(2);
        match search_complementary_free(&a, 2, 5, 1_000_000).unwrap() {
            SearchOutcome::Found(l, _) => panic!(
                "impossible labelling found: {:?}",
                l.values()
            ),
            SearchOutcome::Exhausted(stats) => {
                assert!(stats.steps < 1_000_000, "search exhausted the space");
            }
        }
    }

    #[test]
    fn exhaustive_small_cases_have_no_complementary_free_labelling_for_n_eq_d() {
        // All antipodal labellings of the square (d=1, n=1) and the
        // octahedron (d=2, n=2) have a complementary edge.
        for (d, n) in [(1usize, 1u32), (2, 2)] {
            let (c, a) = crosspolytope_sphere(d);
            let orbits = a.orbits();
            let alphabet: Vec<i32> = (1..=n as i32).flat_map(|i| [i, -i]).collect();
            let mut assignment = vec![0usize; orbits.len()];
            loop {
                let mut values = vec![0i32; c.vertex_count()];
                for (slot, (rep, partner)) in assignment.iter().zip(&orbits) {
                    values[rep.index()] = alphabet[*slot];
                    values[partner.index()] = -alphabet[*slot];
                }
                let l = Labelling::new(Arc::clone(&c), values).unwrap();
                assert!(
                    !labels::complementary_edges(&l).is_empty(),
                    "complementary-free labelling exists for d={d}, n={n}"
                );
                // Advance the odometer.
                let mut i = 0;
                loop {
                    if i == assignment.len() {
                        break;
                    }
                    assignment[i] += 1;
                    if assignment[i] < alphabet.len() {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
                if i == assignment.len() {
                    break;
                }
            }
        }
    }

    #[test]
    fn orbit_count_matches_half_the_vertices() {
        let (c, a) = crosspolytope_sphere(3);
        assert_eq!(a.orbits().len(), c.vertex_count() / 2);
    }
}
