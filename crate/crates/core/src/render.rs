//! Deterministic SVG drawings of complexes of dimension at most 2, with
//! optional vertex labels and highlighted complementary edges.

use std::collections::BTreeMap;

use crate::complex::{Complex, VertexId};
use crate::error::Error;
use crate::generators::Layout;
use crate::labels::{complementary_edges, Labelling};
use crate::Result;

type Positions = BTreeMap<VertexId, (f64, f64)>;

/// Renders the complex. Uses the supplied layout when it covers every
/// vertex; otherwise falls back to a circle-plus-averaging embedding
/// (boundary or a peeled facet on the rim, interior vertices iteratively
/// relaxed). The fallback is deterministic but only pretty for planar-ish
/// inputs.
pub fn render_svg(
    complex: &Complex,
    layout: Option<&Layout>,
    labelling: Option<&Labelling>,
) -> Result<String> {
    if complex.dim() > 2 {
        return Err(Error::DimensionTooHigh(complex.dim()));
    }
    if complex.is_empty() {
        return Err(Error::EmptyInput);
    }
    let positions = match layout {
        Some(layout) if complex.names().iter().all(|n| layout.contains_key(n)) => complex
            .vertex_ids()
            .map(|v| (v, layout[complex.name(v)]))
            .collect(),
        _ => fallback_positions(complex),
    };
    Ok(draw(complex, &positions, labelling))
}

fn fallback_positions(complex: &Complex) -> Positions {
    let n = complex.vertex_count();
    if complex.dim() == 0 || n <= 2 {
        return complex
            .vertex_ids()
            .enumerate()
            .map(|(i, v)| (v, (i as f64 * 60.0, 0.0)))
            .collect();
    }
    // Rim: boundary vertices when there is a boundary, else one peeled
    // facet. Everything else relaxes to the average of its neighbours.
    let report = complex.manifold_check();
    let rim: Vec<VertexId> = if !report.boundary_ridges.is_empty() {
        let mut rim: Vec<VertexId> = report
            .boundary_ridges
            .iter()
            .flat_map(|r| r.vertices().iter().copied())
            .collect();
        rim.sort_unstable();
        rim.dedup();
        rim
    } else {
        complex.facets()[complex.facets().len() - 1]
            .vertices()
            .to_vec()
    };
    let mut positions: Positions = Positions::new();
    let rim_len = rim.len().max(1);
    for (i, v) in rim.iter().enumerate() {
        let angle = std::f64::consts::TAU * i as f64 / rim_len as f64;
        positions.insert(*v, (200.0 * angle.cos(), 200.0 * angle.sin()));
    }
    let mut coords: Vec<(f64, f64)> = complex
        .vertex_ids()
        .map(|v| *positions.get(&v).unwrap_or(&(0.0, 0.0)))
        .collect();
    let mut neighbours: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for edge in complex.edges() {
        let vs = edge.vertices();
        neighbours[vs[0].index()].push(vs[1]);
        neighbours[vs[1].index()].push(vs[0]);
    }
    for _ in 0..300 {
        for v in complex.vertex_ids() {
            if positions.contains_key(&v) || neighbours[v.index()].is_empty() {
                continue;
            }
            let (mut x, mut y) = (0.0, 0.0);
            for w in &neighbours[v.index()] {
                x += coords[w.index()].0;
                y += coords[w.index()].1;
            }
            let k = neighbours[v.index()].len() as f64;
            coords[v.index()] = (x / k, y / k);
        }
    }
    complex
        .vertex_ids()
        .map(|v| (v, coords[v.index()]))
        .collect()
}

fn draw(complex: &Complex, positions: &Positions, labelling: Option<&Labelling>) -> String {
    let xs: Vec<f64> = positions.values().map(|p| p.0).collect();
    let ys: Vec<f64> = positions.values().map(|p| p.1).collect();
    let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let margin = 30.0;
    // SVG y grows downward; flip the vertical axis.
    let place = |v: VertexId| -> (f64, f64) {
        let (x, y) = positions[&v];
        (x - min_x + margin, (max_y - y) + margin)
    };
    let width = (max_x - min_x) + 2.0 * margin;
    let height = (max_y - min_y) + 2.0 * margin;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\" \
         font-family=\"sans-serif\" font-size=\"11\">\n"
    ));
    if complex.dim() == 2 {
        for facet in complex.facets() {
            let pts: Vec<String> = facet
                .vertices()
                .iter()
                .map(|v| {
                    let (x, y) = place(*v);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            out.push_str(&format!(
                "  <polygon points=\"{}\" fill=\"#dbeafe\" stroke=\"#64748b\" \
                 stroke-width=\"1\"/>\n",
                pts.join(" ")
            ));
        }
    }
    if complex.dim() >= 1 {
        for edge in complex.edges() {
            let vs = edge.vertices();
            let (x1, y1) = place(vs[0]);
            let (x2, y2) = place(vs[1]);
            out.push_str(&format!(
                "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
                 stroke=\"#334155\" stroke-width=\"1\"/>\n"
            ));
        }
    }
    if let Some(labelling) = labelling {
        for edge in complementary_edges(labelling) {
            let vs = edge.vertices();
            let (x1, y1) = place(vs[0]);
            let (x2, y2) = place(vs[1]);
            out.push_str(&format!(
                "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
                 stroke=\"#dc2626\" stroke-width=\"3\"/>\n"
            ));
        }
    }
    for v in complex.vertex_ids() {
        let (x, y) = place(v);
        out.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#0f172a\"/>\n"
        ));
        let text = match labelling {
            Some(labelling) => format!("{:+}", labelling.value(v)),
            None => complex.name(v).to_string(),
        };
        let fill = match labelling {
            Some(labelling) if labelling.value(v) < 0 => "#dc2626",
            Some(_) => "#1d4ed8",
            None => "#0f172a",
        };
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" fill=\"{fill}\">{}</text>\n",
            x + 5.0,
            y - 5.0,
            xml_escape(&text)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
