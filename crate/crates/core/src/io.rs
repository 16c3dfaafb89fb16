//! Text formats for complexes, involutions, labellings, vertex maps and
//! covering families. Parsers report errors with file and line; writers emit
//! a canonical form whose vertex names round-trip byte-exactly.
//!
//! Shared conventions: tokens are whitespace-separated, `#` starts a comment
//! that runs to end of line, vertex names may not contain whitespace or `#`.
//! A complex file may carry `# @layout <name> <x> <y>` directives with
//! drawing coordinates; other tools ignore them.

use std::sync::Arc;

use crate::complex::Complex;
use crate::cover::ClosedSet;
use crate::degree::SimplicialMap;
use crate::error::Error;
use crate::generators::Layout;
use crate::involution::Involution;
use crate::labels::Labelling;
use crate::Result;

/// A parsed complex file: the complex plus any layout directives.
#[derive(Debug)]
pub struct ComplexFile {
    pub complex: Arc<Complex>,
    pub layout: Layout,
}

/// Strips the comment tail, if any.
fn code(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Format:
/// ```text
/// dim 2
/// # @layout v0 0.0 1.5
/// v0 v1 v2
/// v0 v2 v3
/// ```
pub fn parse_complex(text: &str, file: &str) -> Result<ComplexFile> {
    let mut dim: Option<usize> = None;
    let mut facets: Vec<Vec<String>> = Vec::new();
    let mut layout_entries: Vec<(usize, String, f64, f64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix('#') {
            let rest = rest.trim_start();
            if let Some(spec) = rest.strip_prefix("@layout") {
                let tokens: Vec<&str> = spec.split_whitespace().collect();
                if tokens.len() != 3 {
                    return Err(Error::parse(file, lineno, "@layout needs: name x y"));
                }
                let x: f64 = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(file, lineno, "bad x coordinate"))?;
                let y: f64 = tokens[2]
                    .parse()
                    .map_err(|_| Error::parse(file, lineno, "bad y coordinate"))?;
                layout_entries.push((lineno, tokens[0].to_string(), x, y));
            }
            continue;
        }
        let tokens: Vec<&str> = code(line).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens[0] == "dim" {
            if dim.is_some() {
                return Err(Error::parse(file, lineno, "duplicate dim line"));
            }
            if tokens.len() != 2 {
                return Err(Error::parse(file, lineno, "dim needs one integer"));
            }
            dim = Some(
                tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(file, lineno, "bad dimension"))?,
            );
            continue;
        }
        let d = dim.ok_or_else(|| {
            Error::parse(file, lineno, "facet before the `dim D` header line")
        })?;
        if tokens.len() != d + 1 {
            return Err(Error::parse(
                file,
                lineno,
                format!("facet has {} vertices, expected {}", tokens.len(), d + 1),
            ));
        }
        facets.push(tokens.iter().map(|t| t.to_string()).collect());
    }
    if dim.is_none() {
        return Err(Error::parse(file, 1, "missing `dim D` header line"));
    }
    if facets.is_empty() {
        return Err(Error::parse(file, 1, "no facets"));
    }
    let complex = Complex::from_named_facets(facets)?;
    let mut layout = Layout::new();
    for (lineno, name, x, y) in layout_entries {
        if complex.vertex_id(&name).is_none() {
            return Err(Error::parse(
                file,
                lineno,
                format!("@layout names unknown vertex `{name}`"),
            ));
        }
        layout.insert(name, (x, y));
    }
    Ok(ComplexFile { complex, layout })
}

/// The written form is canonical in the vertex *names*: facets are emitted
/// name-sorted, so structurally equal complexes print identically no matter
/// how their vertices were interned.
pub fn write_complex(complex: &Complex, layout: Option<&Layout>) -> String {
    let mut out = format!("dim {}\n", complex.dim());
    if let Some(layout) = layout {
        for (name, (x, y)) in layout {
            out.push_str(&format!("# @layout {name} {x:.3} {y:.3}\n"));
        }
    }
    let mut facets: Vec<Vec<&str>> = complex
        .facets()
        .iter()
        .map(|f| {
            let mut names: Vec<&str> = f.vertices().iter().map(|v| complex.name(*v)).collect();
            names.sort_unstable();
            names
        })
        .collect();
    facets.sort_unstable();
    for facet in facets {
        out.push_str(&facet.join(" "));
        out.push('\n');
    }
    out
}

/// Format: one `v w` line per orbit, meaning `A(v) = w` and `A(w) = v`.
/// Every vertex of the complex must be assigned; fixed points are `v v`.
pub fn parse_involution(
    text: &str,
    file: &str,
    complex: &Arc<Complex>,
) -> Result<Involution> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens: Vec<&str> = code(line).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(file, lineno, "expected: v w"));
        }
        for name in &tokens {
            if complex.vertex_id(name).is_none() {
                return Err(Error::parse(
                    file,
                    lineno,
                    format!("unknown vertex `{name}`"),
                ));
            }
        }
        pairs.push((tokens[0].to_string(), tokens[1].to_string()));
    }
    Involution::from_pairs(Arc::clone(complex), &pairs)
}

pub fn write_involution(a: &Involution) -> String {
    let complex = a.complex();
    let mut lines: Vec<(String, String)> = a
        .orbits()
        .into_iter()
        .map(|(rep, partner)| {
            let mut pair = [complex.name(rep), complex.name(partner)];
            pair.sort_unstable();
            (pair[0].to_string(), pair[1].to_string())
        })
        .collect();
    lines.sort_unstable();
    lines
        .into_iter()
        .map(|(a, b)| format!("{a} {b}\n"))
        .collect()
}

/// Format: one `v k` line per vertex, `k` a signed nonzero integer.
pub fn parse_labelling(text: &str, file: &str, complex: &Arc<Complex>) -> Result<Labelling> {
    let mut pairs: Vec<(String, i32)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens: Vec<&str> = code(line).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(file, lineno, "expected: v k"));
        }
        if complex.vertex_id(tokens[0]).is_none() {
            return Err(Error::parse(
                file,
                lineno,
                format!("unknown vertex `{}`", tokens[0]),
            ));
        }
        let value: i32 = tokens[1]
            .parse()
            .map_err(|_| Error::parse(file, lineno, format!("bad label `{}`", tokens[1])))?;
        if value == 0 {
            return Err(Error::parse(file, lineno, "label 0 is not allowed"));
        }
        pairs.push((tokens[0].to_string(), value));
    }
    Labelling::from_pairs(Arc::clone(complex), &pairs)
}

pub fn write_labelling(labelling: &Labelling) -> String {
    let complex = labelling.complex();
    let mut lines: Vec<(String, i32)> = complex
        .vertex_ids()
        .map(|v| (complex.name(v).to_string(), labelling.value(v)))
        .collect();
    lines.sort_unstable();
    lines
        .into_iter()
        .map(|(name, value)| format!("{name} {value}\n"))
        .collect()
}

/// Format: one `v w` line per source vertex, `w` a vertex of the target.
pub fn parse_map(
    text: &str,
    file: &str,
    src: &Arc<Complex>,
    dst: &Arc<Complex>,
) -> Result<SimplicialMap> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens: Vec<&str> = code(line).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(file, lineno, "expected: v w"));
        }
        if src.vertex_id(tokens[0]).is_none() {
            return Err(Error::parse(
                file,
                lineno,
                format!("unknown source vertex `{}`", tokens[0]),
            ));
        }
        if dst.vertex_id(tokens[1]).is_none() {
            return Err(Error::parse(
                file,
                lineno,
                format!("unknown target vertex `{}`", tokens[1]),
            ));
        }
        pairs.push((tokens[0].to_string(), tokens[1].to_string()));
    }
    SimplicialMap::from_pairs(Arc::clone(src), Arc::clone(dst), &pairs)
}

pub fn write_map(f: &SimplicialMap) -> String {
    let mut lines: Vec<(String, String)> = f
        .src()
        .vertex_ids()
        .map(|v| (f.src().name(v).to_string(), f.dst().name(f.apply(v)).to_string()))
        .collect();
    lines.sort_unstable();
    lines
        .into_iter()
        .map(|(a, b)| format!("{a} {b}\n"))
        .collect()
}

/// A parsed cover file: named sets in declaration order, plus the declared
/// pairings.
#[derive(Debug)]
pub struct CoverFile {
    pub sets: Vec<ClosedSet>,
    pub pairs: Vec<(String, String)>,
}

impl CoverFile {
    pub fn set(&self, name: &str) -> Option<&ClosedSet> {
        self.sets.iter().find(|s| s.name == name)
    }
}

/// Format:
/// ```text
/// set A
/// v0 v1
/// v2
/// set B
/// v3
/// pair A B
/// ```
pub fn parse_cover(text: &str, file: &str, complex: &Arc<Complex>) -> Result<CoverFile> {
    let mut sets: Vec<(String, Vec<String>)> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens: Vec<&str> = code(line).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "set" => {
                if tokens.len() != 2 {
                    return Err(Error::parse(file, lineno, "expected: set NAME"));
                }
                if sets.iter().any(|(name, _)| name == tokens[1]) {
                    return Err(Error::parse(
                        file,
                        lineno,
                        format!("duplicate set `{}`", tokens[1]),
                    ));
                }
                sets.push((tokens[1].to_string(), Vec::new()));
            }
            "pair" => {
                if tokens.len() != 3 {
                    return Err(Error::parse(file, lineno, "expected: pair NAME1 NAME2"));
                }
                for name in &tokens[1..] {
                    if !sets.iter().any(|(set, _)| set == name) {
                        return Err(Error::parse(
                            file,
                            lineno,
                            format!("pair names unknown set `{name}`"),
                        ));
                    }
                }
                pairs.push((tokens[1].to_string(), tokens[2].to_string()));
            }
            _ => {
                let Some(current) = sets.last_mut() else {
                    return Err(Error::parse(
                        file,
                        lineno,
                        "vertex list before any `set NAME` line",
                    ));
                };
                for name in tokens {
                    if complex.vertex_id(name).is_none() {
                        return Err(Error::parse(
                            file,
                            lineno,
                            format!("unknown vertex `{name}`"),
                        ));
                    }
                    current.1.push(name.to_string());
                }
            }
        }
    }
    let sets = sets
        .into_iter()
        .map(|(name, members)| ClosedSet::new(Arc::clone(complex), name, members))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverFile { sets, pairs })
}

pub fn write_cover(sets: &[ClosedSet], pairs: &[(String, String)]) -> String {
    let mut out = String::new();
    for set in sets {
        out.push_str(&format!("set {}\n", set.name));
        let complex = set.complex();
        let mut names: Vec<&str> = set.vertices().iter().map(|v| complex.name(*v)).collect();
        names.sort_unstable();
        for chunk in names.chunks(12) {
            out.push_str(&chunk.join(" "));
            out.push('\n');
        }
    }
    for (a, b) in pairs {
        out.push_str(&format!("pair {a} {b}\n"));
    }
    out
}

/// Convenience: read and parse a complex file from disk.
pub fn load_complex(path: &std::path::Path) -> Result<ComplexFile> {
    let text = std::fs::read_to_string(path)?;
    parse_complex(&text, &path.display().to_string())
}

pub fn load_involution(path: &std::path::Path, complex: &Arc<Complex>) -> Result<Involution> {
    let text = std::fs::read_to_string(path)?;
    parse_involution(&text, &path.display().to_string(), complex)
}

pub fn load_labelling(path: &std::path::Path, complex: &Arc<Complex>) -> Result<Labelling> {
    let text = std::fs::read_to_string(path)?;
    parse_labelling(&text, &path.display().to_string(), complex)
}

pub fn load_map(
    path: &std::path::Path,
    src: &Arc<Complex>,
    dst: &Arc<Complex>,
) -> Result<SimplicialMap> {
    let text = std::fs::read_to_string(path)?;
    parse_map(&text, &path.display().to_string(), src, dst)
}

pub fn load_cover(path: &std::path::Path, complex: &Arc<Complex>) -> Result<CoverFile> {
    let text = std::fs::read_to_string(path)?;
    parse_cover(&text, &path.display().to_string(), complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn complex_round_trip_preserves_names_and_facets() {
        let (c, _) = generators::crosspolytope_sphere(2);
        let text = write_complex(&c, None);
        let parsed = parse_complex(&text, "octa.cx").unwrap();
        assert!(parsed.complex.same_structure(&c));
        // Canonical writer output is a fixed point of parse/write.
        assert_eq!(write_complex(&parsed.complex, None), text);
    }

    #[test]
    fn layout_directives_round_trip() {
        let fig2 = generators::fig2_grid();
        let text = write_complex(&fig2.complex, Some(&fig2.layout));
        let parsed = parse_complex(&text, "fig2.cx").unwrap();
        assert_eq!(parsed.layout.len(), 16);
        assert_eq!(parsed.layout["v00"], (0.0, 0.0));
        assert_eq!(parsed.layout["v31"], (180.0, 40.0));
    }

    #[test]
    fn involution_round_trip() {
        let (c, a) = generators::crosspolytope_sphere(2);
        let text = write_involution(&a);
        let parsed = parse_involution(&text, "octa.inv", &c).unwrap();
        for v in c.vertex_ids() {
            assert_eq!(parsed.apply(v), a.apply(v));
        }
    }

    #[test]
    fn labelling_round_trip_with_comments() {
        let fig2 = generators::fig2_grid();
        let mut text = String::from("# the committed labels\n");
        text.push_str(&write_labelling(&fig2.labelling));
        let parsed = parse_labelling(&text, "fig2.lab", &fig2.complex).unwrap();
        assert_eq!(parsed.values(), fig2.labelling.values());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_complex("dim 2\n1 2\n", "bad.cx").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
        let (c, _) = generators::crosspolytope_sphere(2);
        let err = parse_labelling("1 1\n2 zero\n", "bad.lab", &c).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
        let err = parse_labelling("1 0\n", "bad.lab", &c).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn missing_dim_is_reported() {
        let err = parse_complex("1 2 3\n", "bad.cx").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn cover_round_trip() {
        let (c, _) = generators::crosspolytope_sphere(2);
        let text = "set P\n1 2 3\nset N\n-1 -2 -3\npair P N\n";
        let cover = parse_cover(text, "octa.cover", &c).unwrap();
        assert_eq!(cover.sets.len(), 2);
        assert_eq!(cover.pairs, vec![("P".to_string(), "N".to_string())]);
        assert_eq!(cover.set("P").unwrap().len(), 3);
        let rendered = write_cover(&cover.sets, &cover.pairs);
        let reparsed = parse_cover(&rendered, "octa.cover", &c).unwrap();
        assert_eq!(
            reparsed.set("N").unwrap().vertices(),
            cover.set("N").unwrap().vertices()
        );
    }

    #[test]
    fn unknown_vertices_are_line_diagnosed() {
        let (c, _) = generators::crosspolytope_sphere(2);
        let err = parse_cover("set A\n1 bogus\n", "bad.cover", &c).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_involution("1 bogus\n", "bad.inv", &c).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn map_round_trip() {
        let (c, _) = generators::crosspolytope_sphere(2);
        let mut names: Vec<&str> = c.names().iter().map(|s| s.as_str()).collect();
        names.sort_unstable();
        let text: String = names.iter().map(|n| format!("{n} {n}\n")).collect();
        let f = parse_map(&text, "id.map", &c, &c).unwrap();
        assert_eq!(write_map(&f), text);
    }
}
