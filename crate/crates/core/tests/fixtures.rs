//! Golden-file checks: the committed fixtures must equal their derivations
//! byte for byte. Run with `REGEN_FIXTURES=1 cargo test --test fixtures` to
//! rewrite them after an intentional change.

use std::path::PathBuf;
use std::sync::Arc;

use antipodal::complex::Complex;
use antipodal::cover::ClosedSet;
use antipodal::generators;
use antipodal::involution::lift_involution;
use antipodal::io;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn check_or_regen(name: &str, derived: &str) {
    let path = fixture_path(name);
    if std::env::var("REGEN_FIXTURES").is_ok() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, derived).unwrap();
        return;
    }
    let committed = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing fixture {}: {e}", path.display()));
    assert_eq!(
        committed,
        derived,
        "fixture {name} is stale; regenerate with REGEN_FIXTURES=1"
    );
}

#[test]
fn fig2_fixture_is_byte_stable() {
    let fig2 = generators::fig2_grid();
    check_or_regen("fig2.cx", &io::write_complex(&fig2.complex, Some(&fig2.layout)));
    check_or_regen("fig2.inv", &io::write_involution(&fig2.involution));
    check_or_regen("fig2.lab", &io::write_labelling(&fig2.labelling));
}

#[test]
fn subdivided_octahedron_fixture_is_byte_stable() {
    let (octa, antipodal_map) = generators::crosspolytope_sphere(2);
    let sd = octa.subdivide();
    let lifted = lift_involution(&antipodal_map, &sd).unwrap();
    check_or_regen("octa_sd.cx", &io::write_complex(&sd.complex, None));
    check_or_regen("octa_sd.inv", &io::write_involution(&lifted));
}

/// The four covering sets committed in `fan_sets.cover`, derived from
/// scratch: classify each barycenter of the subdivided octahedron by the
/// tetrahedron directions it aligns with best. Dot products are exact
/// integers after scaling barycenters by the common denominator 6, so ties
/// are honest set boundaries, not float artifacts.
fn derive_fan_sets(sd: &Arc<Complex>) -> Vec<ClosedSet> {
    let directions: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    let mut members: Vec<Vec<String>> = vec![Vec::new(); 4];
    for v in sd.vertex_ids() {
        let name = sd.name(v);
        let parts: Vec<i64> = name.split('.').map(|p| p.parse().unwrap()).collect();
        let weight = 6 / parts.len() as i64;
        let mut coords = [0i64; 3];
        for part in &parts {
            coords[(part.unsigned_abs() - 1) as usize] += part.signum() * weight;
        }
        let dots: Vec<i64> = directions
            .iter()
            .map(|t| t[0] * coords[0] + t[1] * coords[1] + t[2] * coords[2])
            .collect();
        let max = *dots.iter().max().unwrap();
        for (i, dot) in dots.iter().enumerate() {
            if *dot == max {
                members[i].push(name.to_string());
            }
        }
    }
    members
        .into_iter()
        .enumerate()
        .map(|(i, names)| ClosedSet::new(Arc::clone(sd), format!("C{}", i + 1), names).unwrap())
        .collect()
}

#[test]
fn fan_sets_fixture_matches_its_derivation() {
    let (octa, _) = generators::crosspolytope_sphere(2);
    let sd = octa.subdivide();
    let sets = derive_fan_sets(&sd.complex);
    check_or_regen("fan_sets.cover", &io::write_cover(&sets, &[]));
}

#[test]
fn fan_sets_fixture_parses_against_the_committed_complex() {
    if std::env::var("REGEN_FIXTURES").is_ok() {
        return;
    }
    let complex = io::load_complex(&fixture_path("octa_sd.cx")).unwrap().complex;
    let involution =
        io::load_involution(&fixture_path("octa_sd.inv"), &complex).unwrap();
    let cover = io::load_cover(&fixture_path("fan_sets.cover"), &complex).unwrap();
    assert_eq!(cover.sets.len(), 4);
    assert!(involution.is_free());
    for set in &cover.sets {
        assert!(set.is_antipodal_pair_free(&involution), "set {}", set.name);
    }
    let refs: Vec<&ClosedSet> = cover.sets.iter().collect();
    assert!(antipodal::cover::verify_cover(&complex, &refs).is_none());
}
