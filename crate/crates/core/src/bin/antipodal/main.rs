//! Command-line front end: generators, lemma verifiers, parity counts,
//! mod-2 degree, doubling, and SVG rendering.
//!
//! Exit codes are a stable contract: 0 = the checked conclusion holds,
//! 2 = the conclusion failed (a counterexample report is emitted),
//! 1 = input or contract error.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use antipodal::complex::Complex;
use antipodal::cover::{
    self, ClosedSet, PairedCover, RainbowOutcome,
};
use antipodal::degree::{degree_mod2, verify_odd_mapping};
use antipodal::doubling;
use antipodal::error::Error;
use antipodal::generators::{self, Layout};
use antipodal::involution::{lift_involution, Involution};
use antipodal::labels::{
    self, count_alternating, count_signature, count_signature_pair, Signature, TuckerOutcome,
};
use antipodal::{io, render, Result};

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "antipodal",
    about = "Verify combinatorial antipodal lemmas on triangulated manifolds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit canonical test objects as complex/involution/labelling files.
    Gen(GenArgs),
    /// Run a lemma verifier; exit 0 = conclusion verified, 2 = failed.
    Verify(VerifyArgs),
    /// Count labelled facets by signature, pair class or alternating family.
    Count(CountArgs),
    /// Compute the mod-2 degree of a simplicial map.
    Degree(DegreeArgs),
    /// Glue two copies of a complex along its boundary by an involution.
    Double(DoubleArgs),
    /// Draw a complex (dimension <= 2) as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenArgs {
    /// crosspolytope | fig2 | disk | punctured-torus | genus2 | labelling
    kind: String,
    /// Sphere dimension for `crosspolytope`.
    #[arg(long)]
    dim: Option<usize>,
    /// Half the boundary size for `disk` (a 2k-gon).
    #[arg(long)]
    k: Option<usize>,
    /// Barycentric refinement depth (closed kinds only).
    #[arg(long, default_value_t = 0)]
    refine: usize,
    /// Output path prefix; files get .cx/.inv/.lab suffixes.
    #[arg(long)]
    out: PathBuf,
    /// For `labelling`: the complex to label.
    #[arg(long)]
    complex: Option<PathBuf>,
    /// For `labelling`: the involution making it antipodal.
    #[arg(long)]
    involution: Option<PathBuf>,
    /// For `labelling`: the alphabet bound n of the labels ±1..±n.
    #[arg(long)]
    labels: Option<u32>,
    /// For `labelling`: search for one without complementary edges.
    #[arg(long)]
    complementary_free: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step budget for the complementary-free search.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// tucker | shashkin | kyfan | odd-map | cover | ls
    kind: String,
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long)]
    labelling: Option<PathBuf>,
    /// Involution on the complex itself (closed case).
    #[arg(long)]
    involution: Option<PathBuf>,
    /// Involution on the boundary complex (with-boundary case).
    #[arg(long)]
    boundary_involution: Option<PathBuf>,
    /// Alphabet bound n for kyfan.
    #[arg(long)]
    labels: Option<u32>,
    /// Signature such as `1,-2,3` for the cover verifier.
    #[arg(long)]
    signature: Option<String>,
    /// Index split for the (d+2)-set covering theorem.
    #[arg(long)]
    k: Option<usize>,
    /// Covering family file.
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Refinement retries when no witness exists at this resolution.
    #[arg(long, default_value_t = 0)]
    refine: usize,
    /// Source complex / map / involutions for odd-map.
    #[arg(long)]
    src: Option<PathBuf>,
    #[arg(long)]
    dst: Option<PathBuf>,
    #[arg(long)]
    map: Option<PathBuf>,
    #[arg(long)]
    src_involution: Option<PathBuf>,
    #[arg(long)]
    dst_involution: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    labelling: PathBuf,
    /// Count one signature such as `1,-2,3` (default: all).
    #[arg(long)]
    signature: Option<String>,
    /// Count {Λ, −Λ} pair classes instead of single signatures.
    #[arg(long)]
    pairs: bool,
    /// Count the alternating family for alphabet bound n.
    #[arg(long)]
    alternating: bool,
    #[arg(long)]
    labels: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DegreeArgs {
    #[arg(long)]
    src: PathBuf,
    #[arg(long)]
    dst: PathBuf,
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DoubleArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    boundary_involution: PathBuf,
    /// Output path prefix; writes PREFIX.cx and PREFIX.inv, plus
    /// PREFIX.base.cx when a subdivision step was needed.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    labelling: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen(args) => run_gen(args),
        Command::Verify(args) => run_verify(args),
        Command::Count(args) => run_count(args),
        Command::Degree(args) => run_degree(args),
        Command::Double(args) => run_double(args),
        Command::Render(args) => run_render(args),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, contents)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    prefix.with_file_name(name)
}

fn refine_pair(
    complex: Arc<Complex>,
    involution: Involution,
    depth: usize,
) -> Result<(Arc<Complex>, Involution)> {
    let mut complex = complex;
    let mut involution = involution;
    for _ in 0..depth {
        let sd = complex.subdivide();
        involution = lift_involution(&involution, &sd)?;
        complex = sd.complex;
    }
    Ok((complex, involution))
}

fn run_gen(args: GenArgs) -> Result<u8> {
    let out = &args.out;
    match args.kind.as_str() {
        "crosspolytope" => {
            let d = args.dim.ok_or_else(|| Error::Contract("--dim is required".into()))?;
            if d == 0 {
                return Err(Error::Contract("--dim must be at least 1".into()));
            }
            let (complex, involution) = generators::crosspolytope_sphere(d);
            let (complex, involution) = refine_pair(complex, involution, args.refine)?;
            let layout = if args.refine == 0 {
                generators::crosspolytope_layout(d)
            } else {
                None
            };
            write_file(&with_suffix(out, ".cx"), &io::write_complex(&complex, layout.as_ref()))?;
            write_file(&with_suffix(out, ".inv"), &io::write_involution(&involution))?;
        }
        "fig2" => {
            let fig2 = generators::fig2_grid();
            write_file(
                &with_suffix(out, ".cx"),
                &io::write_complex(&fig2.complex, Some(&fig2.layout)),
            )?;
            write_file(&with_suffix(out, ".inv"), &io::write_involution(&fig2.involution))?;
            write_file(&with_suffix(out, ".lab"), &io::write_labelling(&fig2.labelling))?;
        }
        "disk" => {
            let k = args.k.ok_or_else(|| Error::Contract("--k is required".into()))?;
            if k < 2 {
                return Err(Error::Contract("--k must be at least 2".into()));
            }
            let (complex, involution) = generators::disk(k);
            let layout = generators::disk_layout(k);
            write_file(&with_suffix(out, ".cx"), &io::write_complex(&complex, Some(&layout)))?;
            write_file(&with_suffix(out, ".inv"), &io::write_involution(&involution))?;
        }
        "punctured-torus" => {
            let (complex, involution) = generators::punctured_torus();
            write_file(&with_suffix(out, ".cx"), &io::write_complex(&complex, None))?;
            write_file(&with_suffix(out, ".inv"), &io::write_involution(&involution))?;
        }
        "genus2" => {
            let (complex, involution) = generators::genus2_surface();
            let (complex, involution) = refine_pair(complex, involution, args.refine)?;
            write_file(&with_suffix(out, ".cx"), &io::write_complex(&complex, None))?;
            write_file(&with_suffix(out, ".inv"), &io::write_involution(&involution))?;
        }
        "labelling" => {
            let complex_path = args
                .complex
                .ok_or_else(|| Error::Contract("--complex is required".into()))?;
            let involution_path = args
                .involution
                .ok_or_else(|| Error::Contract("--involution is required".into()))?;
            let n = args
                .labels
                .ok_or_else(|| Error::Contract("--labels is required".into()))?;
            let complex = io::load_complex(&complex_path)?.complex;
            let involution = io::load_involution(&involution_path, &complex)?;
            let labelling = if args.complementary_free {
                match generators::search_complementary_free(
                    &involution,
                    n,
                    args.seed,
                    args.budget,
                )? {
                    generators::SearchOutcome::Found(labelling, stats) => {
                        println!("found after {} steps", stats.steps);
                        labelling
                    }
                    generators::SearchOutcome::Exhausted(stats) => {
                        return Err(Error::Contract(format!(
                            "no complementary-free labelling within {} steps",
                            stats.steps
                        )));
                    }
                }
            } else {
                generators::random_antipodal_labelling(&involution, n, args.seed)?
            };
            write_file(out, &io::write_labelling(&labelling))?;
        }
        other => {
            return Err(Error::Contract(format!(
                "unknown generator `{other}`; use crosspolytope | fig2 | disk | punctured-torus | genus2 | labelling"
            )))
        }
    }
    Ok(0)
}

fn require<T: Clone>(slot: &Option<T>, flag: &str) -> Result<T> {
    slot.clone()
        .ok_or_else(|| Error::Contract(format!("{flag} is required")))
}

fn parse_signature(text: &str) -> Result<Signature> {
    let values: Result<Vec<i32>> = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i32>()
                .map_err(|_| Error::Contract(format!("bad signature entry `{p}`")))
        })
        .collect();
    Signature::new(values?)
}

fn run_verify(args: VerifyArgs) -> Result<u8> {
    let mut report = RunReport::new(format!("verify {}", args.kind));
    let json = args.json;
    let code = match args.kind.as_str() {
        "tucker" => verify_tucker_cmd(&args, &mut report)?,
        "shashkin" => verify_shashkin_cmd(&args, &mut report)?,
        "kyfan" => verify_kyfan_cmd(&args, &mut report)?,
        "odd-map" => verify_odd_map_cmd(&args, &mut report)?,
        "cover" => verify_cover_cmd(&args, &mut report)?,
        "ls" => verify_ls_cmd(&args, &mut report)?,
        other => {
            return Err(Error::Contract(format!(
                "unknown verifier `{other}`; use tucker | shashkin | kyfan | odd-map | cover | ls"
            )))
        }
    };
    report.print(json);
    Ok(code)
}

/// Loads complex + labelling + either kind of involution for the labelling
/// verifiers. Boolean is true when the involution is on the boundary.
fn load_labelled(
    args: &VerifyArgs,
    report: &mut RunReport,
) -> Result<(Arc<Complex>, labels::Labelling, Involution, bool)> {
    let complex_path = require(&args.complex, "--complex")?;
    let labelling_path = require(&args.labelling, "--labelling")?;
    report.input(&complex_path)?;
    report.input(&labelling_path)?;
    let complex = io::load_complex(&complex_path)?.complex;
    let labelling = io::load_labelling(&labelling_path, &complex)?;
    match (&args.involution, &args.boundary_involution) {
        (Some(path), None) => {
            report.input(path)?;
            let involution = io::load_involution(path, &complex)?;
            Ok((complex, labelling, involution, false))
        }
        (None, Some(path)) => {
            report.input(path)?;
            let boundary = complex.boundary_complex()?;
            let involution = io::load_involution(path, &boundary)?;
            Ok((complex, labelling, involution, true))
        }
        _ => Err(Error::Contract(
            "exactly one of --involution / --boundary-involution is required".into(),
        )),
    }
}

fn verify_tucker_cmd(args: &VerifyArgs, report: &mut RunReport) -> Result<u8> {
    let (complex, labelling, involution, on_boundary) = load_labelled(args, report)?;
    let outcome = if on_boundary {
        labels::verify_tucker_with_boundary(&labelling, &involution)?
    } else {
        labels::verify_tucker(&labelling, &involution)?
    };
    Ok(match outcome {
        TuckerOutcome::ComplementaryEdge(edge) => {
            report.witness(format!(
                "complementary edge {{{}}}",
                complex.simplex_names(&edge)
            ));
            report.finish("verified: complementary edge exists", 0);
            0
        }
        TuckerOutcome::Counterexample(cx) => {
            report.count("vertices", cx.vertex_count as i64);
            report.count("facets", cx.facet_count as i64);
            for (name, value) in &cx.labelling {
                report.witness(format!("label {name} = {value}"));
            }
            report.finish(
                "counterexample: no complementary edge (non-BUT input or bug)",
                2,
            );
            2
        }
    })
}

fn verify_shashkin_cmd(args: &VerifyArgs, report: &mut RunReport) -> Result<u8> {
    let (_, labelling, involution, on_boundary) = load_labelled(args, report)?;
    let table = if on_boundary {
        labels::shashkin_report_boundary(&labelling, &involution)?
    } else {
        labels::shashkin_report_closed(&labelling, &involution)?
    };
    for (signature, count) in &table.rows {
        let key = if table.boundary_mode {
            format!("ns({signature})")
        } else {
            format!("n({signature})")
        };
        report.count(key, *count as i64);
    }
    if let Some(cross) = &table.degree_crosscheck {
        report.count(
            "deg2(f_L)",
            cross.report.deg2.map(i64::from).unwrap_or(-1),
        );
        report.count("deg2 consistent", i64::from(cross.report.consistent));
        report.count(
            "counts match deg2 parity",
            i64::from(cross.counts_match_degree),
        );
    }
    let ok = table.all_odd
        && table
            .degree_crosscheck
            .as_ref()
            .map(|c| c.counts_match_degree)
            .unwrap_or(true);
    if ok {
        report.finish("verified: every signature count is odd", 0);
        Ok(0)
    } else {
        report.finish("counterexample: an even signature count", 2);
        Ok(2)
    }
}

fn verify_kyfan_cmd(args: &VerifyArgs, report: &mut RunReport) -> Result<u8> {
    let (complex, labelling, involution, on_boundary) = load_labelled(args, report)?;
    if on_boundary {
        return Err(Error::Contract(
            "kyfan checks closed symmetric triangulations; use --involution".into(),
        ));
    }
    let n = args.labels.unwrap_or_else(|| labelling.max_abs());
    if !complex.is_closed_pseudomanifold() {
        return Err(Error::NotClosed);
    }
    if let Some(witness) = involution.freeness_witness() {
        return Err(Error::InvolutionNotFree(witness));
    }
    if let Some(v) = labels::antipodal_witness(&labelling, &involution)? {
        return Err(Error::LabellingNotAntipodal(complex.name(v).to_string()));
    }
    if let Some(edge) = labels::complementary_edges(&labelling).first() {
        return Err(Error::ComplementaryEdgePresent(complex.simplex_names(edge)));
    }
    let alternating = count_alternating(&labelling, n)?;
    for (sequence, count) in &alternating.per_sequence {
        let key: Vec<String> = sequence
            .iter()
            .enumerate()
            .map(|(i, k)| {
                if i % 2 == 0 {
                    format!("+{k}")
                } else {
                    format!("-{k}")
                }
            })
            .collect();
        report.count(format!("alt({})", key.join(",")), *count as i64);
    }
    report.count("total", alternating.total as i64);
    report.count(
        "alphabet >= d+1",
        i64::from(alternating.alphabet_large_enough),
    );
    if alternating.total % 2 == 1 && alternating.alphabet_large_enough {
        report.finish("verified: alternating total is odd", 0);
        Ok(0)
    } else {
        report.finish("counterexample: alternating total is even", 2);
        Ok(2)
    }
}

fn verify_odd_map_cmd(args: &VerifyArgs, report: &mut RunReport) -> Result<u8> {
    let src_path = require(&args.src, "--src")?;
    let dst_path = require(&args.dst, "--dst")?;
    let map_path = require(&args.map, "--map")?;
    let src_inv_path = require(&args.src_involution, "--src-involution")?;
    let dst_inv_path = require(&args.dst_involution, "--dst-involution")?;
    for path in [&src_path, &dst_path, &map_path, &src_inv_path, &dst_inv_path] {
        report.input(path)?;
    }
    let src = io::load_complex(&src_path)?.complex;
    let dst = io::load_complex(&dst_path)?.complex;
    let map = io::load_map(&map_path, &src, &dst)?;
    let a_src = io::load_involution(&src_inv_path, &src)?;
    let a_dst = io::load_involution(&dst_inv_path, &dst)?;
    let verdict = verify_odd_mapping(&map, &a_src, &a_dst)?;
    for (idx, count) in verdict.report.counts.iter().enumerate() {
        report.count(
            format!("preimages of {{{}}}", dst.simplex_names(&dst.facets()[idx])),
            *count as i64,
        );
    }
    report.count(
        "deg2",
        verdict.report.deg2.map(i64::from).unwrap_or(-1),
    );
    if verdict.verdict {
        report.finish("verified: map has odd degree", 0);
        Ok(0)
    } else {
        report.finish("counterexample: degree is even or inconsistent", 2);
        Ok(2)
    }
}

fn verify_cover_cmd(args: &VerifyArgs, report: &mut RunReport) -> Result<u8> {
    let complex_path = require(&args.complex, "--complex")?;
    let involution_path = require(&args.involution, "--involution")?;
    let cover_path = require(&args.cover, "--cover")?;
    report.input(&complex_path)?;
    report.input(&involution_path)?;
    report.input(&cover_path)?;
    let complex = io::load_complex(&complex_path)?.complex;
    let involution = io::load_involution(&involution_path, &complex)?;
    let cover_file = io::load_cover(&cover_path, &complex)?;

    if let Some(k) = args.k {
        // Covering theorem for d+2 unpaired sets.
        if !cover_file.pairs.is_empty() {
            return Err(Error::Contract(
                "pair declarations are not used with --k".into(),
            ));
        }
        let mut sets = cover_file.sets;
        let mut inv = involution;
        let mut attempt = 0;
        loop {
            match cover::verify_fan_cover_theorem(&inv, &sets, k) {
                Ok(witness) => {
                    let complex = inv.complex();
                    report.witness(format!(
                        "vertex {} in C_1..C_{k}; image {} in the rest",
                        complex.name(witness.vertex),
                        complex.name(inv.apply(witness.vertex)),
                    ));
                    if let Some(facet) = &witness.rainbow {
                        report.witness(format!(
                            "rainbow facet {{{}}}",
                            complex.simplex_names(facet)
                        ));
                    }
                    report.count("refinements", attempt);
                    report.finish("verified: intersection witness found", 0);
                    return Ok(0);
                }
                Err(Error::NoWitnessAtThisResolution) if attempt < args.refine as i64 => {
                    attempt += 1;
                    let sd = inv.complex().subdivide();
                    sets = sets.iter().map(|s| s.lift(&sd)).collect();
                    inv = lift_involution(&inv, &sd)?;
                }
                Err(Error::NoWitnessAtThisResolution) => {
                    report.count("refinements", attempt);
                    report.finish(
                        "no witness at this resolution; increase --refine",
                        2,
                    );
                    return Ok(2);
                }
                Err(other) => return Err(other),
            }
        }
    }

    // Rainbow-simplex verification for a paired family.
    if cover_file.pairs.is_empty() {
        return Err(Error::Contract(
            "paired verification needs `pair` declarations (or pass --k)".into(),
        ));
    }
    let mut paired: Vec<(ClosedSet, ClosedSet)> = Vec::new();
    for (plus, minus) in &cover_file.pairs {
        let plus = cover_file
            .set(plus)
            .ok_or_else(|| Error::Contract(format!("unknown set `{plus}`")))?;
        let minus = cover_file
            .set(minus)
            .ok_or_else(|| Error::Contract(format!("unknown set `{minus}`")))?;
        paired.push((plus.clone(), minus.clone()));
    }
    let mut cover = PairedCover::new(Arc::clone(&complex), paired)?;
    let mut inv = involution;
    if let Some(name) = cover.pairing_witness(&inv) {
        return Err(Error::Contract(format!(
            "pair of `{name}` is not its image under the involution"
        )));
    }
    let signatures = match &args.signature {
        Some(text) => vec![parse_signature(text)?],
        None => Signature::all_for_dim(complex.dim()),
    };
    let mut attempt = 0;
    'retry: loop {
        let mut failures = 0;
        for signature in &signatures {
            match cover::find_rainbow_simplex(&cover, signature)? {
                RainbowOutcome::Witness(facet) => {
                    report.witness(format!(
                        "signature {signature}: facet {{{}}}",
                        cover.complex().simplex_names(&facet)
                    ));
                }
                RainbowOutcome::ComplementaryEdge(edge) => {
                    if attempt < args.refine {
                        attempt += 1;
                        let sd = cover.complex().subdivide();
                        cover = cover.lift(&sd)?;
                        inv = lift_involution(&inv, &sd)?;
                        report.witnesses.clear();
                        continue 'retry;
                    }
                    report.witness(format!(
                        "signature {signature}: complementary edge {{{}}}",
                        cover.complex().simplex_names(&edge)
                    ));
                    failures += 1;
                }
                RainbowOutcome::NoWitness => {
                    if attempt < args.refine {
                        attempt += 1;
                        let sd = cover.complex().subdivide();
                        cover = cover.lift(&sd)?;
                        inv = lift_involution(&inv, &sd)?;
                        report.witnesses.clear();
                        continue 'retry;
                    }
                    report.witness(format!("signature {signature}: no rainbow facet"));
                    failures += 1;
                }
            }
        }
        report.count("signatures", signatures.len() as i64);
        report.count("refinements", attempt as i64);
        if failures == 0 {
            report.finish("verified: rainbow facet for every signature", 0);
            return Ok(0);
        }
        report.finish(
            format!("{failures} signature(s) without a rainbow facet"),
            2,
        );
        return Ok(2);
    }
}

fn verify_ls_cmd(args: &VerifyArgs, report: &mut RunReport) -> Result<u8> {
    let complex_path = require(&args.complex, "--complex")?;
    let involution_path = require(&args.involution, "--involution")?;
    let cover_path = require(&args.cover, "--cover")?;
    report.input(&complex_path)?;
    report.input(&involution_path)?;
    report.input(&cover_path)?;
    let complex = io::load_complex(&complex_path)?.complex;
    let involution = io::load_involution(&involution_path, &complex)?;
    let cover_file = io::load_cover(&cover_path, &complex)?;
    let ls = cover::ls_corollary_check(&involution, &cover_file.sets)?;
    report.count("sets", cover_file.sets.len() as i64);
    if ls.covers {
        report.finish(
            "violation: antipode-free family covers the complex (non-BUT input or bug)",
            2,
        );
        Ok(2)
    } else {
        if let Some(facet) = &ls.uncovered_facet {
            report.witness(format!(
                "uncovered facet {{{}}}",
                complex.simplex_names(facet)
            ));
        }
        report.finish("verified: family does not cover", 0);
        Ok(0)
    }
}

fn run_count(args: CountArgs) -> Result<u8> {
    let mut report = RunReport::new("count");
    report.input(&args.complex)?;
    report.input(&args.labelling)?;
    let complex = io::load_complex(&args.complex)?.complex;
    let labelling = io::load_labelling(&args.labelling, &complex)?;
    if args.alternating {
        let n = args
            .labels
            .unwrap_or_else(|| labelling.max_abs());
        let alternating = count_alternating(&labelling, n)?;
        for (sequence, count) in &alternating.per_sequence {
            report.count(format!("alt{sequence:?}"), *count as i64);
        }
        report.count("total", alternating.total as i64);
    } else if let Some(text) = &args.signature {
        let signature = parse_signature(text)?;
        if args.pairs {
            report.count(
                format!("ns({signature})"),
                count_signature_pair(&labelling, &signature)? as i64,
            );
        } else {
            report.count(
                format!("n({signature})"),
                count_signature(&labelling, &signature)? as i64,
            );
        }
    } else if args.pairs {
        for signature in Signature::pair_classes_for_dim(complex.dim()) {
            report.count(
                format!("ns({signature})"),
                count_signature_pair(&labelling, &signature)? as i64,
            );
        }
    } else {
        for signature in Signature::all_for_dim(complex.dim()) {
            report.count(
                format!("n({signature})"),
                count_signature(&labelling, &signature)? as i64,
            );
        }
    }
    report.finish("counted", 0);
    report.print(args.json);
    Ok(0)
}

fn run_degree(args: DegreeArgs) -> Result<u8> {
    let mut report = RunReport::new("degree");
    report.input(&args.src)?;
    report.input(&args.dst)?;
    report.input(&args.map)?;
    let src = io::load_complex(&args.src)?.complex;
    let dst = io::load_complex(&args.dst)?.complex;
    let map = io::load_map(&args.map, &src, &dst)?;
    let deg = degree_mod2(&map)?;
    for (idx, count) in deg.counts.iter().enumerate() {
        report.count(
            format!("preimages of {{{}}}", dst.simplex_names(&dst.facets()[idx])),
            *count as i64,
        );
    }
    report.count("consistent", i64::from(deg.consistent));
    report.count("deg2", deg.deg2.map(i64::from).unwrap_or(-1));
    if deg.consistent {
        report.finish("computed", 0);
        report.print(args.json);
        Ok(0)
    } else {
        report.finish("inconsistent preimage parities (input is not a pseudomanifold?)", 2);
        report.print(args.json);
        Ok(2)
    }
}

fn run_double(args: DoubleArgs) -> Result<u8> {
    let mut report = RunReport::new("double");
    report.input(&args.complex)?;
    report.input(&args.boundary_involution)?;
    let complex = io::load_complex(&args.complex)?.complex;
    let boundary = complex.boundary_complex()?;
    let involution = io::load_involution(&args.boundary_involution, &boundary)?;
    let doubling = doubling::double(&complex, &involution)?;
    write_file(
        &with_suffix(&args.out, ".cx"),
        &io::write_complex(&doubling.complex, None),
    )?;
    write_file(
        &with_suffix(&args.out, ".inv"),
        &io::write_involution(&doubling.involution),
    )?;
    if doubling.subdivided {
        write_file(
            &with_suffix(&args.out, ".base.cx"),
            &io::write_complex(&doubling.base, None),
        )?;
    }
    report.count("facets", doubling.complex.facets().len() as i64);
    report.count("base facets", doubling.base.facets().len() as i64);
    report.count("euler characteristic", doubling.complex.euler_characteristic());
    report.count("subdivided", i64::from(doubling.subdivided));
    report.count(
        "closed",
        i64::from(doubling.complex.is_closed_pseudomanifold()),
    );
    report.count("free", i64::from(doubling.involution.is_free()));
    report.finish("doubled", 0);
    report.print(args.json);
    Ok(0)
}

fn run_render(args: RenderArgs) -> Result<u8> {
    let file = io::load_complex(&args.complex)?;
    let labelling = match &args.labelling {
        Some(path) => Some(io::load_labelling(path, &file.complex)?),
        None => None,
    };
    let layout: Option<&Layout> = if file.layout.is_empty() {
        None
    } else {
        Some(&file.layout)
    };
    let svg = render::render_svg(&file.complex, layout, labelling.as_ref())?;
    write_file(&args.out, &svg)?;
    Ok(0)
}
