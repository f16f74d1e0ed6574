//! `vcs`: build, verify, bound, search and apply visual cryptography schemes.

mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use vcs_core::bounds::{
    best_lower_bound, check_disjoint_blocks, check_induced_matching, check_isolating_family, check_peeling_family,
    check_separating_family, minimal_count_bound, revalidate,
};
use vcs_core::construct::{
    biclique_blocks_vcs4, biclique_cover_vcs2, compose_strong_layers, k_out_of_k, transport_hom, transport_hom_basis,
    BUILTIN_NAMES,
};
use vcs_core::graph_algos::{
    biclique_components, biclique_cover, find_onto_edge_homomorphism, max_induced_matching, strong_biclique_covering,
    strong_edge_coloring,
};
use vcs_core::imaging::{encrypt_image, reconstruct, stack};
use vcs_core::search::optimal_pixel_expansion_with;
use vcs_core::{
    BasisModel, BinaryImage, BoundBudget, BoundCertificate, Edge, Geometry, Layout, Readout, Scheme, SearchConfig,
    SearchLimits, SearchOutcome, StrongBicliqueCovering, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "vcs", version, about = "Visual cryptography schemes for general and graph access structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a scheme and print it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a scheme against an access structure.
    Verify(VerifyArgs),
    /// Find or check a lower bound on the pixel expansion.
    Bound(BoundArgs),
    /// Compute the optimal pixel expansion by exhaustive search.
    Search(SearchArgs),
    /// Split a PBM image into one share per participant.
    Encrypt(EncryptArgs),
    /// Stack share images (pixelwise OR).
    Stack(StackArgs),
    /// Graph tools.
    #[command(subcommand)]
    Graph(GraphCommand),
}

#[derive(Subcommand)]
enum Construct {
    /// Basis matrices for the k-out-of-k structure.
    KOfK {
        #[arg(long)]
        k: usize,
    },
    /// Two-column model-4 scheme for a graph whose components are bicliques.
    BicliqueBlocks(GraphInput),
    /// Model-4 scheme with two columns per color of a strong edge coloring,
    /// or per biclique of a cover when that is cheaper.
    ColoringLayers(GraphInput),
    /// Model-4 scheme with two columns per layer of a strong biclique covering.
    StrongLayers(GraphInput),
    /// Model-2 scheme with two columns per biclique of an edge cover.
    BicliqueCover(GraphInput),
    /// Move a scheme along an onto-edges homomorphism to another graph.
    Transport {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Vertex images as a JSON list, e.g. [1,2,1,2]; searched for when omitted.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// One of the fixed schemes.
    Builtin {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
        name: String,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph JSON file (or a graph-based access-structure file).
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
    structure: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Scheme JSON file or builtin:NAME.
    #[arg(long)]
    scheme: String,
    /// Collections: every black matrix must deviate the same way.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    /// Forbidden family with pairwise separation (model 2).
    Separating,
    /// Forbidden family with one member singled out (model 3).
    Isolating,
    /// Forbidden family peeled one member at a time (model 5).
    Peeling,
    /// Disjoint qualified blocks (models 2 and 3).
    Blocks,
    /// Induced matching of a graph structure (models 2 and 3).
    Matching,
    /// Half the number of minimal qualified sets (model 3).
    MinimalCount,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    structure: PathBuf,
    /// Basis model 2, 3 or 5.
    #[arg(long, value_parser = parse_model)]
    model: Option<BasisModel>,
    #[arg(long, value_enum, conflicts_with = "certificate")]
    check: Option<CheckKind>,
    /// Family of forbidden sets, e.g. [[1],[3]].
    #[arg(long)]
    omega: Option<String>,
    /// Disjoint qualified sets, e.g. [[1,2],[3,4]].
    #[arg(long)]
    blocks: Option<String>,
    /// Matching edges, e.g. [[1,2],[4,5]].
    #[arg(long)]
    matching: Option<String>,
    /// Re-check a certificate file.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Largest family size tried when searching.
    #[arg(long, default_value_t = BoundBudget::default().max_omega)]
    max_omega: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    structure: PathBuf,
    #[arg(long, value_parser = parse_model)]
    model: BasisModel,
    #[arg(long, default_value_t = 4)]
    max_m: usize,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
    /// Suppress progress lines on standard error.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct EncryptArgs {
    /// Scheme JSON file or builtin:NAME.
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    structure: PathBuf,
    /// Plain PBM (P1) secret image.
    #[arg(long)]
    image: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "strip")]
    layout: LayoutArg,
}

#[derive(Args)]
struct StackArgs {
    #[arg(long, num_args = 1.., required = true)]
    shares: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Also threshold the stack back into a secret-sized image.
    #[arg(long, requires_all = ["scheme", "structure", "set", "width"])]
    decode: Option<PathBuf>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    structure: Option<PathBuf>,
    /// Participants whose shares are stacked, e.g. [2,3].
    #[arg(long)]
    set: Option<String>,
    /// Width of the secret image in pixels.
    #[arg(long)]
    width: Option<usize>,
    #[arg(long, value_enum, default_value = "strip")]
    layout: LayoutArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    Strip,
    Grid,
}

impl From<LayoutArg> for Layout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::Strip => Layout::Strip,
            LayoutArg::Grid => Layout::Grid,
        }
    }
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Strong edge coloring.
    Coloring(GraphInput),
    /// Maximum induced matching.
    Matching(GraphInput),
    /// Biclique cover.
    Cover(GraphInput),
    /// Strong biclique covering.
    StrongCover(GraphInput),
    /// Onto-edges homomorphism from --graph to --target.
    Hom {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
}

fn parse_model(s: &str) -> std::result::Result<BasisModel, String> {
    let n: u8 = s.parse().map_err(|_| format!("not a model number: {s}"))?;
    BasisModel::from_number(n).map_err(|e| e.to_string())
}

/// What a command produced: normal output, or a rejection to report with
/// exit status 2.
enum Outcome {
    Done(Value),
    Rejected(Value),
}

fn value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Done(v)) => {
            println!("{}", serde_json::to_string(&v).expect("serializable"));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Rejected(v)) => {
            println!("{}", serde_json::to_string(&v).expect("serializable"));
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Construct(c) => construct(c),
        Command::Verify(a) => verify(a),
        Command::Bound(a) => bound(a),
        Command::Search(a) => search(a),
        Command::Encrypt(a) => encrypt(a),
        Command::Stack(a) => stack_shares(a),
        Command::Graph(g) => graph_tool(g),
    }
}

fn construct(c: Construct) -> Result<Outcome> {
    let scheme = match c {
        Construct::KOfK { k } => Scheme::Basis(k_out_of_k(k)?),
        Construct::BicliqueBlocks(a) => {
            let g = input::graph(&a.graph)?;
            Scheme::Collection(biclique_blocks_vcs4(&g, &biclique_components(&g)?)?)
        }
        Construct::ColoringLayers(a) => {
            let g = input::graph(&a.graph)?;
            let coloring = StrongBicliqueCovering::from_coloring(&strong_edge_coloring(&g)?);
            let cover = StrongBicliqueCovering::from_cover(&biclique_cover(&g)?);
            let best = if cover.len() < coloring.len() { cover } else { coloring };
            Scheme::Collection(compose_strong_layers(&g, &best.layers)?)
        }
        Construct::StrongLayers(a) => {
            let g = input::graph(&a.graph)?;
            Scheme::Collection(compose_strong_layers(&g, &strong_biclique_covering(&g)?.layers)?)
        }
        Construct::BicliqueCover(a) => {
            let g = input::graph(&a.graph)?;
            Scheme::Basis(biclique_cover_vcs2(&g, &biclique_cover(&g)?.bicliques)?)
        }
        Construct::Transport {
            scheme,
            graph,
            target,
            sigma,
        } => {
            let (g, h) = (input::graph(&graph)?, input::graph(&target)?);
            let sigma = match sigma {
                Some(text) => serde_json::from_str::<Vec<usize>>(&text)
                    .with_context(|| format!("expected a list of vertices, got {text}"))?,
                None => match find_onto_edge_homomorphism(&g, &h)? {
                    Some(s) => s,
                    None => return Ok(Outcome::Rejected(json!({ "homomorphism": null }))),
                },
            };
            match input::scheme(&scheme)? {
                Scheme::Basis(b) => Scheme::Basis(transport_hom_basis(&b, &g, &h, &sigma)?),
                Scheme::Collection(c) => Scheme::Collection(transport_hom(&c, &g, &h, &sigma)?),
            }
        }
        Construct::Builtin { name } => Scheme::Basis(vcs_core::construct::builtin(&name)?),
    };
    Ok(Outcome::Done(value(&scheme)?))
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let gamma = match (&a.structure, &a.graph) {
        (Some(p), _) => input::structure(p)?,
        (None, Some(p)) => vcs_core::AccessStructure::from_graph(&input::graph(p)?)?,
        (None, None) => bail!("--structure or --graph is required"),
    };
    let scheme = input::scheme(&a.scheme)?;
    let opts = VerifyOptions {
        strict_direction: a.strict,
        ..VerifyOptions::default()
    };
    let report = vcs_core::verify_scheme(&gamma, &scheme, &opts)?;
    let v = value(&report)?;
    Ok(if report.valid {
        Outcome::Done(v)
    } else {
        Outcome::Rejected(v)
    })
}

fn rejection(e: vcs_core::VcsError) -> Result<Outcome> {
    match e {
        vcs_core::VcsError::Rejected(_)
        | vcs_core::VcsError::NotForbidden(_)
        | vcs_core::VcsError::NotQualified(_)
        | vcs_core::VcsError::OverlappingBlocks(..) => Ok(Outcome::Rejected(json!({
            "accepted": false,
            "reason": e.to_string(),
        }))),
        other => Err(other.into()),
    }
}

fn bound(a: BoundArgs) -> Result<Outcome> {
    let gamma = input::structure(&a.structure)?;
    let need = |s: &Option<String>, flag: &str| -> Result<String> {
        s.clone().with_context(|| format!("--{flag} is required for this check"))
    };
    let checked = if let Some(path) = &a.certificate {
        let cert: BoundCertificate = input::read_json(path)?;
        revalidate(&gamma, &cert)
    } else if let Some(kind) = a.check {
        match kind {
            CheckKind::Separating => check_separating_family(&gamma, &input::subsets(&need(&a.omega, "omega")?)?),
            CheckKind::Isolating => check_isolating_family(&gamma, &input::subsets(&need(&a.omega, "omega")?)?),
            CheckKind::Peeling => check_peeling_family(&gamma, &input::subsets(&need(&a.omega, "omega")?)?),
            CheckKind::Blocks => check_disjoint_blocks(&gamma, &input::subsets(&need(&a.blocks, "blocks")?)?),
            CheckKind::Matching => {
                let edges: Vec<Edge> = serde_json::from_str(&need(&a.matching, "matching")?)
                    .context("expected a list of edges")?;
                check_induced_matching(&gamma, &edges)
            }
            CheckKind::MinimalCount => Ok(minimal_count_bound(&gamma)),
        }
    } else {
        let model = a.model.context("--model is required when searching for a bound")?;
        let budget = BoundBudget {
            max_omega: a.max_omega,
            ..BoundBudget::default()
        };
        Ok(best_lower_bound(&gamma, model, &budget)?)
    };
    match checked {
        Ok(cert) => {
            if let Some(model) = a.model {
                if !cert.applies(model) {
                    return Ok(Outcome::Rejected(json!({
                        "accepted": false,
                        "reason": format!("certificate does not bound model {}", model.number()),
                        "certificate": cert,
                    })));
                }
            }
            Ok(Outcome::Done(value(&cert)?))
        }
        Err(e) => rejection(e),
    }
}

fn search(a: SearchArgs) -> Result<Outcome> {
    let gamma = input::structure(&a.structure)?;
    let progress: Option<vcs_core::search::ProgressFn> = if a.quiet {
        None
    } else {
        Some(Arc::new(|p: vcs_core::SearchProgress| {
            let _ = writeln!(std::io::stderr(), "m={} candidates={}", p.m, p.candidates);
        }))
    };
    let config = SearchConfig {
        limits: SearchLimits {
            max_m: a.max_m.max(SearchLimits::default().max_m),
            ..SearchLimits::default()
        },
        progress,
        sequential: a.sequential,
    };
    match optimal_pixel_expansion_with(&gamma, a.model, a.max_m, &config)? {
        SearchOutcome::Found { m_star, witness } => {
            let mut v = value(&witness)?;
            v["m_star"] = json!(m_star);
            Ok(Outcome::Done(v))
        }
        SearchOutcome::Exhausted { m_max } => Ok(Outcome::Done(json!({ "m_star": null, "exhausted": m_max }))),
    }
}

fn encrypt(a: EncryptArgs) -> Result<Outcome> {
    let gamma = input::structure(&a.structure)?;
    let scheme = input::scheme(&a.scheme)?;
    let report = vcs_core::verify_scheme(&gamma, &scheme, &VerifyOptions::default())?;
    if !report.valid {
        return Ok(Outcome::Rejected(value(&report)?));
    }
    let image = BinaryImage::read_pbm(&a.image)?;
    let shares = encrypt_image(&scheme, &gamma, &image, a.seed, a.layout.into())?;
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let mut written = Vec::new();
    for (i, share) in shares.shares.iter().enumerate() {
        let path = a.out_dir.join(format!("share_{}.pbm", i + 1));
        share.write_pbm(&path)?;
        written.push(path.display().to_string());
    }
    let (w, h) = shares.geometry.share_size();
    Ok(Outcome::Done(json!({
        "shares": written,
        "m": shares.geometry.m,
        "width": w,
        "height": h,
        "seed": shares.seed,
    })))
}

fn stack_shares(a: StackArgs) -> Result<Outcome> {
    let images = a
        .shares
        .iter()
        .map(|p| BinaryImage::read_pbm(p))
        .collect::<vcs_core::Result<Vec<_>>>()?;
    let stacked = stack(&images.iter().collect::<Vec<_>>())?;
    stacked.write_pbm(&a.out)?;
    let mut out = json!({
        "out": a.out.display().to_string(),
        "width": stacked.width(),
        "height": stacked.height(),
    });
    if let Some(decoded) = &a.decode {
        let secret = decode(&a, &stacked, decoded)?;
        out["decoded"] = json!(secret);
    }
    Ok(Outcome::Done(out))
}

fn decode(a: &StackArgs, stacked: &BinaryImage, path: &Path) -> Result<String> {
    let (Some(scheme), Some(structure), Some(set), Some(width)) = (&a.scheme, &a.structure, &a.set, a.width) else {
        bail!("--decode needs --scheme, --structure, --set and --width");
    };
    let gamma = input::structure(structure)?;
    let scheme = input::scheme(scheme)?;
    let report = vcs_core::verify_scheme(&gamma, &scheme, &VerifyOptions::default())?;
    let x = input::subset(set)?;
    let readout = Readout::for_set(&report, x).with_context(|| format!("{x} has no reconstruction threshold"))?;
    let layout: Layout = a.layout.into();
    let probe = Geometry {
        width,
        height: 1,
        m: scheme.m(),
        layout,
    };
    let (bw, bh) = probe.block();
    if stacked.width() != width * bw || !stacked.height().is_multiple_of(bh) {
        bail!("stack is {}x{}, not a multiple of the {bw}x{bh} block", stacked.width(), stacked.height());
    }
    let geometry = Geometry {
        height: stacked.height() / bh,
        ..probe
    };
    reconstruct(stacked, &geometry, readout)?.write_pbm(path)?;
    Ok(path.display().to_string())
}

fn graph_tool(g: GraphCommand) -> Result<Outcome> {
    let v = match g {
        GraphCommand::Coloring(a) => value(&strong_edge_coloring(&input::graph(&a.graph)?)?)?,
        GraphCommand::Matching(a) => value(&max_induced_matching(&input::graph(&a.graph)?)?)?,
        GraphCommand::Cover(a) => value(&biclique_cover(&input::graph(&a.graph)?)?)?,
        GraphCommand::StrongCover(a) => value(&strong_biclique_covering(&input::graph(&a.graph)?)?)?,
        GraphCommand::Hom { graph, target } => {
            let (g, h) = (input::graph(&graph)?, input::graph(&target)?);
            match find_onto_edge_homomorphism(&g, &h)? {
                Some(sigma) => json!({ "sigma": sigma }),
                None => return Ok(Outcome::Rejected(json!({ "sigma": null }))),
            }
        }
    };
    Ok(Outcome::Done(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_numbers() {
        assert_eq!(parse_model("3").unwrap(), BasisModel::Vcs3);
        assert!(parse_model("4").is_err());
        assert!(parse_model("x").is_err());
    }

    #[test]
    fn command_line_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        assert!(Cli::try_parse_from(["vcs", "stack", "--out", "x.pbm"]).is_err());
        assert!(Cli::try_parse_from(["vcs", "bound", "--structure", "s.json", "--model", "2"]).is_ok());
    }
}
