//! The subcommands, as plain functions from arguments to output text.

use num_rational::Ratio;
use penrose_core::exact::Cyclotomic5;
use penrose_core::penrose::{check_legal, vertex_atlas, StarEntry, TileKind, VertexStar};
use penrose_core::pentagrid::{
    cut_and_project, density_probe, generate_tiling, index_sum_check, is_regular, Pentagrid, PentagridError,
    Regularity, RhombusPatch,
};
use penrose_core::robinson::{inflate, pair_halves, seed, HalfKind, Seed};
use penrose_core::tilingspace::{bits_to_string, parse_bits, sequence_to_tower_rooted, tower_to_sequence, Tower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::document::{parse, serialize, Generator, Tiles, TilingDocument};
use crate::svg::{render_svg, RenderStyle};

pub const MAX_LEVELS: u32 = 12;
/// Perturbations are multiples of this unit.
const PERTURB_DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// The input was understood but failed a check; exit code 1.
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invalid(_) | CliError::Io { .. } => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid(msg.to_string())
}

/// Parses `3/7`, `-0.125` or `2` into an exact fraction.
pub fn parse_ratio(s: &str) -> CliResult<Ratio<i64>> {
    let bad = || usage(format!("not an exact number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer: i64 = digits
        .trim_start_matches('0')
        .parse()
        .or_else(|e| if digits.chars().all(|c| c == '0') { Ok(0) } else { Err(e) })
        .map_err(|_| bad())?;
    let denom = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    Ok(Ratio::new(if negative { -numer } else { numer }, denom))
}

pub fn parse_gamma(s: &str) -> CliResult<[Ratio<i64>; 5]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 5 {
        return Err(usage(format!("--gamma needs five comma-separated offsets, got {}", parts.len())));
    }
    let mut out = [Ratio::from_integer(0); 5];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_ratio(p)?;
    }
    Ok(out)
}

fn gamma_string(g: &[Ratio<i64>; 5]) -> String {
    g.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

fn pentagrid_error(e: PentagridError) -> CliError {
    match e {
        PentagridError::DenominatorTooLarge
        | PentagridError::SumNotZero(_)
        | PentagridError::ProbeOutOfRange { .. } => usage(e),
        _ => invalid(e),
    }
}

pub fn run_inflate(seed_name: &str, levels: u32, pair: bool) -> CliResult<String> {
    let which: Seed = seed_name.parse().map_err(usage)?;
    if levels > MAX_LEVELS {
        return Err(usage(format!("--levels must be at most {MAX_LEVELS}")));
    }
    let patch = inflate(&seed(which), levels);
    let mut params = vec![("seed", which.to_string()), ("levels", levels.to_string())];
    let doc = if pair {
        let pairing = pair_halves(&patch);
        params.push(("pair", "true".into()));
        params.push(("unpaired", pairing.unpaired.len().to_string()));
        TilingDocument::from_marked(&pairing.tiles, patch.scale_exponent(), Generator::new("inflate", params))
    } else {
        TilingDocument::from_halves(&patch, Generator::new("inflate", params))
    };
    Ok(serialize(&doc))
}

/// How the offsets given on the command line become a pentagrid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Subtract the mean so the offsets sum to zero.
    Mean,
    /// Require the given offsets to sum to zero exactly.
    SumZero,
    /// Use the offsets as given, without the sum constraint.
    Raw,
}

impl Normalization {
    fn name(self) -> &'static str {
        match self {
            Normalization::Mean => "mean",
            Normalization::SumZero => "sum-zero",
            Normalization::Raw => "raw",
        }
    }
}

/// A perturbation of γ₄ drawn from a seeded generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub epsilon: Ratio<i64>,
    pub rng_seed: u64,
}

pub fn build_pentagrid(
    gamma: [Ratio<i64>; 5],
    normalization: Normalization,
    perturb: Option<Perturbation>,
) -> CliResult<Pentagrid> {
    let mut gamma = gamma;
    if let Some(p) = perturb {
        if p.epsilon < Ratio::from_integer(0) || p.epsilon > Ratio::from_integer(1) {
            return Err(usage("--perturb must lie in [0, 1]"));
        }
        let bound = (p.epsilon * Ratio::from_integer(PERTURB_DENOMINATOR)).to_integer();
        let mut rng = ChaCha8Rng::seed_from_u64(p.rng_seed);
        let delta = Ratio::new(rng.gen_range(-bound..=bound), PERTURB_DENOMINATOR);
        gamma[4] += delta;
        if normalization == Normalization::SumZero {
            gamma[0] -= delta;
        }
    }
    match normalization {
        Normalization::Mean => Pentagrid::normalized(gamma),
        Normalization::SumZero => Pentagrid::new(gamma, true),
        Normalization::Raw => Pentagrid::new(gamma, false),
    }
    .map_err(pentagrid_error)
}

fn check_radius(radius: f64) -> CliResult<()> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(usage("--radius must be a positive number"))
    }
}

fn require_regular(g: &Pentagrid, radius: f64) -> CliResult<()> {
    match is_regular(g, radius) {
        Regularity::Regular => Ok(()),
        Regularity::Singular(points) => Err(invalid(format!(
            "pentagrid {g} is singular: {} point(s) on three or more lines, first near ({:.6}, {:.6})",
            points.len(),
            points[0].point.0,
            points[0].point.1
        ))),
    }
}

pub fn run_pentagrid(
    gamma: [Ratio<i64>; 5],
    radius: f64,
    normalization: Normalization,
    perturb: Option<Perturbation>,
) -> CliResult<String> {
    check_radius(radius)?;
    let g = build_pentagrid(gamma, normalization, perturb)?;
    require_regular(&g, radius)?;
    let patch = generate_tiling(&g, radius).map_err(pentagrid_error)?;
    let mut params = vec![
        ("gamma", gamma_string(g.gamma())),
        ("radius", radius.to_string()),
        ("normalization", normalization.name().to_string()),
        ("sum_zero", g.sum_zero().to_string()),
    ];
    if let Some(p) = perturb {
        params.push(("perturb", p.epsilon.to_string()));
        params.push(("rng_seed", p.rng_seed.to_string()));
    }
    Ok(serialize(&TilingDocument::from_rhombi(&patch, Generator::new("pentagrid", params))))
}

pub fn run_project(gamma: [Ratio<i64>; 5], normalization: Normalization, b: i64, radius: f64) -> CliResult<String> {
    check_radius(radius)?;
    if !(1..=64).contains(&b) {
        return Err(usage("--box must lie in 1..=64"));
    }
    let g = build_pentagrid(gamma, normalization, None)?;
    let mut points = cut_and_project(&g, b, radius);
    points.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
    let points: Vec<_> = points.iter().map(|(k, v)| json!({ "index": k, "vertex": v.coeffs() })).collect();
    let out = json!({
        "gamma": gamma_string(g.gamma()),
        "box": b,
        "radius": radius,
        "points": points,
    });
    let mut s = serde_json::to_string_pretty(&out).expect("json values serialize");
    s.push('\n');
    Ok(s)
}

/// Reads the vertex set out of a `project` output.
pub fn projected_vertices(text: &str) -> CliResult<Vec<Cyclotomic5>> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(invalid)?;
    let points = v["points"].as_array().ok_or_else(|| invalid("missing points"))?;
    points
        .iter()
        .map(|p| {
            let c: Vec<i64> = p["vertex"]
                .as_array()
                .and_then(|a| a.iter().map(|x| x.as_i64()).collect::<Option<Vec<_>>>())
                .filter(|a| a.len() == 4)
                .ok_or_else(|| invalid("malformed vertex"))?;
            Ok(Cyclotomic5::new(c[0], c[1], c[2], c[3]))
        })
        .collect()
}

fn parse_root(s: &str) -> CliResult<HalfKind> {
    match s {
        "acute" => Ok(HalfKind::Acute),
        "obtuse" => Ok(HalfKind::Obtuse),
        other => Err(usage(format!("unknown root kind {other:?} (expected acute or obtuse)"))),
    }
}

fn root_name(k: HalfKind) -> &'static str {
    match k {
        HalfKind::Acute => "acute",
        HalfKind::Obtuse => "obtuse",
    }
}

/// Formats a tower as `root:p0,p1,…` with `p0` the position of the smallest tile.
pub fn tower_string(t: &Tower) -> String {
    let positions: Vec<String> = t.positions.iter().map(u8::to_string).collect();
    format!("{}:{}", root_name(t.root), positions.join(","))
}

pub fn parse_tower(s: &str) -> CliResult<Tower> {
    let (root, rest) = s.split_once(':').ok_or_else(|| usage("tower must look like acute:0,2,1"))?;
    let root = parse_root(root)?;
    let positions = if rest.trim().is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|p| p.trim().parse::<u8>().map_err(|_| usage(format!("bad tower position {p:?}"))))
            .collect::<CliResult<Vec<u8>>>()?
    };
    Tower::new(root, positions).map_err(invalid)
}

pub fn run_decode(bits: &str, root: &str) -> CliResult<String> {
    let bits = parse_bits(bits).map_err(usage)?;
    let t = sequence_to_tower_rooted(&bits, parse_root(root)?).map_err(invalid)?;
    Ok(format!("{}\n", tower_string(&t)))
}

pub fn run_encode(tower: &str) -> CliResult<String> {
    let t = parse_tower(tower)?;
    let bits = tower_to_sequence(&t).map_err(invalid)?;
    Ok(format!("{}\n", bits_to_string(&bits)))
}

pub fn read_document(path: &str) -> CliResult<TilingDocument> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    parse(&text).map_err(|e| invalid(format!("{path}: {e}")))
}

/// Runs every applicable check and returns the report. Failures are
/// reported through `CliError::Invalid` carrying the same report.
pub fn run_verify(doc: &TilingDocument) -> CliResult<String> {
    let mut report = Vec::new();
    let mut ok = true;
    let tiles = doc.tiles().map_err(|e| invalid(format!("exactness: FAIL ({e})")))?;
    report.push(format!("exactness: ok ({} tiles, integer coordinates, exact shapes)", doc.tiles.len()));
    match tiles {
        Tiles::Halves(patch) => {
            let pairing = pair_halves(&patch);
            let verdict = check_legal(&pairing.tiles);
            ok &= verdict.is_legal();
            report.push(format!(
                "legality: {} ({} kites/darts, {} unpaired halves, {} violations)",
                if verdict.is_legal() { "ok" } else { "FAIL" },
                pairing.tiles.len(),
                pairing.unpaired.len(),
                verdict.violations.len()
            ));
        }
        Tiles::Marked { tiles, .. } => {
            let verdict = check_legal(&tiles);
            ok &= verdict.is_legal();
            report.push(format!(
                "legality: {} ({} violations)",
                if verdict.is_legal() { "ok" } else { "FAIL" },
                verdict.violations.len()
            ));
            for v in verdict.violations.iter().take(10) {
                report.push(format!("  {v:?}"));
            }
        }
        Tiles::Rhombi(rhombi) => {
            let params = &doc.generator.parameters;
            match (params.get("gamma"), params.get("radius"), params.get("sum_zero")) {
                (Some(gamma), Some(radius), Some(sum_zero)) => {
                    let gamma = parse_gamma(gamma).map_err(|e| invalid(format!("generator gamma: {e}")))?;
                    let radius: f64 = radius.parse().map_err(|_| invalid("generator radius is not a number"))?;
                    let g = Pentagrid::new(gamma, sum_zero == "true").map_err(invalid)?;
                    let patch = RhombusPatch::new(rhombi, g, radius);
                    let audit = patch.edge_audit();
                    ok &= audit.defects.is_empty();
                    report.push(format!(
                        "edges: {} ({} interior edges, {} defects)",
                        if audit.defects.is_empty() { "ok" } else { "FAIL" },
                        audit.interior_edges,
                        audit.defects.len()
                    ));
                    match index_sum_check(&patch) {
                        Ok(true) => report.push("index sums: ok (all in 1..=4)".into()),
                        Ok(false) => {
                            ok = false;
                            report.push("index sums: FAIL".into());
                        }
                        Err(PentagridError::SumConstraintUnset) => {
                            report.push("index sums: skipped (offsets not normalized)".into())
                        }
                        Err(e) => return Err(invalid(e)),
                    }
                }
                _ => report.push("edges: skipped (no pentagrid parameters in generator)".into()),
            }
        }
    }
    let mut text = report.join("\n");
    text.push('\n');
    if ok {
        Ok(text)
    } else {
        Err(CliError::Invalid(text))
    }
}

fn entry_code(e: &StarEntry) -> String {
    let k = match e.kind {
        TileKind::Kite => 'K',
        TileKind::Dart => 'D',
    };
    format!("{k}{}{}", e.corner, if e.reflected { "'" } else { "" })
}

fn star_line(s: &VertexStar) -> String {
    let codes: Vec<String> = s.entries().iter().map(entry_code).collect();
    format!("{:<6} {}", s.name(), codes.join(" "))
}

pub fn run_atlas(levels: u32) -> CliResult<String> {
    if levels > 10 {
        return Err(usage("--levels must be at most 10"));
    }
    let atlas = vertex_atlas(levels);
    let mut out = format!("{} vertex stars after {} levels\n", atlas.len(), levels);
    for s in &atlas {
        out.push_str(&star_line(s));
        out.push('\n');
    }
    Ok(out)
}

pub fn run_render(doc: &TilingDocument, decorations: bool) -> String {
    render_svg(doc, &RenderStyle { decorations, ..RenderStyle::default() })
}

pub fn run_probe(n: u32, b: u32) -> CliResult<String> {
    let v = density_probe(n, b).map_err(pentagrid_error)?;
    Ok(format!("{v:.12}\n"))
}
