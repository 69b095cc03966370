//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use penrose_cli::commands::projected_vertices;
use penrose_cli::document::{parse, Tiles};
use penrose_core::exact::{gn_sign, GoldenNumber, PHI_F64};
use penrose_core::penrose::{check_legal, paired, vertex_atlas, TileKind, VertexStar};
use penrose_core::pentagrid::{generate_tiling, index_sum_check, is_regular, within_disk, Pentagrid};
use penrose_core::robinson::HalfKind;
use penrose_core::robinson::{compose, counts, inflate, seed, HalfTile, Patch, Seed};
use penrose_core::tilingspace::{
    bratteli_dimensions, count_admissible, fibonacci, is_admissible, sequence_to_tower_rooted, tails_equivalent,
    tower_to_sequence, towers, trace_weights, IndexSequence,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEEDS: [Seed; 4] = [Seed::Acute, Seed::Obtuse, Seed::Sun, Seed::Star];

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn penrose(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_penrose")).args(args).output().map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("penrose {}: {}", args.join(" "), String::from_utf8_lossy(&o.stderr)));
    }
    Ok(o.stdout)
}

fn penrose_text(args: &[&str]) -> Result<String, String> {
    String::from_utf8(penrose(args)?).map_err(|e| e.to_string())
}

fn within(elapsed: Duration, limit_s: u64) -> Check {
    ensure!(elapsed.as_secs_f64() < limit_s as f64, "took {elapsed:.2?}, limit {limit_s} s");
    Ok(format!("{elapsed:.2?}"))
}

fn lattice_dense_dichotomy() -> Check {
    let start = Instant::now();
    let probe = |n: u32, b: u32| -> Result<f64, String> {
        let out = penrose_text(&["probe", "--n", &n.to_string(), "--box", &b.to_string()])?;
        out.trim().parse::<f64>().map_err(|e| e.to_string())
    };
    for n in [3, 4, 6] {
        for b in 1..=4 {
            let v = probe(n, b)?;
            ensure!((v - 1.0).abs() <= 1e-9, "n={n} box={b}: {v}");
        }
    }
    let one = probe(5, 1)?;
    ensure!((one - 0.3819660).abs() <= 1e-6, "n=5 box=1: {one}");
    let three = probe(5, 3)?;
    ensure!(three < one, "n=5 box=3: {three} not below {one}");
    let t = within(start.elapsed(), 10)?;
    Ok(format!("n=5: {one:.9} at box 1, {three:.9} at box 3; {t}"))
}

fn census() -> Check {
    let start = Instant::now();
    let mut p = seed(Seed::Acute);
    let mut prev = counts(&p);
    for n in 0..12 {
        p = inflate(&p, 1);
        let c = counts(&p);
        ensure!(
            (c.acute, c.obtuse) == (2 * prev.acute + prev.obtuse, prev.acute + prev.obtuse),
            "step {n}: {prev:?} -> {c:?}"
        );
        prev = c;
    }
    let ratio = prev.acute as f64 / prev.obtuse as f64;
    ensure!((ratio - 1.6180339887).abs() < 1e-4, "A12/O12 = {ratio}");
    let t = within(start.elapsed(), 5)?;
    Ok(format!("(A,O)_12 = ({}, {}), ratio {ratio:.10}; {t}", prev.acute, prev.obtuse))
}

fn centroid(t: &HalfTile) -> (f64, f64) {
    let vs = t.vertices().map(|v| v.embed());
    ((vs[0].0 + vs[1].0 + vs[2].0) / 3.0, (vs[0].1 + vs[1].1 + vs[2].1) / 3.0)
}

fn composition_inverse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let mut sizes = 0;
    for trial in 0..50 {
        let s = SEEDS[trial % 4];
        let level = rng.gen_range(0..=6);
        let big = inflate(&seed(s), level);
        let c = centroid(&big.tiles()[rng.gen_range(0..big.len())]);
        let radius = rng.gen_range(0.5..6.0);
        let p = Patch::new(
            big.tiles().iter().copied().filter(|t| {
                let q = centroid(t);
                (q.0 - c.0).hypot(q.1 - c.1) <= radius
            }),
            big.scale_exponent(),
        );
        sizes += p.len();
        let back = compose(&inflate(&p, 1)).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(back.patch == p, "trial {trial}: {s} level {level} does not compose back");
        ensure!(back.dropped.is_empty(), "trial {trial}: {} fragments left over", back.dropped.len());
    }
    Ok(format!("50 patches, {sizes} tiles in total"))
}

fn exactness() -> Check {
    let mut vertices = 0usize;
    let mut worst = 0.0f64;
    for s in SEEDS {
        let mut p = seed(s);
        for n in 0..=8 {
            // Integer coordinates survive the document format unchanged.
            let doc = penrose_cli::document::TilingDocument::from_halves(
                &p,
                penrose_cli::document::Generator::new("acceptance", []),
            );
            let back = parse(&penrose_cli::document::serialize(&doc)).map_err(|e| e.to_string())?;
            ensure!(back.tiles() == Ok(Tiles::Halves(p.clone())), "{s} level {n}: document round trip");
            vertices += 3 * p.len();
            let q = inflate(&p, 1);
            let rel = (q.area() / (PHI_F64 * PHI_F64 * p.area()) - 1.0).abs();
            worst = worst.max(rel);
            ensure!(rel < 1e-9, "{s} level {n}: relative area error {rel:e}");
            p = q;
        }
    }
    Ok(format!("{vertices} integer vertices; worst relative area error {worst:.1e}"))
}

/// Corner angles in units of 36°, from the tip counterclockwise.
fn angles(kind: TileKind) -> [u32; 4] {
    match kind {
        TileKind::Kite => [2, 2, 4, 2],
        TileKind::Dart => [2, 1, 6, 1],
    }
}

fn black(kind: TileKind, corner: usize) -> bool {
    match kind {
        TileKind::Kite => corner % 2 == 0,
        TileKind::Dart => corner % 2 == 1,
    }
}

type Wedge = (TileKind, usize);

/// (long?, far end black?) for the two sides of a corner, counterclockwise.
fn sides(w: Wedge) -> [(bool, bool); 2] {
    let (kind, i) = w;
    let long = |e: usize| e % 4 == 0 || e % 4 == 3;
    [(long(i), black(kind, (i + 1) % 4)), (long(i + 3), black(kind, (i + 3) % 4))]
}

fn glue(a: Wedge, b: Wedge) -> bool {
    let far = angles(a.0)[(a.1 + 3) % 4] + angles(b.0)[(b.1 + 1) % 4];
    sides(a)[1] == sides(b)[0] && far <= 10
}

fn canonical(fan: &[Wedge]) -> Vec<Wedge> {
    let mirror = |w: Wedge| (w.0, [0, 3, 2, 1][w.1]);
    let n = fan.len();
    let reversed: Vec<Wedge> = fan.iter().rev().map(|&w| mirror(w)).collect();
    [fan.to_vec(), reversed]
        .iter()
        .flat_map(|seq| (0..n).map(move |s| (0..n).map(|k| seq[(s + k) % n]).collect::<Vec<_>>()))
        .min()
        .unwrap()
}

/// Independent assembly of every vertex fan from single corners.
fn brute_force_fans() -> BTreeSet<Vec<Wedge>> {
    let wedges: Vec<Wedge> =
        [TileKind::Kite, TileKind::Dart].into_iter().flat_map(|k| (0..4).map(move |i| (k, i))).collect();
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<Wedge>> = wedges.iter().map(|&w| vec![w]).collect();
    while let Some(fan) = stack.pop() {
        let total: u32 = fan.iter().map(|&(k, i)| angles(k)[i]).sum();
        let last = *fan.last().unwrap();
        if total == 10 {
            if glue(last, fan[0]) {
                out.insert(canonical(&fan));
            }
            continue;
        }
        for &w in &wedges {
            if total + angles(w.0)[w.1] <= 10 && black(w.0, w.1) == black(fan[0].0, fan[0].1) && glue(last, w) {
                let mut next = fan.clone();
                next.push(w);
                stack.push(next);
            }
        }
    }
    out
}

fn legality_and_atlas() -> Check {
    let start = Instant::now();
    let mut p = seed(Seed::Acute);
    let mut tiles = 0;
    for n in 0..=12 {
        let marked = paired(&p);
        let verdict = check_legal(&marked);
        ensure!(verdict.is_legal(), "level {n}: {} violations", verdict.violations.len());
        tiles += marked.len();
        p = inflate(&p, 1);
    }
    let atlases: Vec<BTreeSet<VertexStar>> = (5..=7).map(vertex_atlas).collect();
    ensure!(
        atlases.iter().all(|a| a.len() == 7),
        "atlas sizes {:?}",
        atlases.iter().map(|a| a.len()).collect::<Vec<_>>()
    );
    ensure!(atlases[0] == atlases[1] && atlases[1] == atlases[2], "atlas changes between levels 5 and 7");
    let found: BTreeSet<Vec<Wedge>> = atlases[0]
        .iter()
        .map(|s| canonical(&s.entries().iter().map(|e| (e.kind, e.corner_index())).collect::<Vec<_>>()))
        .collect();
    let oracle = brute_force_fans();
    ensure!(found == oracle, "atlas differs from the {} brute-force fans", oracle.len());
    let t = within(start.elapsed(), 60)?;
    Ok(format!("{tiles} kites/darts legal; 7 stars at levels 5-7, equal to the brute-force fans; {t}"))
}

fn random_sum_zero(rng: &mut ChaCha8Rng, radius: f64) -> Pentagrid {
    loop {
        let mut gamma = [Ratio::from_integer(0); 5];
        for g in gamma.iter_mut().take(4) {
            *g = Ratio::new(rng.gen_range(-500..500), 1000);
        }
        gamma[4] = -gamma[..4].iter().sum::<Ratio<i64>>();
        let g = Pentagrid::new(gamma, true).expect("offsets sum to zero");
        if is_regular(&g, radius).is_regular() {
            return g;
        }
    }
}

fn pentagrid_validity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e7a);
    let mut interior = 0;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for trial in 0..25 {
        let g = random_sum_zero(&mut rng, 20.0);
        let p = generate_tiling(&g, 8.0).map_err(|e| e.to_string())?;
        let audit = p.edge_audit();
        ensure!(audit.defects.is_empty(), "grid {trial} ({g}): {} edge defects", audit.defects.len());
        interior += audit.interior_edges;
        ensure!(p.rhombi().iter().all(|r| r.sides_unit()), "grid {trial}: a side is not a unit vector");
        ensure!(index_sum_check(&p) == Ok(true), "grid {trial}: index sum outside 1..=4");
        let (thick, thin) = generate_tiling(&g, 20.0).map_err(|e| e.to_string())?.shape_counts();
        let ratio = thick as f64 / thin as f64;
        ensure!((ratio / PHI_F64 - 1.0).abs() < 0.05, "grid {trial}: thick/thin = {ratio}");
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    Ok(format!("25 grids, {interior} interior edges shared twice; thick/thin in [{lo:.4}, {hi:.4}]"))
}

fn gamma_arg(g: &Pentagrid) -> String {
    g.gamma().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

fn projection_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e0);
    let mut total = 0;
    for trial in 0..10 {
        let g = random_sum_zero(&mut rng, 8.0);
        let gamma = gamma_arg(&g);
        let doc = parse(&penrose_text(&["pentagrid", "--gamma", &gamma, "--sum-zero", "--radius", "8"])?)
            .map_err(|e| e.to_string())?;
        let Ok(Tiles::Rhombi(rhombi)) = doc.tiles() else {
            return Err(format!("grid {trial}: pentagrid output is not a rhombus document"));
        };
        let dual: BTreeSet<_> = rhombi.iter().flat_map(|r| r.vertices()).filter(|v| within_disk(v, 6.0)).collect();
        let projected = projected_vertices(&penrose_text(&[
            "project",
            "--gamma",
            &gamma,
            "--sum-zero",
            "--box",
            "8",
            "--radius",
            "6",
        ])?)
        .map_err(|e| e.to_string())?;
        let n = projected.len();
        let projected: BTreeSet<_> = projected.into_iter().collect();
        ensure!(n == projected.len(), "grid {trial}: repeated projected points");
        ensure!(dual == projected, "grid {trial} ({g}): {} dual vs {} projected vertices", dual.len(), projected.len());
        total += dual.len();
    }
    let t = within(start.elapsed(), 60)?;
    Ok(format!("10 grids, {total} vertices identical; {t}"))
}

fn random_admissible(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(len);
    for _ in 0..len {
        let bit = if out.last() == Some(&1) { 0 } else { rng.gen_range(0..2) };
        out.push(bit);
    }
    out
}

fn sequence_space() -> Check {
    for n in 0..=20u32 {
        let c = count_admissible(n).map_err(|e| e.to_string())?;
        ensure!(c == fibonacci(n + 2), "count_admissible({n}) = {c}");
        if n <= 12 {
            let brute = (0u32..1 << n).filter(|x| x & (x >> 1) == 0).count() as u64;
            ensure!(c == brute, "count_admissible({n}) = {c}, brute force {brute}");
        }
    }
    let mut checked = 0;
    for depth in 0..=6 {
        for root in [HalfKind::Acute, HalfKind::Obtuse] {
            for t in towers(root, depth) {
                let bits = tower_to_sequence(&t).map_err(|e| e.to_string())?;
                ensure!(is_admissible(&bits), "{t:?} encodes to an inadmissible string");
                ensure!(sequence_to_tower_rooted(&bits, root).as_ref() == Ok(&t), "{t:?} does not round trip");
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xde45e);
    for trial in 0..100 {
        let plen = rng.gen_range(0..=12);
        let p = random_admissible(&mut rng, plen);
        let ylen = rng.gen_range(0..10);
        let yprefix = random_admissible(&mut rng, ylen);
        let y = loop {
            let len = rng.gen_range(0..6);
            if let Ok(y) = IndexSequence::new(yprefix.clone(), random_admissible(&mut rng, len)) {
                break y;
            }
        };
        let x = y.with_prefix(&p).map_err(|e| format!("pair {trial}: {e}"))?;
        ensure!(x.is_admissible(), "pair {trial}: result not admissible");
        ensure!(x.prefix()[..p.len()] == p[..], "pair {trial}: prefix not kept");
        ensure!(tails_equivalent(&x, &y), "pair {trial}: tails differ");
        ensure!(
            (p.len() + 1..p.len() + 80).all(|n| x.bit(n) == y.bit(n)),
            "pair {trial}: bits differ after the prefix"
        );
    }
    Ok(format!("counts to n=20, {checked} towers round trip, 100 density pairs"))
}

fn trace_data() -> Check {
    for n in 0..=90u32 {
        let (da, d_o) = bratteli_dimensions(n).map_err(|e| e.to_string())?;
        let (wa, wo) = trace_weights(n).map_err(|e| e.to_string())?;
        ensure!(gn_sign(&wa) == 1 && gn_sign(&wo) == 1, "n={n}: weights not positive");
        let total = &(&GoldenNumber::from_ints(da as i64, 0) * &wa) + &(&GoldenNumber::from_ints(d_o as i64, 0) * &wo);
        ensure!(total == GoldenNumber::one(), "n={n}: total {total}");
    }
    Ok("exact for n = 0..=90".into())
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).display().to_string();
    let mut docs = Vec::new();
    let mut svgs = Vec::new();
    for run in 0..2 {
        let json = p(&format!("sun{run}.json"));
        let svg = p(&format!("sun{run}.svg"));
        penrose(&["inflate", "--seed", "sun", "--levels", "6", "--pair", "--out", &json])?;
        penrose(&["render", "--in", &json, "--out", &svg])?;
        docs.push(std::fs::read(&json).map_err(|e| e.to_string())?);
        svgs.push(std::fs::read(&svg).map_err(|e| e.to_string())?);
    }
    ensure!(docs[0] == docs[1], "JSON differs between runs");
    ensure!(svgs[0] == svgs[1], "SVG differs between runs");
    Ok(format!("{} JSON bytes, {} SVG bytes identical", docs[0].len(), svgs[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("lattice/dense dichotomy", lattice_dense_dichotomy),
        ("substitution census", census),
        ("composition inverse", composition_inverse),
        ("exactness", exactness),
        ("legality and atlas", legality_and_atlas),
        ("pentagrid validity", pentagrid_validity),
        ("pentagrid/projection equivalence", projection_equivalence),
        ("sequence space", sequence_space),
        ("trace data", trace_data),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
