//! Kites and darts with matching-rule decorations.
//!
//! Both shapes are stored with counterclockwise vertices `[v0, v1, v2, v3]`
//! where `v0` is the 72° tip between the two long edges and `v2` the vertex
//! between the two short edges (144° on a kite, 216° on a dart). Edges
//! `v0v1` and `v3v0` are long (φ), `v1v2` and `v2v3` short (1).
//!
//! The decoration is a two-colouring of vertices. Every edge joins a black
//! and a white vertex, so it carries an arrow; two tiles may share an edge
//! only when their symbols and arrows agree.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::exact::{golden_sign, orientation, Cyclotomic5};
use crate::robinson::{self, Chirality, HalfKind, HalfTile, Patch, Seed};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PenroseError {
    #[error("motif does not occur in the patch")]
    MotifAbsent,
    #[error("motif is empty")]
    EmptyMotif,
    #[error("halves do not form a {0:?}")]
    NotATile(TileKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    Kite,
    Dart,
}

impl TileKind {
    /// Interior angles at v0..v3 in units of 36°.
    pub fn corner_angles(self) -> [u8; 4] {
        match self {
            TileKind::Kite => [2, 2, 4, 2],
            TileKind::Dart => [2, 1, 6, 1],
        }
    }

    /// Length of the axis v0v2 as a Z[ζ₅] multiplier of the unit.
    fn axis_length(self) -> Cyclotomic5 {
        match self {
            TileKind::Kite => Cyclotomic5::PHI,
            TileKind::Dart => Cyclotomic5::ONE,
        }
    }

    fn canonical_vertices(self) -> [Cyclotomic5; 4] {
        let u = Cyclotomic5::unit36;
        let phi = Cyclotomic5::PHI;
        [Cyclotomic5::ZERO, phi * u(-1), self.axis_length(), phi * u(1)]
    }

    fn half_kind(self) -> HalfKind {
        match self {
            TileKind::Kite => HalfKind::Acute,
            TileKind::Dart => HalfKind::Obtuse,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColor {
    Black,
    White,
}

/// Colour of corner `v0`, `v1`/`v3`, `v2` for each kind.
pub fn corner_color(kind: TileKind, corner: usize) -> VertexColor {
    use VertexColor::*;
    let table = match kind {
        TileKind::Kite => [Black, White, Black],
        TileKind::Dart => [White, Black, White],
    };
    match corner {
        0 => table[0],
        1 | 3 => table[1],
        2 => table[2],
        _ => panic!("corner index out of range"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Long edge.
    Alpha,
    /// Short edge.
    Beta,
}

/// Decoration of one edge: its symbol and the vertex its arrow points at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel {
    pub symbol: Symbol,
    pub head: Cyclotomic5,
}

/// Placement of a canonical tile: v ↦ translation + ω^rotation · (reflected ? conj v : v),
/// with ω = e^{iπ/5}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pose {
    pub rotation: u8,
    pub reflected: bool,
    pub translation: Cyclotomic5,
}

impl Pose {
    pub fn apply(&self, v: Cyclotomic5) -> Cyclotomic5 {
        let v = if self.reflected { v.reflect() } else { v };
        self.translation + Cyclotomic5::unit36(self.rotation as i64) * v
    }
}

/// A kite or dart in the plane.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedTile {
    vertices: [Cyclotomic5; 4],
    kind: TileKind,
    pose: Pose,
}

impl fmt::Debug for MarkedTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.kind, self.vertices)
    }
}

impl MarkedTile {
    /// Both shapes and their decorations are mirror-symmetric about the axis,
    /// so a reflected pose is stored as the equivalent unreflected one.
    pub fn new(kind: TileKind, pose: Pose) -> MarkedTile {
        let pose = Pose { reflected: false, ..pose };
        let vertices = kind.canonical_vertices().map(|v| pose.apply(v));
        MarkedTile { vertices, kind, pose }
    }

    /// Recognizes a tile from its tip `v0` and the opposite vertex `v2`.
    pub fn from_axis(kind: TileKind, tip: Cyclotomic5, opposite: Cyclotomic5) -> Option<MarkedTile> {
        let d = opposite - tip;
        (0..10u8)
            .find(|&r| kind.axis_length() * Cyclotomic5::unit36(r as i64) == d)
            .map(|rotation| MarkedTile::new(kind, Pose { rotation, reflected: false, translation: tip }))
    }

    /// Assembles a tile from a right and a left half sharing an axis.
    pub fn from_halves(kind: TileKind, a: &HalfTile, b: &HalfTile) -> Result<MarkedTile, PenroseError> {
        let err = PenroseError::NotATile(kind);
        if a.kind() != kind.half_kind() || b.kind() != kind.half_kind() || a.chirality() == b.chirality() {
            return Err(err);
        }
        if a.apex() != b.apex() || a.axis_end() != b.axis_end() {
            return Err(err);
        }
        let (tip, opposite) = match kind {
            TileKind::Kite => (a.apex(), a.axis_end()),
            TileKind::Dart => (a.axis_end(), a.apex()),
        };
        let t = MarkedTile::from_axis(kind, tip, opposite).ok_or(err.clone())?;
        let mut outer = [a.outer_end(), b.outer_end()];
        outer.sort();
        let mut mine = [t.vertices[1], t.vertices[3]];
        mine.sort();
        if outer == mine {
            Ok(t)
        } else {
            Err(err)
        }
    }

    pub fn kind(&self) -> TileKind {
        self.kind
    }

    pub fn pose(&self) -> Pose {
        self.pose
    }

    /// Counterclockwise vertices, tip first.
    pub fn vertices(&self) -> [Cyclotomic5; 4] {
        self.vertices
    }

    pub fn transformed(&self, g: &Isometry) -> MarkedTile {
        let [v0, _, v2, _] = self.vertices;
        MarkedTile::from_axis(self.kind, g.apply(v0), g.apply(v2)).expect("isometries preserve tiles")
    }

    /// The two Robinson halves, right half first.
    pub fn halves(&self) -> [HalfTile; 2] {
        let [v0, v1, v2, v3] = self.vertices;
        let (apex, axis) = match self.kind {
            TileKind::Kite => (v0, v2),
            TileKind::Dart => (v2, v0),
        };
        let k = self.kind.half_kind();
        let h1 = HalfTile::new(k, apex, axis, v1).expect("tile half is nondegenerate");
        let h3 = HalfTile::new(k, apex, axis, v3).expect("tile half is nondegenerate");
        if h1.chirality() == Chirality::Right {
            [h1, h3]
        } else {
            [h3, h1]
        }
    }

    pub fn color(&self, corner: usize) -> VertexColor {
        corner_color(self.kind, corner)
    }

    /// Edge `i` runs from `v_i` to `v_{i+1}`.
    pub fn edge(&self, i: usize) -> (Cyclotomic5, Cyclotomic5) {
        (self.vertices[i % 4], self.vertices[(i + 1) % 4])
    }

    pub fn edge_symbol(i: usize) -> Symbol {
        match i % 4 {
            0 | 3 => Symbol::Alpha,
            _ => Symbol::Beta,
        }
    }

    pub fn edge_labels(&self) -> [EdgeLabel; 4] {
        std::array::from_fn(|i| {
            let (a, b) = self.edge(i);
            let head = if self.color(i) == VertexColor::Black { a } else { b };
            EdgeLabel { symbol: MarkedTile::edge_symbol(i), head }
        })
    }

    pub fn centroid(&self) -> (f64, f64) {
        let mut c = (0.0, 0.0);
        for v in self.vertices {
            let (x, y) = v.embed();
            c.0 += x / 4.0;
            c.1 += y / 4.0;
        }
        c
    }

    fn triangles(&self) -> [[Cyclotomic5; 3]; 2] {
        let [v0, v1, v2, v3] = self.vertices;
        [[v0, v1, v2], [v0, v2, v3]]
    }

    /// Identity key independent of pose encoding.
    fn key(&self) -> (TileKind, [Cyclotomic5; 4]) {
        (self.kind, self.vertices)
    }
}

/// Element of the symmetry group D10 ⋉ Z[ζ₅]: p ↦ t + ω^r · (reflected ? conj p : p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    pub rotation: u8,
    pub reflected: bool,
    pub translation: Cyclotomic5,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { rotation: 0, reflected: false, translation: Cyclotomic5::ZERO };

    pub fn apply(&self, p: Cyclotomic5) -> Cyclotomic5 {
        Pose { rotation: self.rotation, reflected: self.reflected, translation: self.translation }.apply(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Interiors of two tiles intersect.
    Overlap { a: usize, b: usize },
    /// A vertex of tile `b` lies inside an edge of tile `a`.
    VertexOnEdge { a: usize, edge: usize, b: usize },
    /// Two tiles share an edge whose decorations disagree.
    LabelMismatch { a: usize, b: usize, edge: usize },
}

impl Violation {
    pub fn tiles(&self) -> (usize, usize) {
        match *self {
            Violation::Overlap { a, b }
            | Violation::VertexOnEdge { a, b, .. }
            | Violation::LabelMismatch { a, b, .. } => (a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_legal(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Open-interior overlap test for two counterclockwise triangles by
/// separating axes; exact.
fn triangles_overlap(t: &[Cyclotomic5; 3], u: &[Cyclotomic5; 3]) -> bool {
    fn separated(t: &[Cyclotomic5; 3], u: &[Cyclotomic5; 3]) -> bool {
        (0..3).any(|i| {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            u.iter().all(|p| orientation(&a, &b, p) <= 0)
        })
    }
    !separated(t, u) && !separated(u, t)
}

/// True when `p` lies strictly between `a` and `b` on the segment.
fn strictly_inside_segment(a: &Cyclotomic5, b: &Cyclotomic5, p: &Cyclotomic5) -> bool {
    if p == a || p == b || orientation(a, b, p) != 0 {
        return false;
    }
    let (x, y) = (*p - *a).twice_dot(&(*b - *a));
    let (u, v) = (*p - *b).twice_dot(&(*a - *b));
    golden_sign(x, y) > 0 && golden_sign(u, v) > 0
}

struct Bounds {
    min: (f64, f64),
    max: (f64, f64),
}

fn bounds(vs: &[Cyclotomic5]) -> Bounds {
    let mut b = Bounds { min: (f64::INFINITY, f64::INFINITY), max: (f64::NEG_INFINITY, f64::NEG_INFINITY) };
    for v in vs {
        let (x, y) = v.embed();
        b.min = (b.min.0.min(x), b.min.1.min(y));
        b.max = (b.max.0.max(x), b.max.1.max(y));
    }
    b
}

/// Candidate pairs (i < j) whose bounding boxes come within `slack` of each
/// other. Floating point only prunes; every decision is made exactly.
fn candidate_pairs(boxes: &[Bounds], slack: f64) -> Vec<(usize, usize)> {
    const CELL: f64 = 2.0;
    let cell = |x: f64| (x / CELL).floor() as i64;
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, b) in boxes.iter().enumerate() {
        for gx in cell(b.min.0 - slack)..=cell(b.max.0 + slack) {
            for gy in cell(b.min.1 - slack)..=cell(b.max.1 + slack) {
                grid.entry((gx, gy)).or_default().push(i);
            }
        }
    }
    let mut pairs = HashSet::new();
    for bucket in grid.values() {
        for (x, &i) in bucket.iter().enumerate() {
            for &j in &bucket[x + 1..] {
                let (a, b) = (&boxes[i], &boxes[j]);
                if a.min.0 <= b.max.0 + slack
                    && b.min.0 <= a.max.0 + slack
                    && a.min.1 <= b.max.1 + slack
                    && b.min.1 <= a.max.1 + slack
                {
                    pairs.insert((i.min(j), i.max(j)));
                }
            }
        }
    }
    let mut pairs: Vec<_> = pairs.into_iter().collect();
    pairs.sort();
    pairs
}

/// Checks interior-disjointness, the edge-to-edge condition and the matching
/// rule on every shared edge. Returns all violations.
pub fn check_legal(tiles: &[MarkedTile]) -> Verdict {
    let boxes: Vec<Bounds> = tiles.iter().map(|t| bounds(&t.vertices)).collect();
    let mut violations = Vec::new();
    for (i, j) in candidate_pairs(&boxes, 1e-6) {
        let (a, b) = (&tiles[i], &tiles[j]);
        if a.triangles().iter().any(|s| b.triangles().iter().any(|t| triangles_overlap(s, t))) {
            violations.push(Violation::Overlap { a: i, b: j });
        }
        for (x, y, xi, yi) in [(a, b, i, j), (b, a, j, i)] {
            for e in 0..4 {
                let (p, q) = x.edge(e);
                if y.vertices.iter().any(|v| strictly_inside_segment(&p, &q, v)) {
                    violations.push(Violation::VertexOnEdge { a: xi, edge: e, b: yi });
                }
            }
        }
        let la = a.edge_labels();
        let lb = b.edge_labels();
        for e in 0..4 {
            let (p, q) = a.edge(e);
            for f in 0..4 {
                let (r, s) = b.edge(f);
                if (p == s && q == r) || (p == r && q == s) {
                    if la[e] != lb[f] {
                        violations.push(Violation::LabelMismatch { a: i, b: j, edge: e });
                    }
                }
            }
        }
    }
    Verdict { violations }
}

/// Corner of a tile as seen from a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarEntry {
    pub kind: TileKind,
    /// 0 for the tip, 1 for a flank (side or wing), 2 for the opposite vertex.
    pub corner: u8,
    /// For flank corners: whether the wedge starts at the long edge when
    /// swept counterclockwise. Always false for tip and opposite corners.
    pub reflected: bool,
}

impl StarEntry {
    pub fn from_corner(kind: TileKind, corner_index: usize) -> StarEntry {
        match corner_index % 4 {
            0 => StarEntry { kind, corner: 0, reflected: false },
            1 => StarEntry { kind, corner: 1, reflected: false },
            2 => StarEntry { kind, corner: 2, reflected: false },
            _ => StarEntry { kind, corner: 1, reflected: true },
        }
    }

    /// Index of this corner in the tile's vertex list.
    pub fn corner_index(&self) -> usize {
        match (self.corner, self.reflected) {
            (1, true) => 3,
            (c, _) => c as usize,
        }
    }

    pub fn angle(&self) -> u8 {
        self.kind.corner_angles()[self.corner_index()]
    }

    pub fn color(&self) -> VertexColor {
        corner_color(self.kind, self.corner_index())
    }

    fn mirrored(&self) -> StarEntry {
        StarEntry { reflected: self.corner == 1 && !self.reflected, ..*self }
    }

    /// (symbol, colour of the far end) of the edge where the wedge starts
    /// (counterclockwise), and of the edge where it ends.
    pub fn boundary_edges(&self) -> [(Symbol, VertexColor); 2] {
        let i = self.corner_index();
        let start = (MarkedTile::edge_symbol(i), corner_color(self.kind, (i + 1) % 4));
        let end = (MarkedTile::edge_symbol(i + 3), corner_color(self.kind, (i + 3) % 4));
        [start, end]
    }
}

/// The tiles around a vertex, counterclockwise, canonical up to rotation and
/// reflection of the whole configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexStar {
    entries: Vec<StarEntry>,
}

impl VertexStar {
    /// Canonicalizes a counterclockwise cyclic sequence.
    pub fn new(entries: Vec<StarEntry>) -> VertexStar {
        let n = entries.len();
        let mirrored: Vec<StarEntry> = entries.iter().rev().map(StarEntry::mirrored).collect();
        let mut best: Option<Vec<StarEntry>> = None;
        for seq in [&entries, &mirrored] {
            for s in 0..n.max(1) {
                let rot: Vec<StarEntry> = (0..n).map(|k| seq[(s + k) % n]).collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        VertexStar { entries: best.unwrap_or_default() }
    }

    pub fn entries(&self) -> &[StarEntry] {
        &self.entries
    }

    pub fn total_angle(&self) -> u32 {
        self.entries.iter().map(|e| e.angle() as u32).sum()
    }

    /// Angles sum to 360° and every pair of neighbouring wedges agrees on the
    /// shared edge; all corners carry the same colour.
    pub fn is_consistent(&self) -> bool {
        let n = self.entries.len();
        if n == 0 || self.total_angle() != 10 {
            return false;
        }
        let c = self.entries[0].color();
        self.entries.iter().all(|e| e.color() == c)
            && (0..n).all(|k| self.entries[k].boundary_edges()[1] == self.entries[(k + 1) % n].boundary_edges()[0])
    }

    /// Conventional name of the configuration.
    pub fn name(&self) -> &'static str {
        let kites = self.entries.iter().filter(|e| e.kind == TileKind::Kite).count();
        let darts = self.entries.len() - kites;
        match (kites, darts) {
            (5, 0) => "sun",
            (0, 5) => "star",
            (2, 1) => "ace",
            (2, 2) => "deuce",
            (3, 2) => "jack",
            (4, 1) => "queen",
            (2, 3) => "king",
            _ => "unnamed",
        }
    }
}

/// Direction index d with `w − v = length · ω^d`, if `w − v` lies on a 36° ray.
fn direction(v: Cyclotomic5, w: Cyclotomic5) -> Option<u8> {
    let d = w - v;
    (0..10u8).find(|&k| {
        let u = Cyclotomic5::unit36(k as i64);
        d == u || d == u * Cyclotomic5::PHI
    })
}

/// Complete vertex stars of a tile list: every vertex whose incident corners
/// fill 360°.
pub fn vertex_stars(tiles: &[MarkedTile]) -> Vec<(Cyclotomic5, VertexStar)> {
    let mut around: HashMap<Cyclotomic5, Vec<(u8, StarEntry)>> = HashMap::new();
    for t in tiles {
        for i in 0..4 {
            let v = t.vertices[i];
            let start = direction(v, t.vertices[(i + 1) % 4]).expect("tile edges lie on 36° rays");
            around.entry(v).or_default().push((start, StarEntry::from_corner(t.kind, i)));
        }
    }
    let mut out: Vec<(Cyclotomic5, VertexStar)> = around
        .into_iter()
        .filter_map(|(v, mut wedges)| {
            let total: u32 = wedges.iter().map(|(_, e)| e.angle() as u32).sum();
            if total != 10 {
                return None;
            }
            wedges.sort();
            Some((v, VertexStar::new(wedges.into_iter().map(|(_, e)| e).collect())))
        })
        .collect();
    out.sort();
    out
}

/// All complete vertex stars in paired inflations of the given seeds.
pub fn vertex_atlas_of(seeds: &[Seed], levels: u32) -> BTreeSet<VertexStar> {
    seeds
        .iter()
        .flat_map(|&s| {
            let tiles = robinson::pair_halves(&robinson::inflate(&robinson::seed(s), levels)).tiles;
            vertex_stars(&tiles).into_iter().map(|(_, star)| star)
        })
        .collect()
}

/// Vertex atlas from the sun and star seeds.
pub fn vertex_atlas(levels: u32) -> BTreeSet<VertexStar> {
    vertex_atlas_of(&[Seed::Sun, Seed::Star], levels)
}

/// The tiles around one vertex.
pub fn star_tiles(tiles: &[MarkedTile], vertex: Cyclotomic5) -> Vec<MarkedTile> {
    let mut out: Vec<MarkedTile> = tiles.iter().filter(|t| t.vertices.contains(&vertex)).copied().collect();
    out.sort();
    out
}

/// All isometries g of D10 ⋉ Z[ζ₅] with g·motif ⊆ haystack, sorted.
pub fn find_motif(haystack: &[MarkedTile], motif: &[MarkedTile]) -> Result<Vec<Isometry>, PenroseError> {
    let anchor = motif.first().ok_or(PenroseError::EmptyMotif)?;
    let present: HashSet<(TileKind, [Cyclotomic5; 4])> = haystack.iter().map(MarkedTile::key).collect();
    let mut found = BTreeSet::new();
    for target in haystack.iter().filter(|t| t.kind == anchor.kind) {
        for rotation in 0..10u8 {
            for reflected in [false, true] {
                let linear = Isometry { rotation, reflected, translation: Cyclotomic5::ZERO };
                let [a0, _, a2, _] = anchor.vertices;
                // Tip and axis determine the tile, so match them.
                let (m0, m2) = (linear.apply(a0), linear.apply(a2));
                let [t0, _, t2, _] = target.vertices;
                if m2 - m0 != t2 - t0 {
                    continue;
                }
                let g = Isometry { translation: t0 - m0, ..linear };
                if motif.iter().all(|m| present.contains(&m.transformed(&g).key())) {
                    found.insert(g);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Translations t ≠ 0 with t + patch ⊆ patch. Candidates are differences of
/// tips of congruent, equally oriented tiles.
pub fn translational_periods(tiles: &[MarkedTile]) -> Vec<Cyclotomic5> {
    let present: HashSet<(TileKind, [Cyclotomic5; 4])> = tiles.iter().map(MarkedTile::key).collect();
    let Some(first) = tiles.first() else { return Vec::new() };
    let mut out = Vec::new();
    for t in tiles.iter().filter(|t| t.kind == first.kind && t.pose.rotation == first.pose.rotation) {
        let shift = t.vertices[0] - first.vertices[0];
        if shift.is_zero() {
            continue;
        }
        let g = Isometry { translation: shift, ..Isometry::IDENTITY };
        if tiles.iter().all(|m| present.contains(&m.transformed(&g).key())) {
            out.push(shift);
        }
    }
    out.sort();
    out
}

/// Outcome of a recurrence-radius measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Recurrence {
    /// Smallest R such that every sampled centroid farther than R from the
    /// patch boundary has an occurrence centre within R.
    pub radius: f64,
    pub occurrences: usize,
    /// Centroids considered.
    pub samples: usize,
    /// Centroids whose boundary distance exceeds the returned radius.
    pub interior_samples: usize,
}

fn dist_to_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (x, y) = (a.0 + t * dx - p.0, a.1 + t * dy - p.1);
    (x * x + y * y).sqrt()
}

/// Measures how far one must look from any interior point of the patch to
/// find a copy of the motif. Distances are in edge units of the patch.
pub fn recurrence_radius(patch: &[MarkedTile], motif: &[MarkedTile]) -> Result<Recurrence, PenroseError> {
    let occurrences = find_motif(patch, motif)?;
    if occurrences.is_empty() {
        return Err(PenroseError::MotifAbsent);
    }
    let centres: Vec<(f64, f64)> = occurrences
        .iter()
        .map(|g| {
            let n = motif.len() as f64;
            motif.iter().map(|m| m.transformed(g).centroid()).fold((0.0, 0.0), |c, p| (c.0 + p.0 / n, c.1 + p.1 / n))
        })
        .collect();

    // Boundary: edges used by exactly one tile.
    let mut edge_use: HashMap<(Cyclotomic5, Cyclotomic5), usize> = HashMap::new();
    for t in patch {
        for e in 0..4 {
            let (a, b) = t.edge(e);
            *edge_use.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let boundary: Vec<((f64, f64), (f64, f64))> =
        edge_use.iter().filter(|(_, &n)| n == 1).map(|((a, b), _)| (a.embed(), b.embed())).collect();

    let mut samples: Vec<(f64, f64)> = patch
        .iter()
        .map(|t| {
            let c = t.centroid();
            let depth = boundary.iter().map(|&(a, b)| dist_to_segment(c, a, b)).fold(f64::INFINITY, f64::min);
            let nearest = centres
                .iter()
                .map(|o| ((o.0 - c.0).powi(2) + (o.1 - c.1).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            (depth, nearest)
        })
        .collect();
    // Sort by depth, deepest first; R works when every sample deeper than R
    // has its nearest occurrence within R.
    samples.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut candidates: Vec<f64> = samples.iter().flat_map(|&(d, n)| [d, n]).chain([0.0]).collect();
    candidates.sort_by(f64::total_cmp);
    for &r in &candidates {
        let deeper = samples.iter().take_while(|(d, _)| *d > r);
        if deeper.clone().all(|&(_, n)| n <= r) {
            return Ok(Recurrence {
                radius: r,
                occurrences: occurrences.len(),
                samples: samples.len(),
                interior_samples: deeper.count(),
            });
        }
    }
    unreachable!("the largest candidate always satisfies the condition")
}

/// Builds the kites and darts of a paired inflation.
pub fn paired_inflation(seed: Seed, levels: u32) -> Vec<MarkedTile> {
    robinson::pair_halves(&robinson::inflate(&robinson::seed(seed), levels)).tiles
}

/// Convenience for callers holding a half-tile patch.
pub fn paired(p: &Patch) -> Vec<MarkedTile> {
    robinson::pair_halves(p).tiles
}
