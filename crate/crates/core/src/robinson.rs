//! Robinson half-tiles: seeds, inflation, composition and pairing into kites and darts.
//!
//! A half-tile is stored as `[apex, axis_end, outer_end]`. The axis edge
//! `apex–axis_end` is the one shared with the mirror half that completes the
//! kite or dart. For an acute half (half-kite) the apex is the 36° kite tip
//! and the axis end is the 144° kite vertex; for an obtuse half (half-dart)
//! the apex is the 108° half of the dart's reflex vertex and the axis end is
//! the dart tip. Chirality is the orientation of that triple: counterclockwise
//! is `Right`, clockwise is `Left`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::exact::{orientation, Cyclotomic5, GoldenNumber};
use crate::penrose::{MarkedTile, TileKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RobinsonError {
    #[error("unknown seed `{0}` (expected acute, obtuse, sun or star)")]
    UnknownSeed(String),
    #[error("tile {tile:?} is claimed by more than one parent")]
    NoComposition { tile: HalfTile },
    #[error("degenerate half-tile: vertices are collinear")]
    Degenerate,
    #[error("side lengths do not match a {0:?} half-tile at scale φ^{1}")]
    WrongShape(HalfKind, i32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfKind {
    /// Half-kite, angles 36°–72°–72°.
    Acute,
    /// Half-dart, angles 36°–36°–108°.
    Obtuse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub fn mirror(self) -> Chirality {
        match self {
            Chirality::Left => Chirality::Right,
            Chirality::Right => Chirality::Left,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfTile {
    kind: HalfKind,
    chirality: Chirality,
    vertices: [Cyclotomic5; 3],
}

impl fmt::Debug for HalfTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}{:?}", self.kind, self.chirality, self.vertices)
    }
}

impl HalfTile {
    /// Builds a half-tile from `[apex, axis_end, outer_end]`; chirality follows
    /// from the orientation of the triple.
    pub fn new(
        kind: HalfKind,
        apex: Cyclotomic5,
        axis_end: Cyclotomic5,
        outer_end: Cyclotomic5,
    ) -> Result<HalfTile, RobinsonError> {
        let chirality = match orientation(&apex, &axis_end, &outer_end) {
            1 => Chirality::Right,
            -1 => Chirality::Left,
            _ => return Err(RobinsonError::Degenerate),
        };
        Ok(HalfTile { kind, chirality, vertices: [apex, axis_end, outer_end] })
    }

    fn make(kind: HalfKind, apex: Cyclotomic5, axis_end: Cyclotomic5, outer_end: Cyclotomic5) -> HalfTile {
        HalfTile::new(kind, apex, axis_end, outer_end).expect("substitution produced a degenerate tile")
    }

    pub fn kind(&self) -> HalfKind {
        self.kind
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn vertices(&self) -> [Cyclotomic5; 3] {
        self.vertices
    }

    pub fn apex(&self) -> Cyclotomic5 {
        self.vertices[0]
    }

    pub fn axis_end(&self) -> Cyclotomic5 {
        self.vertices[1]
    }

    pub fn outer_end(&self) -> Cyclotomic5 {
        self.vertices[2]
    }

    /// The mirror half sharing this tile's axis edge.
    pub fn mirror_partner(&self) -> HalfTile {
        let [x, y, z] = self.vertices;
        HalfTile::make(self.kind, x, y, reflect_point(x, y, z))
    }

    /// Twice the signed area divided by sin 36°, as integer coefficients of a + bφ.
    pub fn twice_area_over_sin36(&self) -> (i128, i128) {
        let [x, y, z] = self.vertices;
        let (a, b) = (y - x).cross_over_sin36(&(z - x));
        if self.chirality == Chirality::Right {
            (a, b)
        } else {
            (-a, -b)
        }
    }

    /// Checks side lengths against the kind for edge unit φ^m.
    pub fn check_shape(&self, m: i32) -> Result<(), RobinsonError> {
        let [x, y, z] = self.vertices;
        let s2 = GoldenNumber::phi_pow(2 * m);
        let long2 = &s2 * &GoldenNumber::phi_pow(2);
        let (axis, outer, base) = ((y - x).norm_sq(), (z - x).norm_sq(), (z - y).norm_sq());
        let ok = match self.kind {
            HalfKind::Acute => axis == long2 && outer == long2 && base == s2,
            HalfKind::Obtuse => axis == s2 && outer == s2 && base == long2,
        };
        if ok {
            Ok(())
        } else {
            Err(RobinsonError::WrongShape(self.kind, m))
        }
    }

    pub fn scaled_by_phi(&self) -> HalfTile {
        let [x, y, z] = self.vertices;
        HalfTile { vertices: [x.phi_times(), y.phi_times(), z.phi_times()], ..*self }
    }

    pub fn scaled_by_phi_inverse(&self) -> HalfTile {
        let p = Cyclotomic5::PHI_INVERSE;
        let [x, y, z] = self.vertices;
        HalfTile { vertices: [x * p, y * p, z * p], ..*self }
    }

    /// Subdivides a tile whose edges are already φ times the unit.
    ///
    /// Acute `[x, y, z]` yields two acute halves forming a kite with apex `z`
    /// and axis `z–r`, plus an obtuse half at `x`; obtuse yields one acute and
    /// one obtuse half. Every cut sits at `v + (w − v)(φ − 1)` on its side.
    pub fn subdivide_scaled(&self) -> Vec<HalfTile> {
        let [x, y, z] = self.vertices;
        let cut = |v: Cyclotomic5, w: Cyclotomic5| v + (w - v) * Cyclotomic5::PHI_INVERSE;
        match self.kind {
            HalfKind::Acute => {
                let p = cut(z, x);
                let r = cut(x, y);
                vec![
                    HalfTile::make(HalfKind::Acute, z, r, y),
                    HalfTile::make(HalfKind::Acute, z, r, p),
                    HalfTile::make(HalfKind::Obtuse, p, x, r),
                ]
            }
            HalfKind::Obtuse => {
                let q = cut(y, z);
                vec![HalfTile::make(HalfKind::Acute, y, x, q), HalfTile::make(HalfKind::Obtuse, q, z, x)]
            }
        }
    }

    /// The children of this tile after one inflation (coordinates scaled by φ).
    pub fn children(&self) -> Vec<HalfTile> {
        self.scaled_by_phi().subdivide_scaled()
    }

    /// The acute and the obtuse parent (in unscaled coordinates) that would
    /// each produce this obtuse tile as their obtuse child.
    fn candidate_parents(&self) -> [HalfTile; 2] {
        debug_assert_eq!(self.kind, HalfKind::Obtuse);
        let [a, b, c] = self.vertices;
        let phi2 = Cyclotomic5::PHI * Cyclotomic5::PHI;
        // As [p, x, r] under an acute parent.
        let from_acute = {
            let (p, x, r) = (a, b, c);
            HalfTile::make(HalfKind::Acute, x, x + (r - x) * Cyclotomic5::PHI, x + (p - x) * phi2)
        };
        // As [q, z, x] under an obtuse parent.
        let from_obtuse = {
            let (q, z, x) = (a, b, c);
            HalfTile::make(HalfKind::Obtuse, x, z + (q - z) * phi2, z)
        };
        [from_acute.scaled_by_phi_inverse(), from_obtuse.scaled_by_phi_inverse()]
    }
}

/// Inverse of a squared length φ^{2k} as an element of Z[ζ₅].
fn unit_inverse_of_norm(n: &GoldenNumber) -> Option<Cyclotomic5> {
    let k = (n.to_f64().ln() / (2.0 * crate::exact::PHI_F64.ln())).round() as i32;
    if GoldenNumber::phi_pow(2 * k) != *n {
        return None;
    }
    let step = if k >= 0 { Cyclotomic5::PHI_INVERSE } else { Cyclotomic5::PHI };
    Some((0..2 * k.unsigned_abs()).fold(Cyclotomic5::ONE, |u, _| u * step))
}

/// A finite collection of half-tiles with common edge unit φ^scale_exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Patch {
    tiles: Vec<HalfTile>,
    scale_exponent: i32,
}

impl Patch {
    /// Canonicalizes: tiles sorted by vertex coordinates, duplicates removed.
    pub fn new(tiles: impl IntoIterator<Item = HalfTile>, scale_exponent: i32) -> Patch {
        let set: BTreeSet<HalfTile> = tiles.into_iter().collect();
        let mut tiles: Vec<HalfTile> = set.into_iter().collect();
        tiles.sort_by(|a, b| (a.vertices, a.kind, a.chirality).cmp(&(b.vertices, b.kind, b.chirality)));
        Patch { tiles, scale_exponent }
    }

    pub fn empty() -> Patch {
        Patch { tiles: Vec::new(), scale_exponent: 0 }
    }

    pub fn tiles(&self) -> &[HalfTile] {
        &self.tiles
    }

    pub fn scale_exponent(&self) -> i32 {
        self.scale_exponent
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, t: &HalfTile) -> bool {
        self.tiles
            .binary_search_by(|a| (a.vertices, a.kind, a.chirality).cmp(&(t.vertices, t.kind, t.chirality)))
            .is_ok()
    }

    /// Exact twice-area divided by sin 36°, summed over tiles, as a + bφ.
    pub fn twice_area_over_sin36(&self) -> (i128, i128) {
        self.tiles.iter().fold((0, 0), |(a, b), t| {
            let (x, y) = t.twice_area_over_sin36();
            (a + x, b + y)
        })
    }

    /// Total area in the patch's own coordinates, embedded once at the end.
    pub fn area(&self) -> f64 {
        let (a, b) = self.twice_area_over_sin36();
        let s36 = (std::f64::consts::PI / 5.0).sin();
        (a as f64 + b as f64 * crate::exact::PHI_F64) * s36 / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Acute,
    Obtuse,
    Sun,
    Star,
}

impl std::str::FromStr for Seed {
    type Err = RobinsonError;
    fn from_str(s: &str) -> Result<Seed, RobinsonError> {
        match s {
            "acute" => Ok(Seed::Acute),
            "obtuse" => Ok(Seed::Obtuse),
            "sun" => Ok(Seed::Sun),
            "star" => Ok(Seed::Star),
            other => Err(RobinsonError::UnknownSeed(other.to_string())),
        }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Seed::Acute => "acute",
            Seed::Obtuse => "obtuse",
            Seed::Sun => "sun",
            Seed::Star => "star",
        })
    }
}

/// Seed patch by name.
pub fn seed_patch(name: &str) -> Result<Patch, RobinsonError> {
    Ok(seed(name.parse()?))
}

/// Canonical seed patches centred at the origin, edge unit 1.
pub fn seed(which: Seed) -> Patch {
    let u = Cyclotomic5::unit36;
    let phi = Cyclotomic5::PHI;
    let o = Cyclotomic5::ZERO;
    let tiles = match which {
        Seed::Acute => vec![HalfTile::make(HalfKind::Acute, o, phi, phi * u(1))],
        Seed::Obtuse => vec![HalfTile::make(HalfKind::Obtuse, o, Cyclotomic5::ONE, u(3))],
        Seed::Sun => (0..5)
            .flat_map(|k| {
                let axis = phi * u(2 * k);
                [
                    HalfTile::make(HalfKind::Acute, o, axis, phi * u(2 * k + 1)),
                    HalfTile::make(HalfKind::Acute, o, axis, phi * u(2 * k - 1)),
                ]
            })
            .collect(),
        Seed::Star => (0..5)
            .flat_map(|k| {
                let reflex = u(2 * k);
                [
                    HalfTile::make(HalfKind::Obtuse, reflex, o, phi * u(2 * k + 1)),
                    HalfTile::make(HalfKind::Obtuse, reflex, o, phi * u(2 * k - 1)),
                ]
            })
            .collect(),
    };
    Patch::new(tiles, 0)
}

/// Applies `levels` rounds of scale-by-φ-and-subdivide.
///
/// Tiles keep unit size while the patch grows; the scale exponent drops by
/// one per level so that φ^scale_exponent times the coordinates gives the
/// original frame.
pub fn inflate(p: &Patch, levels: u32) -> Patch {
    let mut tiles = p.tiles.clone();
    for _ in 0..levels {
        tiles = tiles.iter().flat_map(HalfTile::children).collect();
    }
    Patch::new(tiles, p.scale_exponent - levels as i32)
}

/// Result of composing a patch: the recovered parents and the fragments that
/// did not complete any parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub patch: Patch,
    pub dropped: Vec<HalfTile>,
}

/// Inverse of one inflation step.
///
/// Every parent contains exactly one obtuse child, so parents are recovered
/// from the obtuse tiles. An obtuse tile next to a complete kite is either
/// the obtuse child of an acute parent (which also owns the kite) or the
/// obtuse child of an obtuse parent whose mirror supplies the other kite
/// half. The second case is recognized by the mirror image of the obtuse
/// tile across the kite axis, which cannot coexist with an acute parent.
pub fn compose(p: &Patch) -> Result<Composition, RobinsonError> {
    let mut parents = Vec::new();
    let mut owner: HashMap<HalfTile, usize> = HashMap::new();
    for t in p.tiles.iter().filter(|t| t.kind == HalfKind::Obtuse) {
        let [from_acute, from_obtuse] = t.candidate_parents();
        let complete = |parent: &HalfTile| parent.children().iter().all(|k| p.contains(k));
        let kite_half = from_obtuse.children()[0];
        let mirror_obtuse = reflect_tile(t, kite_half.apex(), kite_half.axis_end());
        let parent = if complete(&from_acute) && !p.contains(&mirror_obtuse) {
            from_acute
        } else if complete(&from_obtuse) {
            from_obtuse
        } else {
            continue;
        };
        let id = parents.len();
        for k in parent.children() {
            if owner.insert(k, id).is_some() {
                return Err(RobinsonError::NoComposition { tile: k });
            }
        }
        parents.push(parent);
    }
    let dropped = p.tiles.iter().filter(|t| !owner.contains_key(t)).copied().collect();
    Ok(Composition { patch: Patch::new(parents, p.scale_exponent + 1), dropped })
}

/// Mirror image of a point across the line through `a` and `b`, where
/// |b − a| is a power of φ.
fn reflect_point(a: Cyclotomic5, b: Cyclotomic5, p: Cyclotomic5) -> Cyclotomic5 {
    let d = b - a;
    let inv = unit_inverse_of_norm(&d.norm_sq()).expect("segment length is a power of φ");
    a + d * d * (p - a).reflect() * inv
}

fn reflect_tile(t: &HalfTile, a: Cyclotomic5, b: Cyclotomic5) -> HalfTile {
    let [x, y, z] = t.vertices.map(|v| reflect_point(a, b, v));
    HalfTile::make(t.kind, x, y, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TileCounts {
    pub acute: u64,
    pub obtuse: u64,
}

pub fn counts(p: &Patch) -> TileCounts {
    let acute = p.tiles.iter().filter(|t| t.kind == HalfKind::Acute).count() as u64;
    TileCounts { acute, obtuse: p.tiles.len() as u64 - acute }
}

/// Kites and darts assembled from mirror pairs, plus any unpaired halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub tiles: Vec<MarkedTile>,
    pub unpaired: Vec<HalfTile>,
}

/// Pairs each half with the mirror half sharing its axis edge.
pub fn pair_halves(p: &Patch) -> Pairing {
    let mut by_axis: HashMap<(HalfKind, Cyclotomic5, Cyclotomic5), Vec<&HalfTile>> = HashMap::new();
    for t in &p.tiles {
        by_axis.entry((t.kind, t.apex(), t.axis_end())).or_default().push(t);
    }
    let mut tiles = Vec::new();
    let mut unpaired = Vec::new();
    for t in &p.tiles {
        let group = &by_axis[&(t.kind, t.apex(), t.axis_end())];
        let partner = group.iter().find(|o| o.chirality != t.chirality);
        match partner {
            Some(o) if group.len() == 2 => {
                if t.chirality == Chirality::Right {
                    let kind = match t.kind {
                        HalfKind::Acute => TileKind::Kite,
                        HalfKind::Obtuse => TileKind::Dart,
                    };
                    let tile = MarkedTile::from_halves(kind, t, o).expect("mirror halves always assemble into a tile");
                    tiles.push(tile);
                }
            }
            _ => unpaired.push(*t),
        }
    }
    tiles.sort();
    Pairing { tiles, unpaired }
}
