//! The versioned JSON tiling document.
//!
//! Geometry is stored exactly: every vertex is the coefficient vector
//! `[c0, c1, c2, c3]` of `c0 + c1ζ + c2ζ² + c3ζ³` with ζ = e^{2πi/5}. The
//! real size of a patch is its stored size times φ^scale_exponent.

use std::collections::BTreeMap;

use penrose_core::exact::Cyclotomic5;
use penrose_core::penrose::{MarkedTile, TileKind};
use penrose_core::pentagrid::{Rhombus, RhombusPatch, Shape};
use penrose_core::robinson::{Chirality, HalfKind, HalfTile, Patch};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format_version {0} (this build reads version {FORMAT_VERSION})")]
    UnknownVersion(String),
    #[error("tile {tile}: unknown kind {found:?}")]
    MalformedKind { tile: usize, found: String },
    #[error("tile {tile}, vertex {vertex}: coordinates must be four integers")]
    NonIntegerVertex { tile: usize, vertex: usize },
    #[error("{location}: missing or malformed field `{field}`")]
    BadField { location: String, field: &'static str },
    #[error("tile {tile}: {reason}")]
    InvalidTile { tile: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Acute,
    Obtuse,
    Kite,
    Dart,
    Rhombus,
}

impl Kind {
    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "acute" => Kind::Acute,
            "obtuse" => Kind::Obtuse,
            "kite" => Kind::Kite,
            "dart" => Kind::Dart,
            "rhombus" => Kind::Rhombus,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TileRecord {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chirality: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    pub vertices: Vec<[i64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_index: Option<[i64; 5]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
}

impl Generator {
    pub fn new<'a>(command: &str, parameters: impl IntoIterator<Item = (&'a str, String)>) -> Generator {
        Generator {
            command: command.to_string(),
            parameters: parameters.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingDocument {
    pub format_version: u64,
    pub generator: Generator,
    pub tiles: Vec<TileRecord>,
    pub scale_exponent: i32,
}

/// Geometry recovered from a document.
#[derive(Debug, Clone, PartialEq)]
pub enum Tiles {
    Halves(Patch),
    Marked { tiles: Vec<MarkedTile>, scale_exponent: i32 },
    Rhombi(Vec<Rhombus>),
}

fn chirality_name(c: Chirality) -> String {
    match c {
        Chirality::Left => "left",
        Chirality::Right => "right",
    }
    .to_string()
}

fn shape_name(s: Shape) -> String {
    match s {
        Shape::Thick => "thick",
        Shape::Thin => "thin",
    }
    .to_string()
}

fn coords(vs: &[Cyclotomic5]) -> Vec<[i64; 4]> {
    vs.iter().map(Cyclotomic5::coeffs).collect()
}

impl TilingDocument {
    fn with_tiles(generator: Generator, mut tiles: Vec<TileRecord>, scale_exponent: i32) -> TilingDocument {
        tiles.sort_by(|a, b| a.vertices.cmp(&b.vertices).then_with(|| a.cmp(b)));
        TilingDocument { format_version: FORMAT_VERSION, generator, tiles, scale_exponent }
    }

    pub fn from_halves(p: &Patch, generator: Generator) -> TilingDocument {
        let tiles = p
            .tiles()
            .iter()
            .map(|t| TileRecord {
                kind: match t.kind() {
                    HalfKind::Acute => Kind::Acute,
                    HalfKind::Obtuse => Kind::Obtuse,
                },
                chirality: Some(chirality_name(t.chirality())),
                shape: None,
                vertices: coords(&t.vertices()),
                grid_index: None,
                families: None,
            })
            .collect();
        TilingDocument::with_tiles(generator, tiles, p.scale_exponent())
    }

    pub fn from_marked(tiles: &[MarkedTile], scale_exponent: i32, generator: Generator) -> TilingDocument {
        let tiles = tiles
            .iter()
            .map(|t| TileRecord {
                kind: match t.kind() {
                    TileKind::Kite => Kind::Kite,
                    TileKind::Dart => Kind::Dart,
                },
                chirality: None,
                shape: None,
                vertices: coords(&t.vertices()),
                grid_index: None,
                families: None,
            })
            .collect();
        TilingDocument::with_tiles(generator, tiles, scale_exponent)
    }

    pub fn from_rhombi(p: &RhombusPatch, generator: Generator) -> TilingDocument {
        let tiles = p
            .rhombi()
            .iter()
            .map(|t| {
                let (r, s) = t.families();
                TileRecord {
                    kind: Kind::Rhombus,
                    chirality: None,
                    shape: Some(shape_name(t.shape())),
                    vertices: coords(&t.vertices()),
                    grid_index: Some(t.grid_index()),
                    families: Some([r, s]),
                }
            })
            .collect();
        TilingDocument::with_tiles(generator, tiles, 0)
    }

    /// Rebuilds the exact tiles, checking each record against its kind.
    /// A document must not mix half-tiles, kites/darts and rhombi.
    pub fn tiles(&self) -> Result<Tiles, DocumentError> {
        let family = |k: Kind| match k {
            Kind::Acute | Kind::Obtuse => 0,
            Kind::Kite | Kind::Dart => 1,
            Kind::Rhombus => 2,
        };
        if let Some(first) = self.tiles.first() {
            if let Some(i) = self.tiles.iter().position(|t| family(t.kind) != family(first.kind)) {
                return Err(DocumentError::InvalidTile { tile: i, reason: "mixes tile families".into() });
            }
        }
        let invalid = |tile: usize, reason: &str| DocumentError::InvalidTile { tile, reason: reason.to_string() };
        let kind = self.tiles.first().map(|t| family(t.kind)).unwrap_or(0);
        match kind {
            0 => {
                let mut halves = Vec::with_capacity(self.tiles.len());
                for (i, rec) in self.tiles.iter().enumerate() {
                    let [a, b, c] = three(rec).ok_or_else(|| invalid(i, "a half-tile has three vertices"))?;
                    let k = if rec.kind == Kind::Acute { HalfKind::Acute } else { HalfKind::Obtuse };
                    let t = HalfTile::new(k, a, b, c).map_err(|e| invalid(i, &e.to_string()))?;
                    if rec.chirality.as_deref() != Some(chirality_name(t.chirality()).as_str()) {
                        return Err(invalid(i, "chirality does not match the vertex orientation"));
                    }
                    t.check_shape(0).map_err(|e| invalid(i, &e.to_string()))?;
                    halves.push(t);
                }
                Ok(Tiles::Halves(Patch::new(halves, self.scale_exponent)))
            }
            1 => {
                let mut tiles = Vec::with_capacity(self.tiles.len());
                for (i, rec) in self.tiles.iter().enumerate() {
                    let vs: Vec<Cyclotomic5> = rec.vertices.iter().map(|&c| Cyclotomic5::from_coeffs(c)).collect();
                    if vs.len() != 4 {
                        return Err(invalid(i, "a kite or dart has four vertices"));
                    }
                    let k = if rec.kind == Kind::Kite { TileKind::Kite } else { TileKind::Dart };
                    let t = MarkedTile::from_axis(k, vs[0], vs[2])
                        .filter(|t| t.vertices().as_slice() == vs.as_slice())
                        .ok_or_else(|| invalid(i, "vertices do not form a unit tile of this kind"))?;
                    tiles.push(t);
                }
                Ok(Tiles::Marked { tiles, scale_exponent: self.scale_exponent })
            }
            _ => {
                let mut rhombi = Vec::with_capacity(self.tiles.len());
                for (i, rec) in self.tiles.iter().enumerate() {
                    let [r, s] = rec.families.ok_or_else(|| invalid(i, "rhombus without families"))?;
                    let index = rec.grid_index.ok_or_else(|| invalid(i, "rhombus without grid_index"))?;
                    let t = Rhombus::from_index(r, s, index).map_err(|e| invalid(i, &e.to_string()))?;
                    if coords(&t.vertices()) != rec.vertices || Some(shape_name(t.shape())) != rec.shape {
                        return Err(invalid(i, "vertices or shape disagree with grid_index"));
                    }
                    rhombi.push(t);
                }
                Ok(Tiles::Rhombi(rhombi))
            }
        }
    }
}

fn three(rec: &TileRecord) -> Option<[Cyclotomic5; 3]> {
    match rec.vertices.as_slice() {
        [a, b, c] => Some([*a, *b, *c].map(Cyclotomic5::from_coeffs)),
        _ => None,
    }
}

/// Canonical bytes: indented JSON with one tile per line and a trailing
/// newline.
pub fn serialize(doc: &TilingDocument) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"format_version\": {},\n", doc.format_version));
    let generator = serde_json::to_string_pretty(&doc.generator).expect("documents always serialize");
    out.push_str(&format!("  \"generator\": {},\n", generator.replace('\n', "\n  ")));
    if doc.tiles.is_empty() {
        out.push_str("  \"tiles\": [],\n");
    } else {
        out.push_str("  \"tiles\": [\n");
        for (i, t) in doc.tiles.iter().enumerate() {
            let sep = if i + 1 < doc.tiles.len() { "," } else { "" };
            let line = serde_json::to_string(t).expect("documents always serialize");
            out.push_str(&format!("    {line}{sep}\n"));
        }
        out.push_str("  ],\n");
    }
    out.push_str(&format!("  \"scale_exponent\": {}\n}}\n", doc.scale_exponent));
    out
}

fn field<'a>(obj: &'a Value, name: &'static str, location: &str) -> Result<&'a Value, DocumentError> {
    obj.get(name).ok_or_else(|| DocumentError::BadField { location: location.to_string(), field: name })
}

fn bad(location: &str, field: &'static str) -> DocumentError {
    DocumentError::BadField { location: location.to_string(), field }
}

fn int_array<const N: usize>(v: &Value) -> Option<[i64; N]> {
    let arr = v.as_array()?;
    if arr.len() != N {
        return None;
    }
    let mut out = [0i64; N];
    for (o, x) in out.iter_mut().zip(arr) {
        // as_i64 is None for floats, including integral ones like 1.0.
        *o = x.as_i64()?;
    }
    Some(out)
}

pub fn parse(text: &str) -> Result<TilingDocument, DocumentError> {
    let root: Value = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = "document";
    let version = field(&root, "format_version", top)?;
    if version.as_u64() != Some(FORMAT_VERSION) {
        return Err(DocumentError::UnknownVersion(version.to_string()));
    }

    let g = field(&root, "generator", top)?;
    let command = field(g, "command", "generator")?.as_str().ok_or_else(|| bad("generator", "command"))?;
    let params = field(g, "parameters", "generator")?.as_object().ok_or_else(|| bad("generator", "parameters"))?;
    let mut parameters = BTreeMap::new();
    for (k, v) in params {
        let v = v.as_str().ok_or_else(|| bad("generator.parameters", "value"))?;
        parameters.insert(k.clone(), v.to_string());
    }
    let generator = Generator { command: command.to_string(), parameters };

    let scale_exponent = field(&root, "scale_exponent", top)?
        .as_i64()
        .and_then(|s| i32::try_from(s).ok())
        .ok_or_else(|| bad(top, "scale_exponent"))?;

    let raw_tiles = field(&root, "tiles", top)?.as_array().ok_or_else(|| bad(top, "tiles"))?;
    let mut tiles = Vec::with_capacity(raw_tiles.len());
    for (i, t) in raw_tiles.iter().enumerate() {
        let loc = format!("tile {i}");
        let kind_str = field(t, "kind", &loc)?.as_str().ok_or_else(|| bad(&loc, "kind"))?;
        let kind = Kind::parse(kind_str)
            .ok_or_else(|| DocumentError::MalformedKind { tile: i, found: kind_str.to_string() })?;
        let raw_vertices = field(t, "vertices", &loc)?.as_array().ok_or_else(|| bad(&loc, "vertices"))?;
        let vertices = raw_vertices
            .iter()
            .enumerate()
            .map(|(j, v)| int_array::<4>(v).ok_or(DocumentError::NonIntegerVertex { tile: i, vertex: j }))
            .collect::<Result<Vec<_>, _>>()?;
        let text_field = |name: &'static str| -> Result<Option<String>, DocumentError> {
            t.get(name).map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad(&loc, name))).transpose()
        };
        let chirality = text_field("chirality")?;
        let shape = text_field("shape")?;
        let grid_index =
            t.get("grid_index").map(|v| int_array::<5>(v).ok_or_else(|| bad(&loc, "grid_index"))).transpose()?;
        let families = t
            .get("families")
            .map(|v| {
                int_array::<2>(v)
                    .filter(|f| f.iter().all(|&x| (0..5).contains(&x)))
                    .map(|f| f.map(|x| x as usize))
                    .ok_or_else(|| bad(&loc, "families"))
            })
            .transpose()?;
        tiles.push(TileRecord { kind, chirality, shape, vertices, grid_index, families });
    }
    Ok(TilingDocument { format_version: FORMAT_VERSION, generator, tiles, scale_exponent })
}
