//! De Bruijn's pentagrid, its dual rhombus tiling and the cut-and-project
//! description of the same vertex set.
//!
//! Family `j` consists of the lines `Re(z·ζ^{-j}) + γ_j ∈ Z`. Offsets are
//! rationals, and the value of any grid functional at the crossing of two
//! grid lines lies in Q(φ), so incidences and ceilings are decided exactly.
//! All values are kept as `(p + q·φ) / D` with `D` the common denominator of
//! the offsets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{golden_sign, Cyclotomic5, GoldenNumber, PHI_F64};

/// Largest common denominator of the offsets. Keeps every intermediate of
/// the exact tests well inside i128.
pub const MAX_DENOMINATOR: i64 = 1_000_000_000_000;

/// Tolerance used by [`grid_value`] on float input.
pub const ON_LINE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PentagridError {
    #[error("point lies on grid line {j} (value {value})")]
    OnGridLine { j: usize, value: f64 },
    #[error("line {third} passes through the crossing of lines ({r},{k_r}) and ({s},{k_s})")]
    SingularIntersection { r: usize, k_r: i64, s: usize, k_s: i64, third: usize },
    #[error("pentagrid is singular: {} point(s) on three or more lines", points.len())]
    SingularPentagrid { points: Vec<SingularPoint> },
    #[error("the sum-zero constraint is not set on this pentagrid")]
    SumConstraintUnset,
    #[error("offsets sum to {0}, not zero")]
    SumNotZero(Ratio<i64>),
    #[error("families must differ, got {0} twice")]
    SameFamily(usize),
    #[error("family index {0} out of range 0..5")]
    BadFamily(usize),
    #[error("common denominator of the offsets exceeds {MAX_DENOMINATOR}")]
    DenominatorTooLarge,
    #[error("probe needs 1 ≤ n ≤ 12 and 1 ≤ box ≤ 6, got n={n}, box={b}")]
    ProbeOutOfRange { n: u32, b: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pentagrid {
    gamma: [Ratio<i64>; 5],
    sum_zero: bool,
    denominator: i64,
    /// γ_j · D.
    scaled: [i128; 5],
}

impl Pentagrid {
    pub fn new(gamma: [Ratio<i64>; 5], sum_zero: bool) -> Result<Pentagrid, PentagridError> {
        let mut d: i64 = 1;
        for g in &gamma {
            d = d.lcm(g.denom());
            if d > MAX_DENOMINATOR {
                return Err(PentagridError::DenominatorTooLarge);
            }
        }
        if sum_zero {
            let total = gamma.iter().fold(Ratio::zero(), |acc: Ratio<i64>, g| acc + g);
            if !total.is_zero() {
                return Err(PentagridError::SumNotZero(total));
            }
        }
        let scaled = gamma.map(|g| *g.numer() as i128 * (d / g.denom()) as i128);
        Ok(Pentagrid { gamma, sum_zero, denominator: d, scaled })
    }

    /// Subtracts the mean of the offsets and sets the sum-zero flag.
    pub fn normalized(gamma: [Ratio<i64>; 5]) -> Result<Pentagrid, PentagridError> {
        let total = gamma.iter().fold(Ratio::zero(), |acc: Ratio<i64>, g| acc + g);
        let mean = total / 5;
        Pentagrid::new(gamma.map(|g| g - mean), true)
    }

    pub fn gamma(&self) -> &[Ratio<i64>; 5] {
        &self.gamma
    }

    pub fn sum_zero(&self) -> bool {
        self.sum_zero
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn gamma_f64(&self, j: usize) -> f64 {
        *self.gamma[j].numer() as f64 / *self.gamma[j].denom() as f64
    }

    /// The offset vector Σ γ_j ζ^j as a float point.
    pub fn offset_point(&self) -> (f64, f64) {
        (0..5).fold((0.0, 0.0), |(x, y), j| {
            let (c, s) = direction(j);
            (x + self.gamma_f64(j) * c, y + self.gamma_f64(j) * s)
        })
    }
}

impl fmt::Display for Pentagrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gamma.iter().map(|g| g.to_string()).collect();
        write!(f, "γ = ({})", parts.join(", "))
    }
}

/// Unit vector of family `j`, at angle 72°·j.
fn direction(j: usize) -> (f64, f64) {
    let t = std::f64::consts::TAU * j as f64 / 5.0;
    (t.cos(), t.sin())
}

/// Golden integer `a + b·φ`.
type Gi = (i128, i128);

fn gi_mul(x: Gi, y: Gi) -> Gi {
    (x.0 * y.0 + x.1 * y.1, x.0 * y.1 + x.1 * y.0 + x.1 * y.1)
}

/// sin(72°·m) / sin 36°.
fn sigma(m: i64) -> Gi {
    match m.rem_euclid(5) {
        0 => (0, 0),
        1 => (0, 1),
        2 => (1, 0),
        3 => (-1, 0),
        _ => (0, -1),
    }
}

/// 1/σ(m) for m ≢ 0.
fn sigma_inverse(m: i64) -> Gi {
    match m.rem_euclid(5) {
        1 => (-1, 1),
        2 => (1, 0),
        3 => (-1, 0),
        4 => (1, -1),
        _ => unreachable!("families coincide"),
    }
}

/// `⌈(p + qφ)/d⌉` together with whether the value is an integer.
fn ceil_scaled(v: Gi, d: i128) -> (i64, bool) {
    let (p, q) = v;
    if q == 0 && p % d == 0 {
        return ((p / d) as i64, true);
    }
    let estimate = ((p as f64 + q as f64 * PHI_F64) / d as f64).floor() as i128;
    let mut n = estimate;
    // Invariant after adjusting: n·d < p + qφ < (n+1)·d.
    while golden_sign(p - n * d, q) < 0 {
        n -= 1;
    }
    while golden_sign(p - (n + 1) * d, q) > 0 {
        n += 1;
    }
    ((n + 1) as i64, false)
}

/// A crossing of line `(r, k_r)` with line `(s, k_s)`, `r < s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub r: usize,
    pub k_r: i64,
    pub s: usize,
    pub k_s: i64,
    pub point: (f64, f64),
}

impl Pentagrid {
    /// `(Re(z₀ζ^{-j}) + γ_j)·D` at the crossing of `(r, k_r)` and `(s, k_s)`.
    fn value_at_crossing(&self, r: usize, k_r: i64, s: usize, k_s: i64, j: usize) -> Gi {
        let (r_, s_, j_) = (r as i64, s as i64, j as i64);
        let inv = sigma_inverse(s_ - r_);
        let alpha = gi_mul(sigma(s_ - j_), inv);
        let beta = gi_mul(sigma(j_ - r_), inv);
        let d = self.denominator as i128;
        let a_r = k_r as i128 * d - self.scaled[r];
        let a_s = k_s as i128 * d - self.scaled[s];
        let x = gi_mul(alpha, (a_r, 0));
        let y = gi_mul(beta, (a_s, 0));
        (x.0 + y.0 + self.scaled[j], x.1 + y.1)
    }

    fn crossing_point(&self, r: usize, k_r: i64, s: usize, k_s: i64) -> (f64, f64) {
        let (cr, sr) = direction(r);
        let (cs, ss) = direction(s);
        let a_r = k_r as f64 - self.gamma_f64(r);
        let a_s = k_s as f64 - self.gamma_f64(s);
        let det = cr * ss - sr * cs;
        ((a_r * ss - a_s * sr) / det, (cr * a_s - cs * a_r) / det)
    }

    /// All crossings of two grid lines within the closed disk of the given radius.
    pub fn crossings(&self, radius: f64) -> Vec<Crossing> {
        let mut out = Vec::new();
        for r in 0..5 {
            for s in r + 1..5 {
                for k_r in self.line_range(r, radius) {
                    for k_s in self.line_range(s, radius) {
                        let point = self.crossing_point(r, k_r, s, k_s);
                        if point.0.hypot(point.1) <= radius {
                            out.push(Crossing { r, k_r, s, k_s, point });
                        }
                    }
                }
            }
        }
        out
    }

    /// Lines of family `j` at distance at most `radius` from the origin.
    fn line_range(&self, j: usize, radius: f64) -> std::ops::RangeInclusive<i64> {
        let g = self.gamma_f64(j);
        ((g - radius).ceil() as i64)..=((g + radius).floor() as i64)
    }

    /// Families other than `r` and `s` whose line passes through the crossing.
    fn third_lines(&self, c: &Crossing) -> Vec<(usize, i64)> {
        let d = self.denominator as i128;
        (0..5)
            .filter(|&j| j != c.r && j != c.s)
            .filter_map(|j| {
                let (k, on_line) = ceil_scaled(self.value_at_crossing(c.r, c.k_r, c.s, c.k_s, j), d);
                on_line.then_some((j, k))
            })
            .collect()
    }
}

/// K_j(z) = ⌈Re(z·ζ^{-j}) + γ_j⌉ for a float point.
pub fn grid_value(z: (f64, f64), j: usize, g: &Pentagrid) -> Result<i64, PentagridError> {
    if j >= 5 {
        return Err(PentagridError::BadFamily(j));
    }
    let (c, s) = direction(j);
    let value = z.0 * c + z.1 * s + g.gamma_f64(j);
    if (value - value.round()).abs() < ON_LINE_TOLERANCE {
        return Err(PentagridError::OnGridLine { j, value });
    }
    Ok(value.ceil() as i64)
}

/// A point where three or more grid lines meet.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    pub point: (f64, f64),
    /// `(family, line index)` of every line through the point, by family.
    pub lines: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Regularity {
    Regular,
    Singular(Vec<SingularPoint>),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

pub fn is_regular(g: &Pentagrid, radius: f64) -> Regularity {
    let mut points = Vec::new();
    for c in g.crossings(radius) {
        let thirds = g.third_lines(&c);
        // Report each point once, from the crossing of its two lowest families.
        if thirds.is_empty() || thirds.iter().any(|&(j, _)| j < c.s) {
            continue;
        }
        let mut lines = vec![(c.r, c.k_r), (c.s, c.k_s)];
        lines.extend(thirds);
        lines.sort();
        points.push(SingularPoint { point: c.point, lines });
    }
    if points.is_empty() {
        Regularity::Regular
    } else {
        Regularity::Singular(points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// Angles 72° and 108°.
    Thick,
    /// Angles 36° and 144°.
    Thin,
}

impl Shape {
    pub fn of_families(r: usize, s: usize) -> Shape {
        match (s as i64 - r as i64).rem_euclid(5) {
            1 | 4 => Shape::Thick,
            _ => Shape::Thin,
        }
    }
}

/// A rhombus dual to the crossing of families `r < s`. `grid_index` is the
/// index vector of the first vertex; the others add `e_r`, `e_r + e_s`, `e_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rhombus {
    families: (usize, usize),
    grid_index: [i64; 5],
    vertices: [Cyclotomic5; 4],
    shape: Shape,
}

impl Rhombus {
    pub fn from_index(r: usize, s: usize, grid_index: [i64; 5]) -> Result<Rhombus, PentagridError> {
        if r >= 5 || s >= 5 {
            return Err(PentagridError::BadFamily(r.max(s)));
        }
        if r == s {
            return Err(PentagridError::SameFamily(r));
        }
        let (r, s) = (r.min(s), r.max(s));
        let v = Cyclotomic5::from_power_coeffs(grid_index);
        let er = Cyclotomic5::zeta_pow(r as i64);
        let es = Cyclotomic5::zeta_pow(s as i64);
        Ok(Rhombus {
            families: (r, s),
            grid_index,
            vertices: [v, v + er, v + er + es, v + es],
            shape: Shape::of_families(r, s),
        })
    }

    pub fn families(&self) -> (usize, usize) {
        self.families
    }

    pub fn grid_index(&self) -> [i64; 5] {
        self.grid_index
    }

    pub fn vertices(&self) -> [Cyclotomic5; 4] {
        self.vertices
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Index vectors of the four vertices, in vertex order.
    pub fn vertex_indices(&self) -> [[i64; 5]; 4] {
        let (r, s) = self.families;
        let mut out = [self.grid_index; 4];
        out[1][r] += 1;
        out[2][r] += 1;
        out[2][s] += 1;
        out[3][s] += 1;
        out
    }

    pub fn edges(&self) -> [(Cyclotomic5, Cyclotomic5); 4] {
        let v = self.vertices;
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[0])]
    }

    /// Every side has length exactly one.
    pub fn sides_unit(&self) -> bool {
        self.edges().iter().all(|(a, b)| (*b - *a).norm_sq() == GoldenNumber::one())
    }
}

/// The rhombus dual to the crossing of lines `(r, k_r)` and `(s, k_s)`.
pub fn dual_rhombus(g: &Pentagrid, r: usize, k_r: i64, s: usize, k_s: i64) -> Result<Rhombus, PentagridError> {
    if r >= 5 || s >= 5 {
        return Err(PentagridError::BadFamily(r.max(s)));
    }
    if r == s {
        return Err(PentagridError::SameFamily(r));
    }
    let ((r, k_r), (s, k_s)) = if r < s { ((r, k_r), (s, k_s)) } else { ((s, k_s), (r, k_r)) };
    let d = g.denominator as i128;
    let mut index = [0i64; 5];
    for j in 0..5 {
        index[j] = if j == r {
            k_r
        } else if j == s {
            k_s
        } else {
            let (k, on_line) = ceil_scaled(g.value_at_crossing(r, k_r, s, k_s, j), d);
            if on_line {
                return Err(PentagridError::SingularIntersection { r, k_r, s, k_s, third: j });
            }
            k
        };
    }
    Rhombus::from_index(r, s, index)
}

/// Whether a point of Z[ζ₅] lies in the closed disk of the given radius.
pub fn within_disk(v: &Cyclotomic5, radius: f64) -> bool {
    let (a, b) = v.twice_norm_sq();
    (a as f64 + b as f64 * PHI_F64) <= 2.0 * radius * radius
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhombusPatch {
    rhombi: Vec<Rhombus>,
    pentagrid: Pentagrid,
    radius: f64,
}

/// Result of counting how many rhombi use each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeAudit {
    pub interior_edges: usize,
    /// Interior edges not shared by exactly two rhombi, with their multiplicity.
    pub defects: Vec<(Cyclotomic5, Cyclotomic5, usize)>,
}

impl RhombusPatch {
    pub fn new(rhombi: Vec<Rhombus>, pentagrid: Pentagrid, radius: f64) -> RhombusPatch {
        let mut rhombi = rhombi;
        rhombi.sort();
        RhombusPatch { rhombi, pentagrid, radius }
    }

    pub fn rhombi(&self) -> &[Rhombus] {
        &self.rhombi
    }

    pub fn pentagrid(&self) -> &Pentagrid {
        &self.pentagrid
    }

    /// Radius of the disk of grid crossings the patch was built from.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.rhombi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhombi.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<Cyclotomic5> {
        self.rhombi.iter().flat_map(|t| t.vertices()).collect()
    }

    /// Each vertex with its index vector.
    pub fn vertex_indices(&self) -> BTreeMap<Cyclotomic5, [i64; 5]> {
        self.rhombi.iter().flat_map(|t| t.vertices().into_iter().zip(t.vertex_indices())).collect()
    }

    pub fn shape_counts(&self) -> (usize, usize) {
        let thick = self.rhombi.iter().filter(|t| t.shape == Shape::Thick).count();
        (thick, self.rhombi.len() - thick)
    }

    /// A vertex at z of the rhombus tiling sits near 2.5·z + Σγ_jζ^j, off by
    /// less than 5. Inside this radius every edge of the full tiling comes
    /// from crossings inside the patch disk.
    pub fn interior_radius(&self) -> f64 {
        let (gx, gy) = self.pentagrid.offset_point();
        2.5 * self.radius - gx.hypot(gy) - 6.0
    }

    pub fn edge_audit(&self) -> EdgeAudit {
        let rho = self.interior_radius();
        let mut uses: BTreeMap<(Cyclotomic5, Cyclotomic5), usize> = BTreeMap::new();
        for t in &self.rhombi {
            for (a, b) in t.edges() {
                *uses.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let interior: Vec<_> =
            uses.into_iter().filter(|((a, b), _)| rho > 0.0 && within_disk(a, rho) && within_disk(b, rho)).collect();
        EdgeAudit {
            interior_edges: interior.len(),
            defects: interior.iter().filter(|(_, n)| *n != 2).map(|((a, b), n)| (*a, *b, *n)).collect(),
        }
    }
}

/// One rhombus per grid crossing inside the disk.
pub fn generate_tiling(g: &Pentagrid, radius: f64) -> Result<RhombusPatch, PentagridError> {
    if let Regularity::Singular(points) = is_regular(g, radius) {
        return Err(PentagridError::SingularPentagrid { points });
    }
    let rhombi =
        g.crossings(radius).iter().map(|c| dual_rhombus(g, c.r, c.k_r, c.s, c.k_s)).collect::<Result<Vec<_>, _>>()?;
    Ok(RhombusPatch::new(rhombi, g.clone(), radius))
}

/// Every vertex index vector has Σk_j ∈ {1, 2, 3, 4}.
pub fn index_sum_check(p: &RhombusPatch) -> Result<bool, PentagridError> {
    if !p.pentagrid.sum_zero {
        return Err(PentagridError::SumConstraintUnset);
    }
    Ok(p.rhombi.iter().flat_map(|t| t.vertex_indices()).all(|k| (1..=4).contains(&k.iter().sum::<i64>())))
}

type Poly = Vec<(f64, f64)>;

/// Keeps the part of the polygon with `a·x + b·y ≤ c`.
fn clip(poly: &Poly, a: f64, b: f64, c: f64) -> Poly {
    let f = |p: &(f64, f64)| a * p.0 + b * p.1 - c;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (f(&p), f(&q));
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push((p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t));
        }
    }
    out
}

fn area(poly: &Poly) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p.0 * q.1 - q.0 * p.1
        })
        .sum::<f64>()
        / 2.0
}

/// Float cell of index `k`, with each strip narrowed by `delta` on both sides.
fn float_cell(g: &Pentagrid, k: &[i64; 5], delta: f64, half_width: f64) -> Poly {
    let m = half_width;
    let mut poly = vec![(-m, -m), (m, -m), (m, m), (-m, m)];
    for j in 0..5 {
        let (c, s) = direction(j);
        let gj = g.gamma_f64(j);
        poly = clip(&poly, c, s, k[j] as f64 - gj - delta);
        poly = clip(&poly, -c, -s, -(k[j] as f64 - 1.0 - gj + delta));
        if poly.len() < 3 {
            return Vec::new();
        }
    }
    poly
}

type GPoint = (GoldenNumber, GoldenNumber);

fn clip_exact(poly: &[GPoint], a: &GoldenNumber, b: &GoldenNumber, c: &GoldenNumber) -> Vec<GPoint> {
    let f = |p: &GPoint| a * &p.0 + b * &p.1 - c.clone();
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let (fp, fq) = (f(p), f(q));
        let (sp, sq) = (fp.sign(), fq.sign());
        if sp <= 0 {
            out.push(p.clone());
        }
        if sp * sq < 0 {
            let t = fp.checked_div(&(&fp - &fq)).expect("distinct signs");
            out.push((&p.0 + &(&(&q.0 - &p.0) * &t), &p.1 + &(&(&q.1 - &p.1) * &t)));
        }
    }
    out
}

/// Exact test that the closed cell of `k` has positive area. Points are
/// written z = X + i·sin36°·Y so that every constraint has coefficients in Q(φ).
fn exact_cell_has_interior(g: &Pentagrid, k: &[i64; 5], half_width: i64) -> bool {
    let half = |a: i64, b: i64| GoldenNumber::from_rationals((a, 2), (b, 2));
    // cos 72°j and sin 36°·sin 72°j = σ_j·(3 − φ)/4.
    let cos = [GoldenNumber::one(), half(-1, 1), half(0, -1), half(0, -1), half(-1, 1)];
    let s2 = GoldenNumber::from_rationals((3, 4), (-1, 4));
    let m = GoldenNumber::from_ints(half_width, 0);
    let neg_m = -m.clone();
    let mut poly: Vec<GPoint> =
        vec![(neg_m.clone(), neg_m.clone()), (m.clone(), neg_m.clone()), (m.clone(), m.clone()), (neg_m, m)];
    for j in 0..5 {
        let (sa, sb) = sigma(j as i64);
        let t = &s2 * &GoldenNumber::from_ints(sa as i64, sb as i64);
        let gj = GoldenNumber::from_rationals((*g.gamma[j].numer(), *g.gamma[j].denom()), (0, 1));
        let upper = GoldenNumber::from_ints(k[j], 0) - gj.clone();
        let lower = GoldenNumber::from_ints(k[j] - 1, 0) - gj;
        poly = clip_exact(&poly, &cos[j], &t, &upper);
        poly = clip_exact(&poly, &-cos[j].clone(), &-t.clone(), &-lower);
        if poly.len() < 3 {
            return false;
        }
    }
    let n = poly.len();
    let twice_area = (0..n).fold(GoldenNumber::zero(), |acc, i| {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        acc + &p.0 * &q.1 - &q.0 * &p.1
    });
    twice_area.sign() > 0
}

/// Whether the open cell `{z : K_j(z) = k_j for all j}` is nonempty.
pub fn cell_is_nonempty(g: &Pentagrid, k: &[i64; 5]) -> bool {
    let bound = k.iter().map(|x| x.abs()).max().unwrap_or(0)
        + g.gamma.iter().map(|x| x.abs().ceil().to_integer()).max().unwrap_or(0)
        + 2;
    let half_width = 4 * bound;
    let shrunk = float_cell(g, k, 1e-9, half_width as f64);
    if shrunk.len() >= 3 && area(&shrunk) > 1e-18 {
        return true;
    }
    if float_cell(g, k, -1e-9, half_width as f64).len() < 3 {
        return false;
    }
    exact_cell_has_interior(g, k, half_width)
}

/// Index vectors `k` with |k_j| ≤ `b` whose grid cell is nonempty, paired
/// with their projection Σk_jζ^j, kept when the projection lies in the disk.
/// Sorted by `k`.
pub fn cut_and_project(g: &Pentagrid, b: i64, clip_radius: f64) -> Vec<([i64; 5], Cyclotomic5)> {
    let mut out = Vec::new();
    let (c0, s0) = direction(0);
    let (c1, s1) = direction(1);
    let det = c0 * s1 - s0 * c1;
    for k0 in -b..=b {
        for k1 in -b..=b {
            // The strips of families 0 and 1 meet in a parallelogram; the
            // other functionals are extremal at its corners.
            let mut lo = [f64::INFINITY; 5];
            let mut hi = [f64::NEG_INFINITY; 5];
            for a0 in [k0 - 1, k0] {
                for a1 in [k1 - 1, k1] {
                    let u = a0 as f64 - g.gamma_f64(0);
                    let v = a1 as f64 - g.gamma_f64(1);
                    let z = ((u * s1 - v * s0) / det, (c0 * v - c1 * u) / det);
                    for j in 2..5 {
                        let (c, s) = direction(j);
                        let x = z.0 * c + z.1 * s + g.gamma_f64(j);
                        lo[j] = lo[j].min(x);
                        hi[j] = hi[j].max(x);
                    }
                }
            }
            let range = |j: usize| {
                let from = ((lo[j] - 1e-9).ceil() as i64).max(-b);
                let to = ((hi[j] + 1e-9).floor() as i64 + 1).min(b);
                from..=to
            };
            for k2 in range(2) {
                for k3 in range(3) {
                    for k4 in range(4) {
                        let k = [k0, k1, k2, k3, k4];
                        let v = Cyclotomic5::from_power_coeffs(k);
                        if within_disk(&v, clip_radius) && cell_is_nonempty(g, &k) {
                            out.push((k, v));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Smallest nonzero modulus of Σ_{j<n} k_j·e^{2πij/n} over k ∈ [−b, b]^n.
///
/// Meet in the middle: the sums over the first half are bucketed on a grid
/// whose cell size is an upper bound for the answer (the result for `b − 1`,
/// or 1), so each second-half sum only needs its 3×3 neighbourhood.
pub fn density_probe(n: u32, b: u32) -> Result<f64, PentagridError> {
    if !(1..=12).contains(&n) || !(1..=6).contains(&b) {
        return Err(PentagridError::ProbeOutOfRange { n, b });
    }
    let mut bound = 1.0;
    for box_size in 1..=b {
        bound = probe_with_bound(n as usize, box_size as i64, bound);
    }
    Ok(bound)
}

const ZERO_GUARD: f64 = 1e-9;

/// All sums Σ k_j·root_j with |k_j| ≤ b, with coincident sums merged.
fn half_sums(roots: &[(f64, f64)], b: i64) -> Vec<(f64, f64)> {
    let mut sums = vec![(0.0, 0.0)];
    for &(c, s) in roots {
        let mut next = Vec::with_capacity(sums.len() * (2 * b as usize + 1));
        for &(x, y) in &sums {
            for k in -b..=b {
                next.push((x + k as f64 * c, y + k as f64 * s));
            }
        }
        // Roots of unity satisfy integer relations, so many sums coincide.
        let quantum = 1e-10;
        next.sort_by_key(|p| ((p.0 / quantum).round() as i64, (p.1 / quantum).round() as i64));
        next.dedup_by_key(|p| ((p.0 / quantum).round() as i64, (p.1 / quantum).round() as i64));
        sums = next;
    }
    sums
}

fn probe_with_bound(n: usize, b: i64, bound: f64) -> f64 {
    let roots: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let (first, second) = roots.split_at(n / 2);
    let cell = bound;
    let key = |p: (f64, f64)| ((p.0 / cell).floor() as i64, (p.1 / cell).floor() as i64);
    let mut left = half_sums(first, b);
    left.sort_by_key(|&p| key(p));
    let mut grid: HashMap<(i64, i64), (usize, usize)> = HashMap::new();
    for (i, &p) in left.iter().enumerate() {
        grid.entry(key(p)).and_modify(|r| r.1 = i + 1).or_insert((i, i + 1));
    }
    let right = half_sums(second, b);
    let guard2 = ZERO_GUARD * ZERO_GUARD;
    let mut best2 = bound * bound;
    for &q in &right {
        let (cx, cy) = key((-q.0, -q.1));
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(&(from, to)) = grid.get(&(cx + dx, cy + dy)) {
                    for p in &left[from..to] {
                        let (x, y) = (p.0 + q.0, p.1 + q.1);
                        let m2 = x * x + y * y;
                        if m2 > guard2 && m2 < best2 {
                            best2 = m2;
                        }
                    }
                }
            }
        }
    }
    best2.sqrt()
}
