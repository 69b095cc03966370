//! Index sequences, towers of half-tiles and Bratteli data.
//!
//! A tower records how a small half-tile `T₀` sits inside its ancestors
//! `T₁ ⊂ … ⊂ T_n` under repeated composition. Each step contributes a
//! two-bit block, written from `T₀` upward:
//!
//! | parent | child            | block |
//! |--------|------------------|-------|
//! | acute  | acute, position 0 | `00` |
//! | acute  | acute, position 1 | `01` |
//! | acute  | obtuse            | `10` |
//! | obtuse | acute             | `00` |
//! | obtuse | obtuse            | `10` |
//!
//! The first bit of a block is the kind of the child and a trailing `1` only
//! occurs inside an acute parent, whose own block then starts with `0`. So the
//! code never contains `11`, and every admissible string of even length is
//! the code of exactly one tower with an acute root.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::exact::GoldenNumber;
use crate::robinson::{HalfKind, HalfTile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingSpaceError {
    #[error("child position {position} at step {step} does not exist in a {parent:?} parent")]
    InvalidTower { step: usize, position: u8, parent: HalfKind },
    #[error("bit string contains two consecutive ones")]
    Inadmissible,
    #[error("bit string has odd length {0}")]
    OddLength(usize),
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
    #[error("{what} is only tabulated up to {max}, got {got}")]
    OutOfRange { what: &'static str, max: u32, got: u32 },
}

/// Parses a string of `0` and `1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<u8>, TilingSpaceError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(TilingSpaceError::InvalidBit(other)),
        })
        .collect()
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

pub fn is_admissible(bits: &[u8]) -> bool {
    !bits.windows(2).any(|w| w[0] == 1 && w[1] == 1)
}

/// Fibonacci numbers with F(0) = 0, F(1) = F(2) = 1.
pub fn fibonacci(n: u32) -> u64 {
    assert!(n <= 93, "F({n}) does not fit in u64");
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        // Saturates only on the step after F(93), whose successor is never returned.
        let next = a.saturating_add(b);
        a = b;
        b = next;
    }
    a
}

/// Number of admissible bit strings of length `n`, which is F(n+2).
pub fn count_admissible(n: u32) -> Result<u64, TilingSpaceError> {
    if n > 64 {
        return Err(TilingSpaceError::OutOfRange { what: "count_admissible", max: 64, got: n });
    }
    Ok(fibonacci(n + 2))
}

/// A chain `T₀ ⊂ T₁ ⊂ … ⊂ T_n` given by the kind of `T_n` and, for each
/// `k < n`, the position of `T_k` among the children of `T_{k+1}`.
///
/// Positions follow [`HalfTile::children`]: an acute parent has acute
/// children 0 and 1 and the obtuse child 2; an obtuse parent has the acute
/// child 0 and the obtuse child 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tower {
    pub root: HalfKind,
    /// `positions[k]` places `T_k` inside `T_{k+1}`.
    pub positions: Vec<u8>,
}

fn child_kind(parent: HalfKind, position: u8) -> Option<HalfKind> {
    match (parent, position) {
        (HalfKind::Acute, 0 | 1) => Some(HalfKind::Acute),
        (HalfKind::Acute, 2) => Some(HalfKind::Obtuse),
        (HalfKind::Obtuse, 0) => Some(HalfKind::Acute),
        (HalfKind::Obtuse, 1) => Some(HalfKind::Obtuse),
        _ => None,
    }
}

fn child_count(parent: HalfKind) -> u8 {
    match parent {
        HalfKind::Acute => 3,
        HalfKind::Obtuse => 2,
    }
}

impl Tower {
    pub fn new(root: HalfKind, positions: Vec<u8>) -> Result<Tower, TilingSpaceError> {
        let t = Tower { root, positions };
        t.kinds()?;
        Ok(t)
    }

    pub fn depth(&self) -> usize {
        self.positions.len()
    }

    /// Kinds of `T₀, …, T_n`.
    pub fn kinds(&self) -> Result<Vec<HalfKind>, TilingSpaceError> {
        let n = self.positions.len();
        let mut kinds = vec![self.root; n + 1];
        for step in (0..n).rev() {
            let parent = kinds[step + 1];
            let position = self.positions[step];
            kinds[step] =
                child_kind(parent, position).ok_or(TilingSpaceError::InvalidTower { step, position, parent })?;
        }
        Ok(kinds)
    }

    /// Realizes the tower inside a concrete root tile. Entry `k` is `T_k`;
    /// each level is in the coordinates of one more inflation than the level
    /// above it, so `T₀` is at scale φ^n relative to `root`.
    pub fn realize(&self, root: &HalfTile) -> Result<Vec<HalfTile>, TilingSpaceError> {
        if root.kind() != self.root {
            return Err(TilingSpaceError::InvalidTower { step: self.depth(), position: 0, parent: root.kind() });
        }
        self.kinds()?;
        let n = self.positions.len();
        let mut chain = vec![*root; n + 1];
        for step in (0..n).rev() {
            chain[step] = chain[step + 1].children()[self.positions[step] as usize];
        }
        Ok(chain)
    }
}

/// All towers of the given depth above a root of the given kind.
pub fn towers(root: HalfKind, depth: usize) -> Vec<Tower> {
    fn grow(kind: HalfKind, remaining: usize, below: &mut Vec<u8>, out: &mut Vec<Tower>, root: HalfKind) {
        if remaining == 0 {
            let mut positions = below.clone();
            positions.reverse();
            out.push(Tower { root, positions });
            return;
        }
        for position in 0..child_count(kind) {
            below.push(position);
            grow(child_kind(kind, position).unwrap(), remaining - 1, below, out, root);
            below.pop();
        }
    }
    let mut out = Vec::new();
    grow(root, depth, &mut Vec::new(), &mut out, root);
    out
}

pub fn tower_to_sequence(t: &Tower) -> Result<Vec<u8>, TilingSpaceError> {
    let kinds = t.kinds()?;
    let mut bits = Vec::with_capacity(2 * t.depth());
    for (step, &position) in t.positions.iter().enumerate() {
        let block = match (kinds[step + 1], position) {
            (HalfKind::Acute, 0) | (HalfKind::Obtuse, 0) => [0, 0],
            (HalfKind::Acute, 1) => [0, 1],
            (HalfKind::Acute, 2) | (HalfKind::Obtuse, 1) => [1, 0],
            _ => unreachable!("kinds() validated the positions"),
        };
        bits.extend_from_slice(&block);
    }
    Ok(bits)
}

/// Decodes a tower with an acute root.
pub fn sequence_to_tower(bits: &[u8]) -> Result<Tower, TilingSpaceError> {
    sequence_to_tower_rooted(bits, HalfKind::Acute)
}

/// Decodes a tower with the given root kind. An obtuse root cannot end in a
/// `1`, since only acute parents produce the `01` block.
pub fn sequence_to_tower_rooted(bits: &[u8], root: HalfKind) -> Result<Tower, TilingSpaceError> {
    if !is_admissible(bits) {
        return Err(TilingSpaceError::Inadmissible);
    }
    if bits.len() % 2 == 1 {
        return Err(TilingSpaceError::OddLength(bits.len()));
    }
    let n = bits.len() / 2;
    let mut positions = vec![0u8; n];
    let mut parent = root;
    for step in (0..n).rev() {
        let block = (bits[2 * step], bits[2 * step + 1]);
        let position = match (parent, block) {
            (_, (0, 0)) => 0,
            (HalfKind::Acute, (0, 1)) => 1,
            (HalfKind::Acute, (1, 0)) => 2,
            (HalfKind::Obtuse, (1, 0)) => 1,
            _ => return Err(TilingSpaceError::InvalidTower { step, position: 1, parent }),
        };
        positions[step] = position;
        parent = child_kind(parent, position).unwrap();
    }
    Ok(Tower { root, positions })
}

/// An eventually periodic 0/1 sequence `prefix · period^∞`. An empty period
/// stands for trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSequence {
    prefix: Vec<u8>,
    period: Vec<u8>,
}

impl IndexSequence {
    pub fn new(prefix: Vec<u8>, period: Vec<u8>) -> Result<IndexSequence, TilingSpaceError> {
        if let Some(&c) = prefix.iter().chain(&period).find(|&&b| b > 1) {
            return Err(TilingSpaceError::InvalidBit(char::from(b'0' + c.min(9))));
        }
        let s = IndexSequence { prefix, period };
        if !s.is_admissible() {
            return Err(TilingSpaceError::Inadmissible);
        }
        Ok(s)
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn bit(&self, n: usize) -> u8 {
        if n < self.prefix.len() {
            self.prefix[n]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(n - self.prefix.len()) % self.period.len()]
        }
    }

    /// Checks the prefix, the prefix/period seam and the period/period seam.
    pub fn is_admissible(&self) -> bool {
        let mut probe = self.prefix.clone();
        probe.extend_from_slice(&self.period);
        probe.extend_from_slice(&self.period);
        is_admissible(&probe)
    }

    fn effective_period(&self) -> usize {
        self.period.len().max(1)
    }

    /// The sequence `x_m x_{m+1} …`.
    pub fn suffix_from(&self, m: usize) -> IndexSequence {
        if m <= self.prefix.len() {
            return IndexSequence { prefix: self.prefix[m..].to_vec(), period: self.period.clone() };
        }
        if self.period.is_empty() {
            return IndexSequence { prefix: Vec::new(), period: Vec::new() };
        }
        let shift = (m - self.prefix.len()) % self.period.len();
        let mut period = self.period[shift..].to_vec();
        period.extend_from_slice(&self.period[..shift]);
        IndexSequence { prefix: Vec::new(), period }
    }

    /// A sequence that starts with `p` and agrees with `self` from index
    /// `|p| + 1` on, joined by a single `0`.
    pub fn with_prefix(&self, p: &[u8]) -> Result<IndexSequence, TilingSpaceError> {
        let tail = self.suffix_from(p.len() + 1);
        let mut prefix = p.to_vec();
        prefix.push(0);
        prefix.extend_from_slice(&tail.prefix);
        IndexSequence::new(prefix, tail.period)
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", bits_to_string(&self.prefix), bits_to_string(&self.period))
    }
}

/// Whether `x` and `y` agree from some index on.
pub fn tails_equivalent(x: &IndexSequence, y: &IndexSequence) -> bool {
    let start = x.prefix.len().max(y.prefix.len());
    let window = x.effective_period().lcm(&y.effective_period());
    (start..start + window).all(|n| x.bit(n) == y.bit(n))
}

/// `2^{-n}` for the first index `n < horizon` where the sequences differ, or
/// 0 if they agree on the whole horizon.
pub fn cantor_distance(x: &IndexSequence, y: &IndexSequence, horizon: usize) -> f64 {
    (0..horizon).find(|&n| x.bit(n) != y.bit(n)).map_or(0.0, |n| 0.5f64.powi(n as i32))
}

/// Dimensions `(d_A, d_O)` at level `n` of the Bratteli diagram with
/// inclusion matrix `[[1,1],[1,0]]` and base `(1,1)`.
pub fn bratteli_dimensions(n: u32) -> Result<(u64, u64), TilingSpaceError> {
    if n > 90 {
        return Err(TilingSpaceError::OutOfRange { what: "bratteli_dimensions", max: 90, got: n });
    }
    let (mut a, mut o) = (1u64, 1u64);
    for _ in 0..n {
        (a, o) = (a + o, a);
    }
    Ok((a, o))
}

/// The normalized trace on level `n`: `(φ^{-(n+1)}, φ^{-(n+2)})`.
pub fn trace_weights(n: u32) -> Result<(GoldenNumber, GoldenNumber), TilingSpaceError> {
    if n > 90 {
        return Err(TilingSpaceError::OutOfRange { what: "trace_weights", max: 90, got: n });
    }
    let k = n as i32;
    Ok((GoldenNumber::phi_pow(-(k + 1)), GoldenNumber::phi_pow(-(k + 2))))
}
