//! Polyomino chains: turn-sequence encoding, lattice realization, segment
//! decomposition, and canonical forms under the square symmetries.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("turn sequence for n={n} must have {expected} entries, got {got}")]
    TurnCountMismatch { n: usize, expected: usize, got: usize },
    #[error("invalid turn symbol {0:?} (expected one of S, L, R)")]
    BadTurnSymbol(char),
    #[error("chain must contain at least one square")]
    Empty,
    #[error("invalid chain: square {index} revisits cell ({x}, {y})")]
    CellCollision { index: usize, x: i64, y: i64 },
    #[error("invalid chain: squares {a} and {b} are non-consecutive but share a side")]
    SideContact { a: usize, b: usize },
    #[error("invalid chain: squares {a} and {b} are non-consecutive but share a corner")]
    CornerContact { a: usize, b: usize },
    #[error("squares {a} and {b} are consecutive but not side-adjacent")]
    NotAPath { a: usize, b: usize },
    #[error("{what} requires n >= {min}, got {n}")]
    TooSmall { what: &'static str, min: usize, n: usize },
    #[error("invalid length vector {0:?}: {1}")]
    BadLengthVector(Vec<usize>, &'static str),
    #[error("malformed canonical key {0:?}")]
    BadKey(String),
}

/// Placement of square k+2 relative to the direction of travel entering
/// square k+1. Ordering `Straight < Left < Right` fixes the enumeration
/// order everywhere downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Turn {
    Straight,
    Left,
    Right,
}

impl Turn {
    pub fn from_char(c: char) -> Result<Turn, ChainError> {
        match c {
            'S' | 's' => Ok(Turn::Straight),
            'L' | 'l' => Ok(Turn::Left),
            'R' | 'r' => Ok(Turn::Right),
            other => Err(ChainError::BadTurnSymbol(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Turn::Straight => 'S',
            Turn::Left => 'L',
            Turn::Right => 'R',
        }
    }
}

/// Compact encoding of a chain's geometry: the square count plus one symbol
/// per non-terminal square saying how the walk continues. Realizability is
/// checked when the cells are laid out, not here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TurnSequence {
    n: usize,
    turns: Vec<Turn>,
}

impl TurnSequence {
    pub fn new(n: usize, turns: Vec<Turn>) -> Result<TurnSequence, ChainError> {
        if n == 0 {
            return Err(ChainError::Empty);
        }
        let expected = n.saturating_sub(2);
        if turns.len() != expected {
            return Err(ChainError::TurnCountMismatch { n, expected, got: turns.len() });
        }
        Ok(TurnSequence { n, turns })
    }

    /// Parses a string over {S, L, R}. For n <= 2 the string must be empty.
    pub fn parse(n: usize, s: &str) -> Result<TurnSequence, ChainError> {
        let turns = s.chars().map(Turn::from_char).collect::<Result<Vec<_>, _>>()?;
        TurnSequence::new(n, turns)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn turn_string(&self) -> String {
        self.turns.iter().map(|t| t.to_char()).collect()
    }

    /// Linear chain: no kinks at all.
    pub fn linear(n: usize) -> Result<TurnSequence, ChainError> {
        if n < 1 {
            return Err(ChainError::TooSmall { what: "linear chain", min: 1, n });
        }
        TurnSequence::new(n, vec![Turn::Straight; n.saturating_sub(2)])
    }

    /// Zigzag chain: every non-terminal square is a kink, directions
    /// alternating so the staircase never collides.
    pub fn zigzag(n: usize) -> Result<TurnSequence, ChainError> {
        if n < 1 {
            return Err(ChainError::TooSmall { what: "zigzag chain", min: 1, n });
        }
        let turns = (0..n.saturating_sub(2))
            .map(|k| if k % 2 == 0 { Turn::Left } else { Turn::Right })
            .collect();
        TurnSequence::new(n, turns)
    }

    /// The chain whose internal segments all have length 3 and whose external
    /// segments have length 3 (n odd) or 3 and 2 (n even). Kink directions
    /// alternate, which keeps every internal length-3 segment free of an edge
    /// between two degree-3 vertices.
    pub fn zdagger(n: usize) -> Result<TurnSequence, ChainError> {
        if n < 3 {
            return Err(ChainError::TooSmall { what: "zdagger chain", min: 3, n });
        }
        let lengths = if n % 2 == 1 {
            vec![3; (n - 1) / 2]
        } else {
            let mut v = vec![3; n / 2 - 1];
            v.push(2);
            v
        };
        let lv = LengthVector::new(lengths)?;
        Ok(TurnSequence::from_length_vector(&lv))
    }

    /// A realization of the given length vector with alternating kink
    /// directions. The walk is a monotone staircase, so it is always a valid
    /// chain, and alternation keeps it free of degree-3--degree-3 edges on
    /// internal length-3 segments.
    pub fn from_length_vector(lv: &LengthVector) -> TurnSequence {
        let n = lv.n();
        let mut turns = vec![Turn::Straight; n.saturating_sub(2)];
        let mut kink_square = 0usize;
        for (j, len) in lv.lengths().iter().take(lv.segment_count() - 1).enumerate() {
            kink_square += len - 1;
            let dir = if j % 2 == 0 { Turn::Left } else { Turn::Right };
            turns[kink_square - 1] = dir;
        }
        TurnSequence { n, turns }
    }
}

impl fmt::Display for TurnSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.turn_string())
    }
}

/// Unit cell of the square lattice, identified by its lower-left corner.
/// The same type doubles as a lattice point when naming cell corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Cell {
        Cell { x, y }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.x, self.y).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Cell, D::Error> {
        let (x, y) = <(i64, i64)>::deserialize(deserializer)?;
        Ok(Cell { x, y })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Heading {
    East,
    North,
    West,
    South,
}

impl Heading {
    fn left(self) -> Heading {
        match self {
            Heading::East => Heading::North,
            Heading::North => Heading::West,
            Heading::West => Heading::South,
            Heading::South => Heading::East,
        }
    }

    fn right(self) -> Heading {
        match self {
            Heading::East => Heading::South,
            Heading::South => Heading::West,
            Heading::West => Heading::North,
            Heading::North => Heading::East,
        }
    }

    fn step(self, c: Cell) -> Cell {
        match self {
            Heading::East => Cell::new(c.x + 1, c.y),
            Heading::North => Cell::new(c.x, c.y + 1),
            Heading::West => Cell::new(c.x - 1, c.y),
            Heading::South => Cell::new(c.x, c.y - 1),
        }
    }
}

/// Segment lengths (l_1, ..., l_s). Consecutive segments share exactly one
/// kink square, so the square count is sum(l_i) - (s - 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthVector {
    lengths: Vec<usize>,
}

impl LengthVector {
    pub fn new(lengths: Vec<usize>) -> Result<LengthVector, ChainError> {
        if lengths.is_empty() {
            return Err(ChainError::BadLengthVector(lengths, "no segments"));
        }
        if lengths.len() == 1 {
            if lengths[0] == 0 {
                return Err(ChainError::BadLengthVector(lengths, "empty segment"));
            }
        } else if lengths.iter().any(|&l| l < 2) {
            return Err(ChainError::BadLengthVector(
                lengths,
                "segments of a multi-segment chain have length >= 2",
            ));
        }
        Ok(LengthVector { lengths })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn segment_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn n(&self) -> usize {
        self.lengths.iter().sum::<usize>() - (self.lengths.len() - 1)
    }

    pub fn indicators(&self) -> SegmentIndicators {
        SegmentIndicators::of(self)
    }

    pub fn reversed(&self) -> LengthVector {
        let mut lengths = self.lengths.clone();
        lengths.reverse();
        LengthVector { lengths }
    }

    /// The lexicographically smaller of the vector and its reversal; two
    /// chains that are images of each other under path reversal share this.
    pub fn reversal_canonical(&self) -> LengthVector {
        let rev = self.reversed();
        if rev.lengths < self.lengths {
            rev
        } else {
            self.clone()
        }
    }

    /// Lengths sorted ascending, used as a census class key.
    pub fn multiset_key(&self) -> Vec<usize> {
        let mut k = self.lengths.clone();
        k.sort_unstable();
        k
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Length-2 flags per segment: `alpha[i]` covers internal segments only
/// (positions 2..=s-1 in 1-based terms), `beta1`/`beta_s` the two external
/// ones. The first and last segments never contribute to the alpha list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentIndicators {
    pub alpha: Vec<bool>,
    pub beta1: bool,
    pub beta_s: bool,
    segment_count: usize,
}

impl SegmentIndicators {
    pub fn of(lv: &LengthVector) -> SegmentIndicators {
        let ls = lv.lengths();
        let s = ls.len();
        let alpha = if s >= 3 { ls[1..s - 1].iter().map(|&l| l == 2).collect() } else { Vec::new() };
        SegmentIndicators { alpha, beta1: ls[0] == 2, beta_s: ls[s - 1] == 2, segment_count: s }
    }

    pub fn segment_count(&self) -> usize {
        self.segment_count
    }

    /// Number of internal segments of length 2 (the sum of the alpha flags).
    pub fn internal_two_count(&self) -> usize {
        self.alpha.iter().filter(|&&a| a).count()
    }

    /// beta_1 + beta_s. A single-segment chain has one external segment, so
    /// its flag is counted once, matching the per-segment sum defining psi.
    pub fn external_two_count(&self) -> usize {
        if self.segment_count == 1 {
            usize::from(self.beta1)
        } else {
            usize::from(self.beta1) + usize::from(self.beta_s)
        }
    }
}

/// Inclusive cell-index range of one segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentSpan {
    pub start: usize,
    pub end: usize,
}

impl SegmentSpan {
    /// Number of squares in the segment.
    pub fn square_count(&self) -> usize {
        self.end - self.start + 1
    }
}

/// A realized polyomino chain: ordered lattice cells plus the vertex/edge
/// graph spanned by the cell corners and sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyominoChain {
    cells: Vec<Cell>,
    vertices: BTreeSet<Cell>,
    edges: BTreeSet<(Cell, Cell)>,
    degrees: BTreeMap<Cell, u8>,
}

impl PolyominoChain {
    /// Lays the cells out starting at (0, 0) heading east and realizes the
    /// graph. Fails on any collision, non-consecutive side contact, or
    /// non-consecutive corner contact (spiral self-touch).
    pub fn from_turns(t: &TurnSequence) -> Result<PolyominoChain, ChainError> {
        let mut cells = Vec::with_capacity(t.n());
        cells.push(Cell::new(0, 0));
        if t.n() >= 2 {
            cells.push(Cell::new(1, 0));
        }
        let mut heading = Heading::East;
        for turn in t.turns() {
            heading = match turn {
                Turn::Straight => heading,
                Turn::Left => heading.left(),
                Turn::Right => heading.right(),
            };
            cells.push(heading.step(*cells.last().expect("nonempty")));
        }
        PolyominoChain::from_cells(cells)
    }

    /// Validates an explicit cell path and realizes the graph.
    pub fn from_cells(cells: Vec<Cell>) -> Result<PolyominoChain, ChainError> {
        if cells.is_empty() {
            return Err(ChainError::Empty);
        }
        let mut occupied: BTreeMap<Cell, usize> = BTreeMap::new();
        for (k, &c) in cells.iter().enumerate() {
            if k > 0 {
                let prev = cells[k - 1];
                if (c.x - prev.x).abs() + (c.y - prev.y).abs() != 1 {
                    return Err(ChainError::NotAPath { a: k - 1, b: k });
                }
            }
            if occupied.contains_key(&c) {
                return Err(ChainError::CellCollision { index: k, x: c.x, y: c.y });
            }
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let nb = Cell::new(c.x + dx, c.y + dy);
                if let Some(&j) = occupied.get(&nb) {
                    if j + 1 != k {
                        return Err(ChainError::SideContact { a: j, b: k });
                    }
                }
            }
            for (dx, dy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let nb = Cell::new(c.x + dx, c.y + dy);
                if let Some(&j) = occupied.get(&nb) {
                    if j + 2 != k {
                        return Err(ChainError::CornerContact { a: j, b: k });
                    }
                }
            }
            occupied.insert(c, k);
        }

        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for &c in &cells {
            let p00 = Cell::new(c.x, c.y);
            let p10 = Cell::new(c.x + 1, c.y);
            let p01 = Cell::new(c.x, c.y + 1);
            let p11 = Cell::new(c.x + 1, c.y + 1);
            for p in [p00, p10, p01, p11] {
                vertices.insert(p);
            }
            for e in [(p00, p10), (p00, p01), (p10, p11), (p01, p11)] {
                edges.insert(e);
            }
        }
        let mut degrees: BTreeMap<Cell, u8> = BTreeMap::new();
        for &(u, v) in &edges {
            *degrees.entry(u).or_insert(0) += 1;
            *degrees.entry(v).or_insert(0) += 1;
        }
        Ok(PolyominoChain { cells, vertices, edges, degrees })
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn vertices(&self) -> &BTreeSet<Cell> {
        &self.vertices
    }

    /// Edges as normalized (lexicographically ordered) lattice-point pairs.
    pub fn edges(&self) -> &BTreeSet<(Cell, Cell)> {
        &self.edges
    }

    pub fn degrees(&self) -> &BTreeMap<Cell, u8> {
        &self.degrees
    }

    pub fn degree_of(&self, v: Cell) -> u8 {
        self.degrees[&v]
    }

    /// d_u + d_v for every edge, in edge-set order.
    pub fn edge_degree_sums(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().map(move |&(u, v)| u32::from(self.degrees[&u]) + u32::from(self.degrees[&v]))
    }

    fn headings(&self) -> Vec<(i64, i64)> {
        self.cells
            .windows(2)
            .map(|w| (w[1].x - w[0].x, w[1].y - w[0].y))
            .collect()
    }

    /// Kink squares: non-terminal cells where the walk changes direction.
    pub fn kink_indices(&self) -> Vec<usize> {
        let h = self.headings();
        (1..h.len()).filter(|&k| h[k] != h[k - 1]).collect()
    }

    /// Maximal straight runs, each including the kink/terminal squares at
    /// its ends; consecutive segments overlap in one kink square.
    pub fn segments(&self) -> Vec<SegmentSpan> {
        let n = self.n();
        let mut spans = Vec::new();
        let mut start = 0usize;
        for k in self.kink_indices() {
            spans.push(SegmentSpan { start, end: k });
            start = k;
        }
        spans.push(SegmentSpan { start, end: n - 1 });
        spans
    }

    pub fn length_vector(&self) -> LengthVector {
        let lengths = self.segments().iter().map(SegmentSpan::square_count).collect::<Vec<_>>();
        LengthVector::new(lengths).expect("segments of a valid chain form a valid length vector")
    }

    /// Recovers the turn sequence of the walk as laid out.
    pub fn turn_sequence(&self) -> TurnSequence {
        let h = self.headings();
        let turns = (1..h.len())
            .map(|k| {
                let (px, py) = h[k - 1];
                let (cx, cy) = h[k];
                if (px, py) == (cx, cy) {
                    Turn::Straight
                } else if (-py, px) == (cx, cy) {
                    Turn::Left
                } else {
                    Turn::Right
                }
            })
            .collect();
        TurnSequence::new(self.n(), turns).expect("walk yields one turn per non-terminal square")
    }

    /// True iff no internal segment of length 3 contains an edge joining two
    /// degree-3 vertices, checked directly on the realized graph.
    pub fn is_in_omega(&self) -> bool {
        let n = self.n();
        for span in self.segments() {
            let internal = span.start > 0 && span.end < n - 1;
            if !internal || span.square_count() != 3 {
                continue;
            }
            for &c in &self.cells[span.start..=span.end] {
                let p00 = Cell::new(c.x, c.y);
                let p10 = Cell::new(c.x + 1, c.y);
                let p01 = Cell::new(c.x, c.y + 1);
                let p11 = Cell::new(c.x + 1, c.y + 1);
                for (u, v) in [(p00, p10), (p00, p01), (p10, p11), (p01, p11)] {
                    if self.degrees[&u] == 3 && self.degrees[&v] == 3 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Key shared exactly by chains related by the 8 square symmetries
    /// composed with path reversal: the lexicographic minimum over all 16
    /// images of the cell list translated so its bounding box starts at the
    /// origin.
    pub fn canonical_key(&self) -> CanonicalKey {
        let mut best: Option<Vec<Cell>> = None;
        for sym in 0..8 {
            for rev in [false, true] {
                let mut img: Vec<Cell> = self.cells.iter().map(|&c| apply_symmetry(sym, c)).collect();
                if rev {
                    img.reverse();
                }
                let min_x = img.iter().map(|c| c.x).min().expect("nonempty");
                let min_y = img.iter().map(|c| c.y).min().expect("nonempty");
                for c in &mut img {
                    c.x -= min_x;
                    c.y -= min_y;
                }
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
        CanonicalKey(best.expect("nonempty"))
    }
}

fn apply_symmetry(sym: u8, c: Cell) -> Cell {
    let Cell { x, y } = c;
    match sym {
        0 => Cell::new(x, y),
        1 => Cell::new(-y, x),
        2 => Cell::new(-x, -y),
        3 => Cell::new(y, -x),
        4 => Cell::new(-x, y),
        5 => Cell::new(x, -y),
        6 => Cell::new(y, x),
        _ => Cell::new(-y, -x),
    }
}

/// Opaque comparable key for a chain's symmetry class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<Cell>);

impl CanonicalKey {
    pub fn cells(&self) -> &[Cell] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{},{}", c.x, c.y)?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalKey {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<CanonicalKey, ChainError> {
        let bad = || ChainError::BadKey(s.to_string());
        let mut cells = Vec::new();
        for part in s.split(';') {
            let (x, y) = part.split_once(',').ok_or_else(bad)?;
            let x = x.parse().map_err(|_| bad())?;
            let y = y.parse().map_err(|_| bad())?;
            cells.push(Cell::new(x, y));
        }
        Ok(CanonicalKey(cells))
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<CanonicalKey, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
