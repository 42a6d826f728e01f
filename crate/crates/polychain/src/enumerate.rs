//! Exhaustive generation of all polyomino chains with a given square count,
//! with symmetry dedup and a flag for the no-adjacent-degree-3 collection.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{
    CanonicalKey, Cell, ChainError, LengthVector, PolyominoChain, Turn, TurnSequence,
};

pub const DEFAULT_CEILING: usize = 14;
pub const MIN_N: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("n = {n} exceeds the enumeration ceiling {ceiling}")]
    LimitExceeded { n: usize, ceiling: usize },
    #[error("enumeration needs n >= {MIN_N}, got {n}")]
    BelowMinimum { n: usize },
}

/// What to enumerate: square count plus filtering/dedup switches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub n: usize,
    pub omega_only: bool,
    pub dedupe: bool,
    pub ceiling: usize,
}

impl EnumerationRequest {
    pub fn new(n: usize) -> EnumerationRequest {
        EnumerationRequest { n, omega_only: false, dedupe: true, ceiling: DEFAULT_CEILING }
    }

    pub fn omega_only(mut self, yes: bool) -> EnumerationRequest {
        self.omega_only = yes;
        self
    }

    pub fn dedupe(mut self, yes: bool) -> EnumerationRequest {
        self.dedupe = yes;
        self
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        if self.n < MIN_N {
            return Err(EnumerationError::BelowMinimum { n: self.n });
        }
        if self.n > self.ceiling {
            return Err(EnumerationError::LimitExceeded { n: self.n, ceiling: self.ceiling });
        }
        Ok(())
    }
}

/// One enumerated chain: its turn encoding plus everything consumers sort,
/// filter, and report on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRecord {
    pub turns: TurnSequence,
    pub length_vector: LengthVector,
    pub in_omega: bool,
    pub key: CanonicalKey,
}

impl ChainRecord {
    pub fn from_chain(chain: &PolyominoChain) -> ChainRecord {
        ChainRecord {
            turns: chain.turn_sequence(),
            length_vector: chain.length_vector(),
            in_omega: chain.is_in_omega(),
            key: chain.canonical_key(),
        }
    }

    pub fn n(&self) -> usize {
        self.turns.n()
    }

    /// Re-realizes the chain from its turn sequence.
    pub fn realize(&self) -> Result<PolyominoChain, ChainError> {
        PolyominoChain::from_turns(&self.turns)
    }
}

/// Wire form of a record: the chain JSON schema plus the canonical key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecordJson {
    pub n: usize,
    pub turns: String,
    pub cells: Vec<Cell>,
    pub length_vector: Vec<usize>,
    pub in_omega: bool,
    pub canonical_key: CanonicalKey,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordParseError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("record field {field} disagrees with the realized chain")]
    Inconsistent { field: &'static str },
}

impl From<&ChainRecord> for ChainRecordJson {
    fn from(rec: &ChainRecord) -> ChainRecordJson {
        let chain = rec.realize().expect("record holds a realizable turn sequence");
        ChainRecordJson {
            n: rec.n(),
            turns: rec.turns.turn_string(),
            cells: chain.cells().to_vec(),
            length_vector: rec.length_vector.lengths().to_vec(),
            in_omega: rec.in_omega,
            canonical_key: rec.key.clone(),
        }
    }
}

impl Serialize for ChainRecord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ChainRecordJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChainRecord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<ChainRecord, D::Error> {
        let json = ChainRecordJson::deserialize(deserializer)?;
        ChainRecord::try_from(&json).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<&ChainRecordJson> for ChainRecord {
    type Error = RecordParseError;

    fn try_from(json: &ChainRecordJson) -> Result<ChainRecord, RecordParseError> {
        let turns = TurnSequence::parse(json.n, &json.turns)?;
        let chain = PolyominoChain::from_turns(&turns)?;
        let rec = ChainRecord::from_chain(&chain);
        if chain.cells() != json.cells.as_slice() {
            return Err(RecordParseError::Inconsistent { field: "cells" });
        }
        if rec.length_vector.lengths() != json.length_vector.as_slice() {
            return Err(RecordParseError::Inconsistent { field: "length_vector" });
        }
        if rec.in_omega != json.in_omega {
            return Err(RecordParseError::Inconsistent { field: "in_omega" });
        }
        if rec.key != json.canonical_key {
            return Err(RecordParseError::Inconsistent { field: "canonical_key" });
        }
        Ok(rec)
    }
}

/// Yields every realizable turn sequence of length n-2 in lexicographic
/// order (S < L < R), filtered and deduped per the request. Generation is
/// partitioned over turn prefixes and run in parallel; the merged output
/// order is the deterministic lexicographic one.
pub fn enumerate_chains(req: &EnumerationRequest) -> Result<Vec<ChainRecord>, EnumerationError> {
    req.validate()?;
    let depth = req.n - 2;
    let prefix_len = depth.min(2);
    let prefixes = turn_tuples(prefix_len);

    let parts: Vec<Vec<ChainRecord>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut out = Vec::new();
            let mut walk = Walk::start();
            if walk.extend_many(prefix) {
                descend(&mut walk, depth - prefix_len, &mut out, req.omega_only);
            }
            out
        })
        .collect();
    let mut all: Vec<ChainRecord> = parts.into_iter().flatten().collect();

    if req.dedupe {
        let mut seen: BTreeSet<CanonicalKey> = BTreeSet::new();
        all.retain(|rec| seen.insert(rec.key.clone()));
    }
    Ok(all)
}

fn turn_tuples(len: usize) -> Vec<Vec<Turn>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 3);
        for prefix in &out {
            for t in [Turn::Straight, Turn::Left, Turn::Right] {
                let mut p = prefix.clone();
                p.push(t);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn descend(walk: &mut Walk, remaining: usize, out: &mut Vec<ChainRecord>, omega_only: bool) {
    if remaining == 0 {
        let chain = PolyominoChain::from_cells(walk.cells.clone())
            .expect("incremental checks match full validation");
        let rec = ChainRecord::from_chain(&chain);
        if !omega_only || rec.in_omega {
            out.push(rec);
        }
        return;
    }
    for t in [Turn::Straight, Turn::Left, Turn::Right] {
        if walk.push(t) {
            descend(walk, remaining - 1, out, omega_only);
            walk.pop();
        }
    }
}

/// Incremental walk state: cells so far, their index map for the contact
/// rules, and the heading stack.
struct Walk {
    cells: Vec<Cell>,
    occupied: BTreeMap<Cell, usize>,
    headings: Vec<Heading2>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct Heading2 {
    dx: i64,
    dy: i64,
}

impl Heading2 {
    fn left(self) -> Heading2 {
        Heading2 { dx: -self.dy, dy: self.dx }
    }

    fn right(self) -> Heading2 {
        Heading2 { dx: self.dy, dy: -self.dx }
    }
}

impl Walk {
    fn start() -> Walk {
        let cells = vec![Cell::new(0, 0), Cell::new(1, 0)];
        let mut occupied = BTreeMap::new();
        occupied.insert(cells[0], 0);
        occupied.insert(cells[1], 1);
        Walk { cells, occupied, headings: vec![Heading2 { dx: 1, dy: 0 }] }
    }

    fn extend_many(&mut self, turns: &[Turn]) -> bool {
        for (i, &t) in turns.iter().enumerate() {
            if !self.push(t) {
                for _ in 0..i {
                    self.pop();
                }
                return false;
            }
        }
        true
    }

    /// Tries to place the next square; returns false (state unchanged) if the
    /// placement collides or touches a non-consecutive square.
    fn push(&mut self, t: Turn) -> bool {
        let h = *self.headings.last().expect("walk starts with a heading");
        let h = match t {
            Turn::Straight => h,
            Turn::Left => h.left(),
            Turn::Right => h.right(),
        };
        let last = *self.cells.last().expect("walk is nonempty");
        let c = Cell::new(last.x + h.dx, last.y + h.dy);
        let k = self.cells.len();
        if self.occupied.contains_key(&c) {
            return false;
        }
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            if let Some(&j) = self.occupied.get(&Cell::new(c.x + dx, c.y + dy)) {
                if j + 1 != k {
                    return false;
                }
            }
        }
        for (dx, dy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            if let Some(&j) = self.occupied.get(&Cell::new(c.x + dx, c.y + dy)) {
                if j + 2 != k {
                    return false;
                }
            }
        }
        self.occupied.insert(c, k);
        self.cells.push(c);
        self.headings.push(h);
        true
    }

    fn pop(&mut self) {
        let c = self.cells.pop().expect("pop matches a successful push");
        self.occupied.remove(&c);
        self.headings.pop();
    }
}

/// Aggregate counts for one square count: totals plus per-class counts keyed
/// by the length vector up to reversal. Chains sharing a length vector can
/// still differ on the degree-3 adjacency flag (kinks bounding an internal
/// length-3 segment may turn to the same or opposite sides), so each class
/// carries both counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub n: usize,
    pub total: usize,
    pub omega: usize,
    pub classes: Vec<CensusClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusClass {
    pub lengths: Vec<usize>,
    pub total: usize,
    pub omega: usize,
}

pub fn census(n: usize) -> Result<Census, EnumerationError> {
    let records = enumerate_chains(&EnumerationRequest::new(n))?;
    let mut classes: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    let mut omega = 0;
    for rec in &records {
        let key = rec.length_vector.reversal_canonical().lengths().to_vec();
        let entry = classes.entry(key).or_insert((0, 0));
        entry.0 += 1;
        if rec.in_omega {
            entry.1 += 1;
            omega += 1;
        }
    }
    Ok(Census {
        n,
        total: records.len(),
        omega,
        classes: classes
            .into_iter()
            .map(|(lengths, (total, omega))| CensusClass { lengths, total, omega })
            .collect(),
    })
}

/// Independent oracle: enumerates self-avoiding cell paths directly (first
/// step fixed east, which any chain can be rotated to) and returns the set
/// of canonical keys. Used to cross-check the turn-sequence generator.
pub fn cell_path_key_set(n: usize) -> Result<BTreeSet<CanonicalKey>, EnumerationError> {
    if n < MIN_N {
        return Err(EnumerationError::BelowMinimum { n });
    }
    if n > DEFAULT_CEILING {
        return Err(EnumerationError::LimitExceeded { n, ceiling: DEFAULT_CEILING });
    }
    let mut keys = BTreeSet::new();
    let mut cells = vec![Cell::new(0, 0), Cell::new(1, 0)];
    extend_path(&mut cells, n, &mut keys);
    Ok(keys)
}

fn extend_path(cells: &mut Vec<Cell>, n: usize, keys: &mut BTreeSet<CanonicalKey>) {
    if cells.len() == n {
        if let Ok(chain) = PolyominoChain::from_cells(cells.clone()) {
            keys.insert(chain.canonical_key());
        }
        return;
    }
    let last = *cells.last().expect("path is nonempty");
    for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
        let next = Cell::new(last.x + dx, last.y + dy);
        if cells.contains(&next) {
            continue;
        }
        cells.push(next);
        extend_path(cells, n, keys);
        cells.pop();
    }
}
