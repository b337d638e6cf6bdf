//! Affine Bruhat counter-tableaux.
//!
//! An ABC of k-weight alpha is built strip by strip: starting from the empty
//! core, step i runs the unique bottom strong chain with k - alpha_i covers
//! from some core lambda^(i) up to (k + lambda^(i-1)_1, lambda^(i-1)), and
//! the added ribbons become the letter-i cells. Rows use counter-tableau
//! coordinates: row 1 is the topmost row, column 1 the leftmost, and a cell
//! placed during strip i in French row r of the growing core lands at
//! counter row i + 1 - r. Cells keep their absolute positions; later strips
//! only fill smaller columns of existing rows and create new bottom rows.
//!
//! On top of the tableaux live the statistics: the extension appends cells
//! of letter i to row i (the first mu_i - s_i + r_i + 1 forming a ribbon,
//! which fixes the appended count at k or, in the overflow case, k + 1),
//! the marked non-tail cells V feed the greedy E-sets, each E-set yields a
//! reading word, and the k-charge subtracts the offset and beta corrections
//! from the total word charge.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cores::{bounded_from_core, Core};
use crate::error::{Anomaly, Error, Result};
use crate::partition::{Cell, Partition};
use crate::strong::{bottom_strips, bottom_strong_chain, Chain};

/// One filled cell of a counter-tableau row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbcCell {
    pub col: u32,
    pub letter: u32,
    pub ribbon: u32,
}

/// One counter-tableau row: total length plus the filled cells, which form a
/// suffix of the row (empty cells sit at the left).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbcRow {
    pub length: u32,
    pub cells: Vec<AbcCell>,
}

/// A ribbon of an ABC: a maximal contiguous run of same-letter cells sharing
/// a ribbon id within one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbcRibbon {
    pub id: u32,
    pub letter: u32,
    pub row: u32,
    pub col_start: u32,
    pub col_end: u32,
}

impl AbcRibbon {
    pub fn size(&self) -> u32 {
        self.col_end - self.col_start + 1
    }

    /// Head cell (rightmost) in counter coordinates.
    pub fn head(&self) -> Cell {
        Cell::new(self.row, self.col_end)
    }
}

/// Residue of a counter-tableau cell mod p. Counter rows grow downward, so
/// (row + col) mod p agrees with the content of the bottom-justified diagram
/// up to one global shift, which is all residue comparisons need.
fn counter_residue(cell: Cell, p: u32) -> u32 {
    ((cell.row as i64 + cell.col as i64).rem_euclid(p as i64)) as u32
}

/// An affine Bruhat counter-tableau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abc {
    k: u32,
    weight: Vec<u32>,
    rows: Vec<AbcRow>,
    inner_shape: Core,
}

#[derive(Serialize, Deserialize)]
struct AbcWire {
    k: u32,
    weight: Vec<u32>,
    rows: Vec<AbcRow>,
    inner_shape: Partition,
}

impl Serialize for Abc {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        AbcWire {
            k: self.k,
            weight: self.weight.clone(),
            rows: self.rows.clone(),
            inner_shape: self.inner_shape.shape().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Abc {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = AbcWire::deserialize(deserializer)?;
        let abc = Abc::from_parts(wire.k, wire.weight, wire.rows).map_err(D::Error::custom)?;
        if abc.inner_shape.shape() != &wire.inner_shape {
            return Err(D::Error::custom(format!(
                "inner shape mismatch: stated {}, computed {}",
                wire.inner_shape,
                abc.inner_shape.shape()
            )));
        }
        Ok(abc)
    }
}

/// Shapes lambda^(0), ..., lambda^(ell) read off the rows: lambda^(x) counts,
/// per counter row j <= x, the cells that are empty or hold a letter larger
/// than x; counter row j becomes French row x + 1 - j.
fn lambda_shapes_from_rows(rows: &[AbcRow]) -> Result<Vec<Partition>> {
    let ell = rows.len();
    let mut out = Vec::with_capacity(ell + 1);
    for x in 0..=ell {
        let mut parts = Vec::with_capacity(x);
        for r in 1..=x {
            let j = x + 1 - r; // counter row index (1-based)
            let row = &rows[j - 1];
            let empties = row
                .length
                .checked_sub(row.cells.len() as u32)
                .ok_or_else(|| {
                    Error::InputError(format!("row {j} holds more cells than its length"))
                })?;
            let above = row.cells.iter().filter(|c| c.letter > x as u32).count() as u32;
            parts.push(empties + above);
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let shape = Partition::new(parts).map_err(|_| {
            Error::InputError(format!(
                "letter restriction at level {x} is not a partition"
            ))
        })?;
        out.push(shape);
    }
    Ok(out)
}

impl Abc {
    /// Builds and fully validates a counter-tableau from raw rows.
    pub fn from_parts(k: u32, weight: Vec<u32>, rows: Vec<AbcRow>) -> Result<Abc> {
        let shapes = lambda_shapes_from_rows(&rows)?;
        let inner_shape = Core::new(shapes.last().unwrap().clone(), k + 1)?;
        let abc = Abc {
            k,
            weight,
            rows,
            inner_shape,
        };
        abc.validate()?;
        Ok(abc)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn weight(&self) -> &[u32] {
        &self.weight
    }

    /// Size of the weight (the degree of the tableau as a monomial).
    pub fn weight_size(&self) -> u64 {
        self.weight.iter().map(|&a| a as u64).sum()
    }

    pub fn rows(&self) -> &[AbcRow] {
        &self.rows
    }

    pub fn inner_shape(&self) -> &Core {
        &self.inner_shape
    }

    /// Ribbons grouped out of the cells, ordered by id.
    pub fn ribbons(&self) -> Vec<AbcRibbon> {
        let mut by_id: BTreeMap<u32, AbcRibbon> = BTreeMap::new();
        for (j, row) in self.rows.iter().enumerate() {
            for cell in &row.cells {
                by_id
                    .entry(cell.ribbon)
                    .and_modify(|r| {
                        r.col_start = r.col_start.min(cell.col);
                        r.col_end = r.col_end.max(cell.col);
                    })
                    .or_insert(AbcRibbon {
                        id: cell.ribbon,
                        letter: cell.letter,
                        row: j as u32 + 1,
                        col_start: cell.col,
                        col_end: cell.col,
                    });
            }
        }
        by_id.into_values().collect()
    }

    /// Same filling and ribbon decomposition, ignoring ribbon id labels.
    pub fn same_filling(&self, other: &Abc) -> bool {
        if self.k != other.k || self.weight != other.weight {
            return false;
        }
        let strip = |abc: &Abc| -> Vec<(u32, Vec<(u32, u32)>)> {
            abc.rows
                .iter()
                .map(|r| {
                    (
                        r.length,
                        r.cells.iter().map(|c| (c.col, c.letter)).collect(),
                    )
                })
                .collect()
        };
        let groups = |abc: &Abc| -> BTreeSet<(u32, u32, u32, u32)> {
            abc.ribbons()
                .iter()
                .map(|r| (r.row, r.col_start, r.col_end, r.letter))
                .collect()
        };
        strip(self) == strip(other) && groups(self) == groups(other)
    }

    /// Full structural validation against the strip-by-strip definition.
    #[allow(clippy::needless_range_loop)]
    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        let ell = self.weight.len();
        if self.rows.len() != ell {
            return Err(Error::InputError(format!(
                "{} rows for a weight of {} entries",
                self.rows.len(),
                ell
            )));
        }
        for (i, &a) in self.weight.iter().enumerate() {
            if a == 0 || a > k {
                return Err(Error::WeightError(format!(
                    "weight entry {} at position {} is outside 1..={k}",
                    a,
                    i + 1
                )));
            }
        }
        for (j, row) in self.rows.iter().enumerate() {
            let m = row.cells.len() as u32;
            if m > row.length {
                return Err(Error::InputError(format!(
                    "row {} holds more cells than its length",
                    j + 1
                )));
            }
            for (idx, cell) in row.cells.iter().enumerate() {
                if cell.col != row.length - m + 1 + idx as u32 {
                    return Err(Error::InputError(format!(
                        "cells of row {} are not a sorted suffix",
                        j + 1
                    )));
                }
                if (cell.letter as usize) < j + 1 || cell.letter as usize > ell {
                    return Err(Error::InputError(format!(
                        "letter {} cannot appear in row {}",
                        cell.letter,
                        j + 1
                    )));
                }
            }
            if row.cells.windows(2).any(|w| w[0].letter < w[1].letter) {
                return Err(Error::InputError(format!(
                    "letters in row {} do not weakly decrease",
                    j + 1
                )));
            }
        }
        // ribbon groups: one row, one letter, contiguous columns
        let mut cells_by_ribbon: BTreeMap<u32, Vec<(u32, AbcCell)>> = BTreeMap::new();
        for (j, row) in self.rows.iter().enumerate() {
            for cell in &row.cells {
                cells_by_ribbon
                    .entry(cell.ribbon)
                    .or_default()
                    .push((j as u32 + 1, *cell));
            }
        }
        for (id, members) in &cells_by_ribbon {
            let row = members[0].0;
            let letter = members[0].1.letter;
            let mut cols: Vec<u32> = members.iter().map(|(_, c)| c.col).collect();
            cols.sort_unstable();
            if members.iter().any(|(r, c)| *r != row || c.letter != letter)
                || cols.windows(2).any(|w| w[1] != w[0] + 1)
            {
                return Err(Error::InputError(format!(
                    "ribbon {id} is not a horizontal contiguous run"
                )));
            }
        }
        // strip-by-strip reconstruction
        let shapes = lambda_shapes_from_rows(&self.rows)?;
        let p = k + 1;
        let mut prev = Core::new(shapes[0].clone(), p)?;
        for i in 1..=ell {
            let nu = Core::new(shapes[i].clone(), p).map_err(|_| {
                Error::InputError(format!("level-{i} restriction is not a {p}-core"))
            })?;
            let row = &self.rows[i - 1];
            if row.length != k + prev.shape().part(0) {
                return Err(Error::InputError(format!(
                    "row {i} has length {}, expected {}",
                    row.length,
                    k + prev.shape().part(0)
                )));
            }
            let chain = bottom_strong_chain(&nu, &prev)?.ok_or_else(|| {
                Error::InputError(format!(
                    "letters {i}: {} -> target over {} is not a bottom strong strip",
                    nu.shape(),
                    prev.shape()
                ))
            })?;
            if chain.len() as u32 != k - self.weight[i - 1] {
                return Err(Error::InputError(format!(
                    "strip {i} has {} covers, expected {}",
                    chain.len(),
                    k - self.weight[i - 1]
                )));
            }
            // ribbons of the chain must match the letter-i ribbon groups
            let expected = chain_ribbon_spans(&chain, i as u32)?;
            let got: BTreeSet<(u32, u32, u32)> = self
                .ribbons()
                .iter()
                .filter(|r| r.letter == i as u32)
                .map(|r| (r.row, r.col_start, r.col_end))
                .collect();
            if expected != got {
                return Err(Error::InputError(format!(
                    "letter-{i} ribbons {:?} do not match the unique chain {:?}",
                    got, expected
                )));
            }
            prev = nu;
        }
        if prev != self.inner_shape {
            return Err(Error::InputError(format!(
                "stored inner shape {} differs from computed {}",
                self.inner_shape.shape(),
                prev.shape()
            )));
        }
        Ok(())
    }
}

/// Counter-coordinate spans (row, col_start, col_end) of the ribbons a chain
/// contributes as letter-i cells.
fn chain_ribbon_spans(chain: &Chain, strip: u32) -> Result<BTreeSet<(u32, u32, u32)>> {
    let mut spans = BTreeSet::new();
    for cover in chain.covers() {
        for ribbon in cover.components() {
            if !ribbon.is_horizontal() {
                return Err(Error::NotARibbon(
                    "strip ribbon spans more than one row".into(),
                ));
            }
            let cells = ribbon.cells();
            let fr_row = cells[0].row;
            if fr_row > strip {
                return Err(Error::InputError(format!(
                    "strip {strip} placed a cell in French row {fr_row}"
                )));
            }
            let counter_row = strip + 1 - fr_row;
            let cols: Vec<u32> = cells.iter().map(|c| c.col).collect();
            let lo = *cols.iter().min().unwrap();
            let hi = *cols.iter().max().unwrap();
            spans.insert((counter_row, lo, hi));
        }
    }
    Ok(spans)
}

/// Enumerates every ABC with the given k-weight (a composition with entries
/// in 1..=k), optionally keeping only those with a prescribed inner shape.
/// The output order is deterministic: sorted by inner shape (descending) and
/// then by rows.
pub fn abc_enumerate(k: u32, weight: &[u32], inner: Option<&Core>) -> Result<Vec<Abc>> {
    for &a in weight {
        if a == 0 || a > k {
            return Err(Error::WeightError(format!(
                "weight entry {a} is outside 1..={k}"
            )));
        }
    }
    if let Some(core) = inner {
        if core.p() != k + 1 {
            return Err(Error::ParameterMismatch(core.p(), k + 1));
        }
    }

    struct Assembler<'a> {
        k: u32,
        weight: &'a [u32],
        inner: Option<&'a Core>,
        out: Vec<Abc>,
    }

    impl Assembler<'_> {
        fn step(
            &mut self,
            strip: usize,
            prev: &Core,
            rows: &mut Vec<AbcRow>,
            next_ribbon: u32,
        ) -> Result<()> {
            if strip > self.weight.len() {
                if self.inner.is_none_or(|want| want == prev) {
                    let abc = Abc {
                        k: self.k,
                        weight: self.weight.to_vec(),
                        rows: rows.clone(),
                        inner_shape: prev.clone(),
                    };
                    debug_assert!(abc.validate().is_ok());
                    self.out.push(abc);
                }
                return Ok(());
            }
            let m = self.k - self.weight[strip - 1];
            let strips = bottom_strips(prev, m)?;
            rows.push(AbcRow {
                length: self.k + prev.shape().part(0),
                cells: Vec::new(),
            });
            for (nu, chain) in strips.iter() {
                let mut id = next_ribbon;
                let mut placed: Vec<(usize, AbcCell)> = Vec::new();
                for cover in chain.covers() {
                    for ribbon in cover.components() {
                        let fr_row = ribbon.cells()[0].row as usize;
                        debug_assert!(fr_row <= strip);
                        let counter_row = strip + 1 - fr_row;
                        for cell in ribbon.cells() {
                            placed.push((
                                counter_row,
                                AbcCell {
                                    col: cell.col,
                                    letter: strip as u32,
                                    ribbon: id,
                                },
                            ));
                        }
                        id += 1;
                    }
                }
                for (row, cell) in &placed {
                    rows[row - 1].cells.push(*cell);
                }
                for row in rows.iter_mut() {
                    row.cells.sort_by_key(|c| c.col);
                }
                self.step(strip + 1, nu, rows, id)?;
                for (row, cell) in &placed {
                    rows[row - 1].cells.retain(|c| c != cell);
                }
            }
            rows.pop();
            Ok(())
        }
    }

    let mut asm = Assembler {
        k,
        weight,
        inner,
        out: Vec::new(),
    };
    asm.step(1, &Core::empty(k + 1), &mut Vec::new(), 0)?;
    let mut out = asm.out;
    out.sort_by(|a, b| {
        b.inner_shape
            .shape()
            .cmp(a.inner_shape.shape())
            .then_with(|| a.rows.cmp(&b.rows))
    });
    Ok(out)
}

/// The extension of an ABC with partition weight: appended letter-i cells
/// per row i, the first mu_i - s_i + r_i + 1 of them forming a ribbon, plus
/// the marked set V of non-tail cells of letter-i ribbons living in row i.
///
/// Nominally k cells are appended. When a row carries mu_i = k and only
/// singleton ribbons, the split formula asks for a ribbon of k + 1 cells;
/// the row is then extended by k + 1 so the ribbon fits whole. (Capping the
/// ribbon at k instead loses a marked cell and produces negative k-charges
/// already at k = 2, weight (2,2).)
#[derive(Clone, Debug)]
pub struct ExtendedAbc {
    base: Abc,
    appended: Vec<AppendedRow>,
    marked: BTreeSet<Cell>,
}

#[derive(Clone, Copy, Debug)]
struct AppendedRow {
    ribbon_start: u32,
    ribbon_len: u32,
    total: u32,
}

impl ExtendedAbc {
    pub fn base(&self) -> &Abc {
        &self.base
    }

    /// The marked cells V in counter coordinates, sorted by (row, col).
    pub fn marked(&self) -> Vec<Cell> {
        self.marked.iter().copied().collect()
    }

    /// Appended span of a row: (first column, ribbon length, total added).
    pub fn appended_span(&self, row: u32) -> (u32, u32, u32) {
        let a = &self.appended[row as usize - 1];
        (a.ribbon_start, a.ribbon_len, a.total)
    }
}

/// Builds the extension. Requires the weight to be a partition.
pub fn extend(abc: &Abc) -> Result<ExtendedAbc> {
    let k = abc.k();
    let weight = abc.weight();
    if weight.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::WeightError(format!(
            "weight {:?} is not a partition",
            weight
        )));
    }
    let ribbons = abc.ribbons();
    let mut appended = Vec::with_capacity(abc.rows().len());
    let mut marked = BTreeSet::new();
    for (j, row) in abc.rows().iter().enumerate() {
        let i = j as u32 + 1;
        let own: Vec<&AbcRibbon> = ribbons
            .iter()
            .filter(|r| r.row == i && r.letter == i)
            .collect();
        let s: i64 = own.iter().map(|r| r.size() as i64).sum();
        let r = own.len() as i64;
        let nominal = weight[j] as i64 - s + r + 1;
        if nominal < 1 || nominal > k as i64 + 1 {
            return Err(Error::Anomaly(Anomaly::ExtensionSplit {
                row: i,
                value: nominal,
            }));
        }
        let ribbon_len = nominal as u32;
        let start = row.length + 1;
        appended.push(AppendedRow {
            ribbon_start: start,
            ribbon_len,
            total: k.max(ribbon_len),
        });
        // marked cells: non-tail cells of the letter-i ribbons of row i
        for rib in &own {
            for col in rib.col_start + 1..=rib.col_end {
                marked.insert(Cell::new(i, col));
            }
        }
        for col in start + 1..start + ribbon_len {
            marked.insert(Cell::new(i, col));
        }
    }
    Ok(ExtendedAbc {
        base: abc.clone(),
        appended,
        marked,
    })
}

/// One greedy E-set: at most one marked cell per row, consecutive rows from
/// the top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ESet {
    pub r: u32,
    pub cells: Vec<Cell>,
}

impl ESet {
    pub fn columns(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c.col).collect()
    }
}

/// Extracts the E-sets for r = 1..=mu_1. The r-th seed sits at column
/// k + mu_1 + 2 - r of row 1; each following row contributes the
/// still-available marked cell minimizing (c_prev - x + k) mod (k + 1),
/// and extraction stops at the first row with no available cell. The seeds
/// are exactly the non-tail cells of the first row's appended ribbon, so a
/// missing seed is an anomaly.
pub fn e_sets(ext: &ExtendedAbc) -> Result<Vec<ESet>> {
    let k = ext.base.k();
    let p = k as i64 + 1;
    let mu1 = ext.base.weight().first().copied().unwrap_or(0);
    let rows = ext.base.rows().len() as u32;
    let mut available = ext.marked.clone();
    let mut out = Vec::with_capacity(mu1 as usize);
    for r in 1..=mu1 {
        let seed_col = k + mu1 + 2 - r;
        let seed = Cell::new(1, seed_col);
        if !available.remove(&seed) {
            return Err(Error::Anomaly(Anomaly::SeedMissing { r, col: seed_col }));
        }
        let mut cells = vec![seed];
        let mut prev_col = seed_col as i64;
        for row in 2..=rows {
            let candidates: Vec<Cell> =
                available.iter().filter(|c| c.row == row).copied().collect();
            if candidates.is_empty() {
                break;
            }
            let key = |c: &Cell| (prev_col - c.col as i64 + k as i64).rem_euclid(p);
            let best = candidates.iter().map(key).min().unwrap();
            let winners: Vec<&Cell> = candidates.iter().filter(|c| key(c) == best).collect();
            if winners.len() > 1 {
                return Err(Error::Anomaly(Anomaly::EsetTie { r, row }));
            }
            let chosen = *winners[0];
            available.remove(&chosen);
            prev_col = chosen.col as i64;
            cells.push(chosen);
        }
        out.push(ESet { r, cells });
    }
    Ok(out)
}

/// Insertion rule for reading words. The definition's "largest index" clause
/// does not reproduce the worked examples verbatim, so both readings are
/// provided; they agree on charge, which is what the statistics consume.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InsertionRule {
    /// Insert letter i right of the largest j < i with column(j) < column(i).
    LargestIndex,
    /// Insert letter i right of the j < i whose column is largest among
    /// those with column(j) < column(i), ties to the larger j. This variant
    /// reproduces the worked standard-weight iteration.
    #[default]
    LargestColumn,
}

/// The reading word of one E-set under the chosen insertion rule. Letter i
/// corresponds to the i-th cell (top row first); letters with no qualifying
/// predecessor go to the front.
pub fn reading_word(eset: &ESet, rule: InsertionRule) -> Vec<u32> {
    let cols = eset.columns();
    let mut word: Vec<u32> = Vec::with_capacity(cols.len());
    for i in 1..=cols.len() {
        let ci = cols[i - 1];
        let candidates = (1..i).filter(|&j| cols[j - 1] < ci);
        let chosen = match rule {
            InsertionRule::LargestIndex => candidates.clone().next_back(),
            InsertionRule::LargestColumn => candidates.max_by_key(|&j| (cols[j - 1], j)),
        };
        match chosen {
            Some(j) => {
                let at = word.iter().position(|&x| x == j as u32).unwrap();
                word.insert(at + 1, i as u32);
            }
            None => word.insert(0, i as u32),
        }
    }
    word
}

/// Charge of an E-set straight from its columns: counters increase whenever
/// a column exceeds its predecessor.
pub fn column_charge(eset: &ESet) -> u64 {
    let cols = eset.columns();
    let mut counter = 0u64;
    let mut total = 0u64;
    for i in 1..cols.len() {
        if cols[i] > cols[i - 1] {
            counter += 1;
        }
        total += counter;
    }
    total
}

/// Per-E-set charges. Computed from the column statistic and cross-checked
/// against the charge of the insertion reading word; a disagreement is an
/// anomaly, not a silent choice.
pub fn word_charges(ext: &ExtendedAbc) -> Result<Vec<u64>> {
    let mut charges = Vec::new();
    for eset in e_sets(ext)? {
        let by_columns = column_charge(&eset);
        let word = reading_word(&eset, InsertionRule::default());
        let by_word = crate::charge::charge_permutation(&word)?;
        if by_word != by_columns {
            return Err(Error::Anomaly(Anomaly::ChargeMismatch {
                r: eset.r,
                insertion: by_word,
                column: by_columns,
            }));
        }
        charges.push(by_columns);
    }
    Ok(charges)
}

/// The offset ribbons of an ABC and their total contribution: a ribbon is an
/// offset when a strictly lower ribbon with the same letter and size has a
/// head of the same residue; each offset contributes size - 1.
pub fn offsets(abc: &Abc) -> (Vec<AbcRibbon>, u64) {
    let p = abc.k() + 1;
    let ribbons = abc.ribbons();
    let mut hits = Vec::new();
    for r in &ribbons {
        let repeated = ribbons.iter().any(|lower| {
            lower.letter == r.letter
                && lower.size() == r.size()
                && lower.row > r.row
                && counter_residue(lower.head(), p) == counter_residue(r.head(), p)
        });
        if repeated {
            hits.push(*r);
        }
    }
    let total = hits.iter().map(|r| (r.size() - 1) as u64).sum();
    (hits, total)
}

/// Number of inner-shape cells with hook length exceeding k.
pub fn beta(abc: &Abc) -> u64 {
    let shape = abc.inner_shape().shape();
    shape
        .cells()
        .filter(|&c| shape.hook_length(c).unwrap() > abc.k())
        .count() as u64
}

/// All the statistics of one ABC.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbcStats {
    pub charge_words: Vec<u64>,
    pub off: u64,
    pub beta: u64,
    pub k_charge: u64,
}

/// Computes word charges, offsets, beta and the k-charge in one pass.
/// A negative k-charge is reported as an anomaly.
pub fn stats(abc: &Abc) -> Result<AbcStats> {
    let ext = extend(abc)?;
    let charge_words = word_charges(&ext)?;
    let (_, off) = offsets(abc);
    let b = beta(abc);
    let total: u64 = charge_words.iter().sum();
    let k_charge = total as i64 - off as i64 - b as i64;
    if k_charge < 0 {
        return Err(Error::Anomaly(Anomaly::NegativeKCharge(k_charge)));
    }
    if abc.k() as u64 == abc.weight_size() {
        debug_assert!(off == 0 && b == 0, "corrections must vanish at k = |mu|");
    }
    Ok(AbcStats {
        charge_words,
        off,
        beta: b,
        k_charge: k_charge as u64,
    })
}

/// The k-charge of an ABC with partition weight.
pub fn k_charge(abc: &Abc) -> Result<u64> {
    Ok(stats(abc)?.k_charge)
}

/// Convenience: the inner shape as a k-bounded partition.
pub fn inner_bounded(abc: &Abc) -> Partition {
    bounded_from_core(abc.inner_shape())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cores::core_from_bounded;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Row shorthand: (length, [(col, letter, ribbon)]).
    fn row(length: u32, cells: &[(u32, u32, u32)]) -> AbcRow {
        AbcRow {
            length,
            cells: cells
                .iter()
                .map(|&(col, letter, ribbon)| AbcCell {
                    col,
                    letter,
                    ribbon,
                })
                .collect(),
        }
    }

    use crate::verify::fixtures::{abc_3_offset, abc_5_331, abc_5_3331};

    #[test]
    fn enumerate_contains_worked_examples() {
        let want = abc_5_331();
        let all = abc_enumerate(5, &[3, 3, 1], None).unwrap();
        assert!(all.iter().any(|a| a.same_filling(&want)));
        assert_eq!(want.inner_shape().shape(), &p(&[4, 3]));

        // single strip below k: exactly one tableau, k - m singletons
        for k in 2..=5u32 {
            for m in 1..k {
                let out = abc_enumerate(k, &[m], None).unwrap();
                assert_eq!(out.len(), 1);
                let abc = &out[0];
                assert_eq!(abc.inner_shape().shape(), &p(&[m]));
                assert_eq!(abc.rows()[0].cells.len() as u32, k - m);
                assert!(abc.ribbons().iter().all(|r| r.size() == 1));
            }
        }
    }

    #[test]
    fn enumerate_contains_6weight_example() {
        let want = Abc::from_parts(
            6,
            vec![4, 4, 2, 1],
            vec![
                row(
                    6,
                    &[(2, 4, 105), (3, 2, 21), (4, 2, 22), (5, 1, 1), (6, 1, 2)],
                ),
                row(
                    10,
                    &[
                        (3, 3, 50),
                        (4, 3, 51),
                        (5, 3, 52),
                        (6, 3, 53),
                        (7, 3, 53),
                        (8, 3, 53),
                        (9, 2, 23),
                        (10, 2, 24),
                    ],
                ),
                row(
                    14,
                    &[
                        (3, 4, 100),
                        (4, 4, 101),
                        (5, 4, 102),
                        (6, 4, 102),
                        (7, 4, 103),
                        (8, 4, 104),
                        (9, 3, 54),
                        (10, 3, 55),
                        (11, 3, 56),
                        (12, 3, 57),
                        (13, 3, 57),
                        (14, 3, 57),
                    ],
                ),
                row(
                    14,
                    &[
                        (9, 4, 110),
                        (10, 4, 111),
                        (11, 4, 112),
                        (12, 4, 112),
                        (13, 4, 113),
                        (14, 4, 114),
                    ],
                ),
            ],
        )
        .unwrap();
        assert_eq!(want.inner_shape().shape(), &p(&[8, 2, 2, 1]));
        assert_eq!(inner_bounded(&want), p(&[6, 2, 2, 1]));
        let matching = abc_enumerate(
            6,
            &[4, 4, 2, 1],
            Some(&core_from_bounded(&p(&[6, 2, 2, 1]), 6).unwrap()),
        )
        .unwrap();
        assert!(matching.iter().any(|a| a.same_filling(&want)));
    }

    #[test]
    fn validate_rejects_mutations() {
        let good = abc_5_331();
        let mut rows: Vec<AbcRow> = good.rows().to_vec();
        rows[0].cells[2].letter = 1; // relabel one letter
        assert!(Abc::from_parts(5, vec![3, 3, 1], rows).is_err());
    }

    #[test]
    fn serde_round_trip_validates() {
        for abc in abc_enumerate(3, &[2, 1, 2], None).unwrap() {
            let text = serde_json::to_string(&abc).unwrap();
            let back: Abc = serde_json::from_str(&text).unwrap();
            assert_eq!(back, abc);
            assert!(back.validate().is_ok());
        }
        // corrupting the payload fails deserialization
        let abc = &abc_enumerate(2, &[1, 1], None).unwrap()[0];
        let mut value: serde_json::Value = serde_json::to_value(abc).unwrap();
        value["rows"][0]["cells"][0]["letter"] = serde_json::json!(9);
        assert!(serde_json::from_value::<Abc>(value).is_err());
        // a row shorter than its cell list is rejected, not a panic
        let mut value: serde_json::Value = serde_json::to_value(abc).unwrap();
        value["rows"][0]["length"] = serde_json::json!(0);
        assert!(serde_json::from_value::<Abc>(value).is_err());
    }

    #[test]
    fn extension_small_example() {
        // k = 2, weight (1): one row [empty, letter 1], appended 2-ribbon
        let abc = &abc_enumerate(2, &[1], None).unwrap()[0];
        let ext = extend(abc).unwrap();
        assert_eq!(ext.appended_span(1), (3, 2, 2));
        assert_eq!(ext.marked(), vec![Cell::new(1, 4)]);
    }

    #[test]
    fn extension_weight_order_is_required() {
        for abc in abc_enumerate(3, &[1, 2], None).unwrap() {
            assert!(matches!(extend(&abc), Err(Error::WeightError(_))));
        }
    }

    #[test]
    fn marked_cells_of_worked_example() {
        // 5-weight (3,3,3,1) extension example
        let abc = abc_5_3331();
        let ext = extend(&abc).unwrap();
        let want = [
            (1, 7),
            (1, 8),
            (1, 9),
            (2, 6),
            (2, 7),
            (2, 10),
            (3, 8),
            (3, 11),
            (3, 12),
            (4, 10),
        ];
        let got: Vec<(u32, u32)> = ext.marked().iter().map(|c| (c.row, c.col)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn e_sets_of_worked_example() {
        let abc = abc_5_3331();
        let ext = extend(&abc).unwrap();
        let sets = e_sets(&ext).unwrap();
        let as_pairs =
            |s: &ESet| -> Vec<(u32, u32)> { s.cells.iter().map(|c| (c.row, c.col)).collect() };
        assert_eq!(sets.len(), 3);
        assert_eq!(as_pairs(&sets[0]), [(1, 9), (2, 7), (3, 12), (4, 10)]);
        assert_eq!(as_pairs(&sets[1]), [(1, 8), (2, 6), (3, 11)]);
        assert_eq!(as_pairs(&sets[2]), [(1, 7), (2, 10), (3, 8)]);
        assert_eq!(word_charges(&ext).unwrap(), vec![2, 1, 2]);
        // the worked first and third reading words
        assert_eq!(
            reading_word(&sets[0], InsertionRule::LargestColumn),
            vec![2, 1, 4, 3]
        );
        assert_eq!(
            reading_word(&sets[1], InsertionRule::LargestColumn),
            vec![2, 1, 3]
        );
        // the printed third word is (3,1,2); both rules give a word of the
        // same charge instead
        let w3 = reading_word(&sets[2], InsertionRule::LargestColumn);
        assert_eq!(w3, vec![1, 3, 2]);
        assert_eq!(
            crate::charge::charge_permutation(&w3).unwrap(),
            crate::charge::charge_permutation(&[3, 1, 2]).unwrap()
        );
    }

    #[test]
    fn standard_weight_esets_are_the_marked_cells() {
        for k in 2..=4u32 {
            for n in 1..=4usize {
                let weight = vec![1u32; n];
                for abc in abc_enumerate(k, &weight, None).unwrap() {
                    let ext = extend(&abc).unwrap();
                    let sets = e_sets(&ext).unwrap();
                    assert_eq!(sets.len(), 1);
                    assert_eq!(sets[0].cells, ext.marked());
                }
            }
        }
    }

    #[test]
    fn k2_hand_trace() {
        // weight (1,1): two tableaux, inner (2) with k-charge 1 and inner
        // (1,1) with k-charge 0
        let all = abc_enumerate(2, &[1, 1], None).unwrap();
        assert_eq!(all.len(), 2);
        for abc in &all {
            let ext = extend(abc).unwrap();
            let st = stats(abc).unwrap();
            if abc.inner_shape().shape() == &p(&[2]) {
                assert_eq!(ext.marked(), vec![Cell::new(1, 4), Cell::new(2, 5)]);
                let sets = e_sets(&ext).unwrap();
                assert_eq!(sets[0].cells, vec![Cell::new(1, 4), Cell::new(2, 5)]);
                assert_eq!(st.k_charge, 1);
            } else {
                assert_eq!(abc.inner_shape().shape(), &p(&[1, 1]));
                assert_eq!(st.k_charge, 0);
            }
        }
        // weight (2): the single tableau has an empty row and k-charge 0
        let all = abc_enumerate(2, &[2], None).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].inner_shape().shape(), &p(&[2]));
        assert_eq!(stats(&all[0]).unwrap().k_charge, 0);
    }

    #[test]
    fn offsets_beta_and_k_charge() {
        let abc = abc_3_offset();
        assert_eq!(abc.inner_shape().shape(), &p(&[3, 1, 1, 1]));
        let (hits, off) = offsets(&abc);
        assert_eq!(off, 1);
        // the only size contribution comes from the 2-ribbon in row 4
        assert!(hits
            .iter()
            .any(|r| r.row == 4 && r.letter == 5 && r.size() == 2));
        assert_eq!(beta(&abc), 1);
        let st = stats(&abc).unwrap();
        assert_eq!(st.charge_words, vec![5]);
        assert_eq!(st.k_charge, 3);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(
            {
                let abc = abc_3_offset();
                beta(&abc)
            },
            1
        );
        // inner (8,2,2,1) at k = 6: hooks 11 and 9 exceed 6
        let shape = p(&[8, 2, 2, 1]);
        let over = shape
            .cells()
            .filter(|&c| shape.hook_length(c).unwrap() > 6)
            .count();
        assert_eq!(over, 2);
    }

    #[test]
    fn single_row_weights_have_charge_zero() {
        for k in 2..=5u32 {
            for m in 1..=k {
                let all = abc_enumerate(k, &[m], None).unwrap();
                assert_eq!(all.len(), 1);
                assert_eq!(stats(&all[0]).unwrap().k_charge, 0);
            }
        }
    }

    #[test]
    fn standard_weights_have_small_ribbons() {
        for k in 2..=4u32 {
            for n in 1..=5usize {
                for abc in abc_enumerate(k, &vec![1u32; n], None).unwrap() {
                    assert!(abc.ribbons().iter().all(|r| r.size() <= 2));
                    let ext = extend(&abc).unwrap();
                    for i in 1..=n as u32 {
                        let own: Vec<AbcRibbon> = abc
                            .ribbons()
                            .into_iter()
                            .filter(|r| r.row == i && r.letter == i && r.size() == 2)
                            .collect();
                        let (_, app_len, _) = ext.appended_span(i);
                        let twos = own.len() + usize::from(app_len == 2);
                        assert_eq!(twos, 1, "row {i} must own exactly one 2-ribbon");
                    }
                }
            }
        }
    }

    #[test]
    fn weight_symmetry_of_counts() {
        // the number of tableaux depends only on the multiset of the weight
        for k in 2..=3u32 {
            let base = [2u32, 1, 2];
            let reference = abc_enumerate(k, &base, None).unwrap().len();
            for perm in [[1u32, 2, 2], [2, 2, 1]] {
                assert_eq!(abc_enumerate(k, &perm, None).unwrap().len(), reference);
            }
        }
    }
}
