//! Integer partitions and their Ferrers shapes, drawn in French convention:
//! row 1 is the bottom (longest) row, cell `(i, j)` sits in row `i` counted
//! from the bottom and column `j` counted from the left.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive integer parts, canonical form
/// (no trailing zeros). The empty partition is `[]`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A lattice cell addressed as (row, column), both 1-based. Which corner the
/// rows grow from depends on context: shapes use French convention (row 1 at
/// the bottom), counter-tableaux use row 1 at the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Cell { row, col }
    }

    /// Content of the cell: column minus row.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl Partition {
    /// Builds a partition after checking the parts are weakly decreasing and
    /// strictly positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {:?}", parts)));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {:?}",
                parts
            )));
        }
        Ok(Partition { parts })
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Containment of Ferrers shapes.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i) >= p)
    }

    /// Conjugate (transpose) partition.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        let mut j = 1;
        loop {
            let count = self.parts.iter().take_while(|&&p| p >= j).count() as u32;
            if count == 0 {
                break;
            }
            parts.push(count);
            j += 1;
        }
        Partition { parts }
    }

    /// Number of rows with at least `col` cells.
    pub fn col_height(&self, col: u32) -> u32 {
        self.parts.iter().take_while(|&&p| p >= col).count() as u32
    }

    /// Whether `cell` lies inside the shape.
    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && self.part(cell.row as usize - 1) >= cell.col
    }

    /// Iterates over all cells, row by row from the bottom.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i as u32 + 1, j)))
    }

    /// Hook length of `cell`: arm plus leg plus one.
    pub fn hook_length(&self, cell: Cell) -> Result<u32> {
        if !self.contains_cell(cell) {
            return Err(Error::OutOfShape {
                row: cell.row,
                col: cell.col,
                shape: self.to_string(),
            });
        }
        let arm = self.part(cell.row as usize - 1) - cell.col;
        let leg = self.col_height(cell.col) - cell.row;
        Ok(arm + leg + 1)
    }

    /// Appends a new bottom row of the given length, which must be at least
    /// the current first part.
    pub fn with_new_bottom_row(&self, len: u32) -> Partition {
        debug_assert!(len >= self.part(0));
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.push(len);
        parts.extend_from_slice(&self.parts);
        Partition { parts }
    }
}

/// Dominance order: true iff every prefix sum of `lhs` is at most the
/// corresponding prefix sum of `rhs`. Both partitions must have equal size.
pub fn dominance_leq(lhs: &Partition, rhs: &Partition) -> Result<bool> {
    if lhs.size() != rhs.size() {
        return Err(Error::SizeMismatch(lhs.to_string(), rhs.to_string()));
    }
    let rows = lhs.len().max(rhs.len());
    let mut a = 0u64;
    let mut b = 0u64;
    for i in 0..rows {
        a += lhs.part(i) as u64;
        b += rhs.part(i) as u64;
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `n`, in canonical order (reverse-lexicographic
/// descending: `(n)` first, `(1^n)` last).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    partitions_bounded(n, n)
}

/// All partitions of `n` with parts at most `max_part`, canonical order.
pub fn partitions_bounded(n: u32, max_part: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let hi = remaining.min(max);
        for next in (1..=hi).rev() {
            prefix.push(next);
            rec(remaining - next, next, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if max_part == 0 {
        if n == 0 {
            out.push(Partition::empty());
        }
        return out;
    }
    rec(n, max_part, &mut Vec::new(), &mut out);
    out
}

/// Sorts a list of partitions into canonical order (descending).
pub fn sort_canonical(list: &mut [Partition]) {
    list.sort_by(|a, b| b.cmp(a));
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn hook_lengths() {
        // single cell
        assert_eq!(p(&[1]).hook_length(Cell::new(1, 1)).unwrap(), 1);
        // arm 2 + leg 3 + 1
        assert_eq!(p(&[3, 1, 1, 1]).hook_length(Cell::new(1, 1)).unwrap(), 6);
        // arm 5 + leg 0 + 1
        assert_eq!(p(&[8, 2, 2, 1]).hook_length(Cell::new(1, 3)).unwrap(), 6);
        assert!(p(&[2, 1]).hook_length(Cell::new(2, 2)).is_err());
    }

    #[test]
    fn hook_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        // Oracle: count the cells in the hook one by one.
        let mut shapes = vec![
            p(&[5, 3, 3, 1]),
            p(&[8, 2, 2, 1]),
            p(&[4, 4, 4]),
            p(&[7, 2]),
            p(&[6, 5, 4, 3, 2, 1]),
        ];
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=7usize);
            let mut parts: Vec<u32> = (0..rows).map(|_| rng.gen_range(1..=9u32)).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            shapes.push(Partition::new(parts).unwrap());
        }
        for shape in &shapes {
            for cell in shape.cells() {
                let brute = shape
                    .cells()
                    .filter(|c| {
                        (c.row == cell.row && c.col >= cell.col)
                            || (c.col == cell.col && c.row >= cell.row)
                    })
                    .count() as u32;
                assert_eq!(shape.hook_length(cell).unwrap(), brute, "{shape} {cell:?}");
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[3])).unwrap());
        assert!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(!dominance_leq(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(dominance_leq(&p(&[2]), &p(&[1, 1, 1])).is_err());
    }

    #[test]
    fn enumeration_order_is_canonical() {
        let all: Vec<String> = partitions_of(4).iter().map(|q| q.to_string()).collect();
        assert_eq!(all, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        assert_eq!(partitions_bounded(4, 2).len(), 3);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
    }

    #[test]
    fn canonical_order_refines_dominance() {
        // if a strictly dominates b then a must come earlier, so nothing
        // earlier in the list may be dominated by a later entry
        for n in 1..=7 {
            let all = partitions_of(n);
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    assert!(
                        !dominance_leq(a, b).unwrap(),
                        "{a} precedes {b} yet is dominated by it"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn conjugate_involution(n in 0u32..12) {
            for q in partitions_of(n) {
                prop_assert_eq!(q.conjugate().conjugate(), q.clone());
                prop_assert_eq!(q.conjugate().size(), q.size());
            }
        }

        #[test]
        fn serde_round_trip(n in 0u32..10) {
            for q in partitions_of(n) {
                let text = serde_json::to_string(&q).unwrap();
                let back: Partition = serde_json::from_str(&text).unwrap();
                prop_assert_eq!(back, q);
            }
        }
    }
}
