//! p-cores and the bijection with k-bounded partitions.
//!
//! A p-core is a partition with no cell of hook length p. Its degree is the
//! number of cells of hook length strictly less than p; under the affine
//! Weyl group realization this is the Coxeter length. Throughout the crate
//! p = k + 1.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{partitions_bounded, Cell, Partition};

/// A p-core: a partition carrying its parameter p, validated on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Core {
    shape: Partition,
    p: u32,
}

impl Core {
    /// Wraps `shape` as a p-core, verifying the hook condition.
    pub fn new(shape: Partition, p: u32) -> Result<Self> {
        if !is_p_core(&shape, p) {
            return Err(Error::InvalidCore {
                shape: shape.to_string(),
                p,
            });
        }
        Ok(Core { shape, p })
    }

    pub fn empty(p: u32) -> Self {
        Core {
            shape: Partition::empty(),
            p,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.p - 1
    }

    /// Number of cells whose hook length is smaller than p.
    pub fn degree(&self) -> u32 {
        degree_of(&self.shape, self.p)
    }

    /// Containment of underlying shapes; errors on mismatched p.
    pub fn contains(&self, other: &Core) -> Result<bool> {
        if self.p != other.p {
            return Err(Error::ParameterMismatch(self.p, other.p));
        }
        Ok(self.shape.contains(&other.shape))
    }

    /// The core `(k + first_part, shape)`: a new bottom row of length
    /// k + shape_1 prepended. Adds exactly k to the degree.
    pub fn grown(&self) -> Core {
        debug_assert!(self.p >= 2, "growth needs k >= 1");
        let len = self.k() + self.shape.part(0);
        let shape = self.shape.with_new_bottom_row(len);
        debug_assert!(is_p_core(&shape, self.p));
        Core { shape, p: self.p }
    }
}

impl fmt::Display for Core {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.shape, f)
    }
}

impl fmt::Debug for Core {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.shape, self.p)
    }
}

/// True iff no cell of `shape` has hook length exactly p.
pub fn is_p_core(shape: &Partition, p: u32) -> bool {
    shape.cells().all(|c| shape.hook_length(c).unwrap() != p)
}

/// Number of cells of `shape` with hook length strictly less than p.
pub fn degree_of(shape: &Partition, p: u32) -> u32 {
    shape
        .cells()
        .filter(|&c| shape.hook_length(c).unwrap() < p)
        .count() as u32
}

/// Residue of a cell mod p: (col - row) mod p, normalized to [0, p).
pub fn residue(cell: Cell, p: u32) -> u32 {
    cell.content().rem_euclid(p as i64) as u32
}

/// Inverse of the core map: row i of the bounded partition counts the cells
/// in row i of the core with hook length at most k.
pub fn bounded_from_core(core: &Core) -> Partition {
    let k = core.k();
    let shape = core.shape();
    let parts: Vec<u32> = (1..=shape.len() as u32)
        .map(|row| {
            (1..=shape.part(row as usize - 1))
                .filter(|&col| shape.hook_length(Cell::new(row, col)).unwrap() <= k)
                .count() as u32
        })
        .collect();
    // Hooks decrease rightward along a row, so each count is a suffix and the
    // counts are weakly decreasing; this cannot fail for a valid core.
    Partition::new(parts).expect("row hook counts of a core form a partition")
}

/// The (k+1)-core corresponding to a k-bounded partition.
///
/// Rows are placed from the top down; each row is pushed right just far
/// enough that its leftmost retained cell has hook length at most k. The
/// result is the unique core whose per-row small-hook counts recover the
/// input.
pub fn core_from_bounded(bounded: &Partition, k: u32) -> Result<Core> {
    if bounded.part(0) > k {
        return Err(Error::BoundViolation {
            shape: bounded.to_string(),
            k,
        });
    }
    let p = k + 1;
    let rows = bounded.len();
    // core row lengths, built top row (index rows-1) first
    let mut core_rows: Vec<u32> = vec![0; rows];
    for i in (0..rows).rev() {
        let want = bounded.part(i);
        // leg(j) counts already-placed rows above row i reaching column j
        let leg = |j: u32| core_rows[i + 1..].iter().filter(|&&r| r >= j).count() as u32;
        let mut shift = 0u32;
        while want + leg(shift + 1) > k {
            shift += 1;
        }
        core_rows[i] = want + shift;
    }
    let shape = Partition::new(core_rows)
        .map_err(|_| Error::InvalidPartition(format!("core rows for {bounded} not monotone")))?;
    let core = Core::new(shape, p)?;
    debug_assert_eq!(bounded_from_core(&core), *bounded);
    Ok(core)
}

type ShapeCache = Mutex<HashMap<(u32, u32), Arc<Vec<Partition>>>>;

fn core_shape_cache() -> &'static ShapeCache {
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shapes of all p-cores of degree d, canonical (descending) order, memoized.
pub(crate) fn core_shapes(p: u32, d: u32) -> Arc<Vec<Partition>> {
    if let Some(hit) = core_shape_cache().lock().unwrap().get(&(p, d)) {
        return Arc::clone(hit);
    }
    // Cores of degree d are the image of the k-bounded partitions of d.
    let mut shapes: Vec<Partition> = partitions_bounded(d, p - 1)
        .iter()
        .map(|b| core_from_bounded(b, p - 1).unwrap().shape().clone())
        .collect();
    shapes.sort_by(|a, b| b.cmp(a));
    let arc = Arc::new(shapes);
    core_shape_cache()
        .lock()
        .unwrap()
        .insert((p, d), Arc::clone(&arc));
    arc
}

/// All p-cores of degree d in canonical (reverse-lexicographic descending)
/// order.
pub fn enumerate_cores(p: u32, d: u32) -> Vec<Core> {
    core_shapes(p, d)
        .iter()
        .map(|s| Core {
            shape: s.clone(),
            p,
        })
        .collect()
}
