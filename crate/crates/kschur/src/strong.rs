//! Strong (Bruhat) order on p-cores: covers, ribbon decompositions of skew
//! shapes, and bottom strong strips.
//!
//! A cover adds a family of translated ribbons whose heads share a residue.
//! A bottom strong strip from a core nu up to (k + lambda_1, lambda) is a
//! saturated cover chain whose total skew is a horizontal strip and whose
//! every step adds the bottom-right corner cell of the new core; such a
//! chain is unique when it exists, and the search treats a second qualifying
//! chain as an anomaly rather than picking one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cores::{core_shapes, residue, Core};
use crate::error::{Anomaly, Error, Result};
use crate::partition::{Cell, Partition};

/// A ribbon: rookwise connected skew cells with no 2x2 square. The head is
/// the southeasternmost cell (maximal content), the tail the
/// northwesternmost (minimal content).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ribbon {
    cells: Vec<Cell>,
}

impl Ribbon {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn head(&self) -> Cell {
        *self
            .cells
            .iter()
            .max_by_key(|c| c.content())
            .expect("ribbon is nonempty")
    }

    pub fn tail(&self) -> Cell {
        *self
            .cells
            .iter()
            .min_by_key(|c| c.content())
            .expect("ribbon is nonempty")
    }

    /// True when every cell sits in one row.
    pub fn is_horizontal(&self) -> bool {
        self.cells.iter().all(|c| c.row == self.cells[0].row)
    }

    /// Cell offsets relative to the head; equal offset sets mean the ribbons
    /// are translates of each other.
    fn offsets(&self) -> Vec<(i64, i64)> {
        let h = self.head();
        let mut offs: Vec<(i64, i64)> = self
            .cells
            .iter()
            .map(|c| (c.row as i64 - h.row as i64, c.col as i64 - h.col as i64))
            .collect();
        offs.sort_unstable();
        offs
    }
}

/// Connected components of the skew `outer/inner`, each checked to be a
/// ribbon. Components are returned sorted by head cell.
pub fn ribbon_components(outer: &Partition, inner: &Partition) -> Result<Vec<Ribbon>> {
    if !outer.contains(inner) {
        return Err(Error::InputError(format!(
            "skew {outer}/{inner} is not nested"
        )));
    }
    let in_skew = |row: u32, col: u32| {
        row >= 1
            && col >= 1
            && outer.part(row as usize - 1) >= col
            && inner.part(row as usize - 1) < col
    };
    let mut cells: Vec<Cell> = outer.cells().filter(|c| in_skew(c.row, c.col)).collect();
    // any 2x2 square inside the skew disqualifies the component containing it
    for &c in &cells {
        if in_skew(c.row, c.col + 1) && in_skew(c.row + 1, c.col) && in_skew(c.row + 1, c.col + 1) {
            return Err(Error::NotARibbon(format!(
                "skew {outer}/{inner} contains a 2x2 square at ({},{})",
                c.row, c.col
            )));
        }
    }
    cells.sort_unstable();
    let mut components: Vec<Ribbon> = Vec::new();
    let mut seen = vec![false; cells.len()];
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    for start in 0..cells.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            let c = cells[i];
            comp.push(c);
            let mut neighbors = vec![Cell::new(c.row + 1, c.col), Cell::new(c.row, c.col + 1)];
            if c.row > 1 {
                neighbors.push(Cell::new(c.row - 1, c.col));
            }
            if c.col > 1 {
                neighbors.push(Cell::new(c.row, c.col - 1));
            }
            for n in neighbors {
                if let Some(&j) = index.get(&n) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        comp.sort_unstable();
        components.push(Ribbon { cells: comp });
    }
    components.sort_by_key(|r| r.head());
    Ok(components)
}

/// True iff `outer/inner` has at most one cell in every column.
pub fn is_horizontal_strip(outer: &Partition, inner: &Partition) -> bool {
    (1..=outer.len()).all(|i| inner.part(i - 1) >= outer.part(i))
}

/// A strong cover with its ribbon decomposition.
#[derive(Clone, Debug)]
pub struct StrongCover {
    lower: Core,
    upper: Core,
    components: Vec<Ribbon>,
}

impl StrongCover {
    pub fn lower(&self) -> &Core {
        &self.lower
    }

    pub fn upper(&self) -> &Core {
        &self.upper
    }

    pub fn components(&self) -> &[Ribbon] {
        &self.components
    }
}

/// True iff `lower` is covered by `upper` in the strong order: containment
/// with a degree jump of exactly one.
pub fn is_strong_cover(lower: &Core, upper: &Core) -> Result<bool> {
    Ok(upper.contains(lower)? && upper.degree() == lower.degree() + 1)
}

/// Builds the cover `lower < upper` together with its ribbon components.
pub fn strong_cover(lower: &Core, upper: &Core) -> Result<StrongCover> {
    if !is_strong_cover(lower, upper)? {
        return Err(Error::InputError(format!(
            "{} is not covered by {}",
            lower, upper
        )));
    }
    let components = ribbon_components(upper.shape(), lower.shape())?;
    Ok(StrongCover {
        lower: lower.clone(),
        upper: upper.clone(),
        components,
    })
}

/// The clause of the cover lemma a given cover violates, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverDefect {
    BadDegrees { lower: u32, upper: u32 },
    NotRibbon(String),
    NotTranslates(String),
    ResidueMismatch(String),
}

impl fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverDefect::BadDegrees { lower, upper } => {
                write!(f, "degree jump is {} -> {}, not +1", lower, upper)
            }
            CoverDefect::NotRibbon(s) => write!(f, "component is not a ribbon: {s}"),
            CoverDefect::NotTranslates(s) => write!(f, "components are not translates: {s}"),
            CoverDefect::ResidueMismatch(s) => write!(f, "head residues differ: {s}"),
        }
    }
}

/// Checks the ribbon lemma on a cover: all components are ribbons, pairwise
/// translates, and their heads share one residue mod p. Returns the violated
/// clause instead of a bare false.
pub fn validate_cover(cover: &StrongCover) -> std::result::Result<(), CoverDefect> {
    let p = cover.upper.p();
    if cover.upper.degree() != cover.lower.degree() + 1 {
        return Err(CoverDefect::BadDegrees {
            lower: cover.lower.degree(),
            upper: cover.upper.degree(),
        });
    }
    let components = match ribbon_components(cover.upper.shape(), cover.lower.shape()) {
        Ok(c) => c,
        Err(e) => return Err(CoverDefect::NotRibbon(e.to_string())),
    };
    let first = components.first().expect("a cover adds at least one cell");
    for comp in &components[1..] {
        if comp.offsets() != first.offsets() {
            return Err(CoverDefect::NotTranslates(format!(
                "{:?} vs {:?}",
                comp.cells(),
                first.cells()
            )));
        }
    }
    let r0 = residue(first.head(), p);
    for comp in &components[1..] {
        let r = residue(comp.head(), p);
        if r != r0 {
            return Err(CoverDefect::ResidueMismatch(format!(
                "head {:?} has residue {}, expected {}",
                comp.head(),
                r,
                r0
            )));
        }
    }
    Ok(())
}

/// All cores covering `lower` inside `bound`, canonical order.
pub fn strong_covers_within(lower: &Core, bound: &Core, k: u32) -> Result<Vec<Core>> {
    let p = k + 1;
    if lower.p() != p || bound.p() != p {
        return Err(Error::ParameterMismatch(lower.p(), p));
    }
    if !bound.contains(lower)? {
        return Err(Error::InputError(format!(
            "{lower} is not contained in the bound {bound}"
        )));
    }
    let shapes = core_shapes(p, lower.degree() + 1);
    Ok(shapes
        .iter()
        .filter(|s| s.contains(lower.shape()) && bound.shape().contains(s) && *s != lower.shape())
        .map(|s| Core::new(s.clone(), p).unwrap())
        .collect())
}

/// A saturated chain of strong covers.
#[derive(Clone, Debug)]
pub struct Chain {
    cores: Vec<Core>,
    covers: Vec<StrongCover>,
}

impl Chain {
    pub fn cores(&self) -> &[Core] {
        &self.cores
    }

    pub fn covers(&self) -> &[StrongCover] {
        &self.covers
    }

    pub fn bottom(&self) -> &Core {
        self.cores.first().expect("chain has at least one core")
    }

    pub fn top(&self) -> &Core {
        self.cores.last().expect("chain has at least one core")
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // chains serialize as arrays of partitions
        let mut seq = serializer.serialize_seq(Some(self.cores.len()))?;
        for core in &self.cores {
            seq.serialize_element(core.shape())?;
        }
        seq.end()
    }
}

type StripTable = Vec<(Core, Chain)>;
type StripKey = (Vec<u32>, u32, u32);

fn strip_cache() -> &'static Mutex<HashMap<StripKey, Arc<StripTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<StripKey, Arc<StripTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All cores `nu` such that `(k + base_1, base)/nu` is a bottom strong strip
/// with exactly `m` covers, each paired with its unique chain. Memoized.
pub fn bottom_strips(base: &Core, m: u32) -> Result<Arc<StripTable>> {
    let key: StripKey = (base.shape().parts().to_vec(), base.p(), m);
    if let Some(hit) = strip_cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let table = Arc::new(search_strips(base, m)?);
    strip_cache()
        .lock()
        .unwrap()
        .insert(key, Arc::clone(&table));
    Ok(table)
}

/// Depth-first search downward from the strip target, removing one cover at
/// a time. Every step must surrender the bottom-right corner of the larger
/// core and keep the total skew a horizontal strip.
fn search_strips(base: &Core, m: u32) -> Result<StripTable> {
    let p = base.p();
    let target = base.grown();
    // descending paths: target = gamma_0 > gamma_1 > ... > gamma_m = nu
    let mut found: BTreeMap<Partition, Vec<Vec<Partition>>> = BTreeMap::new();
    let mut path: Vec<Partition> = vec![target.shape().clone()];

    fn dfs(
        current_deg: u32,
        depth_left: u32,
        p: u32,
        target: &Partition,
        path: &mut Vec<Partition>,
        found: &mut BTreeMap<Partition, Vec<Vec<Partition>>>,
    ) {
        let current = path.last().unwrap().clone();
        if depth_left == 0 {
            found.entry(current).or_default().push(path.clone());
            return;
        }
        for rho in core_shapes(p, current_deg - 1).iter() {
            if rho.part(0) < current.part(0)
                && current.contains(rho)
                && is_horizontal_strip(target, rho)
            {
                path.push(rho.clone());
                dfs(current_deg - 1, depth_left - 1, p, target, path, found);
                path.pop();
            }
        }
    }

    if m > target.degree() {
        return Ok(Vec::new());
    }
    dfs(target.degree(), m, p, target.shape(), &mut path, &mut found);

    let mut table: StripTable = Vec::new();
    // descending canonical order over the endpoints
    for (nu_shape, paths) in found.into_iter().rev() {
        if paths.len() > 1 {
            return Err(Error::Anomaly(Anomaly::ChainNotUnique {
                nu: nu_shape.to_string(),
                target: target.shape().to_string(),
                count: paths.len(),
            }));
        }
        let mut shapes = paths.into_iter().next().unwrap();
        shapes.reverse(); // now nu .. target
        let cores: Vec<Core> = shapes
            .into_iter()
            .map(|s| Core::new(s, p).unwrap())
            .collect();
        let mut covers = Vec::with_capacity(cores.len() - 1);
        for w in cores.windows(2) {
            let cover = strong_cover(&w[0], &w[1])?;
            debug_assert!(validate_cover(&cover).is_ok());
            covers.push(cover);
        }
        table.push((cores.first().unwrap().clone(), Chain { cores, covers }));
    }
    Ok(table)
}

/// The unique bottom strong chain from `nu` to `(k + base_1, base)`, or
/// `None` when the skew is not a bottom strong strip. The number of covers
/// is forced by the degree difference.
pub fn bottom_strong_chain(nu: &Core, base: &Core) -> Result<Option<Chain>> {
    if nu.p() != base.p() {
        return Err(Error::ParameterMismatch(nu.p(), base.p()));
    }
    let target = base.grown();
    if !target.contains(nu)? {
        return Err(Error::InputError(format!(
            "{nu} is not contained in the strip target {target}"
        )));
    }
    let m = target.degree() - nu.degree();
    let table = bottom_strips(base, m)?;
    Ok(table
        .iter()
        .find(|(candidate, _)| candidate == nu)
        .map(|(_, chain)| chain.clone()))
}
