//! Brute-force oracles, independent of the closed forms: every coprime
//! junction pair generates exactly one smooth structure, so scanning a
//! rectangle of pairs enumerates smooth structures per shape, and descendant
//! expansion then materializes all structures on a shape.
//!
//! Completeness of a scan is a real question: the junction labels of smooth
//! structures on a cell are bounded, but only the one- and two-vertex arm
//! families have proven bounds. Cells covered by those bounds are reported
//! `Certified`; everything else goes through a stabilization ladder that
//! keeps doubling the scan rectangle until a doubling turns up nothing new,
//! and is reported `Heuristic`.
//!
//! Scans are data parallel over the a-side junction label (rayon, behind the
//! `parallel` feature); results are sorted, so output is identical at any
//! thread count and in the sequential build.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::counting::{CountEntry, CountTable, Provenance};
use crate::residue::{residue_length_capped, smooth_from_pair, PairError};
use crate::smoothing::{descendants, SmoothingError};
use crate::structure::{ArithStructure, Shape, StructureError};

/// Junction labels stay in u64 territory inside scans; 2 * bound must not
/// wrap.
const MAX_BOUND: u64 = 1 << 31;
/// Stabilization gives up after this many doublings.
const MAX_DOUBLINGS: u32 = 16;
/// `scan_pairs` materializes a structure per coprime pair, so its rectangle
/// is capped to keep memory sane. The celled enumerators have no such limit.
const MAX_FULL_SCAN_AREA: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("scan bounds ({bound_a},{bound_b}) out of range for this scan")]
    BoundsTooLarge { bound_a: u64, bound_b: u64 },
    #[error("cell {shape} did not stabilize after {rounds} doublings (bounds reached ({bound_a},{bound_b}))")]
    Unstable {
        shape: Shape,
        rounds: u32,
        bound_a: u64,
        bound_b: u64,
    },
    #[error("structure on {shape} found outside its certified junction bounds")]
    CertifiedBoundViolated { shape: Shape },
    #[error("descendant sets of distinct smooth ancestors overlap on {shape}")]
    DescendantOverlap { shape: Shape },
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Smoothing(#[from] SmoothingError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// How sure the enumerator is that a cell's structure list is complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundProvenance {
    /// Junction bounds proven for this family cover the scan rectangle.
    Certified,
    /// No proven bound; the count was unchanged when the rectangle doubled.
    Heuristic,
    /// Explicit bounds were given and doubling them still found structures.
    Incomplete,
}

impl fmt::Display for BoundProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundProvenance::Certified => write!(f, "certified"),
            BoundProvenance::Heuristic => write!(f, "heuristic"),
            BoundProvenance::Incomplete => write!(f, "incomplete"),
        }
    }
}

/// Junction-label bounds `(max a_1, max b_1)` known to cover every canonical
/// smooth structure on the cell, where such bounds exist.
///
/// One-vertex arm: the canonical end label is 1 or 2 and the scaled form's
/// opposite junction is at most `4n`; both are doubled for margin. Two-vertex
/// arm: the scaled form's extremes are `8n + 2` on its own side and
/// `4n^2 + 4n` opposite. Cells with both arms longer than 2 have no proven
/// bound and return `None`.
pub fn certified_bounds(shape: Shape) -> Option<(u64, u64)> {
    let (m, n) = (shape.m() as u64, shape.n() as u64);
    if m == 1 {
        Some((4, 8 * n))
    } else if n == 1 {
        Some((8 * m, 4))
    } else if m == 2 {
        Some((8 * n + 2, 4 * n * n + 4 * n))
    } else if n == 2 {
        Some((4 * m * m + 4 * m, 8 * m + 2))
    } else {
        None
    }
}

/// Starting rectangle for the stabilization ladder on an unproven cell.
fn heuristic_base(cell: (u32, u32)) -> (u64, u64) {
    let side = |k: u64| 4 * k * k + 4 * k + 16;
    (side(cell.0 as u64), side(cell.1 as u64))
}

/// Shape of the smooth structure generated by the pair, if both arms fit in
/// the caps. Cheap u64 path used inside scan loops.
fn cell_of_pair(a1: u64, b1: u64, cap_m: u32, cap_n: u32) -> Option<(u32, u32)> {
    let fa = residue_length_capped(2 * b1, a1, cap_m as u64 + 1)?;
    let fb = residue_length_capped(2 * a1, b1, cap_n as u64 + 1)?;
    Some(((fa - 1) as u32, (fb - 1) as u32))
}

#[derive(Debug, Clone, Copy)]
struct Region {
    a_lo: u64,
    a_hi: u64,
    b_lo: u64,
    b_hi: u64,
}

type Hit = ((u32, u32), (u64, u64));

/// All coprime pairs in the region whose structure lands in a target cell,
/// sorted by (cell, pair). The shape filter runs before the gcd so the
/// common case (arm too long) costs only a few modular steps.
fn region_hits(
    region: Region,
    cap_m: u32,
    cap_n: u32,
    targets: &BTreeSet<(u32, u32)>,
    par: bool,
) -> Vec<Hit> {
    if region.a_lo > region.a_hi || region.b_lo > region.b_hi {
        return Vec::new();
    }
    let scan_one = |a1: u64| -> Vec<Hit> {
        let mut out = Vec::new();
        for b1 in region.b_lo..=region.b_hi {
            if a1 & 1 == 0 && b1 & 1 == 0 {
                continue;
            }
            let Some(cell) = cell_of_pair(a1, b1, cap_m, cap_n) else {
                continue;
            };
            if !targets.contains(&cell) {
                continue;
            }
            if a1.gcd(&b1) != 1 {
                continue;
            }
            out.push((cell, (a1, b1)));
        }
        out
    };

    #[cfg(feature = "parallel")]
    let mut hits: Vec<Hit> = if par {
        (region.a_lo..=region.a_hi)
            .into_par_iter()
            .flat_map_iter(scan_one)
            .collect()
    } else {
        (region.a_lo..=region.a_hi).flat_map(scan_one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut hits: Vec<Hit> = {
        let _ = par;
        (region.a_lo..=region.a_hi).flat_map(scan_one).collect()
    };

    hits.sort_unstable();
    hits
}

/// The two rectangles added when (a, b) bounds grow to (new_a, new_b).
fn ring_regions(a: u64, b: u64, new_a: u64, new_b: u64) -> [Region; 2] {
    [
        Region {
            a_lo: a + 1,
            a_hi: new_a,
            b_lo: 1,
            b_hi: new_b,
        },
        Region {
            a_lo: 1,
            a_hi: a,
            b_lo: b + 1,
            b_hi: new_b,
        },
    ]
}

/// One enumerated cell: structures sorted by junction pair, plus how complete
/// the list is known to be.
#[derive(Debug, Clone)]
pub struct SmoothCell {
    pub structures: Vec<ArithStructure>,
    pub provenance: BoundProvenance,
}

/// Result of a celled smooth enumeration.
#[derive(Debug, Clone)]
pub struct SmoothBox {
    pub bound_a: u64,
    pub bound_b: u64,
    pub cells: BTreeMap<Shape, SmoothCell>,
}

impl SmoothBox {
    /// Smooth counts of the enumerated cells as a table (provenance
    /// `enumeration`, totals unknown).
    pub fn count_table(&self) -> CountTable {
        let mut table = CountTable::new();
        for (shape, cell) in &self.cells {
            table.insert(
                shape.m(),
                shape.n(),
                CountEntry {
                    smooth: BigUint::from(cell.structures.len() as u64),
                    total: None,
                    provenance: Provenance::Enumeration,
                },
            );
        }
        table
    }

    /// Worst completeness across the cells.
    pub fn provenance(&self) -> BoundProvenance {
        self.cells
            .values()
            .map(|c| c.provenance)
            .max()
            .unwrap_or(BoundProvenance::Certified)
    }
}

fn build_cells(
    shapes: &[Shape],
    hits: Vec<Hit>,
    provenance_of: impl Fn((u32, u32)) -> BoundProvenance,
) -> Result<BTreeMap<Shape, SmoothCell>, EnumerationError> {
    let mut cells: BTreeMap<Shape, SmoothCell> = shapes
        .iter()
        .map(|s| {
            (
                *s,
                SmoothCell {
                    structures: Vec::new(),
                    provenance: provenance_of((s.m(), s.n())),
                },
            )
        })
        .collect();
    for (cell, (a1, b1)) in hits {
        let shape = Shape::new(cell.0, cell.1)?;
        let s = smooth_from_pair(&BigUint::from(a1), &BigUint::from(b1))?;
        debug_assert_eq!(s.shape(), shape);
        cells
            .get_mut(&shape)
            .expect("hit only recorded for target cells")
            .structures
            .push(s);
    }
    Ok(cells)
}

fn check_bounds(bound_a: u64, bound_b: u64) -> Result<(), EnumerationError> {
    if bound_a == 0 || bound_b == 0 || bound_a > MAX_BOUND || bound_b > MAX_BOUND {
        return Err(EnumerationError::BoundsTooLarge { bound_a, bound_b });
    }
    Ok(())
}

fn smooth_box_impl(
    shapes: &[Shape],
    explicit: Option<(u64, u64)>,
    par: bool,
) -> Result<SmoothBox, EnumerationError> {
    assert!(!shapes.is_empty(), "need at least one target cell");
    let targets: BTreeSet<(u32, u32)> = shapes.iter().map(|s| (s.m(), s.n())).collect();
    let cap_m = targets.iter().map(|c| c.0).max().unwrap();
    let cap_n = targets.iter().map(|c| c.1).max().unwrap();
    let certified: BTreeMap<(u32, u32), (u64, u64)> = targets
        .iter()
        .filter_map(|&(m, n)| {
            certified_bounds(Shape::new(m, n).ok()?).map(|b| ((m, n), b))
        })
        .collect();

    match explicit {
        Some((bound_a, bound_b)) => {
            check_bounds(bound_a, bound_b)?;
            let full = region_hits(
                Region {
                    a_lo: 1,
                    a_hi: bound_a,
                    b_lo: 1,
                    b_hi: bound_b,
                },
                cap_m,
                cap_n,
                &targets,
                par,
            );
            // cells the given rectangle provably covers
            let is_covered = |cell: &(u32, u32)| {
                certified
                    .get(cell)
                    .is_some_and(|&(a, b)| a <= bound_a && b <= bound_b)
            };
            let mut provenance: BTreeMap<(u32, u32), BoundProvenance> = targets
                .iter()
                .map(|c| (*c, BoundProvenance::Certified))
                .collect();
            let unchecked: Vec<(u32, u32)> =
                targets.iter().copied().filter(|c| !is_covered(c)).collect();
            if !unchecked.is_empty() {
                let (ring_a, ring_b) = (
                    (bound_a * 2).min(MAX_BOUND),
                    (bound_b * 2).min(MAX_BOUND),
                );
                for region in ring_regions(bound_a, bound_b, ring_a, ring_b) {
                    for (cell, _) in region_hits(region, cap_m, cap_n, &targets, par) {
                        if unchecked.contains(&cell) {
                            provenance.insert(cell, BoundProvenance::Incomplete);
                        }
                    }
                }
                for cell in unchecked {
                    provenance
                        .entry(cell)
                        .and_modify(|p| {
                            if *p == BoundProvenance::Certified {
                                *p = BoundProvenance::Heuristic;
                            }
                        });
                }
            }
            let cells = build_cells(shapes, full, |c| provenance[&c])?;
            Ok(SmoothBox {
                bound_a,
                bound_b,
                cells,
            })
        }
        None => {
            // start from the proven thresholds plus a heuristic base for the
            // unproven cells, then double until a whole ring adds nothing
            let mut bound_a = 1u64;
            let mut bound_b = 1u64;
            for cell in &targets {
                let (a, b) = certified
                    .get(cell)
                    .copied()
                    .unwrap_or_else(|| heuristic_base(*cell));
                bound_a = bound_a.max(a);
                bound_b = bound_b.max(b);
            }
            check_bounds(bound_a, bound_b)?;
            let mut hits = region_hits(
                Region {
                    a_lo: 1,
                    a_hi: bound_a,
                    b_lo: 1,
                    b_hi: bound_b,
                },
                cap_m,
                cap_n,
                &targets,
                par,
            );
            let needs_ladder = targets.iter().any(|c| !certified.contains_key(c));
            if needs_ladder {
                let mut stable = false;
                for round in 0..MAX_DOUBLINGS {
                    let (next_a, next_b) = (bound_a * 2, bound_b * 2);
                    if next_a > MAX_BOUND || next_b > MAX_BOUND {
                        return Err(unstable_cell(&targets, &certified, round, bound_a, bound_b));
                    }
                    let mut grew = false;
                    for region in ring_regions(bound_a, bound_b, next_a, next_b) {
                        let ring = region_hits(region, cap_m, cap_n, &targets, par);
                        for (cell, _) in &ring {
                            if certified.contains_key(cell) {
                                let shape = Shape::new(cell.0, cell.1)?;
                                return Err(EnumerationError::CertifiedBoundViolated { shape });
                            }
                            grew = true;
                        }
                        hits.extend(ring);
                    }
                    bound_a = next_a;
                    bound_b = next_b;
                    if !grew {
                        stable = true;
                        break;
                    }
                }
                if !stable {
                    return Err(unstable_cell(
                        &targets,
                        &certified,
                        MAX_DOUBLINGS,
                        bound_a,
                        bound_b,
                    ));
                }
                hits.sort_unstable();
            }
            let cells = build_cells(shapes, hits, |c| {
                if certified.contains_key(&c) {
                    BoundProvenance::Certified
                } else {
                    BoundProvenance::Heuristic
                }
            })?;
            Ok(SmoothBox {
                bound_a,
                bound_b,
                cells,
            })
        }
    }
}

fn unstable_cell(
    targets: &BTreeSet<(u32, u32)>,
    certified: &BTreeMap<(u32, u32), (u64, u64)>,
    rounds: u32,
    bound_a: u64,
    bound_b: u64,
) -> EnumerationError {
    let cell = targets
        .iter()
        .find(|c| !certified.contains_key(c))
        .copied()
        .unwrap_or((0, 0));
    EnumerationError::Unstable {
        shape: Shape::new(cell.0.max(1), cell.1.max(1)).expect("nonzero"),
        rounds,
        bound_a,
        bound_b,
    }
}

fn default_par() -> bool {
    cfg!(feature = "parallel")
}

/// Enumerate the smooth structures on several cells with one shared scan.
/// Bounds are chosen automatically: proven thresholds where they exist, the
/// stabilization ladder elsewhere.
pub fn enumerate_smooth_cells(shapes: &[Shape]) -> Result<SmoothBox, EnumerationError> {
    smooth_box_impl(shapes, None, default_par())
}

/// A single cell's smooth structures, sorted by junction pair.
#[derive(Debug, Clone)]
pub struct SmoothEnumeration {
    pub structures: Vec<ArithStructure>,
    pub provenance: BoundProvenance,
    pub bound_a: u64,
    pub bound_b: u64,
}

fn single_cell(bx: SmoothBox, shape: Shape) -> SmoothEnumeration {
    let cell = bx.cells.into_iter().find(|(s, _)| *s == shape).unwrap().1;
    SmoothEnumeration {
        structures: cell.structures,
        provenance: cell.provenance,
        bound_a: bx.bound_a,
        bound_b: bx.bound_b,
    }
}

/// All smooth structures on (m, n) with automatically certified or
/// stabilized bounds.
pub fn enumerate_smooth(m: u32, n: u32) -> Result<SmoothEnumeration, EnumerationError> {
    let shape = Shape::new(m, n)?;
    Ok(single_cell(smooth_box_impl(&[shape], None, default_par())?, shape))
}

/// All smooth structures on (m, n) whose junction pair lies in the given
/// rectangle. Completeness is downgraded to `Heuristic` or `Incomplete`
/// according to a doubling check when the rectangle is not provably
/// sufficient.
pub fn enumerate_smooth_bounded(
    m: u32,
    n: u32,
    bound_a: u64,
    bound_b: u64,
) -> Result<SmoothEnumeration, EnumerationError> {
    let shape = Shape::new(m, n)?;
    Ok(single_cell(
        smooth_box_impl(&[shape], Some((bound_a, bound_b)), default_par())?,
        shape,
    ))
}

/// Full enumeration of a cell by descendant expansion.
#[derive(Debug, Clone)]
pub struct AllEnumeration {
    pub structures: Vec<ArithStructure>,
    pub provenance: BoundProvenance,
}

fn all_impl(
    m: u32,
    n: u32,
    explicit: Option<(u64, u64)>,
    par: bool,
) -> Result<AllEnumeration, EnumerationError> {
    let mut shapes = Vec::new();
    for mp in 1..=m.max(1) {
        for np in 1..=n.max(1) {
            shapes.push(Shape::new(mp, np)?);
        }
    }
    let target = Shape::new(m, n)?;
    let bx = smooth_box_impl(&shapes, explicit, par)?;
    let provenance = bx.provenance();
    let bases: Vec<&ArithStructure> = bx
        .cells
        .values()
        .flat_map(|c| c.structures.iter())
        .collect();

    #[cfg(feature = "parallel")]
    let sets: Vec<BTreeSet<ArithStructure>> = if par {
        bases
            .par_iter()
            .map(|b| descendants(b, m, n))
            .collect::<Result<_, _>>()?
    } else {
        bases
            .iter()
            .map(|b| descendants(b, m, n))
            .collect::<Result<_, _>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let sets: Vec<BTreeSet<ArithStructure>> = bases
        .iter()
        .map(|b| descendants(b, m, n))
        .collect::<Result<_, _>>()?;

    let expected: usize = sets.iter().map(|s| s.len()).sum();
    let mut union = BTreeSet::new();
    for set in sets {
        union.extend(set);
    }
    if union.len() != expected {
        return Err(EnumerationError::DescendantOverlap { shape: target });
    }
    Ok(AllEnumeration {
        structures: union.into_iter().collect(),
        provenance,
    })
}

/// Every structure on (m, n): the descendants of every smooth structure on
/// every sub-shape, merged. Sorted, deduplicated, each element valid by
/// construction.
pub fn enumerate_all(m: u32, n: u32) -> Result<AllEnumeration, EnumerationError> {
    all_impl(m, n, None, default_par())
}

/// Sequential variant of [`enumerate_all`], for benchmarking against the
/// parallel path.
pub fn enumerate_all_seq(m: u32, n: u32) -> Result<AllEnumeration, EnumerationError> {
    all_impl(m, n, None, false)
}

/// `enumerate_all` with an explicit scan rectangle for the smooth bases.
pub fn enumerate_all_bounded(
    m: u32,
    n: u32,
    bound_a: u64,
    bound_b: u64,
) -> Result<AllEnumeration, EnumerationError> {
    all_impl(m, n, Some((bound_a, bound_b)), default_par())
}

/// One bucket of `scan_pairs`.
#[derive(Debug, Clone)]
pub struct ScanCell {
    pub structures: Vec<ArithStructure>,
    pub complete: bool,
}

/// Result of a full rectangle scan, bucketed by shape.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub bound_a: u64,
    pub bound_b: u64,
    pub cells: BTreeMap<Shape, ScanCell>,
}

impl ScanResult {
    pub fn count_table(&self) -> CountTable {
        let mut table = CountTable::new();
        for (shape, cell) in &self.cells {
            table.insert(
                shape.m(),
                shape.n(),
                CountEntry {
                    smooth: BigUint::from(cell.structures.len() as u64),
                    total: None,
                    provenance: Provenance::Enumeration,
                },
            );
        }
        table
    }
}

/// Build the smooth structure of every coprime pair in the rectangle and
/// bucket by shape. Cells whose proven junction bounds fit inside the
/// rectangle are flagged complete.
///
/// This materializes one structure per coprime pair (arms uncapped), so it is
/// for desk-scale rectangles; the celled enumerators handle large scans.
pub fn scan_pairs(bound_a: u64, bound_b: u64) -> Result<ScanResult, EnumerationError> {
    check_bounds(bound_a, bound_b)?;
    if bound_a.saturating_mul(bound_b) > MAX_FULL_SCAN_AREA {
        return Err(EnumerationError::BoundsTooLarge { bound_a, bound_b });
    }
    let par = default_par();
    let scan_one = |a1: u64| -> Vec<(Shape, ArithStructure)> {
        let mut out = Vec::new();
        for b1 in 1..=bound_b {
            if a1.gcd(&b1) != 1 {
                continue;
            }
            let s = smooth_from_pair(&BigUint::from(a1), &BigUint::from(b1))
                .expect("coprime pair generates a smooth structure");
            out.push((s.shape(), s));
        }
        out
    };

    #[cfg(feature = "parallel")]
    let mut found: Vec<(Shape, ArithStructure)> = if par {
        (1..=bound_a)
            .into_par_iter()
            .flat_map_iter(scan_one)
            .collect()
    } else {
        (1..=bound_a).flat_map(scan_one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut found: Vec<(Shape, ArithStructure)> = {
        let _ = par;
        (1..=bound_a).flat_map(scan_one).collect()
    };

    found.sort_unstable_by(|(sa, a), (sb, b)| (sa, a).cmp(&(sb, b)));
    let mut cells: BTreeMap<Shape, ScanCell> = BTreeMap::new();
    for (shape, s) in found {
        let complete =
            certified_bounds(shape).is_some_and(|(a, b)| a <= bound_a && b <= bound_b);
        cells
            .entry(shape)
            .or_insert_with(|| ScanCell {
                structures: Vec::new(),
                complete,
            })
            .structures
            .push(s);
    }
    Ok(ScanResult {
        bound_a,
        bound_b,
        cells,
    })
}

fn shape_counts_impl(
    bound_a: u64,
    bound_b: u64,
    max_m: u32,
    max_n: u32,
    par: bool,
) -> Result<BTreeMap<Shape, u64>, EnumerationError> {
    check_bounds(bound_a, bound_b)?;
    let width = max_n as usize;
    let size = max_m as usize * width;
    let count_one = |grid: &mut Vec<u64>, a1: u64| {
        for b1 in 1..=bound_b {
            if a1 & 1 == 0 && b1 & 1 == 0 {
                continue;
            }
            let Some((m, n)) = cell_of_pair(a1, b1, max_m, max_n) else {
                continue;
            };
            if a1.gcd(&b1) != 1 {
                continue;
            }
            grid[(m as usize - 1) * width + (n as usize - 1)] += 1;
        }
    };

    #[cfg(feature = "parallel")]
    let grid: Vec<u64> = if par {
        (1..=bound_a)
            .into_par_iter()
            .fold(
                || vec![0u64; size],
                |mut grid, a1| {
                    count_one(&mut grid, a1);
                    grid
                },
            )
            .reduce(
                || vec![0u64; size],
                |mut left, right| {
                    for (l, r) in left.iter_mut().zip(right) {
                        *l += r;
                    }
                    left
                },
            )
    } else {
        let mut grid = vec![0u64; size];
        for a1 in 1..=bound_a {
            count_one(&mut grid, a1);
        }
        grid
    };
    #[cfg(not(feature = "parallel"))]
    let grid: Vec<u64> = {
        let _ = par;
        let mut grid = vec![0u64; size];
        for a1 in 1..=bound_a {
            count_one(&mut grid, a1);
        }
        grid
    };

    let mut out = BTreeMap::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            let c = grid[(m as usize - 1) * width + (n as usize - 1)];
            if c > 0 {
                out.insert(Shape::new(m, n)?, c);
            }
        }
    }
    Ok(out)
}

/// Count smooth structures per shape for all cells up to (max_m, max_n)
/// found in the rectangle. Counting only, no structures built.
pub fn scan_shape_counts(
    bound_a: u64,
    bound_b: u64,
    max_m: u32,
    max_n: u32,
) -> Result<BTreeMap<Shape, u64>, EnumerationError> {
    shape_counts_impl(bound_a, bound_b, max_m, max_n, default_par())
}

/// Sequential variant of [`scan_shape_counts`], for benchmarking against the
/// parallel path.
pub fn scan_shape_counts_seq(
    bound_a: u64,
    bound_b: u64,
    max_m: u32,
    max_n: u32,
) -> Result<BTreeMap<Shape, u64>, EnumerationError> {
    shape_counts_impl(bound_a, bound_b, max_m, max_n, false)
}

/// Maximum junction labels `(a_1, b_1)` over the scaled (end label 2) forms
/// of the given structures; `None` for an empty list. The two maxima are
/// independent, not necessarily from one structure.
pub fn max_junction_labels(
    structures: &[ArithStructure],
) -> Result<Option<(BigUint, BigUint)>, StructureError> {
    let mut best: Option<(BigUint, BigUint)> = None;
    for s in structures {
        let rho = crate::structure::rho_form(s)?;
        let (a1, b1) = rho.junction();
        best = Some(match best {
            None => (a1.clone(), b1.clone()),
            Some((ma, mb)) => (ma.max(a1.clone()), mb.max(b1.clone())),
        });
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{smooth_count, smooth_table_closed, total_count_convolution};
    use crate::smoothing::is_smooth;
    use crate::structure::validate;

    fn shape(m: u32, n: u32) -> Shape {
        Shape::new(m, n).unwrap()
    }

    #[test]
    fn scan_pairs_buckets_small_cells() {
        let result = scan_pairs(30, 30).unwrap();
        let cell = &result.cells[&shape(1, 1)];
        assert!(cell.complete);
        let labels: Vec<String> = cell.structures.iter().map(|s| s.to_string()).collect();
        assert_eq!(labels, vec!["(1 | 1)", "(1 | 2)", "(2 | 1)"]);
        assert_eq!(result.cells[&shape(2, 2)].structures.len(), 8);

        let tiny = scan_pairs(1, 1).unwrap();
        assert_eq!(tiny.cells.len(), 1);
        assert_eq!(tiny.cells[&shape(1, 1)].structures.len(), 1);
    }

    #[test]
    fn scan_pairs_count_table() {
        let result = scan_pairs(30, 30).unwrap();
        let table = result.count_table();
        assert_eq!(table.smooth(2, 2).unwrap(), &BigUint::from(8u32));
    }

    #[test]
    fn certified_bounds_families() {
        assert_eq!(certified_bounds(shape(1, 4)), Some((4, 32)));
        assert_eq!(certified_bounds(shape(4, 1)), Some((32, 4)));
        assert_eq!(certified_bounds(shape(2, 5)), Some((42, 120)));
        assert_eq!(certified_bounds(shape(5, 2)), Some((120, 42)));
        assert_eq!(certified_bounds(shape(3, 3)), None);
    }

    #[test]
    fn enumerate_smooth_certified_cells() {
        let e = enumerate_smooth(1, 2).unwrap();
        assert_eq!(e.provenance, BoundProvenance::Certified);
        assert_eq!(e.structures.len(), 3);
        // scaled-form opposite junctions for the one-vertex arm at n = 2
        let mut rho_b1: Vec<u64> = e
            .structures
            .iter()
            .map(|s| {
                let rho = crate::structure::rho_form(s).unwrap();
                u64::try_from(rho.junction().1).unwrap()
            })
            .collect();
        rho_b1.sort_unstable();
        assert_eq!(rho_b1, vec![5, 6, 8]);

        assert_eq!(enumerate_smooth(2, 4).unwrap().structures.len(), 25);
        assert_eq!(enumerate_smooth(1, 1).unwrap().structures.len(), 3);
    }

    #[test]
    fn enumerate_smooth_stabilized_cell() {
        let e = enumerate_smooth(3, 3).unwrap();
        assert_eq!(e.provenance, BoundProvenance::Heuristic);
        assert_eq!(
            BigUint::from(e.structures.len() as u64),
            smooth_count(3, 3).unwrap()
        );
        for s in &e.structures {
            assert!(is_smooth(s));
            assert!(validate(s.a_labels(), s.b_labels()).is_ok());
        }
    }

    #[test]
    fn enumerate_smooth_sorted_and_injective() {
        let e = enumerate_smooth(2, 3).unwrap();
        let pairs: Vec<(BigUint, BigUint)> = e
            .structures
            .iter()
            .map(|s| {
                let (a, b) = s.junction();
                (a.clone(), b.clone())
            })
            .collect();
        let mut sorted = pairs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(pairs, sorted, "sorted by junction pair, no duplicates");
    }

    #[test]
    fn bounded_enumeration_flags_incompleteness() {
        // (2, 4) needs bounds (34, 80); a tiny rectangle must be flagged
        let partial = enumerate_smooth_bounded(2, 4, 10, 10).unwrap();
        assert_eq!(partial.provenance, BoundProvenance::Incomplete);
        assert!(partial.structures.len() < 25);

        let full = enumerate_smooth_bounded(2, 4, 34, 80).unwrap();
        assert_eq!(full.provenance, BoundProvenance::Certified);
        assert_eq!(full.structures.len(), 25);

        // big enough rectangle without certification coverage: heuristic
        let wide = enumerate_smooth_bounded(3, 3, 300, 300).unwrap();
        assert_eq!(wide.provenance, BoundProvenance::Heuristic);
        assert_eq!(
            BigUint::from(wide.structures.len() as u64),
            smooth_count(3, 3).unwrap()
        );
    }

    #[test]
    fn enumerate_all_matches_convolution() {
        let table = smooth_table_closed(3, 5).unwrap();
        let all = enumerate_all(2, 3).unwrap();
        assert_eq!(
            BigUint::from(all.structures.len() as u64),
            total_count_convolution(2, 3, &table).unwrap()
        );
        assert_eq!(all.structures.len(), 55);

        let all = enumerate_all(1, 1).unwrap();
        assert_eq!(all.structures.len(), 3);

        let all = enumerate_all(1, 5).unwrap();
        let figure = ArithStructure::from_u64(&[1], &[5, 8, 3, 1, 1]).unwrap();
        assert!(all.structures.contains(&figure));
        assert_eq!(all.structures.len(), 140);
    }

    #[test]
    fn shape_counts_match_structure_scan() {
        let counts = scan_shape_counts(30, 30, 3, 3).unwrap();
        let full = scan_pairs(30, 30).unwrap();
        for (shape, count) in &counts {
            assert_eq!(
                *count,
                full.cells[shape].structures.len() as u64,
                "{shape}"
            );
        }
        let seq = scan_shape_counts_seq(30, 30, 3, 3).unwrap();
        assert_eq!(counts, seq);
    }

    #[test]
    fn junction_extremes_match_family_bounds() {
        let e = enumerate_smooth(2, 5).unwrap();
        let (max_a, max_b) = max_junction_labels(&e.structures).unwrap().unwrap();
        assert_eq!(max_a, BigUint::from(42u32)); // 8n + 2
        assert_eq!(max_b, BigUint::from(120u32)); // 4n^2 + 4n

        let e = enumerate_smooth(1, 4).unwrap();
        let (_, max_b) = max_junction_labels(&e.structures).unwrap().unwrap();
        assert_eq!(max_b, BigUint::from(16u32)); // 4n

        assert_eq!(max_junction_labels(&[]).unwrap(), None);
    }

    #[test]
    fn oversized_bounds_rejected() {
        assert!(matches!(
            scan_pairs(5000, 5000),
            Err(EnumerationError::BoundsTooLarge { .. })
        ));
        assert!(matches!(
            enumerate_smooth_bounded(2, 2, 0, 10),
            Err(EnumerationError::BoundsTooLarge { .. })
        ));
    }
}
