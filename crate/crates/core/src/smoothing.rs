//! Smoothing moves, smooth-structure detection, unique smooth ancestors, and
//! the inverse operation: generating all descendants of a smooth structure.
//!
//! A vertex can be smoothed away in two situations: an arm end whose label
//! equals its neighbor's, or an interior vertex whose label is the sum of its
//! two neighbors. Junction vertices are never removed. A structure with no
//! applicable move is smooth, which for these graphs means both arms strictly
//! decrease away from the junction.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::ballot::extension_count;
use crate::structure::{ArithStructure, Shape, StructureError, Vertex};

/// One applicable smoothing move. `arm` is `Vertex::A(_)` or `Vertex::B(_)`
/// naming the vertex to remove (1-based, junction is index 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Move {
    /// Remove the last vertex of an arm; its label equals its neighbor's.
    EndRemoval(Vertex),
    /// Remove an interior vertex whose label is the sum of its neighbors.
    InteriorRemoval(Vertex),
}

impl Move {
    pub fn vertex(&self) -> Vertex {
        match self {
            Move::EndRemoval(v) | Move::InteriorRemoval(v) => *v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmoothingError {
    #[error("move {0:?} is not applicable to this structure")]
    IllegalMove(Move),
    #[error("target arm length {target} is shorter than the arm ({len})")]
    TargetTooShort { len: usize, target: usize },
    #[error("target shape {target} cannot host descendants of a structure on {base}")]
    ShapeTooSmall { base: Shape, target: Shape },
    #[error("structure is not smooth")]
    NotSmooth,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn strictly_decreasing(arm: &[BigUint]) -> bool {
    arm.windows(2).all(|w| w[0] > w[1])
}

/// True iff both arms strictly decrease away from the junction. Length-1 arms
/// are vacuously decreasing.
pub fn is_smooth(s: &ArithStructure) -> bool {
    strictly_decreasing(s.a_labels()) && strictly_decreasing(s.b_labels())
}

fn arm_moves(arm: &[BigUint], mk: fn(usize) -> Vertex, out: &mut Vec<Move>) {
    let len = arm.len();
    // interior vertices, junction excluded
    for i in 2..len {
        if arm[i - 1] == &arm[i - 2] + &arm[i] {
            out.push(Move::InteriorRemoval(mk(i)));
        }
    }
    if len >= 2 && arm[len - 1] == arm[len - 2] {
        out.push(Move::EndRemoval(mk(len)));
    }
}

/// Every applicable move, a-arm first, interior positions in increasing order
/// before the end move.
pub fn smoothing_moves(s: &ArithStructure) -> Vec<Move> {
    let mut moves = Vec::new();
    arm_moves(s.a_labels(), Vertex::A, &mut moves);
    arm_moves(s.b_labels(), Vertex::B, &mut moves);
    moves
}

/// Apply one smoothing move, producing the structure with that arm one vertex
/// shorter. The result is validated.
pub fn apply_move(s: &ArithStructure, mv: &Move) -> Result<ArithStructure, SmoothingError> {
    if !smoothing_moves(s).contains(mv) {
        return Err(SmoothingError::IllegalMove(*mv));
    }
    let mut a = s.a_labels().to_vec();
    let mut b = s.b_labels().to_vec();
    match mv.vertex() {
        Vertex::A(i) => {
            a.remove(i - 1);
        }
        Vertex::B(i) => {
            b.remove(i - 1);
        }
    }
    Ok(ArithStructure::new(a, b)?)
}

/// Exhaustively smooth the structure, returning its unique smooth ancestor.
/// The first applicable move is taken at every step; move order does not
/// change the result (exercised by the randomized confluence tests).
pub fn smooth_ancestor(s: &ArithStructure) -> ArithStructure {
    let mut cur = s.clone();
    loop {
        let moves = smoothing_moves(&cur);
        match moves.first() {
            None => return cur,
            Some(mv) => {
                cur = apply_move(&cur, mv).expect("move listed as applicable");
            }
        }
    }
}

/// Independent route to the ancestor arm: greedily keep the maximal
/// decreasing subsequence starting at the junction. Used as an oracle against
/// the move-based computation.
pub fn decreasing_subsequence(arm: &[BigUint]) -> Vec<BigUint> {
    let mut kept: Vec<BigUint> = Vec::new();
    for x in arm {
        if kept.last().map_or(true, |last| x < last) {
            kept.push(x.clone());
        }
    }
    kept
}

/// All arms of length `target` that smooth back down to `arm`.
///
/// Closure under the two inverse moves, inserting `c_i + c_{i+1}` between
/// adjacent entries or appending a duplicate of the last entry, deduplicated
/// by sequence equality. The resulting set has exactly
/// `extension_count(target, arm.len())` elements.
pub fn arm_extensions(
    arm: &[BigUint],
    target: usize,
) -> Result<BTreeSet<Vec<BigUint>>, SmoothingError> {
    if target < arm.len() {
        return Err(SmoothingError::TargetTooShort {
            len: arm.len(),
            target,
        });
    }
    let mut current: BTreeSet<Vec<BigUint>> = BTreeSet::new();
    current.insert(arm.to_vec());
    for len in arm.len()..target {
        let mut next = BTreeSet::new();
        for seq in &current {
            for split in 1..len {
                let mut ext = Vec::with_capacity(len + 1);
                ext.extend_from_slice(&seq[..split]);
                ext.push(&seq[split - 1] + &seq[split]);
                ext.extend_from_slice(&seq[split..]);
                next.insert(ext);
            }
            let mut ext = seq.clone();
            ext.push(seq[len - 1].clone());
            next.insert(ext);
        }
        current = next;
    }
    Ok(current)
}

/// All structures on shape (m, n) whose smooth ancestor is `smooth`: the
/// Cartesian combination of the two arms' extension sets. Every combination
/// is a distinct valid structure.
pub fn descendants(
    smooth: &ArithStructure,
    m: u32,
    n: u32,
) -> Result<BTreeSet<ArithStructure>, SmoothingError> {
    if !is_smooth(smooth) {
        return Err(SmoothingError::NotSmooth);
    }
    let base = smooth.shape();
    let target = Shape::new(m, n)?;
    if m < base.m() || n < base.n() {
        return Err(SmoothingError::ShapeTooSmall { base, target });
    }
    let a_exts = arm_extensions(smooth.a_labels(), m as usize)?;
    let b_exts = arm_extensions(smooth.b_labels(), n as usize)?;
    let mut out = BTreeSet::new();
    for a in &a_exts {
        for b in &b_exts {
            let s = ArithStructure::new(a.clone(), b.clone())?;
            out.insert(s);
        }
    }
    Ok(out)
}

/// `extension_count(m, m') * extension_count(n, n')`: how many structures on
/// (m, n) descend from one smooth structure on (m', n').
pub fn descendant_count(base: Shape, m: u32, n: u32) -> BigUint {
    extension_count(m as u64, base.m() as i64) * extension_count(n as u64, base.n() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: &[u64], b: &[u64]) -> ArithStructure {
        ArithStructure::from_u64(a, b).unwrap()
    }

    #[test]
    fn smooth_detection() {
        assert!(is_smooth(&s(&[6, 4, 2], &[13, 1])));
        assert!(!is_smooth(&s(&[1], &[5, 8, 3, 1, 1])));
        assert!(is_smooth(&s(&[1], &[1])));
    }

    #[test]
    fn moves_on_figure_example() {
        let moves = smoothing_moves(&s(&[1], &[5, 8, 3, 1, 1]));
        assert_eq!(
            moves,
            vec![
                Move::InteriorRemoval(Vertex::B(2)),
                Move::EndRemoval(Vertex::B(5)),
            ]
        );
        assert!(smoothing_moves(&s(&[6, 4, 2], &[13, 1])).is_empty());
        assert_eq!(
            smoothing_moves(&s(&[1], &[1, 1])),
            vec![Move::EndRemoval(Vertex::B(2))]
        );
    }

    #[test]
    fn apply_move_examples() {
        let start = s(&[1], &[5, 8, 3, 1, 1]);
        let after_end = apply_move(&start, &Move::EndRemoval(Vertex::B(5))).unwrap();
        assert_eq!(after_end, s(&[1], &[5, 8, 3, 1]));
        let after_interior =
            apply_move(&after_end, &Move::InteriorRemoval(Vertex::B(2))).unwrap();
        assert_eq!(after_interior, s(&[1], &[5, 3, 1]));

        assert_eq!(
            apply_move(&s(&[1], &[1, 1]), &Move::EndRemoval(Vertex::B(2))).unwrap(),
            s(&[1], &[1])
        );

        let err = apply_move(&start, &Move::EndRemoval(Vertex::B(2))).unwrap_err();
        assert!(matches!(err, SmoothingError::IllegalMove(_)));
    }

    #[test]
    fn ancestor_examples() {
        let anc = smooth_ancestor(&s(&[1], &[5, 8, 3, 1, 1]));
        assert_eq!(anc, s(&[1], &[5, 3, 1]));
        assert_eq!(anc.shape(), Shape::new(1, 3).unwrap());

        let smooth = s(&[6, 4, 2], &[13, 1]);
        assert_eq!(smooth_ancestor(&smooth), smooth);

        assert_eq!(smooth_ancestor(&s(&[1], &[1, 1])), s(&[1], &[1]));
    }

    #[test]
    fn ancestor_matches_subsequence_oracle() {
        let cases = [
            s(&[1], &[5, 8, 3, 1, 1]),
            s(&[2, 2], &[5, 1]),
            s(&[1], &[4, 2, 2]),
        ];
        for c in cases {
            let anc = smooth_ancestor(&c);
            assert_eq!(anc.a_labels(), decreasing_subsequence(c.a_labels()));
            assert_eq!(anc.b_labels(), decreasing_subsequence(c.b_labels()));
        }
    }

    #[test]
    fn arm_extension_counts() {
        let arm: Vec<BigUint> = [5u64, 3, 1].iter().copied().map(BigUint::from).collect();
        let same = arm_extensions(&arm, 3).unwrap();
        assert_eq!(same.len(), 1);
        assert!(same.contains(&arm));

        let ext = arm_extensions(&arm, 5).unwrap();
        assert_eq!(ext.len(), 9); // extension_count(5, 3)
        let figure: Vec<BigUint> = [5u64, 8, 3, 1, 1].iter().copied().map(BigUint::from).collect();
        assert!(ext.contains(&figure));

        let one: Vec<BigUint> = vec![BigUint::from(1u32)];
        let ext = arm_extensions(&one, 2).unwrap();
        assert_eq!(ext.len(), 1);
        assert!(ext.contains(&vec![BigUint::from(1u32), BigUint::from(1u32)]));

        assert!(matches!(
            arm_extensions(&arm, 2),
            Err(SmoothingError::TargetTooShort { .. })
        ));
    }

    #[test]
    fn descendants_examples() {
        let base = s(&[1], &[5, 3, 1]);
        let d = descendants(&base, 1, 5).unwrap();
        assert_eq!(d.len(), 9);
        assert!(d.contains(&s(&[1], &[5, 8, 3, 1, 1])));
        for x in &d {
            assert_eq!(smooth_ancestor(x), base);
        }

        let own = descendants(&base, 1, 3).unwrap();
        assert_eq!(own.into_iter().collect::<Vec<_>>(), vec![base.clone()]);

        let tiny = descendants(&s(&[1], &[1]), 1, 2).unwrap();
        assert_eq!(tiny.into_iter().collect::<Vec<_>>(), vec![s(&[1], &[1, 1])]);

        assert!(matches!(
            descendants(&s(&[1], &[5, 8, 3, 1, 1]), 1, 6),
            Err(SmoothingError::NotSmooth)
        ));
        assert!(matches!(
            descendants(&base, 1, 2),
            Err(SmoothingError::ShapeTooSmall { .. })
        ));
    }
}
