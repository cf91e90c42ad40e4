//! Partitions confined to an `m x k` box.
//!
//! A [`BoxedPartition`] always stores exactly `k` parts, trailing zeros
//! included, so that `(3)` and `(3,0,0)` in a `3x3` box are the same key.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bounds of a partition: at most `k` parts, each at most `m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxSize {
    pub m: usize,
    pub k: usize,
}

impl BoxSize {
    pub const fn new(m: usize, k: usize) -> Self {
        BoxSize { m, k }
    }

    pub const fn cells(self) -> usize {
        self.m * self.k
    }

    pub const fn n(self) -> usize {
        self.m + self.k
    }

    pub const fn transpose(self) -> Self {
        BoxSize { m: self.k, k: self.m }
    }

    /// All boxes with `m, k >= 1` and at most `max_cells` cells, sorted.
    pub fn up_to_cells(max_cells: usize) -> Vec<BoxSize> {
        let mut out = Vec::new();
        for m in 1..=max_cells {
            for k in 1..=max_cells / m {
                out.push(BoxSize::new(m, k));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for BoxSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxedPartition {
    bx: BoxSize,
    parts: Vec<usize>,
}

/// Maximal constant runs `(p_i, q_i)` of the nonzero parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleDecomposition {
    pub blocks: Vec<(usize, usize)>,
}

impl RectangleDecomposition {
    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn expand(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .flat_map(|&(p, q)| std::iter::repeat_n(p, q))
            .collect()
    }
}

/// The data `(m'', k'', a'')` attached to `a'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryProfile {
    pub source: BoxedPartition,
    pub m2: usize,
    pub k2: usize,
    pub complement: BoxedPartition,
}

impl ComplementaryProfile {
    pub fn box2(&self) -> BoxSize {
        BoxSize::new(self.m2, self.k2)
    }

    pub fn is_degenerate(&self) -> bool {
        self.m2 == 0 && self.k2 == 0
    }
}

impl BoxedPartition {
    /// Validates `parts` and pads them with zeros to length `bx.k`.
    pub fn new(parts: &[usize], bx: BoxSize) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(parts.to_vec()));
        }
        let nonzero = parts.iter().filter(|&&p| p > 0).count();
        if nonzero > bx.k || parts.first().is_some_and(|&p| p > bx.m) {
            return Err(Error::ExceedsBox { parts: parts.to_vec(), bx });
        }
        let mut v: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        v.resize(bx.k, 0);
        Ok(BoxedPartition { bx, parts: v })
    }

    pub fn zero(bx: BoxSize) -> Self {
        BoxedPartition { bx, parts: vec![0; bx.k] }
    }

    /// The full rectangle `[m x k]`.
    pub fn full(bx: BoxSize) -> Self {
        BoxedPartition { bx, parts: vec![bx.m; bx.k] }
    }

    pub fn bx(&self) -> BoxSize {
        self.bx
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn nonzero_parts(&self) -> &[usize] {
        let len = self.parts.iter().take_while(|&&p| p > 0).count();
        &self.parts[..len]
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    pub fn is_full(&self) -> bool {
        self.parts.iter().all(|&p| p == self.bx.m)
    }

    pub fn extend(&self, target: BoxSize) -> Result<Self> {
        if target.m < self.bx.m || target.k < self.bx.k {
            return Err(Error::ShrinkingBox { from: self.bx, to: target });
        }
        let mut parts = self.parts.clone();
        parts.resize(target.k, 0);
        Ok(BoxedPartition { bx: target, parts })
    }

    /// Moves the nonzero parts into another box, if they fit.
    pub fn rebox(&self, target: BoxSize) -> Result<Self> {
        BoxedPartition::new(self.nonzero_parts(), target)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &BoxedPartition) -> Result<bool> {
        if self.bx != other.bx {
            return Err(Error::BoxMismatch(self.bx, other.bx));
        }
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b))
    }

    /// `self ⊔ y`: the rows of `y`, shifted right by `self.bx.m`, on top of the rows of `self`.
    pub fn amalgamate(&self, y: &BoxedPartition) -> BoxedPartition {
        let bx = BoxSize::new(self.bx.m + y.bx.m, self.bx.k + y.bx.k);
        let parts = y
            .parts
            .iter()
            .map(|&p| self.bx.m + p)
            .chain(self.parts.iter().copied())
            .collect();
        BoxedPartition { bx, parts }
    }

    /// `b_i = m - a_{k+1-i}`.
    pub fn complement(&self) -> BoxedPartition {
        let parts = self.parts.iter().rev().map(|&p| self.bx.m - p).collect();
        BoxedPartition { bx: self.bx, parts }
    }

    /// Conjugate partition in the transposed box.
    pub fn transpose(&self) -> BoxedPartition {
        let bx = self.bx.transpose();
        let parts = (0..bx.k)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        BoxedPartition { bx, parts }
    }

    pub fn rectangle_decomposition(&self) -> RectangleDecomposition {
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        for &p in self.nonzero_parts() {
            match blocks.last_mut() {
                Some((w, q)) if *w == p => *q += 1,
                _ => blocks.push((p, 1)),
            }
        }
        RectangleDecomposition { blocks }
    }

    /// Components `a^(1), ..., a^(r-1)` of the singular locus of `X_a`.
    pub fn lw_singular_partitions(&self) -> Vec<BoxedPartition> {
        let blocks = self.rectangle_decomposition().blocks;
        let r = blocks.len();
        (0..r.saturating_sub(1))
            .map(|i| {
                let mut parts = Vec::with_capacity(self.bx.k);
                for (j, &(p, q)) in blocks.iter().enumerate() {
                    let (width, count) = match j {
                        _ if j == i => (p, q - 1),
                        _ if j == i + 1 => (p - 1, q + 1),
                        _ => (p, q),
                    };
                    parts.extend(std::iter::repeat_n(width, count));
                }
                BoxedPartition::new(&parts, self.bx).expect("singular surgery stays in the box")
            })
            .collect()
    }

    pub fn complementary_profile(&self) -> Result<ComplementaryProfile> {
        let k1 = self.bx.k;
        if k1 == 0 {
            return Err(Error::EmptyBox);
        }
        let m2 = self.parts[0];
        let (k2, complement) = if m2 == 0 {
            (0, BoxedPartition::zero(BoxSize::new(0, 0)))
        } else {
            let run = self.parts.iter().take_while(|&&p| p == m2).count();
            let k2 = k1 - run;
            let parts: Vec<usize> = (0..k2).map(|t| m2 - self.parts[k1 - 1 - t]).collect();
            (k2, BoxedPartition { bx: BoxSize::new(m2, k2), parts })
        };
        Ok(ComplementaryProfile { source: self.clone(), m2, k2, complement })
    }

    /// Inverse of [`complementary_profile`](Self::complementary_profile): `self` plays `a''`.
    pub fn reconstruct_from_complement(&self, boxprime: BoxSize) -> Result<BoxedPartition> {
        let BoxSize { m: m2, k: k2 } = self.bx;
        let invertible = k2 < boxprime.k
            && m2 <= boxprime.m
            && (k2 == 0 || self.parts[k2 - 1] >= 1);
        if !invertible {
            return Err(Error::NotInvertible(self.to_string(), boxprime));
        }
        let k1 = boxprime.k;
        let mut parts = vec![m2; k1];
        for t in 0..k2 {
            parts[k1 - 1 - t] = m2 - self.parts[t];
        }
        Ok(BoxedPartition { bx: boxprime, parts })
    }

    /// Every partition in `bx`, in descending lexicographic order.
    pub fn all_in_box(bx: BoxSize) -> Vec<BoxedPartition> {
        BoxedPartition::below(&BoxedPartition::full(bx))
    }

    pub fn all_of_weight(bx: BoxSize, weight: usize) -> Vec<BoxedPartition> {
        BoxedPartition::below_of_weight(&BoxedPartition::full(bx), weight)
    }

    /// Every `b <= top`, in descending lexicographic order.
    pub fn below(top: &BoxedPartition) -> Vec<BoxedPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(top.bx.k);
        fill_below(top, usize::MAX, None, &mut cur, &mut out);
        out
    }

    pub fn below_of_weight(top: &BoxedPartition, weight: usize) -> Vec<BoxedPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(top.bx.k);
        fill_below(top, usize::MAX, Some(weight), &mut cur, &mut out);
        out
    }
}

fn fill_below(
    top: &BoxedPartition,
    cap: usize,
    weight: Option<usize>,
    cur: &mut Vec<usize>,
    out: &mut Vec<BoxedPartition>,
) {
    let i = cur.len();
    if i == top.bx.k {
        if weight.is_none_or(|w| w == 0) {
            out.push(BoxedPartition { bx: top.bx, parts: cur.clone() });
        }
        return;
    }
    let hi = top.parts[i].min(cap);
    let rest = top.bx.k - i;
    for p in (0..=hi).rev() {
        if let Some(w) = weight {
            if p > w || p * rest < w {
                continue;
            }
        }
        cur.push(p);
        fill_below(top, p, weight.map(|w| w - p), cur, out);
        cur.pop();
    }
}

impl fmt::Display for BoxedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            write!(f, "- @ {}", self.bx)
        } else {
            let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            write!(f, "{} @ {}", body.join(","), self.bx)
        }
    }
}

/// Sorts in descending lexicographic order, the order used for every emitted listing.
pub fn sort_desc(v: &mut [BoxedPartition]) {
    v.sort_by(|a, b| b.cmp(a));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(parts: &[usize], m: usize, k: usize) -> BoxedPartition {
        BoxedPartition::new(parts, BoxSize::new(m, k)).unwrap()
    }

    #[test]
    fn make_boxed_examples() {
        let a = bp(&[3, 2, 1], 3, 3);
        assert_eq!(a.parts(), &[3, 2, 1]);
        assert_eq!(a.weight(), 6);
        let e = bp(&[], 0, 0);
        assert_eq!(e.weight(), 0);
        assert!(e.parts().is_empty());
        assert_eq!(
            BoxedPartition::new(&[1, 2], BoxSize::new(3, 3)),
            Err(Error::NotWeaklyDecreasing(vec![1, 2]))
        );
        assert!(matches!(BoxedPartition::new(&[4], BoxSize::new(3, 3)), Err(Error::ExceedsBox { .. })));
        assert!(matches!(BoxedPartition::new(&[1, 1, 1, 1], BoxSize::new(3, 3)), Err(Error::ExceedsBox { .. })));
        assert_eq!(bp(&[2, 0, 0, 0], 3, 3).parts(), &[2, 0, 0]);
    }

    #[test]
    fn extend_examples() {
        assert_eq!(bp(&[3, 3], 3, 2).extend(BoxSize::new(3, 3)).unwrap(), bp(&[3, 3, 0], 3, 3));
        assert_eq!(
            BoxedPartition::full(BoxSize::new(2, 2)).extend(BoxSize::new(4, 3)).unwrap(),
            bp(&[2, 2, 0], 4, 3)
        );
        assert!(matches!(bp(&[2, 1], 2, 2).extend(BoxSize::new(2, 1)), Err(Error::ShrinkingBox { .. })));
    }

    #[test]
    fn leq_examples() {
        let x = bp(&[3, 2, 1], 3, 3);
        assert!(bp(&[2, 2], 3, 2).extend(BoxSize::new(3, 3)).unwrap().leq(&x).unwrap());
        assert!(x.leq(&x).unwrap());
        assert!(!bp(&[3, 0, 0], 3, 3).leq(&bp(&[2, 2, 2], 3, 3)).unwrap());
        assert!(matches!(x.leq(&bp(&[1], 3, 2)), Err(Error::BoxMismatch(..))));
    }

    #[test]
    fn amalgamation_examples() {
        assert_eq!(bp(&[2, 1], 3, 2).amalgamate(&bp(&[0], 0, 1)), bp(&[3, 2, 1], 3, 3));
        assert_eq!(bp(&[0], 0, 1).amalgamate(&bp(&[3, 3], 3, 2)), bp(&[3, 3, 0], 3, 3));
        assert_eq!(bp(&[1], 1, 1).amalgamate(&bp(&[1], 1, 1)), bp(&[2, 1], 2, 2));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(bp(&[3, 2, 1], 3, 3).complement(), bp(&[2, 1, 0], 3, 3));
        assert!(BoxedPartition::full(BoxSize::new(4, 2)).complement().is_zero());
        assert_eq!(bp(&[2, 1], 2, 2).complement(), bp(&[1, 0], 2, 2));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(bp(&[3, 3, 0], 3, 3).transpose(), bp(&[2, 2, 2], 3, 3));
        assert_eq!(bp(&[3, 3, 1], 3, 3).transpose(), bp(&[3, 2, 2], 3, 3));
        assert_eq!(bp(&[2, 1], 3, 2).transpose(), bp(&[2, 1, 0], 2, 3));
    }

    #[test]
    fn rectangle_examples() {
        let a = bp(&[6, 6, 4, 4, 4, 2, 1, 1], 6, 8);
        assert_eq!(a.rectangle_decomposition().blocks, vec![(6, 2), (4, 3), (2, 1), (1, 2)]);
        assert_eq!(bp(&[3, 2, 1], 3, 3).rectangle_decomposition().blocks, vec![(3, 1), (2, 1), (1, 1)]);
        assert_eq!(BoxedPartition::full(BoxSize::new(2, 3)).rectangle_decomposition().blocks, vec![(2, 3)]);
    }

    #[test]
    fn singular_examples() {
        assert_eq!(bp(&[3, 1, 1], 3, 3).lw_singular_partitions(), vec![bp(&[], 3, 3)]);
        assert_eq!(bp(&[3, 3, 1], 3, 3).lw_singular_partitions(), vec![bp(&[3], 3, 3)]);
        assert_eq!(
            bp(&[3, 2, 1], 3, 3).lw_singular_partitions(),
            vec![bp(&[1, 1, 1], 3, 3), bp(&[3], 3, 3)]
        );
        let a = bp(&[6, 6, 4, 4, 4, 2, 1, 1], 6, 8);
        assert_eq!(a.lw_singular_partitions()[0], bp(&[6, 3, 3, 3, 3, 2, 1, 1], 6, 8));
        assert!(bp(&[3, 3], 3, 3).lw_singular_partitions().is_empty());
        assert!(BoxedPartition::zero(BoxSize::new(3, 3)).lw_singular_partitions().is_empty());
    }

    #[test]
    fn profile_examples() {
        let p = bp(&[3, 1, 0], 3, 3).complementary_profile().unwrap();
        assert_eq!((p.m2, p.k2), (3, 2));
        assert_eq!(p.complement, bp(&[3, 2], 3, 2));
        let p = bp(&[2, 1], 3, 2).complementary_profile().unwrap();
        assert_eq!((p.m2, p.k2), (2, 1));
        assert_eq!(p.complement, bp(&[1], 2, 1));
        let p = BoxedPartition::zero(BoxSize::new(2, 2)).complementary_profile().unwrap();
        assert!(p.is_degenerate());
        assert!(p.complement.parts().is_empty());
        assert_eq!(BoxedPartition::zero(BoxSize::new(3, 0)).complementary_profile(), Err(Error::EmptyBox));
    }

    #[test]
    fn reconstruct_examples() {
        let bx = BoxSize::new(3, 3);
        assert_eq!(bp(&[3, 2], 3, 2).reconstruct_from_complement(bx).unwrap(), bp(&[3, 1, 0], 3, 3));
        assert_eq!(bp(&[1], 2, 1).reconstruct_from_complement(BoxSize::new(2, 2)).unwrap(), bp(&[2, 1], 2, 2));
        assert_eq!(bp(&[1], 1, 1).reconstruct_from_complement(BoxSize::new(2, 2)).unwrap(), bp(&[1, 0], 2, 2));
        assert!(matches!(
            bp(&[2, 2], 2, 2).reconstruct_from_complement(BoxSize::new(2, 2)),
            Err(Error::NotInvertible(..))
        ));
        assert!(matches!(
            bp(&[1, 0], 2, 2).reconstruct_from_complement(bx),
            Err(Error::NotInvertible(..))
        ));
    }

    #[test]
    fn enumeration_is_descending() {
        let all = BoxedPartition::all_in_box(BoxSize::new(3, 3));
        assert_eq!(all.len(), 20);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        let w4: Vec<_> = BoxedPartition::below_of_weight(&bp(&[3, 2, 1], 3, 3), 4);
        assert_eq!(w4, vec![bp(&[3, 1], 3, 3), bp(&[2, 2], 3, 3), bp(&[2, 1, 1], 3, 3)]);
        assert_eq!(BoxedPartition::all_in_box(BoxSize::new(0, 0)).len(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(bp(&[3, 2, 1], 3, 3).to_string(), "3,2,1 @ 3x3");
        assert_eq!(bp(&[], 0, 0).to_string(), "- @ 0x0");
        assert_eq!(bp(&[1], 2, 2).to_string(), "1,0 @ 2x2");
    }
}
