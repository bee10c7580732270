//! Finite frames of discernment and subsets encoded as bit masks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest frame for which dense power-set vectors are materialized.
pub const MAX_FRAME_SIZE: usize = 24;

/// A subset of a frame, bit `i` set iff outcome `i` belongs to the subset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub fn new(bits: u32) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub fn singleton(outcome: usize) -> Self {
        SubsetMask(1 << outcome)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, outcome: usize) -> bool {
        self.0 >> outcome & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    /// Complement relative to `full` (typically [`Frame::full`]).
    #[inline]
    pub fn complement_in(self, full: SubsetMask) -> SubsetMask {
        SubsetMask(!self.0 & full.0)
    }

    #[inline]
    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    /// Outcome indices contained in the subset, ascending.
    pub fn outcomes(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

/// A finite frame of discernment: an ordered list of distinct outcome labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Frame { labels })
    }

    /// The binary frame `{T, F}` used for Bernoulli trials.
    pub fn binary() -> Self {
        Frame {
            labels: alloc::vec!["T".to_string(), "F".to_string()],
        }
    }

    /// A frame with `n` generated labels `e0..e{n-1}`.
    pub fn of_size(n: usize) -> Result<Self> {
        Frame::new((0..n).map(|i| format!("e{i}")))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, outcome: usize) -> &str {
        &self.labels[outcome]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Number of subsets, `2^n`.
    #[inline]
    pub fn subset_count(&self) -> usize {
        1usize << self.labels.len()
    }

    /// The full set Θ.
    #[inline]
    pub fn full(&self) -> SubsetMask {
        SubsetMask(((1u64 << self.labels.len()) - 1) as u32)
    }

    pub fn singleton(&self, outcome: usize) -> SubsetMask {
        debug_assert!(outcome < self.size());
        SubsetMask::singleton(outcome)
    }

    /// Checks that a mask only uses outcomes of this frame.
    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.is_subset_of(self.full()) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                bits: mask.bits(),
                size: self.size(),
            })
        }
    }

    /// All subsets in ascending mask order, ∅ included.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.subset_count() as u32).map(SubsetMask)
    }

    /// Mask of the subset holding the given labels.
    pub fn mask_of_labels<'a, I>(&self, labels: I) -> Result<SubsetMask>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = SubsetMask::EMPTY;
        for label in labels {
            match self.index_of(label) {
                Some(i) => mask = mask.union(SubsetMask::singleton(i)),
                None => return Err(Error::UnknownLabel(label.to_string())),
            }
        }
        Ok(mask)
    }

    /// Labels of the outcomes in `mask`, in frame order.
    pub fn labels_of(&self, mask: SubsetMask) -> Vec<&str> {
        mask.outcomes().map(|i| self.label(i)).collect()
    }

    /// The frame spanned by a nonempty subset of this frame, preserving
    /// label order.
    pub fn sub_frame(&self, mask: SubsetMask) -> Result<Frame> {
        self.check_mask(mask)?;
        Frame::new(mask.outcomes().map(|i| self.labels[i].clone()))
    }

    /// Translates a mask over `sub_frame(cell)` into a mask over this frame.
    pub fn lift_from_sub(&self, cell: SubsetMask, sub_mask: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for (pos, outcome) in cell.outcomes().enumerate() {
            if sub_mask.contains(pos) {
                out = out.union(SubsetMask::singleton(outcome));
            }
        }
        out
    }

    /// Translates a mask over this frame (contained in `cell`) into a mask
    /// over `sub_frame(cell)`.
    pub fn project_to_sub(&self, cell: SubsetMask, mask: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for (pos, outcome) in cell.outcomes().enumerate() {
            if mask.contains(outcome) {
                out = out.union(SubsetMask::singleton(pos));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicate_labels() {
        assert_eq!(Frame::new(Vec::<String>::new()), Err(Error::EmptyFrame));
        assert!(matches!(
            Frame::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn rejects_frames_beyond_dense_cap() {
        assert!(Frame::of_size(24).is_ok());
        assert_eq!(Frame::of_size(25), Err(Error::FrameTooLarge(25)));
    }

    #[test]
    fn mask_algebra() {
        let f = Frame::new(["x", "y", "z"]).unwrap();
        let xy = f.mask_of_labels(["x", "y"]).unwrap();
        assert_eq!(xy.bits(), 0b011);
        assert_eq!(xy.complement_in(f.full()).bits(), 0b100);
        assert!(SubsetMask::singleton(0).is_subset_of(xy));
        assert!(!xy.is_subset_of(SubsetMask::singleton(0)));
        assert_eq!(xy.cardinality(), 2);
        assert_eq!(f.labels_of(xy), ["x", "y"]);
    }

    #[test]
    fn sub_frame_round_trip() {
        let f = Frame::new(["a", "b", "c", "d"]).unwrap();
        let cell = f.mask_of_labels(["b", "d"]).unwrap();
        let sub = f.sub_frame(cell).unwrap();
        assert_eq!(sub.labels(), ["b".to_string(), "d".to_string()]);
        let m = SubsetMask::new(0b10); // {d} in the sub-frame
        let lifted = f.lift_from_sub(cell, m);
        assert_eq!(f.labels_of(lifted), ["d"]);
        assert_eq!(f.project_to_sub(cell, lifted), m);
    }
}
