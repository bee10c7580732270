//! Product frames, vacuous extension, marginalisation, refinings, outer
//! reduction and conditional embedding.

use alloc::string::String;
use alloc::vec::Vec;

use crate::combine;
use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask, MAX_FRAME_SIZE};
use crate::mass::MassFunction;

/// Cartesian product of component frames with index codecs.
///
/// Component 0 varies slowest in the flat outcome order; the flat outcome
/// for indices `(i_0, …, i_{k-1})` is `((i_0·s_1 + i_1)·s_2 + …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFrame {
    components: Vec<Frame>,
}

impl ProductFrame {
    pub fn new(components: Vec<Frame>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyFrame);
        }
        Ok(ProductFrame { components })
    }

    /// n-fold product of the same frame (repeated trials).
    pub fn power(frame: &Frame, n: usize) -> Result<Self> {
        ProductFrame::new((0..n).map(|_| frame.clone()).collect())
    }

    pub fn components(&self) -> &[Frame] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Frame {
        &self.components[i]
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    /// Π |Θ_i| joint outcomes.
    pub fn total_size(&self) -> usize {
        self.components.iter().map(Frame::size).product()
    }

    pub fn flat_index(&self, indices: &[usize]) -> usize {
        debug_assert_eq!(indices.len(), self.arity());
        let mut flat = 0;
        for (frame, &i) in self.components.iter().zip(indices) {
            debug_assert!(i < frame.size());
            flat = flat * frame.size() + i;
        }
        flat
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; self.arity()];
        for (slot, frame) in out.iter_mut().zip(&self.components).rev() {
            *slot = flat % frame.size();
            flat /= frame.size();
        }
        out
    }

    /// Materializes the product as a flat [`Frame`] with labels joined by
    /// `|`; only possible while the joint size stays within the dense cap.
    pub fn flatten(&self) -> Result<Frame> {
        let total = self.total_size();
        if total > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge(total));
        }
        let mut labels: Vec<String> = Vec::with_capacity(total);
        for flat in 0..total {
            let idx = self.unflatten(flat);
            let parts: Vec<&str> = idx
                .iter()
                .zip(&self.components)
                .map(|(&i, f)| f.label(i))
                .collect();
            labels.push(parts.join("|"));
        }
        Frame::new(labels)
    }

    /// Index of the component equal to `frame`, if any.
    pub fn component_index(&self, frame: &Frame) -> Option<usize> {
        self.components.iter().position(|f| f == frame)
    }

    /// Mask on the flattened product of the Cartesian product
    /// `A_0 × ⋯ × A_{k-1}`.
    pub fn product_mask(&self, factors: &[SubsetMask]) -> Result<SubsetMask> {
        if factors.len() != self.arity() {
            return Err(Error::ComponentMismatch);
        }
        let total = self.total_size();
        if total > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge(total));
        }
        let mut mask = SubsetMask::EMPTY;
        for flat in 0..total {
            let idx = self.unflatten(flat);
            if idx.iter().zip(factors).all(|(&i, a)| a.contains(i)) {
                mask = mask.union(SubsetMask::singleton(flat));
            }
        }
        Ok(mask)
    }

    /// Cylinder `A × (everything else)` for a subset of component `comp`.
    pub fn cylinder(&self, comp: usize, set: SubsetMask) -> Result<SubsetMask> {
        let mut factors: Vec<SubsetMask> =
            self.components.iter().map(Frame::full).collect();
        factors[comp] = set;
        self.product_mask(&factors)
    }

    /// Projection of a joint subset onto component `comp`.
    pub fn project_mask(&self, mask: SubsetMask, comp: usize) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for flat in mask.outcomes() {
            let idx = self.unflatten(flat);
            out = out.union(SubsetMask::singleton(idx[comp]));
        }
        out
    }
}

/// A product-form focal element `A_1 × ⋯ × A_k`, one nonempty factor per
/// component frame. Large product frames admit only this representation,
/// which never materializes the joint power set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFocalElement {
    factors: Vec<SubsetMask>,
}

impl ProductFocalElement {
    pub fn new(product: &ProductFrame, factors: Vec<SubsetMask>) -> Result<Self> {
        if factors.len() != product.arity() {
            return Err(Error::ComponentMismatch);
        }
        for (factor, frame) in factors.iter().zip(product.components()) {
            frame.check_mask(*factor)?;
            if factor.is_empty() {
                return Err(Error::Domain("product focal elements have nonempty factors"));
            }
        }
        Ok(ProductFocalElement { factors })
    }

    pub fn factors(&self) -> &[SubsetMask] {
        &self.factors
    }

    /// The subset of the flattened product frame (dense representation;
    /// only available under the joint-size cap).
    pub fn mask_on(&self, product: &ProductFrame) -> Result<SubsetMask> {
        product.product_mask(&self.factors)
    }
}

/// Vacuous extension: each focal element `B` of a mass function on component
/// `comp` is mapped to the cylinder `B × Ω_rest` with unchanged mass.
pub fn vacuous_extension(
    m: &MassFunction,
    product: &ProductFrame,
    comp: usize,
) -> Result<MassFunction> {
    if comp >= product.arity() || product.component(comp) != m.frame() {
        return Err(Error::ComponentMismatch);
    }
    let flat = product.flatten()?;
    let entries: Result<Vec<(SubsetMask, f64)>> = m
        .focal_elements()
        .map(|(s, mass)| Ok((product.cylinder(comp, s)?, mass)))
        .collect();
    MassFunction::new(flat, entries?, m.is_normalized_regime())
}

/// Marginalisation: the mass of each joint focal element is transferred to
/// its projection on component `comp`.
pub fn marginalize(
    m: &MassFunction,
    product: &ProductFrame,
    comp: usize,
) -> Result<MassFunction> {
    if comp >= product.arity() {
        return Err(Error::ComponentMismatch);
    }
    if m.frame().size() != product.total_size() {
        return Err(Error::ComponentMismatch);
    }
    let entries: Vec<(SubsetMask, f64)> = m
        .focal_elements()
        .map(|(s, mass)| (product.project_mask(s, comp), mass))
        .collect();
    MassFunction::new(
        product.component(comp).clone(),
        entries,
        m.is_normalized_regime(),
    )
}

/// A refining ρ from a coarse frame Ω to a fine frame Θ: disjoint nonempty
/// cells, one per coarse outcome, covering Θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refining {
    coarse: Frame,
    fine: Frame,
    cells: Vec<SubsetMask>,
}

impl Refining {
    pub fn new(coarse: Frame, fine: Frame, cells: Vec<SubsetMask>) -> Result<Self> {
        if cells.len() != coarse.size() {
            return Err(Error::InvalidRefining("one cell per coarse outcome required"));
        }
        let mut seen = SubsetMask::EMPTY;
        for &cell in &cells {
            fine.check_mask(cell)?;
            if cell.is_empty() {
                return Err(Error::InvalidRefining("cells must be nonempty"));
            }
            if seen.intersects(cell) {
                return Err(Error::InvalidRefining("cells must be pairwise disjoint"));
            }
            seen = seen.union(cell);
        }
        if seen != fine.full() {
            return Err(Error::InvalidRefining("cells must cover the fine frame"));
        }
        Ok(Refining { coarse, fine, cells })
    }

    /// The identity refining (every cell a singleton).
    pub fn identity(frame: Frame) -> Self {
        let cells = (0..frame.size()).map(SubsetMask::singleton).collect();
        Refining {
            coarse: frame.clone(),
            fine: frame,
            cells,
        }
    }

    pub fn coarse(&self) -> &Frame {
        &self.coarse
    }

    pub fn fine(&self) -> &Frame {
        &self.fine
    }

    pub fn cell(&self, i: usize) -> SubsetMask {
        self.cells[i]
    }

    pub fn cells(&self) -> &[SubsetMask] {
        &self.cells
    }

    /// The frame spanned by cell `i`, preserving fine-frame label order.
    pub fn cell_frame(&self, i: usize) -> Frame {
        self.fine.sub_frame(self.cells[i]).expect("cell is valid")
    }

    /// ρ(E) = ∪_{ω∈E} Π_ω.
    pub fn refine_set(&self, coarse_set: SubsetMask) -> SubsetMask {
        coarse_set
            .outcomes()
            .fold(SubsetMask::EMPTY, |acc, i| acc.union(self.cells[i]))
    }

    /// Outer reduction ρ̄(A) = {ω : Π_ω ∩ A ≠ ∅}.
    pub fn outer_reduction(&self, fine_set: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for (i, &cell) in self.cells.iter().enumerate() {
            if cell.intersects(fine_set) {
                out = out.union(SubsetMask::singleton(i));
            }
        }
        out
    }
}

/// Refines a mass function on Ω to Θ: each focal element `E` maps to
/// `ρ(E)` with unchanged mass.
pub fn refine_mass(m: &MassFunction, rho: &Refining) -> Result<MassFunction> {
    if m.frame() != rho.coarse() {
        return Err(Error::FrameMismatch);
    }
    let entries: Vec<(SubsetMask, f64)> = m
        .focal_elements()
        .map(|(s, mass)| (rho.refine_set(s), mass))
        .collect();
    MassFunction::new(rho.fine().clone(), entries, m.is_normalized_regime())
}

/// Marginalises a mass function on Θ back to Ω through the outer reduction.
pub fn marginalize_through(m: &MassFunction, rho: &Refining) -> Result<MassFunction> {
    if m.frame() != rho.fine() {
        return Err(Error::FrameMismatch);
    }
    let entries: Vec<(SubsetMask, f64)> = m
        .focal_elements()
        .map(|(s, mass)| (rho.outer_reduction(s), mass))
        .collect();
    MassFunction::new(rho.coarse().clone(), entries, m.is_normalized_regime())
}

/// Conditional embedding of a mass function on the cell `Π ⊆ Θ` into Θ:
/// each focal element `e ⊆ Π` maps to `e ∪ (Θ ∖ Π)`. This inverts Dempster
/// conditioning on `Π`.
///
/// `m` must be defined on `theta.sub_frame(cell)`.
pub fn conditional_embedding(
    m: &MassFunction,
    theta: &Frame,
    cell: SubsetMask,
) -> Result<MassFunction> {
    let sub = theta.sub_frame(cell)?;
    if m.frame() != &sub {
        return Err(Error::FrameMismatch);
    }
    let rest = cell.complement_in(theta.full());
    let entries: Vec<(SubsetMask, f64)> = m
        .focal_elements()
        .map(|(s, mass)| (theta.lift_from_sub(cell, s).union(rest), mass))
        .collect();
    MassFunction::new(theta.clone(), entries, m.is_normalized_regime())
}

/// Restricts a mass function on Θ whose focal elements all lie inside
/// `cell` to the frame spanned by the cell.
pub fn restrict_to_cell(
    m: &MassFunction,
    theta: &Frame,
    cell: SubsetMask,
) -> Result<MassFunction> {
    if m.frame() != theta {
        return Err(Error::FrameMismatch);
    }
    let sub = theta.sub_frame(cell)?;
    let entries: Result<Vec<(SubsetMask, f64)>> = m
        .focal_elements()
        .map(|(s, mass)| {
            if !s.is_subset_of(cell) {
                return Err(Error::Domain("focal element escapes the cell"));
            }
            Ok((theta.project_to_sub(cell, s), mass))
        })
        .collect();
    MassFunction::new(sub, entries?, m.is_normalized_regime())
}

/// Dempster-conditions `m` on `cell` and reads the result as a mass function
/// on the cell frame. Right inverse of [`conditional_embedding`].
pub fn condition_to_cell(
    m: &MassFunction,
    theta: &Frame,
    cell: SubsetMask,
) -> Result<MassFunction> {
    let conditioned = combine::condition(m, cell)?;
    restrict_to_cell(&conditioned, theta, cell)
}
