//! Constructive solution of the total belief problem: given a prior on a
//! coarse frame and one conditional mass function per partition cell, build
//! a mass function on the fine frame whose marginal is the prior and whose
//! Dempster conditioning on each cell recovers the conditionals.
//!
//! Besides the canonical construction (Dempster sum of the conditional
//! embeddings with the vacuously extended prior), the module assembles the
//! induced linear constraint systems, enumerates minimal nonnegative
//! solutions of per-focal-element subproblems, applies column
//! substitutions, and searches the null space for alternative solutions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::combine;
use crate::error::{Error, Result};
use crate::frame::SubsetMask;
#[cfg(test)]
use crate::frame::Frame;
use crate::mass::MassFunction;
use crate::math;
use crate::multivariate::{
    condition_to_cell, conditional_embedding, marginalize_through, refine_mass, Refining,
};
use crate::opt;

/// Hard cap on enumeration work.
const ENUMERATION_CAP: usize = 1 << 20;

/// A total-belief instance: refining, prior on the coarse frame, one
/// conditional per cell (each defined on its cell frame).
#[derive(Clone, Debug)]
pub struct TotalBeliefProblem {
    refining: Refining,
    prior: MassFunction,
    conditionals: Vec<MassFunction>,
}

impl TotalBeliefProblem {
    pub fn new(
        refining: Refining,
        prior: MassFunction,
        conditionals: Vec<MassFunction>,
    ) -> Result<Self> {
        if prior.frame() != refining.coarse() {
            return Err(Error::InvalidProblem("prior must live on the coarse frame"));
        }
        if !prior.is_normalized_regime() {
            return Err(Error::InvalidProblem("prior must be normalized"));
        }
        if conditionals.len() != refining.coarse().size() {
            return Err(Error::InvalidProblem("one conditional per cell required"));
        }
        for (i, cond) in conditionals.iter().enumerate() {
            if cond.frame() != &refining.cell_frame(i) {
                return Err(Error::InvalidProblem(
                    "conditional frame must equal its cell frame",
                ));
            }
            if !cond.is_normalized_regime() {
                return Err(Error::InvalidProblem("conditionals must be normalized"));
            }
        }
        Ok(TotalBeliefProblem {
            refining,
            prior,
            conditionals,
        })
    }

    pub fn refining(&self) -> &Refining {
        &self.refining
    }

    pub fn prior(&self) -> &MassFunction {
        &self.prior
    }

    pub fn conditionals(&self) -> &[MassFunction] {
        &self.conditionals
    }

    /// Focal elements of conditional `i` in ascending cell-frame mask order,
    /// lifted to fine-frame masks.
    fn lifted_focals(&self, cell: usize) -> Vec<(SubsetMask, f64)> {
        let fine = self.refining.fine();
        let cell_mask = self.refining.cell(cell);
        self.conditionals[cell]
            .focal_elements()
            .map(|(s, m)| (fine.lift_from_sub(cell_mask, s), m))
            .collect()
    }

    /// The subproblem restricted to one prior focal element `E`: coarse and
    /// fine frames shrink to `E` and `ρ(E)`, the prior becomes categorical.
    pub fn subproblem(&self, prior_fe: SubsetMask) -> Result<TotalBeliefProblem> {
        if self.prior.mass(prior_fe) <= 0.0 {
            return Err(Error::InvalidProblem(
                "subproblems are indexed by prior focal elements",
            ));
        }
        let sub_coarse = self.refining.coarse().sub_frame(prior_fe)?;
        let fine_region = self.refining.refine_set(prior_fe);
        let sub_fine = self.refining.fine().sub_frame(fine_region)?;
        let cells: Vec<SubsetMask> = prior_fe
            .outcomes()
            .map(|i| {
                self.refining
                    .fine()
                    .project_to_sub(fine_region, self.refining.cell(i))
            })
            .collect();
        let sub_refining = Refining::new(sub_coarse.clone(), sub_fine, cells)?;
        let conditionals: Vec<MassFunction> =
            prior_fe.outcomes().map(|i| self.conditionals[i].clone()).collect();
        let prior = MassFunction::vacuous(sub_coarse);
        TotalBeliefProblem::new(sub_refining, prior, conditionals)
    }
}

/// Canonical total mass function by the closed form
/// `m(e) = m₀(ρ̄(e)) · ∏ m_{j_k}(e_{j_k})` over admissible elements.
pub fn construct_total_product(problem: &TotalBeliefProblem) -> Result<MassFunction> {
    let mut entries: BTreeMap<SubsetMask, f64> = BTreeMap::new();
    for (prior_fe, prior_mass) in problem.prior.focal_elements() {
        let cells: Vec<usize> = prior_fe.outcomes().collect();
        let lifted: Vec<Vec<(SubsetMask, f64)>> =
            cells.iter().map(|&i| problem.lifted_focals(i)).collect();
        let mut combo = vec![0usize; cells.len()];
        loop {
            let mut set = SubsetMask::EMPTY;
            let mut mass = prior_mass;
            for (slot, focals) in combo.iter().zip(&lifted) {
                let (s, m) = focals[*slot];
                set = set.union(s);
                mass *= m;
            }
            *entries.entry(set).or_insert(0.0) += mass;
            // Advance the mixed-radix counter.
            let mut k = 0;
            loop {
                if k == combo.len() {
                    break;
                }
                combo[k] += 1;
                if combo[k] < lifted[k].len() {
                    break;
                }
                combo[k] = 0;
                k += 1;
            }
            if k == combo.len() {
                break;
            }
        }
    }
    MassFunction::new(problem.refining.fine().clone(), entries, true)
}

/// Canonical total mass function via the explicit Dempster sum
/// `Bel₀^{↑Θ} ⊕ (⊕_i embed(Bel_i))`; fails if the sum would need
/// renormalization (it never does on a valid instance).
pub fn construct_total(problem: &TotalBeliefProblem) -> Result<MassFunction> {
    let fine = problem.refining.fine().clone();
    let mut embedded: Vec<MassFunction> = Vec::with_capacity(problem.conditionals.len());
    for (i, cond) in problem.conditionals.iter().enumerate() {
        embedded.push(conditional_embedding(cond, &fine, problem.refining.cell(i))?);
    }
    let arrow = combine::combine_all(combine::CombinationRule::Dempster, &embedded)?;
    let prior_up = refine_mass(&problem.prior, &problem.refining)?;
    let conj = combine::conjunctive(&prior_up, &arrow)?;
    let conflict = conj.mass(SubsetMask::EMPTY);
    if conflict > 1e-12 {
        return Err(Error::InvalidProblem(
            "total-belief Dempster sum produced conflict mass",
        ));
    }
    MassFunction::new(
        fine,
        conj.focal_elements().filter(|(s, _)| !s.is_empty()),
        true,
    )
}

/// Verification report for a candidate total mass function.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// Sup-difference between the marginal of the candidate and the prior.
    pub prior_residual: f64,
    /// Per-cell sup-difference between the conditioned candidate and the
    /// conditional.
    pub conditional_residuals: Vec<f64>,
    pub p1_ok: bool,
    pub p2_ok: bool,
}

/// Tolerance for [`verify_total`] pass/fail flags.
pub const VERIFY_TOL: f64 = 1e-10;

/// Checks (P1) the marginal of `candidate` through the refining equals the
/// prior, and (P2) Dempster conditioning on each cell recovers the
/// conditionals.
pub fn verify_total(problem: &TotalBeliefProblem, candidate: &MassFunction) -> Result<VerifyReport> {
    if candidate.frame() != problem.refining.fine() {
        return Err(Error::FrameMismatch);
    }
    let marginal = marginalize_through(candidate, &problem.refining)?;
    let prior_residual = marginal.sup_diff(&problem.prior);
    let mut conditional_residuals = Vec::with_capacity(problem.conditionals.len());
    for (i, cond) in problem.conditionals.iter().enumerate() {
        let conditioned =
            condition_to_cell(candidate, problem.refining.fine(), problem.refining.cell(i))?;
        conditional_residuals.push(conditioned.sup_diff(cond));
    }
    let p2_ok = conditional_residuals.iter().all(|&r| r <= VERIFY_TOL);
    Ok(VerifyReport {
        p1_ok: prior_residual <= VERIFY_TOL,
        prior_residual,
        conditional_residuals,
        p2_ok,
    })
}

/// An admissible focal element of a total solution: the union of exactly one
/// focal element per cell covered by a prior focal element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleElement {
    /// Owning prior focal element.
    pub prior_fe: SubsetMask,
    /// Union as a fine-frame subset.
    pub set: SubsetMask,
    /// Per covered cell (ascending), the index of the chosen focal element
    /// in that conditional's ascending-mask order.
    pub fe_indices: Vec<usize>,
}

/// All admissible focal elements for prior focal element `E`, in
/// lexicographic order of their focal-element index vectors.
pub fn admissible_focal_elements(
    problem: &TotalBeliefProblem,
    prior_fe: SubsetMask,
) -> Result<Vec<AdmissibleElement>> {
    if problem.prior.mass(prior_fe) <= 0.0 {
        return Err(Error::InvalidProblem(
            "admissible elements are indexed by prior focal elements",
        ));
    }
    let cells: Vec<usize> = prior_fe.outcomes().collect();
    let lifted: Vec<Vec<(SubsetMask, f64)>> =
        cells.iter().map(|&i| problem.lifted_focals(i)).collect();
    let mut out = Vec::new();
    let mut combo = vec![0usize; cells.len()];
    loop {
        let mut set = SubsetMask::EMPTY;
        for (slot, focals) in combo.iter().zip(&lifted) {
            set = set.union(focals[*slot].0);
        }
        out.push(AdmissibleElement {
            prior_fe,
            set,
            fe_indices: combo.clone(),
        });
        // Advance lexicographically (last cell fastest).
        let mut k = combo.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            combo[k] += 1;
            if combo[k] < lifted[k].len() {
                break;
            }
            combo[k] = 0;
            if k == 0 {
                return Ok(out);
            }
        }
    }
}

/// Which property a constraint row encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// Conditional constraint: cell index and focal-element index.
    Conditional { cell: usize, fe_index: usize },
    /// Marginal constraint for a nonempty coarse subset.
    Marginal { coarse_set: SubsetMask },
}

/// One linear constraint `coeffs · x = rhs` over the admissible columns.
#[derive(Clone, Debug)]
pub struct ConstraintRow {
    pub kind: RowKind,
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

/// The full linear system induced by properties (P1) and (P2).
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    /// All admissible focal elements across prior focal elements.
    pub columns: Vec<AdmissibleElement>,
    /// Conditional (G1) rows followed by marginal (G2) rows.
    pub rows: Vec<ConstraintRow>,
    /// Raw row counts.
    pub g1_rows: usize,
    pub g2_rows: usize,
    /// Independent-row counts `Σ|ℰ_i| − |Ω|` and `2^|Ω| − 2`, which treat
    /// the mass normalization `Σ m(e) = 1` as given (full-support-prior
    /// convention).
    pub g1_independent: usize,
    pub g2_independent: usize,
    pub unknown_count: usize,
    /// Numeric rank of the stacked coefficient matrix. For a full-support
    /// prior this exceeds `g1_independent + g2_independent` by exactly one:
    /// the stacked rows imply the normalization, which the counts exclude.
    pub rank: usize,
}

impl ConstraintSystem {
    /// Sup-norm residual of a candidate over all rows, plus any candidate
    /// mass sitting outside the admissible columns.
    pub fn residual_of(&self, candidate: &MassFunction) -> f64 {
        let x: Vec<f64> = self.columns.iter().map(|c| candidate.mass(c.set)).collect();
        let mut residual: f64 = 0.0;
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().zip(&x).map(|(c, v)| c * v).sum();
            residual = math::max(residual, math::abs(lhs - row.rhs));
        }
        let column_total: f64 = x.iter().sum();
        residual = math::max(residual, math::abs(candidate.total_mass() - column_total));
        residual
    }
}

/// Builds the (P1)+(P2) constraint system over all admissible columns.
pub fn build_constraint_system(problem: &TotalBeliefProblem) -> Result<ConstraintSystem> {
    let mut columns: Vec<AdmissibleElement> = Vec::new();
    for (prior_fe, _) in problem.prior.focal_elements() {
        columns.extend(admissible_focal_elements(problem, prior_fe)?);
    }
    let coarse = problem.refining.coarse();
    let prior_pl = problem.prior.plausibility()?;

    let mut rows: Vec<ConstraintRow> = Vec::new();
    // G1: for each cell and each of its focal elements.
    for (cell, cond) in problem.conditionals.iter().enumerate() {
        let cell_mask = problem.refining.cell(cell);
        let lifted = problem.lifted_focals(cell);
        for (fe_index, &(fe_set, fe_mass)) in lifted.iter().enumerate() {
            let coeffs: Vec<f64> = columns
                .iter()
                .map(|col| {
                    if col.set.intersection(cell_mask) == fe_set && col.prior_fe.contains(cell) {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect();
            let rhs = fe_mass * prior_pl.value(SubsetMask::singleton(cell));
            rows.push(ConstraintRow {
                kind: RowKind::Conditional { cell, fe_index },
                coeffs,
                rhs,
            });
        }
        let _ = cond;
    }
    let g1_rows = rows.len();
    // G2: one row per nonempty coarse subset.
    for coarse_set in coarse.subsets().filter(|s| !s.is_empty()) {
        let coeffs: Vec<f64> = columns
            .iter()
            .map(|col| if col.prior_fe == coarse_set { 1.0 } else { 0.0 })
            .collect();
        rows.push(ConstraintRow {
            kind: RowKind::Marginal { coarse_set },
            coeffs,
            rhs: problem.prior.mass(coarse_set),
        });
    }
    let g2_rows = rows.len() - g1_rows;

    let fe_total: usize = problem.conditionals.iter().map(MassFunction::focal_count).sum();
    let matrix: Vec<Vec<f64>> = rows.iter().map(|r| r.coeffs.clone()).collect();
    let rank = opt::rank(&matrix, 1e-9);
    Ok(ConstraintSystem {
        unknown_count: columns.len(),
        columns,
        rows,
        g1_rows,
        g2_rows,
        g1_independent: fe_total - coarse.size(),
        g2_independent: coarse.subset_count() - 2,
        rank,
    })
}

/// A square minimal system selected from the admissible columns of one
/// prior-focal-element subproblem, together with its (possibly signed)
/// solution.
#[derive(Clone, Debug)]
pub struct SelectedSystem {
    pub prior_fe: SubsetMask,
    /// Covered cells, ascending.
    pub cells: Vec<usize>,
    /// Focal-element counts per covered cell.
    pub fe_counts: Vec<usize>,
    /// Selected columns as focal-element index vectors.
    pub columns: Vec<Vec<usize>>,
    pub solution: Vec<f64>,
}

/// Constraint rows of the subproblem for the covered `cells`: for each cell
/// all but its last focal element (the dropped row is implied by the
/// normalization row), then the normalization row. Returns the row keys
/// `(cell position, fe index)`, the right-hand side and the per-cell
/// focal-element counts.
fn subproblem_rows(
    problem: &TotalBeliefProblem,
    cells: &[usize],
) -> (Vec<(usize, usize)>, Vec<f64>, Vec<usize>) {
    let fe_counts: Vec<usize> = cells
        .iter()
        .map(|&i| problem.conditionals[i].focal_count())
        .collect();
    let mut rhs: Vec<f64> = Vec::new();
    let mut row_keys: Vec<(usize, usize)> = Vec::new();
    for (pos, &cell) in cells.iter().enumerate() {
        let masses: Vec<f64> = problem.conditionals[cell]
            .focal_elements()
            .map(|(_, m)| m)
            .collect();
        for (fe_index, &m) in masses.iter().enumerate().take(masses.len() - 1) {
            row_keys.push((pos, fe_index));
            rhs.push(m);
        }
    }
    rhs.push(1.0);
    (row_keys, rhs, fe_counts)
}

fn build_matrix(row_keys: &[(usize, usize)], columns: &[Vec<usize>]) -> Vec<Vec<f64>> {
    let n_rows = row_keys.len() + 1;
    let mut matrix = vec![vec![0.0; columns.len()]; n_rows];
    for (r, &(pos, fe_index)) in row_keys.iter().enumerate() {
        for (c, col) in columns.iter().enumerate() {
            if col[pos] == fe_index {
                matrix[r][c] = 1.0;
            }
        }
    }
    for c in 0..columns.len() {
        matrix[row_keys.len()][c] = 1.0;
    }
    matrix
}

/// Solves the square minimal system for the given column choice (index
/// vectors over the covered cells of `prior_fe`).
pub fn select_minimal_system(
    problem: &TotalBeliefProblem,
    prior_fe: SubsetMask,
    columns: &[Vec<usize>],
) -> Result<SelectedSystem> {
    let cells: Vec<usize> = prior_fe.outcomes().collect();
    let (row_keys, rhs, fe_counts) = subproblem_rows(problem, &cells);
    let n_min: usize = fe_counts.iter().map(|&n| n - 1).sum::<usize>() + 1;
    if columns.len() != n_min {
        return Err(Error::InvalidProblem(
            "minimal systems select exactly n_min columns",
        ));
    }
    let matrix = build_matrix(&row_keys, columns);
    let solution = opt::solve_square(&matrix, &rhs)?;
    Ok(SelectedSystem {
        prior_fe,
        cells,
        fe_counts,
        columns: columns.to_vec(),
        solution,
    })
}

/// One nonnegative minimal solution.
#[derive(Clone, Debug)]
pub struct MinimalSolution {
    /// Indices into the admissible-element list for the prior focal element.
    pub column_indices: Vec<usize>,
    pub values: Vec<f64>,
}

/// Outcome of the minimal-solution enumeration for one prior focal element.
#[derive(Clone, Debug)]
pub struct MinimalEnumeration {
    pub n_min: usize,
    pub n_max: usize,
    pub systems_total: usize,
    pub systems_singular: usize,
    pub solutions: Vec<MinimalSolution>,
}

/// Tolerance below which a solution component counts as negative.
pub const NEGATIVE_TOL: f64 = 1e-10;

/// Enumerates all `C(n_max, n_min)` square systems of the subproblem for
/// `prior_fe` and returns the solutions with all components `≥ −1e-10`.
pub fn enumerate_minimal_solutions(
    problem: &TotalBeliefProblem,
    prior_fe: SubsetMask,
    limit: usize,
) -> Result<MinimalEnumeration> {
    let admissible = admissible_focal_elements(problem, prior_fe)?;
    let cells: Vec<usize> = prior_fe.outcomes().collect();
    let (row_keys, rhs, fe_counts) = subproblem_rows(problem, &cells);
    let n_max = admissible.len();
    let n_min: usize = fe_counts.iter().map(|&n| n - 1).sum::<usize>() + 1;
    let total = binomial(n_max, n_min);
    if total > ENUMERATION_CAP || total > limit.max(1) {
        return Err(Error::Intractable(
            "too many column subsets; raise the limit or shrink the instance",
        ));
    }
    let mut enumeration = MinimalEnumeration {
        n_min,
        n_max,
        systems_total: 0,
        systems_singular: 0,
        solutions: Vec::new(),
    };
    let mut choice: Vec<usize> = (0..n_min).collect();
    loop {
        enumeration.systems_total += 1;
        let columns: Vec<Vec<usize>> = choice
            .iter()
            .map(|&c| admissible[c].fe_indices.clone())
            .collect();
        let matrix = build_matrix(&row_keys, &columns);
        match opt::solve_square(&matrix, &rhs) {
            Ok(solution) => {
                if solution.iter().all(|&v| v >= -NEGATIVE_TOL) {
                    enumeration.solutions.push(MinimalSolution {
                        column_indices: choice.clone(),
                        values: solution,
                    });
                }
            }
            Err(Error::SingularSystem) => enumeration.systems_singular += 1,
            Err(e) => return Err(e),
        }
        if !next_combination(&mut choice, n_max) {
            break;
        }
    }
    Ok(enumeration)
}

/// Materializes a minimal solution as a mass function on the fine frame of
/// the subproblem for `prior_fe`.
pub fn solution_mass_function(
    problem: &TotalBeliefProblem,
    prior_fe: SubsetMask,
    solution: &MinimalSolution,
) -> Result<MassFunction> {
    let admissible = admissible_focal_elements(problem, prior_fe)?;
    let fine_region = problem.refining.refine_set(prior_fe);
    let sub_fine = problem.refining.fine().sub_frame(fine_region)?;
    let entries: Vec<(SubsetMask, f64)> = solution
        .column_indices
        .iter()
        .zip(&solution.values)
        .map(|(&c, &v)| {
            (
                problem
                    .refining
                    .fine()
                    .project_to_sub(fine_region, admissible[c].set),
                math::max(v, 0.0),
            )
        })
        .collect();
    MassFunction::new(sub_fine, entries, true)
}

/// Assembles a full total mass function for a disjoint-focal-element prior
/// from one minimal solution per prior focal element, weighting each
/// partial assignment by the prior mass.
pub fn assemble_special_total(
    problem: &TotalBeliefProblem,
    parts: &[(SubsetMask, MinimalSolution)],
) -> Result<MassFunction> {
    let prior_fes: Vec<SubsetMask> = problem.prior.focal_elements().map(|(s, _)| s).collect();
    for pair in prior_fes.iter().enumerate() {
        for other in &prior_fes[pair.0 + 1..] {
            if pair.1.intersects(*other) {
                return Err(Error::InvalidProblem(
                    "special assembly needs pairwise disjoint prior focal elements",
                ));
            }
        }
    }
    if parts.len() != prior_fes.len() {
        return Err(Error::InvalidProblem(
            "one minimal solution per prior focal element required",
        ));
    }
    let mut entries: BTreeMap<SubsetMask, f64> = BTreeMap::new();
    for (prior_fe, solution) in parts {
        let admissible = admissible_focal_elements(problem, *prior_fe)?;
        let weight = problem.prior.mass(*prior_fe);
        for (&c, &v) in solution.column_indices.iter().zip(&solution.values) {
            if v > 0.0 {
                *entries.entry(admissible[c].set).or_insert(0.0) += weight * v;
            }
        }
    }
    MassFunction::new(problem.refining.fine().clone(), entries, true)
}

/// Report of one column substitution.
#[derive(Clone, Debug)]
pub struct SubstitutionReport {
    pub new_system: SelectedSystem,
    /// The replaced column and its negative solution component.
    pub old_column: Vec<usize>,
    pub old_component: f64,
    pub companions: Vec<usize>,
    pub selections: Vec<usize>,
    /// Solution predicted from the documented component effects.
    pub predicted_solution: Vec<f64>,
    /// Sup-norm residual of the predicted solution in the new system.
    pub predicted_residual: f64,
}

/// Replaces the column at `column_index` (whose solution component must be
/// negative) by `e' = −e + Σ_C e_c − Σ_S e_s` for a covering companion set
/// `C` and `|C| − 2` selection columns `S`, searching candidates in
/// deterministic order. The new column must be admissible and absent from
/// the current system.
pub fn column_substitution(
    problem: &TotalBeliefProblem,
    system: &SelectedSystem,
    column_index: usize,
) -> Result<SubstitutionReport> {
    let s = system.solution[column_index];
    if s >= -NEGATIVE_TOL {
        return Err(Error::NothingToSubstitute);
    }
    let n_cells = system.cells.len();
    let old = &system.columns[column_index];
    let others: Vec<usize> = (0..system.columns.len())
        .filter(|&i| i != column_index)
        .collect();

    // Incidence arithmetic over (cell, fe) slots.
    let slot_count: usize = system.fe_counts.iter().sum();
    let slot_base: Vec<usize> = system
        .fe_counts
        .iter()
        .scan(0usize, |acc, &n| {
            let base = *acc;
            *acc += n;
            Some(base)
        })
        .collect();
    let incidence = |col: &[usize]| -> Vec<i32> {
        let mut v = vec![0i32; slot_count];
        for (pos, &fe) in col.iter().enumerate() {
            v[slot_base[pos] + fe] = 1;
        }
        v
    };

    for companion_size in 2..=n_cells.max(2) {
        let mut companion_choice: Vec<usize> = (0..companion_size).collect();
        if companion_size > others.len() {
            break;
        }
        loop {
            let companions: Vec<usize> = companion_choice.iter().map(|&i| others[i]).collect();
            // Covering: every component of `old` appears in some companion.
            let covers = (0..n_cells).all(|pos| {
                companions
                    .iter()
                    .any(|&c| system.columns[c][pos] == old[pos])
            });
            if covers {
                let remaining: Vec<usize> = others
                    .iter()
                    .copied()
                    .filter(|i| !companions.contains(i))
                    .collect();
                let selection_size = companion_size - 2;
                if let Some(report) = try_selections(
                    problem,
                    system,
                    column_index,
                    &companions,
                    &remaining,
                    selection_size,
                    &incidence,
                    slot_count,
                    &slot_base,
                )? {
                    return Ok(report);
                }
            }
            if !next_combination(&mut companion_choice, others.len()) {
                break;
            }
        }
    }
    Err(Error::NoAdmissibleSubstitution)
}

#[allow(clippy::too_many_arguments)]
fn try_selections(
    problem: &TotalBeliefProblem,
    system: &SelectedSystem,
    column_index: usize,
    companions: &[usize],
    remaining: &[usize],
    selection_size: usize,
    incidence: &dyn Fn(&[usize]) -> Vec<i32>,
    slot_count: usize,
    slot_base: &[usize],
) -> Result<Option<SubstitutionReport>> {
    let old = &system.columns[column_index];
    let mut selections_iter: Vec<Vec<usize>> = Vec::new();
    if selection_size == 0 {
        selections_iter.push(Vec::new());
    } else {
        if selection_size > remaining.len() {
            return Ok(None);
        }
        let mut choice: Vec<usize> = (0..selection_size).collect();
        loop {
            selections_iter.push(choice.iter().map(|&i| remaining[i]).collect());
            if !next_combination(&mut choice, remaining.len()) {
                break;
            }
        }
    }
    for selections in selections_iter {
        let mut v: Vec<i32> = incidence(old).iter().map(|&x| -x).collect();
        for &c in companions {
            for (slot, x) in v.iter_mut().zip(incidence(&system.columns[c])) {
                *slot += x;
            }
        }
        for &s in &selections {
            for (slot, x) in v.iter_mut().zip(incidence(&system.columns[s])) {
                *slot -= x;
            }
        }
        // Admissible: exactly one slot set per cell, all slots in {0,1}.
        if v.iter().any(|&x| x != 0 && x != 1) {
            continue;
        }
        let mut new_column: Vec<usize> = Vec::with_capacity(system.cells.len());
        let mut admissible = true;
        for (pos, &base) in slot_base.iter().enumerate() {
            let count = system.fe_counts[pos];
            let ones: Vec<usize> = (0..count).filter(|&k| v[base + k] == 1).collect();
            if ones.len() != 1 {
                admissible = false;
                break;
            }
            new_column.push(ones[0]);
        }
        if !admissible || system.columns.contains(&new_column) {
            continue;
        }
        let s = system.solution[column_index];
        // Documented effects: new component −s, companions −|s|,
        // selections +|s|, all others unchanged.
        let mut predicted = system.solution.clone();
        predicted[column_index] = -s;
        for &c in companions {
            predicted[c] -= -s;
        }
        for &sel in &selections {
            predicted[sel] += -s;
        }
        let mut columns = system.columns.clone();
        columns[column_index] = new_column.clone();
        let new_system = select_minimal_system(problem, system.prior_fe, &columns)?;
        let cells: Vec<usize> = system.prior_fe.outcomes().collect();
        let (row_keys, rhs, _) = subproblem_rows(problem, &cells);
        let matrix = build_matrix(&row_keys, &columns);
        let mut residual: f64 = 0.0;
        for (row, &target) in matrix.iter().zip(&rhs) {
            let lhs: f64 = row.iter().zip(&predicted).map(|(a, b)| a * b).sum();
            residual = math::max(residual, math::abs(lhs - target));
        }
        let _ = slot_count;
        return Ok(Some(SubstitutionReport {
            new_system,
            old_column: old.clone(),
            old_component: s,
            companions: companions.to_vec(),
            selections,
            predicted_solution: predicted,
            predicted_residual: residual,
        }));
    }
    Ok(None)
}

/// Finds a second nonnegative solution of the full constraint system,
/// distinct from the canonical one, by stepping along a null-space
/// direction from the canonical solution.
pub fn find_second_solution(problem: &TotalBeliefProblem) -> Result<MassFunction> {
    let system = build_constraint_system(problem)?;
    let canonical = construct_total_product(problem)?;
    let x0: Vec<f64> = system
        .columns
        .iter()
        .map(|c| canonical.mass(c.set))
        .collect();
    let matrix: Vec<Vec<f64>> = system.rows.iter().map(|r| r.coeffs.clone()).collect();
    let basis = opt::null_space(&matrix, 1e-9);
    for v in &basis {
        for direction in [1.0, -1.0] {
            let dir: Vec<f64> = v.iter().map(|&x| x * direction).collect();
            let sup = math::sup_norm(&dir);
            if sup == 0.0 {
                continue;
            }
            // Largest step keeping all components nonnegative.
            let mut t_max = f64::INFINITY;
            for (xi, di) in x0.iter().zip(&dir) {
                if *di < 0.0 {
                    t_max = math::min(t_max, -xi / di);
                }
            }
            let t = if t_max.is_finite() { 0.5 * t_max } else { 1.0 };
            if t * sup <= 1e-4 {
                continue;
            }
            let entries: Vec<(SubsetMask, f64)> = system
                .columns
                .iter()
                .zip(x0.iter().zip(&dir))
                .map(|(c, (xi, di))| (c.set, math::max(xi + t * di, 0.0)))
                .collect();
            let candidate =
                MassFunction::new(problem.refining.fine().clone(), entries, true)?;
            if system.residual_of(&candidate) <= 1e-9 {
                return Ok(candidate);
            }
        }
    }
    Err(Error::Degenerate(
        "constraint system admits no second nonnegative solution",
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > (usize::MAX as u128) {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Advances `choice` to the next k-combination of `0..n`; false when done.
fn next_combination(choice: &mut [usize], n: usize) -> bool {
    let k = choice.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if choice[i] < n - (k - i) {
            choice[i] += 1;
            for j in (i + 1)..k {
                choice[j] = choice[j - 1] + 1;
            }
            return true;
        }
    }
}
