//! Binary-frame geometry of combination rules, geometric conditioning as
//! norm minimisation, and the ternary 2-monotone toy polytope.
//!
//! Binary belief points use coordinates `[m(x), m(y)]` (the Θ coordinate is
//! redundant for normalized points); unnormalized believability points use
//! `[b(∅), b({x}), b({y})]` with the Θ coordinate dropped.

use alloc::vec;
use alloc::vec::Vec;

use crate::combine::{self, CombinationRule};
use crate::error::{Error, Result};
use crate::frame::SubsetMask;
#[cfg(test)]
use crate::frame::Frame;
use crate::mass::MassFunction;
use crate::math;
use crate::opt;

/// Combination rules whose binary conditional subspaces are emitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceRule {
    Dempster,
    Yager,
    Disjunctive,
    /// Conjunctive rule on unnormalized (believability) points.
    ConjunctiveUnnormalized,
    /// Disjunctive rule on unnormalized points, where ∅ is the unit.
    DisjunctiveUnnormalized,
}

/// One vertex of a conditional subspace: the combination of the input with a
/// categorical mass function.
#[derive(Clone, Debug)]
pub struct SubspaceVertex {
    /// The categorical conditioning set.
    pub event: SubsetMask,
    pub point: MassFunction,
}

fn require_binary(m: &MassFunction) -> Result<()> {
    if m.frame().size() != 2 {
        return Err(Error::NotBinaryFrame);
    }
    Ok(())
}

/// Belief-space coordinates of a normalized binary mass function:
/// `[m(x), m(y)]`.
pub fn belief_coords(m: &MassFunction) -> Result<[f64; 2]> {
    require_binary(m)?;
    Ok([
        m.mass(SubsetMask::singleton(0)),
        m.mass(SubsetMask::singleton(1)),
    ])
}

/// Believability coordinates of a binary unnormalized mass function:
/// `[b(∅), b({x}), b({y})]`.
pub fn believability_coords(m: &MassFunction) -> Result<[f64; 3]> {
    require_binary(m)?;
    let b = m.believability()?;
    Ok([
        b.value(SubsetMask::EMPTY),
        b.value(SubsetMask::singleton(0)),
        b.value(SubsetMask::singleton(1)),
    ])
}

/// Vertices of the conditional subspace `{bel ⊙ bel′}` on a binary frame:
/// the combinations with the categorical mass functions (∅ included for the
/// unnormalized rules).
pub fn conditional_subspace(bel: &MassFunction, rule: SubspaceRule) -> Result<Vec<SubspaceVertex>> {
    require_binary(bel)?;
    let frame = bel.frame().clone();
    let events: Vec<SubsetMask> = match rule {
        SubspaceRule::Dempster | SubspaceRule::Yager | SubspaceRule::Disjunctive => vec![
            SubsetMask::singleton(0),
            SubsetMask::singleton(1),
            frame.full(),
        ],
        SubspaceRule::ConjunctiveUnnormalized | SubspaceRule::DisjunctiveUnnormalized => vec![
            SubsetMask::EMPTY,
            SubsetMask::singleton(0),
            SubsetMask::singleton(1),
            frame.full(),
        ],
    };
    let combination_rule = match rule {
        SubspaceRule::Dempster => CombinationRule::Dempster,
        SubspaceRule::Yager => CombinationRule::Yager,
        SubspaceRule::Disjunctive | SubspaceRule::DisjunctiveUnnormalized => {
            CombinationRule::Disjunctive
        }
        SubspaceRule::ConjunctiveUnnormalized => CombinationRule::Conjunctive,
    };
    let mut vertices = Vec::with_capacity(events.len());
    for event in events {
        let categorical = MassFunction::categorical(frame.clone(), event)?;
        let point = match combine::combine(combination_rule, bel, &categorical) {
            Ok(p) => p,
            // Dempster with a categorical of zero plausibility is undefined;
            // skip that vertex rather than fail the whole subspace.
            Err(Error::TotalConflict) => continue,
            Err(e) => return Err(e),
        };
        vertices.push(SubspaceVertex { event, point });
    }
    Ok(vertices)
}

/// Max sup-norm deviation between `bel ⊙ (Σ αᵢ belᵢ)` and
/// `Σ αᵢ (bel ⊙ belᵢ)` over mass vectors.
pub fn affine_commutation_check(
    rule: CombinationRule,
    bel: &MassFunction,
    bels: &[MassFunction],
    weights: &[f64],
) -> Result<f64> {
    if bels.is_empty() || bels.len() != weights.len() {
        return Err(Error::Domain("one weight per mass function required"));
    }
    if weights.iter().any(|&w| w < 0.0)
        || math::abs(weights.iter().sum::<f64>() - 1.0) > 1e-9
    {
        return Err(Error::Domain("weights must be convex"));
    }
    let frame = bel.frame().clone();
    // Affine mixture of the inputs.
    let mut mixture_entries: alloc::collections::BTreeMap<SubsetMask, f64> =
        alloc::collections::BTreeMap::new();
    for (m, &w) in bels.iter().zip(weights) {
        if m.frame() != &frame {
            return Err(Error::FrameMismatch);
        }
        for (s, v) in m.focal_elements() {
            *mixture_entries.entry(s).or_insert(0.0) += w * v;
        }
    }
    let normalized = bels.iter().all(|m| m.is_normalized_regime());
    let mixture = MassFunction::new(frame.clone(), mixture_entries, normalized)?;
    let left = combine::combine(rule, bel, &mixture)?;

    let mut right: alloc::collections::BTreeMap<SubsetMask, f64> =
        alloc::collections::BTreeMap::new();
    for (m, &w) in bels.iter().zip(weights) {
        let combined = combine::combine(rule, bel, m)?;
        for (s, v) in combined.focal_elements() {
            *right.entry(s).or_insert(0.0) += w * v;
        }
    }
    let mut deviation: f64 = 0.0;
    for s in frame.subsets() {
        let r = right.get(&s).copied().unwrap_or(0.0);
        deviation = math::max(deviation, math::abs(left.mass(s) - r));
    }
    Ok(deviation)
}

/// The focus of the family of lines joining `Bel′` and `Bel ⊔ Bel′` on a
/// binary frame: `( m′(x) (m(x) − m(y)) / (1 − m(y)), 0 )`, independent of
/// `m′(y)`.
pub fn disjunctive_focus(bel: &MassFunction, m_prime_x: f64) -> Result<(f64, f64)> {
    require_binary(bel)?;
    let [mx, my] = belief_coords(bel)?;
    if my >= 1.0 - 1e-12 {
        return Err(Error::Degenerate("m(y) = 1 leaves the focus undefined"));
    }
    Ok((m_prime_x * (mx - my) / (1.0 - my), 0.0))
}

/// Line fitted to the Yager images of one constant-mass locus.
#[derive(Clone, Debug)]
pub struct LocusLine {
    /// The locus `m₂(x) = c`.
    pub c: f64,
    pub slope: f64,
    pub intercept: f64,
    /// Largest residual of the image points from the fitted line.
    pub max_residual: f64,
}

/// Parallelism report for Yager images of constant-mass loci.
#[derive(Clone, Debug)]
pub struct LociReport {
    pub lines: Vec<LocusLine>,
    /// Spread between the largest and smallest fitted slope.
    pub slope_spread: f64,
    /// The limiting slope `−m₁(Θ)/m₁(x)`, when `m₁(x) > 0`.
    pub limit_slope: Option<f64>,
}

/// Samples each locus `m₂(x) = c`, maps the points through Yager
/// combination with `bel`, and fits a line to the images. For Yager's rule
/// the images are parallel lines of slope `−m₁(Θ)/m₁(x)`.
pub fn yager_parallel_loci(
    bel: &MassFunction,
    cs: &[f64],
    samples_per_locus: usize,
) -> Result<LociReport> {
    require_binary(bel)?;
    if samples_per_locus < 2 {
        return Err(Error::Domain("need at least two samples per locus"));
    }
    let [mx, _my] = belief_coords(bel)?;
    let m_theta = bel.mass(bel.frame().full());
    if mx <= 0.0 {
        return Err(Error::Degenerate(
            "m1(x) = 0 leaves the image slope undefined",
        ));
    }
    let frame = bel.frame().clone();
    let mut lines = Vec::with_capacity(cs.len());
    for &c in cs {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::Domain("locus constant must lie in [0, 1]"));
        }
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(samples_per_locus);
        for k in 0..samples_per_locus {
            let m2y = (1.0 - c) * k as f64 / (samples_per_locus - 1) as f64;
            let other = MassFunction::new(
                frame.clone(),
                [
                    (SubsetMask::singleton(0), c),
                    (SubsetMask::singleton(1), m2y),
                    (frame.full(), 1.0 - c - m2y),
                ],
                true,
            )?;
            let image = combine::yager(bel, &other)?;
            let [ix, iy] = belief_coords(&image)?;
            points.push((ix, iy));
        }
        // Least-squares line y = a x + b.
        let n = points.len() as f64;
        let sx: f64 = points.iter().map(|p| p.0).sum();
        let sy: f64 = points.iter().map(|p| p.1).sum();
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        if math::abs(denom) < 1e-15 {
            return Err(Error::Degenerate("locus image degenerates to a point"));
        }
        let slope = (n * sxy - sx * sy) / denom;
        let intercept = (sy - slope * sx) / n;
        let max_residual = points
            .iter()
            .map(|&(x, y)| math::abs(y - (slope * x + intercept)))
            .fold(0.0, math::max);
        lines.push(LocusLine {
            c,
            slope,
            intercept,
            max_residual,
        });
    }
    let slopes: Vec<f64> = lines.iter().map(|l| l.slope).collect();
    let spread = slopes.iter().fold(f64::NEG_INFINITY, |a, &b| math::max(a, b))
        - slopes.iter().fold(f64::INFINITY, |a, &b| math::min(a, b));
    Ok(LociReport {
        lines,
        slope_spread: spread,
        limit_slope: Some(-m_theta / mx),
    })
}

/// Norms available for geometric conditioning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    L1,
    L2,
    Linf,
}

/// Belief vector over nonempty proper subsets, ascending mask order.
fn belief_vector(m: &MassFunction) -> Result<Vec<f64>> {
    let bel = m.belief()?;
    let full = m.frame().full();
    Ok(m.frame()
        .subsets()
        .filter(|s| !s.is_empty() && *s != full)
        .map(|s| bel.value(s))
        .collect())
}

/// Geometric conditioning: the mass function supported inside `event`
/// whose belief vector is closest to `bel`'s in the chosen norm. L2 runs a
/// projected-gradient quadratic descent; L1 and L∞ solve the standard LP
/// reformulations.
pub fn geometric_condition(
    bel: &MassFunction,
    event: SubsetMask,
    norm: NormKind,
) -> Result<MassFunction> {
    let frame = bel.frame().clone();
    frame.check_mask(event)?;
    if event.is_empty() {
        return Err(Error::Domain("conditioning event must be nonempty"));
    }
    if frame.size() > 10 {
        return Err(Error::Intractable("geometric conditioning is capped at n = 10"));
    }
    let target = belief_vector(bel)?;
    let full = frame.full();
    let coords: Vec<SubsetMask> = frame
        .subsets()
        .filter(|s| !s.is_empty() && *s != full)
        .collect();
    // Feasible masses sit on nonempty subsets of the event.
    let support: Vec<SubsetMask> = frame
        .subsets()
        .filter(|s| !s.is_empty() && s.is_subset_of(event))
        .collect();
    // b coordinates of a feasible point: Bel(A) = Σ_{B ⊆ A, B ∈ support} x_B.
    let design: Vec<Vec<f64>> = coords
        .iter()
        .map(|&a| {
            support
                .iter()
                .map(|&b| if b.is_subset_of(a) { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();

    let solution: Vec<f64> = match norm {
        NormKind::L2 => {
            // Projected gradient on ‖Dx − t‖² over the mass simplex.
            let mut x = vec![1.0 / support.len() as f64; support.len()];
            // Lipschitz bound for the gradient: 2‖DᵀD‖∞.
            let lip: f64 = 2.0
                * design
                    .iter()
                    .map(|row| row.iter().sum::<f64>())
                    .fold(0.0, math::max)
                * support.len() as f64;
            let step = 1.0 / math::max(lip, 1.0);
            let mut previous = f64::INFINITY;
            for _ in 0..200_000 {
                let residual: Vec<f64> = design
                    .iter()
                    .zip(&target)
                    .map(|(row, &t)| row.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - t)
                    .collect();
                let objective: f64 = residual.iter().map(|r| r * r).sum();
                let mut grad = vec![0.0; support.len()];
                for (row, &r) in design.iter().zip(&residual) {
                    for (g, &d) in grad.iter_mut().zip(row) {
                        *g += 2.0 * r * d;
                    }
                }
                let proposal: Vec<f64> = x
                    .iter()
                    .zip(&grad)
                    .map(|(xi, gi)| xi - step * gi)
                    .collect();
                x = opt::project_simplex(&proposal, 1.0);
                if math::abs(previous - objective) < 1e-15 {
                    break;
                }
                previous = objective;
            }
            x
        }
        NormKind::L1 | NormKind::Linf => {
            let d = coords.len();
            let k = support.len();
            let aux = if norm == NormKind::L1 { d } else { 1 };
            // Variables: x (k), t (aux), slack+ (d), slack− (d).
            let cols = k + aux + 2 * d;
            let mut a = Vec::with_capacity(2 * d + 1);
            let mut b = Vec::with_capacity(2 * d + 1);
            for (i, row) in design.iter().enumerate() {
                // Dx − t + s⁺ = target  (Dx − target ≤ t)
                let mut r1 = vec![0.0; cols];
                r1[..k].copy_from_slice(row);
                r1[k + if norm == NormKind::L1 { i } else { 0 }] = -1.0;
                r1[k + aux + i] = 1.0;
                a.push(r1);
                b.push(target[i]);
                // −Dx − t + s⁻ = −target  (target − Dx ≤ t)
                let mut r2 = vec![0.0; cols];
                for (slot, &v) in r2[..k].iter_mut().zip(row) {
                    *slot = -v;
                }
                r2[k + if norm == NormKind::L1 { i } else { 0 }] = -1.0;
                r2[k + aux + d + i] = 1.0;
                a.push(r2);
                b.push(-target[i]);
            }
            let mut norm_row = vec![0.0; cols];
            for slot in norm_row.iter_mut().take(k) {
                *slot = 1.0;
            }
            a.push(norm_row);
            b.push(1.0);
            let mut c = vec![0.0; cols];
            for slot in c.iter_mut().skip(k).take(aux) {
                *slot = 1.0;
            }
            let lp = opt::simplex_lp(&a, &b, &c)?;
            lp[..k].to_vec()
        }
    };
    let entries: Vec<(SubsetMask, f64)> = support
        .iter()
        .zip(&solution)
        .filter(|(_, &v)| v > 1e-13)
        .map(|(&s, &v)| (s, v))
        .collect();
    MassFunction::new(frame, entries, true)
}

/// One vertex of the ternary 2-monotone toy body with its feasibility
/// checks.
#[derive(Clone, Copy, Debug)]
pub struct ToyVertex {
    pub coords: [f64; 3],
    /// `z ≥ −min(x, y)`, `x ≥ 0`, `y ≥ 0`, `x + y + z = 1`.
    pub feasible: bool,
}

/// The four vertices `[1,0,0], [0,1,0], [0,0,1], [1,1,−1]` of the convex
/// body `{ z ≥ −min(x,y), x,y ≥ 0, x+y+z = 1 }`, each checked against the
/// defining constraints.
pub fn ternary_two_monotone_vertices() -> [ToyVertex; 4] {
    let vertices = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 1.0, -1.0],
    ];
    vertices.map(|coords| ToyVertex {
        coords,
        feasible: toy_feasible(coords, 1e-12),
    })
}

/// Membership in the toy convex body within `tol`.
pub fn toy_feasible(coords: [f64; 3], tol: f64) -> bool {
    let [x, y, z] = coords;
    x >= -tol && y >= -tol && z >= -math::min(x, y) - tol && math::abs(x + y + z - 1.0) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary_mass(mx: f64, my: f64) -> MassFunction {
        let f = Frame::new(["x", "y"]).unwrap();
        MassFunction::new(
            f.clone(),
            [
                (SubsetMask::singleton(0), mx),
                (SubsetMask::singleton(1), my),
                (f.full(), 1.0 - mx - my),
            ],
            true,
        )
        .unwrap()
    }

    #[test]
    fn yager_vertex_formula() {
        // Bel ⓨ Bel_x = [m(x)+m(Θ), 0, m(y)].
        let bel = binary_mass(0.4, 0.2);
        let vertices = conditional_subspace(&bel, SubspaceRule::Yager).unwrap();
        let vx = &vertices[0].point;
        assert!(math::abs(vx.mass(SubsetMask::singleton(0)) - 0.8) < 1e-12);
        assert!(math::abs(vx.mass(SubsetMask::singleton(1))) < 1e-12);
        assert!(math::abs(vx.mass(vx.frame().full()) - 0.2) < 1e-12);
        // Bel ⓨ Bel_Θ = Bel.
        assert!(vertices[2].point.approx_eq(&bel, 1e-12));
    }

    #[test]
    fn disjunctive_vertex_formula() {
        // Bel ⊔ Bel_x = [m(x), 0, 1 − m(x)].
        let bel = binary_mass(0.4, 0.2);
        let vertices = conditional_subspace(&bel, SubspaceRule::Disjunctive).unwrap();
        let vx = &vertices[0].point;
        assert!(math::abs(vx.mass(SubsetMask::singleton(0)) - 0.4) < 1e-12);
        assert!(math::abs(vx.mass(vx.frame().full()) - 0.6) < 1e-12);
        // Bel ⊔ Bel_Θ is the categorical on Θ.
        let v_theta = &vertices[2].point;
        assert!(math::abs(v_theta.mass(v_theta.frame().full()) - 1.0) < 1e-12);
    }

    #[test]
    fn unnormalized_conjunctive_vertices_interpolate() {
        // b ⊓ b_x = b(y)·b_∅ + (1 − b(y))·b_x in believability coordinates.
        let f = Frame::new(["x", "y"]).unwrap();
        let bel = MassFunction::new(
            f.clone(),
            [
                (SubsetMask::EMPTY, 0.1),
                (SubsetMask::singleton(0), 0.3),
                (SubsetMask::singleton(1), 0.2),
                (f.full(), 0.4),
            ],
            false,
        )
        .unwrap();
        let vertices =
            conditional_subspace(&bel, SubspaceRule::ConjunctiveUnnormalized).unwrap();
        let by = believability_coords(&bel).unwrap()[2];
        // vertices[1] is b ⊓ b_x.
        let got = believability_coords(&vertices[1].point).unwrap();
        let expected = [by, 1.0, by];
        for (g, e) in got.iter().zip(expected) {
            assert!(math::abs(g - e) < 1e-12);
        }
        // The empty categorical absorbs everything under ⊓.
        let empty = believability_coords(&vertices[0].point).unwrap();
        assert_eq!(empty, [1.0, 1.0, 1.0]);
    }

    #[test]
    fn vacuous_subspace_spans_the_whole_simplex() {
        let f = Frame::new(["x", "y"]).unwrap();
        let vac = MassFunction::vacuous(f);
        let vertices = conditional_subspace(&vac, SubspaceRule::Dempster).unwrap();
        // Vacuous ⊕ categorical = categorical: the vertices are the simplex corners.
        assert!(math::abs(vertices[0].point.mass(SubsetMask::singleton(0)) - 1.0) < 1e-15);
        assert!(math::abs(vertices[1].point.mass(SubsetMask::singleton(1)) - 1.0) < 1e-15);
        assert!(
            math::abs(vertices[2].point.mass(vertices[2].point.frame().full()) - 1.0) < 1e-15
        );
    }

    #[test]
    fn binary_affine_commutation_for_yager_and_disjunctive() {
        let mut rng = crate::rng::Rng::seed_from(3);
        for _ in 0..50 {
            let bel = crate::sampling::random_full_support(&Frame::new(["x", "y"]).unwrap(), &mut rng);
            let others: Vec<MassFunction> = (0..3)
                .map(|_| {
                    crate::sampling::random_full_support(&Frame::new(["x", "y"]).unwrap(), &mut rng)
                })
                .collect();
            let weights = crate::sampling::random_convex_weights(3, &mut rng);
            for rule in [CombinationRule::Yager, CombinationRule::Disjunctive] {
                let dev = affine_commutation_check(rule, &bel, &others, &weights).unwrap();
                assert!(dev <= 1e-12, "rule {rule:?}: deviation {dev}");
            }
        }
    }

    #[test]
    fn focus_formula_and_invariance() {
        let bel = binary_mass(0.4, 0.2);
        let (fx, fy) = disjunctive_focus(&bel, 0.5).unwrap();
        assert!(math::abs(fx - 0.125) < 1e-15);
        assert_eq!(fy, 0.0);
        // m(x) = m(y) sends the focus to the origin.
        let sym = binary_mass(0.3, 0.3);
        let (fx, _) = disjunctive_focus(&sym, 0.8).unwrap();
        assert!(math::abs(fx) < 1e-15);
    }

    #[test]
    fn focus_matches_line_intersection_oracle() {
        // Intersect the lines through (Bel', Bel ⊔ Bel') for two different
        // m'(y) values; both must pass through the focus.
        let bel = binary_mass(0.4, 0.2);
        let m_prime_x = 0.5;
        let (fx, _) = disjunctive_focus(&bel, m_prime_x).unwrap();
        for m_prime_y in [0.1, 0.3, 0.45] {
            let other = binary_mass(m_prime_x, m_prime_y);
            let image = combine::disjunctive(&bel, &other).unwrap();
            let p1 = belief_coords(&other).unwrap();
            let p2 = belief_coords(&image).unwrap();
            // Line through p1, p2 evaluated at y = 0.
            let slope = (p2[1] - p1[1]) / (p2[0] - p1[0]);
            let x_at_zero = p1[0] - p1[1] / slope;
            assert!(math::abs(x_at_zero - fx) < 1e-12);
        }
    }

    #[test]
    fn yager_loci_are_parallel_with_limit_slope() {
        let bel = binary_mass(0.5, 0.2);
        let report = yager_parallel_loci(&bel, &[0.1, 0.3], 9).unwrap();
        assert!(report.slope_spread < 1e-10);
        for line in &report.lines {
            assert!(line.max_residual < 1e-12);
            assert!(math::abs(line.slope - report.limit_slope.unwrap()) < 1e-10);
        }
        // m₁(Θ) = 0 gives horizontal images.
        let bayes = binary_mass(0.6, 0.4);
        let flat = yager_parallel_loci(&bayes, &[0.2], 5).unwrap();
        assert!(math::abs(flat.lines[0].slope) < 1e-12);
    }

    #[test]
    fn geometric_conditioning_is_identity_inside_the_simplex() {
        let f = Frame::new(["x", "y", "z"]).unwrap();
        let event = SubsetMask::new(0b011);
        let m = MassFunction::new(
            f.clone(),
            [
                (SubsetMask::singleton(0), 0.3),
                (SubsetMask::new(0b011), 0.7),
            ],
            true,
        )
        .unwrap();
        for norm in [NormKind::L1, NormKind::L2, NormKind::Linf] {
            let conditioned = geometric_condition(&m, event, norm).unwrap();
            assert!(conditioned.sup_diff(&m) < 1e-6, "{norm:?}");
        }
    }

    #[test]
    fn geometric_conditioning_on_full_frame_returns_bel() {
        let f = Frame::new(["x", "y", "z"]).unwrap();
        let mut rng = crate::rng::Rng::seed_from(9);
        let m = crate::sampling::random_full_support(&f, &mut rng);
        for norm in [NormKind::L1, NormKind::L2, NormKind::Linf] {
            let conditioned = geometric_condition(&m, f.full(), norm).unwrap();
            assert!(conditioned.sup_diff(&m) < 1e-6, "{norm:?}");
        }
    }

    #[test]
    fn toy_vertices_are_feasible() {
        let vertices = ternary_two_monotone_vertices();
        assert!(vertices.iter().all(|v| v.feasible));
        // Interior point satisfies the constraints strictly.
        assert!(toy_feasible([0.5, 0.5, 0.0], 0.0));
        assert!(!toy_feasible([1.5, 0.2, -0.7], 1e-12));
    }
}
