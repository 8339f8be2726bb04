//! Dunkl translation, convolution, the support-theorem defect, and the
//! weighted-L1 convolution bounds.
//!
//! The default translation route is spectral:
//! `tau_x f(y) = c_k^{-1} int E(i xi, x) E(i xi, y) F f(xi) dw(xi)`.
//! In rank one (and per-axis products) translations of radial profiles are
//! also available through the explicit product-formula measure, which serves
//! as an independent cross-check.

use crate::grid::{GridFunction, Side};
use crate::multiplier::cutoffs;
use crate::quad::{integrate_panels, singular_panels};
use crate::special::KernelEvaluator;
use crate::transform::DunklTransform;
use crate::{Cplx, DunklError, Real, Result};
use statrs::function::gamma::gamma;

/// `tau_x f` on the grid (spectral route).
pub fn translate(tr: &DunklTransform, f: &GridFunction, x: &[Real]) -> Result<GridFunction> {
    let spectral = tr.forward(f)?;
    let modulated = modulate_plus_i(tr.kernel_evaluator(), &spectral, x);
    tr.inverse(&modulated)
}

/// `y -> tau_x f(-y)` on the grid.
pub fn translate_neg(tr: &DunklTransform, f: &GridFunction, x: &[Real]) -> Result<GridFunction> {
    let spectral = tr.forward(f)?;
    let modulated = modulate_plus_i(tr.kernel_evaluator(), &spectral, x);
    // E(i xi, -y) = E(-i xi, y): the forward-type kernel
    Ok(tr.forward(&modulated)?.with_side(Side::Physical))
}

fn modulate_plus_i(ke: &KernelEvaluator, spectral: &GridFunction, x: &[Real]) -> GridFunction {
    let grid = spectral.grid().clone();
    let mut values = Vec::with_capacity(grid.node_count());
    for (flat, (_, xi)) in grid.iter_nodes().enumerate() {
        values.push(spectral.values()[flat] * ke.eval_plus_i(&xi, x));
    }
    GridFunction::from_values(grid, Side::Spectral, values).expect("same grid")
}

/// Dunkl convolution `f * g = c_k F^{-1}[(F f)(F g)]`.
pub fn convolve(tr: &DunklTransform, f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    if !f.same_grid(g) {
        return Err(DunklError::InvalidGrid("convolution operands on different grids".into()));
    }
    let ck = tr.grid().root_system().gaussian_mass();
    let ff = tr.forward(f)?;
    let fg = tr.forward(g)?;
    let prod = ff.zip(&fg, |a, b| a * b)?;
    Ok(&tr.inverse(&prod)? * Cplx::from(ck))
}

/// Convolution through the translation integral
/// `(f * g)(x) = int f(y) tau_x g(-y) dw(y)` at one point `x`.
pub fn convolve_at_via_translation(
    tr: &DunklTransform,
    f: &GridFunction,
    g: &GridFunction,
    x: &[Real],
) -> Result<Cplx> {
    let tg = translate_neg(tr, g, x)?;
    let prod = f.zip(&tg, |a, b| a * b)?;
    Ok(prod.integral())
}

/// Quadrature rule against the rank-one product-formula measure in the
/// normalized variable `u = eta / x`:
/// `d nu_k(u) = Gamma(k+1/2) / (sqrt(pi) Gamma(k)) (1+u)(1-u^2)^{k-1} du`
/// on `(-1, 1)`; the `k = 0` limit is the point mass at `u = 1`.
#[derive(Clone, Debug)]
pub struct RadialTranslationRule {
    /// (node, weight) pairs; weights sum to 1.
    pub points: Vec<(Real, Real)>,
}

impl RadialTranslationRule {
    pub fn new(k: Real) -> Self {
        if k == 0.0 {
            return RadialTranslationRule { points: vec![(1.0, 1.0)] };
        }
        let norm = gamma(k + 0.5) / (std::f64::consts::PI.sqrt() * gamma(k));
        let panels = singular_panels(-1.0, 1.0, &[], 50, true);
        let rule = crate::quad::GaussRule::new(12);
        let mut points = Vec::new();
        for &(a, b) in &panels {
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                let u: Real = c + h * t;
                let dens = norm * (1.0 + u) * (1.0 - u * u).powf(k - 1.0);
                points.push((u, w * h * dens));
            }
        }
        RadialTranslationRule { points }
    }

    pub fn total_mass(&self) -> Real {
        self.points.iter().map(|(_, w)| w).sum()
    }
}

/// `tau_x f(-y)` for a radial profile `f(x) = profile(||x||)` on a product
/// system, via the product-formula measure:
/// `int profile(A(x, y, eta)) d mu_x(eta)`, `A = sqrt(||x||^2 + ||y||^2 - 2 <y, eta>)`.
pub fn translate_radial_at<F: Fn(Real) -> Real>(
    rules: &[RadialTranslationRule],
    profile: &F,
    x: &[Real],
    y: &[Real],
) -> Real {
    let n = x.len();
    let x2: Real = x.iter().map(|c| c * c).sum();
    let y2: Real = y.iter().map(|c| c * c).sum();
    // tensor iteration over the per-axis rules (eta_a = x_a u_a)
    let mut total = 0.0;
    let mut idx = vec![0usize; n];
    'outer: loop {
        let mut w = 1.0;
        let mut dot = 0.0;
        for a in 0..n {
            let (u, wu) = rules[a].points[idx[a]];
            w *= wu;
            dot += y[a] * x[a] * u;
        }
        let arg_sq = (x2 + y2 - 2.0 * dot).max(0.0);
        total += w * profile(arg_sq.sqrt());
        for a in (0..n).rev() {
            idx[a] += 1;
            if idx[a] < rules[a].points.len() {
                continue 'outer;
            }
            idx[a] = 0;
            if a == 0 {
                break 'outer;
            }
        }
    }
    total
}

/// Grid function `y -> tau_x f(-y)` through the product-formula route;
/// radial input is required.
pub fn translate_radial<F: Fn(Real) -> Real>(
    tr: &DunklTransform,
    profile: &F,
    x: &[Real],
) -> Result<GridFunction> {
    let grid = tr.grid().clone();
    let n = grid.dim();
    if x.len() != n {
        return Err(DunklError::invalid("translation point dimension mismatch"));
    }
    let rules: Vec<RadialTranslationRule> = (0..n)
        .map(|a| RadialTranslationRule::new(grid.axis_multiplicity(a)))
        .collect();
    Ok(GridFunction::from_real_fn(grid, Side::Physical, |y| {
        translate_radial_at(&rules, profile, x, y)
    }))
}

/// `A(x, y, eta) >= d(x, y)` spot check over the product-formula support;
/// returns the worst (most negative) margin `A - d`.
pub fn radial_argument_dominates_orbit_distance(
    tr: &DunklTransform,
    x: &[Real],
    y: &[Real],
    samples: usize,
) -> Real {
    let rs = tr.grid().root_system();
    let d = rs.orbit_distance(x, y);
    let x2: Real = x.iter().map(|c| c * c).sum();
    let y2: Real = y.iter().map(|c| c * c).sum();
    let n = x.len();
    let mut worst = Real::INFINITY;
    // deterministic lattice of u in [-1,1]^n
    let per_axis = (samples as Real).powf(1.0 / n as Real).ceil() as usize;
    let mut idx = vec![0usize; n];
    loop {
        let mut dot = 0.0;
        for a in 0..n {
            let u = -1.0 + 2.0 * idx[a] as Real / (per_axis - 1).max(1) as Real;
            dot += y[a] * x[a] * u;
        }
        let arg = (x2 + y2 - 2.0 * dot).max(0.0).sqrt();
        worst = worst.min(arg - d);
        let mut a = n;
        loop {
            if a == 0 {
                return worst;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < per_axis {
                break;
            }
            idx[a] = 0;
        }
    }
}

/// Support-theorem defect: with `supp f` inside `B(0, r)`,
/// `int_{d(x, y) > r + margin} |tau_x f(-y)| dw(y) / ||f||_1`.
pub fn support_defect(
    tr: &DunklTransform,
    f: &GridFunction,
    x: &[Real],
    r: Real,
    margin: Real,
) -> Result<Real> {
    let grid = tr.grid();
    // precondition: f vanishes outside B(0, r) on the nodes
    let sup = f.linf_norm();
    for (flat, (_, node)) in grid.iter_nodes().enumerate() {
        let nr: Real = node.iter().map(|c| c * c).sum::<Real>().sqrt();
        if nr > r && f.values()[flat].norm() > 1e-12 * sup {
            return Err(DunklError::invalid(format!(
                "input is not supported in B(0, {r}): |f|={:.3e} at radius {nr:.3}",
                f.values()[flat].norm()
            )));
        }
    }
    let g = translate_neg(tr, f, x)?;
    let rs = grid.root_system();
    let mut leaked = 0.0;
    for (flat, (idx, node)) in grid.iter_nodes().enumerate() {
        if rs.orbit_distance(x, &node) > r + margin {
            leaked += g.values()[flat].norm() * grid.node_weight(&idx);
        }
    }
    Ok(leaked / f.l1_norm())
}

/// `sup_y ||tau_y f||_1 / ||f||_1` over a sample of translation points.
pub fn uniform_l1_translation_check(
    tr: &DunklTransform,
    f: &GridFunction,
    ys: &[Vec<Real>],
) -> Result<Real> {
    let base = f.l1_norm();
    let mut worst: Real = 0.0;
    for y in ys {
        let t = translate(tr, f, y)?;
        worst = worst.max(t.l1_norm() / base);
    }
    Ok(worst)
}

/// Outcome of the weighted-L1 convolution bound check.
#[derive(Clone, Debug)]
pub struct WeightedConvReport {
    /// `A = sum_n 2^{n(N+delta)} || phi Psi_n ||_inf`.
    pub ring_sup_sum: Real,
    /// `B = sum_j 2^{j(N/2+delta)} || f Psi_j ||_{L^1}`.
    pub ring_l1_sum: Real,
    /// max over the y-sample of the weighted integral divided by `A * B`.
    pub max_ratio: Real,
    /// tail integrals `int_{O(B(y,r))^c} |tau_{-y}(f*phi)| dw` indexed by r,
    /// paired with `r^{-delta'}` for the decay comparison.
    pub tails: Vec<(Real, Real, Real)>,
}

/// Verify the weighted bound
/// `int |tau_{-y}(f * phi)(x)| (1 + d(x, y))^delta dw(x) <= C A B`
/// over a sample of `y`, and measure the tail decay in `r`.
pub fn weighted_conv_l1_bound(
    tr: &DunklTransform,
    f: &GridFunction,
    phi: &GridFunction,
    delta: Real,
    delta_prime: Real,
    ys: &[Vec<Real>],
) -> Result<WeightedConvReport> {
    let grid = tr.grid();
    let rs = grid.root_system();
    let nn = rs.homogeneous_dim();
    let rings = cutoffs::rings_needed(grid.extent() * (grid.dim() as Real).sqrt()) + 1;
    // A and B from the ring partition
    let mut ring_sup_sum = 0.0;
    let mut ring_l1_sum = 0.0;
    for n in 0..rings {
        let mut sup: Real = 0.0;
        let mut l1 = 0.0;
        for (flat, (idx, node)) in grid.iter_nodes().enumerate() {
            let r: Real = node.iter().map(|c| c * c).sum::<Real>().sqrt();
            let ring = cutoffs::psi_n(n, r);
            if ring == 0.0 {
                continue;
            }
            sup = sup.max(phi.values()[flat].norm() * ring);
            l1 += f.values()[flat].norm() * ring * grid.node_weight(&idx);
        }
        let two_n = (2.0 as Real).powi(n as i32);
        ring_sup_sum += two_n.powf(nn + delta) * sup;
        ring_l1_sum += two_n.powf(nn / 2.0 + delta) * l1;
    }
    if !(ring_sup_sum.is_finite() && ring_l1_sum.is_finite()) {
        return Err(DunklError::invalid("ring sums diverge for this input pair"));
    }
    let conv = convolve(tr, f, phi)?;
    let mut max_ratio: Real = 0.0;
    let mut tails = Vec::new();
    for y in ys {
        // tau_{-y}(f*phi)(x) = tau_x (f*phi)(-y): evaluate the grid function
        // x -> tau_{-y}(f*phi)(x) directly
        let ty = translate(tr, &conv, &neg(y))?;
        let mut weighted = 0.0;
        for (flat, (idx, node)) in grid.iter_nodes().enumerate() {
            let d = rs.orbit_distance(&node, y);
            weighted += ty.values()[flat].norm() * (1.0 + d).powf(delta) * grid.node_weight(&idx);
        }
        max_ratio = max_ratio.max(weighted / (ring_sup_sum * ring_l1_sum));
        for &r in &[1.0 as Real, 2.0, 4.0] {
            let mut tail = 0.0;
            for (flat, (idx, node)) in grid.iter_nodes().enumerate() {
                if rs.orbit_distance(&node, y) > r {
                    tail += ty.values()[flat].norm() * grid.node_weight(&idx);
                }
            }
            tails.push((r, tail, r.powf(-delta_prime)));
        }
    }
    Ok(WeightedConvReport {
        ring_sup_sum,
        ring_l1_sum,
        max_ratio,
        tails,
    })
}

fn neg(x: &[Real]) -> Vec<Real> {
    x.iter().map(|c| -c).collect()
}

/// Fitted constant for `||tau_x phi(- .)||_2 <= C r^N ||phi||_inf / w(B(x,r))^{1/2}`
/// over radial bumps supported in `B(0, r)`.
pub fn translated_bump_l2_constant(
    tr: &DunklTransform,
    radii: &[Real],
    xs: &[Vec<Real>],
) -> Result<Real> {
    let grid = tr.grid();
    let rs = grid.root_system();
    let nn = rs.homogeneous_dim();
    let mut worst: Real = 0.0;
    for &r in radii {
        let phi = GridFunction::from_real_fn(grid.clone(), Side::Physical, |x| {
            let q: Real = x.iter().map(|c| c * c).sum::<Real>() / (r * r);
            (1.0 - q).max(0.0)
        });
        let sup = phi.linf_norm();
        for x in xs {
            let t = translate_neg(tr, &phi, x)?;
            let bound = r.powf(nn) * sup / rs.ball_measure(x, r)?.sqrt();
            worst = worst.max(t.l2_norm() / bound);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RootSystem;
    use crate::grid::WeightedGrid;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn setup(k: Real) -> DunklTransform {
        let rs = Arc::new(RootSystem::rank_one(k).unwrap());
        let grid = Arc::new(WeightedGrid::new(rs, 12.0, 257).unwrap());
        DunklTransform::new(grid).unwrap()
    }

    fn gaussian(tr: &DunklTransform) -> GridFunction {
        GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (-x[0] * x[0] / 2.0).exp()
        })
    }

    #[test]
    fn translation_by_zero_is_identity() {
        let tr = setup(1.0);
        let f = gaussian(&tr);
        let t = translate(&tr, &f, &[0.0]).unwrap();
        assert!((&t - &f).linf_norm() < 1e-8);
    }

    #[test]
    fn classical_translation_shifts() {
        let tr = setup(0.0);
        let f = gaussian(&tr);
        let t = translate(&tr, &f, &[1.5]).unwrap();
        let mut worst: Real = 0.0;
        for (flat, (_, y)) in tr.grid().iter_nodes().enumerate() {
            let expect = (-(1.5 + y[0]) * (1.5 + y[0]) / 2.0 as Real).exp();
            worst = worst.max((t.values()[flat] - Cplx::from(expect)).norm());
        }
        assert!(worst < 1e-8, "worst={worst:e}");
    }

    #[test]
    fn translation_preserves_mass() {
        let tr = setup(1.0);
        let f = gaussian(&tr);
        let t = translate(&tr, &f, &[1.2]).unwrap();
        let rel = (t.integral() - f.integral()).norm() / f.integral().norm();
        assert!(rel < 1e-6, "rel={rel:e}");
    }

    #[test]
    fn translation_l2_contraction() {
        let tr = setup(2.3);
        let f = gaussian(&tr);
        for &x in &[0.7 as Real, 2.0, -3.3] {
            let t = translate(&tr, &f, &[x]).unwrap();
            assert!(t.l2_norm() <= f.l2_norm() * (1.0 + 1e-8));
        }
    }

    #[test]
    fn symmetry_of_translation() {
        let tr = setup(1.0);
        let f = gaussian(&tr);
        // tau_x f(y) = tau_y f(x) on node pairs
        let x = 0.75;
        let y = -1.5;
        let tx = translate(&tr, &f, &[x]).unwrap();
        let ty = translate(&tr, &f, &[y]).unwrap();
        let iy = tr.grid().index_of_point(&[y]).unwrap();
        let ix = tr.grid().index_of_point(&[x]).unwrap();
        assert!((tx.value(&iy) - ty.value(&ix)).norm() < 1e-6);
    }

    #[test]
    fn skew_symmetry() {
        let tr = setup(0.5);
        let f = gaussian(&tr);
        let g = GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (-(x[0] - 0.4) * (x[0] - 0.4)).exp()
        });
        let x = [0.9];
        let lhs = translate(&tr, &f, &x)
            .unwrap()
            .zip(&g, |a, b| a * b)
            .unwrap()
            .integral();
        let rhs = f
            .zip(&translate(&tr, &g, &[-0.9]).unwrap(), |a, b| a * b)
            .unwrap()
            .integral();
        assert!((lhs - rhs).norm() < 1e-6 * lhs.norm().max(1.0));
    }

    #[test]
    fn radial_rule_is_probability() {
        for &k in &[0.5 as Real, 1.0, 2.3] {
            let rule = RadialTranslationRule::new(k);
            assert_relative_eq!(rule.total_mass(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn radial_route_reproduces_quadratic_translation() {
        // exact check against the polynomial formula
        // tau_x f(-y) = x^2 + y^2 - 2xy/(2k+1) for f(u) = u^2
        for &k in &[0.5 as Real, 1.0, 2.3] {
            let rule = RadialTranslationRule::new(k);
            let (x, y) = (1.3 as Real, -0.7 as Real);
            let v = translate_radial_at(&[rule], &|r: Real| r * r, &[x], &[y]);
            let expect = x * x + y * y - 2.0 * x * y / (2.0 * k + 1.0);
            assert_relative_eq!(v, expect, epsilon = 1e-10);
        }
    }

    #[test]
    fn radial_route_matches_spectral_route() {
        let tr = setup(1.0);
        let profile = |r: Real| (-r * r / 2.0).exp();
        let x = [1.1];
        let spectral = {
            let f = gaussian(&tr);
            translate_neg(&tr, &f, &x).unwrap()
        };
        let radial = translate_radial(&tr, &profile, &x).unwrap();
        let diff = (&spectral - &radial).linf_norm();
        assert!(diff < 1e-4, "diff={diff:e}");
    }

    #[test]
    fn radial_route_at_zero_is_identity() {
        let tr = setup(0.5);
        let profile = |r: Real| (-r * r).exp();
        let g = translate_radial(&tr, &profile, &[0.0]).unwrap();
        for (flat, (_, y)) in tr.grid().iter_nodes().enumerate() {
            let expect = (-y[0] * y[0] as Real).exp();
            assert!((g.values()[flat].re - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn radial_l1_isometry_for_nonnegative_profiles() {
        let tr = setup(2.3);
        let profile = |r: Real| (-r * r / 2.0).exp();
        let f = gaussian(&tr);
        let base = f.l1_norm();
        for &x in &[0.5 as Real, 1.7] {
            let t = translate_radial(&tr, &profile, &[x]).unwrap();
            assert_relative_eq!(t.l1_norm(), base, max_relative = 1e-6);
        }
    }

    #[test]
    fn argument_dominates_orbit_distance() {
        let tr = setup(1.0);
        let margin = radial_argument_dominates_orbit_distance(&tr, &[1.3], &[-2.0], 101);
        assert!(margin >= -1e-12, "margin={margin:e}");
    }

    #[test]
    fn convolution_commutes_and_matches_translation_route() {
        let tr = setup(1.0);
        let f = gaussian(&tr);
        let g = GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (-x[0] * x[0]).exp()
        });
        let fg = convolve(&tr, &f, &g).unwrap();
        let gf = convolve(&tr, &g, &f).unwrap();
        assert!((&fg - &gf).linf_norm() < 1e-10);
        for &x in &[0.0 as Real, 1.5] {
            let idx = tr.grid().index_of_point(&[x]).unwrap();
            let via_tau = convolve_at_via_translation(&tr, &f, &g, &[x]).unwrap();
            assert!(
                (fg.value(&idx) - via_tau).norm() < 1e-4,
                "x={x}: {:?} vs {:?}",
                fg.value(&idx),
                via_tau
            );
        }
    }

    #[test]
    fn classical_convolution_of_gaussians() {
        // k = 0: exp(-x^2/(2a)) * exp(-x^2/(2b)) has the closed form
        // sqrt(2 pi ab/(a+b)) exp(-x^2/(2(a+b))) under the classical
        // convolution; our normalization adds no extra factor since
        // c_0 F^{-1}[F f F g] is the classical convolution.
        let tr = setup(0.0);
        let (a, b) = (1.0 as Real, 0.5 as Real);
        let f = GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (-x[0] * x[0] / (2.0 * a)).exp()
        });
        let g = GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (-x[0] * x[0] / (2.0 * b)).exp()
        });
        let c = convolve(&tr, &f, &g).unwrap();
        let scale = (2.0 * std::f64::consts::PI * a * b / (a + b)).sqrt();
        let mut worst: Real = 0.0;
        for (flat, (_, x)) in tr.grid().iter_nodes().enumerate() {
            let expect = scale * (-x[0] * x[0] / (2.0 * (a + b))).exp();
            worst = worst.max((c.values()[flat] - Cplx::from(expect)).norm());
        }
        assert!(worst < 1e-7, "worst={worst:e}");
    }

    #[test]
    fn young_l2_bound() {
        let tr = setup(0.5);
        let f = gaussian(&tr);
        let g = GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            x[0] * (-x[0] * x[0]).exp()
        });
        let c = convolve(&tr, &f, &g).unwrap();
        assert!(c.l2_norm() <= f.l1_norm() * g.l2_norm() * (1.0 + 1e-6));
    }

    #[test]
    fn support_defect_zero_translation() {
        let tr = setup(1.0);
        let f = GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (1.0 - x[0] * x[0]).max(0.0)
        });
        let d = support_defect(&tr, &f, &[0.0], 1.0, 0.1).unwrap();
        assert!(d < 1e-6, "d={d:e}");
    }

    #[test]
    fn support_defect_radial() {
        let tr = setup(1.0);
        let f = GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (1.0 - x[0] * x[0]).max(0.0)
        });
        let d = support_defect(&tr, &f, &[2.0], 1.0, 0.1).unwrap();
        assert!(d < 1e-3, "d={d:e}");
    }

    #[test]
    fn support_precondition_enforced() {
        let tr = setup(1.0);
        let f = gaussian(&tr); // not compactly supported
        assert!(support_defect(&tr, &f, &[1.0], 1.0, 0.1).is_err());
    }

    #[test]
    fn uniform_l1_radial_is_contractive() {
        let tr = setup(1.0);
        let f = gaussian(&tr);
        let ys: Vec<Vec<Real>> = vec![vec![0.5], vec![1.5], vec![3.0]];
        let ratio = uniform_l1_translation_check(&tr, &f, &ys).unwrap();
        assert!(ratio <= 1.0 + 1e-6, "ratio={ratio}");
    }
}
