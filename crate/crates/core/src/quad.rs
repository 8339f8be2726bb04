//! One-dimensional quadrature building blocks: Gauss-Legendre rules, panel
//! decompositions refined geometrically toward integrable singularities, an
//! adaptive driver, and the Riemann zeta values used by the cusp-corrected
//! uniform-grid weights.

use crate::{Real, Result};
use std::sync::OnceLock;

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<Real>,
    pub weights: Vec<Real>,
}

impl GaussRule {
    /// Newton iteration on the Legendre polynomial from Chebyshev guesses.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as Real + 0.75) / (n as Real + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_and_deriv(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_and_deriv(n, x);
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussRule { nodes, weights }
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(Real) -> Real>(&self, a: Real, b: Real, mut f: F) -> Real {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x);
        }
        s * h
    }
}

fn legendre_and_deriv(n: usize, x: Real) -> (Real, Real) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as Real;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as Real * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn cached_rule(n: usize) -> &'static GaussRule {
    static RULES: OnceLock<Vec<GaussRule>> = OnceLock::new();
    let rules = RULES.get_or_init(|| (1..=24).map(GaussRule::new).collect());
    &rules[n - 1]
}

/// Gauss-Legendre on a single interval.
pub fn gauss<F: FnMut(Real) -> Real>(a: Real, b: Real, n: usize, f: F) -> Real {
    cached_rule(n).integrate(a, b, f)
}

/// Panel list for an integrand that is analytic away from `breaks`.
///
/// Splits `[a, b]` at every interior break point, then refines panels
/// geometrically (ratio 1/2, `levels` levels) toward each break and toward
/// both endpoints when `refine_ends` is set. Geometric refinement makes
/// fixed-order Gauss panels converge against |t|^s-type integrable
/// singularities sitting at the break points.
pub fn singular_panels(
    a: Real,
    b: Real,
    breaks: &[Real],
    levels: usize,
    refine_ends: bool,
) -> Vec<(Real, Real)> {
    let mut cuts: Vec<Real> = vec![a, b];
    for &p in breaks {
        if p > a && p < b {
            cuts.push(p);
        }
    }
    cuts.sort_by(Real::total_cmp);
    cuts.dedup();
    let mut panels = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let refine_lo = breaks.iter().any(|&p| p == lo) || (refine_ends && lo == a);
        let refine_hi = breaks.iter().any(|&p| p == hi) || (refine_ends && hi == b);
        subdivide(lo, hi, refine_lo, refine_hi, levels, &mut panels);
    }
    panels
}

fn subdivide(
    lo: Real,
    hi: Real,
    refine_lo: bool,
    refine_hi: bool,
    levels: usize,
    out: &mut Vec<(Real, Real)>,
) {
    match (refine_lo, refine_hi) {
        (false, false) => out.push((lo, hi)),
        (true, false) => {
            // geometric panels shrinking toward lo; the innermost sliver is
            // kept as its own panel (its mass is negligible for integrable
            // singularities)
            let mut edge = hi;
            let mut len = (hi - lo) / 2.0;
            for _ in 0..levels {
                let l = lo + len;
                out.push((l, edge));
                edge = l;
                len /= 2.0;
            }
            out.push((lo, edge));
        }
        (false, true) => {
            let mut tmp = Vec::new();
            subdivide(-hi, -lo, true, false, levels, &mut tmp);
            out.extend(tmp.into_iter().map(|(l, r)| (-r, -l)));
        }
        (true, true) => {
            let mid = 0.5 * (lo + hi);
            subdivide(lo, mid, true, false, levels, out);
            subdivide(mid, hi, false, true, levels, out);
        }
    }
}

/// Integrate with a panel list and fixed Gauss order.
pub fn integrate_panels<F: FnMut(Real) -> Real>(
    panels: &[(Real, Real)],
    order: usize,
    mut f: F,
) -> Real {
    let mut s = 0.0;
    for &(a, b) in panels {
        s += gauss(a, b, order, &mut f);
    }
    s
}

/// Adaptive Gauss quadrature by bisection; error estimated from the
/// difference of 8- and 16-point rules on each panel.
pub fn adaptive<F: FnMut(Real) -> Real>(a: Real, b: Real, tol: Real, f: &mut F) -> Result<Real> {
    fn rec<F: FnMut(Real) -> Real>(
        a: Real,
        b: Real,
        tol: Real,
        f: &mut F,
        depth: usize,
    ) -> Result<Real> {
        let coarse = gauss(a, b, 8, &mut *f);
        let fine = gauss(a, b, 16, &mut *f);
        if (fine - coarse).abs() <= tol || depth >= 48 {
            if depth >= 48 && (fine - coarse).abs() > tol.max(1e-13 * fine.abs()) {
                return Err(crate::DunklError::PrecisionFailure(format!(
                    "adaptive quadrature stalled on [{a}, {b}]"
                )));
            }
            return Ok(fine);
        }
        let m = 0.5 * (a + b);
        Ok(rec(a, m, tol / 2.0, f, depth + 1)? + rec(m, b, tol / 2.0, f, depth + 1)?)
    }
    rec(a, b, tol, f, 0)
}

/// Riemann zeta for real arguments `s > 1`: truncated Dirichlet series plus
/// an Euler-Maclaurin tail.
pub fn zeta_gt1(s: Real) -> Real {
    assert!(s > 1.0);
    let n = 40usize;
    let nf = n as Real;
    let mut sum = 0.0;
    for j in 1..n {
        sum += (j as Real).powf(-s);
    }
    sum += nf.powf(1.0 - s) / (s - 1.0);
    sum += 0.5 * nf.powf(-s);
    sum += s * nf.powf(-s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * nf.powf(-s - 3.0) / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * nf.powf(-s - 5.0) / 30240.0;
    sum
}

/// Riemann zeta at a negative real argument via the reflection formula
/// `zeta(-s) = 2 (2 pi)^(-s-1) cos(pi (s+1) / 2) Gamma(s+1) zeta(s+1)`.
pub fn zeta_neg(s: Real) -> Real {
    assert!(s > 0.0);
    use statrs::function::gamma::gamma;
    let pi = std::f64::consts::PI;
    2.0 * (2.0 * pi).powf(-s - 1.0) * (pi * (s + 1.0) / 2.0).cos() * gamma(s + 1.0) * zeta_gt1(s + 1.0)
}
