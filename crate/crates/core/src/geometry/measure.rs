//! Measures of balls and boxes under `dw`.
//!
//! Product systems get fast closed-form/reduced routes; general systems fall
//! back to panel quadrature in polar coordinates (N = 2) refined at the
//! reflection hyperplanes.

use super::rootsystem::RootSystem;
use crate::quad::{gauss, integrate_panels, singular_panels};
use crate::{DunklError, Real, Result};

/// Antiderivative of the one-axis density `2^k |u|^{2k}`:
/// `S(u) = 2^k sign(u) |u|^{2k+1} / (2k+1)`.
pub fn axis_antiderivative(k: Real, u: Real) -> Real {
    (2.0 as Real).powf(k) * u.signum() * u.abs().powf(2.0 * k + 1.0) / (2.0 * k + 1.0)
}

/// Exact mass of `[a, b]` on one axis with multiplicity `k`.
pub fn axis_interval_mass(k: Real, a: Real, b: Real) -> Real {
    axis_antiderivative(k, b) - axis_antiderivative(k, a)
}

impl RootSystem {
    /// `w(B(center, r))` for the Euclidean ball.
    ///
    /// Rank one is closed form, product systems reduce across axes, anything
    /// else integrates in polar coordinates (N = 2 only).
    pub fn ball_measure(&self, center: &[Real], r: Real) -> Result<Real> {
        if r <= 0.0 {
            return Err(DunklError::invalid("ball radius must be positive"));
        }
        if let Some(ks) = self.product_multiplicities() {
            return Ok(ball_measure_product(&ks, center, r));
        }
        match self.dim() {
            2 => Ok(ball_measure_polar(self, center, r)),
            d => Err(DunklError::UnsupportedSystem(format!(
                "ball measure for non-product systems is implemented only in dimension 2, got {d}"
            ))),
        }
    }

    /// `w` of the axis-aligned box `prod [lo_a, hi_a]`.
    pub fn box_measure(&self, lo: &[Real], hi: &[Real]) -> Result<Real> {
        if let Some(ks) = self.product_multiplicities() {
            let mut m = 1.0;
            for a in 0..self.dim() {
                m *= axis_interval_mass(ks[a], lo[a], hi[a]);
            }
            return Ok(m);
        }
        match self.dim() {
            2 => Ok(box_measure_2d(self, lo, hi, 0)),
            d => Err(DunklError::UnsupportedSystem(format!(
                "box measure for non-product systems is implemented only in dimension 2, got {d}"
            ))),
        }
    }
}

fn ball_measure_product(ks: &[Real], center: &[Real], r: Real) -> Real {
    match ks.len() {
        1 => axis_interval_mass(ks[0], center[0] - r, center[0] + r),
        _ => {
            // integrate over the first axis; the section of the ball is a
            // lower-dimensional ball of radius sqrt(r^2 - s^2)
            let (k0, rest) = (ks[0], &ks[1..]);
            let c0 = center[0];
            let mut breaks = vec![];
            if k0 > 0.0 && c0.abs() < r {
                breaks.push(0.0);
            }
            // kinks where an inner axis' hyperplane meets the sphere
            for (j, &kj) in rest.iter().enumerate() {
                let cj = center[1 + j];
                if kj > 0.0 && cj.abs() < r {
                    let off = (r * r - cj * cj).sqrt();
                    breaks.push(c0 - off);
                    breaks.push(c0 + off);
                }
            }
            let panels = singular_panels(c0 - r, c0 + r, &breaks, 40, true);
            integrate_panels(&panels, 12, |s| {
                let sec = (r * r - (s - c0) * (s - c0)).max(0.0).sqrt();
                if sec == 0.0 {
                    return 0.0;
                }
                let mut inner = 1.0;
                for (j, &kj) in rest.iter().enumerate() {
                    let cj = center[1 + j];
                    inner *= axis_interval_mass(kj, cj - sec, cj + sec);
                }
                // rest.len() == 1 gives the interval mass directly; deeper
                // recursion (N = 3) would nest here
                if rest.len() > 1 {
                    let sub_center = &center[1..];
                    inner = ball_measure_product(rest, sub_center, sec);
                }
                (2.0 as Real).powf(k0) * s.abs().powf(2.0 * k0) * inner
            })
        }
    }
}

/// Polar-coordinate route for general planar systems: panels in the angle
/// split where hyperplanes cross the disk, panels in the radius split at the
/// hyperplane crossing and refined toward the center.
fn ball_measure_polar(rs: &RootSystem, center: &[Real], r: Real) -> Real {
    use std::f64::consts::PI;
    let mut angle_cuts: Vec<Real> = vec![0.0, 2.0 * PI];
    for (alpha, k) in rs.roots() {
        if *k == 0.0 {
            continue;
        }
        let theta_a = alpha[1].atan2(alpha[0]);
        let ca = crate::linalg::dot(center, alpha);
        let na = crate::linalg::norm(alpha);
        // angles where the hyperplane <c + rho w, a> = 0 crosses rho = r
        let q = -ca / (r * na);
        if q.abs() <= 1.0 {
            let d = q.acos();
            for t in [theta_a + d, theta_a - d, theta_a + PI / 2.0, theta_a - PI / 2.0] {
                angle_cuts.push(t.rem_euclid(2.0 * PI));
            }
        }
    }
    angle_cuts.sort_by(Real::total_cmp);
    angle_cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    let on_wall = rs
        .roots()
        .iter()
        .any(|(a, k)| *k > 0.0 && crate::linalg::dot(center, a).abs() < 1e-12 * r);
    let mut total = 0.0;
    for w in angle_cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let sub = 8usize.max(((t1 - t0) / 0.05) as usize);
        for s in 0..sub {
            let a = t0 + (t1 - t0) * s as Real / sub as Real;
            let b = t0 + (t1 - t0) * (s + 1) as Real / sub as Real;
            total += gauss(a, b, 8, |theta| {
                let w_dir = [theta.cos(), theta.sin()];
                // radial kinks where a hyperplane crosses this ray
                let mut breaks = Vec::new();
                for (alpha, k) in rs.roots() {
                    if *k == 0.0 {
                        continue;
                    }
                    let denom = crate::linalg::dot(&w_dir, alpha);
                    if denom.abs() > 1e-14 {
                        let rho = -crate::linalg::dot(center, alpha) / denom;
                        if rho > 0.0 && rho < r {
                            breaks.push(rho);
                        }
                    }
                }
                if on_wall {
                    breaks.push(0.0);
                }
                let panels = singular_panels(0.0, r, &breaks, 38, false);
                integrate_panels(&panels, 10, |rho| {
                    let x = [center[0] + rho * w_dir[0], center[1] + rho * w_dir[1]];
                    rho * rs.weight_density(&x)
                })
            });
        }
    }
    total
}

/// Recursive bisection for planar boxes cut by non-axis-aligned hyperplanes.
fn box_measure_2d(rs: &RootSystem, lo: &[Real], hi: &[Real], depth: usize) -> Real {
    let corners = [
        [lo[0], lo[1]],
        [lo[0], hi[1]],
        [hi[0], lo[1]],
        [hi[0], hi[1]],
    ];
    let mut cut = false;
    for (alpha, k) in rs.roots() {
        if *k == 0.0 {
            continue;
        }
        let signs: Vec<Real> = corners
            .iter()
            .map(|c| crate::linalg::dot(c, alpha))
            .collect();
        let all_pos = signs.iter().all(|&s| s > 1e-14);
        let all_neg = signs.iter().all(|&s| s < -1e-14);
        if !all_pos && !all_neg {
            cut = true;
            break;
        }
    }
    if !cut || depth >= 22 {
        // analytic in the interior of the box (or negligibly small)
        let mut total = 0.0;
        let panels_x = singular_panels(lo[0], hi[0], &[], 0, false);
        for &(ax, bx) in &panels_x {
            total += gauss(ax, bx, 12, |x| {
                gauss(lo[1], hi[1], 12, |y| rs.weight_density(&[x, y]))
            });
        }
        return total;
    }
    let (dx, dy) = (hi[0] - lo[0], hi[1] - lo[1]);
    if dx >= dy {
        let mid = 0.5 * (lo[0] + hi[0]);
        box_measure_2d(rs, lo, &[mid, hi[1]], depth + 1)
            + box_measure_2d(rs, &[mid, lo[1]], hi, depth + 1)
    } else {
        let mid = 0.5 * (lo[1] + hi[1]);
        box_measure_2d(rs, lo, &[hi[0], mid], depth + 1)
            + box_measure_2d(rs, &[lo[0], mid], hi, depth + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RootSystemBuilder;
    use approx::assert_relative_eq;

    #[test]
    fn lebesgue_interval() {
        let rs = RootSystem::lebesgue(1).unwrap();
        assert_relative_eq!(rs.ball_measure(&[0.0], 3.0).unwrap(), 6.0, epsilon = 1e-12);
    }

    #[test]
    fn rank_one_centered_ball_closed_form() {
        // w(B(0,r)) = 2^{k+1} r^{2k+1} / (2k+1)
        for &k in &[0.5, 1.0, 2.3] {
            let rs = RootSystem::rank_one(k).unwrap();
            for &r in &[0.5 as Real, 1.0, 2.7] {
                let expect = (2.0 as Real).powf(k + 1.0) * r.powf(2.0 * k + 1.0) / (2.0 * k + 1.0);
                assert_relative_eq!(
                    rs.ball_measure(&[0.0], r).unwrap(),
                    expect,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn homogeneity_of_ball_measure() {
        let rs = RootSystem::product(&[1.0, 0.5]).unwrap();
        let nn = rs.homogeneous_dim();
        let x = [0.7, -0.3];
        let r = 0.9;
        let w1 = rs.ball_measure(&x, r).unwrap();
        for &t in &[2.0, 0.5, 3.7] {
            let tx = [t * x[0], t * x[1]];
            let w2 = rs.ball_measure(&tx, t * r).unwrap();
            assert_relative_eq!(w2, t.powf(nn) * w1, max_relative = 1e-7);
        }
    }

    #[test]
    fn doubling_at_origin_is_exact_power() {
        let rs = RootSystem::rank_one(1.0).unwrap();
        let w1 = rs.ball_measure(&[0.0], 1.0).unwrap();
        let w2 = rs.ball_measure(&[0.0], 2.0).unwrap();
        assert_relative_eq!(w2 / w1, (2.0 as Real).powf(rs.homogeneous_dim()), max_relative = 1e-12);
    }

    #[test]
    fn product_ball_vs_polar_route() {
        // same planar system evaluated as a product and as a generic system
        let rs = RootSystem::product(&[1.0, 0.5]).unwrap();
        let generic = ball_measure_polar(&rs, &[0.4, 0.2], 1.3);
        let fast = rs.ball_measure(&[0.4, 0.2], 1.3).unwrap();
        assert_relative_eq!(generic, fast, max_relative = 1e-7);
    }

    #[test]
    fn box_measure_product_exact() {
        let rs = RootSystem::product(&[1.0, 0.5]).unwrap();
        let m = rs.box_measure(&[-1.0, 0.0], &[2.0, 1.0]).unwrap();
        let mx = axis_interval_mass(1.0, -1.0, 2.0);
        let my = axis_interval_mass(0.5, 0.0, 1.0);
        assert_relative_eq!(m, mx * my, epsilon = 1e-13);
    }

    #[test]
    fn box_measure_generic_matches_product_route() {
        let rs = RootSystem::product(&[1.0, 0.5]).unwrap();
        let exact = rs.box_measure(&[-0.8, -0.5], &[1.1, 0.9]).unwrap();
        let generic = box_measure_2d(&rs, &[-0.8, -0.5], &[1.1, 0.9], 0);
        assert_relative_eq!(generic, exact, max_relative = 1e-7);
    }

    #[test]
    fn diagonal_roots_box_measure() {
        let rs = RootSystemBuilder::new(2)
            .root(&[1.0, -1.0], 0.6)
            .root(&[1.0, 1.0], 0.6)
            .build()
            .unwrap();
        // oracle: tensor quadrature with per-axis panels is wrong here
        // (diagonal kinks), so compare two independent subdivisions
        let a = box_measure_2d(&rs, &[-1.0, -1.0], &[1.0, 1.0], 0);
        let b = box_measure_2d(&rs, &[-1.0, -1.0], &[0.3, 1.0], 0)
            + box_measure_2d(&rs, &[0.3, -1.0], &[1.0, 1.0], 0);
        assert_relative_eq!(a, b, max_relative = 1e-6);
    }

    #[test]
    fn invalid_radius() {
        let rs = RootSystem::rank_one(1.0).unwrap();
        assert!(rs.ball_measure(&[0.0], 0.0).is_err());
    }
}
