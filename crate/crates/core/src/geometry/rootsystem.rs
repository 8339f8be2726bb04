//! Root system construction and the generated reflection group.

use super::reflect;
use crate::linalg::{self, Matrix};
use crate::{DunklError, Real, Result};

const NORM_TOL: Real = 1e-12;
const MATCH_TOL: Real = 1e-9;

/// A normalized reduced root system with a nonnegative multiplicity function,
/// its generated reflection group, and derived constants.
///
/// Roots are stored with both signs and satisfy `||a||^2 = 2`. All data is
/// immutable after construction.
#[derive(Clone, Debug)]
pub struct RootSystem {
    dim: usize,
    roots: Vec<(Vec<Real>, Real)>,
    group: Vec<Matrix>,
    homogeneous_dim: Real,
    gaussian_mass: Real,
    /// Per-axis multiplicities when the system is a product of rank-one
    /// factors along the coordinate axes (axes without a root carry 0).
    product: Option<Vec<Real>>,
}

/// Builder: supply root directions once each (negatives are added
/// automatically), with their multiplicities.
pub struct RootSystemBuilder {
    dim: usize,
    directions: Vec<(Vec<Real>, Real)>,
    auto_normalize: bool,
    group_cap: usize,
}

impl RootSystemBuilder {
    pub fn new(dim: usize) -> Self {
        RootSystemBuilder {
            dim,
            directions: Vec::new(),
            auto_normalize: true,
            group_cap: 1024,
        }
    }

    pub fn root(mut self, direction: &[Real], multiplicity: Real) -> Self {
        self.directions.push((direction.to_vec(), multiplicity));
        self
    }

    /// When disabled, roots whose squared norm is not 2 are rejected instead
    /// of rescaled.
    pub fn auto_normalize(mut self, yes: bool) -> Self {
        self.auto_normalize = yes;
        self
    }

    pub fn group_cap(mut self, cap: usize) -> Self {
        self.group_cap = cap;
        self
    }

    pub fn build(self) -> Result<RootSystem> {
        let dim = self.dim;
        if dim == 0 {
            return Err(DunklError::invalid("dimension must be positive"));
        }
        let mut roots: Vec<(Vec<Real>, Real)> = Vec::new();
        for (dir, k) in &self.directions {
            if dir.len() != dim {
                return Err(DunklError::invalid("root dimension mismatch"));
            }
            if *k < 0.0 {
                return Err(DunklError::invalid("multiplicity must be nonnegative"));
            }
            let n2 = linalg::norm_sq(dir);
            if n2 == 0.0 {
                return Err(DunklError::invalid("zero root vector"));
            }
            let alpha = if (n2 - 2.0).abs() < NORM_TOL {
                dir.clone()
            } else if self.auto_normalize {
                linalg::scale(dir, (2.0 / n2).sqrt())
            } else {
                return Err(DunklError::invalid(format!(
                    "root has squared norm {n2}, expected 2"
                )));
            };
            for cand in [alpha.clone(), linalg::scale(&alpha, -1.0)] {
                match find_root(&roots, &cand) {
                    Some(i) => {
                        if (roots[i].1 - *k).abs() > MATCH_TOL {
                            return Err(DunklError::invalid(
                                "conflicting multiplicities for the same root",
                            ));
                        }
                    }
                    None => roots.push((cand, *k)),
                }
            }
        }
        // root-system axiom: sigma_a(R) = R with G-invariant multiplicity
        for (a, _) in &roots {
            for (b, kb) in &roots {
                let r = reflect(a, b)?;
                let i = find_root(&roots, &r).ok_or_else(|| {
                    DunklError::invalid("set is not closed under its own reflections")
                })?;
                if (roots[i].1 - *kb).abs() > MATCH_TOL {
                    return Err(DunklError::invalid(
                        "multiplicity is not invariant under the reflection group",
                    ));
                }
            }
        }
        let group = generate_group_from_roots(dim, &roots, self.group_cap)?;
        let sum_k: Real = roots.iter().map(|(_, k)| *k).sum();
        let product = detect_product(dim, &roots);
        let mut rs = RootSystem {
            dim,
            roots,
            group,
            homogeneous_dim: dim as Real + sum_k,
            gaussian_mass: 0.0,
            product,
        };
        rs.gaussian_mass = crate::special::gaussian_constant(&rs)?;
        Ok(rs)
    }
}

fn find_root(roots: &[(Vec<Real>, Real)], v: &[Real]) -> Option<usize> {
    roots
        .iter()
        .position(|(r, _)| linalg::dist(r, v) < MATCH_TOL)
}

fn detect_product(dim: usize, roots: &[(Vec<Real>, Real)]) -> Option<Vec<Real>> {
    let mut ks = vec![0.0; dim];
    for (r, k) in roots {
        let mut axis = None;
        for (a, &c) in r.iter().enumerate() {
            if c.abs() > MATCH_TOL {
                if axis.is_some() {
                    return None; // not aligned with a coordinate axis
                }
                axis = Some(a);
            }
        }
        let a = axis?;
        if ks[a] != 0.0 && (ks[a] - k).abs() > MATCH_TOL {
            return None;
        }
        ks[a] = *k;
    }
    Some(ks)
}

/// Closure of the generating reflections under composition, identity
/// included, in a deterministic canonical order.
pub fn generate_group_from_roots(
    dim: usize,
    roots: &[(Vec<Real>, Real)],
    cap: usize,
) -> Result<Vec<Matrix>> {
    let mut gens: Vec<Matrix> = Vec::new();
    for (a, _) in roots {
        let mut m = Matrix::identity(dim);
        for j in 0..dim {
            let mut e = vec![0.0; dim];
            e[j] = 1.0;
            let col = reflect(a, &e)?;
            for i in 0..dim {
                m.set(i, j, col[i]);
            }
        }
        if !gens.iter().any(|g| g.max_abs_diff(&m) < MATCH_TOL) {
            gens.push(m);
        }
    }
    let mut group = vec![Matrix::identity(dim)];
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &gens {
                let prod = g.mul(f);
                if !group.iter().any(|m| m.max_abs_diff(&prod) < MATCH_TOL)
                    && !next.iter().any(|m: &Matrix| m.max_abs_diff(&prod) < MATCH_TOL)
                {
                    next.push(prod);
                }
            }
        }
        group.extend(next.iter().cloned());
        if group.len() > cap {
            return Err(DunklError::GroupTooLarge { cap });
        }
        frontier = next;
    }
    // canonical order: lexicographic on entries rounded to 1e-9
    group.sort_by(|a, b| {
        let ka: Vec<i64> = a.data.iter().map(|v| (v * 1e9).round() as i64).collect();
        let kb: Vec<i64> = b.data.iter().map(|v| (v * 1e9).round() as i64).collect();
        ka.cmp(&kb)
    });
    Ok(group)
}

impl RootSystem {
    /// Rank-one system on the line: roots +/- sqrt(2) with multiplicity `k`.
    pub fn rank_one(k: Real) -> Result<RootSystem> {
        if k == 0.0 {
            return RootSystemBuilder::new(1).build();
        }
        RootSystemBuilder::new(1).root(&[2.0_f64.sqrt()], k).build()
    }

    /// Product system along the coordinate axes of R^N; `ks[a] = 0` leaves
    /// axis `a` without a root.
    pub fn product(ks: &[Real]) -> Result<RootSystem> {
        let mut b = RootSystemBuilder::new(ks.len());
        for (a, &k) in ks.iter().enumerate() {
            if k > 0.0 {
                let mut dir = vec![0.0; ks.len()];
                dir[a] = 2.0_f64.sqrt();
                b = b.root(&dir, k);
            }
        }
        b.build()
    }

    /// Trivial system (no roots): Lebesgue measure on R^N.
    pub fn lebesgue(dim: usize) -> Result<RootSystem> {
        RootSystemBuilder::new(dim).build()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All roots, both signs, with multiplicities.
    pub fn roots(&self) -> &[(Vec<Real>, Real)] {
        &self.roots
    }

    pub fn group(&self) -> &[Matrix] {
        &self.group
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    /// Homogeneous dimension `N + sum_{a in R} k(a)` (sum over both signs).
    pub fn homogeneous_dim(&self) -> Real {
        self.homogeneous_dim
    }

    /// Gaussian mass `c_k` of the measure.
    pub fn gaussian_mass(&self) -> Real {
        self.gaussian_mass
    }

    /// Per-axis multiplicities for product-type systems, `None` otherwise.
    pub fn product_multiplicities(&self) -> Option<Vec<Real>> {
        self.product.clone()
    }

    pub fn is_product(&self) -> bool {
        self.product.is_some()
    }

    /// Weight density `prod_{a in R} |<x, a>|^{k(a)}`, product over all roots.
    pub fn weight_density(&self, x: &[Real]) -> Real {
        let mut w = 1.0;
        for (a, k) in &self.roots {
            if *k == 0.0 {
                continue;
            }
            w *= linalg::dot(x, a).abs().powf(*k);
        }
        w
    }

    /// Distance between the orbits of `x` and `y`:
    /// `min_{g in G} ||g(x) - y||`.
    pub fn orbit_distance(&self, x: &[Real], y: &[Real]) -> Real {
        self.group
            .iter()
            .map(|g| linalg::dist(&g.apply(x), y))
            .fold(Real::INFINITY, Real::min)
    }

    /// Whether `y` lies in the orbit of the closed ball `B(x, r)`.
    pub fn orbit_ball_contains(&self, x: &[Real], r: Real, y: &[Real]) -> bool {
        self.orbit_distance(x, y) <= r
    }

    /// The orbit of `x` (deduplicated within the matching tolerance).
    pub fn orbit(&self, x: &[Real]) -> Vec<Vec<Real>> {
        let mut pts: Vec<Vec<Real>> = Vec::new();
        for g in &self.group {
            let p = g.apply(x);
            if !pts.iter().any(|q| linalg::dist(q, &p) < MATCH_TOL) {
                pts.push(p);
            }
        }
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rank_one_group_is_z2() {
        let rs = RootSystem::rank_one(1.0).unwrap();
        assert_eq!(rs.group_order(), 2);
        assert_relative_eq!(rs.homogeneous_dim(), 3.0, epsilon = 1e-14);
    }

    #[test]
    fn empty_system_group_is_identity() {
        let rs = RootSystem::lebesgue(2).unwrap();
        assert_eq!(rs.group_order(), 1);
        assert_relative_eq!(rs.homogeneous_dim(), 2.0);
    }

    #[test]
    fn product_group_order_four() {
        let rs = RootSystem::product(&[1.0, 0.5]).unwrap();
        assert_eq!(rs.group_order(), 4);
        assert_relative_eq!(rs.homogeneous_dim(), 2.0 + 2.0 + 1.0, epsilon = 1e-14);
        assert!(rs.is_product());
    }

    #[test]
    fn b2_style_swap_roots_are_not_product() {
        // roots (1,-1) and (1,1) have squared norm 2 already
        let rs = RootSystemBuilder::new(2)
            .root(&[1.0, -1.0], 0.7)
            .root(&[1.0, 1.0], 0.7)
            .build()
            .unwrap();
        assert!(!rs.is_product());
        assert_eq!(rs.group_order(), 4);
    }

    #[test]
    fn invalid_norm_rejected_without_autonormalize() {
        let err = RootSystemBuilder::new(1)
            .root(&[1.0], 1.0)
            .auto_normalize(false)
            .build();
        assert!(err.is_err());
    }

    #[test]
    fn density_rank_one_closed_form() {
        // both signs contribute: density = 2^k |x|^{2k}
        let rs = RootSystem::rank_one(0.5).unwrap();
        for &x in &[0.3, 1.7, -2.2] {
            let expect = 2.0_f64.powf(0.5) * (x as Real).abs().powf(1.0);
            assert_relative_eq!(rs.weight_density(&[x]), expect, epsilon = 1e-13);
        }
    }

    #[test]
    fn density_invariant_under_group() {
        let rs = RootSystemBuilder::new(2)
            .root(&[1.0, -1.0], 0.7)
            .root(&[1.0, 1.0], 0.3)
            .build()
            .unwrap();
        let x = vec![0.83, -1.21];
        let w = rs.weight_density(&x);
        for g in rs.group() {
            assert_relative_eq!(rs.weight_density(&g.apply(&x)), w, epsilon = 1e-12);
        }
    }

    #[test]
    fn orbit_distance_examples() {
        let rs = RootSystem::rank_one(1.0).unwrap();
        assert_relative_eq!(rs.orbit_distance(&[3.0], &[-3.0]), 0.0, epsilon = 1e-14);
        assert_relative_eq!(rs.orbit_distance(&[3.0], &[1.0]), 2.0, epsilon = 1e-14);
        assert!(rs.orbit_ball_contains(&[3.0], 1.0, &[-3.5]));
        assert!(!rs.orbit_ball_contains(&[3.0], 0.4, &[-3.5]));
    }

    #[test]
    fn group_closure_and_inverses() {
        let rs = RootSystem::product(&[1.0, 0.5]).unwrap();
        let g = rs.group();
        for a in g {
            // inverse of an orthogonal matrix is its transpose; must be in G
            let inv = a.transpose();
            assert!(g.iter().any(|m| m.max_abs_diff(&inv) < 1e-9));
            for b in g {
                let prod = a.mul(b);
                assert!(g.iter().any(|m| m.max_abs_diff(&prod) < 1e-9));
            }
        }
    }
}
