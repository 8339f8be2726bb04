//! Smooth cutoffs and the dyadic partitions of unity built from them.
//!
//! Everything derives from one C-infinity step `eta(t)`: 1 for `t <= 1`,
//! 0 for `t >= 2`, with the standard `exp(-1/s)` join in between. The
//! Littlewood-Paley function `phi` and the spatial rings `Psi_n` telescope
//! exactly, so finite partial sums of the partitions are exact wherever the
//! uncovered scales vanish.

use crate::Real;

fn theta(s: Real) -> Real {
    if s <= 0.0 {
        0.0
    } else {
        (-1.0 / s).exp()
    }
}

/// C-infinity step: 1 on `(-inf, 1]`, 0 on `[2, inf)`.
pub fn eta(t: Real) -> Real {
    let a = theta(2.0 - t);
    let b = theta(t - 1.0);
    if a == 0.0 {
        return 0.0;
    }
    a / (a + b)
}

/// Radial annulus bump `phi(r) = eta(r) - eta(2r)`, supported in
/// `[1/2, 2]`, with `sum_l phi(2^-l r) = 1` for `r > 0` by telescoping.
pub fn phi(r: Real) -> Real {
    eta(r) - eta(2.0 * r)
}

/// `psi`: radial, 1 on `[1/2, 2]`, supported in `[1/4, 4]`.
pub fn psi(r: Real) -> Real {
    eta(r / 2.0) - eta(4.0 * r)
}

/// Spatial ring `Psi(r) = eta(2r) - eta(4r)`, supported in `[1/4, 1]`.
pub fn psi_ring(r: Real) -> Real {
    eta(2.0 * r) - eta(4.0 * r)
}

/// `Psi_0(r) = eta(2r)`: supported in `[0, 1)`; together
/// `Psi_0(r) + sum_{n>=1} Psi(2^-n r) = 1` for all `r >= 0`.
pub fn psi_ring_0(r: Real) -> Real {
    eta(2.0 * r)
}

/// `Psi_n(r)`: the n-th member of the spatial partition.
pub fn psi_n(n: usize, r: Real) -> Real {
    if n == 0 {
        psi_ring_0(r)
    } else {
        psi_ring(r / (1u64 << n.min(62)) as Real)
    }
}

/// Number of spatial rings with support meeting `[0, rmax]`:
/// ring n covers `2^n [1/4, 1]`.
pub fn rings_needed(rmax: Real) -> usize {
    let mut n = 1usize;
    while ((1u64 << n) as Real) * 0.25 <= rmax {
        n += 1;
        if n > 62 {
            break;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn eta_plateaus() {
        assert_eq!(eta(0.3), 1.0);
        assert_eq!(eta(1.0), 1.0);
        assert_eq!(eta(2.0), 0.0);
        assert_eq!(eta(5.0), 0.0);
        let v = eta(1.5);
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn phi_support_and_telescoping() {
        assert_eq!(phi(0.49), 0.0);
        assert_eq!(phi(2.01), 0.0);
        assert_relative_eq!(phi(1.0), 1.0); // eta(1)=1, eta(2)=0
        for &r in &[0.001 as Real, 0.7, 1.0, 3.3, 900.0] {
            let s: Real = (-25..=25).map(|l| phi(r / (2.0 as Real).powi(l))).sum();
            assert_relative_eq!(s, 1.0, epsilon = 1e-15);
        }
        // support separation: phi(r) phi(2^-l r) = 0 for |l| >= 2
        for &r in &[0.6 as Real, 1.0, 1.9] {
            assert_eq!(phi(r) * phi(r / 4.0), 0.0);
            assert_eq!(phi(r) * phi(r * 4.0), 0.0);
        }
    }

    #[test]
    fn psi_window() {
        assert_eq!(psi(0.2), 0.0);
        assert_eq!(psi(4.1), 0.0);
        for &r in &[0.5 as Real, 1.0, 2.0] {
            assert_relative_eq!(psi(r), 1.0);
        }
    }

    #[test]
    fn spatial_rings_partition() {
        for &r in &[0.0 as Real, 0.3, 1.0, 7.7, 100.0] {
            let s: Real = (0..40).map(|n| psi_n(n, r)).sum();
            assert_relative_eq!(s, 1.0, epsilon = 1e-15);
        }
    }
}
