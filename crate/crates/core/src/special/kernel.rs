//! Rank-one Dunkl kernel and its product-system assembly.
//!
//! For the rank-one operator `T f = f' + k (f(x) - f(-x))/x` the kernel is
//! `E_k(x, y) = e^{xy} M(k; 2k+1; -2xy)`. The alternating series is unusable
//! as written, so both slices are evaluated through cancellation-free routes:
//!
//! * real arguments: Kummer's transformation turns the series into one with
//!   positive terms on either sign of `xy`;
//! * one imaginary slot: `E_k(-i s, x) = j_{k-1/2}(sx) - i sx/(2k+1) j_{k+1/2}(sx)`
//!   with `j` the normalized Bessel function.

use super::{bessel::normalized_bessel, kummer::kummer_m};
use crate::geometry::RootSystem;
use crate::{Cplx, DunklError, Real, Result};

/// `E_k(x, y)` for real scalar arguments; positive for all inputs.
pub fn rank1_kernel(k: Real, x: Real, y: Real) -> Real {
    let u = x * y;
    if k == 0.0 {
        return u.exp();
    }
    if u >= 0.0 {
        // e^{u} M(k; 2k+1; -2u) = e^{-u} M(k+1; 2k+1; 2u)
        (-u).exp() * kummer_m(k + 1.0, 2.0 * k + 1.0, 2.0 * u, 1e-16).expect("kummer")
    } else {
        u.exp() * kummer_m(k, 2.0 * k + 1.0, -2.0 * u, 1e-16).expect("kummer")
    }
}

/// `E_k(-i s, x)` for real `s, x`; modulus at most 1.
pub fn rank1_kernel_unit_imag(k: Real, s: Real, x: Real) -> Cplx {
    let t = s * x;
    if k == 0.0 {
        return Cplx::new(t.cos(), -t.sin());
    }
    let re = normalized_bessel(k - 0.5, t);
    let im = -t / (2.0 * k + 1.0) * normalized_bessel(k + 0.5, t);
    Cplx::new(re, im)
}

/// Evaluator for the Dunkl kernel of a product-type root system, where
/// `E(x, y) = prod_j E_{k_j}(x_j, y_j)`.
#[derive(Clone, Debug)]
pub struct KernelEvaluator {
    multiplicities: Vec<Real>,
}

impl KernelEvaluator {
    /// Rejects non-product systems: there is no closed evaluation route for
    /// them here.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let multiplicities = rs.product_multiplicities().ok_or_else(|| {
            DunklError::UnsupportedSystem(
                "kernel evaluation requires a product-type root system".into(),
            )
        })?;
        Ok(KernelEvaluator { multiplicities })
    }

    pub fn from_axis_multiplicities(ks: Vec<Real>) -> Self {
        KernelEvaluator { multiplicities: ks }
    }

    pub fn dim(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn multiplicity(&self, axis: usize) -> Real {
        self.multiplicities[axis]
    }

    /// `E(x, y)` for real vectors.
    pub fn eval_real(&self, x: &[Real], y: &[Real]) -> Real {
        self.multiplicities
            .iter()
            .zip(x.iter().zip(y))
            .map(|(&k, (&xa, &ya))| rank1_kernel(k, xa, ya))
            .product()
    }

    /// `E(-i xi, x)` for real vectors.
    pub fn eval_minus_i(&self, xi: &[Real], x: &[Real]) -> Cplx {
        let mut v = Cplx::new(1.0, 0.0);
        for (a, &k) in self.multiplicities.iter().enumerate() {
            v *= rank1_kernel_unit_imag(k, xi[a], x[a]);
        }
        v
    }

    /// `E(i xi, x) = conj(E(-i xi, x))` for real vectors.
    pub fn eval_plus_i(&self, xi: &[Real], x: &[Real]) -> Cplx {
        self.eval_minus_i(xi, x).conj()
    }
}
