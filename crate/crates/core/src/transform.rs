//! Discretized Dunkl transform on a self-dual weighted grid.
//!
//! `F f(xi) = c_k^{-1} int E(-i xi, x) f(x) dw(x)` and its inverse with
//! `E(+i xi, x)`. For product systems the kernel factorizes, so the dense
//! transform is applied axis by axis; the per-axis matrix is built once per
//! grid.

use crate::grid::{GridFunction, Side, WeightedGrid};
use crate::special::{axis_gaussian_constant, rank1_kernel_unit_imag, KernelEvaluator};
use crate::{Cplx, DunklError, Real, Result};
use std::sync::Arc;

/// Boundary decay demanded of inputs before trusting the truncated quadrature.
pub const BOUNDARY_DECAY_TOL: Real = 1e-8;

pub struct DunklTransform {
    grid: Arc<WeightedGrid>,
    kernel_eval: KernelEvaluator,
    /// Per-axis `E(-i xi_i, x_j)`, row-major `i * m + j` (symmetric in i, j).
    axis_kernel: Vec<Vec<Cplx>>,
    /// Per-axis `c_{k_a}`.
    axis_mass: Vec<Real>,
}

impl DunklTransform {
    pub fn new(grid: Arc<WeightedGrid>) -> Result<Self> {
        let rs = grid.root_system();
        let kernel_eval = KernelEvaluator::new(rs)?;
        let m = grid.nodes_per_axis();
        let nodes = grid.axis_nodes();
        let mut axis_kernel = Vec::with_capacity(grid.dim());
        let mut axis_mass = Vec::with_capacity(grid.dim());
        for a in 0..grid.dim() {
            let k = grid.axis_multiplicity(a);
            let mut mat = vec![Cplx::new(0.0, 0.0); m * m];
            for i in 0..m {
                for j in 0..=i {
                    let v = rank1_kernel_unit_imag(k, nodes[i], nodes[j]);
                    mat[i * m + j] = v;
                    mat[j * m + i] = v;
                }
            }
            axis_kernel.push(mat);
            axis_mass.push(axis_gaussian_constant(k));
        }
        Ok(DunklTransform {
            grid,
            kernel_eval,
            axis_kernel,
            axis_mass,
        })
    }

    pub fn grid(&self) -> &Arc<WeightedGrid> {
        &self.grid
    }

    pub fn kernel_evaluator(&self) -> &KernelEvaluator {
        &self.kernel_eval
    }

    fn check_grid(&self, f: &GridFunction) -> Result<()> {
        if !Arc::ptr_eq(f.grid(), &self.grid) {
            return Err(DunklError::InvalidGrid(
                "grid function does not live on the transform grid".into(),
            ));
        }
        Ok(())
    }

    /// Contract one axis with the kernel matrix (optionally conjugated),
    /// folding in the axis quadrature weights and `c_k^{-1}`.
    fn apply_axis(&self, values: &[Cplx], axis: usize, conj: bool) -> Vec<Cplx> {
        let m = self.grid.nodes_per_axis();
        let n = self.grid.dim();
        let mat = &self.axis_kernel[axis];
        let w = self.grid.axis_weights(axis);
        let scale = 1.0 / self.axis_mass[axis];
        // row-major layout: axis `a` has stride m^{n-1-a}
        let stride = m.pow((n - 1 - axis) as u32);
        let blocks = values.len() / (m * stride);
        let mut out = vec![Cplx::new(0.0, 0.0); values.len()];
        let mut weighted = vec![Cplx::new(0.0, 0.0); m];
        for b in 0..blocks {
            let base = b * m * stride;
            for s in 0..stride {
                for j in 0..m {
                    weighted[j] = values[base + j * stride + s] * Cplx::from(w[j] * scale);
                }
                for i in 0..m {
                    let row = &mat[i * m..(i + 1) * m];
                    let mut acc = Cplx::new(0.0, 0.0);
                    if conj {
                        for j in 0..m {
                            acc += row[j].conj() * weighted[j];
                        }
                    } else {
                        for j in 0..m {
                            acc += row[j] * weighted[j];
                        }
                    }
                    out[base + i * stride + s] = acc;
                }
            }
        }
        out
    }

    fn transform_values(&self, values: &[Cplx], conj: bool) -> Vec<Cplx> {
        let mut v = values.to_vec();
        for a in 0..self.grid.dim() {
            v = self.apply_axis(&v, a, conj);
        }
        v
    }

    /// Forward transform `F f` (physical -> spectral).
    pub fn forward(&self, f: &GridFunction) -> Result<GridFunction> {
        self.check_grid(f)?;
        GridFunction::from_values(
            self.grid.clone(),
            Side::Spectral,
            self.transform_values(f.values(), false),
        )
    }

    /// Inverse transform `F^{-1} g` (spectral -> physical).
    pub fn inverse(&self, g: &GridFunction) -> Result<GridFunction> {
        self.check_grid(g)?;
        GridFunction::from_values(
            self.grid.clone(),
            Side::Physical,
            self.transform_values(g.values(), true),
        )
    }

    /// `| ||F f||_2 - ||f||_2 | / ||f||_2`. Requires boundary decay.
    pub fn plancherel_defect(&self, f: &GridFunction) -> Result<Real> {
        self.check_grid(f)?;
        if f.boundary_decay() > BOUNDARY_DECAY_TOL {
            return Err(DunklError::TruncationError(format!(
                "boundary mass {:.3e} too large for a trustworthy defect",
                f.boundary_decay()
            )));
        }
        let nf = f.l2_norm();
        let ng = self.forward(f)?.l2_norm();
        Ok((ng - nf).abs() / nf)
    }

    /// Residual of the dilation rule `F(f_lambda)(xi) = F f(lambda xi)` where
    /// `f_lambda(x) = lambda^{-N} f(x / lambda)`, checked on the nodes whose
    /// scaled image is again a node. `f` is supplied as a closure so the
    /// dilated samples are exact.
    pub fn scaling_check<F: Fn(&[Real]) -> Cplx>(&self, f: F, lambda: Real) -> Result<Real> {
        if lambda <= 0.0 {
            return Err(DunklError::invalid("lambda must be positive"));
        }
        let nn = self.grid.root_system().homogeneous_dim();
        let scale = lambda.powf(-nn);
        let base = GridFunction::from_fn(self.grid.clone(), Side::Physical, |x| f(x));
        let dilated = GridFunction::from_fn(self.grid.clone(), Side::Physical, |x| {
            let y: Vec<Real> = x.iter().map(|&c| c / lambda).collect();
            f(&y) * Cplx::from(scale)
        });
        let tf = self.forward(&base)?;
        let tfd = self.forward(&dilated)?;
        let mut worst: Real = 0.0;
        for (idx, xi) in self.grid.iter_nodes() {
            let scaled: Vec<Real> = xi.iter().map(|&c| c * lambda).collect();
            if let Some(target) = self.grid.index_of_point(&scaled) {
                let resid = (tfd.value(&idx) - tf.value(&target)).norm();
                worst = worst.max(resid);
            }
        }
        Ok(worst)
    }
}

/// Largest spread of values over node shells of equal Euclidean norm; zero
/// for radial functions.
pub fn radial_asymmetry(f: &GridFunction) -> Real {
    use std::collections::HashMap;
    let grid = f.grid();
    let mut shells: HashMap<i64, Cplx> = HashMap::new();
    let mut worst: Real = 0.0;
    for (flat, (_, node)) in grid.iter_nodes().enumerate() {
        let r2 = node.iter().map(|c| c * c).sum::<Real>();
        let key = (r2 * 1e9).round() as i64;
        let v = f.values()[flat];
        match shells.get(&key) {
            None => {
                shells.insert(key, v);
            }
            Some(rep) => {
                worst = worst.max((v - rep).norm());
            }
        }
    }
    worst
}
