//! The Hormander condition: `M = sup_{t>0} || psi(.) m(t .) ||_{W_2^s}` with
//! the classical (Lebesgue) Sobolev norm
//! `|| g ||_{W_2^s} = || g_hat(u) (1 + ||u||)^s ||_{L^2(du)}`.
//!
//! The localized symbol is supported in the annulus `1/4 <= ||xi|| <= 4`, so
//! a trapezoid discrete Fourier transform on a uniform box is spectrally
//! accurate; the Sobolev integral is truncated to a frequency box chosen
//! large enough that the smooth-symbol tail is negligible, and a refinement
//! doubling flags symbols whose norm diverges.

use super::cutoffs::psi;
use super::dsl::SymbolExpr;
use crate::{Cplx, Real};

#[derive(Clone, Debug)]
pub struct HormanderReport {
    /// the measured sup over dilations
    pub norm: Real,
    /// dilation at which the sup is attained
    pub maximizing_t: Real,
    /// same norm with doubled frequency box and resolution
    pub refined_norm: Real,
    /// refined / base ratio; far above 1 signals divergence
    pub refinement_ratio: Real,
}

impl HormanderReport {
    pub fn looks_divergent(&self) -> bool {
        self.refinement_ratio > 1.5
    }
}

/// Classical 1-D DFT of samples on a uniform grid, evaluated on an arbitrary
/// frequency grid: `g_hat(u) = sum_j g(x_j) exp(-i u x_j) h`.
fn dft_axis(values: &[Cplx], x: &[Real], us: &[Real], h: Real) -> Vec<Cplx> {
    us.iter()
        .map(|&u| {
            let mut acc = Cplx::new(0.0, 0.0);
            for (j, &xj) in x.iter().enumerate() {
                let phase = -u * xj;
                acc += values[j] * Cplx::new(phase.cos(), phase.sin());
            }
            acc * Cplx::from(h)
        })
        .collect()
}

fn uniform(extent: Real, m: usize) -> Vec<Real> {
    let h = 2.0 * extent / (m - 1) as Real;
    (0..m).map(|j| -extent + j as Real * h).collect()
}

/// Sobolev norm of `xi -> psi(||xi||) m(t xi)` in dimension `dim`.
fn localized_sobolev(
    expr: &SymbolExpr,
    dim: usize,
    s: Real,
    t: Real,
    x_m: usize,
    u_extent: Real,
    u_m: usize,
) -> Real {
    let x_extent = 4.25;
    let xs = uniform(x_extent, x_m);
    let hx = 2.0 * x_extent / (x_m - 1) as Real;
    let us = uniform(u_extent, u_m);
    let hu = 2.0 * u_extent / (u_m - 1) as Real;
    match dim {
        1 => {
            let g: Vec<Cplx> = xs
                .iter()
                .map(|&x| Cplx::from(psi(x.abs())) * expr.eval(&[t * x]))
                .collect();
            let ghat = dft_axis(&g, &xs, &us, hx);
            let mut total = 0.0;
            for (i, &u) in us.iter().enumerate() {
                let w = (1.0 + u.abs()).powf(2.0 * s) * ghat[i].norm_sqr();
                let trap = if i == 0 || i == us.len() - 1 { 0.5 } else { 1.0 };
                total += w * trap * hu;
            }
            total.sqrt()
        }
        2 => {
            // separable DFT: transform rows then columns
            let mut g: Vec<Cplx> = Vec::with_capacity(x_m * x_m);
            for &x0 in &xs {
                for &x1 in &xs {
                    let r = (x0 * x0 + x1 * x1).sqrt();
                    g.push(Cplx::from(psi(r)) * expr.eval(&[t * x0, t * x1]));
                }
            }
            // axis 1 (inner): rows of length x_m -> u_m
            let mut stage: Vec<Cplx> = Vec::with_capacity(x_m * u_m);
            for row in 0..x_m {
                let slice = &g[row * x_m..(row + 1) * x_m];
                stage.extend(dft_axis(slice, &xs, &us, hx));
            }
            // axis 0 (outer): columns of length x_m -> u_m
            let mut ghat = vec![Cplx::new(0.0, 0.0); u_m * u_m];
            let mut col = vec![Cplx::new(0.0, 0.0); x_m];
            for c in 0..u_m {
                for row in 0..x_m {
                    col[row] = stage[row * u_m + c];
                }
                let out = dft_axis(&col, &xs, &us, hx);
                for (r, v) in out.into_iter().enumerate() {
                    ghat[r * u_m + c] = v;
                }
            }
            let mut total = 0.0;
            for (i0, &u0) in us.iter().enumerate() {
                for (i1, &u1) in us.iter().enumerate() {
                    let r = (u0 * u0 + u1 * u1).sqrt();
                    let mut w = (1.0 + r).powf(2.0 * s) * ghat[i0 * u_m + i1].norm_sqr() * hu * hu;
                    if i0 == 0 || i0 == u_m - 1 {
                        w *= 0.5;
                    }
                    if i1 == 0 || i1 == u_m - 1 {
                        w *= 0.5;
                    }
                    total += w;
                }
            }
            total.sqrt()
        }
        d => panic!("Hormander norm implemented for dimensions 1 and 2, got {d}"),
    }
}

/// Sup over the dilation grid `t = 2^{j/granularity}`, `|j| <= range`.
pub fn hormander_norm(
    expr: &SymbolExpr,
    dim: usize,
    s: Real,
    granularity: usize,
    range: i32,
) -> HormanderReport {
    let (x_m, u_ext, u_m) = match dim {
        1 => (385, 80.0, 769),
        _ => (97, 30.0, 145),
    };
    let mut norm: Real = 0.0;
    let mut tmax = 1.0;
    for j in -range..=range {
        let t = (2.0 as Real).powf(j as Real / granularity as Real);
        let v = localized_sobolev(expr, dim, s, t, x_m, u_ext, u_m);
        if v > norm {
            norm = v;
            tmax = t;
        }
    }
    // refinement at the maximizing dilation only (doubled box and density)
    let refined = localized_sobolev(expr, dim, s, tmax, 2 * x_m - 1, 2.0 * u_ext, 2 * u_m - 1);
    HormanderReport {
        norm,
        maximizing_t: tmax,
        refined_norm: refined,
        refinement_ratio: refined / norm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_symbol_norm_is_psi_norm() {
        let one = SymbolExpr::parse("one").unwrap();
        let r = hormander_norm(&one, 1, 2.0, 2, 8);
        // t-independent: the sup equals the value at any t
        let v = localized_sobolev(&one, 1, 2.0, 1.0, 385, 80.0, 769);
        assert!((r.norm - v).abs() < 1e-10 * v);
        assert!(!r.looks_divergent(), "ratio={}", r.refinement_ratio);
    }

    #[test]
    fn imaginary_power_is_hormander() {
        let m = SymbolExpr::parse("norm_pow_i(1.0)").unwrap();
        let r = hormander_norm(&m, 1, 3.1, 2, 12);
        assert!(r.norm.is_finite());
        assert!(!r.looks_divergent(), "ratio={}", r.refinement_ratio);
    }

    #[test]
    fn halfspace_indicator_diverges() {
        let m = SymbolExpr::parse("halfspace(1)").unwrap();
        let r = hormander_norm(&m, 1, 1.0, 1, 2);
        assert!(
            r.looks_divergent(),
            "expected divergence, ratio={}",
            r.refinement_ratio
        );
    }
}
