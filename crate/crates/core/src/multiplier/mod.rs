//! Spectral multiplier operators `T_m f = F^{-1}(m F f)`: symbol DSL, the
//! Hormander norm, Littlewood-Paley pieces with their kernels, and the
//! quantitative kernel estimates behind the weak-(1,1) theory.

pub mod cutoffs;
pub mod dsl;
pub mod hormander;

pub use dsl::SymbolExpr;
pub use hormander::{hormander_norm, HormanderReport};

use crate::grid::{GridFunction, Side};
use crate::transform::DunklTransform;
use crate::translation::{translate, translate_neg};
use crate::{Cplx, DunklError, Real, Result};

/// A multiplier symbol with its declared smoothness.
#[derive(Clone, Debug)]
pub struct MultiplierSpec {
    pub expr: SymbolExpr,
    /// Sobolev smoothness `s` carried by the Hormander condition.
    pub smoothness: Real,
    pub radial: bool,
    pub source: String,
}

impl MultiplierSpec {
    pub fn parse(source: &str, smoothness: Real) -> Result<Self> {
        if smoothness <= 0.0 {
            return Err(DunklError::invalid("smoothness must be positive"));
        }
        let expr = SymbolExpr::parse(source)?;
        let radial = expr.is_radial();
        Ok(MultiplierSpec {
            expr,
            smoothness,
            radial,
            source: source.to_string(),
        })
    }

    pub fn eval(&self, xi: &[Real]) -> Cplx {
        self.expr.eval(xi)
    }

    pub fn sup_on_grid(&self, tr: &DunklTransform) -> Real {
        tr.grid()
            .iter_nodes()
            .map(|(_, xi)| self.eval(&xi).norm())
            .fold(0.0, Real::max)
    }
}

/// Apply a pointwise spectral symbol.
pub fn apply_symbol<F: FnMut(&[Real]) -> Cplx>(
    tr: &DunklTransform,
    f: &GridFunction,
    mut symbol: F,
) -> Result<GridFunction> {
    let spectral = tr.forward(f)?;
    let grid = tr.grid().clone();
    let mut values = Vec::with_capacity(grid.node_count());
    for (flat, (_, xi)) in grid.iter_nodes().enumerate() {
        values.push(spectral.values()[flat] * symbol(&xi));
    }
    tr.inverse(&GridFunction::from_values(grid, Side::Spectral, values)?)
}

/// `T_m f` for a parsed multiplier.
pub fn apply(tr: &DunklTransform, spec: &MultiplierSpec, f: &GridFunction) -> Result<GridFunction> {
    apply_symbol(tr, f, |xi| spec.eval(xi))
}

/// One Littlewood-Paley piece `m_l(xi) = m(2^l xi) phi(||xi||)` with its
/// Gaussian-divided companions and the inverse-transform kernel.
pub struct DyadicPiece {
    pub level: i32,
    /// `m_l` on the spectral grid.
    pub m_l: GridFunction,
    /// `m_{l,1} = m_l e^{+||xi||^2}` (so `m_l = m_{l,1} e^{-||xi||^2}`).
    pub m_l1: GridFunction,
    /// `m_{l,2} = m_l e^{+2||xi||^2}`.
    pub m_l2: GridFunction,
    /// `F^{-1} m_l` on the physical grid.
    pub inv_kernel: GridFunction,
}

pub fn build_piece(tr: &DunklTransform, spec: &MultiplierSpec, level: i32) -> Result<DyadicPiece> {
    let grid = tr.grid().clone();
    let two_l = (2.0 as Real).powi(level);
    let m_l = GridFunction::from_fn(grid.clone(), Side::Spectral, |xi| {
        let r = xi.iter().map(|c| c * c).sum::<Real>().sqrt();
        let scaled: Vec<Real> = xi.iter().map(|&c| two_l * c).collect();
        spec.eval(&scaled) * Cplx::from(cutoffs::phi(r))
    });
    let m_l1 = GridFunction::from_fn(grid.clone(), Side::Spectral, |xi| {
        let r2: Real = xi.iter().map(|c| c * c).sum();
        let r = r2.sqrt();
        let scaled: Vec<Real> = xi.iter().map(|&c| two_l * c).collect();
        spec.eval(&scaled) * Cplx::from(cutoffs::phi(r) * r2.exp())
    });
    let m_l2 = GridFunction::from_fn(grid, Side::Spectral, |xi| {
        let r2: Real = xi.iter().map(|c| c * c).sum();
        let r = r2.sqrt();
        let scaled: Vec<Real> = xi.iter().map(|&c| two_l * c).collect();
        spec.eval(&scaled) * Cplx::from(cutoffs::phi(r) * (2.0 * r2).exp())
    });
    let inv_kernel = tr.inverse(&m_l)?;
    Ok(DyadicPiece {
        level,
        m_l,
        m_l1,
        m_l2,
        inv_kernel,
    })
}

pub fn build_pieces(
    tr: &DunklTransform,
    spec: &MultiplierSpec,
    levels: std::ops::RangeInclusive<i32>,
) -> Result<Vec<DyadicPiece>> {
    levels.map(|l| build_piece(tr, spec, l)).collect()
}

impl DyadicPiece {
    /// Spectral mass of `m_l` outside the annulus `1/4 <= ||xi|| <= 4`
    /// (zero by construction).
    pub fn support_leak(&self) -> Real {
        let grid = self.m_l.grid();
        let mut leak: Real = 0.0;
        for (flat, (_, xi)) in grid.iter_nodes().enumerate() {
            let r = xi.iter().map(|c| c * c).sum::<Real>().sqrt();
            if !(0.25..=4.0).contains(&r) {
                leak = leak.max(self.m_l.values()[flat].norm());
            }
        }
        leak
    }

    /// Pointwise residual of `m_l = m_{l,1} e^{-||xi||^2}` on the grid.
    pub fn companion_residual(&self) -> Real {
        let grid = self.m_l.grid();
        let mut worst: Real = 0.0;
        for (flat, (_, xi)) in grid.iter_nodes().enumerate() {
            let r2: Real = xi.iter().map(|c| c * c).sum();
            let a = self.m_l.values()[flat];
            let b = self.m_l1.values()[flat] * Cplx::from((-r2).exp());
            let c = self.m_l2.values()[flat] * Cplx::from((-2.0 * r2).exp());
            worst = worst.max((a - b).norm()).max((a - c).norm());
        }
        worst
    }
}

/// `int |K_l(x, y)| (1 + d(x, y))^{dp} dw(x)` for `y = 2^{-l} y_base`.
///
/// Evaluated through the exact rescaling
/// `K_l(x, y) = 2^{N l} K~_l(2^l x, 2^l y)`, which turns the integral into
/// `int |K~_l(x', y_base)| (1 + 2^{-l} d(x', y_base))^{dp} dw(x')` on the
/// base grid, where the piece kernel lives at unit scale.
pub fn kernel_decay_integral(
    tr: &DunklTransform,
    piece: &DyadicPiece,
    delta_prime: Real,
    y_base: &[Real],
) -> Result<Real> {
    let grid = tr.grid();
    let rs = grid.root_system();
    let ktilde = translate(tr, &piece.inv_kernel, &neg(y_base))?;
    let shrink = (2.0 as Real).powi(-piece.level);
    let mut total = 0.0;
    for (flat, (idx, x)) in grid.iter_nodes().enumerate() {
        let d = rs.orbit_distance(&x, y_base);
        total += ktilde.values()[flat].norm()
            * (1.0 + shrink * d).powf(delta_prime)
            * grid.node_weight(&idx);
    }
    Ok(total)
}

/// `int |K_l(x, y) - K_l(x, y')| dw(x)` for base-side points `u = 2^l y`,
/// `u' = 2^l y'`; the bound `C M 2^l ||y - y'|| = C M ||u - u'||` is
/// scale-free on the base side.
pub fn kernel_hoelder_integral(
    tr: &DunklTransform,
    piece: &DyadicPiece,
    u: &[Real],
    u_prime: &[Real],
) -> Result<Real> {
    let a = translate(tr, &piece.inv_kernel, &neg(u))?;
    let b = translate(tr, &piece.inv_kernel, &neg(u_prime))?;
    Ok((&a - &b).l1_norm())
}

/// `int_{x not in O(Q*)} |K_l(x, u) - K_l(x, u')| dw(x)` for a base-side
/// cube `Q = prod [lo, hi]` and `u, u'` in `Q`; compare against
/// `M min(diam(Q)^{-dp}, diam(Q))`.
pub fn cube_outside_integral(
    tr: &DunklTransform,
    piece: &DyadicPiece,
    lo: &[Real],
    hi: &[Real],
    u: &[Real],
    u_prime: &[Real],
) -> Result<Real> {
    let grid = tr.grid();
    let rs = grid.root_system();
    let a = translate(tr, &piece.inv_kernel, &neg(u))?;
    let b = translate(tr, &piece.inv_kernel, &neg(u_prime))?;
    // enlarged cube: same center, doubled side
    let (elo, ehi): (Vec<Real>, Vec<Real>) = lo
        .iter()
        .zip(hi)
        .map(|(&l, &h)| {
            let c = 0.5 * (l + h);
            let s = h - l;
            (c - s, c + s)
        })
        .unzip();
    let in_orbit_of_star = |x: &[Real]| -> bool {
        rs.group().iter().any(|g| {
            let gx = g.apply(x);
            gx.iter()
                .zip(elo.iter().zip(&ehi))
                .all(|(&c, (&l, &h))| c >= l && c <= h)
        })
    };
    let mut total = 0.0;
    for (flat, (idx, x)) in grid.iter_nodes().enumerate() {
        if !in_orbit_of_star(&x) {
            total += (a.values()[flat] - b.values()[flat]).norm() * grid.node_weight(&idx);
        }
    }
    Ok(total)
}

/// Residual of the scaling identity `K_l(x, y) = 2^{N l} K~_l(2^l x, 2^l y)`
/// by two independent routes, relative to the kernel sup. Requires the
/// shifted annulus `2^l [1/2, 2]` to fit inside the grid.
pub fn scaling_identity_residual(
    tr: &DunklTransform,
    spec: &MultiplierSpec,
    piece: &DyadicPiece,
    y_base: &[Real],
) -> Result<Real> {
    let grid = tr.grid();
    let nn = grid.root_system().homogeneous_dim();
    let l = piece.level;
    let two_l = (2.0 as Real).powi(l);
    if 2.0 * two_l > grid.extent() {
        return Err(DunklError::RangeError(format!(
            "annulus for level {l} exceeds the spectral grid"
        )));
    }
    // direct route: kernel of m(.) phi(2^{-l} .)
    let direct_symbol = GridFunction::from_fn(grid.clone(), Side::Spectral, |xi| {
        let r = xi.iter().map(|c| c * c).sum::<Real>().sqrt();
        spec.eval(xi) * Cplx::from(cutoffs::phi(r / two_l))
    });
    let g = tr.inverse(&direct_symbol)?;
    let y: Vec<Real> = y_base.iter().map(|&c| c / two_l).collect();
    let direct = translate(tr, &g, &neg(&y))?; // x -> K_l(x, y)
    // scaled route: 2^{N l} K~_l(2^l x, y_base)
    let ktilde = translate(tr, &piece.inv_kernel, &neg(y_base))?;
    let mut worst: Real = 0.0;
    let mut sup: Real = 0.0;
    for (flat, (_, x)) in grid.iter_nodes().enumerate() {
        let scaled_x: Vec<Real> = x.iter().map(|&c| c * two_l).collect();
        if let Some(target) = grid.index_of_point(&scaled_x) {
            let lhs = direct.values()[flat];
            let rhs = ktilde.value(&target) * Cplx::from(two_l.powf(nn));
            worst = worst.max((lhs - rhs).norm());
            sup = sup.max(lhs.norm());
        }
    }
    Ok(worst / sup.max(1e-300))
}

/// Transference ratio: `|| F m_l (1+||x||)^beta ||_{L^2(dw)}` over the
/// classical `|| m_l_hat (1+||u||)^alpha ||_{L^2(du)}`.
pub fn insertion_ratio(
    tr: &DunklTransform,
    piece: &DyadicPiece,
    alpha: Real,
    beta: Real,
) -> Result<Real> {
    let grid = tr.grid();
    // numerator: Dunkl transform of m_l as a physical-side function
    let as_physical = piece.m_l.clone().with_side(Side::Physical);
    let fm = tr.forward(&as_physical)?;
    let mut num = 0.0;
    for (flat, (idx, x)) in grid.iter_nodes().enumerate() {
        let r = x.iter().map(|c| c * c).sum::<Real>().sqrt();
        num += fm.values()[flat].norm_sqr() * (1.0 + r).powf(2.0 * beta) * grid.node_weight(&idx);
    }
    let num = num.sqrt();
    // denominator: classical Fourier transform, Lebesgue measure
    let den = classical_weighted_l2(&piece.m_l, alpha);
    Ok(num / den)
}

/// `|| g_hat(u) (1 + ||u||)^alpha ||_{L^2(du)}` with the plain Fourier
/// transform on the grid box.
fn classical_weighted_l2(g: &GridFunction, alpha: Real) -> Real {
    let grid = g.grid();
    let m = grid.nodes_per_axis();
    let xs = grid.axis_nodes().to_vec();
    let hx = grid.spacing();
    let u_ext = 40.0;
    let u_m = 385usize;
    let hu = 2.0 * u_ext / (u_m - 1) as Real;
    let us: Vec<Real> = (0..u_m).map(|j| -u_ext + j as Real * hu).collect();
    let dft =
        |vals: &[Cplx], us: &[Real]| -> Vec<Cplx> { dft_line(vals, &xs, us, hx) };
    match grid.dim() {
        1 => {
            let ghat = dft(g.values(), &us);
            let mut total = 0.0;
            for (i, &u) in us.iter().enumerate() {
                let trap = if i == 0 || i == u_m - 1 { 0.5 } else { 1.0 };
                total += ghat[i].norm_sqr() * (1.0 + u.abs()).powf(2.0 * alpha) * trap * hu;
            }
            total.sqrt()
        }
        2 => {
            let mut stage: Vec<Cplx> = Vec::with_capacity(m * u_m);
            for row in 0..m {
                stage.extend(dft(&g.values()[row * m..(row + 1) * m], &us));
            }
            let mut total = 0.0;
            let mut col = vec![Cplx::new(0.0, 0.0); m];
            for c in 0..u_m {
                for row in 0..m {
                    col[row] = stage[row * u_m + c];
                }
                let out = dft_line(&col, &xs, &us, hx);
                for (r, v) in out.iter().enumerate() {
                    let ru = (us[r] * us[r] + us[c] * us[c]).sqrt();
                    let mut w = v.norm_sqr() * (1.0 + ru).powf(2.0 * alpha) * hu * hu;
                    if r == 0 || r == u_m - 1 {
                        w *= 0.5;
                    }
                    if c == 0 || c == u_m - 1 {
                        w *= 0.5;
                    }
                    total += w;
                }
            }
            total.sqrt()
        }
        d => panic!("classical transform implemented for dimensions 1 and 2, got {d}"),
    }
}

fn dft_line(values: &[Cplx], xs: &[Real], us: &[Real], h: Real) -> Vec<Cplx> {
    us.iter()
        .map(|&u| {
            let mut acc = Cplx::new(0.0, 0.0);
            for (j, &xj) in xs.iter().enumerate() {
                let phase = -u * xj;
                acc += values[j] * Cplx::new(phase.cos(), phase.sin());
            }
            acc * Cplx::from(h)
        })
        .collect()
}

/// `T_l f` for the level-`l` cutoff symbol `m(xi) phi(2^{-l} ||xi||)`.
pub fn apply_level(
    tr: &DunklTransform,
    spec: &MultiplierSpec,
    f: &GridFunction,
    level: i32,
) -> Result<GridFunction> {
    let two_l = (2.0 as Real).powi(level);
    apply_symbol(tr, f, |xi| {
        let r = xi.iter().map(|c| c * c).sum::<Real>().sqrt();
        spec.eval(xi) * Cplx::from(cutoffs::phi(r / two_l))
    })
}

/// Residual of `T_m f = sum_{|l| <= lmax} T_l f + lowpass remainder`.
pub fn piece_sum_residual(
    tr: &DunklTransform,
    spec: &MultiplierSpec,
    f: &GridFunction,
    lmax: i32,
) -> Result<Real> {
    let full = apply(tr, spec, f)?;
    let mut acc = GridFunction::zeros(tr.grid().clone(), Side::Physical);
    for l in -lmax..=lmax {
        let part = apply_level(tr, spec, f, l)?;
        acc = &acc + &part;
    }
    let eps = (2.0 as Real).powi(-(lmax + 1));
    let rem = apply_symbol(tr, f, |xi| {
        let r = xi.iter().map(|c| c * c).sum::<Real>().sqrt();
        spec.eval(xi) * Cplx::from(cutoffs::eta(r / eps))
    })?;
    acc = &acc + &rem;
    Ok((&acc - &full).linf_norm())
}

/// Agreement of the spectral route with the kernel route
/// `T_l f(x) = int K_l(x, y) f(y) dw(y)` at the sample points `xs`.
pub fn kernel_route_residual(
    tr: &DunklTransform,
    spec: &MultiplierSpec,
    f: &GridFunction,
    level: i32,
    xs: &[Vec<Real>],
) -> Result<Real> {
    let spectral = apply_level(tr, spec, f, level)?;
    let two_l = (2.0 as Real).powi(level);
    let symbol = GridFunction::from_fn(tr.grid().clone(), Side::Spectral, |xi| {
        let r = xi.iter().map(|c| c * c).sum::<Real>().sqrt();
        spec.eval(xi) * Cplx::from(cutoffs::phi(r / two_l))
    });
    let g = tr.inverse(&symbol)?;
    let mut worst: Real = 0.0;
    for x in xs {
        let kernel_at_x = translate_neg(tr, &g, x)?; // y -> K_l(x, y)
        let integral = kernel_at_x.zip(f, |a, b| a * b)?.integral();
        let idx = tr
            .grid()
            .index_of_point(x)
            .ok_or_else(|| DunklError::invalid("sample point off grid"))?;
        worst = worst.max((integral - spectral.value(&idx)).norm());
    }
    Ok(worst)
}

fn neg(x: &[Real]) -> Vec<Real> {
    x.iter().map(|c| -c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RootSystem;
    use crate::grid::WeightedGrid;
    use std::sync::Arc;

    fn setup(k: Real) -> DunklTransform {
        let rs = Arc::new(RootSystem::rank_one(k).unwrap());
        let grid = Arc::new(WeightedGrid::new(rs, 12.0, 257).unwrap());
        DunklTransform::new(grid).unwrap()
    }

    fn bump(tr: &DunklTransform) -> GridFunction {
        GridFunction::from_real_fn(tr.grid().clone(), Side::Physical, |x| {
            (-x[0] * x[0]).exp() * (1.0 + 0.5 * x[0])
        })
    }

    #[test]
    fn constant_symbol_scales() {
        let tr = setup(1.0);
        let spec = MultiplierSpec::parse("2.0", 4.0).unwrap();
        let f = bump(&tr);
        let g = apply(&tr, &spec, &f).unwrap();
        let expect = &f * Cplx::from(2.0);
        assert!((&g - &expect).linf_norm() < 1e-7);
    }

    #[test]
    fn heat_symbol_matches_heat_apply() {
        let tr = setup(0.5);
        let spec = MultiplierSpec::parse("heat(1.0)", 4.0).unwrap();
        let f = bump(&tr);
        let a = apply(&tr, &spec, &f).unwrap();
        let b = crate::heat::heat_apply(&tr, &f, 1.0).unwrap();
        assert!((&a - &b).linf_norm() < 1e-8);
    }

    #[test]
    fn l2_bound_by_sup_of_symbol() {
        let tr = setup(2.3);
        let spec = MultiplierSpec::parse("riesz(1) * highpass(0.5)", 4.0).unwrap();
        let f = bump(&tr);
        let g = apply(&tr, &spec, &f).unwrap();
        let sup = spec.sup_on_grid(&tr);
        assert!(g.l2_norm() <= sup * f.l2_norm() * (1.0 + 1e-8));
    }

    #[test]
    fn pieces_have_clean_supports_and_companions() {
        let tr = setup(1.0);
        let spec = MultiplierSpec::parse("norm_pow_i(1.0)", 4.0).unwrap();
        for piece in build_pieces(&tr, &spec, -2..=2).unwrap() {
            assert_eq!(piece.support_leak(), 0.0);
            assert!(piece.companion_residual() < 1e-9);
        }
    }

    #[test]
    fn trivial_symbol_pieces_equal_phi() {
        let tr = setup(1.0);
        let spec = MultiplierSpec::parse("one", 4.0).unwrap();
        let p0 = build_piece(&tr, &spec, 0).unwrap();
        let p3 = build_piece(&tr, &spec, 3).unwrap();
        assert!((&p0.m_l - &p3.m_l).linf_norm() < 1e-15);
    }

    #[test]
    fn piece_sum_reconstructs() {
        let tr = setup(1.0);
        let spec = MultiplierSpec::parse("norm_pow_i(0.7)", 4.0).unwrap();
        let f = bump(&tr);
        let resid = piece_sum_residual(&tr, &spec, &f, 6).unwrap();
        assert!(resid < 1e-10, "resid={resid:e}");
    }

    #[test]
    fn scaling_identity_two_routes() {
        let tr = setup(1.0);
        let spec = MultiplierSpec::parse("norm_pow_i(1.0)", 4.0).unwrap();
        for l in [-2, -1, 1, 2] {
            let piece = build_piece(&tr, &spec, l).unwrap();
            let resid = scaling_identity_residual(&tr, &spec, &piece, &[0.75]).unwrap();
            assert!(resid < 1e-4, "l={l}: resid={resid:e}");
        }
    }

    #[test]
    fn kernel_route_agrees() {
        let tr = setup(0.5);
        let spec = MultiplierSpec::parse("one", 4.0).unwrap();
        let f = bump(&tr);
        let resid =
            kernel_route_residual(&tr, &spec, &f, 0, &[vec![0.0], vec![1.5]]).unwrap();
        assert!(resid < 1e-4, "resid={resid:e}");
    }

    #[test]
    fn decay_integral_slope() {
        // with delta' = 0.5 the weighted integral grows like 2^{-dp l} toward
        // negative levels; measure the log2 slope over l <= 0
        let tr = setup(1.0);
        let spec = MultiplierSpec::parse("one", 4.0).unwrap();
        let dp = 0.5;
        let mut logs = Vec::new();
        for l in -3..=0 {
            let piece = build_piece(&tr, &spec, l).unwrap();
            let v = kernel_decay_integral(&tr, &piece, dp, &[0.5]).unwrap();
            logs.push((l as Real, v.log2()));
        }
        let slope = fit_slope(&logs);
        assert!(
            (slope + dp).abs() < 0.2,
            "slope={slope}, expected about {}",
            -dp
        );
    }

    fn fit_slope(pts: &[(Real, Real)]) -> Real {
        let n = pts.len() as Real;
        let sx: Real = pts.iter().map(|p| p.0).sum();
        let sy: Real = pts.iter().map(|p| p.1).sum();
        let sxx: Real = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: Real = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }
}
