//! Independent reference routes used by the test suites. Nothing here shares
//! code with the series/Bessel evaluation it is used to check.

use crate::Real;

/// Rank-one Dunkl kernel by direct integration of the defining system.
///
/// `E_k(., y)` solves `f'(x) + k (f(x) - f(-x))/x = y f(x)`, `f(0) = 1`.
/// Writing `u(x) = f(x)`, `v(x) = f(-x)` gives the regular-at-origin system
///
/// ```text
/// u' =  y u - k (u - v)/x
/// v' = -y v + k (u - v)/x
/// ```
///
/// started from a power-series expansion near 0 and advanced with classic
/// RK4 on a fixed fine step.
pub fn rank1_kernel_ode(k: Real, x: Real, y: Real) -> Real {
    if x == 0.0 {
        return 1.0;
    }
    let target = x.abs();
    let y_eff = if x >= 0.0 { y } else { -y }; // E(x,y) = E(-x,-y)
    // series start: f = 1 + a1 t + a2 t^2 + ... with
    // a1 = y/(2k+1), recurrence below from matching powers of t.
    let t0: Real = 1e-3;
    let (mut u, mut v) = series_start(k, y_eff, t0);
    let steps = ((target - t0) / 2.5e-4).ceil().max(1.0) as usize;
    let h = (target - t0) / steps as Real;
    let mut t = t0;
    for _ in 0..steps {
        let (du1, dv1) = rhs(k, y_eff, t, u, v);
        let (du2, dv2) = rhs(k, y_eff, t + h / 2.0, u + h / 2.0 * du1, v + h / 2.0 * dv1);
        let (du3, dv3) = rhs(k, y_eff, t + h / 2.0, u + h / 2.0 * du2, v + h / 2.0 * dv2);
        let (du4, dv4) = rhs(k, y_eff, t + h, u + h * du3, v + h * dv3);
        u += h / 6.0 * (du1 + 2.0 * du2 + 2.0 * du3 + du4);
        v += h / 6.0 * (dv1 + 2.0 * dv2 + 2.0 * dv3 + dv4);
        t += h;
    }
    u
}

fn rhs(k: Real, y: Real, t: Real, u: Real, v: Real) -> (Real, Real) {
    let d = k * (u - v) / t;
    (y * u - d, -y * v + d)
}

/// Power-series start for (u, v) at small t.
///
/// With f(t) = sum a_n t^n, the defining equation forces
/// `n a_n + k (1 - (-1)^n) a_n = y a_{n-1}` for n >= 1, i.e.
/// odd n: a_n = y a_{n-1} / (n + 2k); even n: a_n = y a_{n-1} / n.
fn series_start(k: Real, y: Real, t: Real) -> (Real, Real) {
    let mut a = 1.0_f64;
    let mut u = 1.0_f64;
    let mut v = 1.0_f64;
    let mut tp = 1.0_f64;
    for n in 1..=24 {
        let nf = n as Real;
        a *= y / if n % 2 == 1 { nf + 2.0 * k } else { nf };
        tp *= t;
        u += a * tp;
        v += a * if n % 2 == 1 { -tp } else { tp };
    }
    (u, v)
}
