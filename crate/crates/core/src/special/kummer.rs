//! Confluent hypergeometric series `M(a; b; z) = sum (a)_n / (b)_n z^n / n!`
//! for nonnegative arguments, where every term is positive and the sum is
//! free of cancellation.

use crate::{DunklError, Real, Result};

/// Kummer's function `M(a; b; z)` for `a >= 0`, `b > 0`, `z >= 0`.
///
/// Summed with Kahan compensation; terminates when the term drops below
/// `tol` times the partial sum.
pub fn kummer_m(a: Real, b: Real, z: Real, tol: Real) -> Result<Real> {
    debug_assert!(a >= 0.0 && b > 0.0 && z >= 0.0);
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    let mut term = 1.0_f64;
    let max_terms = 3000;
    for n in 0..max_terms {
        let nf = n as Real;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        // Kahan step
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < tol * sum.abs() {
            return Ok(sum);
        }
        if !term.is_finite() {
            break;
        }
    }
    Err(DunklError::PrecisionFailure(format!(
        "Kummer series did not converge for a={a}, b={b}, z={z}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reduces_to_exponential() {
        // M(a; a; z) = e^z
        for &z in &[0.0, 0.5, 3.0, 20.0] {
            let v = kummer_m(1.5, 1.5, z, 1e-16).unwrap();
            assert_relative_eq!(v, z.exp(), epsilon = 1e-13 * z.exp());
        }
    }

    #[test]
    fn known_value() {
        // M(1; 2; z) = (e^z - 1)/z
        let z = 2.0;
        let v = kummer_m(1.0, 2.0, z, 1e-16).unwrap();
        assert_relative_eq!(v, (z.exp() - 1.0) / z, epsilon = 1e-13);
    }
}
