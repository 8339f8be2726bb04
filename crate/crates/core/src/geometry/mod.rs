//! Root systems, the reflection group they generate, and the weighted
//! geometry of `(R^N, ||.||, dw)`: weight density, ball and box measures,
//! orbit distances, and dyadic cubes.

mod dyadic;
mod measure;
mod rootsystem;

pub use dyadic::DyadicCube;
pub use measure::{axis_antiderivative, axis_interval_mass};
pub use rootsystem::{RootSystem, RootSystemBuilder};

use crate::{linalg, Real};

/// Reflection of `x` in the hyperplane orthogonal to `alpha`:
/// `x - 2 <x, a> / ||a||^2 a`.
pub fn reflect(alpha: &[Real], x: &[Real]) -> crate::Result<Vec<Real>> {
    let n2 = linalg::norm_sq(alpha);
    if n2 == 0.0 {
        return Err(crate::DunklError::invalid("zero root vector"));
    }
    let c = 2.0 * linalg::dot(x, alpha) / n2;
    Ok(x.iter().zip(alpha).map(|(xi, ai)| xi - c * ai).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reflect_root_to_negative() {
        let a = vec![2.0_f64.sqrt(), 0.0];
        let r = reflect(&a, &a).unwrap();
        assert_relative_eq!(r[0], -a[0], epsilon = 1e-14);
        assert_relative_eq!(r[1], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn reflect_fixes_orthogonal_vectors() {
        let a = vec![2.0_f64.sqrt(), 0.0];
        let x = vec![0.0, 3.5];
        let r = reflect(&a, &x).unwrap();
        assert_relative_eq!(r[0], 0.0, epsilon = 1e-14);
        assert_relative_eq!(r[1], 3.5, epsilon = 1e-14);
    }

    #[test]
    fn rank_one_sign_flip() {
        let r = reflect(&[2.0_f64.sqrt()], &[3.0]).unwrap();
        assert_relative_eq!(r[0], -3.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_root_rejected() {
        assert!(reflect(&[0.0, 0.0], &[1.0, 1.0]).is_err());
    }
}
