//! Real-variable machinery on `(R^N, ||.||, dw)`: Calderon-Zygmund
//! decompositions over dyadic cubes, empirical weak-(1,1) constants,
//! (1,infinity)-atoms, maximal operators, and Riesz transforms.

mod atoms;
mod cz;
mod maximal;
mod riesz;

pub use atoms::{atom_image_l1, build_atom, Atom};
pub use cz::{cz_decompose, CzDecomposition, SelectedCube};
pub use maximal::{
    conv_max, domination_check, hl_max, hl_max_interval_exact, kernel_envelope_fit,
    nontangential_max, MaximalConfig,
};
pub use riesz::{low_frequency_mass, riesz_apply};

use crate::grid::GridFunction;
use crate::{Real, Result};

/// Empirical weak-(1,1) constant of an operator over a function family and a
/// level grid: `sup λ w({ |T f| > λ }) / ||f||_1`.
pub fn weak11_constant<T>(
    mut op: T,
    family: &[GridFunction],
    lambda_grid: &[Real],
) -> Result<Real>
where
    T: FnMut(&GridFunction) -> Result<GridFunction>,
{
    let mut worst: Real = 0.0;
    for f in family {
        let tf = op(f)?;
        let l1 = f.l1_norm();
        let sup = tf.linf_norm();
        for &rel in lambda_grid {
            let lambda = rel * sup;
            if lambda <= 0.0 {
                continue;
            }
            let mut mass = 0.0;
            for (flat, w) in tf.node_weights().enumerate() {
                if tf.values()[flat].norm() > lambda {
                    mass += w;
                }
            }
            worst = worst.max(lambda * mass / l1);
        }
    }
    Ok(worst)
}

/// Standard relative level grid for weak-type scans: 16 logarithmic points
/// spanning four decades below the sup of `|T f|`.
pub fn standard_lambda_grid() -> Vec<Real> {
    (0..16)
        .map(|i| (10.0 as Real).powf(-4.0 + 4.0 * i as Real / 15.0))
        .collect()
}
