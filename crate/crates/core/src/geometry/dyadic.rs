//! Dyadic cubes with bit-exact corner arithmetic on integer indices.

use super::rootsystem::RootSystem;
use crate::{DunklError, Real, Result};

/// A half-open dyadic cube `prod_a [origin + idx_a * side, origin + (idx_a+1) * side)`
/// with `side = base * 2^{-generation}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadicCube {
    pub generation: i32,
    pub index: Vec<i64>,
    pub base: Real,
    pub origin: Vec<Real>,
}

impl DyadicCube {
    pub fn root(dim: usize, base: Real, origin: Vec<Real>) -> Self {
        DyadicCube {
            generation: 0,
            index: vec![0; dim],
            base,
            origin,
        }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn side(&self) -> Real {
        self.base * (2.0 as Real).powi(-self.generation)
    }

    pub fn lower(&self) -> Vec<Real> {
        let s = self.side();
        self.index
            .iter()
            .zip(&self.origin)
            .map(|(&i, &o)| o + i as Real * s)
            .collect()
    }

    pub fn upper(&self) -> Vec<Real> {
        let s = self.side();
        self.index
            .iter()
            .zip(&self.origin)
            .map(|(&i, &o)| o + (i + 1) as Real * s)
            .collect()
    }

    pub fn center(&self) -> Vec<Real> {
        let s = self.side();
        self.index
            .iter()
            .zip(&self.origin)
            .map(|(&i, &o)| o + (i as Real + 0.5) * s)
            .collect()
    }

    pub fn diameter(&self) -> Real {
        self.side() * (self.dim() as Real).sqrt()
    }

    pub fn contains(&self, x: &[Real]) -> bool {
        let lo = self.lower();
        let hi = self.upper();
        x.iter()
            .zip(lo.iter().zip(&hi))
            .all(|(&xi, (&l, &h))| xi >= l && xi < h)
    }

    /// The `2^N` children, in index order.
    pub fn children(&self) -> Result<Vec<DyadicCube>> {
        if self.generation >= 60 {
            return Err(DunklError::RangeError("dyadic generation too deep".into()));
        }
        let n = self.dim();
        let mut out = Vec::with_capacity(1 << n);
        for bits in 0..(1u64 << n) {
            let idx: Vec<i64> = self
                .index
                .iter()
                .enumerate()
                .map(|(a, &i)| 2 * i + ((bits >> a) & 1) as i64)
                .collect();
            out.push(DyadicCube {
                generation: self.generation + 1,
                index: idx,
                base: self.base,
                origin: self.origin.clone(),
            });
        }
        Ok(out)
    }

    pub fn parent(&self) -> Result<DyadicCube> {
        if self.generation <= -60 {
            return Err(DunklError::RangeError("dyadic generation too shallow".into()));
        }
        Ok(DyadicCube {
            generation: self.generation - 1,
            index: self.index.iter().map(|&i| i.div_euclid(2)).collect(),
            base: self.base,
            origin: self.origin.clone(),
        })
    }

    /// Cube with the same center and doubled side length.
    pub fn enlarged(&self) -> (Vec<Real>, Vec<Real>) {
        let c = self.center();
        let s = self.side();
        let lo = c.iter().map(|&ci| ci - s).collect();
        let hi = c.iter().map(|&ci| ci + s).collect();
        (lo, hi)
    }

    /// `dw`-measure by quadrature of the underlying box.
    pub fn measure(&self, rs: &RootSystem) -> Result<Real> {
        rs.box_measure(&self.lower(), &self.upper())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_root_1d() -> DyadicCube {
        DyadicCube::root(1, 1.0, vec![0.0])
    }

    #[test]
    fn children_partition_parent() {
        let q = unit_root_1d();
        let kids = q.children().unwrap();
        assert_eq!(kids.len(), 2);
        assert_relative_eq!(kids[0].lower()[0], 0.0);
        assert_relative_eq!(kids[0].upper()[0], 0.5);
        assert_relative_eq!(kids[1].lower()[0], 0.5);
        assert_relative_eq!(kids[1].upper()[0], 1.0);
        for kid in &kids {
            assert_eq!(kid.parent().unwrap(), q);
        }
    }

    #[test]
    fn parent_round_trip_negative_indices() {
        let q = DyadicCube {
            generation: 3,
            index: vec![-5, 2],
            base: 2.0,
            origin: vec![-1.0, -1.0],
        };
        for kid in q.children().unwrap() {
            assert_eq!(kid.parent().unwrap(), q);
        }
    }

    #[test]
    fn child_measures_sum_to_parent() {
        let rs = crate::geometry::RootSystem::product(&[1.0, 0.5]).unwrap();
        let q = DyadicCube {
            generation: 1,
            index: vec![0, 1],
            base: 2.0,
            origin: vec![-1.0, -1.0],
        };
        let total: Real = q
            .children()
            .unwrap()
            .iter()
            .map(|c| c.measure(&rs).unwrap())
            .sum();
        assert_relative_eq!(total, q.measure(&rs).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn generation_limits() {
        let mut q = unit_root_1d();
        q.generation = 60;
        assert!(q.children().is_err());
        q.generation = -60;
        assert!(q.parent().is_err());
    }
}
