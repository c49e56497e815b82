use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};

/// Uniform 1D sample lattice on `[x_min, x_max]` with `n` nodes.
///
/// Node `i` sits at `x_min + i * dx`, with node 0 and node `n - 1` on the two
/// endpoints. `dx = (x_max - x_min) / (n - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid1D<T: Scalar> {
    x_min: T,
    x_max: T,
    n: usize,
    dx: T,
}

impl<T: Scalar> Grid1D<T> {
    /// Minimum number of nodes accepted anywhere in the crate.
    pub const MIN_NODES: usize = 8;

    pub fn new(x_min: T, x_max: T, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::InvalidConfig(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < Self::MIN_NODES {
            return Err(Error::InvalidConfig(format!(
                "grid needs at least {} nodes, got {n}",
                Self::MIN_NODES
            )));
        }
        let dx = (x_max - x_min) / real::<T>((n - 1) as f64);
        Ok(Self { x_min, x_max, n, dx })
    }

    /// Grid symmetric about the origin: `[-half_width, half_width]`.
    pub fn symmetric(half_width: T, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    #[inline]
    pub fn x_min(&self) -> T {
        self.x_min
    }

    #[inline]
    pub fn x_max(&self) -> T {
        self.x_max
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dx(&self) -> T {
        self.dx
    }

    /// Coordinate of node `i`.
    #[inline]
    pub fn node(&self, i: usize) -> T {
        debug_assert!(i < self.n);
        if i == self.n - 1 {
            // keep the right endpoint exact
            self.x_max
        } else {
            self.x_min + real::<T>(i as f64) * self.dx
        }
    }

    /// All node coordinates in order.
    pub fn nodes(&self) -> Vec<T> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Grid scaled by `1 / c`: node coordinates become `x_i / c`.
    ///
    /// Used by the similarity-variable map `y = x / sqrt(t + 1)`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        if !(c.is_finite() && c > T::zero()) {
            return Err(Error::InvalidConfig(format!("scale factor must be positive, got {c}")));
        }
        Self::new(self.x_min / c, self.x_max / c, self.n)
    }

    /// Widen the domain by `k` cells on each side, keeping `dx` and all
    /// existing node coordinates exact.
    pub fn extended(&self, k: usize) -> Result<Self> {
        let pad = real::<T>(k as f64) * self.dx;
        Self::new(self.x_min - pad, self.x_max + pad, self.n + 2 * k)
    }

    /// Linear interpolation weights for coordinate `x`: `(i, w)` such that the
    /// value is `(1 - w) * v[i] + w * v[i + 1]`. `None` when outside the grid.
    #[inline]
    pub fn locate(&self, x: T) -> Option<(usize, T)> {
        if x < self.x_min || x > self.x_max {
            return None;
        }
        let s = ((x - self.x_min) / self.dx).to_f64_lossy();
        let mut i = s.floor() as usize;
        if i >= self.n - 1 {
            i = self.n - 2;
        }
        let w = (x - self.node(i)) / self.dx;
        let w = w.max(T::zero()).min(T::one());
        Some((i, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_hit_endpoints_exactly() {
        let g = Grid1D::<f64>::new(-3.0, 5.0, 17).unwrap();
        assert_eq!(g.node(0), -3.0);
        assert_eq!(g.node(16), 5.0);
        assert_eq!(g.len(), 17);
        assert!((g.dx() - 0.5).abs() < 1e-15);
        assert!((g.node(4) - (-1.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_bounds_and_tiny_grids() {
        assert!(Grid1D::<f64>::new(1.0, 1.0, 16).is_err());
        assert!(Grid1D::<f64>::new(2.0, 1.0, 16).is_err());
        assert!(Grid1D::<f64>::new(0.0, 1.0, 7).is_err());
        assert!(Grid1D::<f64>::new(f64::NAN, 1.0, 16).is_err());
    }

    #[test]
    fn locate_brackets_interior_points() {
        let g = Grid1D::<f64>::new(0.0, 1.0, 11).unwrap();
        let (i, w) = g.locate(0.25).unwrap();
        assert_eq!(i, 2);
        assert!((w - 0.5).abs() < 1e-12);
        assert!(g.locate(-0.01).is_none());
        assert!(g.locate(1.01).is_none());
        // endpoints are owned by the boundary cells
        let (i, w) = g.locate(1.0).unwrap();
        assert_eq!(i, 9);
        assert!((w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extension_preserves_spacing_and_nodes() {
        let g = Grid1D::<f64>::new(-2.0, 2.0, 9).unwrap();
        let wide = g.extended(4).unwrap();
        assert_eq!(wide.len(), 17);
        assert_eq!(wide.dx(), g.dx());
        assert_eq!(wide.node(4), g.node(0));
        assert_eq!(wide.node(12), g.node(8));
    }
}
