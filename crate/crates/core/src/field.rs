use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::scalar::Scalar;

/// Which set of space-time variables a field lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Frame {
    /// Physical variables `(x, t)`.
    Physical,
    /// Similarity variables `(y, s)`, `y = x / sqrt(t + 1)`, `s = log(t + 1)`.
    Similarity,
}

/// Real-valued samples on a [`Grid1D`], tagged with a time and a frame.
///
/// The carrier of every numerical solution in the crate. All public
/// constructors and operations reject NaN/Inf samples.
#[derive(Clone, Debug)]
pub struct Field<T: Scalar> {
    grid: Grid1D<T>,
    values: Vec<T>,
    time: T,
    frame: Frame,
}

impl<T: Scalar> Field<T> {
    pub fn new(grid: Grid1D<T>, values: Vec<T>, time: T, frame: Frame) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::ShapeMismatch { expected: grid.len(), got: values.len() });
        }
        if time < T::zero() || !time.is_finite() {
            return Err(Error::InvalidField(format!("time must be finite and >= 0, got {time}")));
        }
        let field = Self { grid, values, time, frame };
        field.check_finite()?;
        Ok(field)
    }

    /// Zero field at `time = 0`.
    pub fn zeros(grid: Grid1D<T>, frame: Frame) -> Self {
        let n = grid.len();
        Self { grid, values: vec![T::zero(); n], time: T::zero(), frame }
    }

    /// Sample a function on the grid nodes.
    pub fn from_fn(grid: Grid1D<T>, time: T, frame: Frame, f: impl Fn(T) -> T) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.node(i))).collect();
        Self::new(grid, values, time, frame)
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn time(&self) -> T {
        self.time
    }

    pub fn set_time(&mut self, t: T) {
        self.time = t;
    }

    #[inline]
    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Largest absolute sample.
    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    /// Value at coordinate `x` by linear interpolation; `None` outside the grid.
    #[inline]
    pub fn sample(&self, x: T) -> Option<T> {
        let (i, w) = self.grid.locate(x)?;
        Some((T::one() - w) * self.values[i] + w * self.values[i + 1])
    }

    /// Like [`Field::sample`] but reading 0 outside the grid, for fields whose
    /// support is known to be contained in the domain.
    #[inline]
    pub fn sample_or_zero(&self, x: T) -> T {
        self.sample(x).unwrap_or_else(T::zero)
    }

    /// New field with the same grid/time/frame and mapped values.
    pub fn map(&self, f: impl Fn(T) -> T) -> Result<Self> {
        let values = self.values.iter().map(|&v| f(v)).collect();
        Self::new(self.grid.clone(), values, self.time, self.frame)
    }

    /// Centered second-order first derivative, one-sided at the endpoints.
    pub fn derivative(&self) -> Self {
        let n = self.len();
        let dx = self.grid.dx();
        let two = T::of(2.0);
        let v = &self.values;
        let mut d = vec![T::zero(); n];
        d[0] = (v[1] - v[0]) / dx;
        d[n - 1] = (v[n - 1] - v[n - 2]) / dx;
        for i in 1..n - 1 {
            d[i] = (v[i + 1] - v[i - 1]) / (two * dx);
        }
        Self { grid: self.grid.clone(), values: d, time: self.time, frame: self.frame }
    }

    /// Verify that every sample is finite.
    pub fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            None => Ok(()),
            Some(i) => Err(Error::InvalidField(format!(
                "non-finite sample {} at node {i} (x = {})",
                self.values[i],
                self.grid.node(i)
            ))),
        }
    }

    /// Re-embed into `target`, which must share `dx` with the current grid and
    /// contain it. Existing samples are copied exactly; new cells are zero.
    pub fn embedded(&self, target: &Grid1D<T>) -> Result<Self> {
        let rel = ((self.grid.x_min() - target.x_min()) / target.dx()).to_f64_lossy();
        let offset = rel.round() as usize;
        let aligned = (rel - rel.round()).abs() < 1e-9
            && ((self.grid.dx() - target.dx()).abs() / target.dx()).to_f64_lossy() < 1e-12
            && offset + self.len() <= target.len();
        if !aligned {
            return Err(Error::InvalidConfig(
                "embedding target must share dx and contain the source grid".into(),
            ));
        }
        let mut values = vec![T::zero(); target.len()];
        values[offset..offset + self.len()].copy_from_slice(&self.values);
        Self::new(target.clone(), values, self.time, self.frame)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Grid1D<f64> {
        Grid1D::new(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn rejects_wrong_length_and_nan() {
        let g = grid(11);
        assert!(matches!(
            Field::new(g.clone(), vec![0.0; 10], 0.0, Frame::Physical),
            Err(Error::ShapeMismatch { expected: 11, got: 10 })
        ));
        let mut v = vec![0.0; 11];
        v[3] = f64::NAN;
        assert!(Field::new(g, v, 0.0, Frame::Physical).is_err());
    }

    #[test]
    fn interpolation_is_exact_on_linear_data() {
        let g = grid(11);
        let f = Field::from_fn(g, 0.0, Frame::Physical, |x| 3.0 * x - 1.0).unwrap();
        for &x in &[0.0, 0.137, 0.5, 0.98, 1.0] {
            assert!((f.sample(x).unwrap() - (3.0 * x - 1.0)).abs() < 1e-12);
        }
        assert!(f.sample(1.5).is_none());
        assert_eq!(f.sample_or_zero(1.5), 0.0);
    }

    #[test]
    fn derivative_of_linear_data_is_constant() {
        let g = grid(33);
        let f = Field::from_fn(g, 0.0, Frame::Physical, |x| 2.0 * x + 0.5).unwrap();
        for &d in f.derivative().values() {
            assert!((d - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn embedding_copies_values_exactly() {
        let g = Grid1D::new(-1.0, 1.0, 9).unwrap();
        let f = Field::from_fn(g.clone(), 0.0, Frame::Physical, |x| x * x).unwrap();
        let wide = g.extended(4).unwrap();
        let fe = f.embedded(&wide).unwrap();
        assert_eq!(fe.values()[0], 0.0);
        assert_eq!(fe.values()[4], f.values()[0]);
        assert_eq!(fe.values()[12], f.values()[8]);
    }
}
